use std::collections::BTreeMap;

use crate::exact_linalg::sparse::axpy;
use crate::exact_linalg::{Scalar, SparseVec};

/// `(-1)^k` as an integer.
pub fn sgn(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
    pub weight: Option<Vec<i64>>,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        BasisElement { name: name.into(), degree, weight: None }
    }

    pub fn with_weight(mut self, weight: Vec<i64>) -> Self {
        self.weight = Some(weight);
        self
    }
}

/// Sparse structure-constant tensor: `(i, j) -> sum_k t^{ij}_k e_k`.
pub type Tensor3 = BTreeMap<(usize, usize), SparseVec>;

pub fn tensor_from_entries(entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Tensor3 {
    let mut t = Tensor3::new();
    for (i, j, k, v) in entries {
        let slot = t.entry((i, j)).or_default();
        let mut add = SparseVec::new();
        add.insert(k, v);
        axpy(slot, &Scalar::one(), &add);
    }
    t.retain(|_, v| !v.is_empty());
    t
}

pub fn tensor_entries(t: &Tensor3) -> Vec<(usize, usize, usize, Scalar)> {
    t.iter()
        .flat_map(|(&(i, j), v)| v.iter().map(move |(&k, x)| (i, j, k, x.clone())))
        .collect()
}

/// Graded Lie (super)algebra given by a basis and bracket structure constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedLie {
    basis: Vec<BasisElement>,
    bracket: Tensor3,
}

impl GradedLie {
    /// Entries `(i, j, k, c)` mean `[e_i, e_j]` contains `c e_k`. Both orders
    /// of each pair must be supplied; nothing is mirrored automatically.
    pub fn new(basis: Vec<BasisElement>, entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>) -> Self {
        let bracket = tensor_from_entries(entries);
        Self::from_tensor(basis, bracket)
    }

    pub fn from_tensor(basis: Vec<BasisElement>, mut bracket: Tensor3) -> Self {
        let n = basis.len();
        bracket.retain(|_, v| !v.is_empty());
        for (&(i, j), v) in &bracket {
            assert!(i < n && j < n && v.keys().all(|&k| k < n), "bracket index out of range");
        }
        GradedLie { basis, bracket }
    }

    pub fn abelian(basis: Vec<BasisElement>) -> Self {
        GradedLie { basis, bracket: Tensor3::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.basis.iter().map(|b| b.degree).collect()
    }

    pub fn weight(&self, i: usize) -> Option<&[i64]> {
        self.basis[i].weight.as_deref()
    }

    pub fn has_weights(&self) -> bool {
        !self.basis.is_empty() && self.basis.iter().all(|b| b.weight.is_some())
    }

    pub fn tensor(&self) -> &Tensor3 {
        &self.bracket
    }

    pub fn entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        tensor_entries(&self.bracket)
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_empty()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        self.bracket.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.bracket
            .get(&(i, j))
            .and_then(|v| v.get(&k).cloned())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn bracket(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in u {
            for (&j, b) in v {
                if let Some(w) = self.bracket.get(&(i, j)) {
                    axpy(&mut out, &(a * b), w);
                }
            }
        }
        out
    }

    /// Degree of a vector if homogeneous (`None` for the zero vector or a
    /// mixed-degree vector).
    pub fn homogeneous_degree(&self, v: &SparseVec) -> Option<i64> {
        let mut degs = v.keys().map(|&i| self.basis[i].degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn homogeneous_weight(&self, v: &SparseVec) -> Option<Vec<i64>> {
        let mut ws = v.keys().map(|&i| self.basis[i].weight.clone());
        let first = ws.next()??;
        ws.all(|w| w.as_ref() == Some(&first)).then_some(first)
    }

    pub fn with_basis(&self, basis: Vec<BasisElement>) -> Self {
        assert_eq!(basis.len(), self.basis.len());
        GradedLie { basis, bracket: self.bracket.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_entries_sum() {
        let g = GradedLie::new(
            vec![BasisElement::new("a", 0)],
            [(0, 0, 0, Scalar::one()), (0, 0, 0, -Scalar::one())],
        );
        assert!(g.is_abelian());
    }
}
