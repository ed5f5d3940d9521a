use std::collections::BTreeMap;

use crate::exact_linalg::sparse::axpy;
use crate::exact_linalg::{Scalar, SparseVec};
use crate::glie::algebra::{sgn, tensor_entries, tensor_from_entries, GradedLie, Tensor3};

/// Bilinear form with values in `k[shift]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    pub shift: i64,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl BilinearForm {
    pub fn new(shift: i64, entries: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Self {
        let mut map: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (i, j, v) in entries {
            *map.entry((i, j)).or_insert_with(Scalar::zero) += v;
        }
        map.retain(|_, v| !v.is_zero());
        BilinearForm { shift, entries: map }
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Scalar> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, u: &SparseVec, v: &SparseVec) -> Scalar {
        let mut acc = Scalar::zero();
        for (&i, a) in u {
            for (&j, b) in v {
                if let Some(x) = self.entries.get(&(i, j)) {
                    acc += &(a * b) * x;
                }
            }
        }
        acc
    }
}

/// Element `r` of `g ⊗ g`, stored as the full (graded antisymmetric) tensor
/// `r = sum r^{ab} e_a ⊗ e_b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RMatrix {
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl RMatrix {
    /// `sum coef · e_a ∧ e_b` with `a ∧ b = a ⊗ b − (−1)^{ā b̄} b ⊗ a`.
    pub fn from_wedges(g: &GradedLie, wedges: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Self {
        let mut entries: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (a, b, c) in wedges {
            let s = Scalar::sign(g.degree(a) * g.degree(b));
            *entries.entry((a, b)).or_insert_with(Scalar::zero) += c.clone();
            *entries.entry((b, a)).or_insert_with(Scalar::zero) -= &s * &c;
        }
        entries.retain(|_, v| !v.is_zero());
        RMatrix { entries }
    }

    /// Raw tensor entries; caller is responsible for antisymmetry.
    pub fn from_tensor(entries: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Self {
        let mut map: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (a, b, c) in entries {
            *map.entry((a, b)).or_insert_with(Scalar::zero) += c;
        }
        map.retain(|_, v| !v.is_zero());
        RMatrix { entries: map }
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Scalar> {
        &self.entries
    }

    pub fn is_antisymmetric(&self, g: &GradedLie) -> bool {
        self.entries.iter().all(|(&(a, b), v)| {
            let s = Scalar::sign(g.degree(a) * g.degree(b));
            let mirror = self.entries.get(&(b, a)).cloned().unwrap_or_else(Scalar::zero);
            mirror == -(&s * v)
        })
    }
}

/// Shifted Lie bialgebra. The cobracket is stored through the dual structure
/// constants: `cobracket[(i, j)]` holds `k -> γ^{ij}_k`, i.e. the bracket of
/// `f^i[n]` and `f^j[n]` on the shifted dual contains `γ^{ij}_k f^k[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bialgebra {
    pub name: String,
    pub algebra: GradedLie,
    pub shift_n: i64,
    cobracket: Tensor3,
    pub form: Option<BilinearForm>,
    pub rmatrix: Option<RMatrix>,
}

impl Bialgebra {
    /// Entries `(k, i, j, γ)` mean `γ^{ij}_k = γ`.
    pub fn new(
        name: impl Into<String>,
        algebra: GradedLie,
        shift_n: i64,
        cobracket: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Self {
        let t = tensor_from_entries(cobracket.into_iter().map(|(k, i, j, v)| (i, j, k, v)));
        Self::from_tensor(name, algebra, shift_n, t)
    }

    pub fn from_tensor(name: impl Into<String>, algebra: GradedLie, shift_n: i64, mut cobracket: Tensor3) -> Self {
        cobracket.retain(|_, v| !v.is_empty());
        let n = algebra.dim();
        for (&(i, j), v) in &cobracket {
            assert!(i < n && j < n && v.keys().all(|&k| k < n), "cobracket index out of range");
        }
        Bialgebra { name: name.into(), algebra, shift_n, cobracket, form: None, rmatrix: None }
    }

    pub fn trivial(name: impl Into<String>, algebra: GradedLie, shift_n: i64) -> Self {
        Self::from_tensor(name, algebra, shift_n, Tensor3::new())
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn cobracket_tensor(&self) -> &Tensor3 {
        &self.cobracket
    }

    /// Entries `(k, i, j, γ^{ij}_k)` sorted by `(i, j, k)`.
    pub fn cobracket_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        tensor_entries(&self.cobracket).into_iter().map(|(i, j, k, v)| (k, i, j, v)).collect()
    }

    pub fn gamma(&self, i: usize, j: usize) -> SparseVec {
        self.cobracket.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn gamma_coeff(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.cobracket
            .get(&(i, j))
            .and_then(|v| v.get(&k).cloned())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn has_trivial_cobracket(&self) -> bool {
        self.cobracket.is_empty()
    }

    /// Degree of `f^i[n]`.
    pub fn dual_degree(&self, i: usize) -> i64 {
        -self.algebra.degree(i) - self.shift_n
    }

    /// The cobracket read as a Lie bracket on the shifted dual basis `f^i[n]`.
    pub fn dual_algebra(&self) -> GradedLie {
        let basis = self
            .algebra
            .basis()
            .iter()
            .enumerate()
            .map(|(i, b)| crate::glie::BasisElement {
                name: format!("{}*", b.name),
                degree: self.dual_degree(i),
                weight: b.weight.as_ref().map(|w| w.iter().map(|x| -x).collect()),
            })
            .collect();
        GradedLie::from_tensor(basis, self.cobracket.clone())
    }

    /// `φ(e_k) = sum (−1)^{ē_i ē_j + n ē_i} γ^{ij}_k e_i ⊗ e_j`, as a map
    /// `k -> {(i, j) -> coefficient}`.
    pub fn phi_tensor(&self) -> BTreeMap<usize, BTreeMap<(usize, usize), Scalar>> {
        let mut out: BTreeMap<usize, BTreeMap<(usize, usize), Scalar>> = BTreeMap::new();
        let n = self.shift_n;
        for (&(i, j), v) in &self.cobracket {
            let (ei, ej) = (self.algebra.degree(i), self.algebra.degree(j));
            let s = Scalar::from_int(sgn(ei * ej + n * ei));
            for (&k, x) in v {
                let slot = out.entry(k).or_default();
                *slot.entry((i, j)).or_insert_with(Scalar::zero) += &s * x;
            }
        }
        for m in out.values_mut() {
            m.retain(|_, v| !v.is_zero());
        }
        out.retain(|_, m| !m.is_empty());
        out
    }

    /// `[,] ∘ φ` applied to `e_k`.
    pub fn bracket_of_cobracket(&self, k: usize) -> SparseVec {
        let mut out = SparseVec::new();
        if let Some(m) = self.phi_tensor().get(&k) {
            for (&(i, j), x) in m {
                axpy(&mut out, x, &self.algebra.bracket_basis(i, j));
            }
        }
        out
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same data with the cobracket replaced.
    pub fn with_cobracket(&self, cobracket: Tensor3) -> Self {
        let mut b = Self::from_tensor(self.name.clone(), self.algebra.clone(), self.shift_n, cobracket);
        b.form = self.form.clone();
        b
    }

    /// Structural equality of the Lie and cobracket data (names ignored).
    pub fn same_structure(&self, other: &Bialgebra) -> bool {
        self.shift_n == other.shift_n
            && self.algebra.degrees() == other.algebra.degrees()
            && self.algebra.tensor() == other.algebra.tensor()
            && self.cobracket == other.cobracket
    }
}

/// A Manin triple `(p, p₊, p₋)`. The halves are given by named vectors of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManinTriple {
    pub total: GradedLie,
    pub plus: Vec<(String, SparseVec)>,
    pub minus: Vec<(String, SparseVec)>,
    pub form: BilinearForm,
}

impl ManinTriple {
    pub fn from_indices(total: GradedLie, plus: &[usize], minus: &[usize], form: BilinearForm) -> Self {
        let pick = |ix: &[usize]| -> Vec<(String, SparseVec)> {
            ix.iter()
                .map(|&i| (total.name(i).to_string(), crate::exact_linalg::sparse::unit(i)))
                .collect()
        };
        let plus = pick(plus);
        let minus = pick(minus);
        ManinTriple { total, plus, minus, form }
    }

    pub fn shift(&self) -> i64 {
        self.form.shift
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}
