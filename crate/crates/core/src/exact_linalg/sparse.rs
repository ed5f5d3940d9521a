use std::collections::BTreeMap;

use crate::exact_linalg::Scalar;

/// Sparse column/row vector: index -> nonzero value.
pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn axpy(target: &mut SparseVec, factor: &Scalar, source: &SparseVec) {
    if factor.is_zero() {
        return;
    }
    for (&i, v) in source {
        let entry = target.entry(i).or_insert_with(Scalar::zero);
        *entry += factor * v;
        if entry.is_zero() {
            target.remove(&i);
        }
    }
}

pub fn scale(v: &SparseVec, factor: &Scalar) -> SparseVec {
    if factor.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&i, x)| (i, x * factor)).collect()
}

pub fn unit(i: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(i, Scalar::one());
    v
}

fn bit_weight(v: &SparseVec) -> u64 {
    v.values().map(Scalar::bit_size).sum()
}

/// Sparse exact matrix with canonically sorted, duplicate-free, nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Scalar)>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n).map(|i| (i, i, Scalar::one())).collect();
        SparseMatrix { rows: n, cols: n, entries }
    }

    /// Builds from triplets; repeated positions are summed and zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut map: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) out of range {rows}x{cols}");
            *map.entry((r, c)).or_insert_with(Scalar::zero) += v;
        }
        let entries = map
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        SparseMatrix { rows, cols, entries }
    }

    /// Matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let triplets = columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(&r, v)| (r, c, v.clone())));
        Self::from_triplets(rows, columns.len(), triplets)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, Scalar)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.entries.binary_search_by(|(er, ec, _)| (*er, *ec).cmp(&(r, c))) {
            Ok(i) => self.entries[i].2.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn row_maps(&self) -> Vec<SparseVec> {
        let mut rows = vec![SparseVec::new(); self.rows];
        for (r, c, v) in &self.entries {
            rows[*r].insert(*c, v.clone());
        }
        rows
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols = vec![SparseVec::new(); self.cols];
        for (r, c, v) in &self.entries {
            cols[*c].insert(*r, v.clone());
        }
        cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())),
        )
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, c, x) in &self.entries {
            if let Some(y) = v.get(c) {
                let e = out.entry(*r).or_insert_with(Scalar::zero);
                *e += x * y;
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let cols = other.columns();
        let triplets: Vec<_> = cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| {
                self.mul_vec(col).into_iter().map(move |(r, v)| (r, c, v))
            })
            .collect();
        Self::from_triplets(self.rows, other.cols, triplets)
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_triplets(
            self.rows,
            self.cols,
            self.entries.iter().chain(other.entries.iter()).cloned(),
        )
    }

    pub fn scaled(&self, s: &Scalar) -> SparseMatrix {
        Self::from_triplets(
            self.rows,
            self.cols,
            self.entries.iter().map(|(r, c, v)| (*r, *c, v * s)),
        )
    }

    pub fn rank(&self) -> usize {
        echelonize(self.row_maps()).len()
    }
}

/// Fully reduced row echelon form of a set of vectors: every returned vector
/// has leading entry 1 at its pivot (its smallest index), pivots strictly
/// increase, and each vector vanishes at the other vectors' pivots.
///
/// Pivot rows are chosen by smallest total bit size, ties by position.
pub fn echelonize(vectors: Vec<SparseVec>) -> Vec<SparseVec> {
    let mut pending: Vec<SparseVec> = vectors.into_iter().filter(|v| !v.is_empty()).collect();
    let mut done: Vec<SparseVec> = Vec::new();
    while !pending.is_empty() {
        let col = pending.iter().filter_map(|v| v.keys().next().copied()).min().unwrap();
        let mut best: Option<(usize, u64)> = None;
        for (i, v) in pending.iter().enumerate() {
            if v.keys().next() == Some(&col) {
                let w = bit_weight(v);
                if best.map_or(true, |(_, bw)| w < bw) {
                    best = Some((i, w));
                }
            }
        }
        let (pi, _) = best.unwrap();
        let mut pivot = pending.swap_remove(pi);
        let inv = pivot[&col].recip();
        pivot = scale(&pivot, &inv);
        for v in pending.iter_mut() {
            if let Some(f) = v.get(&col).cloned() {
                axpy(v, &-f, &pivot);
            }
        }
        pending.retain(|v| !v.is_empty());
        for v in done.iter_mut() {
            if let Some(f) = v.get(&col).cloned() {
                axpy(v, &-f, &pivot);
            }
        }
        done.push(pivot);
    }
    done.sort_by_key(|v| *v.keys().next().unwrap());
    done
}

/// Subspace of `k^ambient` stored as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    ambient: usize,
    vectors: Vec<SparseVec>,
}

impl SubspaceBasis {
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis { ambient, vectors: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        SubspaceBasis { ambient, vectors: (0..ambient).map(unit).collect() }
    }

    pub fn span(ambient: usize, vectors: Vec<SparseVec>) -> Self {
        for v in &vectors {
            if let Some((&i, _)) = v.iter().next_back() {
                assert!(i < ambient, "vector index {i} outside ambient dimension {ambient}");
            }
        }
        SubspaceBasis { ambient, vectors: echelonize(vectors) }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.vectors.iter().map(|v| *v.keys().next().unwrap()).collect()
    }

    /// Remainder of `v` after reduction against the basis.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for b in &self.vectors {
            let p = b.keys().next().unwrap();
            if let Some(f) = r.get(p).cloned() {
                axpy(&mut r, &-f, b);
            }
        }
        r
    }

    /// Coordinates of `v` in the basis, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let mut r = v.clone();
        let mut coords = Vec::with_capacity(self.vectors.len());
        for b in &self.vectors {
            let p = b.keys().next().unwrap();
            let f = r.get(p).cloned().unwrap_or_else(Scalar::zero);
            axpy(&mut r, &-f.clone(), b);
            coords.push(f);
        }
        r.is_empty().then_some(coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        assert_eq!(self.ambient, other.ambient);
        let mut all = self.vectors.clone();
        all.extend(other.vectors.iter().cloned());
        SubspaceBasis::span(self.ambient, all)
    }
}

/// Rank of `m` and a reduced echelon basis of its kernel.
pub fn rank_kernel(m: &SparseMatrix) -> (usize, SubspaceBasis) {
    let rref = echelonize(m.row_maps());
    let rank = rref.len();
    let pivots: Vec<usize> = rref.iter().map(|r| *r.keys().next().unwrap()).collect();
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = unit(free);
        for (row, &p) in rref.iter().zip(&pivots) {
            if let Some(x) = row.get(&free) {
                v.insert(p, -x);
            }
        }
        kernel.push(v);
    }
    (rank, SubspaceBasis::span(m.cols(), kernel))
}

/// Inverse of the square matrix whose rows are `rows` (each of length `n`),
/// returned as rows; `None` if singular.
pub fn inverse_rows(rows: &[SparseVec], n: usize) -> Option<Vec<SparseVec>> {
    if rows.len() != n {
        return None;
    }
    let augmented: Vec<SparseVec> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.insert(n + i, Scalar::one());
            v
        })
        .collect();
    let rref = echelonize(augmented);
    if rref.len() != n || rref.iter().enumerate().any(|(i, r)| r.keys().next() != Some(&i)) {
        return None;
    }
    Some(
        rref.into_iter()
            .map(|r| r.into_iter().filter(|(k, _)| *k >= n).map(|(k, v)| (k - n, v)).collect())
            .collect(),
    )
}

/// `v · M` for `M` given by rows.
pub fn vec_times_rows(v: &SparseVec, rows: &[SparseVec]) -> SparseVec {
    let mut out = SparseVec::new();
    for (&i, x) in v {
        axpy(&mut out, x, &rows[i]);
    }
    out
}

/// Image (column span) of `m`.
pub fn image(m: &SparseMatrix) -> SubspaceBasis {
    SubspaceBasis::span(m.rows(), m.columns())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn empty_matrix() {
        let (r, k) = rank_kernel(&SparseMatrix::zeros(0, 0));
        assert_eq!((r, k.dim()), (0, 0));
    }

    #[test]
    fn zero_rows_full_kernel() {
        let (r, k) = rank_kernel(&SparseMatrix::zeros(0, 3));
        assert_eq!((r, k.dim()), (0, 3));
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let (r, k) = rank_kernel(&SparseMatrix::identity(3));
        assert_eq!((r, k.dim()), (3, 0));
    }

    #[test]
    fn one_by_two() {
        // [1, -1] x = 0  <=>  x = t (1, 1)
        let m = SparseMatrix::from_triplets(1, 2, [(0, 0, q(1)), (0, 1, q(-1))]);
        let (r, k) = rank_kernel(&m);
        assert_eq!(r, 1);
        assert_eq!(k.dim(), 1);
        let v = &k.vectors()[0];
        assert_eq!(v.get(&0), Some(&q(1)));
        assert_eq!(v.get(&1), Some(&q(1)));
    }

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let m = SparseMatrix::from_triplets(2, 2, [(1, 1, q(2)), (1, 1, q(-2)), (0, 1, q(3))]);
        assert_eq!(m.entries(), &[(0, 1, q(3))]);
    }

    #[test]
    fn inverse_of_two_by_two() {
        let rows: Vec<SparseVec> = vec![
            [(0, q(2)), (1, q(1))].into_iter().collect(),
            [(0, q(1)), (1, q(1))].into_iter().collect(),
        ];
        let inv = inverse_rows(&rows, 2).unwrap();
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(vec_times_rows(r, &inv), unit(i));
        }
        let singular: Vec<SparseVec> = vec![unit(0), unit(0)];
        assert!(inverse_rows(&singular, 2).is_none());
    }

    #[test]
    fn coordinates_in_span() {
        let b = SubspaceBasis::span(3, vec![
            [(0, q(1)), (1, q(2))].into_iter().collect(),
            [(1, q(1)), (2, q(1))].into_iter().collect(),
        ]);
        let v: SparseVec = [(0, q(1)), (1, q(3)), (2, q(1))].into_iter().collect();
        let c = b.coordinates(&v).unwrap();
        let mut rebuilt = SparseVec::new();
        for (coef, bv) in c.iter().zip(b.vectors()) {
            axpy(&mut rebuilt, coef, bv);
        }
        assert_eq!(rebuilt, v);
        assert!(b.coordinates(&unit(2)).is_none());
    }
}
