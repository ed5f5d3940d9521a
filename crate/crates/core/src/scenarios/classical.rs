use std::collections::BTreeMap;

use crate::exact_linalg::{Scalar, SparseMatrix};
use crate::glie::EndGraded;

/// Commutative polynomial: sorted variable multiset -> coefficient.
pub type Poly = BTreeMap<Vec<usize>, Scalar>;

/// All sorted variable multisets of size `s` over `vars` variables.
pub fn monomials_of_degree(vars: usize, s: usize) -> Vec<Vec<usize>> {
    fn go(vars: usize, s: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for v in start..vars {
            cur.push(v);
            go(vars, s, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(vars, s, 0, &mut Vec::new(), &mut out);
    out
}

fn times(p: &Poly, m: &[usize]) -> Poly {
    p.iter()
        .map(|(k, v)| {
            let mut key: Vec<usize> = k.iter().chain(m).copied().collect();
            key.sort_unstable();
            (key, v.clone())
        })
        .collect()
}

/// Dimension of the degree-`s` part of `k[x_0..x_{vars-1}] / (relations)` for
/// homogeneous relations, by ranking the degree-`s` slice of the ideal.
pub fn hilbert_function(vars: usize, relations: &[Poly], s: usize) -> usize {
    let monos = monomials_of_degree(vars, s);
    let index: BTreeMap<&Vec<usize>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut triplets = Vec::new();
    let mut col = 0;
    for r in relations {
        let deg = r.keys().next().map_or(0, Vec::len);
        if deg > s {
            continue;
        }
        for m in monomials_of_degree(vars, s - deg) {
            for (k, v) in times(r, &m) {
                triplets.push((index[&k], col, v));
            }
            col += 1;
        }
    }
    let rank = SparseMatrix::from_triplets(monos.len(), col, triplets).rank();
    monos.len() - rank
}

/// Coordinates of the classical variety of complexes on `V`: variables
/// `x_ab` for degree-one entries `e_ab` and relations `Σ_b x_ab x_bc` for
/// each degree-two entry `e_ac`. Returns variable names and relations.
pub fn complexes_presentation(end: &EndGraded) -> (Vec<String>, Vec<Poly>) {
    let n = end.size();
    let al = &end.alphas;
    let vars: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| al[b] - al[a] == 1).collect();
    let pos = |a: usize, b: usize| vars.iter().position(|&p| p == (a, b));
    let mut rels = Vec::new();
    for a in 0..n {
        for c in 0..n {
            if al[c] - al[a] != 2 {
                continue;
            }
            let mut p = Poly::new();
            for b in 0..n {
                if let (Some(i), Some(j)) = (pos(a, b), pos(b, c)) {
                    let mut k = vec![i, j];
                    k.sort_unstable();
                    *p.entry(k).or_insert_with(Scalar::zero) += Scalar::one();
                }
            }
            p.retain(|_, v| !v.is_zero());
            if !p.is_empty() {
                rels.push(p);
            }
        }
    }
    let names = vars.iter().map(|&(a, b)| end.lie.name(end.index(a, b)).to_string()).collect();
    (names, rels)
}

/// Square-zero relations `Σ_k x_ik x_kj` of `w × w` matrices, variables
/// indexed `i·w + j`.
pub fn square_zero_relations(w: usize) -> Vec<Poly> {
    let mut rels = Vec::new();
    for i in 0..w {
        for j in 0..w {
            let mut p = Poly::new();
            for k in 0..w {
                let mut key = vec![i * w + k, k * w + j];
                key.sort_unstable();
                *p.entry(key).or_insert_with(Scalar::zero) += Scalar::one();
            }
            rels.push(p);
        }
    }
    rels
}

/// Kirillov–Kostant table of `gl_w`: `{x_ij, x_kl} = δ_jk x_il − δ_li x_kj`.
pub fn kirillov_kostant(w: usize) -> BTreeMap<(usize, usize), BTreeMap<usize, Scalar>> {
    let mut out = BTreeMap::new();
    for i in 0..w {
        for j in 0..w {
            for k in 0..w {
                for l in 0..w {
                    let mut v: BTreeMap<usize, Scalar> = BTreeMap::new();
                    if j == k {
                        *v.entry(i * w + l).or_insert_with(Scalar::zero) += Scalar::one();
                    }
                    if l == i {
                        *v.entry(k * w + j).or_insert_with(Scalar::zero) -= Scalar::one();
                    }
                    v.retain(|_, x| !x.is_zero());
                    out.insert((i * w + j, k * w + l), v);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glie::end_graded;

    #[test]
    fn hilbert_of_xy() {
        let end = end_graded(&[(0, 1), (1, 1), (2, 1)]);
        let (names, rels) = complexes_presentation(&end);
        assert_eq!(names.len(), 2);
        assert_eq!(rels.len(), 1);
        let h: Vec<usize> = (0..5).map(|s| hilbert_function(2, &rels, s)).collect();
        assert_eq!(h, vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn dual_numbers() {
        let h: Vec<usize> = (0..4).map(|s| hilbert_function(1, &square_zero_relations(1), s)).collect();
        assert_eq!(h, vec![1, 1, 0, 0]);
    }
}
