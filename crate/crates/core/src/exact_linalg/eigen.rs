use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact_linalg::sparse::{rank_kernel, SparseMatrix, SubspaceBasis};
use crate::exact_linalg::Scalar;
use crate::Error;

/// Characteristic polynomial det(xI - M), coefficients from constant term up.
/// Faddeev-LeVerrier recursion.
pub fn charpoly(m: &SparseMatrix) -> Vec<Scalar> {
    assert_eq!(m.rows(), m.cols(), "charpoly of a non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut mk = SparseMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = M (M_{k-1} + c_{n-k+1} I)
        let shift = SparseMatrix::identity(n).scaled(&coeffs[n - k + 1]);
        mk = m.mul(&mk.add(&shift));
        let tr: Scalar = mk.entries().iter().filter(|(r, c, _)| r == c).map(|(_, _, v)| v.clone()).sum();
        coeffs[n - k] = -(tr / Scalar::from_int(k as i64));
    }
    coeffs
}

fn eval(poly: &[Scalar], x: &Scalar) -> Scalar {
    poly.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

// Synthetic division by (x - root).
fn deflate(poly: &[Scalar], root: &Scalar) -> Vec<Scalar> {
    let n = poly.len() - 1;
    let mut out = vec![Scalar::zero(); n];
    let mut carry = Scalar::zero();
    for i in (0..n).rev() {
        carry = &poly[i + 1] + &(carry * root);
        out[i] = carry.clone();
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out
}

/// Rational roots of a polynomial (coefficients from constant term up),
/// with multiplicity, in increasing order.
pub fn rational_roots(poly: &[Scalar]) -> Vec<Scalar> {
    let mut p: Vec<Scalar> = poly.to_vec();
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    let mut roots = Vec::new();
    while p.len() > 1 && p[0].is_zero() {
        roots.push(Scalar::zero());
        p.remove(0);
    }
    if p.len() > 1 {
        // Clear denominators to get an integer polynomial.
        let lcm = p.iter().fold(BigInt::one(), |acc, c| {
            let d = c.denom();
            let g = num_integer::Integer::gcd(&acc, d);
            acc * d / g
        });
        let ints: Vec<BigInt> = p
            .iter()
            .map(|c| (c.numer() * &lcm) / c.denom())
            .collect();
        let mut cands = BTreeSet::new();
        for a in divisors(&ints[0]) {
            for b in divisors(ints.last().unwrap()) {
                let q = Scalar::from_bigints(a.clone(), b);
                cands.insert(-q.clone());
                cands.insert(q);
            }
        }
        for c in cands {
            while p.len() > 1 && eval(&p, &c).is_zero() {
                p = deflate(&p, &c);
                roots.push(c.clone());
            }
        }
    }
    roots.sort();
    roots
}

/// Eigenspace decomposition over the rationals, eigenvalues increasing.
pub fn eigen_split(m: &SparseMatrix) -> Result<Vec<(Scalar, SubspaceBasis)>, Error> {
    assert_eq!(m.rows(), m.cols(), "eigen_split of a non-square matrix");
    let n = m.rows();
    let mut values: Vec<Scalar> = rational_roots(&charpoly(m));
    values.dedup();
    let mut parts = Vec::new();
    let mut total = 0;
    for lambda in values {
        let shifted = m.add(&SparseMatrix::identity(n).scaled(&-lambda.clone()));
        let (_, ker) = rank_kernel(&shifted);
        total += ker.dim();
        parts.push((lambda, ker));
    }
    if total < n {
        return Err(Error::NotSemisimple(format!(
            "eigenspaces span {total} of {n} dimensions"
        )));
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Scalar {
        Scalar::new(a, b)
    }

    #[test]
    fn diagonal_halves() {
        let m = SparseMatrix::from_triplets(2, 2, [(0, 0, q(1, 2)), (1, 1, q(-1, 2))]);
        let parts = eigen_split(&m).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, q(-1, 2));
        assert_eq!(parts[0].1.pivots(), vec![1]);
        assert_eq!(parts[1].0, q(1, 2));
        assert_eq!(parts[1].1.pivots(), vec![0]);
    }

    #[test]
    fn zero_matrix() {
        let parts = eigen_split(&SparseMatrix::zeros(3, 3)).unwrap();
        assert_eq!(parts.len(), 1);
        assert!(parts[0].0.is_zero());
        assert_eq!(parts[0].1.dim(), 3);
    }

    #[test]
    fn nilpotent_rejected() {
        let m = SparseMatrix::from_triplets(2, 2, [(0, 1, q(1, 1))]);
        assert!(matches!(eigen_split(&m), Err(Error::NotSemisimple(_))));
    }

    #[test]
    fn irrational_rejected() {
        // x^2 - 2
        let m = SparseMatrix::from_triplets(2, 2, [(0, 1, q(1, 1)), (1, 0, q(2, 1))]);
        assert!(matches!(eigen_split(&m), Err(Error::NotSemisimple(_))));
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of x^2 - 3x + 2
        let m = SparseMatrix::from_triplets(2, 2, [(0, 1, q(-2, 1)), (1, 0, q(1, 1)), (1, 1, q(3, 1))]);
        assert_eq!(charpoly(&m), vec![q(2, 1), q(-3, 1), q(1, 1)]);
        assert_eq!(rational_roots(&charpoly(&m)), vec![q(1, 1), q(2, 1)]);
    }
}
