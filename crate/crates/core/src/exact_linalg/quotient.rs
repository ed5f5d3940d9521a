use crate::exact_linalg::sparse::{axpy, SparseVec, SubspaceBasis};
use crate::exact_linalg::Scalar;
use crate::Error;

/// Representatives of a basis of `Z / Bd`, with the reduction data needed to
/// express any element of `Z` in class coordinates.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    boundaries: SubspaceBasis,
    reps: Vec<SparseVec>,
    // Echelon basis of Bd + span(reps); each row tagged with its rep coordinates.
    tagged: Vec<(SparseVec, Vec<Scalar>)>,
}

impl QuotientBasis {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[SparseVec] {
        &self.reps
    }

    pub fn boundaries(&self) -> &SubspaceBasis {
        &self.boundaries
    }

    /// Class coordinates of `z` with respect to `reps`; `None` if `z` lies
    /// outside `Bd + span(reps)`.
    pub fn class_of(&self, z: &SparseVec) -> Option<Vec<Scalar>> {
        let mut r = z.clone();
        let mut coords = vec![Scalar::zero(); self.reps.len()];
        for (row, tag) in &self.tagged {
            let p = row.keys().next().unwrap();
            if let Some(f) = r.get(p).cloned() {
                axpy(&mut r, &-f.clone(), row);
                for (c, t) in coords.iter_mut().zip(tag) {
                    *c += &f * t;
                }
            }
        }
        r.is_empty().then_some(coords)
    }

    pub fn is_boundary(&self, z: &SparseVec) -> bool {
        self.boundaries.contains(z)
    }
}

/// Basis of the quotient `Z / Bd`. Representatives are the reduced echelon
/// vectors of `Z` whose pivots are not already pivots of `Bd`, reduced
/// against `Bd`.
pub fn quotient_basis(z: &SubspaceBasis, bd: &SubspaceBasis) -> Result<QuotientBasis, Error> {
    if z.ambient() != bd.ambient() {
        return Err(Error::Containment(format!(
            "ambient dimensions differ: {} vs {}",
            z.ambient(),
            bd.ambient()
        )));
    }
    if let Some(pos) = bd.vectors().iter().position(|v| !z.contains(v)) {
        return Err(Error::Containment(format!("boundary vector {pos} is not in the cycle space")));
    }
    let mut reps = Vec::new();
    let mut current = bd.clone();
    for v in z.vectors() {
        let r = current.reduce(v);
        if !r.is_empty() {
            reps.push(r.clone());
            let mut all = current.vectors().to_vec();
            all.push(r);
            current = SubspaceBasis::span(z.ambient(), all);
        }
    }
    let reps: Vec<SparseVec> = reps.into_iter().map(|r| bd.reduce(&r)).collect();
    let tagged = tag_rows(bd, &reps);
    Ok(QuotientBasis { boundaries: bd.clone(), reps, tagged })
}

// Gaussian elimination carrying, for each row, its coordinates along `reps`
// (boundary rows carry zero tags).
fn tag_rows(bd: &SubspaceBasis, reps: &[SparseVec]) -> Vec<(SparseVec, Vec<Scalar>)> {
    let k = reps.len();
    let mut pending: Vec<(SparseVec, Vec<Scalar>)> = bd
        .vectors()
        .iter()
        .map(|v| (v.clone(), vec![Scalar::zero(); k]))
        .collect();
    for (i, r) in reps.iter().enumerate() {
        let mut tag = vec![Scalar::zero(); k];
        tag[i] = Scalar::one();
        pending.push((r.clone(), tag));
    }
    let mut done: Vec<(SparseVec, Vec<Scalar>)> = Vec::new();
    while !pending.is_empty() {
        let col = pending.iter().filter_map(|(v, _)| v.keys().next().copied()).min().unwrap();
        let pi = pending.iter().position(|(v, _)| v.keys().next() == Some(&col)).unwrap();
        let (mut pv, mut pt) = pending.swap_remove(pi);
        let inv = pv[&col].recip();
        pv = crate::exact_linalg::sparse::scale(&pv, &inv);
        for t in pt.iter_mut() {
            *t = &*t * &inv;
        }
        for (v, t) in pending.iter_mut().chain(done.iter_mut()) {
            if let Some(f) = v.get(&col).cloned() {
                axpy(v, &-f.clone(), &pv);
                for (a, b) in t.iter_mut().zip(&pt) {
                    *a -= &f * b;
                }
            }
        }
        pending.retain(|(v, _)| !v.is_empty());
        done.push((pv, pt));
    }
    done
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::sparse::unit;

    fn v(xs: &[i64]) -> SparseVec {
        xs.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i, Scalar::from_int(x)))
            .collect()
    }

    #[test]
    fn plane_mod_diagonal() {
        let z = SubspaceBasis::full(2);
        let bd = SubspaceBasis::span(2, vec![v(&[1, 1])]);
        let q = quotient_basis(&z, &bd).unwrap();
        assert_eq!(q.dim(), 1);
        let c = q.class_of(&unit(0)).unwrap();
        let c2 = q.class_of(&unit(1)).unwrap();
        // e1 = (1,1) - e2, so [e1] = -[e2]
        assert_eq!(c[0], -c2[0].clone());
        assert!(!c[0].is_zero());
    }

    #[test]
    fn exact_quotient_is_zero() {
        let z = SubspaceBasis::span(2, vec![v(&[1, 2])]);
        let q = quotient_basis(&z, &z).unwrap();
        assert_eq!(q.dim(), 0);
        assert!(q.reps().is_empty());
    }

    #[test]
    fn zero_boundary() {
        let z = SubspaceBasis::span(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let q = quotient_basis(&z, &SubspaceBasis::zero(3)).unwrap();
        assert_eq!(q.dim(), 2);
    }

    #[test]
    fn containment_checked() {
        let z = SubspaceBasis::span(2, vec![v(&[1, 0])]);
        let bd = SubspaceBasis::span(2, vec![v(&[0, 1])]);
        assert!(matches!(quotient_basis(&z, &bd), Err(Error::Containment(_))));
    }
}
