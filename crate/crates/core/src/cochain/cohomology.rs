use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use crate::cochain::algebra::{CeAlgebra, Cochain};
use crate::cochain::block::{ce_differential, delta_on_generators, delta_operator, enumerate_block, Selector};
use crate::exact_linalg::{
    eigen_split, image, quotient_basis, rank_kernel, QuotientBasis, Scalar, SparseMatrix, SparseVec, SubspaceBasis,
};
use crate::Error;

/// Which blocks to compute in each degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// All `s`-blocks with `|s| <= s_max` (only `s >= 0` when every basis
    /// degree of `g` is non-negative).
    SMax(i64),
    /// One block per listed total weight.
    Weights(Vec<Vec<i64>>),
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truncation::SMax(s) => write!(f, "s <= {s}"),
            Truncation::Weights(ws) => {
                let parts: Vec<String> = ws.iter().map(|w| format!("{w:?}")).collect();
                write!(f, "weights {}", parts.join(" "))
            }
        }
    }
}

impl Truncation {
    pub fn selectors(&self, ce: &CeAlgebra, degree: i64) -> Vec<Selector> {
        match self {
            Truncation::SMax(s_max) => {
                let nonneg = (0..ce.num_generators()).all(|i| ce.bialgebra.algebra.degree(i) >= 0);
                let lo = if nonneg { 0 } else { -s_max };
                (lo..=*s_max).map(|s| Selector::s_block(degree, s)).collect()
            }
            Truncation::Weights(ws) => ws.iter().map(|w| Selector::weight_block(degree, w.clone())).collect(),
        }
    }
}

/// Cohomology of a single block.
#[derive(Clone, Debug)]
pub struct BlockCohomology {
    pub selector: Selector,
    pub dim: usize,
    pub cycles: usize,
    pub boundaries: usize,
    pub betti: usize,
    pub reps: Vec<Cochain>,
    pub quotient: QuotientBasis,
}

pub fn d_matrix(ce: &CeAlgebra, selector: &Selector) -> Result<SparseMatrix, Error> {
    Ok(ce_differential(ce, selector)?.matrix)
}

/// `Z / B` on one block, with reduced echelon representatives.
pub fn block_cohomology(ce: &CeAlgebra, selector: &Selector) -> Result<BlockCohomology, Error> {
    let block = enumerate_block(ce, selector)?;
    let d_out = d_matrix(ce, selector)?;
    let d_in = d_matrix(ce, &selector.with_degree(selector.degree - 1))?;
    let (_, z) = rank_kernel(&d_out);
    let bd = image(&d_in);
    let quotient = quotient_basis(&z, &bd)?;
    let reps = quotient.reps().iter().map(|v| block.cochain(v)).collect();
    Ok(BlockCohomology {
        selector: selector.clone(),
        dim: block.len(),
        cycles: z.dim(),
        boundaries: bd.dim(),
        betti: quotient.dim(),
        reps,
        quotient,
    })
}

#[derive(Clone, Debug)]
pub struct CohomologyTable {
    pub degrees: RangeInclusive<i64>,
    pub truncation: Truncation,
    pub blocks: Vec<BlockCohomology>,
}

impl CohomologyTable {
    /// Betti numbers summed over the enumerated blocks of each degree.
    pub fn betti_by_degree(&self) -> BTreeMap<i64, usize> {
        let mut out: BTreeMap<i64, usize> = self.degrees.clone().map(|d| (d, 0)).collect();
        for b in &self.blocks {
            *out.entry(b.selector.degree).or_default() += b.betti;
        }
        out
    }

    /// Betti numbers summed by `deg + 2s` over the enumerated `s`-blocks,
    /// for totals inside the degree window.
    pub fn betti_by_total_degree(&self) -> BTreeMap<i64, usize> {
        let mut out: BTreeMap<i64, usize> = self.degrees.clone().map(|d| (d, 0)).collect();
        for b in &self.blocks {
            if let Some(s) = b.selector.s {
                if let Some(v) = out.get_mut(&(b.selector.degree + 2 * s)) {
                    *v += b.betti;
                }
            }
        }
        out
    }

    pub fn block(&self, selector: &Selector) -> Option<&BlockCohomology> {
        self.blocks.iter().find(|b| &b.selector == selector)
    }

    pub fn betti(&self, selector: &Selector) -> usize {
        self.block(selector).map_or(0, |b| b.betti)
    }
}

/// Block cohomology over a degree window. Blocks with empty cochain spaces
/// are omitted from `blocks`.
pub fn cohomology(ce: &CeAlgebra, degrees: RangeInclusive<i64>, truncation: &Truncation) -> Result<CohomologyTable, Error> {
    let mut blocks = Vec::new();
    for deg in degrees.clone() {
        for sel in truncation.selectors(ce, deg) {
            let bc = block_cohomology(ce, &sel)?;
            if bc.dim > 0 {
                blocks.push(bc);
            }
        }
    }
    Ok(CohomologyTable { degrees, truncation: truncation.clone(), blocks })
}

/// Selector of the block containing a homogeneous nonzero cochain, in the
/// same style (s and/or weight) as `like`.
pub fn selector_of(ce: &CeAlgebra, c: &Cochain, like: &Selector) -> Result<Selector, Error> {
    let mut found: Option<Selector> = None;
    for m in c.terms().keys() {
        let degree = ce.monomial_degree(m);
        let s = like.s.map(|_| m.len() as i64 - degree);
        let weight = if like.weight.is_some() { ce.monomial_weight(m) } else { None };
        let sel = Selector { degree, s, weight };
        match &found {
            None => found = Some(sel),
            Some(f) if *f == sel => {}
            Some(_) => return Err(Error::Invalid("cochain is not homogeneous".into())),
        }
    }
    found.ok_or_else(|| Error::Invalid("zero cochain has no block".into()))
}

/// A cohomology class given by a representative cocycle and its block.
#[derive(Clone, Debug)]
pub struct Class {
    pub label: String,
    pub selector: Selector,
    pub rep: Cochain,
}

#[derive(Clone, Debug)]
pub struct BracketEntry {
    pub left: usize,
    pub right: usize,
    /// `None` when the bracket vanishes identically.
    pub target: Option<Selector>,
    /// Coordinates of the bracket class along `target_reps`.
    pub coords: Vec<Scalar>,
    pub target_reps: Vec<Cochain>,
}

impl BracketEntry {
    pub fn is_zero_class(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

/// Brackets of classes reduced against coboundaries.
pub fn cohomology_bracket(ce: &CeAlgebra, classes: &[Class]) -> Result<Vec<BracketEntry>, Error> {
    for c in classes {
        if !ce.d(&c.rep).is_zero() {
            return Err(Error::NotACocycle(format!("{} is not closed", c.label)));
        }
    }
    let mut out = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        for (j, b) in classes.iter().enumerate() {
            let w = ce.bracket(&a.rep, &b.rep);
            if w.is_zero() {
                out.push(BracketEntry { left: i, right: j, target: None, coords: Vec::new(), target_reps: Vec::new() });
                continue;
            }
            let sel = selector_of(ce, &w, &a.selector)?;
            let bc = block_cohomology(ce, &sel)?;
            let block = enumerate_block(ce, &sel)?;
            let coords = bc
                .quotient
                .class_of(&block.coordinates(&w)?)
                .ok_or_else(|| Error::NotACocycle(format!("bracket of {} and {} is not closed", a.label, b.label)))?;
            out.push(BracketEntry { left: i, right: j, target: Some(sel), coords, target_reps: bc.reps });
        }
    }
    Ok(out)
}

/// Spot check that brackets with coboundaries are coboundaries: for each
/// class and each block among `classes`, up to `samples` boundary vectors.
pub fn bracket_well_defined(ce: &CeAlgebra, classes: &[Class], samples: usize) -> Result<bool, Error> {
    for a in classes {
        for b in classes {
            let bc = block_cohomology(ce, &b.selector)?;
            let block = enumerate_block(ce, &b.selector)?;
            for v in bc.quotient.boundaries().vectors().iter().take(samples) {
                let w = ce.bracket(&a.rep, &block.cochain(v));
                if w.is_zero() {
                    continue;
                }
                let sel = selector_of(ce, &w, &a.selector)?;
                let tb = enumerate_block(ce, &sel)?;
                let d_in = d_matrix(ce, &sel.with_degree(sel.degree - 1))?;
                if !image(&d_in).contains(&tb.coordinates(&w)?) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KerDeltaRow {
    pub selector: Selector,
    pub dim: usize,
    pub ker_dim: usize,
    pub betti_full: usize,
    pub betti_ker: usize,
}

#[derive(Clone, Debug)]
pub struct KerDeltaTable {
    pub eigenvalues: Vec<(Scalar, usize)>,
    pub rows: Vec<KerDeltaRow>,
    /// `B` maps `Ker Δ` into itself on every enumerated block.
    pub bv_restricts: bool,
}

impl KerDeltaTable {
    pub fn quasi_isomorphic(&self) -> bool {
        self.rows.iter().all(|r| r.betti_full == r.betti_ker)
    }
}

fn columns_matrix(rows: usize, cols: &[SparseVec]) -> SparseMatrix {
    SparseMatrix::from_columns(rows, cols)
}

fn ker_delta_basis(ce: &CeAlgebra, sel: &Selector) -> Result<SubspaceBasis, Error> {
    Ok(rank_kernel(&delta_operator(ce, sel)?.matrix).1)
}

/// Cohomology of the subcomplex `Ker Δ` compared with the full complex.
pub fn ker_delta_complex(
    ce: &CeAlgebra,
    degrees: RangeInclusive<i64>,
    truncation: &Truncation,
) -> Result<KerDeltaTable, Error> {
    let parts = eigen_split(&delta_on_generators(ce)?)?;
    let eigenvalues = parts.iter().map(|(l, s)| (l.clone(), s.dim())).collect();
    let mut rows = Vec::new();
    let mut bv_restricts = true;
    for deg in degrees {
        for sel in truncation.selectors(ce, deg) {
            let block = enumerate_block(ce, &sel)?;
            if block.is_empty() {
                continue;
            }
            let prev_sel = sel.with_degree(deg - 1);
            let k = ker_delta_basis(ce, &sel)?;
            let k_prev = ker_delta_basis(ce, &prev_sel)?;
            let d_out = d_matrix(ce, &sel)?;
            let d_in = d_matrix(ce, &prev_sel)?;
            let dk: Vec<SparseVec> = k.vectors().iter().map(|v| d_out.mul_vec(v)).collect();
            let cycles = k.dim() - columns_matrix(d_out.rows(), &dk).rank();
            let dk_prev: Vec<SparseVec> = k_prev.vectors().iter().map(|v| d_in.mul_vec(v)).collect();
            let boundaries = columns_matrix(d_in.rows(), &dk_prev).rank();
            let full = block_cohomology(ce, &sel)?;
            rows.push(KerDeltaRow {
                selector: sel.clone(),
                dim: block.len(),
                ker_dim: k.dim(),
                betti_full: full.betti,
                betti_ker: cycles - boundaries,
            });
            let b_out = crate::cochain::block::bv_operator(ce, &sel)?.matrix;
            for v in k.vectors() {
                if !k_prev.contains(&b_out.mul_vec(v)) {
                    bv_restricts = false;
                }
            }
        }
    }
    Ok(KerDeltaTable { eigenvalues, rows, bv_restricts })
}
