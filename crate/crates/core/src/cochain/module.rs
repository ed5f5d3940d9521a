use std::collections::BTreeMap;

use crate::cochain::algebra::{CeAlgebra, Cochain, Monomial};
use crate::cochain::block::{enumerate_block, Selector};
use crate::exact_linalg::sparse::{axpy, unit};
use crate::exact_linalg::{Scalar, SparseMatrix, SparseVec};
use crate::glie::{sgn, Bialgebra, GradedLie};
use crate::Error;

/// Graded `g`-module: `action[i][a]` is `e_i · m_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
    pub action: Vec<BTreeMap<usize, SparseVec>>,
}

impl Module {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn act(&self, i: usize, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&a, x) in v {
            if let Some(img) = self.action[i].get(&a) {
                axpy(&mut out, x, img);
            }
        }
        out
    }
}

/// One-dimensional module in degree 0 with zero action.
pub fn trivial_module(g: &GradedLie) -> Module {
    Module { names: vec!["1".into()], degrees: vec![0], action: vec![BTreeMap::new(); g.dim()] }
}

/// `(g ⊗ g)[−n]` with `x·(a ⊗ b) = [x,a] ⊗ b + (−1)^{x̄ā} a ⊗ [x,b]`; basis
/// index of `e_a ⊗ e_b` is `a·dim + b`.
pub fn adjoint_square_module(b: &Bialgebra) -> Module {
    let g = &b.algebra;
    let d = g.dim();
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for a in 0..d {
        for c in 0..d {
            names.push(format!("{}⊗{}", g.name(a), g.name(c)));
            degrees.push(g.degree(a) + g.degree(c) + b.shift_n);
        }
    }
    let mut action = Vec::with_capacity(d);
    for x in 0..d {
        let mut rho = BTreeMap::new();
        for a in 0..d {
            for c in 0..d {
                let mut out = SparseVec::new();
                for (&y, v) in &g.bracket_basis(x, a) {
                    axpy(&mut out, v, &unit(y * d + c));
                }
                let s = Scalar::from_int(sgn(g.degree(x) * g.degree(a)));
                for (&y, v) in &g.bracket_basis(x, c) {
                    axpy(&mut out, &(v * &s), &unit(a * d + y));
                }
                if !out.is_empty() {
                    rho.insert(a * d + c, out);
                }
            }
        }
        action.push(rho);
    }
    Module { names, degrees, action }
}

/// `ρ([x,y]) = ρ_x ρ_y − (−1)^{x̄ȳ} ρ_y ρ_x` on all basis pairs and vectors.
pub fn check_module(g: &GradedLie, m: &Module) -> Result<(), Error> {
    if m.action.len() != g.dim() {
        return Err(Error::NotAModule("action has the wrong number of operators".into()));
    }
    for x in 0..g.dim() {
        for y in 0..g.dim() {
            for a in 0..m.dim() {
                let v = unit(a);
                let mut lhs = SparseVec::new();
                for (&k, c) in &g.bracket_basis(x, y) {
                    axpy(&mut lhs, c, &m.act(k, &v));
                }
                axpy(&mut lhs, &-Scalar::one(), &m.act(x, &m.act(y, &v)));
                let s = Scalar::from_int(sgn(g.degree(x) * g.degree(y)));
                axpy(&mut lhs, &s, &m.act(y, &m.act(x, &v)));
                if !lhs.is_empty() {
                    return Err(Error::NotAModule(format!(
                        "fails on ({}, {}, {})",
                        g.name(x),
                        g.name(y),
                        m.names[a]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Cochain with coefficients: `(monomial, module basis index) -> coefficient`.
pub type ModuleCochain = BTreeMap<(Monomial, usize), Scalar>;

fn add(out: &mut ModuleCochain, key: (Monomial, usize), v: Scalar) {
    if v.is_zero() {
        return;
    }
    let e = out.entry(key.clone()).or_insert_with(Scalar::zero);
    *e += v;
    if e.is_zero() {
        out.remove(&key);
    }
}

/// `d(ω ⊗ m) = dω ⊗ m − Σ_i (−1)^{ē_i |ω|} f^i ω ⊗ e_i·m`.
pub fn d_module(ce: &CeAlgebra, module: &Module, w: &ModuleCochain) -> ModuleCochain {
    let g = &ce.bialgebra.algebra;
    let mut out = ModuleCochain::new();
    for ((mono, a), x) in w {
        let dw = ce.d(&Cochain::monomial(mono.clone(), Scalar::one()));
        for (m, y) in dw.terms() {
            add(&mut out, (m.clone(), *a), x * y);
        }
        let deg_w = ce.monomial_degree(mono);
        for i in 0..g.dim() {
            let Some(img) = module.action[i].get(a) else { continue };
            let Some((m, s)) = ce.mul_monomials(&[i], mono) else { continue };
            let sign = Scalar::from_int(-s * sgn(g.degree(i) * deg_w));
            for (&b, z) in img {
                add(&mut out, (m.clone(), b), &(x * z) * &sign);
            }
        }
    }
    out
}

/// `φ` as a 1-cochain with values in the adjoint-squared module.
pub fn phi_cochain(b: &Bialgebra) -> ModuleCochain {
    let d = b.dim();
    let mut out = ModuleCochain::new();
    for (k, m) in b.phi_tensor() {
        for ((i, j), v) in m {
            add(&mut out, (vec![k], i * d + j), v);
        }
    }
    out
}

/// Matrix of the module-coefficient differential from the cochains of a
/// block tensored with the module to all products one generator longer.
#[derive(Clone, Debug)]
pub struct ModuleBlockOperator {
    pub source: Vec<(Monomial, usize)>,
    pub target: Vec<(Monomial, usize)>,
    pub matrix: SparseMatrix,
}

pub fn ce_differential_module(ce: &CeAlgebra, module: &Module, selector: &Selector) -> Result<ModuleBlockOperator, Error> {
    check_module(&ce.bialgebra.algebra, module)?;
    let src_block = enumerate_block(ce, selector)?;
    let source: Vec<(Monomial, usize)> = src_block
        .basis
        .iter()
        .flat_map(|m| (0..module.dim()).map(move |a| (m.clone(), a)))
        .collect();
    let mut columns = Vec::with_capacity(source.len());
    let mut target_index: BTreeMap<(Monomial, usize), usize> = BTreeMap::new();
    for key in &source {
        let mut w = ModuleCochain::new();
        w.insert(key.clone(), Scalar::one());
        let img = d_module(ce, module, &w);
        for k in img.keys() {
            let next = target_index.len();
            target_index.entry(k.clone()).or_insert(next);
        }
        columns.push(img);
    }
    // Deterministic target order.
    let target: Vec<(Monomial, usize)> = target_index.keys().cloned().collect();
    let pos: BTreeMap<&(Monomial, usize), usize> = target.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut triplets = Vec::new();
    for (c, img) in columns.iter().enumerate() {
        for (k, v) in img {
            triplets.push((pos[k], c, v.clone()));
        }
    }
    let matrix = SparseMatrix::from_triplets(target.len(), source.len(), triplets);
    Ok(ModuleBlockOperator { source, target, matrix })
}
