use std::collections::BTreeMap;

use serde::Serialize;

use crate::exact_linalg::sparse::{axpy, unit};
use crate::exact_linalg::{rank_kernel, Scalar, SparseMatrix, SparseVec};
use crate::glie::algebra::{sgn, GradedLie};
use crate::glie::bialgebra::{Bialgebra, ManinTriple};

/// Outcome of one identity check; failures carry the first violating basis
/// tuple by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: String,
    pub witness: Option<Vec<String>>,
}

impl Check {
    fn from_failures(name: &str, total: usize, failures: Vec<Vec<String>>) -> Check {
        let pass = failures.is_empty();
        let details = if pass {
            format!("{total} cases")
        } else {
            format!("{} of {total} cases fail", failures.len())
        };
        Check { name: name.to_string(), pass, details, witness: failures.into_iter().next() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passes(&self, name: &str) -> bool {
        self.get(name).map_or(false, |c| c.pass)
    }

    pub fn failing(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

fn names(g: &GradedLie, ix: &[usize]) -> Vec<String> {
    ix.iter().map(|&i| g.name(i).to_string()).collect()
}

pub fn check_degrees(g: &GradedLie) -> Check {
    let mut bad = Vec::new();
    let mut total = 0;
    for (&(i, j), v) in g.tensor() {
        for &k in v.keys() {
            total += 1;
            let deg_ok = g.degree(k) == g.degree(i) + g.degree(j);
            let weight_ok = match (g.weight(i), g.weight(j), g.weight(k)) {
                (Some(a), Some(b), Some(c)) => {
                    a.len() == c.len() && b.len() == c.len() && (0..c.len()).all(|t| a[t] + b[t] == c[t])
                }
                _ => true,
            };
            if !(deg_ok && weight_ok) {
                bad.push(names(g, &[i, j, k]));
            }
        }
    }
    Check::from_failures("degree homogeneity", total, bad)
}

pub fn check_antisymmetry(g: &GradedLie) -> Check {
    let mut bad = Vec::new();
    let n = g.dim();
    for i in 0..n {
        for j in i..n {
            let s = Scalar::sign(g.degree(i) * g.degree(j));
            let mut sum = g.bracket_basis(i, j);
            axpy(&mut sum, &s, &g.bracket_basis(j, i));
            if !sum.is_empty() {
                bad.push(names(g, &[i, j]));
            }
        }
    }
    Check::from_failures("graded antisymmetry", n * (n + 1) / 2, bad)
}

/// `[x,[y,z]] = [[x,y],z] + (−1)^{x̄ȳ}[y,[x,z]]` on all basis triples.
pub fn check_jacobi(g: &GradedLie) -> Check {
    let n = g.dim();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let xy = g.bracket_basis(i, j);
            for k in 0..n {
                let (x, y, z) = (unit(i), unit(j), unit(k));
                let mut lhs = g.bracket(&x, &g.bracket(&y, &z));
                axpy(&mut lhs, &-Scalar::one(), &g.bracket(&xy, &z));
                let s = Scalar::sign(g.degree(i) * g.degree(j));
                axpy(&mut lhs, &-s, &g.bracket(&y, &g.bracket(&x, &z)));
                if !lhs.is_empty() {
                    bad.push(names(g, &[i, j, k]));
                }
            }
        }
    }
    Check::from_failures("Jacobi", n * n * n, bad)
}

pub fn validate_lie(g: &GradedLie) -> ValidationReport {
    ValidationReport { checks: vec![check_degrees(g), check_antisymmetry(g), check_jacobi(g)] }
}

type Tensor2 = BTreeMap<(usize, usize), Scalar>;

fn add_to(t: &mut Tensor2, key: (usize, usize), v: Scalar) {
    let e = t.entry(key).or_insert_with(Scalar::zero);
    *e += v;
    if e.is_zero() {
        t.remove(&key);
    }
}

/// `ad_x` on `g ⊗ g`: `[x,a] ⊗ b + (−1)^{x̄ā} a ⊗ [x,b]`.
fn ad_tensor(g: &GradedLie, x: usize, t: &Tensor2) -> Tensor2 {
    let mut out = Tensor2::new();
    for (&(a, b), v) in t {
        for (&c, y) in &g.bracket_basis(x, a) {
            add_to(&mut out, (c, b), v * y);
        }
        let s = Scalar::sign(g.degree(x) * g.degree(a));
        for (&c, y) in &g.bracket_basis(x, b) {
            add_to(&mut out, (a, c), &(v * y) * &s);
        }
    }
    out
}

/// Cocycle condition `φ([x,y]) = ad_x φ(y) − (−1)^{x̄ȳ} ad_y φ(x)` evaluated
/// on tensors in `g ⊗ g`.
pub fn check_cocycle_tensor(b: &Bialgebra) -> Check {
    let g = &b.algebra;
    let phi = b.phi_tensor();
    let empty = Tensor2::new();
    let n = g.dim();
    let mut bad = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let mut acc = Tensor2::new();
            for (&k, c) in &g.bracket_basis(x, y) {
                for (&key, v) in phi.get(&k).unwrap_or(&empty) {
                    add_to(&mut acc, key, c * v);
                }
            }
            for (key, v) in ad_tensor(g, x, phi.get(&y).unwrap_or(&empty)) {
                add_to(&mut acc, key, -v);
            }
            let s = Scalar::sign(g.degree(x) * g.degree(y));
            for (key, v) in ad_tensor(g, y, phi.get(&x).unwrap_or(&empty)) {
                add_to(&mut acc, key, &s * &v);
            }
            if !acc.is_empty() {
                bad.push(names(g, &[x, y]));
            }
        }
    }
    Check::from_failures("cocycle", n * n, bad)
}

/// The same cocycle condition written directly in the constants `γ` and `c`,
/// as the coefficient identity obtained from the Jacobi identity of the double.
pub fn check_cocycle_constants(b: &Bialgebra) -> Check {
    let g = &b.algebra;
    let d = g.dim();
    let n = b.shift_n;
    let e = g.degrees();
    let gam = |a: usize, bb: usize, c: usize| b.gamma_coeff(a, bb, c);
    let c = |a: usize, bb: usize, k: usize| g.structure_constant(a, bb, k);
    let mut bad = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let mut failed = false;
            for k in 0..d {
                for q in 0..d {
                    let mut acc = Scalar::zero();
                    for m in 0..d {
                        let s = |x: i64| Scalar::from_int(sgn(x));
                        acc += s(e[k] * e[q] + n * e[k]) * gam(k, q, m) * c(i, j, m);
                        acc -= s(e[m] * e[q] + n * e[m]) * gam(m, q, j) * c(i, m, k);
                        acc -= s(e[k] * e[m] + n * e[k] + e[i] * e[k]) * gam(k, m, j) * c(i, m, q);
                        acc -= s(1 + e[i] * e[j] + e[m] * e[q] + n * e[m]) * gam(m, q, i) * c(j, m, k);
                        acc -= s(1 + e[i] * e[j] + e[k] * e[m] + n * e[k] + e[j] * e[k]) * gam(k, m, i) * c(j, m, q);
                    }
                    if !acc.is_zero() {
                        failed = true;
                    }
                }
            }
            if failed {
                bad.push(names(g, &[i, j]));
            }
        }
    }
    Check::from_failures("cocycle (structure constants)", d * d, bad)
}

fn check_cobracket_degrees(b: &Bialgebra) -> Check {
    let g = &b.algebra;
    let mut bad = Vec::new();
    let mut total = 0;
    for (&(i, j), v) in b.cobracket_tensor() {
        for &k in v.keys() {
            total += 1;
            let deg_ok = g.degree(i) + g.degree(j) == g.degree(k) - b.shift_n;
            let weight_ok = match (g.weight(i), g.weight(j), g.weight(k)) {
                (Some(a), Some(w), Some(c)) => (0..c.len()).all(|t| a[t] + w[t] == c[t]),
                _ => true,
            };
            if !(deg_ok && weight_ok) {
                bad.push(names(g, &[k, i, j]));
            }
        }
    }
    Check::from_failures("cobracket degrees", total, bad)
}

fn renamed(mut c: Check, name: &str) -> Check {
    c.name = name.to_string();
    c
}

/// Every structural identity of a shifted Lie bialgebra. Failures are report
/// entries, never errors.
pub fn validate_structures(b: &Bialgebra) -> ValidationReport {
    let g = &b.algebra;
    let dual = b.dual_algebra();
    let mut checks = vec![check_degrees(g), check_antisymmetry(g), check_jacobi(g), check_cobracket_degrees(b)];
    checks.push(renamed(check_antisymmetry(&dual), "co-antisymmetry"));
    checks.push(renamed(check_jacobi(&dual), "co-Jacobi"));
    checks.push(check_cocycle_tensor(b));
    checks.push(check_cocycle_constants(b));
    ValidationReport { checks }
}

/// Jacobi, invariance, symmetry and non-degeneracy of the form, isotropy and
/// closure of both halves, and the direct sum decomposition.
pub fn validate_manin(t: &ManinTriple) -> ValidationReport {
    let p = &t.total;
    let f = &t.form;
    let n = p.dim();
    let mut checks = validate_lie(p).checks;

    let mut bad = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let ab = p.bracket_basis(a, b);
            for c in 0..n {
                let lhs = f.eval(&ab, &unit(c));
                let rhs = f.eval(&unit(a), &p.bracket_basis(b, c));
                if lhs != rhs {
                    bad.push(names(p, &[a, b, c]));
                }
            }
        }
    }
    checks.push(Check::from_failures("form invariance", n * n * n, bad));

    let mut bad = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let s = Scalar::sign(p.degree(a) * p.degree(b));
            let v = f.get(a, b);
            let degree_ok = v.is_zero() || p.degree(a) + p.degree(b) == -f.shift;
            if v != &s * &f.get(b, a) || !degree_ok {
                bad.push(names(p, &[a, b]));
            }
        }
    }
    checks.push(Check::from_failures("form symmetry", n * n, bad));

    let gram = SparseMatrix::from_triplets(n, n, f.entries().iter().map(|(&(i, j), v)| (i, j, v.clone())));
    let (rank, _) = rank_kernel(&gram);
    checks.push(Check {
        name: "form non-degenerate".into(),
        pass: rank == n,
        details: format!("rank {rank} of {n}"),
        witness: None,
    });

    for (label, half) in [("plus", &t.plus), ("minus", &t.minus)] {
        let mut bad = Vec::new();
        for (na, a) in half {
            for (nb, b) in half {
                if !f.eval(a, b).is_zero() {
                    bad.push(vec![na.clone(), nb.clone()]);
                }
            }
        }
        checks.push(Check::from_failures(&format!("isotropy ({label})"), half.len() * half.len(), bad));

        let span = crate::exact_linalg::SubspaceBasis::span(n, half.iter().map(|(_, v)| v.clone()).collect());
        let mut bad = Vec::new();
        for (na, a) in half {
            for (nb, b) in half {
                if !span.contains(&p.bracket(a, b)) {
                    bad.push(vec![na.clone(), nb.clone()]);
                }
            }
        }
        checks.push(Check::from_failures(&format!("closure ({label})"), half.len() * half.len(), bad));
    }

    let all: Vec<SparseVec> = t.plus.iter().chain(t.minus.iter()).map(|(_, v)| v.clone()).collect();
    let count = all.len();
    let span = crate::exact_linalg::SubspaceBasis::span(n, all);
    checks.push(Check {
        name: "direct sum".into(),
        pass: count == n && span.dim() == n,
        details: format!("{} + {} vectors spanning {} of {n}", t.plus.len(), t.minus.len(), span.dim()),
        witness: None,
    });
    ValidationReport { checks }
}
