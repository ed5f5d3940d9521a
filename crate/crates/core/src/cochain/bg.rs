use crate::cochain::algebra::{biderivation, CeAlgebra, Cochain};
use crate::exact_linalg::{inverse_rows, Scalar, SparseVec};
use crate::glie::BilinearForm;
use crate::Error;

/// The linear cochain `p(a) = (a, −) = Σ_j (a, e_j) f^j`.
pub fn linear_function(ce: &CeAlgebra, form: &BilinearForm, a: &SparseVec) -> Cochain {
    let mut out = Cochain::zero();
    for j in 0..ce.num_generators() {
        let mut e = SparseVec::new();
        e.insert(j, Scalar::one());
        out.add_term(vec![j], form.eval(a, &e));
    }
    out
}

/// Constant brackets of generators fixed by `{p(a), p(b)} = (−1)^{ā}(a, b)`.
fn generator_constants(ce: &CeAlgebra, form: &BilinearForm) -> Result<Vec<SparseVec>, Error> {
    let g = &ce.bialgebra.algebra;
    let n = g.dim();
    let f: Vec<SparseVec> = (0..n)
        .map(|a| (0..n).map(|b| (b, form.get(a, b))).filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    let fi = inverse_rows(&f, n).ok_or_else(|| Error::DegenerateForm("form matrix is singular".into()))?;
    // c = F⁻¹ S F⁻ᵀ with S_ab = (−1)^{ā} F_ab
    let dense = |rows: &[SparseVec], i: usize, j: usize| rows[i].get(&j).cloned().unwrap_or_else(Scalar::zero);
    let s: Vec<SparseVec> = (0..n)
        .map(|a| f[a].iter().map(|(&b, v)| (b, v * &Scalar::sign(g.degree(a)))).collect())
        .collect();
    let mut out = vec![SparseVec::new(); n];
    for j in 0..n {
        for l in 0..n {
            let mut acc = Scalar::zero();
            for (&a, x) in &fi[j] {
                for (&b, y) in &s[a] {
                    acc += &(x * y) * &dense(&fi, l, b);
                }
            }
            if !acc.is_zero() {
                out[j].insert(l, acc);
            }
        }
    }
    Ok(out)
}

/// The `(n+2)`-shifted bracket on `C•(g)` that is constant on linear
/// functions, extended as a biderivation.
pub fn bg_poisson_bracket(ce: &CeAlgebra, form: &BilinearForm, u: &Cochain, v: &Cochain) -> Result<Cochain, Error> {
    let consts = generator_constants(ce, form)?;
    let gens = |i: usize, j: usize| Cochain::monomial(Vec::new(), consts[i].get(&j).cloned().unwrap_or_else(Scalar::zero));
    let shift = form.shift + 2;
    let mut out = Cochain::zero();
    for (a, x) in u.terms() {
        for (b, y) in v.terms() {
            out.add_scaled(&(x * y), &biderivation(ce, &gens, shift, a, b));
        }
    }
    Ok(out)
}
