use std::ops::RangeInclusive;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::cochain::algebra::{CeAlgebra, Cochain, Monomial};
use crate::cochain::block::{bv_operator, ce_differential, delta_operator, Selector};
use crate::cochain::cohomology::Truncation;
use crate::exact_linalg::{Scalar, SparseVec};
use crate::glie::{sgn, validate_structures, Bialgebra, Check, Tensor3};
use crate::Error;

/// Window and sample sizes for [`identity_suite`].
#[derive(Clone, Debug)]
pub struct IdentityWindow {
    pub degrees: RangeInclusive<i64>,
    pub s_max: i64,
    /// Longest monomial used as one argument of a pair; pairs then have total
    /// length at most twice this.
    pub pair_len: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for IdentityWindow {
    fn default() -> Self {
        IdentityWindow { degrees: -2..=4, s_max: 4, pair_len: 2, samples: 200, seed: 7 }
    }
}

/// All normal-ordered monomials with at most `max_len` factors.
pub fn monomials_up_to(ce: &CeAlgebra, max_len: usize) -> Vec<Monomial> {
    fn go(ce: &CeAlgebra, max_len: usize, start: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        out.push(cur.clone());
        if cur.len() == max_len {
            return;
        }
        for g in start..ce.num_generators() {
            if cur.last() == Some(&g) && ce.is_odd(g) {
                continue;
            }
            cur.push(g);
            go(ce, max_len, g, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(ce, max_len, 0, &mut Vec::new(), &mut out);
    out
}

fn check(name: &str, bad: Option<Vec<String>>, details: &str) -> Check {
    Check {
        name: name.into(),
        pass: bad.is_none(),
        details: details.into(),
        witness: bad,
    }
}

fn mono(m: &Monomial) -> Cochain {
    Cochain::monomial(m.clone(), Scalar::one())
}

fn degree(ce: &CeAlgebra, m: &Monomial) -> i64 {
    ce.monomial_degree(m)
}

fn sign(k: i64) -> Scalar {
    Scalar::from_int(sgn(k))
}

/// `d` is a derivation on sampled monomial pairs.
pub fn leibniz_check(ce: &CeAlgebra, monos: &[Monomial], samples: usize, rng: &mut StdRng) -> Check {
    let mut bad = None;
    for _ in 0..samples {
        let a = &monos[rng.random_range(0..monos.len())];
        let b = &monos[rng.random_range(0..monos.len())];
        let (u, v) = (mono(a), mono(b));
        let lhs = ce.d(&ce.mul(&u, &v));
        let rhs = ce.mul(&ce.d(&u), &v).plus(&ce.mul(&u, &ce.d(&v)).scaled(&sign(degree(ce, a))));
        if lhs != rhs {
            bad = Some(vec![ce.format_monomial(a), ce.format_monomial(b)]);
            break;
        }
    }
    check("Leibniz (d)", bad, &format!("{samples} sampled pairs"))
}

/// The bracket read off from `B` agrees with the biderivation bracket on all
/// pairs from `monos`.
pub fn generation_check(ce: &CeAlgebra, monos: &[Monomial]) -> Result<Check, Error> {
    for a in monos {
        let u = mono(a);
        let bu = ce.bv(&u)?;
        let su = sign(degree(ce, a));
        for b in monos {
            let v = mono(b);
            let from_b = ce
                .bv(&ce.mul(&u, &v))?
                .minus(&ce.mul(&bu, &v))
                .minus(&ce.mul(&u, &ce.bv(&v)?).scaled(&su))
                .scaled(&su);
            if from_b != ce.bracket(&u, &v) {
                let w = vec![ce.format_monomial(a), ce.format_monomial(b)];
                return Ok(check("generation identity", Some(w), ""));
            }
        }
    }
    Ok(check("generation identity", None, &format!("{} pairs", monos.len() * monos.len())))
}

/// Shifted antisymmetry on all pairs and shifted Jacobi on sampled triples.
pub fn bracket_checks(ce: &CeAlgebra, monos: &[Monomial], samples: usize, rng: &mut StdRng) -> Vec<Check> {
    let s = ce.shift() + 1;
    let p = |m: &Monomial| degree(ce, m) - s;
    let mut anti = None;
    'outer: for a in monos {
        for b in monos {
            let lhs = ce.bracket(&mono(a), &mono(b));
            let rhs = ce.bracket(&mono(b), &mono(a)).scaled(&-sign(p(a) * p(b)));
            if lhs != rhs {
                anti = Some(vec![ce.format_monomial(a), ce.format_monomial(b)]);
                break 'outer;
            }
        }
    }
    let mut jac = None;
    for _ in 0..samples {
        let pick = |rng: &mut StdRng| monos[rng.random_range(0..monos.len())].clone();
        let (a, b, c) = (pick(rng), pick(rng), pick(rng));
        let (u, v, w) = (mono(&a), mono(&b), mono(&c));
        let lhs = ce.bracket(&u, &ce.bracket(&v, &w));
        let rhs = ce
            .bracket(&ce.bracket(&u, &v), &w)
            .plus(&ce.bracket(&v, &ce.bracket(&u, &w)).scaled(&sign(p(&a) * p(&b))));
        if lhs != rhs {
            jac = Some(vec![ce.format_monomial(&a), ce.format_monomial(&b), ce.format_monomial(&c)]);
            break;
        }
    }
    vec![
        check("bracket antisymmetry", anti, &format!("shift {s}")),
        check("bracket Jacobi", jac, &format!("{samples} sampled triples, shift {s}")),
    ]
}

/// `Δ(uv) = Δ(u)v + uΔ(v)` on sampled pairs.
pub fn delta_derivation_check(ce: &CeAlgebra, monos: &[Monomial], samples: usize, rng: &mut StdRng) -> Result<Check, Error> {
    for _ in 0..samples {
        let a = &monos[rng.random_range(0..monos.len())];
        let b = &monos[rng.random_range(0..monos.len())];
        let (u, v) = (mono(a), mono(b));
        let lhs = ce.delta(&ce.mul(&u, &v))?;
        let rhs = ce.mul(&ce.delta(&u)?, &v).plus(&ce.mul(&u, &ce.delta(&v)?));
        if lhs != rhs {
            let w = vec![ce.format_monomial(a), ce.format_monomial(b)];
            return Ok(check("Δ derivation", Some(w), ""));
        }
    }
    Ok(check("Δ derivation", None, &format!("{samples} sampled pairs")))
}

/// `d⟨u,v⟩ = ⟨du,v⟩ + (−1)^{|u|−n−1}⟨u,dv⟩` on generator pairs.
pub fn compatibility_check(ce: &CeAlgebra) -> Check {
    let s = ce.shift() + 1;
    let mut bad = None;
    'outer: for i in 0..ce.num_generators() {
        for j in 0..ce.num_generators() {
            let (u, v) = (ce.generator(i), ce.generator(j));
            let lhs = ce.d(&ce.bracket(&u, &v));
            let rhs = ce
                .bracket(&ce.d(&u), &v)
                .plus(&ce.bracket(&u, &ce.d(&v)).scaled(&sign(ce.generator_degree(i) - s)));
            if lhs != rhs {
                bad = Some(vec![ce.generator_name(i), ce.generator_name(j)]);
                break 'outer;
            }
        }
    }
    check("compatibility", bad, "generator pairs")
}

/// Blockwise `d² = 0`, `B² = 0` and commutation of `Δ` with `d` and `B`.
pub fn block_checks(ce: &CeAlgebra, degrees: RangeInclusive<i64>, s_max: i64) -> Result<Vec<Check>, Error> {
    let has_bv = ce.shift() % 2 == 0;
    let trunc = Truncation::SMax(s_max);
    let (mut dd, mut bb, mut ld, mut lb) = (None, None, None, None);
    let mut blocks = 0usize;
    for deg in degrees.clone() {
        for sel in trunc.selectors(ce, deg) {
            blocks += 1;
            let up = sel.with_degree(deg + 1);
            let d1 = ce_differential(ce, &sel)?.matrix;
            let d2 = ce_differential(ce, &up)?.matrix;
            let wit = |sel: &Selector| Some(vec![sel.to_string()]);
            if dd.is_none() && !d2.mul(&d1).is_zero() {
                dd = wit(&sel);
            }
            if !has_bv {
                continue;
            }
            let down = sel.with_degree(deg - 1);
            let b1 = bv_operator(ce, &sel)?.matrix;
            let b2 = bv_operator(ce, &down)?.matrix;
            if bb.is_none() && !b2.mul(&b1).is_zero() {
                bb = wit(&sel);
            }
            let l = delta_operator(ce, &sel)?.matrix;
            if ld.is_none() && d1.mul(&l) != delta_operator(ce, &up)?.matrix.mul(&d1) {
                ld = wit(&sel);
            }
            if lb.is_none() && b1.mul(&l) != delta_operator(ce, &down)?.matrix.mul(&b1) {
                lb = wit(&sel);
            }
        }
    }
    let details = format!("degrees {}..{}, |s| <= {s_max}, {blocks} blocks", degrees.start(), degrees.end());
    let mut out = vec![check("d² = 0", dd, &details)];
    if has_bv {
        out.push(check("B² = 0", bb, &details));
        out.push(check("Δd = dΔ", ld, &details));
        out.push(check("ΔB = BΔ", lb, &details));
    }
    Ok(out)
}

/// The full identity suite. Checks involving `B` are omitted when the shift
/// `n` is odd, where `B` is not defined.
pub fn identity_suite(ce: &CeAlgebra, w: &IdentityWindow) -> Result<Vec<Check>, Error> {
    let mut rng = StdRng::seed_from_u64(w.seed);
    let pairs = monomials_up_to(ce, w.pair_len);
    let longer = monomials_up_to(ce, w.pair_len + 1);
    let mut out = block_checks(ce, w.degrees.clone(), w.s_max)?;
    out.push(leibniz_check(ce, &longer, w.samples, &mut rng));
    out.extend(bracket_checks(ce, &pairs, w.samples, &mut rng));
    if ce.shift() % 2 == 0 {
        out.push(generation_check(ce, &pairs)?);
        out.push(delta_derivation_check(ce, &longer, w.samples, &mut rng)?);
    }
    out.push(compatibility_check(ce));
    Ok(out)
}

/// Single-entry perturbations `γ^{ij}_k += 1` (with the graded mirror entry)
/// that respect degrees and break the cocycle condition, in a fixed order.
pub fn cobracket_mutations(b: &Bialgebra, count: usize) -> Vec<(String, Bialgebra)> {
    let dim = b.dim();
    let dd: Vec<i64> = (0..dim).map(|i| b.dual_degree(i)).collect();
    let mut out = Vec::new();
    for k in 0..dim {
        for i in 0..dim {
            for j in i..dim {
                if out.len() == count {
                    return out;
                }
                if dd[i] + dd[j] != dd[k] || (i == j && dd[i] % 2 == 0) {
                    continue;
                }
                let mut t: Tensor3 = b.cobracket_tensor().clone();
                let bump = |t: &mut Tensor3, key: (usize, usize), x: Scalar| {
                    let e = t.entry(key).or_insert_with(SparseVec::new);
                    let v = e.remove(&k).unwrap_or_else(Scalar::zero) + x;
                    if !v.is_zero() {
                        e.insert(k, v);
                    }
                    if e.is_empty() {
                        t.remove(&key);
                    }
                };
                bump(&mut t, (i, j), Scalar::one());
                if i != j {
                    bump(&mut t, (j, i), -Scalar::from_int(sgn(dd[i] * dd[j])));
                }
                let m = b.with_cobracket(t);
                if !validate_structures(&m).get("cocycle").is_some_and(|c| c.pass) {
                    let label = format!("γ[{},{}→{}] += 1", b.algebra.name(i), b.algebra.name(j), b.algebra.name(k));
                    out.push((label, m));
                }
            }
        }
    }
    out
}

/// Number of cocycle-breaking mutations caught by the compatibility check,
/// out of the number tried.
pub fn mutation_detection(b: &Bialgebra, count: usize) -> (usize, usize) {
    let muts = cobracket_mutations(b, count);
    let caught = muts
        .iter()
        .filter(|(_, m)| !compatibility_check(&CeAlgebra::new(m)).pass)
        .count();
    (caught, muts.len())
}
