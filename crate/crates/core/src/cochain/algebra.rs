use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::exact_linalg::Scalar;
use crate::glie::{sgn, Bialgebra};
use crate::Error;

/// Normal-ordered monomial: nondecreasing generator indices, odd generators
/// at most once.
pub type Monomial = Vec<usize>;

/// Rational combination of normal-ordered monomials with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cochain {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Cochain {
    pub fn zero() -> Self {
        Cochain::default()
    }

    pub fn one() -> Self {
        Cochain::monomial(Vec::new(), Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Cochain { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[usize]) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, factor: &Scalar, other: &Cochain) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), factor * c);
        }
    }

    pub fn plus(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), other);
        out
    }

    pub fn minus(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), other);
        out
    }

    pub fn scaled(&self, factor: &Scalar) -> Cochain {
        let mut out = Cochain::zero();
        out.add_scaled(factor, self);
        out
    }
}

/// Chevalley-Eilenberg algebra `C•(g) = S•(g*[−1])` of a bialgebra, with its
/// differential, shifted Poisson bracket and BV operator.
pub struct CeAlgebra {
    pub bialgebra: Bialgebra,
    degrees: Vec<i64>,
    odd: Vec<bool>,
    dgen: Vec<Cochain>,
    fingerprint: String,
    bracket_memo: Mutex<HashMap<(Monomial, Monomial), Cochain>>,
}

impl CeAlgebra {
    pub fn new(b: &Bialgebra) -> Self {
        let g = &b.algebra;
        let degrees: Vec<i64> = (0..g.dim()).map(|i| 1 - g.degree(i)).collect();
        let odd = degrees.iter().map(|d| d.rem_euclid(2) == 1).collect();
        let mut ce = CeAlgebra {
            bialgebra: b.clone(),
            degrees,
            odd,
            dgen: Vec::new(),
            fingerprint: crate::cli::fingerprint(b),
            bracket_memo: Mutex::new(HashMap::new()),
        };
        ce.dgen = (0..g.dim()).map(|k| ce.d_generator(k)).collect();
        ce
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn num_generators(&self) -> usize {
        self.degrees.len()
    }

    pub fn shift(&self) -> i64 {
        self.bialgebra.shift_n
    }

    /// Cochain degree `1 − ē_i` of the generator dual to `e_i`.
    pub fn generator_degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.odd[i]
    }

    /// Negated weight of `e_i`.
    pub fn generator_weight(&self, i: usize) -> Option<Vec<i64>> {
        self.bialgebra.algebra.weight(i).map(|w| w.iter().map(|x| -x).collect())
    }

    pub fn generator(&self, i: usize) -> Cochain {
        Cochain::monomial(vec![i], Scalar::one())
    }

    pub fn generator_name(&self, i: usize) -> String {
        format!("f[{}]", self.bialgebra.algebra.name(i))
    }

    pub fn monomial_degree(&self, m: &[usize]) -> i64 {
        m.iter().map(|&i| self.degrees[i]).sum()
    }

    pub fn monomial_weight(&self, m: &[usize]) -> Option<Vec<i64>> {
        let len = self.bialgebra.algebra.weight(0).map(|w| w.len())?;
        let mut acc = vec![0; len];
        for &i in m {
            let w = self.bialgebra.algebra.weight(i)?;
            for (a, x) in acc.iter_mut().zip(w) {
                *a -= x;
            }
        }
        Some(acc)
    }

    pub fn is_valid_monomial(&self, m: &[usize]) -> bool {
        m.windows(2).all(|w| w[0] < w[1] || (w[0] == w[1] && !self.odd[w[0]]))
            && m.iter().all(|&i| i < self.degrees.len())
    }

    /// Human-readable form, e.g. `f[h]*f[e12]^2`.
    pub fn format_monomial(&self, m: &[usize]) -> String {
        if m.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < m.len() {
            let mut j = i;
            while j < m.len() && m[j] == m[i] {
                j += 1;
            }
            let g = self.generator_name(m[i]);
            parts.push(if j - i > 1 { format!("{g}^{}", j - i) } else { g });
            i = j;
        }
        parts.join("*")
    }

    pub fn format(&self, c: &Cochain) -> String {
        if c.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, v)) in c.terms().iter().enumerate() {
            let (sign, mag) = if v.is_negative() { ("-", v.abs()) } else { ("+", v.clone()) };
            if k == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if mag.is_one() {
                out.push_str(&self.format_monomial(m));
            } else if m.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                out.push_str(&format!("{mag}*{}", self.format_monomial(m)));
            }
        }
        out
    }

    /// Product of two normal-ordered monomials with its Koszul sign, or
    /// `None` when an odd generator repeats.
    pub fn mul_monomials(&self, a: &[usize], b: &[usize]) -> Option<(Monomial, i64)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut odd_left = a.iter().filter(|&&x| self.odd[x]).count();
        let mut sign = 1;
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] <= b[j]) {
                if j < b.len() && a[i] == b[j] && self.odd[a[i]] {
                    return None;
                }
                if self.odd[a[i]] {
                    odd_left -= 1;
                }
                out.push(a[i]);
                i += 1;
            } else {
                if self.odd[b[j]] && odd_left % 2 == 1 {
                    sign = -sign;
                }
                out.push(b[j]);
                j += 1;
            }
        }
        Some((out, sign))
    }

    pub fn mul(&self, u: &Cochain, v: &Cochain) -> Cochain {
        let mut out = Cochain::zero();
        for (a, x) in u.terms() {
            for (b, y) in v.terms() {
                if let Some((m, s)) = self.mul_monomials(a, b) {
                    out.add_term(m, Scalar::from_int(s) * x * y);
                }
            }
        }
        out
    }

    /// Extends generator images to the derivation of degree `deg_d`:
    /// `D(u_1…u_m) = Σ (−1)^{deg_d · Σ_{l<i}|u_l|} u_1…D(u_i)…u_m`.
    pub fn derivation(&self, images: &dyn Fn(usize) -> Cochain, deg_d: i64, c: &Cochain) -> Cochain {
        let mut out = Cochain::zero();
        for (m, x) in c.terms() {
            let mut pre = 0;
            for (i, &g) in m.iter().enumerate() {
                let img = images(g);
                if !img.is_zero() {
                    let left = Cochain::monomial(m[..i].to_vec(), Scalar::one());
                    let right = Cochain::monomial(m[i + 1..].to_vec(), Scalar::one());
                    let t = self.mul(&self.mul(&left, &img), &right);
                    out.add_scaled(&(Scalar::from_int(sgn(deg_d * pre)) * x), &t);
                }
                pre += self.degrees[g];
            }
        }
        out
    }

    // d f^k = ½ Σ_{p,q} (−1)^{ē_p ē_q + ē_p} c_pq^k f^p f^q
    fn d_generator(&self, k: usize) -> Cochain {
        let g = &self.bialgebra.algebra;
        let half = Scalar::new(1, 2);
        let mut out = Cochain::zero();
        for (&(p, q), v) in g.tensor() {
            if let Some(c) = v.get(&k) {
                let s = sgn(g.degree(p) * g.degree(q) + g.degree(p));
                if let Some((m, ms)) = self.mul_monomials(&[p], &[q]) {
                    out.add_term(m, Scalar::from_int(s * ms) * &half * c);
                }
            }
        }
        out
    }

    pub fn d_of_generator(&self, k: usize) -> &Cochain {
        &self.dgen[k]
    }

    pub fn d(&self, c: &Cochain) -> Cochain {
        self.derivation(&|g| self.dgen[g].clone(), 1, c)
    }

    /// `⟨f^i, f^j⟩ = Σ_k γ^{ij}_k f^k`.
    pub fn bracket_generators(&self, i: usize, j: usize) -> Cochain {
        let mut out = Cochain::zero();
        for (&k, v) in &self.bialgebra.gamma(i, j) {
            out.add_term(vec![k], v.clone());
        }
        out
    }

    /// The `(n+1)`-shifted Poisson bracket, a biderivation determined by its
    /// values on generators.
    pub fn bracket(&self, u: &Cochain, v: &Cochain) -> Cochain {
        let mut out = Cochain::zero();
        for (a, x) in u.terms() {
            for (b, y) in v.terms() {
                out.add_scaled(&(x * y), &self.bracket_monomials(a, b));
            }
        }
        out
    }

    pub fn bracket_monomials(&self, a: &[usize], b: &[usize]) -> Cochain {
        let shift = self.shift() + 1;
        let gens = |i: usize, j: usize| self.bracket_generators(i, j);
        if let Some(c) = self.bracket_memo.lock().unwrap().get(&(a.to_vec(), b.to_vec())) {
            return c.clone();
        }
        let out = biderivation(self, &gens, shift, a, b);
        self.bracket_memo.lock().unwrap().insert((a.to_vec(), b.to_vec()), out.clone());
        out
    }

    /// BV operator `B`: zero on 1 and generators, `B(uv) = (−1)^{|u|}⟨u, v⟩` on
    /// quadratics, second order in general. Exists only for even shift.
    pub fn bv(&self, c: &Cochain) -> Result<Cochain, Error> {
        if self.shift().rem_euclid(2) != 0 {
            return Err(Error::ShiftParity(format!(
                "BV operator needs an even shift, got n = {}",
                self.shift()
            )));
        }
        let mut out = Cochain::zero();
        for (m, x) in c.terms() {
            let len = m.len();
            for i in 0..len {
                let pre_i: i64 = m[..i].iter().map(|&l| self.degrees[l]).sum();
                for j in i + 1..len {
                    let pre_j: i64 = m[..j].iter().map(|&l| self.degrees[l]).sum::<i64>() - self.degrees[m[i]];
                    let s = sgn(self.degrees[m[i]] * pre_i) * sgn(self.degrees[m[j]] * pre_j) * sgn(self.degrees[m[i]]);
                    let br = self.bracket_generators(m[i], m[j]);
                    if br.is_zero() {
                        continue;
                    }
                    let rest: Monomial = m
                        .iter()
                        .enumerate()
                        .filter(|&(l, _)| l != i && l != j)
                        .map(|(_, &g)| g)
                        .collect();
                    let t = self.mul(&br, &Cochain::monomial(rest, Scalar::one()));
                    out.add_scaled(&(Scalar::from_int(s) * x), &t);
                }
            }
        }
        Ok(out)
    }

    /// `Δ = Bd + dB`.
    pub fn delta(&self, c: &Cochain) -> Result<Cochain, Error> {
        let bd = self.bv(&self.d(c))?;
        let db = self.d(&self.bv(c)?);
        Ok(bd.plus(&db))
    }
}

/// Biderivation with shifted signs determined by generator values:
/// `⟨x, yz⟩ = ⟨x, y⟩z + (−1)^{(|x| − s)|y|} y⟨x, z⟩` and
/// `⟨x, y⟩ = −(−1)^{(|x| − s)(|y| − s)}⟨y, x⟩`, where `s` is the shift.
pub(crate) fn biderivation(
    ce: &CeAlgebra,
    gens: &dyn Fn(usize, usize) -> Cochain,
    shift: i64,
    a: &[usize],
    b: &[usize],
) -> Cochain {
    if a.is_empty() || b.is_empty() {
        return Cochain::zero();
    }
    if b.len() > 1 {
        let y = &b[..1];
        let z = &b[1..];
        let t1 = ce.mul(&biderivation(ce, gens, shift, a, y), &Cochain::monomial(z.to_vec(), Scalar::one()));
        let t2 = ce.mul(&Cochain::monomial(y.to_vec(), Scalar::one()), &biderivation(ce, gens, shift, a, z));
        let s = sgn((ce.monomial_degree(a) - shift) * ce.monomial_degree(y));
        let mut out = t1;
        out.add_scaled(&Scalar::from_int(s), &t2);
        return out;
    }
    if a.len() > 1 {
        let s = -sgn((ce.monomial_degree(a) - shift) * (ce.monomial_degree(b) - shift));
        return biderivation(ce, gens, shift, b, a).scaled(&Scalar::from_int(s));
    }
    gens(a[0], b[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glie::{standard_for_dims, Restriction};

    fn borel() -> CeAlgebra {
        CeAlgebra::new(&standard_for_dims(&[(0, 1), (1, 1)], Restriction::Q1).unwrap())
    }

    #[test]
    fn odd_squares_vanish() {
        let ce = borel();
        // t = f[h] has degree 1
        assert!(ce.is_odd(0));
        assert!(ce.mul_monomials(&[0], &[0]).is_none());
        assert_eq!(ce.mul_monomials(&[1], &[1]), Some((vec![1, 1], 1)));
    }

    #[test]
    fn bracket_on_borel() {
        let ce = borel();
        let (t, x) = (ce.generator(0), ce.generator(1));
        assert_eq!(ce.bracket(&t, &x), x.scaled(&Scalar::new(1, 2)));
        assert!(ce.bracket(&x, &x).is_zero());
        assert!(ce.bracket(&t, &t).is_zero());
        let x2 = ce.mul(&x, &x);
        assert_eq!(ce.bracket(&t, &x2), x2);
        // B(t x) = (−1)^{|t|}⟨t, x⟩
        let tx = ce.mul(&t, &x);
        assert_eq!(ce.bv(&tx).unwrap(), x.scaled(&Scalar::new(-1, 2)));
    }
}
