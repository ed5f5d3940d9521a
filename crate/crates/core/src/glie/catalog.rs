use std::collections::BTreeMap;

use crate::exact_linalg::sparse::{axpy, unit};
use crate::exact_linalg::{inverse_rows, rank_kernel, Scalar, SparseMatrix, SparseVec};
use crate::glie::algebra::{sgn, BasisElement, GradedLie, Tensor3};
use crate::glie::bialgebra::{Bialgebra, BilinearForm, ManinTriple, RMatrix, Side};
use crate::glie::manin::{dual_bialgebra, manin_to_bialgebra, restrict};
use crate::glie::validate::validate_structures;
use crate::Error;

/// `End(V)` for a graded vector space `V`, with basis `e_ij = v_i ⊗ v_j*`
/// of degree `α_j − α_i` and weight `ε_i − ε_j`.
#[derive(Clone, Debug)]
pub struct EndGraded {
    pub lie: GradedLie,
    pub alphas: Vec<i64>,
}

fn entry_name(i: usize, j: usize, size: usize) -> String {
    if i == j {
        format!("a{}", i + 1)
    } else if size <= 9 {
        format!("e{}{}", i + 1, j + 1)
    } else {
        format!("e{}_{}", i + 1, j + 1)
    }
}

pub fn end_graded(dims: &[(i64, usize)]) -> EndGraded {
    let alphas: Vec<i64> = dims.iter().flat_map(|&(deg, n)| std::iter::repeat(deg).take(n)).collect();
    end_from_alphas(&alphas)
}

pub fn end_from_alphas(alphas: &[i64]) -> EndGraded {
    let size = alphas.len();
    let idx = |i: usize, j: usize| i * size + j;
    let mut basis = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            let mut w = vec![0; size];
            w[i] += 1;
            w[j] -= 1;
            basis.push(BasisElement::new(entry_name(i, j, size), alphas[j] - alphas[i]).with_weight(w));
        }
    }
    let deg = |i: usize, j: usize| alphas[j] - alphas[i];
    let mut entries = Vec::new();
    // [e_ij, e_kl] = δ_jk e_il − (−1)^{|e_ij||e_kl|} δ_li e_kj
    for i in 0..size {
        for j in 0..size {
            for k in 0..size {
                for l in 0..size {
                    if j == k {
                        entries.push((idx(i, j), idx(k, l), idx(i, l), Scalar::one()));
                    }
                    if l == i {
                        let s = sgn(deg(i, j) * deg(k, l));
                        entries.push((idx(i, j), idx(k, l), idx(k, j), Scalar::from_int(-s)));
                    }
                }
            }
        }
    }
    EndGraded { lie: GradedLie::new(basis, entries), alphas: alphas.to_vec() }
}

impl EndGraded {
    pub fn size(&self) -> usize {
        self.alphas.len()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.size() + j
    }

    fn select(&self, keep: impl Fn(i64, i64) -> bool) -> Vec<usize> {
        let n = self.size();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| keep(self.alphas[i], self.alphas[j]))
            .map(|(i, j)| self.index(i, j))
            .collect()
    }

    /// Indices of `q = span{e_ij : α_i ≤ α_j}`.
    pub fn parabolic_q(&self) -> Vec<usize> {
        self.select(|a, b| a <= b)
    }

    /// Indices of `n = span{e_ij : α_i < α_j}`.
    pub fn nilradical_n(&self) -> Vec<usize> {
        self.select(|a, b| a < b)
    }

    /// Indices of `l = span{e_ij : α_i = α_j}`.
    pub fn levi_l(&self) -> Vec<usize> {
        self.select(|a, b| a == b)
    }

    /// Named unit vectors for a set of basis indices.
    pub fn vectors(&self, indices: &[usize]) -> Vec<(String, SparseVec)> {
        indices.iter().map(|&p| (self.lie.name(p).to_string(), unit(p))).collect()
    }

    /// Supertrace-zero part of the span of `indices`: off-diagonal entries
    /// are kept, diagonal entries `a_i, a_{i'}` (consecutive in the set) are
    /// replaced by `h = a_i − (−1)^{α_i + α_{i'}} a_{i'}`.
    pub fn trace_zero(&self, indices: &[usize]) -> Vec<(String, SparseVec)> {
        let n = self.size();
        let diag: Vec<usize> = (0..n).filter(|&i| indices.contains(&self.index(i, i))).collect();
        let mut out = Vec::new();
        for w in diag.windows(2) {
            let (i, k) = (w[0], w[1]);
            let mut v = unit(self.index(i, i));
            v.insert(self.index(k, k), Scalar::from_int(-sgn(self.alphas[i] + self.alphas[k])));
            let name = if diag.len() == 2 { "h".to_string() } else { format!("h{}", i + 1) };
            out.push((name, v));
        }
        for &p in indices {
            if p / n != p % n {
                out.push((self.lie.name(p).to_string(), unit(p)));
            }
        }
        out
    }

    /// Sub-Lie algebra spanned by the given vectors.
    pub fn subalgebra(&self, vectors: &[(String, SparseVec)]) -> Result<GradedLie, Error> {
        let b = Bialgebra::trivial("End", self.lie.clone(), 0);
        Ok(restrict(&b, vectors)?.algebra)
    }

    pub fn supertrace(&self, v: &SparseVec) -> Scalar {
        let n = self.size();
        (0..n)
            .filter_map(|i| v.get(&self.index(i, i)).map(|x| x * &Scalar::sign(self.alphas[i])))
            .sum()
    }
}

/// `(e_ij, e_ji) = (−1)^{α_i}`.
pub fn supertrace_form(end: &EndGraded) -> BilinearForm {
    let n = end.size();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            entries.push((end.index(i, j), end.index(j, i), Scalar::sign(end.alphas[i])));
        }
    }
    BilinearForm::new(0, entries)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Restriction {
    Full,
    Q,
    Q1,
}

/// Standard Manin triple `(g ⊕ g, diagonal, p₋)` for `g = End(V)`.
pub fn standard_manin_triple(end: &EndGraded) -> ManinTriple {
    let g = &end.lie;
    let d = g.dim();
    let n = end.size();
    let mut basis: Vec<BasisElement> = Vec::with_capacity(2 * d);
    for suffix in ["'", "\""] {
        for b in g.basis() {
            basis.push(BasisElement { name: format!("{}{suffix}", b.name), ..b.clone() });
        }
    }
    let mut entries = Vec::new();
    for (i, j, k, v) in g.entries() {
        entries.push((i, j, k, v.clone()));
        entries.push((d + i, d + j, d + k, v));
    }
    let total = GradedLie::new(basis, entries);
    let st = supertrace_form(end);
    let mut form_entries = Vec::new();
    for (&(a, b), v) in st.entries() {
        form_entries.push((a, b, v.clone()));
        form_entries.push((d + a, d + b, -v));
    }
    let form = BilinearForm::new(0, form_entries);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = end.index(i, j);
            let name = g.name(p).to_string();
            let mut diag = unit(p);
            diag.insert(d + p, Scalar::one());
            plus.push((name.clone(), diag));
            let m = if i < j {
                unit(p)
            } else if i > j {
                unit(d + p)
            } else {
                let mut v = unit(p);
                v.insert(d + p, -Scalar::one());
                v
            };
            minus.push((name, m));
        }
    }
    ManinTriple { total, plus, minus, form }
}

fn sorted_alphas(dims: &[(i64, usize)]) -> Vec<i64> {
    let mut alphas: Vec<i64> = dims.iter().flat_map(|&(deg, n)| std::iter::repeat(deg).take(n)).collect();
    alphas.sort();
    alphas
}

/// Standard bialgebra on `End(V)` (basis ordered by nondecreasing degree),
/// optionally restricted to `q` or `q₁ = q ∩ sl(V)`.
pub fn standard_for_dims(dims: &[(i64, usize)], restriction: Restriction) -> Result<Bialgebra, Error> {
    let end = end_from_alphas(&sorted_alphas(dims));
    let label = dims.iter().map(|(d, n)| format!("{d}:{n}")).collect::<Vec<_>>().join(",");
    let mut full = manin_to_bialgebra(&standard_manin_triple(&end), Side::Plus)?;
    full.algebra = full.algebra.with_basis(end.lie.basis().to_vec());
    match restriction {
        Restriction::Full => {
            full.form = Some(supertrace_form(&end));
            Ok(full.with_name(format!("End({label})")))
        }
        Restriction::Q => Ok(restrict(&full, &end.vectors(&end.parabolic_q()))?.with_name(format!("q({label})"))),
        Restriction::Q1 => {
            let v = end.trace_zero(&end.parabolic_q());
            Ok(restrict(&full, &v)?.with_name(format!("q1({label})")))
        }
    }
}

/// Standard bialgebra on `gl(m, n)`: `m` even lines then `n` odd lines.
pub fn standard_bialgebra(m: usize, n: usize, restriction: Restriction) -> Result<Bialgebra, Error> {
    if m + n == 0 {
        return Err(Error::Invalid("gl(0,0) is empty".into()));
    }
    let mut dims = Vec::new();
    if m > 0 {
        dims.push((0, m));
    }
    if n > 0 {
        dims.push((1, n));
    }
    let b = standard_for_dims(&dims, restriction)?;
    let label = match restriction {
        Restriction::Full => format!("gl({m},{n})"),
        Restriction::Q => format!("q(gl({m},{n}))"),
        Restriction::Q1 => format!("q1(gl({m},{n}))"),
    };
    Ok(b.with_name(label))
}

pub fn check_permutation(theta: &[usize]) -> Result<(), Error> {
    let n = theta.len();
    let mut seen = vec![false; n];
    for &t in theta {
        if t == 0 || t > n || seen[t - 1] {
            return Err(Error::Invalid(format!("{theta:?} is not a permutation of 1..{n}")));
        }
        seen[t - 1] = true;
    }
    Ok(())
}

/// Data of the θ-twisted triple in `gl(n,n) ≅ End(V)`, `V` with one line in
/// each degree `0..2n`. Even lines are `1..n`, odd lines `n+1..2n` in the
/// `gl(n,n)` labelling.
#[derive(Clone, Debug)]
pub struct ThetaData {
    pub end: EndGraded,
    pub theta: Vec<usize>,
    pub triple: ManinTriple,
    /// Line positions (into `alphas`) of the `gl(n,n)` labels `1..2n`.
    pub line_of_label: Vec<usize>,
}

pub fn theta_data(n: usize, theta: &[usize]) -> Result<ThetaData, Error> {
    if n == 0 || theta.len() != n {
        return Err(Error::Invalid("theta must be a permutation of 1..n with n >= 1".into()));
    }
    check_permutation(theta)?;
    let alphas: Vec<i64> = (0..2 * n as i64).collect();
    let end = end_from_alphas(&alphas);
    let line_of_label: Vec<usize> = (0..n).map(|k| 2 * k).chain((0..n).map(|k| 2 * k + 1)).collect();
    let form = supertrace_form(&end);
    let a = |label: usize| end.index(line_of_label[label], line_of_label[label]);
    let mut plus = end.vectors(&end.nilradical_n());
    let mut minus: Vec<(String, SparseVec)> = end.vectors(&end.select(|x, y| x > y));
    for i in 0..n {
        let j = n + theta[i] - 1;
        let mut hp = unit(a(i));
        hp.insert(a(j), Scalar::one());
        let mut hm = unit(a(i));
        hm.insert(a(j), -Scalar::one());
        plus.push((format!("h{}", i + 1), hp));
        minus.push((format!("h{}", i + 1), hm));
    }
    let triple = ManinTriple { total: end.lie.clone(), plus, minus, form };
    Ok(ThetaData { end, theta: theta.to_vec(), triple, line_of_label })
}

/// Bialgebra on `g^θ = n₊ ⊕ h₊^θ`.
pub fn theta_bialgebra(n: usize, theta: &[usize]) -> Result<Bialgebra, Error> {
    let data = theta_data(n, theta)?;
    let report = crate::glie::validate::validate_manin(&data.triple);
    if let Some(bad) = report.failing().first() {
        return Err(Error::Invalid(format!("theta triple: {} fails", bad.name)));
    }
    let label = theta.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",");
    Ok(manin_to_bialgebra(&data.triple, Side::Plus)?.with_name(format!("theta({n};{label})")))
}

/// `r = ½ Σ_{i<j} s_ij e_ij ∧ e_ji`, with `s_ij = (−1)^{α_j}` when `signed`
/// and `s_ij = 1` otherwise.
pub fn standard_r(end: &EndGraded, signed: bool) -> RMatrix {
    let n = end.size();
    let mut wedges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let s = if signed { Scalar::sign(end.alphas[j]) } else { Scalar::one() };
            wedges.push((end.index(i, j), end.index(j, i), Scalar::new(1, 2) * s));
        }
    }
    RMatrix::from_wedges(&end.lie, wedges)
}

/// `ad_x` on `g ⊗ g`.
fn ad_on_tensor(g: &GradedLie, x: usize, r: &BTreeMap<(usize, usize), Scalar>) -> BTreeMap<(usize, usize), Scalar> {
    let mut out: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for (&(a, b), v) in r {
        for (&c, y) in &g.bracket_basis(x, a) {
            *out.entry((c, b)).or_insert_with(Scalar::zero) += v * y;
        }
        let s = Scalar::sign(g.degree(x) * g.degree(a));
        for (&c, y) in &g.bracket_basis(x, b) {
            *out.entry((a, c)).or_insert_with(Scalar::zero) += &(v * y) * &s;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Coboundary bialgebra `φ(x) = [r, x] = −ad_x r`.
pub fn coboundary_cobracket(g: &GradedLie, r: &RMatrix) -> Result<Bialgebra, Error> {
    if !r.is_antisymmetric(g) {
        return Err(Error::Invalid("r is not graded antisymmetric".into()));
    }
    let mut gamma = Tensor3::new();
    for x in 0..g.dim() {
        for ((i, j), v) in ad_on_tensor(g, x, r.entries()) {
            let s = -Scalar::sign(g.degree(i) * g.degree(j));
            gamma.entry((i, j)).or_default().insert(x, &s * &v);
        }
    }
    let mut b = Bialgebra::from_tensor("coboundary", g.clone(), 0, gamma);
    b.rmatrix = Some(r.clone());
    let report = validate_structures(&b);
    if let Some(c) = report.get("co-Jacobi").filter(|c| !c.pass) {
        return Err(Error::CoJacobi(format!("{}; witness {:?}", c.details, c.witness)));
    }
    Ok(b)
}

/// `δr` for the chain differential `δ(a ∧ b) = [a, b]`.
pub fn delta_r(g: &GradedLie, r: &RMatrix) -> SparseVec {
    let mut out = SparseVec::new();
    for (&(a, b), v) in r.entries() {
        axpy(&mut out, &(v * &Scalar::new(1, 2)), &g.bracket_basis(a, b));
    }
    out
}

/// Matrix of `ad*_X ξ = −ξ ∘ ad_X` on the dual basis; column `k` is the
/// image of `ξ^k`.
pub fn coadjoint_matrix(g: &GradedLie, x: &SparseVec) -> SparseMatrix {
    let d = g.dim();
    let mut triplets = Vec::new();
    for (&b, xb) in x {
        for a in 0..d {
            for (&k, c) in &g.bracket_basis(b, a) {
                triplets.push((a, k, -(xb * c)));
            }
        }
    }
    SparseMatrix::from_triplets(d, d, triplets)
}

/// `[,] ∘ φ = 0` on every basis element.
pub fn involutivity_check(b: &Bialgebra) -> bool {
    (0..b.dim()).all(|k| b.bracket_of_cobracket(k).is_empty())
}

/// Finite-dimensional associative algebra with an invariant symmetric form.
#[derive(Clone, Debug)]
pub struct FrobeniusAlgebra {
    pub names: Vec<String>,
    pub mul: Tensor3,
    pub form: BTreeMap<(usize, usize), Scalar>,
}

impl FrobeniusAlgebra {
    pub fn field() -> Self {
        let mut mul = Tensor3::new();
        mul.insert((0, 0), unit(0));
        let mut form = BTreeMap::new();
        form.insert((0, 0), Scalar::one());
        FrobeniusAlgebra { names: vec![String::new()], mul, form }
    }

    /// `End(k^w)` with the trace form `(E_ij, E_kl) = δ_jk δ_il`.
    pub fn matrices(w: usize) -> Self {
        let idx = |i: usize, j: usize| i * w + j;
        let mut names = Vec::new();
        let mut mul = Tensor3::new();
        let mut form = BTreeMap::new();
        for i in 0..w {
            for j in 0..w {
                names.push(format!("x{}{}", i + 1, j + 1));
                for l in 0..w {
                    mul.insert((idx(i, j), idx(j, l)), unit(idx(i, l)));
                }
                form.insert((idx(i, j), idx(j, i)), Scalar::one());
            }
        }
        FrobeniusAlgebra { names, mul, form }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    fn product(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&a, x) in u {
            for (&b, y) in v {
                if let Some(w) = self.mul.get(&(a, b)) {
                    axpy(&mut out, &(x * y), w);
                }
            }
        }
        out
    }

    fn pair(&self, u: &SparseVec, v: &SparseVec) -> Scalar {
        let mut acc = Scalar::zero();
        for (&a, x) in u {
            for (&b, y) in v {
                if let Some(f) = self.form.get(&(a, b)) {
                    acc += &(x * y) * f;
                }
            }
        }
        acc
    }

    pub fn check(&self) -> Result<(), Error> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let (ua, ub) = (unit(a), unit(b));
                if self.pair(&ua, &ub) != self.pair(&ub, &ua) {
                    return Err(Error::Frobenius(format!("form not symmetric at ({a}, {b})")));
                }
                for c in 0..n {
                    let uc = unit(c);
                    if self.pair(&self.product(&ua, &ub), &uc) != self.pair(&ua, &self.product(&ub, &uc)) {
                        return Err(Error::Frobenius(format!("form not invariant at ({a}, {b}, {c})")));
                    }
                    let l = self.product(&self.product(&ua, &ub), &uc);
                    let r = self.product(&ua, &self.product(&ub, &uc));
                    if l != r {
                        return Err(Error::Frobenius(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let gram = SparseMatrix::from_triplets(n, n, self.form.iter().map(|(&(i, j), v)| (i, j, v.clone())));
        if rank_kernel(&gram).0 != n {
            return Err(Error::Frobenius("form is degenerate".into()));
        }
        Ok(())
    }
}

/// Truncated loop bialgebra `A·t ⊕ … ⊕ A·t^N` with
/// `[at^m, bt^n] = (ab − (−1)^{mn} ba) t^{m+n}` and cobracket dual to the
/// bracket of `A[[t⁻¹]]` through the residue pairing; shift −1.
pub fn frobenius_loop(a: &FrobeniusAlgebra, n_max: usize, label: &str) -> Result<Bialgebra, Error> {
    a.check()?;
    if n_max == 0 {
        return Err(Error::Invalid("truncation order must be at least 1".into()));
    }
    let da = a.dim();
    let idx = |m: usize, x: usize| (m - 1) * da + x;
    let mut basis = Vec::new();
    for m in 1..=n_max {
        for x in 0..da {
            let name = if a.names[x].is_empty() {
                if m == 1 { "t".to_string() } else { format!("t{m}") }
            } else {
                format!("{}t{m}", a.names[x])
            };
            basis.push(BasisElement::new(name, m as i64));
        }
    }
    let commutator = |u: &SparseVec, v: &SparseVec, s: i64| -> SparseVec {
        let mut out = a.product(u, v);
        axpy(&mut out, &Scalar::from_int(-s), &a.product(v, u));
        out
    };
    let mut c = Tensor3::new();
    for m in 1..=n_max {
        for k in 1..=n_max {
            if m + k > n_max {
                continue;
            }
            for x in 0..da {
                for y in 0..da {
                    let w = commutator(&unit(x), &unit(y), sgn((m * k) as i64));
                    let out: SparseVec = w.into_iter().map(|(z, v)| (idx(m + k, z), v)).collect();
                    if !out.is_empty() {
                        c.insert((idx(m, x), idx(k, y)), out);
                    }
                }
            }
        }
    }
    // Dual of a t^m is u_a t^{1−m} with (u_a, b)_A = δ_ab.
    let gram: Vec<SparseVec> = (0..da)
        .map(|x| (0..da).filter_map(|y| a.form.get(&(x, y)).map(|v| (y, v.clone()))).collect())
        .collect();
    let gi = inverse_rows(&gram, da).ok_or_else(|| Error::Frobenius("form is degenerate".into()))?;
    let mut gamma = Tensor3::new();
    for m1 in 1..=n_max {
        for m2 in 1..=n_max {
            let (l1, l2) = (1 - m1 as i64, 1 - m2 as i64);
            let m = 1 - (l1 + l2);
            if m < 1 || m > n_max as i64 {
                continue;
            }
            for x in 0..da {
                for y in 0..da {
                    let w = commutator(&gi[x], &gi[y], sgn(l1 * l2));
                    let out: SparseVec = (0..da)
                        .map(|z| (idx(m as usize, z), a.pair(&w, &unit(z))))
                        .filter(|(_, v)| !v.is_zero())
                        .collect();
                    if !out.is_empty() {
                        gamma.insert((idx(m1, x), idx(m2, y)), out);
                    }
                }
            }
        }
    }
    Ok(Bialgebra::from_tensor(
        format!("frobenius({label},{n_max})"),
        GradedLie::from_tensor(basis, c),
        -1,
        gamma,
    ))
}

/// The fixed catalog of bialgebras exercised by the test and acceptance suites.
pub fn catalog() -> Vec<Bialgebra> {
    let gl2 = standard_bialgebra(2, 0, Restriction::Full).expect("gl(2,0)");
    let trivial = Bialgebra::trivial("trivial(gl(2,0))", gl2.algebra.clone(), 0);
    let dual = dual_bialgebra(&trivial).with_name("dual(trivial(gl(2,0)))");
    vec![
        trivial,
        dual,
        standard_bialgebra(1, 1, Restriction::Full).expect("gl(1,1)"),
        standard_for_dims(&[(0, 1), (1, 1)], Restriction::Q1).expect("q1"),
        standard_for_dims(&[(0, 1), (1, 1), (2, 1)], Restriction::Q1).expect("q1"),
        theta_bialgebra(1, &[1]).expect("theta"),
        theta_bialgebra(2, &[1, 2]).expect("theta"),
        theta_bialgebra(2, &[2, 1]).expect("theta"),
        frobenius_loop(&FrobeniusAlgebra::field(), 2, "k").expect("frobenius"),
        frobenius_loop(&FrobeniusAlgebra::field(), 3, "k").expect("frobenius"),
        frobenius_loop(&FrobeniusAlgebra::matrices(2), 2, "End(k^2)").expect("frobenius"),
    ]
}
