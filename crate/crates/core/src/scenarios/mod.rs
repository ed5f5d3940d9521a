//! Named scenarios built from graded endomorphism algebras and truncated
//! loop algebras, with their expected checks.

mod classical;

use std::collections::{BTreeMap, BTreeSet};

pub use classical::{complexes_presentation, hilbert_function, kirillov_kostant, monomials_of_degree, square_zero_relations, Poly};

use crate::cli::Table;
use crate::cochain::{
    block_cohomology, bracket_well_defined, cohomology, cohomology_bracket, compatibility_check, ce_differential,
    delta_on_generators, delta_operator, enumerate_block, ker_delta_complex, selector_of, CeAlgebra, Class, Cochain,
    CohomologyTable, Selector, Truncation,
};
use crate::exact_linalg::{echelonize, image, Scalar};
use crate::glie::{
    end_graded, frobenius_loop, involutivity_check, standard_for_dims, theta_bialgebra, theta_data, validate_structures,
    Bialgebra, Check, FrobeniusAlgebra, Restriction,
};
use crate::Error;

/// Version of the fixed scenario catalog.
pub const CATALOG_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Params {
    Rcom { dims: Vec<(i64, usize)> },
    RcomL1 { dims: Vec<(i64, usize)> },
    RcomTheta { n: usize, theta: Vec<usize> },
    Rpcom { dim_w: usize, order: usize },
}

/// Degree window `lo..=hi` with `|s| <= s_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
    pub s_max: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64, s_max: i64) -> Self {
        Window { lo, hi, s_max }
    }

    fn describe(&self) -> String {
        format!("degrees {}..{}, s <= {}", self.lo, self.hi, self.s_max)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    Validate,
    Compatibility,
    Involutive(bool),
    DeltaVanishes(Window),
    /// Betti number of every `(deg, s)` block; unlisted blocks must vanish.
    BlockBetti { window: Window, nonzero: Vec<((i64, i64), usize)> },
    CohomologyTable(Window),
    /// `H⁰` per `s`-block equals the Hilbert function of the classical
    /// variety of complexes.
    ClassicalH0 { s_max: i64 },
    Vanishing { degree: i64, s_max: i64 },
    /// `⟨[f[left]], [f[right]]⟩ = Σ c·[f[name]]`.
    ClassBracket { left: String, right: String, expected: Vec<(String, Scalar)> },
    BracketTable(Window),
    KerDelta(Window),
    Factorization(Window),
    HochschildSerre { window: Window, expected: Option<Vec<usize>> },
    H0Dimension { s_max: i64, expected: usize },
    H0Presentation { s_max: i64 },
    BracketVanishes,
}

impl Expectation {
    pub fn name(&self) -> String {
        match self {
            Expectation::Validate => "validate".into(),
            Expectation::Compatibility => "compatibility".into(),
            Expectation::Involutive(_) => "involutivity".into(),
            Expectation::DeltaVanishes(_) => "Δ = 0".into(),
            Expectation::BlockBetti { .. } => "block Betti numbers".into(),
            Expectation::CohomologyTable(_) => "cohomology".into(),
            Expectation::ClassicalH0 { .. } => "H⁰ = classical coordinate ring".into(),
            Expectation::Vanishing { degree, .. } => format!("H^{degree} = 0"),
            Expectation::ClassBracket { left, right, .. } => format!("⟨[{left}], [{right}]⟩"),
            Expectation::BracketTable(_) => "cohomology bracket".into(),
            Expectation::KerDelta(_) => "Ker Δ quasi-isomorphism".into(),
            Expectation::Factorization(_) => "θ-factorization".into(),
            Expectation::HochschildSerre { .. } => "Hochschild-Serre degeneration".into(),
            Expectation::H0Dimension { .. } => "dim H⁰".into(),
            Expectation::H0Presentation { .. } => "H⁰ presentation".into(),
            Expectation::BracketVanishes => "bracket vanishes".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub label: String,
    pub params: Params,
    pub bialgebra: Bialgebra,
    pub expected_checks: Vec<Expectation>,
}

/// Checks and tables produced by running a scenario.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

impl Outcome {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn dims_label(dims: &[(i64, usize)]) -> String {
    dims.iter().map(|(d, n)| format!("{d}:{n}")).collect::<Vec<_>>().join(",")
}

fn check_dims(dims: &[(i64, usize)]) -> Result<(), Error> {
    if dims.is_empty() || dims.iter().any(|&(_, n)| n == 0) {
        return Err(Error::Invalid(format!("bad dimension vector {}", dims_label(dims))));
    }
    let degs: Vec<i64> = dims.iter().map(|d| d.0).collect();
    if degs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("degrees must be strictly increasing".into()));
    }
    Ok(())
}

fn is_dims(dims: &[(i64, usize)], other: &[(i64, usize)]) -> bool {
    dims == other
}

fn sub_bialgebra(dims: &[(i64, usize)], pick: fn(&crate::glie::EndGraded) -> Vec<usize>, name: String) -> Result<Bialgebra, Error> {
    let end = end_graded(dims);
    let alg = end.subalgebra(&end.vectors(&pick(&end)))?;
    Ok(Bialgebra::trivial(name, alg, 0))
}

/// `C•(n)` for the nilradical of `End(V)`; no bracket.
pub fn rcom(dims: &[(i64, usize)]) -> Result<Scenario, Error> {
    check_dims(dims)?;
    let label = dims_label(dims);
    let bialgebra = sub_bialgebra(dims, |e| e.nilradical_n(), format!("n({label})"))?;
    let mut expected_checks = vec![
        Expectation::Validate,
        Expectation::ClassicalH0 { s_max: 4 },
        Expectation::CohomologyTable(Window::new(-1, 0, 4)),
    ];
    let known = [vec![(0, 1), (1, 1)], vec![(0, 1), (1, 1), (2, 1)], vec![(0, 2), (1, 1)]];
    if known.iter().any(|k| is_dims(dims, k)) {
        expected_checks.push(Expectation::Vanishing { degree: -1, s_max: 4 });
    }
    let hs = if is_dims(dims, &[(0, 1), (1, 1)]) {
        Some(vec![1, 2, 1])
    } else if is_dims(dims, &[(0, 1), (1, 1), (2, 1)]) {
        Some(vec![1, 3, 3])
    } else {
        None
    };
    expected_checks.push(Expectation::HochschildSerre { window: Window::new(0, 2, 3), expected: hs });
    Ok(Scenario { label: format!("rcom({label})"), params: Params::Rcom { dims: dims.to_vec() }, bialgebra, expected_checks })
}

/// `C•(q₁)` with the standard cobracket.
pub fn rcom_quotient_l1(dims: &[(i64, usize)]) -> Result<Scenario, Error> {
    check_dims(dims)?;
    let label = dims_label(dims);
    let bialgebra = standard_for_dims(dims, Restriction::Q1)?;
    let mut expected_checks = vec![Expectation::Validate, Expectation::Compatibility];
    if is_dims(dims, &[(0, 1), (1, 1)]) {
        let nonzero = (0..=6).flat_map(|s| [((0, s), 1), ((1, s), 1)]).collect();
        expected_checks.push(Expectation::BlockBetti { window: Window::new(0, 6, 6), nonzero });
        let one = |n: &str| vec![(n.to_string(), Scalar::one())];
        expected_checks.push(Expectation::ClassBracket { left: "h".into(), right: "e12".into(), expected: one("e12") });
        expected_checks.push(Expectation::ClassBracket { left: "e12".into(), right: "e12".into(), expected: vec![] });
        expected_checks.push(Expectation::ClassBracket { left: "h".into(), right: "h".into(), expected: vec![] });
        expected_checks.push(Expectation::Involutive(true));
        expected_checks.push(Expectation::DeltaVanishes(Window::new(0, 4, 4)));
    } else {
        expected_checks.push(Expectation::CohomologyTable(Window::new(0, 3, 3)));
        expected_checks.push(Expectation::BracketTable(Window::new(0, 1, 2)));
    }
    expected_checks.push(Expectation::KerDelta(Window::new(0, 3, 4)));
    Ok(Scenario {
        label: format!("rcom-l1({label})"),
        params: Params::RcomL1 { dims: dims.to_vec() },
        bialgebra,
        expected_checks,
    })
}

/// `C•(g^θ)` for `V` with one line in each degree `0..2n`.
pub fn rcom_quotient_theta(n: usize, theta: &[usize]) -> Result<Scenario, Error> {
    let bialgebra = theta_bialgebra(n, theta)?;
    let expected_checks = vec![
        Expectation::Validate,
        Expectation::Compatibility,
        Expectation::Factorization(Window::new(0, 3, 4)),
        Expectation::KerDelta(Window::new(0, 3, 4)),
    ];
    Ok(Scenario {
        label: bialgebra.name.clone(),
        params: Params::RcomTheta { n, theta: theta.to_vec() },
        bialgebra,
        expected_checks,
    })
}

/// Truncated loop algebra of `End(W)`; the bracket on `C•` is unshifted.
pub fn rpcom(dim_w: usize, order: usize) -> Result<Scenario, Error> {
    if dim_w == 0 || order < 2 {
        return Err(Error::Invalid("rpcom needs dim W >= 1 and truncation order >= 2".into()));
    }
    let (alg, label) = if dim_w == 1 {
        (FrobeniusAlgebra::field(), "k".to_string())
    } else {
        (FrobeniusAlgebra::matrices(dim_w), format!("End(k^{dim_w})"))
    };
    let bialgebra = frobenius_loop(&alg, order, &label)?;
    let mut expected_checks = vec![Expectation::Validate, Expectation::H0Presentation { s_max: 3 }];
    if dim_w == 1 {
        expected_checks.push(Expectation::H0Dimension { s_max: 4, expected: 2 });
    }
    if bialgebra.has_trivial_cobracket() {
        expected_checks.push(Expectation::BracketVanishes);
    }
    Ok(Scenario {
        label: format!("rpcom({dim_w},{order})"),
        params: Params::Rpcom { dim_w, order },
        bialgebra,
        expected_checks,
    })
}

/// The fixed scenario catalog.
pub fn catalog() -> Vec<Scenario> {
    let mut out = Vec::new();
    for dims in [vec![(0, 1), (1, 1)], vec![(0, 1), (1, 1), (2, 1)], vec![(0, 2), (1, 1)]] {
        out.push(rcom(&dims).expect("rcom"));
    }
    for dims in [vec![(0, 1), (1, 1)], vec![(0, 1), (1, 1), (2, 1)]] {
        out.push(rcom_quotient_l1(&dims).expect("rcom-l1"));
    }
    for (n, theta) in [(1, vec![1]), (2, vec![1, 2]), (2, vec![2, 1])] {
        out.push(rcom_quotient_theta(n, &theta).expect("rcom-theta"));
    }
    for (w, order) in [(1, 3), (2, 2), (1, 2)] {
        out.push(rpcom(w, order).expect("rpcom"));
    }
    out
}

fn pass(name: String, details: String) -> Check {
    Check { name, pass: true, details, witness: None }
}

fn fail(name: String, details: String, witness: Option<Vec<String>>) -> Check {
    Check { name, pass: false, details, witness }
}

fn verdict(name: String, ok: bool, details: String, witness: Option<Vec<String>>) -> Check {
    if ok {
        pass(name, details)
    } else {
        fail(name, details, witness)
    }
}

/// Betti table per block plus per-degree totals (every degree of the window
/// appears in the totals, including zero rows).
pub fn betti_tables(ce: &CeAlgebra, t: &CohomologyTable) -> Vec<Table> {
    let trunc = format!("degrees {}..{}, {}", t.degrees.start(), t.degrees.end(), t.truncation);
    let mut blocks = Table::new("Betti numbers by block", trunc.clone(), &["block", "dim C", "betti", "representatives"]);
    for b in &t.blocks {
        let reps: Vec<String> = b.reps.iter().map(|r| ce.format(r)).collect();
        blocks.push(vec![b.selector.to_string(), b.dim.to_string(), b.betti.to_string(), reps.join("; ")]);
    }
    let mut totals = Table::new("Betti numbers by degree", trunc.clone(), &["degree", "betti"]);
    for (d, b) in t.betti_by_degree() {
        totals.push(vec![d.to_string(), b.to_string()]);
    }
    let mut out = vec![blocks, totals];
    if matches!(t.truncation, Truncation::SMax(_)) {
        let mut total = Table::new("Betti numbers by total degree deg + 2s", trunc, &["total degree", "betti"]);
        for (d, b) in t.betti_by_total_degree() {
            total.push(vec![d.to_string(), b.to_string()]);
        }
        out.push(total);
    }
    out
}

fn generator_by_name(ce: &CeAlgebra, name: &str) -> Result<usize, Error> {
    (0..ce.num_generators())
        .find(|&i| ce.bialgebra.algebra.name(i) == name)
        .ok_or_else(|| Error::Invalid(format!("no basis element named {name}")))
}

fn format_class(ce: &CeAlgebra, coords: &[Scalar], reps: &[Cochain]) -> String {
    let parts: Vec<String> = coords
        .iter()
        .zip(reps)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, r)| format!("{c}·[{}]", ce.format(r)))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn class_bracket(ce: &CeAlgebra, left: &str, right: &str, expected: &[(String, Scalar)]) -> Result<Check, Error> {
    let name = format!("⟨[{left}], [{right}]⟩");
    let (a, b) = (ce.generator(generator_by_name(ce, left)?), ce.generator(generator_by_name(ce, right)?));
    for (n, g) in [(left, &a), (right, &b)] {
        if !ce.d(g).is_zero() {
            return Err(Error::NotACocycle(format!("f[{n}] is not closed")));
        }
    }
    let w = ce.bracket(&a, &b);
    let mut target = Cochain::zero();
    for (n, c) in expected {
        target.add_scaled(c, &ce.generator(generator_by_name(ce, n)?));
    }
    let diff = w.minus(&target);
    let like = Selector::s_block(0, 0);
    let computed = if w.is_zero() {
        "0".to_string()
    } else {
        let sel = selector_of(ce, &w, &like)?;
        let bc = block_cohomology(ce, &sel)?;
        let coords = enumerate_block(ce, &sel)?.coordinates(&w)?;
        let class = bc.quotient.class_of(&coords).ok_or_else(|| Error::NotACocycle("bracket is not closed".into()))?;
        format_class(ce, &class, &bc.reps)
    };
    let ok = diff.is_zero() || {
        let sel = selector_of(ce, &diff, &like)?;
        let d_in = ce_differential(ce, &sel.with_degree(sel.degree - 1))?.matrix;
        image(&d_in).contains(&enumerate_block(ce, &sel)?.coordinates(&diff)?)
    };
    let exp = if target.is_zero() { "0".to_string() } else { format!("[{}]", ce.format(&target)) };
    let details = format!("computed {computed}, expected {exp}");
    Ok(verdict(name, ok, details, if ok { None } else { Some(vec![left.into(), right.into()]) }))
}

fn bracket_table(ce: &CeAlgebra, w: Window) -> Result<(Check, Table), Error> {
    let t = cohomology(ce, w.lo..=w.hi, &Truncation::SMax(w.s_max))?;
    let mut classes = Vec::new();
    for b in &t.blocks {
        for r in &b.reps {
            classes.push(Class { label: ce.format(r), selector: b.selector.clone(), rep: r.clone() });
        }
    }
    let entries = cohomology_bracket(ce, &classes)?;
    let well = bracket_well_defined(ce, &classes, 3)?;
    let mut table = Table::new("cohomology bracket", w.describe(), &["left", "right", "bracket"]);
    for e in &entries {
        let value = if e.target.is_none() { "0".into() } else { format_class(ce, &e.coords, &e.target_reps) };
        table.push(vec![classes[e.left].label.clone(), classes[e.right].label.clone(), value]);
    }
    let details = format!("{} classes, well-defined on sampled coboundaries: {}", classes.len(), well);
    Ok((verdict("cohomology bracket".into(), well, details, None), table))
}

/// Betti numbers of `n₊` on `(deg, s)` restricted to `h₊^θ`-invariant weights.
fn invariant_betti(ce_n: &CeAlgebra, degree: i64, s: i64, invariant: &dyn Fn(&[i64]) -> bool) -> Result<usize, Error> {
    let block = enumerate_block(ce_n, &Selector::s_block(degree, s))?;
    let weights: BTreeSet<Vec<i64>> = block.basis.iter().filter_map(|m| ce_n.monomial_weight(m)).collect();
    let mut total = 0;
    for w in weights.into_iter().filter(|w| invariant(w)) {
        let sel = Selector { degree, s: Some(s), weight: Some(w) };
        total += block_cohomology(ce_n, &sel)?.betti;
    }
    Ok(total)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Compares `H(g^θ)` with `Λ(h₊^θ)* ⊗ H(n₊)^{h₊^θ}` blockwise.
pub fn factorization(n: usize, theta: &[usize], w: Window) -> Result<(bool, Table), Error> {
    let data = theta_data(n, theta)?;
    let ce = CeAlgebra::new(&theta_bialgebra(n, theta)?);
    let nplus = data.end.subalgebra(&data.end.vectors(&data.end.nilradical_n()))?;
    let ce_n = CeAlgebra::new(&Bialgebra::trivial("n+", nplus, 0));
    let lines = &data.line_of_label;
    let invariant = |wt: &[i64]| (0..n).all(|i| wt[lines[i]] + wt[lines[n + theta[i] - 1]] == 0);
    let mut table = Table::new("θ-factorization", w.describe(), &["degree", "s", "H(g^θ)", "Λ(h₊)* ⊗ H(n₊)^inv"]);
    let mut ok = true;
    for deg in w.lo..=w.hi {
        for s in 0..=w.s_max {
            let lhs = block_cohomology(&ce, &Selector::s_block(deg, s))?.betti;
            let mut rhs = 0;
            for p in 0..=n {
                rhs += binomial(n, p) * invariant_betti(&ce_n, deg - p as i64, s, &invariant)?;
            }
            ok &= lhs == rhs;
            if lhs != 0 || rhs != 0 {
                table.push(vec![deg.to_string(), s.to_string(), lhs.to_string(), rhs.to_string()]);
            }
        }
    }
    Ok((ok, table))
}

/// Blockwise Betti numbers per `(deg, s, weight)` of `C•(q)` and `C•(l)`.
#[derive(Clone, Debug)]
pub struct HochschildSerre {
    pub equal: bool,
    pub q_by_degree: BTreeMap<i64, usize>,
    pub l_by_degree: BTreeMap<i64, usize>,
    pub table: Table,
}

pub fn hochschild_serre_check(dims: &[(i64, usize)], w: Window) -> Result<HochschildSerre, Error> {
    check_dims(dims)?;
    let label = dims_label(dims);
    let q = CeAlgebra::new(&sub_bialgebra(dims, |e| e.parabolic_q(), format!("q({label})"))?);
    let l = CeAlgebra::new(&sub_bialgebra(dims, |e| e.levi_l(), format!("l({label})"))?);
    let split = |ce: &CeAlgebra, deg: i64, s: i64| -> Result<BTreeMap<Vec<i64>, usize>, Error> {
        let block = enumerate_block(ce, &Selector::s_block(deg, s))?;
        let weights: BTreeSet<Vec<i64>> = block.basis.iter().filter_map(|m| ce.monomial_weight(m)).collect();
        let mut out = BTreeMap::new();
        for wt in weights {
            let sel = Selector { degree: deg, s: Some(s), weight: Some(wt.clone()) };
            let b = block_cohomology(ce, &sel)?.betti;
            if b > 0 {
                out.insert(wt, b);
            }
        }
        Ok(out)
    };
    let mut table = Table::new("Hochschild-Serre", w.describe(), &["degree", "s", "weight", "H(q)", "H(l)"]);
    let mut equal = true;
    let mut q_by_degree = BTreeMap::new();
    let mut l_by_degree = BTreeMap::new();
    for deg in w.lo..=w.hi {
        let (mut tq, mut tl) = (0, 0);
        for s in 0..=w.s_max {
            let (bq, bl) = (split(&q, deg, s)?, split(&l, deg, s)?);
            let keys: BTreeSet<&Vec<i64>> = bq.keys().chain(bl.keys()).collect();
            for k in keys {
                let (x, y) = (bq.get(k).copied().unwrap_or(0), bl.get(k).copied().unwrap_or(0));
                equal &= x == y;
                tq += x;
                tl += y;
                table.push(vec![deg.to_string(), s.to_string(), format!("{k:?}"), x.to_string(), y.to_string()]);
            }
        }
        q_by_degree.insert(deg, tq);
        l_by_degree.insert(deg, tl);
    }
    Ok(HochschildSerre { equal, q_by_degree, l_by_degree, table })
}

/// Generators, quadratic relations and bracket table of `H⁰` for an rpcom
/// scenario.
#[derive(Clone, Debug)]
pub struct H0Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Poly>,
    /// `{x_a, x_b}` as linear forms in the generators.
    pub brackets: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>>,
    /// `Some(±1)` when the bracket table equals `±` the Kirillov–Kostant table.
    pub kk_sign: Option<i64>,
    /// Every bracket of generators is again a linear form of degree 0.
    pub closes: bool,
}

fn cochain_to_poly(c: &Cochain, vars: &[usize]) -> Option<Poly> {
    let mut out = Poly::new();
    for (m, v) in c.terms() {
        let key: Option<Vec<usize>> = m.iter().map(|g| vars.iter().position(|x| x == g)).collect();
        let mut key = key?;
        key.sort_unstable();
        out.insert(key, v.clone());
    }
    Some(out)
}

fn same_span(a: &[Poly], b: &[Poly]) -> bool {
    let keys: BTreeSet<&Vec<usize>> = a.iter().chain(b).flat_map(|p| p.keys()).collect();
    let pos: BTreeMap<&Vec<usize>, usize> = keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    let vecs = |ps: &[Poly]| -> Vec<crate::exact_linalg::SparseVec> {
        ps.iter().map(|p| p.iter().map(|(k, v)| (pos[k], v.clone())).collect()).collect()
    };
    let (va, vb) = (vecs(a), vecs(b));
    let both: Vec<_> = va.iter().chain(&vb).cloned().collect();
    let r = |v: &[crate::exact_linalg::SparseVec]| echelonize(v.to_vec()).len();
    r(&va) == r(&both) && r(&vb) == r(&both)
}

pub fn h0_presentation(s: &Scenario) -> Result<H0Presentation, Error> {
    let Params::Rpcom { dim_w, order } = s.params else {
        return Err(Error::Invalid("H⁰ presentation needs an rpcom scenario".into()));
    };
    if order < 2 {
        return Err(Error::Truncation("relations need truncation order >= 2".into()));
    }
    let ce = CeAlgebra::new(&s.bialgebra);
    let vars: Vec<usize> = (0..ce.num_generators()).filter(|&i| ce.generator_degree(i) == 0).collect();
    let generators: Vec<String> = vars.iter().map(|&i| ce.generator_name(i)).collect();
    // Degree −1 generators have s = 2; their images are the quadratic relations.
    let src = Selector::s_block(-1, 2);
    let op = ce_differential(&ce, &src)?;
    let mut relations = Vec::new();
    for v in image(&op.matrix).vectors() {
        let c = op.target.cochain(v);
        relations.push(cochain_to_poly(&c, &vars).ok_or_else(|| Error::Invalid("relation leaves the x variables".into()))?);
    }
    let mut brackets = BTreeMap::new();
    let mut closes = true;
    for (a, &ga) in vars.iter().enumerate() {
        for (b, &gb) in vars.iter().enumerate() {
            let w = ce.bracket(&ce.generator(ga), &ce.generator(gb));
            let mut lin = BTreeMap::new();
            for (m, x) in w.terms() {
                match vars.iter().position(|g| m.len() == 1 && m[0] == *g) {
                    Some(p) => {
                        lin.insert(p, x.clone());
                    }
                    None => closes = false,
                }
            }
            brackets.insert((a, b), lin);
        }
    }
    let kk = kirillov_kostant(dim_w);
    let first = kk.iter().find_map(|(k, v)| v.iter().next().map(|(i, x)| (k, *i, x.clone())));
    let kk_sign = match first {
        None => brackets.values().all(BTreeMap::is_empty).then_some(1),
        Some((key, i, x)) => {
            let got = brackets.get(key).and_then(|m| m.get(&i)).cloned().unwrap_or_else(Scalar::zero);
            let sign = if got == x { 1 } else if got == -x { -1 } else { 0 };
            let sc = Scalar::from_int(sign);
            let all = sign != 0
                && kk.iter().all(|(k, v)| {
                    let scaled: BTreeMap<usize, Scalar> = v.iter().map(|(i, x)| (*i, x * &sc)).collect();
                    brackets.get(k) == Some(&scaled)
                });
            all.then_some(sign)
        }
    };
    Ok(H0Presentation { generators, relations, brackets, kk_sign, closes })
}

fn h0_checks(s: &Scenario, s_max: i64, out: &mut Outcome) -> Result<(), Error> {
    let Params::Rpcom { dim_w, .. } = s.params else {
        return Err(Error::Invalid("H⁰ presentation needs an rpcom scenario".into()));
    };
    let p = h0_presentation(s)?;
    let oracle = square_zero_relations(dim_w);
    let expected_count = dim_w * dim_w;
    let span_ok = same_span(&p.relations, &oracle);
    out.checks.push(verdict(
        "H⁰ relations".into(),
        p.relations.len() == expected_count && span_ok,
        format!(
            "{} generators, {} relations (expected {expected_count}), span equals Σ_k x_ik x_kj: {span_ok}",
            p.generators.len(),
            p.relations.len()
        ),
        None,
    ));
    let kk_details = match p.kk_sign {
        Some(s) => format!("matches the Kirillov–Kostant table with global sign {s:+}"),
        None => "differs from the Kirillov–Kostant table".into(),
    };
    out.checks.push(verdict("Kirillov–Kostant".into(), p.kk_sign.is_some() && p.closes, kk_details, None));
    let ce = CeAlgebra::new(&s.bialgebra);
    let mut bad = None;
    let mut table = Table::new("H⁰ Hilbert function", format!("degree 0, s <= {s_max}"), &["s", "H⁰", "classical"]);
    for sv in 0..=s_max {
        let engine = block_cohomology(&ce, &Selector::s_block(0, sv))?.betti;
        let classical = hilbert_function(dim_w * dim_w, &oracle, sv as usize);
        if engine != classical && bad.is_none() {
            bad = Some(vec![format!("s = {sv}")]);
        }
        table.push(vec![sv.to_string(), engine.to_string(), classical.to_string()]);
    }
    out.checks.push(verdict("H⁰ Hilbert function".into(), bad.is_none(), format!("s <= {s_max}"), bad));
    let mut br = Table::new("H⁰ brackets", "degree 0 generators", &["left", "right", "bracket"]);
    for ((a, b), lin) in &p.brackets {
        let value: Vec<String> = lin.iter().map(|(i, x)| format!("{x}·{}", p.generators[*i])).collect();
        let value = if value.is_empty() { "0".into() } else { value.join(" + ") };
        br.push(vec![p.generators[*a].clone(), p.generators[*b].clone(), value]);
    }
    out.tables.push(table);
    out.tables.push(br);
    Ok(())
}

fn run_one(s: &Scenario, ce: &CeAlgebra, e: &Expectation, out: &mut Outcome) -> Result<(), Error> {
    let b = &s.bialgebra;
    match e {
        Expectation::Validate => {
            out.checks.extend(validate_structures(b).checks);
        }
        Expectation::Compatibility => out.checks.push(compatibility_check(ce)),
        Expectation::Involutive(want) => {
            let got = involutivity_check(b);
            let yn = |x: bool| if x { "yes" } else { "no" };
            out.checks.push(verdict(e.name(), got == *want, format!("involutive: {}", yn(got)), None));
        }
        Expectation::DeltaVanishes(w) => {
            let mut bad = None;
            if !delta_on_generators(ce)?.is_zero() {
                bad = Some(vec!["generators".to_string()]);
            }
            for deg in w.lo..=w.hi {
                for sel in Truncation::SMax(w.s_max).selectors(ce, deg) {
                    if bad.is_none() && !delta_operator(ce, &sel)?.matrix.is_zero() {
                        bad = Some(vec![sel.to_string()]);
                    }
                }
            }
            out.checks.push(verdict(e.name(), bad.is_none(), w.describe(), bad));
        }
        Expectation::BlockBetti { window: w, nonzero } => {
            let t = cohomology(ce, w.lo..=w.hi, &Truncation::SMax(w.s_max))?;
            let want: BTreeMap<(i64, i64), usize> = nonzero.iter().cloned().collect();
            let mut bad = None;
            for deg in w.lo..=w.hi {
                for sel in Truncation::SMax(w.s_max).selectors(ce, deg) {
                    let s_val = sel.s.unwrap_or(0);
                    let exp = want.get(&(deg, s_val)).copied().unwrap_or(0);
                    let got = t.betti(&sel);
                    if got != exp && bad.is_none() {
                        bad = Some(vec![format!("{sel}: {got} != {exp}")]);
                    }
                }
            }
            out.checks.push(verdict(e.name(), bad.is_none(), w.describe(), bad));
            out.tables.extend(betti_tables(ce, &t));
        }
        Expectation::CohomologyTable(w) => {
            let t = cohomology(ce, w.lo..=w.hi, &Truncation::SMax(w.s_max))?;
            let total: usize = t.betti_by_degree().values().sum();
            out.checks.push(pass(e.name(), format!("{}, total Betti {total}", w.describe())));
            out.tables.extend(betti_tables(ce, &t));
        }
        Expectation::ClassicalH0 { s_max } => {
            let Params::Rcom { dims } = &s.params else {
                return Err(Error::Invalid("classical H⁰ needs an rcom scenario".into()));
            };
            let (names, rels) = complexes_presentation(&end_graded(dims));
            let mut table = Table::new("H⁰ Hilbert function", format!("degree 0, s <= {s_max}"), &["s", "H⁰", "classical"]);
            let mut bad = None;
            for sv in 0..=*s_max {
                let engine = block_cohomology(ce, &Selector::s_block(0, sv))?.betti;
                let classical = hilbert_function(names.len(), &rels, sv as usize);
                if engine != classical && bad.is_none() {
                    bad = Some(vec![format!("s = {sv}")]);
                }
                table.push(vec![sv.to_string(), engine.to_string(), classical.to_string()]);
            }
            let details = format!("{} variables, {} relations", names.len(), rels.len());
            out.checks.push(verdict(e.name(), bad.is_none(), details, bad));
            out.tables.push(table);
        }
        Expectation::Vanishing { degree, s_max } => {
            let mut bad = None;
            for sel in Truncation::SMax(*s_max).selectors(ce, *degree) {
                let bc = block_cohomology(ce, &sel)?;
                if bc.betti != 0 && bad.is_none() {
                    bad = Some(vec![sel.to_string()]);
                }
            }
            out.checks.push(verdict(e.name(), bad.is_none(), format!("s <= {s_max}"), bad));
        }
        Expectation::ClassBracket { left, right, expected } => {
            out.checks.push(class_bracket(ce, left, right, expected)?);
        }
        Expectation::BracketTable(w) => {
            let (c, t) = bracket_table(ce, *w)?;
            out.checks.push(c);
            out.tables.push(t);
        }
        Expectation::KerDelta(w) => {
            let k = ker_delta_complex(ce, w.lo..=w.hi, &Truncation::SMax(w.s_max))?;
            let mut table = Table::new(
                "Ker Δ versus C",
                w.describe(),
                &["block", "dim C", "dim Ker Δ", "betti C", "betti Ker Δ"],
            );
            let mut bad = None;
            for r in &k.rows {
                if r.betti_full != r.betti_ker && bad.is_none() {
                    bad = Some(vec![r.selector.to_string()]);
                }
                table.push(vec![
                    r.selector.to_string(),
                    r.dim.to_string(),
                    r.ker_dim.to_string(),
                    r.betti_full.to_string(),
                    r.betti_ker.to_string(),
                ]);
            }
            let eig: Vec<String> = k.eigenvalues.iter().map(|(l, m)| format!("{l} (x{m})")).collect();
            let details = format!("Δ eigenvalues on generators: {}; B preserves Ker Δ: {}", eig.join(", "), k.bv_restricts);
            out.checks.push(verdict(e.name(), bad.is_none() && k.bv_restricts, details, bad));
            out.tables.push(table);
        }
        Expectation::Factorization(w) => {
            let Params::RcomTheta { n, theta } = &s.params else {
                return Err(Error::Invalid("factorization needs an rcom-theta scenario".into()));
            };
            let (ok, table) = factorization(*n, theta, *w)?;
            out.checks.push(verdict(e.name(), ok, w.describe(), None));
            out.tables.push(table);
        }
        Expectation::HochschildSerre { window, expected } => {
            let dims = match &s.params {
                Params::Rcom { dims } | Params::RcomL1 { dims } => dims,
                _ => return Err(Error::Invalid("Hochschild-Serre needs a dimension vector".into())),
            };
            let hs = hochschild_serre_check(dims, *window)?;
            let totals: Vec<usize> = hs.q_by_degree.values().copied().collect();
            let ok = hs.equal && expected.as_ref().is_none_or(|x| x == &totals);
            let details = format!("{}, H(q) by degree {totals:?}", window.describe());
            out.checks.push(verdict(e.name(), ok, details, None));
            out.tables.push(hs.table);
        }
        Expectation::H0Dimension { s_max, expected } => {
            let mut total = 0;
            for sv in 0..=*s_max {
                total += block_cohomology(ce, &Selector::s_block(0, sv))?.betti;
            }
            out.checks.push(verdict(e.name(), total == *expected, format!("{total} on s <= {s_max}, expected {expected}"), None));
        }
        Expectation::H0Presentation { s_max } => h0_checks(s, *s_max, out)?,
        Expectation::BracketVanishes => {
            let mut bad = None;
            for i in 0..ce.num_generators() {
                for j in 0..ce.num_generators() {
                    if bad.is_none() && !ce.bracket_generators(i, j).is_zero() {
                        bad = Some(vec![ce.generator_name(i), ce.generator_name(j)]);
                    }
                }
            }
            out.checks.push(verdict(e.name(), bad.is_none(), "generator pairs".into(), bad));
        }
    }
    Ok(())
}

/// Runs every expected check; operation errors become failed checks.
pub fn run(s: &Scenario) -> Outcome {
    let ce = CeAlgebra::new(&s.bialgebra);
    let mut out = Outcome::default();
    for e in &s.expected_checks {
        if let Err(err) = run_one(s, &ce, e, &mut out) {
            out.checks.push(fail(e.name(), format!("error: {err}"), None));
        }
    }
    out
}
