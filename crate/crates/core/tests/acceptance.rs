//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so every line is printed; exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use bvlie::cli::{scenario_report, AlgebraFile};
use bvlie::cochain::*;
use bvlie::exact_linalg::{echelonize, Scalar, SparseVec};
use bvlie::glie::*;
use bvlie::scenarios::{self, h0_presentation, hochschild_serre_check, Window};

fn q(a: i64, b: i64) -> Scalar {
    Scalar::new(a, b)
}

fn gen(ce: &CeAlgebra, name: &str) -> Cochain {
    let i = (0..ce.num_generators()).find(|&i| ce.bialgebra.algebra.name(i) == name).unwrap();
    ce.generator(i)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Borel of sl(1,1): Betti numbers and the cohomology bracket.
fn borel() -> (bool, String) {
    let s = scenarios::rcom_quotient_l1(&[(0, 1), (1, 1)]).unwrap();
    let ce = CeAlgebra::new(&s.bialgebra);
    // The algebra is abelian, so d = 0 and every block's Betti number is the
    // number of monomials t^a x^b (a ∈ {0,1}) in it: one per (deg, s) with
    // deg ∈ {0, 1}, i.e. one per total degree deg + 2s.
    let abelian = (0..2).all(|i| (0..2).all(|j| s.bialgebra.algebra.bracket_basis(i, j).is_empty()));
    let t = cohomology(&ce, 0..=6, &Truncation::SMax(6)).unwrap();
    let mut blocks_ok = abelian;
    for deg in 0..=6 {
        for sv in 0..=6 {
            blocks_ok &= t.betti(&Selector::s_block(deg, sv)) == usize::from(deg <= 1);
        }
    }
    let totals: Vec<usize> = t.betti_by_total_degree().values().copied().collect();
    let betti_ok = blocks_ok && totals == vec![1; 7];

    let (x, tt) = (gen(&ce, "e12"), gen(&ce, "h"));
    let classes = vec![
        Class { label: "t".into(), selector: Selector::s_block(1, 0), rep: tt },
        Class { label: "x".into(), selector: Selector::s_block(0, 1), rep: x },
    ];
    let table = cohomology_bracket(&ce, &classes).unwrap();
    let entry = |l: usize, r: usize| table.iter().find(|e| e.left == l && e.right == r).unwrap();
    let tx = entry(0, 1);
    let tx_ok = tx.target == Some(Selector::s_block(0, 1)) && tx.coords == vec![Scalar::one()];
    let zeros_ok = entry(0, 0).is_zero_class() && entry(1, 1).is_zero_class();
    let tx_val = tx.coords.first().map_or("0".to_string(), |c| c.to_string());
    let details = format!(
        "Betti by total degree 0..6 = {totals:?}, per (deg,s) block {}; ⟨[t],[x]⟩ = {tx_val}·[x] (expected 1·[x]); ⟨[x],[x]⟩ = ⟨[t],[t]⟩ = 0: {zeros_ok}; tolerance exact",
        if blocks_ok { "1 on deg 0,1" } else { "mismatch" },
    );
    (betti_ok && tx_ok && zeros_ok, details)
}

/// δr for the unsigned standard r-matrix.
fn delta_r_values() -> (bool, String) {
    let diag = |end: &EndGraded, xs: &[Scalar]| -> SparseVec {
        xs.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (end.index(i, i), x.clone())).collect()
    };
    let cases: [(&str, Vec<(i64, usize)>, Vec<Scalar>); 3] = [
        ("gl(2)", vec![(0, 2)], vec![q(1, 2), q(-1, 2)]),
        ("gl(3)", vec![(0, 3)], vec![q(2, 2), q(0, 1), q(-2, 2)]),
        ("gl(1,2)", vec![(0, 1), (1, 2)], vec![q(2, 2), q(2, 2), q(0, 1)]),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, dims, want) in cases {
        let end = end_graded(&dims);
        let got = delta_r(&end.lie, &standard_r(&end, false));
        let hit = got == diag(&end, &want);
        ok &= hit;
        parts.push(format!("{name} {}", if hit { "ok" } else { "mismatch" }));
    }
    (ok, format!("{}; tolerance exact", parts.join(", ")))
}

fn involutivity() -> (bool, String) {
    let b = standard_for_dims(&[(0, 1), (1, 1)], Restriction::Q1).unwrap();
    let ce = CeAlgebra::new(&b);
    let inv = involutivity_check(&b);
    let mut delta_zero = delta_on_generators(&ce).unwrap().is_zero();
    let mut blocks = 0;
    for deg in 0..=4 {
        for sel in Truncation::SMax(4).selectors(&ce, deg) {
            delta_zero &= delta_operator(&ce, &sel).unwrap().matrix.is_zero();
            blocks += 1;
        }
    }
    let gl2 = standard_bialgebra(2, 0, Restriction::Full).unwrap();
    let gl2_inv = involutivity_check(&gl2);
    let details = format!(
        "sl(1,1) Borel involutive: {inv}, Δ = 0 on {blocks} blocks (deg <= 4, s <= 4): {delta_zero}; gl(2) involutive: {gl2_inv}"
    );
    (inv && delta_zero && !gl2_inv, details)
}

fn manin_round_trip() -> (bool, String) {
    let mut bad = Vec::new();
    let cat = catalog();
    for b in &cat {
        let t = double_of_bialgebra(b);
        let back = manin_to_bialgebra(&t, Side::Plus).unwrap();
        let report = validate_manin(&t);
        if !back.same_structure(b) || !report.all_pass() {
            let failing: Vec<String> = report.failing().iter().map(|c| c.name.clone()).collect();
            bad.push(format!("{} (round trip {}, double fails {:?})", b.name, back.same_structure(b), failing));
        }
    }
    let details = if bad.is_empty() {
        format!("{} catalog bialgebras round-trip and their doubles validate", cat.len())
    } else {
        format!("{} of {} fail: {}", bad.len(), cat.len(), bad.join("; "))
    };
    (bad.is_empty(), details)
}

fn identity_suite_all() -> (bool, String) {
    let mut bad = Vec::new();
    let cat = catalog();
    let mut mutations = (0, 0);
    for b in &cat {
        let ce = CeAlgebra::new(b);
        let checks = identity_suite(&ce, &IdentityWindow::default()).unwrap();
        let (caught, tried) = mutation_detection(b, 20);
        mutations.0 += caught;
        mutations.1 += tried;
        let failing: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
        if !failing.is_empty() || caught != tried {
            bad.push(format!("{} fails {:?}, mutations caught {caught}/{tried}", b.name, failing));
        }
    }
    let details = format!(
        "window deg -2..4, s <= 4; B identities on even-shift entries; mutations caught {}/{}; {}",
        mutations.0,
        mutations.1,
        if bad.is_empty() { "all entries pass".to_string() } else { bad.join("; ") }
    );
    (bad.is_empty(), details)
}

fn ker_delta() -> (bool, String) {
    let cases = [
        standard_for_dims(&[(0, 1), (1, 1), (2, 1)], Restriction::Q1).unwrap(),
        theta_bialgebra(2, &[1, 2]).unwrap(),
        theta_bialgebra(2, &[2, 1]).unwrap(),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for b in &cases {
        let ce = CeAlgebra::new(b);
        let t = ker_delta_complex(&ce, -2..=3, &Truncation::SMax(4)).unwrap();
        let hit = t.quasi_isomorphic() && t.bv_restricts;
        ok &= hit;
        let eig: Vec<String> = t.eigenvalues.iter().map(|(l, _)| l.to_string()).collect();
        parts.push(format!("{}: {} blocks, Δ eigenvalues {{{}}}, equal {hit}", b.name, t.rows.len(), eig.join(",")));
    }
    (ok, format!("deg -2..3, s <= 4; {}", parts.join("; ")))
}

fn hochschild_serre() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (dims, lines) in [(vec![(0, 1), (1, 1)], 2), (vec![(0, 1), (1, 1), (2, 1)], 3)] {
        let hs = hochschild_serre_check(&dims, Window::new(0, 2, 3)).unwrap();
        // l is abelian on `lines` degree-zero lines: H(l) = Λ on that many odd generators.
        let want: Vec<usize> = (0..=2).map(|k| binomial(lines, k)).collect();
        let got: Vec<usize> = hs.q_by_degree.values().copied().collect();
        let hit = hs.equal && got == want;
        ok &= hit;
        parts.push(format!("{dims:?}: H(q) = {got:?}, expected {want:?}, blockwise equal {}", hs.equal));
    }
    (ok, format!("deg 0..2, s <= 3; {}", parts.join("; ")))
}

fn theta_factorization() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, theta) in [(1usize, vec![1usize]), (2, vec![1, 2]), (2, vec![2, 1])] {
        let (hit, table) = scenarios::factorization(n, &theta, Window::new(0, 3, 4)).unwrap();
        ok &= hit;
        parts.push(format!("n={n} θ={theta:?}: {} nonzero blocks, equal {hit}", table.rows.len()));
    }
    // n = 1 reproduces k[x] ⊗ Λ[t]: one class in each (deg, s) with deg ∈ {0, 1}.
    let ce = CeAlgebra::new(&theta_bialgebra(1, &[1]).unwrap());
    let t = cohomology(&ce, 0..=3, &Truncation::SMax(4)).unwrap();
    let borel_like = (0..=3).all(|d| (0..=4).all(|s| t.betti(&Selector::s_block(d, s)) == usize::from(d <= 1)));
    ok &= borel_like;
    parts.push(format!("n=1 matches k[x]⊗Λ[t]: {borel_like}"));
    (ok, format!("deg 0..3, s <= 4; {}", parts.join("; ")))
}

fn rpcom() -> (bool, String) {
    // dim W = 1, N = 3: H⁰ = k[x]/(x²) has Hilbert function 1, 1, 0, 0, 0.
    let s1 = scenarios::rpcom(1, 3).unwrap();
    let ce = CeAlgebra::new(&s1.bialgebra);
    let h: Vec<usize> = (0..=4).map(|sv| block_cohomology(&ce, &Selector::s_block(0, sv)).unwrap().betti).collect();
    let dual_numbers = h == vec![1, 1, 0, 0, 0];

    let s2 = scenarios::rpcom(2, 2).unwrap();
    let p = h0_presentation(&s2).unwrap();
    let name = |i: usize, j: usize| format!("f[x{}{}t1]", i + 1, j + 1);
    let pos: BTreeMap<String, usize> = p.generators.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
    // Square-zero relations Σ_k x_ik x_kj, keyed by sorted variable pairs.
    let mut monos: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut key = |a: usize, b: usize| {
        let mut k = vec![a, b];
        k.sort_unstable();
        let n = monos.len();
        *monos.entry(k).or_insert(n)
    };
    let mut oracle: Vec<SparseVec> = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let mut v = SparseVec::new();
            for k in 0..2 {
                let m = key(pos[&name(i, k)], pos[&name(k, j)]);
                let e = v.entry(m).or_insert_with(Scalar::zero);
                *e += Scalar::one();
            }
            oracle.push(v);
        }
    }
    let engine: Vec<SparseVec> = p
        .relations
        .iter()
        .map(|r| r.iter().map(|(k, c)| (key(k[0], k[1]), c.clone())).collect())
        .collect();
    let rank = |v: Vec<SparseVec>| echelonize(v).len();
    let joint = rank(oracle.iter().chain(&engine).cloned().collect());
    let relations_ok = p.relations.len() == 4 && rank(oracle.clone()) == 4 && joint == 4;

    // Kirillov–Kostant: {x_ij, x_kl} = δ_jk x_il − δ_li x_kj.
    let mut kk: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
    for (i, j, k, l) in (0..16).map(|c| (c / 8, (c / 4) % 2, (c / 2) % 2, c % 2)) {
        let mut v: BTreeMap<usize, Scalar> = BTreeMap::new();
        if j == k {
            *v.entry(pos[&name(i, l)]).or_insert_with(Scalar::zero) += Scalar::one();
        }
        if l == i {
            *v.entry(pos[&name(k, j)]).or_insert_with(Scalar::zero) -= Scalar::one();
        }
        v.retain(|_, x| !x.is_zero());
        kk.insert((pos[&name(i, j)], pos[&name(k, l)]), v);
    }
    let signs: Vec<Option<Scalar>> = kk
        .iter()
        .filter(|(_, v)| !v.is_empty())
        .map(|(k, v)| {
            let (i, x) = v.iter().next().unwrap();
            let got = p.brackets.get(k)?.get(i)?.clone();
            let s = &got / x;
            let scaled: BTreeMap<usize, Scalar> = v.iter().map(|(i, x)| (*i, x * &s)).collect();
            (p.brackets.get(k) == Some(&scaled)).then_some(s)
        })
        .collect();
    let first = signs.first().cloned().flatten();
    let one_sign = first
        .as_ref()
        .is_some_and(|s| (s.is_one() || (-s).is_one()) && signs.iter().all(|x| x.as_ref() == Some(s)));
    let zero_ok = kk.iter().filter(|(_, v)| v.is_empty()).all(|(k, _)| p.brackets[k].is_empty());
    let kk_ok = one_sign && zero_ok && kk.len() == 16;
    let details = format!(
        "dim W=1,N=3 H⁰ Hilbert {h:?} (k[x]/(x²)); dim W=2,N=2: {} relations spanning Σ_k x_ik x_kj: {relations_ok}; KK table (16 entries) up to global sign {}: {kk_ok}",
        p.relations.len(),
        first.map_or("?".to_string(), |s| s.to_string()),
    );
    (dual_numbers && relations_ok && kk_ok, details)
}

fn coboundary() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, dims) in [("gl(2)", vec![(0, 2)]), ("gl(1,1)", vec![(0, 1), (1, 1)]), ("gl(1,2)", vec![(0, 1), (1, 2)])] {
        let b = standard_for_dims(&dims, Restriction::Full).unwrap();
        let end = end_graded(&dims);
        let g = &b.algebra;
        let n = g.dim();
        // δr = ½ Σ r^{ab} [e_a, e_b]
        let mut dr = vec![Scalar::zero(); n];
        for (&(a, c), r) in standard_r(&end, true).entries() {
            for (k, slot) in dr.iter_mut().enumerate() {
                *slot += &(r * &g.structure_constant(a, c, k)) * &q(1, 2);
            }
        }
        // ad*_X ξ = −ξ ∘ ad_X: entry (a, k) = −Σ_b X^b c_{ba}^k
        let ce = CeAlgebra::new(&b);
        let delta = delta_on_generators(&ce).unwrap();
        let mut hit = true;
        for a in 0..n {
            for k in 0..n {
                let mut want = Scalar::zero();
                for (bi, x) in dr.iter().enumerate() {
                    want -= x * &g.structure_constant(bi, a, k);
                }
                hit &= delta.get(a, k) == want;
            }
        }
        ok &= hit;
        parts.push(format!("{label} {}", if hit { "equal" } else { "differs" }));
    }
    (ok, format!("{}; tolerance exact", parts.join(", ")))
}

fn determinism() -> (bool, String) {
    let bin = env!("CARGO_BIN_EXE_bvlie");
    let dir = tempfile::tempdir().unwrap();
    let fixture = dir.path().join("gl11.json");
    let gl11 = standard_bialgebra(1, 1, Restriction::Full).unwrap();
    std::fs::write(&fixture, AlgebraFile::from_bialgebra(&gl11).pretty_json()).unwrap();
    let fx = fixture.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["scenario", "rcom", "--dims", "1,1,1", "--run", "--json"],
        vec!["scenario", "rcom-l1", "--dims", "1,1", "--run", "--json"],
        vec!["scenario", "rcom-l1", "--dims", "1,1,1", "--run", "--json"],
        vec!["scenario", "rcom-theta", "--n", "2", "--theta", "2,1", "--run", "--json"],
        vec!["scenario", "rpcom", "--dim", "2", "--trunc", "2", "--run", "--json"],
        vec!["verify", fx, "--json"],
        vec!["cohomology", fx, "--deg", "-1..3", "--s-max", "3", "--json"],
        vec!["bv-report", fx, "--deg", "-1..3", "--s-max", "3", "--json"],
    ];
    let mut same = true;
    let mut bytes = 0;
    for args in &runs {
        let a = Command::new(bin).args(args).output().unwrap();
        let b = Command::new(bin).args(args).output().unwrap();
        same &= a.stdout == b.stdout && a.status.code() == b.status.code() && !a.stdout.is_empty();
        bytes += a.stdout.len();
    }
    // In-process reports for the whole scenario catalog, twice.
    let render = || -> Vec<String> { scenarios::catalog().iter().map(|s| scenario_report(s).to_json()).collect() };
    let (r1, r2) = (render(), render());
    same &= r1 == r2;
    (same, format!("{} CLI invocations ({bytes} bytes) and {} catalog reports byte-identical across two runs: {same}", runs.len(), r1.len()))
}

fn main() {
    let criteria: Vec<(&str, fn() -> (bool, String))> = vec![
        ("Borel of sl(1,1): Betti numbers and cohomology bracket", borel),
        ("δr values for gl(2), gl(3), gl(1,2)", delta_r_values),
        ("involutivity and Δ = 0 for sl(1,1); gl(2) not involutive", involutivity),
        ("Manin triple round trip on the catalog", manin_round_trip),
        ("identity suite on every catalog complex", identity_suite_all),
        ("Ker Δ quasi-isomorphism", ker_delta),
        ("Hochschild-Serre degeneration", hochschild_serre),
        ("θ-factorization", theta_factorization),
        ("RPCom: H⁰ and Kirillov-Kostant bracket", rpcom),
        ("coboundary Δ equals coadjoint action of δr", coboundary),
        ("determinism of reports", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let (pass, details) = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(r) => r,
            Err(e) => {
                let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
                (false, format!("panicked: {}", msg.unwrap_or_default()))
            }
        };
        let status = if pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {title}: {details} [{:.1?}]", i + 1, start.elapsed());
        if !pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
    } else {
        println!("acceptance: {} of {} criteria fail: {failed:?}", failed.len(), criteria.len());
        std::process::exit(1);
    }
}
