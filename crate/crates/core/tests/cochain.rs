use bvlie::cochain::*;
use bvlie::exact_linalg::{Scalar, SparseVec};
use bvlie::glie::*;
use bvlie::Error;

fn q(a: i64, b: i64) -> Scalar {
    Scalar::new(a, b)
}

fn borel() -> CeAlgebra {
    CeAlgebra::new(&standard_for_dims(&[(0, 1), (1, 1)], Restriction::Q1).unwrap())
}

fn gen(ce: &CeAlgebra, name: &str) -> Cochain {
    let i = (0..ce.num_generators()).find(|&i| ce.bialgebra.algebra.name(i) == name).unwrap();
    ce.generator(i)
}

#[test]
fn borel_blocks_are_one_dimensional() {
    let ce = borel();
    let t = cohomology(&ce, 0..=6, &Truncation::SMax(6)).unwrap();
    // C = k[x] ⊗ Λ[t] with d = 0: one monomial x^s or t·x^s per (deg, s)
    for deg in 0..=6 {
        for s in 0..=6 {
            let expected = usize::from(deg <= 1);
            assert_eq!(t.betti(&Selector::s_block(deg, s)), expected, "({deg},{s})");
        }
    }
    let x = gen(&ce, "e12");
    let tt = gen(&ce, "h");
    assert_eq!(ce.bracket(&tt, &x), x.scaled(&q(1, 2)));
    assert!(ce.bracket(&x, &x).is_zero());
    assert!(ce.bracket(&tt, &tt).is_zero());
}

#[test]
fn gl2_cohomology_is_exterior_on_degrees_one_and_three() {
    let ce = CeAlgebra::new(&standard_bialgebra(2, 0, Restriction::Full).unwrap());
    let t = cohomology(&ce, -1..=5, &Truncation::SMax(2)).unwrap();
    let by_deg: Vec<usize> = t.betti_by_degree().values().copied().collect();
    assert_eq!(by_deg, vec![0, 1, 1, 0, 1, 1, 0]);
}

#[test]
fn empty_algebra_has_one_class() {
    let g = GradedLie::new(Vec::new(), Vec::new());
    let ce = CeAlgebra::new(&Bialgebra::trivial("empty", g, 0));
    let t = cohomology(&ce, 0..=0, &Truncation::SMax(0)).unwrap();
    assert_eq!(t.betti_by_degree()[&0], 1);
}

fn identity_selectors(ce: &CeAlgebra) -> Vec<Selector> {
    let mut out = Vec::new();
    for deg in -2..=4 {
        out.extend(Truncation::SMax(3).selectors(ce, deg));
    }
    out
}

#[test]
fn squares_vanish_and_delta_commutes() {
    for b in catalog() {
        let ce = CeAlgebra::new(&b);
        for sel in identity_selectors(&ce) {
            let d1 = ce_differential(&ce, &sel).unwrap().matrix;
            let d2 = ce_differential(&ce, &sel.with_degree(sel.degree + 1)).unwrap().matrix;
            assert!(d2.mul(&d1).is_zero(), "d² on {} {sel}", b.name);
            if b.shift_n % 2 != 0 {
                assert!(matches!(ce.bv(&Cochain::one()), Err(Error::ShiftParity(_))));
                continue;
            }
            let b1 = bv_operator(&ce, &sel).unwrap().matrix;
            let b2 = bv_operator(&ce, &sel.with_degree(sel.degree - 1)).unwrap().matrix;
            assert!(b2.mul(&b1).is_zero(), "B² on {} {sel}", b.name);
            let l = delta_operator(&ce, &sel).unwrap().matrix;
            let l_up = delta_operator(&ce, &sel.with_degree(sel.degree + 1)).unwrap().matrix;
            let l_down = delta_operator(&ce, &sel.with_degree(sel.degree - 1)).unwrap().matrix;
            assert_eq!(d1.mul(&l), l_up.mul(&d1), "Δd on {} {sel}", b.name);
            assert_eq!(b1.mul(&l), l_down.mul(&b1), "ΔB on {} {sel}", b.name);
        }
    }
}

#[test]
fn coboundary_delta_is_coadjoint_of_delta_r() {
    for dims in [vec![(0, 2)], vec![(0, 1), (1, 1)], vec![(0, 1), (1, 2)]] {
        let b = standard_for_dims(&dims, Restriction::Full).unwrap();
        let end = end_graded(&dims);
        let dr = delta_r(&end.lie, &standard_r(&end, true));
        let ce = CeAlgebra::new(&b);
        assert_eq!(delta_on_generators(&ce).unwrap(), coadjoint_matrix(&b.algebra, &dr), "{dims:?}");
    }
}

#[test]
fn involutive_means_delta_vanishes() {
    for b in catalog().into_iter().filter(|b| b.shift_n % 2 == 0) {
        let ce = CeAlgebra::new(&b);
        if involutivity_check(&b) {
            assert!(delta_on_generators(&ce).unwrap().is_zero(), "{}", b.name);
        }
    }
    let gl2 = CeAlgebra::new(&standard_bialgebra(2, 0, Restriction::Full).unwrap());
    let parts = bvlie::exact_linalg::eigen_split(&delta_on_generators(&gl2).unwrap()).unwrap();
    let eig: Vec<Scalar> = parts.iter().map(|(l, _)| l.clone()).collect();
    assert_eq!(eig, vec![q(-1, 1), q(0, 1), q(1, 1)]);
}

#[test]
fn ker_delta_is_quasi_isomorphic() {
    let q1 = standard_for_dims(&[(0, 1), (1, 1), (2, 1)], Restriction::Q1).unwrap();
    for b in [q1, theta_bialgebra(2, &[1, 2]).unwrap(), theta_bialgebra(2, &[2, 1]).unwrap()] {
        let ce = CeAlgebra::new(&b);
        let l = delta_on_generators(&ce).unwrap();
        println!("{}: Δ on generators zero: {}", b.name, l.is_zero());
        let t = ker_delta_complex(&ce, 0..=3, &Truncation::SMax(3)).unwrap();
        assert!(t.quasi_isomorphic(), "{} {:?}", b.name, t.rows);
        assert!(t.bv_restricts);
    }
}

#[test]
fn cohomology_bracket_on_borel() {
    let ce = borel();
    let x = gen(&ce, "e12");
    let t = gen(&ce, "h");
    let classes = vec![
        Class { label: "t".into(), selector: Selector::s_block(1, 0), rep: t },
        Class { label: "x".into(), selector: Selector::s_block(0, 1), rep: x },
    ];
    let table = cohomology_bracket(&ce, &classes).unwrap();
    let tx = table.iter().find(|e| e.left == 0 && e.right == 1).unwrap();
    assert_eq!(tx.target, Some(Selector::s_block(0, 1)));
    assert_eq!(tx.coords, vec![q(1, 2)]);
    assert!(table.iter().filter(|e| e.left == e.right).all(|e| e.is_zero_class()));
    assert!(bracket_well_defined(&ce, &classes, 3).unwrap());
    let bad = Class { label: "bad".into(), selector: Selector::s_block(0, 1), rep: Cochain::zero() };
    let gl2 = CeAlgebra::new(&standard_bialgebra(2, 0, Restriction::Full).unwrap());
    let not_closed = Class { rep: gl2.generator(1), ..bad };
    assert!(matches!(cohomology_bracket(&gl2, &[not_closed]), Err(Error::NotACocycle(_))));
}

#[test]
fn phi_is_closed_exactly_for_cocycles() {
    for b in catalog() {
        let m = adjoint_square_module(&b);
        check_module(&b.algebra, &m).unwrap();
        let ce = CeAlgebra::new(&b);
        let closed = d_module(&ce, &m, &phi_cochain(&b)).is_empty();
        let cocycle = validate_structures(&b).get("cocycle").unwrap().pass;
        assert_eq!(closed, cocycle, "{}", b.name);
        let op = ce_differential_module(&ce, &m, &Selector::s_block(1, 0)).unwrap();
        let block = enumerate_block(&ce, &Selector::s_block(1, 0)).unwrap();
        assert_eq!(op.matrix.cols(), block.len() * m.dim());
    }
}

#[test]
fn module_differential_squares_to_zero() {
    let b = standard_bialgebra(1, 1, Restriction::Full).unwrap();
    let ce = CeAlgebra::new(&b);
    let m = adjoint_square_module(&b);
    for a in 0..m.dim() {
        for k in 0..ce.num_generators() {
            let mut w = ModuleCochain::new();
            w.insert((vec![k], a), Scalar::one());
            let dd = d_module(&ce, &m, &d_module(&ce, &m, &w));
            assert!(dd.is_empty());
        }
    }
    let mut broken = m.clone();
    broken.action[0].insert(0, SparseVec::from([(1, Scalar::one())]));
    assert!(matches!(check_module(&b.algebra, &broken), Err(Error::NotAModule(_))));
    check_module(&b.algebra, &trivial_module(&b.algebra)).unwrap();
}

#[test]
fn bg_bracket_on_linear_functions() {
    let b = standard_bialgebra(1, 1, Restriction::Full).unwrap();
    let form = b.form.clone().unwrap();
    let ce = CeAlgebra::new(&b);
    let idx = |name: &str| (0..b.dim()).find(|&i| b.algebra.name(i) == name).unwrap();
    let unit = |i: usize| SparseVec::from([(i, Scalar::one())]);
    let p = |name: &str| linear_function(&ce, &form, &unit(idx(name)));
    let br = |u: &Cochain, v: &Cochain| bg_poisson_bracket(&ce, &form, u, v).unwrap();
    assert_eq!(br(&p("a1"), &p("a1")), Cochain::one());
    assert_eq!(br(&p("a2"), &p("a2")), Cochain::one().scaled(&q(-1, 1)));
    assert_eq!(br(&p("e12"), &p("e21")), Cochain::one().scaled(&q(-1, 1)));
    assert_eq!(br(&p("e21"), &p("e12")), Cochain::one());
    let degenerate = BilinearForm::new(form.shift, [(0, 0, Scalar::one())]);
    assert!(matches!(bg_poisson_bracket(&ce, &degenerate, &p("a1"), &p("a1")), Err(Error::DegenerateForm(_))));
}

#[test]
fn identity_suite_on_catalog() {
    for b in catalog() {
        let ce = CeAlgebra::new(&b);
        let start = std::time::Instant::now();
        let checks = identity_suite(&ce, &IdentityWindow::default()).unwrap();
        let failing: Vec<_> = checks.iter().filter(|c| !c.pass).map(|c| (&c.name, &c.witness)).collect();
        let (caught, tried) = mutation_detection(&b, 20);
        println!("{}: {} checks, failing {:?}, mutations {caught}/{tried}, {:?}", b.name, checks.len(), failing, start.elapsed());
        let cocycle = validate_structures(&b).get("cocycle").unwrap().pass;
        assert_eq!(checks.iter().find(|c| c.name == "compatibility").unwrap().pass, cocycle, "{}", b.name);
        assert_eq!(caught, tried, "{}", b.name);
        if cocycle {
            assert!(failing.is_empty(), "{}", b.name);
        }
    }
}
