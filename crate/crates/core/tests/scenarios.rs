use bvlie::glie::{frobenius_loop, FrobeniusAlgebra};
use bvlie::scenarios::*;
use bvlie::Error;

// Checks that fail by construction: the ½ normalization of the Borel bracket
// and the non-commutative Frobenius truncation.
const KNOWN_RED: &[(&str, &str)] = &[
    ("rcom-l1(0:1,1:1)", "⟨[h], [e12]⟩"),
    ("rpcom(2,2)", "cocycle"),
    ("rpcom(2,2)", "cocycle (structure constants)"),
];

#[test]
fn catalog_outcomes() {
    let cat = catalog();
    assert_eq!(cat.len(), 11);
    for s in &cat {
        let out = run(s);
        assert!(!out.checks.is_empty(), "{}", s.label);
        for c in &out.checks {
            let red = KNOWN_RED.contains(&(s.label.as_str(), c.name.as_str()));
            assert_eq!(c.pass, !red, "{} {}: {}", s.label, c.name, c.details);
        }
    }
}

#[test]
fn kirillov_kostant_signs() {
    for (dim_w, order, sign) in [(1, 2, 1), (1, 3, 1), (2, 2, -1)] {
        let p = h0_presentation(&rpcom(dim_w, order).unwrap()).unwrap();
        assert_eq!(p.generators.len(), dim_w * dim_w);
        assert!(p.closes);
        assert_eq!(p.kk_sign, Some(sign));
    }
    let p = h0_presentation(&rpcom(1, 3).unwrap()).unwrap();
    assert!(p.brackets.values().all(|v| v.is_empty()));
    assert_eq!(p.relations.len(), 1);
}

#[test]
fn truncation_below_two_is_rejected() {
    assert!(matches!(rpcom(1, 1), Err(Error::Invalid(_))));
    let b = frobenius_loop(&FrobeniusAlgebra::field(), 1, "k").unwrap();
    let s = Scenario {
        label: "rpcom(1,1)".into(),
        params: Params::Rpcom { dim_w: 1, order: 1 },
        bialgebra: b,
        expected_checks: vec![],
    };
    assert!(matches!(h0_presentation(&s), Err(Error::Truncation(_))));
}

#[test]
fn theta_factorization_windows() {
    for (n, theta) in [(1, vec![1]), (2, vec![1, 2]), (2, vec![2, 1])] {
        let (ok, table) = factorization(n, &theta, Window::new(0, 3, 4)).unwrap();
        assert!(ok, "theta({n};{theta:?})");
        assert!(!table.rows.is_empty());
    }
}

#[test]
fn hochschild_serre_q_versus_l() {
    for dims in [vec![(0, 1), (1, 1)], vec![(0, 1), (1, 1), (2, 1)], vec![(0, 2), (1, 1)]] {
        let hs = hochschild_serre_check(&dims, Window::new(0, 3, 3)).unwrap();
        assert!(hs.equal, "{dims:?}");
        assert_eq!(hs.q_by_degree, hs.l_by_degree);
    }
}

#[test]
fn invalid_parameters() {
    assert!(rcom(&[]).is_err());
    assert!(rcom_quotient_theta(2, &[1, 1]).is_err());
    assert!(rpcom(0, 2).is_err());
}
