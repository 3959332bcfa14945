use braid_rmatrix::bmw::*;
use braid_rmatrix::exec::Exec;
use braid_rmatrix::Scalar;

fn params(s: Series, n: u8) -> SeriesParams {
    SeriesParams::new(s, n).unwrap()
}

fn relation<'a>(reports: &'a [braid_rmatrix::report::Report], key: &str) -> &'a braid_rmatrix::report::Report {
    reports.iter().find(|r| r.relation.contains(key)).unwrap()
}

#[test]
fn b1_literal_satisfies_two_site_relations() {
    let p = params(Series::B, 1);
    let reports = verify_bmw(&p, &build_g1_literal(&p).unwrap(), "literal", Mode::Exact, Exec::default()).unwrap();
    for r in reports.iter().filter(|r| !r.relation.contains("braid")) {
        assert!(r.passed(), "{}", r.summary());
    }
}

#[test]
fn b2_literal_fails_left_absorption_only_through_x() {
    let p = params(Series::B, 2);
    let reports = verify_bmw(&p, &build_g1_literal(&p).unwrap(), "literal", Mode::Exact, Exec::default()).unwrap();
    assert!(relation(&reports, "cubic").passed());
    assert!(relation(&reports, "g e = r^-1 e").passed());
    assert!(relation(&reports, "e^2 = x e").passed());
    assert!(!relation(&reports, "e g = r^-1 e").passed());
    assert_ne!(p.x(), p.x_standard().unwrap());
}

#[test]
fn corrected_b_series_satisfies_two_site_relations() {
    for n in [1, 2, 3] {
        let p = params(Series::B, n).with_weights(Weights::Alternative);
        let g = build_g1_corrected(&p).unwrap();
        let reports = verify_bmw(&p, &g, "corrected", Mode::Float { q: 0.8, tol: 1e-10 }, Exec::default()).unwrap();
        for r in reports.iter().filter(|r| !r.relation.contains("braid")) {
            assert!(r.passed(), "{}", r.summary());
        }
    }
}

#[test]
fn every_violated_row_has_a_consistent_correction() {
    for n in [1, 2] {
        let rows = row_corrections(&params(Series::B, n), ROW_Q, 1e-10).unwrap();
        assert!(rows.iter().all(|r| r.corrected_residual < 1e-10));
        assert_eq!(rows.is_empty(), n == 1);
    }
}

#[test]
fn off_opposite_kets_follow_hecke_rules() {
    for (s, n) in [(Series::B, 1), (Series::B, 2), (Series::C, 2), (Series::D, 3)] {
        let p = params(s, n);
        assert!(hecke_cross_check(&p, &build_g1_literal(&p).unwrap()).unwrap().passed());
    }
}

#[test]
fn exact_and_float_residuals_agree() {
    let p = params(Series::B, 2);
    let g = build_g1_literal(&p).unwrap();
    let ex = verify_bmw(&p, &g, "literal", Mode::Exact, Exec::default()).unwrap();
    let fl = verify_bmw(&p, &g, "literal", Mode::Float { q: 0.8, tol: 1e-10 }, Exec::default()).unwrap();
    for (a, b) in ex.iter().zip(&fl) {
        assert_eq!(a.passed(), b.passed(), "{}", a.relation);
    }
}

#[test]
fn c_and_d_discrepancy() {
    let d = discrepancy(Series::D, 2, 0.8, Exec::default()).unwrap();
    assert!(!d.x_equal);
    assert_eq!((d.x_literal_at_2, d.x_standard_at_2), (6.75, 6.25));
    assert!(d.x_alternative_equal);
    let c = discrepancy(Series::C, 1, 0.8, Exec::default()).unwrap();
    assert!(!c.x_equal);
    assert!(c.literal.iter().any(|(_, r)| *r > 1e-3));
}

#[test]
fn norm_table() {
    let t = norm_constants(&params(Series::B, 1)).unwrap();
    assert_eq!(t.n_mu_sq, vec![(1, "q^2".to_string())]);
    assert_eq!(t.n_mu, vec![(1, "q".to_string())]);
    assert!(t.n0_sq_num.is_some() && t.n0_sq_den.is_some());
    assert!(norm_constants(&params(Series::C, 1)).unwrap().n0_sq_num.is_none());
    let n2 = norm_squares(&params(Series::B, 2));
    assert_eq!(n2[0].1, Scalar::parse("q^8 - q^6 + q^4").unwrap());
}

#[test]
fn tensor_basis_g1_satisfies_every_relation() {
    for (s, n) in [(Series::B, 1), (Series::B, 2), (Series::D, 2), (Series::C, 1), (Series::C, 2)] {
        for r in verify_reference(&params(s, n), Mode::Exact, Exec::default()).unwrap() {
            assert!(r.passed(), "{}", r.summary());
        }
    }
    for (s, n) in [(Series::B, 3), (Series::C, 3), (Series::D, 3)] {
        for r in verify_reference(&params(s, n), Mode::Float { q: 0.8, tol: 1e-10 }, Exec::default()).unwrap() {
            assert!(r.passed(), "{}", r.summary());
        }
    }
}

#[test]
fn tensor_basis_x_is_standard_for_b_and_d() {
    for (s, n) in [(Series::B, 1), (Series::B, 2), (Series::D, 2), (Series::D, 3)] {
        let p = params(s, n);
        let rf = build_reference(&p);
        assert_eq!(rf.r, p.r);
        assert_eq!(rf.x, p.x_standard().unwrap());
    }
    let c = params(Series::C, 1);
    assert_ne!(build_reference(&c).r, c.r);
    assert_eq!(build_reference(&c).x, Scalar::parse("-q^2 - q^-2").unwrap());
}

#[test]
fn printed_b_blocks_are_tensor_blocks_up_to_similarity() {
    for n in [1, 2] {
        let p = params(Series::B, n);
        assert!(compare_with_reference(&p, &build_g1_literal(&p).unwrap(), "literal").passed());
        let alt = p.clone().with_weights(Weights::Alternative);
        assert!(compare_with_reference(&alt, &build_g1_corrected(&alt).unwrap(), "corrected").passed());
    }
}

#[test]
fn b1_braid_holds_after_rescaling_by_the_norm() {
    let p = params(Series::B, 1);
    let mut g = build_g1_literal(&p).unwrap();
    let (up, down) = (p.pos(1, -1), p.pos(-1, 1));
    let n1 = Scalar::q();
    for c in 0..p.dim() {
        g[up][c] = &g[up][c] * &n1.inverse().unwrap();
    }
    for row in g.iter_mut() {
        row[up] = &row[up] * &n1;
    }
    let reports = verify_bmw(&p, &g, "rescaled", Mode::Exact, Exec::default()).unwrap();
    assert!(relation(&reports, "braid").passed());
    assert!(relation(&reports, "cubic").passed());
    assert_eq!(g[down][up], Scalar::q_pow(-1));
    assert_eq!(g[up][down], Scalar::q_pow(-1));
}

#[test]
fn suite_explains_every_b_failure() {
    let s = bmw_suite(Exec::default()).unwrap();
    for r in s.exact.iter().chain(&s.corrected) {
        assert!(r.acceptable(), "{}", r.summary());
    }
    assert!(s.reference.iter().all(|r| r.passed()));
}
