//! Frozen numerical values of the matrix oracle on small classical models.

use std::collections::BTreeMap;

use hss_core::einstein::{ricci_diagonal_at, BetaRelation};
use hss_core::oracle::checks::{fiber_splits, j_coefficients, orbit_frame, FiberSplit, MeasuredNorm};
use hss_core::oracle::{
    bracket_norms, contact_rank, curvature_checks, restricted_spectrum, ricci_polar_numeric, run_suite,
    verify_j_action, MatrixAlgebra, RestrictedSpectrum,
};
use hss_core::rational::{int, rat, to_f64, Rational};
use hss_core::rootsys::{OrbitPoint, RestrictedRoot};
use hss_core::spaces::{catalog, Family, SpaceDescriptor};

struct Model {
    alg: MatrixAlgebra,
    spec: RestrictedSpectrum,
    space: SpaceDescriptor,
    splits: BTreeMap<RestrictedRoot, FiberSplit>,
}

fn model(family: Family, d: Rational) -> Model {
    let alg = MatrixAlgebra::build(family, to_f64(&d)).unwrap();
    let spec = restricted_spectrum(&alg).unwrap();
    let splits = fiber_splits(&alg, &spec).unwrap();
    Model { alg, spec, space: catalog(family).unwrap(), splits }
}

fn norms(m: &Model, rel: BetaRelation) -> Vec<MeasuredNorm> {
    bracket_norms(&m.alg, &m.spec, &m.space, &m.splits)
        .unwrap()
        .into_iter()
        .filter(|n| n.relation == Some(rel))
        .collect()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn model_dimensions() {
    // dim sp(n) = n(2n+1), dim so(m) = m(m-1)/2, dim su(n) = n^2 - 1.
    let sp2 = MatrixAlgebra::build(Family::SpQuotient { n: 2 }, 1.0).unwrap();
    assert_eq!((sp2.dim(), sp2.m_basis.ncols()), (10, 6));
    let g24 = MatrixAlgebra::build(Family::Grassmannian { k: 2, n: 4 }, 2.0).unwrap();
    assert_eq!((g24.dim(), g24.m_basis.ncols()), (15, 8));
    let so10 = MatrixAlgebra::build(Family::SoQuotient { n: 5 }, 1.0).unwrap();
    assert_eq!((so10.dim(), so10.m_basis.ncols()), (45, 20));
}

#[test]
fn exceptional_models_are_rejected() {
    assert!(MatrixAlgebra::build(Family::EIII, 1.0).is_err());
    assert!(MatrixAlgebra::build(Family::EVII, 1.0).is_err());
    assert!(MatrixAlgebra::build(Family::SpQuotient { n: 2 }, 0.0).is_err());
}

#[test]
fn measured_multiplicities() {
    let n2 = |i, j| RestrictedRoot::plus(i, j, 2);
    let m = model(Family::SpQuotient { n: 2 }, int(1));
    assert_eq!(m.spec.multiplicity(&RestrictedRoot::two_e(0, 2)), 1);
    assert_eq!(m.spec.multiplicity(&n2(0, 1)), 1);
    assert_eq!(m.spec.multiplicity(&RestrictedRoot::minus(0, 1, 2)), 1);

    let m = model(Family::Grassmannian { k: 2, n: 4 }, int(1));
    assert_eq!(m.spec.multiplicity(&RestrictedRoot::two_e(1, 2)), 1);
    assert_eq!(m.spec.multiplicity(&n2(0, 1)), 2);

    let m = model(Family::SoQuotient { n: 4 }, int(1));
    assert_eq!(m.spec.multiplicity(&n2(0, 1)), 4);
    assert_eq!(m.spec.multiplicity(&RestrictedRoot::minus(0, 1, 2)), 4);
}

#[test]
fn j_coefficients_have_length_half_root_d() {
    for d in [rat(1, 2), int(2)] {
        let m = model(Family::SpQuotient { n: 3 }, d);
        let a = j_coefficients(&m.alg, &m.spec).unwrap();
        assert_eq!(a.len(), 3);
        for v in a {
            assert!(close(v.abs(), to_f64(&d).sqrt() / 2.0, 1e-9), "{v}");
        }
    }
}

#[test]
fn j_action_clauses() {
    for f in [Family::SpQuotient { n: 3 }, Family::complex_projective(3), Family::Grassmannian { k: 2, n: 5 }] {
        let m = model(f, int(1));
        for c in verify_j_action(&m.alg, &m.spec) {
            assert!(c.pass, "{f}: {c:?}");
        }
    }
}

#[test]
fn same_fiber_partner_norm() {
    let m = model(Family::Grassmannian { k: 2, n: 4 }, int(1));
    let v = norms(&m, BetaRelation::SameFiberPartner);
    assert_eq!(v.len(), 1);
    assert!(close(v[0].measured, 8.0, 1e-9), "{v:?}");
}

#[test]
fn shortest_pair_across_fibers_norm() {
    let m = model(Family::SpQuotient { n: 2 }, int(1));
    let v = norms(&m, BetaRelation::OppositeFiberShortest);
    assert_eq!(v.len(), 1);
    assert!(close(v[0].measured, 8.0, 1e-9), "{v:?}");
}

#[test]
fn cross_length_norm_vanishes() {
    // The smallest oriented Grassmannian whose middle fibers carry both lengths.
    let m = model(Family::OrientedGrassmannian { n: 7 }, int(1));
    let v = norms(&m, BetaRelation::CrossLength);
    assert!(!v.is_empty());
    for n in v {
        assert!(close(n.measured, 0.0, 1e-9), "{n:?}");
    }
}

#[test]
fn norms_scale_with_d() {
    for d in [rat(1, 3), int(3)] {
        let m = model(Family::Grassmannian { k: 2, n: 4 }, d);
        for n in bracket_norms(&m.alg, &m.spec, &m.space, &m.splits).unwrap() {
            let want = n.expected.expect("every G_2(C^4) entry is tabulated");
            assert!(close(n.measured, want, 1e-9), "{n:?}");
        }
    }
}

#[test]
fn polar_ricci_values() {
    for (f, want) in [
        (Family::SpQuotient { n: 2 }, 4.0),
        (Family::Grassmannian { k: 2, n: 4 }, 8.0),
        (Family::SoQuotient { n: 5 }, 20.0),
    ] {
        for d in [int(1), rat(5, 2)] {
            let m = model(f, d);
            let got = ricci_polar_numeric(&m.alg, &m.spec, &m.space, &m.splits).unwrap();
            assert!(close(got, want, 1e-8), "{f} d={d}: {got}");
            assert!(close(got, to_f64(&ricci_diagonal_at(&m.space, d).unwrap()), 1e-8));
        }
    }
}

#[test]
fn gauss_constant_at_the_midpoint() {
    let m = model(Family::SpQuotient { n: 2 }, int(1));
    let (checks, k) = curvature_checks(&m.alg, &m.spec, &m.space, int(1), 0.5).unwrap();
    assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    assert!(close(k, 1.0, 1e-8), "{k}");
}

#[test]
fn sectional_curvature_is_one_over_d() {
    let d = int(2);
    let m = model(Family::Grassmannian { k: 2, n: 4 }, d);
    let frame = orbit_frame(&m.alg, &m.spec.point_at(&[1.0 / 6.0, 0.0]));
    let xi = m.spec.root(&RestrictedRoot::two_e(0, 2)).unwrap().m_fiber.column(0).into_owned();
    assert!(frame.complex.ncols() > 0);
    for y in frame.complex.column_iter() {
        let br = m.alg.bracket(&y.into_owned(), &xi);
        assert!(close(br.norm_squared() / m.alg.scale, 0.5, 1e-9));
    }
}

#[test]
fn contact_ranks() {
    let m = model(Family::complex_projective(3), int(1));
    let r = contact_rank(&m.spec, &m.alg, &m.space, &OrbitPoint::segment(0, rat(1, 3), 1).unwrap()).unwrap();
    assert!(r.full() && !r.indeterminate, "{r:?}");

    let m = model(Family::Grassmannian { k: 2, n: 5 }, int(1));
    let r = contact_rank(&m.spec, &m.alg, &m.space, &OrbitPoint::segment(1, rat(1, 3), 2).unwrap()).unwrap();
    assert!(!r.full() && !r.indeterminate, "{r:?}");

    let m = model(Family::SpQuotient { n: 3 }, int(1));
    let r = contact_rank(&m.spec, &m.alg, &m.space, &OrbitPoint::segment(1, rat(1, 2), 3).unwrap()).unwrap();
    assert!(!r.full() && !r.indeterminate, "{r:?}");

    assert!(contact_rank(&m.spec, &m.alg, &m.space, &OrbitPoint::vertex(1, 3)).is_err());
}

#[test]
fn full_suite_on_g2_c4_at_d_two() {
    let report = run_suite(Family::Grassmannian { k: 2, n: 4 }, int(2)).unwrap();
    let failed: Vec<_> = report.failures().collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert_eq!(report.multiplicities.values().sum::<usize>() + 2, 8);
}

#[test]
fn report_round_trips_through_json() {
    let report = run_suite(Family::SpQuotient { n: 2 }, rat(3, 2)).unwrap();
    let json = serde_json::to_string(&report).unwrap();
    let back: hss_core::oracle::VerificationReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
}
