use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use socc::*;

const REGIONS: [ConeRegion; 6] = [
    ConeRegion::IntK,
    ConeRegion::BdKNonzero,
    ConeRegion::Zero,
    ConeRegion::NegIntK,
    ConeRegion::NegBdKNonzero,
    ConeRegion::Outside,
];

fn unit(d: &[f64]) -> Vec<f64> {
    let n = d.iter().map(|a| a * a).sum::<f64>().sqrt();
    d.iter().map(|a| a / n).collect()
}

/// A point of the given region with tail direction `w`, size `s` and shape `f`.
fn region_point(region: ConeRegion, w: &[f64], s: f64, f: f64) -> SocVector {
    let tail = |r: f64| w.iter().map(|a| a * r).collect::<Vec<_>>();
    match region {
        ConeRegion::IntK => SocVector::from_parts(s, &tail(f * s)),
        ConeRegion::NegIntK => SocVector::from_parts(-s, &tail(f * s)),
        ConeRegion::BdKNonzero => SocVector::from_parts(s, &tail(s)),
        ConeRegion::NegBdKNonzero => SocVector::from_parts(-s, &tail(s)),
        ConeRegion::Outside => SocVector::from_parts(s * (2.0 * f - 1.0), &tail(s)),
        ConeRegion::Zero => SocVector::zeros(w.len() + 1),
    }
    .unwrap()
}

prop_compose! {
    fn point_and_direction()(m in 2usize..=5)
        (region in prop::sample::select(REGIONS.to_vec()),
         w in prop::collection::vec(-1.0..1.0f64, m - 1).prop_filter("nonzero", |w| w.iter().any(|a| a.abs() > 1e-2)),
         h in prop::collection::vec(-1.0..1.0f64, m).prop_filter("nonzero", |h| h.iter().any(|a| a.abs() > 1e-2)),
         s in 0.3..3.0f64,
         f in 0.1..0.9f64) -> (ConeRegion, SocVector, SocVector) {
        let x = region_point(region, &unit(&w), s, f);
        (region, x, SocVector::new(unit(&h)).unwrap())
    }
}

fn outside_point() -> impl Strategy<Value = SocVector> {
    (2usize..=5).prop_flat_map(|m| {
        (
            prop::collection::vec(-1.0..1.0f64, m - 1).prop_filter("nonzero", |w| w.iter().any(|a| a.abs() > 1e-2)),
            0.3..3.0f64,
            0.05..0.95f64,
        )
            .prop_map(|(w, s, f)| region_point(ConeRegion::Outside, &unit(&w), s, f))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(384))]

    #[test]
    fn directional_derivative_matches_difference_quotients((region, x, h) in point_and_direction()) {
        let tol = Tolerances::default();
        prop_assert_eq!(classify_point(&x, &tol), region);
        let d = dir_derivative(&x, &h).unwrap();
        let p = project_soc(&x);
        for (t, bound) in [(1e-4, 1e-3), (1e-6, 1e-5)] {
            let q = project_soc(&x.add(&h.scale(t))).sub(&p).scale(1.0 / t);
            prop_assert!(q.sub(&d).norm() <= bound, "t={} err={}", t, q.sub(&d).norm());
        }
    }

    #[test]
    fn directional_derivative_is_positively_homogeneous((_r, x, h) in point_and_direction(), k in -8i32..8, s in 1e-3..1e3f64) {
        let d = dir_derivative(&x, &h).unwrap();
        let p = 2f64.powi(k);
        prop_assert_eq!(dir_derivative(&x, &h.scale(p)).unwrap(), d.scale(p));
        let ds = dir_derivative(&x, &h.scale(s)).unwrap();
        prop_assert!(ds.sub(&d.scale(s)).norm() <= 1e-14 * s * (1.0 + d.norm()));
    }

    #[test]
    fn jacobian_is_symmetric_with_spectrum_in_unit_interval(x in outside_point()) {
        let j = jacobian(&x).unwrap();
        let m = j.dim();
        let a = DMatrix::from_fn(m, m, |i, k| j.matrix[i][k]);
        prop_assert!((&a - a.transpose()).amax() <= 1e-12);
        let eig = SymmetricEigen::new(a);
        for l in eig.eigenvalues.iter() {
            prop_assert!(*l >= -1e-10 && *l <= 1.0 + 1e-10, "eigenvalue {}", l);
        }
    }

    #[test]
    fn outside_derivative_is_the_jacobian_action(x in outside_point(), h in prop::collection::vec(-1.0..1.0f64, 5)) {
        let h = SocVector::new(h[..x.dim()].to_vec()).unwrap();
        let j = jacobian(&x).unwrap();
        let d = dir_derivative(&x, &h).unwrap();
        prop_assert!(j.apply(&h).sub(&d).norm() <= 1e-14 * (1.0 + h.norm()));
    }

    #[test]
    fn alpha_w_matrices_are_limits_of_jacobians(alpha in 0.0..=1.0f64, w in prop::collection::vec(-1.0..1.0f64, 1..4)) {
        prop_assume!(w.iter().any(|a| a.abs() > 1e-2));
        let w = unit(&w);
        let e = BSubdifElement::alpha_w(alpha, w.clone()).unwrap();
        let m = e.matrix();
        // Jacobians are constant along rays; approach along (2a - 1, w) with a -> alpha
        let a = alpha.clamp(1e-7, 1.0 - 1e-7);
        let j = jacobian(&SocVector::from_parts(2.0 * a - 1.0, &w).unwrap()).unwrap();
        for (rj, rm) in j.matrix.iter().zip(&m) {
            for (p, q) in rj.iter().zip(rm) {
                prop_assert!((p - q).abs() <= 1e-6);
            }
        }
    }

    #[test]
    fn calmness_ratios_stay_bounded((_r, x, h) in point_and_direction()) {
        let r = calmness_report(&x, &h, &[1e-1, 1e-2, 1e-3, 1e-4, 1e-5]).unwrap();
        prop_assert!(r.ratios[4] <= 10.0 * r.ratios[0] + 1e-8, "{:?}", r.ratios);
        prop_assert!(r.fitted_c >= r.ratios[4]);
    }

    #[test]
    fn coderivative_at_smooth_points_is_the_jacobian(x in outside_point(), w in prop::collection::vec(-1.0..1.0f64, 5), bump in 1e-3..1.0f64) {
        let tol = Tolerances::default();
        let w = SocVector::new(w[..x.dim()].to_vec()).unwrap();
        let jw = jacobian(&x).unwrap().apply(&w);
        prop_assert!(limiting_coderivative_contains(&x, &w, &jw, &tol).unwrap().member);
        let mut off = jw.into_vec();
        off[0] += bump;
        prop_assert!(!limiting_coderivative_contains(&x, &w, &SocVector::new(off).unwrap(), &tol).unwrap().member);
    }
}

#[test]
fn jacobian_refuses_nonsmooth_points() {
    for x in [vec![1.0, 1.0], vec![0.0, 0.0, 0.0], vec![-1.0, 1.0, 0.0]] {
        let x = SocVector::new(x).unwrap();
        assert!(matches!(jacobian(&x), Err(SoccError::NotDifferentiable(_))));
    }
}
