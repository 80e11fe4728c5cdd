use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use socc::cones::sample_limiting_normal;
use socc::oracles::random_anchor;
use socc::*;

const KINDS: [ConeKind; 3] = [ConeKind::Proximal, ConeKind::Regular, ConeKind::Limiting];

fn case_strategy() -> impl Strategy<Value = CaseTag> {
    prop::sample::select(CaseTag::ALL.to_vec())
}

fn gaussian_candidate(m: usize, seed: u64) -> NormalCandidate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = || SocVector::new((0..m).map(|_| StandardNormal.sample(&mut rng)).collect()).unwrap();
    NormalCandidate::new(g(), g()).unwrap()
}

/// Candidates that exercise both sides of the membership boundary.
fn candidates(pair: &OmegaPair, seed: u64) -> Vec<NormalCandidate> {
    let m = pair.dim();
    let mut c = sample_regular_normal(pair, seed, 4);
    c.extend(sample_limiting_normal(pair, seed + 1, 6));
    c.extend((0..4).map(|i| gaussian_candidate(m, seed ^ (i + 7))));
    c
}

/// `J(x - y)(u + v) - v` at a smooth difference.
fn coderivative_residual(pair: &OmegaPair, cand: &NormalCandidate) -> f64 {
    let z = pair.difference();
    let s = cand.u.add(&cand.v);
    let js = match pair.case() {
        CaseTag::IntZero => s,
        CaseTag::ZeroInt => SocVector::zeros(pair.dim()).unwrap(),
        _ => jacobian(&z).unwrap().apply(&s),
    };
    js.sub(&cand.v).norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn membership_is_invariant_under_positive_scaling(case in case_strategy(), m in 2usize..=5, seed in any::<u64>()) {
        let tol = Tolerances::default();
        let pair = random_anchor(case, m, seed).unwrap();
        for c in candidates(&pair, seed) {
            for kind in KINDS {
                let base = normal_contains(kind, &pair, &c, &tol).unwrap().member;
                for t in [1e-3, 1.0, 1e3] {
                    prop_assert_eq!(normal_contains(kind, &pair, &c.scale(t), &tol).unwrap().member, base);
                }
            }
        }
    }

    #[test]
    fn swapping_blocks_is_a_symmetry(case in case_strategy(), m in 2usize..=5, seed in any::<u64>()) {
        let tol = Tolerances::default();
        let pair = random_anchor(case, m, seed).unwrap();
        let sp = pair.swapped();
        for c in candidates(&pair, seed) {
            for kind in KINDS {
                let a = normal_contains(kind, &pair, &c, &tol).unwrap();
                let b = normal_contains(kind, &sp, &c.swapped(), &tol).unwrap();
                prop_assert_eq!(a.member, b.member, "{:?} {:?}", kind, case);
            }
        }
    }

    #[test]
    fn regular_cone_lies_in_limiting_cone(case in case_strategy(), m in 2usize..=5, seed in any::<u64>()) {
        let tol = Tolerances::default();
        let pair = random_anchor(case, m, seed).unwrap();
        for c in candidates(&pair, seed) {
            let r = regular_normal_contains(&pair, &c, &tol).unwrap();
            let p = proximal_normal_contains(&pair, &c, &tol).unwrap();
            prop_assert_eq!(r.member, p.member);
            if r.member {
                prop_assert!(limiting_normal_contains(&pair, &c, &tol).unwrap().member);
            }
            // distance zero exactly on the regular cone
            let d = distance_to_regular_cone(&pair, &c).unwrap();
            prop_assert_eq!(r.member, d <= 1e-7 * (1.0 + c.norm()), "distance {}", d);
        }
    }

    #[test]
    fn bd_bd_row_agrees_with_the_jacobian_system(m in 2usize..=5, seed in any::<u64>()) {
        let tol = Tolerances::default();
        let pair = random_anchor(CaseTag::BdBd, m, seed).unwrap();
        for c in candidates(&pair, seed) {
            let a = regular_normal_contains(&pair, &c, &tol).unwrap();
            let b = regular_normal_contains_via_system(&pair, &c, &tol).unwrap();
            prop_assert_eq!(a.member, b.member);
        }
    }

    #[test]
    fn smooth_strata_match_the_coderivative(
        case in prop::sample::select(vec![CaseTag::IntZero, CaseTag::ZeroInt, CaseTag::BdBd]),
        m in 2usize..=5,
        seed in any::<u64>(),
    ) {
        let tol = Tolerances::default();
        let pair = random_anchor(case, m, seed).unwrap();
        for c in candidates(&pair, seed) {
            let member = regular_normal_contains(&pair, &c, &tol).unwrap().member;
            let r = coderivative_residual(&pair, &c);
            let scale = 1.0 + c.norm();
            if member {
                prop_assert!(r <= 1e-7 * scale, "member with residual {}", r);
            } else {
                prop_assert!(r > 1e-9 * scale, "non-member with residual {}", r);
            }
        }
    }

    #[test]
    fn regular_normals_at_nearby_pairs_are_limiting_normals(case in case_strategy(), m in 2usize..=5, seed in any::<u64>()) {
        // stratum rotation is O(radius), cancellation in the small block O(eps / radius)
        let tol = Tolerances::new(1e-9, 1e-5, 1e-6).unwrap();
        let fine = Tolerances::new(1e-12, 1e-8, 1e-6).unwrap();
        let pair = random_anchor(case, m, seed).unwrap();
        let near = sample_omega_near(&pair, 1e-7, seed, 8, &fine).unwrap();
        for (i, q) in near.pairs.iter().enumerate() {
            for c in sample_regular_normal(q, seed.wrapping_add(i as u64), 2) {
                let v = limiting_normal_contains(&pair, &c, &tol).unwrap();
                prop_assert!(v.member, "{:?} -> {:?}: {}", case, q.case(), v.residual);
            }
        }
    }

    #[test]
    fn verdicts_are_deterministic(case in case_strategy(), m in 2usize..=5, seed in any::<u64>()) {
        let tol = Tolerances::default();
        let pair = random_anchor(case, m, seed).unwrap();
        let a = candidates(&pair, seed);
        let b = candidates(&pair, seed);
        for (ca, cb) in a.iter().zip(&b) {
            prop_assert_eq!(ca, cb);
            for kind in KINDS {
                prop_assert_eq!(normal_contains(kind, &pair, ca, &tol).unwrap(), normal_contains(kind, &pair, cb, &tol).unwrap());
            }
        }
    }
}

#[test]
fn prior_formulas_are_contradicted_on_random_data() {
    use socc::cones::prior::{prior_limiting_one_zero, prior_regular_bd_bd};
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let (mut bd_bd, mut one_zero) = (0, 0);
    for i in 0..200u64 {
        let m = rng.random_range(2..=5);
        let pair = random_anchor(CaseTag::BdBd, m, i).unwrap();
        for c in sample_regular_normal(&pair, i, 4) {
            if let Some(p) = prior_regular_bd_bd(&pair, &c, &tol) {
                bd_bd += usize::from(!p.member());
            }
        }
        let pair = random_anchor(CaseTag::ZeroBd, m, i).unwrap();
        for c in sample_limiting_normal(&pair, i, 6) {
            assert!(limiting_normal_contains(&pair, &c, &tol).unwrap().member);
            if let Some(p) = prior_limiting_one_zero(&pair, &c, &tol) {
                one_zero += usize::from(!p.member());
            }
        }
    }
    assert!(bd_bd > 0, "the prior boundary formula rejected no regular normal");
    assert!(one_zero > 0, "the prior one-zero formula rejected no limiting normal");
}
