//! Earlier published formulas for the normal cones of `Omega` that are known
//! to be wrong. Kept as negative regression anchors: each has explicit
//! counterexamples on which it disagrees with the corrected tests.

use super::{threshold, NormalCandidate};
use crate::linalg::norm;
use crate::soc::{ray_fit, CaseTag, OmegaPair, RayMode, Tolerances};

/// Outcome of every disjunct of a prior formula.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorVerdict {
    pub disjuncts: Vec<(&'static str, bool)>,
}

impl PriorVerdict {
    pub fn member(&self) -> bool {
        self.disjuncts.iter().any(|d| d.1)
    }
}

fn on_line(a: &[f64], d: &[f64], thr: f64) -> bool {
    ray_fit(a, d, RayMode::FullLine).1 <= thr
}

fn on_neg_ray(a: &[f64], d: &[f64], thr: f64) -> bool {
    ray_fit(a, d, RayMode::NegativeRay).1 <= thr
}

/// `a ∈ (R_+ d)°`, i.e. `<a, d> <= 0`
fn in_polar_ray(a: &[f64], d: &[f64], thr: f64) -> bool {
    crate::linalg::dot(a, d) <= thr * norm(d)
}

fn in_neg_k(a: &[f64], thr: f64) -> bool {
    a[0] + norm(&a[1..]) <= thr
}

/// Prior formula for a boundary-boundary pair: `u ∈ R x̂`, `v ∈ R ŷ`.
pub fn prior_regular_bd_bd(pair: &OmegaPair, cand: &NormalCandidate, tol: &Tolerances) -> Option<PriorVerdict> {
    if pair.case() != CaseTag::BdBd {
        return None;
    }
    let (u, v, _) = cand.normalized();
    let thr = threshold(tol, &u, &v);
    let xh = pair.x().reflect().into_vec();
    let yh = pair.y().reflect().into_vec();
    Some(PriorVerdict {
        disjuncts: vec![("u∈ℝx̂, v∈ℝŷ", on_line(&u, &xh, thr) && on_line(&v, &yh, thr))],
    })
}

/// Prior limiting formula at `x = 0`, `y ∈ bd K \ {0}`:
/// `v = 0`, or `u ∈ (R_+ ŷ)°` with `v ∈ R_- ŷ`; mirrored for `(x, 0)`.
pub fn prior_limiting_one_zero(pair: &OmegaPair, cand: &NormalCandidate, tol: &Tolerances) -> Option<PriorVerdict> {
    let (u, v, _) = cand.normalized();
    let thr = threshold(tol, &u, &v);
    match pair.case() {
        CaseTag::ZeroBd => {
            let yh = pair.y().reflect().into_vec();
            Some(PriorVerdict {
                disjuncts: vec![
                    ("v=0", norm(&v) <= thr),
                    (
                        "u∈(ℝ₊ŷ)°, v∈ℝ_−ŷ",
                        in_polar_ray(&u, &yh, thr) && on_neg_ray(&v, &yh, thr),
                    ),
                ],
            })
        }
        CaseTag::BdZero => {
            let xh = pair.x().reflect().into_vec();
            Some(PriorVerdict {
                disjuncts: vec![
                    ("u=0", norm(&u) <= thr),
                    (
                        "u∈ℝ_−x̂, v∈(ℝ₊x̂)°",
                        on_neg_ray(&u, &xh, thr) && in_polar_ray(&v, &xh, thr),
                    ),
                ],
            })
        }
        _ => None,
    }
}

/// Prior limiting formula at the origin, where the ξ-dependent disjuncts
/// are checked over a supplied family of `ξ = (1, w)`, `|w| = 1`.
pub fn prior_limiting_origin(
    pair: &OmegaPair,
    cand: &NormalCandidate,
    xis: &[Vec<f64>],
    tol: &Tolerances,
) -> Option<PriorVerdict> {
    if pair.case() != CaseTag::ZeroZero {
        return None;
    }
    let (u, v, _) = cand.normalized();
    let thr = threshold(tol, &u, &v);
    let any_xi = |f: &dyn Fn(&[f64], &[f64]) -> bool| {
        xis.iter().any(|xi| {
            let xh: Vec<f64> = std::iter::once(xi[0]).chain(xi[1..].iter().map(|c| -c)).collect();
            f(xi, &xh)
        })
    };
    Some(PriorVerdict {
        disjuncts: vec![
            ("u∈−K, v∈−K", in_neg_k(&u, thr) && in_neg_k(&v, thr)),
            ("v=0", norm(&v) <= thr),
            ("u=0", norm(&u) <= thr),
            (
                "u∈ℝ_−ξ, v∈(ℝ₊ξ)°",
                any_xi(&|xi, _| on_neg_ray(&u, xi, thr) && in_polar_ray(&v, xi, thr)),
            ),
            (
                "u∈(ℝ₊ξ)°, v∈ℝ_−ξ",
                any_xi(&|xi, _| in_polar_ray(&u, xi, thr) && on_neg_ray(&v, xi, thr)),
            ),
            (
                "u∈ℝξ̂, v∈ℝξ",
                any_xi(&|xi, xh| on_line(&u, xh, thr) && on_line(&v, xi, thr)),
            ),
        ],
    })
}
