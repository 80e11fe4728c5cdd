//! Membership tests for the proximal, regular and limiting normal cones of
//! the complementarity set `Omega = {(x, y) : x, y in K, <x, y> = 0}`.
//!
//! Every test normalizes the candidate `(u, v)` to unit norm first, so
//! verdicts are invariant under positive scaling; certificate scalars that
//! scale with the candidate (`beta`, `t`, `eta`) are reported for the
//! original, unnormalized candidate.

mod origin;
pub mod prior;
mod sample;

use serde::Serialize;

use crate::calculus::dir_derivative_in_region;
use crate::error::{Result, SoccError};
use crate::linalg::{dot, norm, orthogonal_complement, orthonormal_basis, projected_norm, scale, sub};
use crate::soc::{classify_pair, project_soc, ray_fit, CaseTag, ConeRegion, OmegaPair, RayMode, SocVector, Tolerances};
use crate::verdict::{decide, BranchCheck, ConeKind, MembershipVerdict};

pub use origin::{solve_origin_branch, OriginCertificate};
pub use sample::{
    omega_from_difference, sample_limiting_normal, sample_omega_near, sample_regular_normal, OmegaSample,
};

/// A pair `(u, v)` queried for membership in a normal cone of `Omega`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalCandidate {
    pub u: SocVector,
    pub v: SocVector,
}

impl NormalCandidate {
    pub fn new(u: SocVector, v: SocVector) -> Result<Self> {
        u.check_dim(&v)?;
        Ok(Self { u, v })
    }

    pub fn zero(m: usize) -> Result<Self> {
        Self::new(SocVector::zeros(m)?, SocVector::zeros(m)?)
    }

    pub fn dim(&self) -> usize {
        self.u.dim()
    }

    pub fn norm(&self) -> f64 {
        self.u.norm().hypot(self.v.norm())
    }

    pub fn scale(&self, t: f64) -> Self {
        Self {
            u: self.u.scale(t),
            v: self.v.scale(t),
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            u: self.v.clone(),
            v: self.u.clone(),
        }
    }

    /// The same candidate rescaled to unit norm (unchanged if zero), and the factor removed.
    pub(crate) fn normalized(&self) -> (Vec<f64>, Vec<f64>, f64) {
        let n = self.norm();
        if n == 0.0 {
            return (self.u.as_slice().to_vec(), self.v.as_slice().to_vec(), 0.0);
        }
        (scale(1.0 / n, self.u.as_slice()), scale(1.0 / n, self.v.as_slice()), n)
    }
}

fn check_dims(pair: &OmegaPair, cand: &NormalCandidate) -> Result<()> {
    if pair.dim() != cand.dim() {
        return Err(SoccError::DimensionMismatch {
            expected: pair.dim(),
            found: cand.dim(),
        });
    }
    Ok(())
}

pub(crate) fn threshold(tol: &Tolerances, u: &[f64], v: &[f64]) -> f64 {
    tol.member_tol * (1.0 + norm(u) + norm(v))
}

/// distance from `a` to the hyperplane `d^perp`
fn off_hyperplane(a: &[f64], d: &[f64]) -> f64 {
    dot(a, d).abs() / norm(d)
}

/// distance from `a` to the half-space `d° = {z : <z, d> <= 0}`
fn off_halfspace(a: &[f64], d: &[f64]) -> f64 {
    dot(a, d).max(0.0) / norm(d)
}

/// distance from `a` to `-K`
fn off_neg_k(a: &[f64]) -> f64 {
    norm(project_soc(&SocVector::from_vec_unchecked(a.to_vec())).as_slice())
}

fn reflected(a: &[f64]) -> Vec<f64> {
    let mut r = a.to_vec();
    r[1..].iter_mut().for_each(|v| *v = -*v);
    r
}

/// Region of `x - y` implied by the case of the pair.
pub(crate) fn difference_region(case: CaseTag) -> ConeRegion {
    match case {
        CaseTag::ZeroInt => ConeRegion::NegIntK,
        CaseTag::IntZero => ConeRegion::IntK,
        CaseTag::BdBd => ConeRegion::Outside,
        CaseTag::ZeroBd => ConeRegion::NegBdKNonzero,
        CaseTag::BdZero => ConeRegion::BdKNonzero,
        CaseTag::ZeroZero => ConeRegion::Zero,
    }
}

/// The single closed-form row of the regular normal cone for the pair's case.
fn regular_row(pair: &OmegaPair, u: &[f64], v: &[f64], n: f64) -> BranchCheck {
    match pair.case() {
        CaseTag::ZeroInt => BranchCheck::new("v=0", norm(v)),
        CaseTag::IntZero => BranchCheck::new("u=0", norm(u)),
        CaseTag::BdBd => {
            let x = pair.x().as_slice();
            let y = pair.y().as_slice();
            let k = pair.k().expect("BdBd pair carries k");
            // x1 û + y1 v = x1 (û + k v) must lie on the line through x
            let q: Vec<f64> = reflected(u).iter().zip(v).map(|(a, b)| a + k * b).collect();
            let (c, off) = ray_fit(&q, x, RayMode::FullLine);
            let resid = off_hyperplane(u, x).max(off_hyperplane(v, y)).max(off / (1.0 + k));
            BranchCheck::new("u⊥x, v⊥y, x1û+y1v∈ℝx", resid)
                .scalar("beta", c * pair.x().x1() * n)
                .scalar("k", k)
        }
        CaseTag::ZeroBd => {
            let yh = pair.y().reflect();
            let (t, off_v) = ray_fit(v, yh.as_slice(), RayMode::NegativeRay);
            BranchCheck::new("u∈ŷ°, v∈ℝ_−ŷ", off_halfspace(u, yh.as_slice()).max(off_v)).scalar("t", t * n)
        }
        CaseTag::BdZero => {
            let xh = pair.x().reflect();
            let (t, off_u) = ray_fit(u, xh.as_slice(), RayMode::NegativeRay);
            BranchCheck::new("u∈ℝ_−x̂, v∈x̂°", off_u.max(off_halfspace(v, xh.as_slice()))).scalar("t", t * n)
        }
        CaseTag::ZeroZero => BranchCheck::new("u∈−K, v∈−K", off_neg_k(u).max(off_neg_k(v))),
    }
}

/// Closed-form test for the regular (Fréchet) normal cone.
pub fn regular_normal_contains(
    pair: &OmegaPair,
    cand: &NormalCandidate,
    tol: &Tolerances,
) -> Result<MembershipVerdict> {
    check_dims(pair, cand)?;
    let (u, v, n) = cand.normalized();
    let row = || regular_row(pair, &u, &v, n);
    Ok(decide(ConeKind::Regular, threshold(tol, &u, &v), &[&row]))
}

/// Boundary-boundary test through the Jacobian equation system
/// `J(x - y)(u + v) = v`, written out as two equations in `xb = x2/|x2|` and `k`.
pub fn regular_normal_contains_via_system(
    pair: &OmegaPair,
    cand: &NormalCandidate,
    tol: &Tolerances,
) -> Result<MembershipVerdict> {
    check_dims(pair, cand)?;
    if pair.case() != CaseTag::BdBd {
        return Err(SoccError::WrongCase {
            expected: CaseTag::BdBd.name().into(),
            found: pair.case().name().into(),
        });
    }
    let (u, v, _) = cand.normalized();
    let k = pair.k().expect("BdBd pair carries k");
    let x2 = pair.x().x2();
    let xb = scale(1.0 / norm(x2), x2);
    let s2: Vec<f64> = u[1..].iter().zip(&v[1..]).map(|(a, b)| a + b).collect();
    let xs = dot(&xb, &s2);
    let e1 = u[0] + xs - v[0];
    let coef = (1.0 + k) * (u[0] + v[0]) - (1.0 - k) * xs;
    let e2: Vec<f64> = (0..xb.len())
        .map(|i| coef * xb[i] - 2.0 * k * v[i + 1] + 2.0 * u[i + 1])
        .collect();
    let resid = (0.5 * e1.abs()).max(norm(&e2) / (2.0 * (1.0 + k)));
    let sys = || BranchCheck::new("jacobian-system", resid).scalar("k", k);
    Ok(decide(ConeKind::Regular, threshold(tol, &u, &v), &[&sys]))
}

/// The proximal normal cone coincides with the regular one on `Omega`.
pub fn proximal_normal_contains(
    pair: &OmegaPair,
    cand: &NormalCandidate,
    tol: &Tolerances,
) -> Result<MembershipVerdict> {
    Ok(regular_normal_contains(pair, cand, tol)?.with_kind(ConeKind::Proximal))
}

/// Closed-form test for the limiting (Mordukhovich) normal cone.
pub fn limiting_normal_contains(
    pair: &OmegaPair,
    cand: &NormalCandidate,
    tol: &Tolerances,
) -> Result<MembershipVerdict> {
    check_dims(pair, cand)?;
    let (u, v, n) = cand.normalized();
    let thr = threshold(tol, &u, &v);
    let kind = ConeKind::Limiting;
    let verdict = match pair.case() {
        CaseTag::ZeroInt | CaseTag::IntZero | CaseTag::BdBd => {
            let row = || regular_row(pair, &u, &v, n);
            decide(kind, thr, &[&row])
        }
        CaseTag::ZeroBd => {
            let yh = pair.y().reflect();
            let yh = yh.as_slice();
            let v0 = || BranchCheck::new("v=0", norm(&v));
            let line = || {
                let (t, off) = ray_fit(&v, yh, RayMode::FullLine);
                BranchCheck::new("u⊥ŷ, v∈ℝŷ", off_hyperplane(&u, yh).max(off)).scalar("t", t * n)
            };
            let ray = || regular_row(pair, &u, &v, n).renamed("⟨u,ŷ⟩≤0, v∈ℝ_−ŷ");
            decide(kind, thr, &[&v0, &line, &ray])
        }
        CaseTag::BdZero => {
            let xh = pair.x().reflect();
            let xh = xh.as_slice();
            let u0 = || BranchCheck::new("u=0", norm(&u));
            let line = || {
                let (t, off) = ray_fit(&u, xh, RayMode::FullLine);
                BranchCheck::new("u∈ℝx̂, v⊥x̂", off.max(off_hyperplane(&v, xh))).scalar("t", t * n)
            };
            let ray = || regular_row(pair, &u, &v, n).renamed("u∈ℝ_−x̂, ⟨v,x̂⟩≤0");
            decide(kind, thr, &[&u0, &line, &ray])
        }
        CaseTag::ZeroZero => {
            let cone = || regular_row(pair, &u, &v, n);
            let v0 = || BranchCheck::new("v=0", norm(&v));
            let u0 = || BranchCheck::new("u=0", norm(&u));
            let u_ray = || {
                // u = -s (1, w) forces w = -u2/|u2|
                let xi = xi_from_tail(&u[1..], -1.0);
                let (_, off) = ray_fit(&u, &xi, RayMode::NegativeRay);
                BranchCheck::new("u∈ℝ_−ξ, v∈ξ°", off.max(off_halfspace(&v, &xi))).vector("xi", xi)
            };
            let v_ray = || {
                let xi = xi_from_tail(&v[1..], -1.0);
                let (_, off) = ray_fit(&v, &xi, RayMode::NegativeRay);
                BranchCheck::new("u∈ξ°, v∈ℝ_−ξ", off.max(off_halfspace(&u, &xi))).vector("xi", xi)
            };
            let origin = || {
                let (uu, vv) = (
                    SocVector::from_vec_unchecked(u.clone()),
                    SocVector::from_vec_unchecked(v.clone()),
                );
                match solve_origin_branch(&uu, &vv, tol) {
                    Some(c) => BranchCheck::new("u⊥ξ, v⊥ξ̂, αû+(1−α)v∈ℝξ", c.residual)
                        .vector("xi", c.xi.clone())
                        .scalar("alpha", c.alpha)
                        .scalar("eta", c.eta * n),
                    None => BranchCheck::new("u⊥ξ, v⊥ξ̂, αû+(1−α)v∈ℝξ", f64::INFINITY),
                }
            };
            decide(kind, thr, &[&cone, &v0, &u0, &u_ray, &v_ray, &origin])
        }
    };
    Ok(verdict)
}

/// `(1, sign * t/|t|)`, with `e1` standing in for a zero tail.
fn xi_from_tail(t: &[f64], sign: f64) -> Vec<f64> {
    let nt = norm(t);
    std::iter::once(1.0)
        .chain(t.iter().enumerate().map(|(i, &a)| {
            if nt > 0.0 {
                sign * a / nt
            } else if i == 0 {
                1.0
            } else {
                0.0
            }
        }))
        .collect()
}

/// Membership in the chosen cone.
pub fn normal_contains(
    kind: ConeKind,
    pair: &OmegaPair,
    cand: &NormalCandidate,
    tol: &Tolerances,
) -> Result<MembershipVerdict> {
    match kind {
        ConeKind::Proximal => proximal_normal_contains(pair, cand, tol),
        ConeKind::Regular => regular_normal_contains(pair, cand, tol),
        ConeKind::Limiting => limiting_normal_contains(pair, cand, tol),
    }
}

/// Membership of `(a, b)` in the normal cone to the graph of the normal-cone
/// map of `K` at `(x, y)`, via `N_gph(x, y) = diag(I, -I) N_Omega(x, -y)`.
pub fn graph_normal_contains(
    kind: ConeKind,
    x: &SocVector,
    y: &SocVector,
    cand: &NormalCandidate,
    tol: &Tolerances,
) -> Result<MembershipVerdict> {
    normal_contains(
        kind,
        &classify_pair(x, &y.neg(), tol)?,
        &NormalCandidate::new(cand.u.clone(), cand.v.neg())?,
        tol,
    )
}

/// Orthonormal rows spanning the constraints that cut the boundary-boundary
/// regular cone out of `R^m x R^m`:
/// `<u, x> = 0`, `<v, y> = 0` and `û + k v` orthogonal to every `e` in `x^perp`.
pub(crate) fn bd_bd_constraints(pair: &OmegaPair) -> Vec<Vec<f64>> {
    let m = pair.dim();
    let k = pair.k().expect("BdBd pair carries k");
    let x = scale(1.0 / pair.x().norm(), pair.x().as_slice());
    let y = scale(1.0 / pair.y().norm(), pair.y().as_slice());
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
    rows.push(x.iter().cloned().chain(std::iter::repeat_n(0.0, m)).collect());
    rows.push(std::iter::repeat_n(0.0, m).chain(y.iter().cloned()).collect());
    let xn = orthonormal_basis(std::slice::from_ref(&x), 1e-12);
    for e in orthogonal_complement(&xn, m) {
        let row: Vec<f64> = reflected(&e).into_iter().chain(e.iter().map(|c| k * c)).collect();
        rows.push(row);
    }
    orthonormal_basis(&rows, 1e-10)
}

/// Euclidean distance from `(u, v)` to the regular normal cone at the pair.
/// Each case's cone is a subspace or a product of a half-space, a ray and
/// `-K`, so the distance is a closed-form projection.
pub fn distance_to_regular_cone(pair: &OmegaPair, cand: &NormalCandidate) -> Result<f64> {
    check_dims(pair, cand)?;
    let u = cand.u.as_slice();
    let v = cand.v.as_slice();
    let d = match pair.case() {
        CaseTag::ZeroInt => norm(v),
        CaseTag::IntZero => norm(u),
        CaseTag::ZeroZero => off_neg_k(u).hypot(off_neg_k(v)),
        CaseTag::ZeroBd => {
            let yh = pair.y().reflect();
            let (_, dv) = ray_fit(v, yh.as_slice(), RayMode::NegativeRay);
            off_halfspace(u, yh.as_slice()).hypot(dv)
        }
        CaseTag::BdZero => {
            let xh = pair.x().reflect();
            let (_, du) = ray_fit(u, xh.as_slice(), RayMode::NegativeRay);
            du.hypot(off_halfspace(v, xh.as_slice()))
        }
        CaseTag::BdBd => {
            let z: Vec<f64> = u.iter().chain(v).cloned().collect();
            projected_norm(&bd_bd_constraints(pair), &z)
        }
    };
    Ok(d)
}

/// Largest sampled value of the first-order test quantity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariationalSup {
    /// `max_h <u + v, P'(x - y; h)> - <v, h>` over unit `h`, for the candidate
    /// rescaled to unit norm.
    pub sup: f64,
    /// the maximizing direction
    pub argmax: Vec<f64>,
}

/// Samples the first-order characterization of proximal normals,
/// `<u + v, P'(x - y; h)> - <v, h> <= 0` for all `h`, over unit directions.
///
/// Besides `h_samples` Gaussian directions, a fixed set of structural probes
/// derived from the pair and candidate is always tried (signed `u`, `v`,
/// reflections of `x` and `y`, components of `u`, `v` off those reflections,
/// projections onto `K`, and `P'(x - y; u + v) - v`).
pub fn variational_inequality_sup(
    pair: &OmegaPair,
    cand: &NormalCandidate,
    h_samples: usize,
    seed: u64,
) -> Result<VariationalSup> {
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};

    check_dims(pair, cand)?;
    if h_samples == 0 {
        return Err(SoccError::InvalidArgument("hSamples must be at least 1".into()));
    }
    let m = pair.dim();
    let (u, v, _) = cand.normalized();
    let z = pair.difference();
    let region = difference_region(pair.case());
    let s: Vec<f64> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
    let eval = |h: &[f64]| -> f64 {
        let d = dir_derivative_in_region(&z, &SocVector::from_vec_unchecked(h.to_vec()), region);
        dot(&s, d.as_slice()) - dot(&v, h)
    };

    let mut best = (f64::NEG_INFINITY, vec![0.0; m]);
    let mut consider = |h: Vec<f64>| {
        let nh = norm(&h);
        if nh.is_nan() || nh <= 0.0 {
            return;
        }
        let h = scale(1.0 / nh, &h);
        let val = eval(&h);
        if val > best.0 {
            best = (val, h);
        }
    };

    let xh = pair.x().reflect().into_vec();
    let yh = pair.y().reflect().into_vec();
    let reject = |a: &[f64], d: &[f64]| -> Vec<f64> {
        let dd = dot(d, d);
        if dd == 0.0 {
            return a.to_vec();
        }
        let c = dot(a, d) / dd;
        sub(a, &scale(c, d))
    };
    let grad = sub(
        dir_derivative_in_region(&z, &SocVector::from_vec_unchecked(s.clone()), region).as_slice(),
        &v,
    );
    let probes = [
        u.clone(),
        v.clone(),
        xh.clone(),
        yh.clone(),
        reject(&u, &xh),
        reject(&v, &yh),
        project_soc(&SocVector::from_vec_unchecked(u.clone())).into_vec(),
        project_soc(&SocVector::from_vec_unchecked(v.clone())).into_vec(),
        grad,
    ];
    for p in probes {
        consider(scale(-1.0, &p));
        consider(p);
    }
    for i in 0..m {
        let mut e = vec![0.0; m];
        e[i] = 1.0;
        consider(e.clone());
        e[i] = -1.0;
        consider(e);
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..h_samples {
        let h: Vec<f64> = (0..m).map(|_| StandardNormal.sample(&mut rng)).collect();
        consider(h);
    }
    Ok(VariationalSup {
        sup: best.0,
        argmax: best.1,
    })
}
