//! Differential objects of the projection onto `K`: directional derivatives
//! in every region, Jacobians where they exist, elements of the
//! B-subdifferential at the origin, limiting-coderivative membership and a
//! calmness probe for the first-order expansion.

use serde::Serialize;
use twofloat::TwoFloat;

use crate::cones::solve_origin_branch;
use crate::error::{Result, SoccError};
use crate::linalg::{dot, identity, mat_vec, norm, scale, sub, zeros};
use crate::soc::{classify_point, project_polar, project_soc, ConeRegion, SocVector, Tolerances};
use crate::verdict::{decide, BranchCheck, ConeKind, MembershipVerdict};

/// Jacobian of the projection at a point where it is differentiable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjJacobian {
    pub matrix: Vec<Vec<f64>>,
    pub region: ConeRegion,
}

impl ProjJacobian {
    pub fn apply(&self, h: &SocVector) -> SocVector {
        SocVector::from_vec_unchecked(mat_vec(&self.matrix, h.as_slice()))
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }
}

/// `1/2 [1, xb^T; xb, I + (x1/|x2|)(I - xb xb^T)]` with `xb = x2/|x2|`, valid
/// for `x` outside `K u -K`.
fn outside_matrix(x: &SocVector) -> Vec<Vec<f64>> {
    let m = x.dim();
    let n2 = norm(x.x2());
    let xb = scale(1.0 / n2, x.x2());
    let rho = x.x1() / n2;
    let mut j = zeros(m);
    j[0][0] = 0.5;
    for i in 1..m {
        j[0][i] = 0.5 * xb[i - 1];
        j[i][0] = 0.5 * xb[i - 1];
        for l in 1..m {
            let id = if i == l { 1.0 } else { 0.0 };
            let outer = xb[i - 1] * xb[l - 1];
            j[i][l] = 0.5 * (id + rho * (id - outer));
        }
    }
    j
}

pub fn jacobian(x: &SocVector) -> Result<ProjJacobian> {
    jacobian_with(x, &Tolerances::default())
}

pub fn jacobian_with(x: &SocVector, tol: &Tolerances) -> Result<ProjJacobian> {
    let region = classify_point(x, tol);
    let matrix = match region {
        ConeRegion::IntK => identity(x.dim()),
        ConeRegion::NegIntK => zeros(x.dim()),
        ConeRegion::Outside => outside_matrix(x),
        r => return Err(SoccError::NotDifferentiable(r.name().into())),
    };
    Ok(ProjJacobian { matrix, region })
}

pub fn dir_derivative(x: &SocVector, h: &SocVector) -> Result<SocVector> {
    dir_derivative_with(x, h, &Tolerances::default())
}

/// `P_K'(x; h)`, one formula per region of `x`.
pub fn dir_derivative_with(x: &SocVector, h: &SocVector, tol: &Tolerances) -> Result<SocVector> {
    x.check_dim(h)?;
    let region = classify_point(x, tol);
    Ok(dir_derivative_in_region(x, h, region))
}

pub(crate) fn dir_derivative_in_region(x: &SocVector, h: &SocVector, region: ConeRegion) -> SocVector {
    match region {
        ConeRegion::IntK => h.clone(),
        ConeRegion::NegIntK => SocVector::from_vec_unchecked(vec![0.0; h.dim()]),
        ConeRegion::Outside => SocVector::from_vec_unchecked(mat_vec(&outside_matrix(x), h.as_slice())),
        ConeRegion::BdKNonzero => {
            // h - 1/2 (h1 - xb.h2)_- (1, -xb)
            let xb = scale(1.0 / norm(x.x2()), x.x2());
            let s = (h.x1() - dot(&xb, h.x2())).min(0.0);
            let mut out = h.as_slice().to_vec();
            out[0] -= 0.5 * s;
            for (o, b) in out[1..].iter_mut().zip(&xb) {
                *o += 0.5 * s * b;
            }
            SocVector::from_vec_unchecked(out)
        }
        ConeRegion::NegBdKNonzero => {
            // 1/2 (h1 + xb.h2)_+ (1, xb)
            let xb = scale(1.0 / norm(x.x2()), x.x2());
            let s = (h.x1() + dot(&xb, h.x2())).max(0.0);
            let mut out = Vec::with_capacity(h.dim());
            out.push(0.5 * s);
            out.extend(xb.iter().map(|b| 0.5 * s * b));
            SocVector::from_vec_unchecked(out)
        }
        ConeRegion::Zero => project_soc(h),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BSubdifKind {
    ZeroMatrix,
    Identity,
    AlphaW,
}

/// An element of the B-subdifferential of the projection at the origin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BSubdifElement {
    pub kind: BSubdifKind,
    pub alpha: Option<f64>,
    pub w: Option<Vec<f64>>,
    dim: usize,
}

impl BSubdifElement {
    pub fn alpha_w(alpha: f64, w: Vec<f64>) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(SoccError::InvalidGrid(format!("alpha = {alpha} is outside [0, 1]")));
        }
        if w.is_empty() || (norm(&w) - 1.0).abs() > 1e-12 {
            return Err(SoccError::InvalidGrid(format!("w = {w:?} is not a unit vector")));
        }
        let dim = w.len() + 1;
        Ok(Self {
            kind: BSubdifKind::AlphaW,
            alpha: Some(alpha),
            w: Some(w),
            dim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `alpha I + 1/2 [1 - 2 alpha, w^T; w, (1 - 2 alpha) w w^T]` for `AlphaW`.
    pub fn matrix(&self) -> Vec<Vec<f64>> {
        match self.kind {
            BSubdifKind::ZeroMatrix => zeros(self.dim),
            BSubdifKind::Identity => identity(self.dim),
            BSubdifKind::AlphaW => {
                let a = self.alpha.expect("AlphaW carries alpha");
                let w = self.w.as_ref().expect("AlphaW carries w");
                alpha_w_matrix(a, w)
            }
        }
    }
}

pub(crate) fn alpha_w_matrix(alpha: f64, w: &[f64]) -> Vec<Vec<f64>> {
    let m = w.len() + 1;
    let mut mat = identity(m);
    for row in mat.iter_mut() {
        for v in row.iter_mut() {
            *v *= alpha;
        }
    }
    let d = 1.0 - 2.0 * alpha;
    mat[0][0] += 0.5 * d;
    for i in 1..m {
        mat[0][i] += 0.5 * w[i - 1];
        mat[i][0] += 0.5 * w[i - 1];
        for l in 1..m {
            mat[i][l] += 0.5 * d * w[i - 1] * w[l - 1];
        }
    }
    mat
}

/// `O`, `I`, and one `AlphaW` element per `(alpha, w)` in the grid product.
pub fn b_subdif_elements_at_zero(alpha_grid: &[f64], w_grid: &[Vec<f64>]) -> Result<Vec<BSubdifElement>> {
    if alpha_grid.is_empty() || w_grid.is_empty() {
        return Err(SoccError::InvalidGrid("grids must be nonempty".into()));
    }
    let dim = w_grid[0].len() + 1;
    if dim < 2 || w_grid.iter().any(|w| w.len() + 1 != dim) {
        return Err(SoccError::InvalidGrid("w vectors must share one length >= 1".into()));
    }
    let mut out = vec![
        BSubdifElement {
            kind: BSubdifKind::ZeroMatrix,
            alpha: None,
            w: None,
            dim,
        },
        BSubdifElement {
            kind: BSubdifKind::Identity,
            alpha: None,
            w: None,
            dim,
        },
    ];
    for &a in alpha_grid {
        for w in w_grid {
            out.push(BSubdifElement::alpha_w(a, w.clone())?);
        }
    }
    Ok(out)
}

fn dist_to_k(x: &[f64]) -> f64 {
    norm(project_polar(&SocVector::from_vec_unchecked(x.to_vec())).as_slice())
}

/// Is `d` in `R_+ xi` for some `xi = (1, w)`, `|w| = 1`, with `<g, xi> >= 0`?
/// Returns the residual and the chosen `xi`.
fn ray_in_c_check(d: &[f64], g: &[f64], zero_tol: f64) -> (f64, Vec<f64>) {
    let m = d.len();
    let nd = norm(d);
    if nd <= zero_tol {
        // any xi: best is xi = (1, g2/|g2|), giving <g, xi> = g1 + |g2|
        let g2n = norm(&g[1..]);
        let mut xi = vec![1.0; m];
        for i in 1..m {
            xi[i] = if g2n > 0.0 {
                g[i] / g2n
            } else if i == 1 {
                1.0
            } else {
                0.0
            };
        }
        let viol = (-(g[0] + g2n)).max(0.0);
        return (nd.max(viol), xi);
    }
    let d2n = norm(&d[1..]);
    let mut xi = vec![1.0; m];
    for i in 1..m {
        xi[i] = if d2n > 0.0 {
            d[i] / d2n
        } else if i == 1 {
            1.0
        } else {
            0.0
        };
    }
    // distance from d to the ray R_+ xi
    let t = (dot(d, &xi) / dot(&xi, &xi)).max(0.0);
    let off = norm(&sub(d, &scale(t, &xi)));
    let viol = (-dot(g, &xi) / norm(&xi)).max(0.0);
    (off.max(viol), xi)
}

/// Tests `z_star in D*P_K(z)(w_star)` for the limiting coderivative.
///
/// Smooth regions reduce to the Jacobian. At `-bd K \ {0}` the set is the
/// union of two matrix images and a ray/half-space family; at the origin it is
/// the B-subdifferential image plus three cone-valued families indexed by
/// `C = {(1, w) : |w| = 1}`.
pub fn limiting_coderivative_contains(
    z: &SocVector,
    w_star: &SocVector,
    z_star: &SocVector,
    tol: &Tolerances,
) -> Result<MembershipVerdict> {
    z.check_dim(w_star)?;
    z.check_dim(z_star)?;
    let region = classify_point(z, tol);
    if region == ConeRegion::BdKNonzero {
        return Err(SoccError::UnsupportedRegion(region.name().into()));
    }
    let n = w_star.norm().hypot(z_star.norm());
    let (a, b) = if n > 0.0 {
        (scale(1.0 / n, w_star.as_slice()), scale(1.0 / n, z_star.as_slice()))
    } else {
        (w_star.as_slice().to_vec(), z_star.as_slice().to_vec())
    };
    let threshold = tol.member_tol * (1.0 + norm(&a) + norm(&b));
    let kind = ConeKind::Limiting;

    if region.is_smooth() {
        let j = jacobian_with(z, tol)?;
        let jac = || BranchCheck::new("jacobian", norm(&sub(&mat_vec(&j.matrix, &a), &b)));
        return Ok(decide(kind, threshold, &[&jac]));
    }

    if region == ConeRegion::NegBdKNonzero {
        let zb = scale(1.0 / norm(z.x2()), z.x2());
        let c2: Vec<f64> = std::iter::once(0.5).chain(zb.iter().map(|v| 0.5 * v)).collect();
        let zero = || BranchCheck::new("zero-matrix", norm(&b));
        let rank_one = || {
            // 1/2 [1, zb^T; zb, zb zb^T] = 2 c2 c2^T
            let img = scale(2.0 * dot(&c2, &a), &c2);
            BranchCheck::new("rank-one", norm(&sub(&img, &b)))
        };
        let ray = || {
            let (coef, off) = crate::soc::ray_fit(&b, &c2, crate::soc::RayMode::FullLine);
            let neg = (-coef).max(0.0) * norm(&c2);
            let half = (-dot(&sub(&a, &b), &c2) / norm(&c2)).max(0.0);
            BranchCheck::new("ray-c2", off.hypot(neg).max(half)).scalar("t", coef * n)
        };
        return Ok(decide(kind, threshold, &[&zero, &rank_one, &ray]));
    }

    // origin
    let zero = || BranchCheck::new("zero-matrix", norm(&b));
    let ident = || BranchCheck::new("identity", norm(&sub(&a, &b)));
    let alpha_w = || {
        // M a = b with a = -u - v, b = -v
        let u = SocVector::from_vec_unchecked(sub(&b, &a));
        let v = SocVector::from_vec_unchecked(scale(-1.0, &b));
        match solve_origin_branch(&u, &v, tol) {
            Some(cert) => {
                let mat = alpha_w_matrix(cert.alpha, &cert.w);
                let resid = norm(&sub(&mat_vec(&mat, &a), &b));
                BranchCheck::new("alpha-w", resid)
                    .scalar("alpha", cert.alpha)
                    .vector("w", cert.w.clone())
            }
            None => BranchCheck::new("alpha-w", f64::INFINITY),
        }
    };
    let k_pair = || {
        let d = sub(&a, &b);
        BranchCheck::new("cone-pair", dist_to_k(&b).max(dist_to_k(&d)))
    };
    let ray_diff = || {
        let d = sub(&a, &b);
        let (r, xi) = ray_in_c_check(&d, &b, threshold);
        BranchCheck::new("difference-on-ray", r).vector("xi", xi)
    };
    let ray_star = || {
        let d = sub(&a, &b);
        let (r, xi) = ray_in_c_check(&b, &d, threshold);
        BranchCheck::new("image-on-ray", r).vector("xi", xi)
    };
    Ok(decide(
        kind,
        threshold,
        &[&zero, &ident, &k_pair, &ray_diff, &ray_star, &alpha_w],
    ))
}

/// Second-order remainder of the directional-derivative expansion.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CalmnessReport {
    pub scales: Vec<f64>,
    pub ratios: Vec<f64>,
    #[serde(rename = "fittedC")]
    pub fitted_c: f64,
}

/// Records `|P(x + t h) - P(x) - P'(x; t h)| / t^2` for each step `t`.
///
/// The remainder is a difference of nearly equal quantities, so it is
/// evaluated in double-double arithmetic; in plain f64 rounding alone would
/// contribute about `1e-16 / t^2` to every ratio.
pub fn calmness_report(x: &SocVector, h: &SocVector, scales: &[f64]) -> Result<CalmnessReport> {
    x.check_dim(h)?;
    if scales.is_empty() || scales.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
        return Err(SoccError::InvalidArgument("scales must be positive".into()));
    }
    if scales.windows(2).any(|w| w[1] >= w[0]) {
        return Err(SoccError::InvalidArgument("scales must be strictly decreasing".into()));
    }
    let region = classify_point(x, &Tolerances::default());
    let xd: Vec<TwoFloat> = x.as_slice().iter().map(|&v| TwoFloat::from(v)).collect();
    // P(x) is exact once the region is fixed
    let px = match region {
        ConeRegion::IntK | ConeRegion::BdKNonzero => xd.clone(),
        ConeRegion::NegIntK | ConeRegion::NegBdKNonzero | ConeRegion::Zero => vec![TwoFloat::from(0.0); xd.len()],
        ConeRegion::Outside => dd::project(&xd),
    };
    let ratios: Vec<f64> = scales
        .iter()
        .map(|&t| {
            let step: Vec<TwoFloat> = h.as_slice().iter().map(|&hi| TwoFloat::new_mul(t, hi)).collect();
            let moved: Vec<TwoFloat> = xd.iter().zip(&step).map(|(a, b)| *a + *b).collect();
            let lhs = dd::project(&moved);
            let d = dd::dir_derivative(&xd, &step, region);
            // (P(x + s) - (x + s)) + (x - P(x)) + (s - P'(x; s)), each group exact where it vanishes
            let sq = (0..lhs.len())
                .map(|i| {
                    let r = (lhs[i] - moved[i]) + (xd[i] - px[i]) + (step[i] - d[i]);
                    r * r
                })
                .fold(TwoFloat::from(0.0), |acc, v| acc + v);
            f64::from(sq.sqrt()) / (t * t)
        })
        .collect();
    let fitted_c = ratios.iter().cloned().fold(0.0, f64::max);
    Ok(CalmnessReport {
        scales: scales.to_vec(),
        ratios,
        fitted_c,
    })
}

/// Projection and directional derivative in double-double precision.
mod dd {
    use twofloat::TwoFloat;

    use crate::soc::ConeRegion;

    fn zero() -> TwoFloat {
        TwoFloat::from(0.0)
    }

    /// `a / b` with one Newton correction; the library quotient is only f64-accurate.
    fn div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
        let q = a / b;
        q + (a - q * b) / b
    }

    fn tail_norm(x: &[TwoFloat]) -> TwoFloat {
        x[1..].iter().fold(zero(), |acc, v| acc + *v * *v).sqrt()
    }

    pub(super) fn project(x: &[TwoFloat]) -> Vec<TwoFloat> {
        let n2 = tail_norm(x);
        let l1 = x[0] - n2;
        let l2 = x[0] + n2;
        if l1 >= 0.0 {
            return x.to_vec();
        }
        if l2 <= 0.0 {
            return vec![zero(); x.len()];
        }
        let half = l2 * 0.5;
        std::iter::once(half)
            .chain(x[1..].iter().map(|v| half * div(*v, n2)))
            .collect()
    }

    pub(super) fn dir_derivative(x: &[TwoFloat], h: &[TwoFloat], region: ConeRegion) -> Vec<TwoFloat> {
        let m = x.len();
        let n2 = tail_norm(x);
        let xb: Vec<TwoFloat> = if n2 > 0.0 {
            x[1..].iter().map(|v| div(*v, n2)).collect()
        } else {
            vec![zero(); m - 1]
        };
        let xb_h2 = xb.iter().zip(&h[1..]).fold(zero(), |acc, (a, b)| acc + *a * *b);
        match region {
            ConeRegion::IntK => h.to_vec(),
            ConeRegion::NegIntK => vec![zero(); m],
            ConeRegion::Zero => project(h),
            ConeRegion::BdKNonzero => {
                let s = (h[0] - xb_h2).min(zero()) * 0.5;
                std::iter::once(h[0] - s)
                    .chain(h[1..].iter().zip(&xb).map(|(hv, b)| *hv + s * *b))
                    .collect()
            }
            ConeRegion::NegBdKNonzero => {
                let s = (h[0] + xb_h2).max(zero()) * 0.5;
                std::iter::once(s).chain(xb.iter().map(|b| s * *b)).collect()
            }
            ConeRegion::Outside => {
                // 1/2 [h1 + xb.h2 ; h1 xb + h2 + rho (h2 - xb (xb.h2))]
                let rho = div(x[0], n2);
                std::iter::once((h[0] + xb_h2) * 0.5)
                    .chain((0..m - 1).map(|i| (h[0] * xb[i] + h[i + 1] + rho * (h[i + 1] - xb[i] * xb_h2)) * 0.5))
                    .collect()
            }
        }
    }
}
