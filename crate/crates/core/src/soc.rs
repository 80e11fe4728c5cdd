//! Second-order cone primitives: spectral decomposition, region
//! classification, projections onto `K` and its polar, and classification of
//! complementary pairs.
//!
//! Throughout, `K = {(x1, x2) in R x R^(m-1) : x1 >= |x2|}` and vectors are
//! stored as a single slice with the head coordinate first.

use std::fmt;

use serde::Serialize;

use crate::error::{Result, SoccError};
use crate::linalg::{add, dot, norm, scale, sub};

/// Numerical tolerances. Classification compares spectral values against
/// `classify_tol * (1 + |x|)`; membership residuals against
/// `member_tol * (1 + |u| + |v|)`; sampled inequalities against `oracle_tol`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Tolerances {
    pub classify_tol: f64,
    pub member_tol: f64,
    pub oracle_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            classify_tol: 1e-9,
            member_tol: 1e-8,
            oracle_tol: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn new(classify_tol: f64, member_tol: f64, oracle_tol: f64) -> Result<Self> {
        let t = Self {
            classify_tol,
            member_tol,
            oracle_tol,
        };
        t.validate()?;
        Ok(t)
    }

    /// Same value for all three fields.
    pub fn uniform(tol: f64) -> Result<Self> {
        Self::new(tol, tol, tol)
    }

    pub fn validate(&self) -> Result<()> {
        let all_pos = [self.classify_tol, self.member_tol, self.oracle_tol]
            .iter()
            .all(|t| t.is_finite() && *t > 0.0);
        if !all_pos {
            return Err(SoccError::InvalidArgument(
                "tolerances must be finite and strictly positive".into(),
            ));
        }
        if self.classify_tol > self.member_tol {
            return Err(SoccError::InvalidArgument(
                "classifyTol must not exceed memberTol".into(),
            ));
        }
        Ok(())
    }
}

/// A point `(x1, x2)` of `R x R^(m-1)`, `m >= 2`, with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SocVector {
    data: Vec<f64>,
}

impl SocVector {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if data.len() < 2 {
            return Err(SoccError::DimensionTooSmall(data.len()));
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(SoccError::NonFinite(i));
        }
        Ok(Self { data })
    }

    pub fn from_parts(x1: f64, x2: &[f64]) -> Result<Self> {
        let mut data = Vec::with_capacity(x2.len() + 1);
        data.push(x1);
        data.extend_from_slice(x2);
        Self::new(data)
    }

    pub fn zeros(m: usize) -> Result<Self> {
        Self::new(vec![0.0; m])
    }

    /// Internal constructor for arithmetic results of already-validated vectors.
    pub(crate) fn from_vec_unchecked(data: Vec<f64>) -> Self {
        debug_assert!(data.len() >= 2);
        Self { data }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn x1(&self) -> f64 {
        self.data[0]
    }

    pub fn x2(&self) -> &[f64] {
        &self.data[1..]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn norm(&self) -> f64 {
        norm(&self.data)
    }

    pub fn dot(&self, other: &SocVector) -> f64 {
        dot(&self.data, &other.data)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0)
    }

    /// `(x1, -x2)`
    pub fn reflect(&self) -> SocVector {
        let mut d = self.data.clone();
        d[1..].iter_mut().for_each(|v| *v = -*v);
        Self::from_vec_unchecked(d)
    }

    pub fn add(&self, other: &SocVector) -> SocVector {
        Self::from_vec_unchecked(add(&self.data, &other.data))
    }

    pub fn sub(&self, other: &SocVector) -> SocVector {
        Self::from_vec_unchecked(sub(&self.data, &other.data))
    }

    pub fn scale(&self, s: f64) -> SocVector {
        Self::from_vec_unchecked(scale(s, &self.data))
    }

    pub fn neg(&self) -> SocVector {
        self.scale(-1.0)
    }

    pub(crate) fn check_dim(&self, other: &SocVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(SoccError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for SocVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// `x = lambda1 c1 + lambda2 c2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomp {
    pub lambda1: f64,
    pub lambda2: f64,
    pub c1: SocVector,
    pub c2: SocVector,
    /// Set when `x2 = 0` and the first canonical unit vector stood in for `x2/|x2|`.
    pub tie_break_used: bool,
}

/// Unit tail direction `x2/|x2|`, or `e1` when `x2 = 0` (flagged).
pub(crate) fn tail_direction(x: &SocVector) -> (Vec<f64>, bool) {
    let n2 = norm(x.x2());
    if n2 > 0.0 {
        (scale(1.0 / n2, x.x2()), false)
    } else {
        let mut w = vec![0.0; x.dim() - 1];
        w[0] = 1.0;
        (w, true)
    }
}

pub fn spectral_decompose(x: &SocVector) -> SpectralDecomp {
    let n2 = norm(x.x2());
    let (w, tie_break_used) = tail_direction(x);
    let c1 = SocVector::from_vec_unchecked(std::iter::once(0.5).chain(w.iter().map(|v| -0.5 * v)).collect());
    let c2 = SocVector::from_vec_unchecked(std::iter::once(0.5).chain(w.iter().map(|v| 0.5 * v)).collect());
    SpectralDecomp {
        lambda1: x.x1() - n2,
        lambda2: x.x1() + n2,
        c1,
        c2,
        tie_break_used,
    }
}

/// Position of a point relative to `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ConeRegion {
    IntK,
    BdKNonzero,
    Zero,
    NegIntK,
    NegBdKNonzero,
    Outside,
}

impl ConeRegion {
    pub fn in_k(self) -> bool {
        matches!(self, ConeRegion::IntK | ConeRegion::BdKNonzero | ConeRegion::Zero)
    }

    /// Regions where the projection is continuously differentiable.
    pub fn is_smooth(self) -> bool {
        matches!(self, ConeRegion::IntK | ConeRegion::NegIntK | ConeRegion::Outside)
    }

    pub fn name(self) -> &'static str {
        match self {
            ConeRegion::IntK => "IntK",
            ConeRegion::BdKNonzero => "BdKNonzero",
            ConeRegion::Zero => "Zero",
            ConeRegion::NegIntK => "NegIntK",
            ConeRegion::NegBdKNonzero => "NegBdKNonzero",
            ConeRegion::Outside => "Outside",
        }
    }
}

impl fmt::Display for ConeRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sign {
    Neg,
    Zero,
    Pos,
}

fn sign_of(v: f64, t: f64) -> Sign {
    if v > t {
        Sign::Pos
    } else if v < -t {
        Sign::Neg
    } else {
        Sign::Zero
    }
}

fn region_from_signs(l1: Sign, l2: Sign) -> ConeRegion {
    match (l1, l2) {
        (Sign::Pos, _) => ConeRegion::IntK,
        (Sign::Zero, Sign::Pos) => ConeRegion::BdKNonzero,
        (Sign::Zero, _) => ConeRegion::Zero,
        (Sign::Neg, Sign::Pos) => ConeRegion::Outside,
        (Sign::Neg, Sign::Zero) => ConeRegion::NegBdKNonzero,
        (Sign::Neg, Sign::Neg) => ConeRegion::NegIntK,
    }
}

pub fn classify_point(x: &SocVector, tol: &Tolerances) -> ConeRegion {
    let t = tol.classify_tol * (1.0 + x.norm());
    let s = spectral_decompose(x);
    region_from_signs(sign_of(s.lambda1, t), sign_of(s.lambda2, t))
}

/// Like [`classify_point`], but refuses to answer when a spectral value sits
/// in the band `(t, 10 t]` just outside the zero threshold.
pub fn classify_point_checked(x: &SocVector, tol: &Tolerances) -> Result<ConeRegion> {
    let t = tol.classify_tol * (1.0 + x.norm());
    let s = spectral_decompose(x);
    for (name, l) in [("lambda1", s.lambda1), ("lambda2", s.lambda2)] {
        if l.abs() > t && l.abs() <= 10.0 * t {
            return Err(SoccError::AmbiguousCase(format!(
                "{name} = {l:e} of {x} lies within 10x of the zero threshold {t:e}"
            )));
        }
    }
    Ok(region_from_signs(sign_of(s.lambda1, t), sign_of(s.lambda2, t)))
}

/// Metric projection onto `K`: `(lambda1)_+ c1 + (lambda2)_+ c2`.
pub fn project_soc(x: &SocVector) -> SocVector {
    let s = spectral_decompose(x);
    // exact on K and on -K
    if s.lambda1 >= 0.0 {
        return x.clone();
    }
    if s.lambda2 <= 0.0 {
        return SocVector::from_vec_unchecked(vec![0.0; x.dim()]);
    }
    let a = s.lambda1.max(0.0);
    let b = s.lambda2.max(0.0);
    SocVector::from_vec_unchecked(
        s.c1.as_slice()
            .iter()
            .zip(s.c2.as_slice())
            .map(|(p, q)| a * p + b * q)
            .collect(),
    )
}

/// Projection onto the polar cone `-K`, as the Moreau complement `x - P_K(x)`.
pub fn project_polar(x: &SocVector) -> SocVector {
    x.sub(&project_soc(x))
}

pub fn reflect(x: &SocVector) -> SocVector {
    x.reflect()
}

/// The six ways a complementary pair can sit in `K x K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// `x = 0`, `y` in int K
    ZeroInt,
    /// `x` in int K, `y = 0`
    IntZero,
    /// both on bd K \ {0}
    BdBd,
    /// `x = 0`, `y` on bd K \ {0}
    ZeroBd,
    /// `x` on bd K \ {0}, `y = 0`
    BdZero,
    ZeroZero,
}

impl CaseTag {
    pub const ALL: [CaseTag; 6] = [
        CaseTag::ZeroInt,
        CaseTag::IntZero,
        CaseTag::BdBd,
        CaseTag::ZeroBd,
        CaseTag::BdZero,
        CaseTag::ZeroZero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::ZeroInt => "ZeroInt",
            CaseTag::IntZero => "IntZero",
            CaseTag::BdBd => "BdBd",
            CaseTag::ZeroBd => "ZeroBd",
            CaseTag::BdZero => "BdZero",
            CaseTag::ZeroZero => "ZeroZero",
        }
    }

    /// The tag of the swapped pair `(y, x)`.
    pub fn swapped(self) -> CaseTag {
        match self {
            CaseTag::ZeroInt => CaseTag::IntZero,
            CaseTag::IntZero => CaseTag::ZeroInt,
            CaseTag::ZeroBd => CaseTag::BdZero,
            CaseTag::BdZero => CaseTag::ZeroBd,
            t => t,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CaseTag {
    type Err = SoccError;

    fn from_str(s: &str) -> Result<Self> {
        CaseTag::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| SoccError::InvalidArgument(format!("unknown case tag {s:?}")))
    }
}

/// A pair `(x, y)` with `x, y` in `K` and `<x, y> = 0`, tagged with its case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OmegaPair {
    x: SocVector,
    y: SocVector,
    case: CaseTag,
    k: Option<f64>,
}

impl OmegaPair {
    pub fn x(&self) -> &SocVector {
        &self.x
    }

    pub fn y(&self) -> &SocVector {
        &self.y
    }

    pub fn case(&self) -> CaseTag {
        self.case
    }

    /// `y1 / x1` for [`CaseTag::BdBd`] pairs.
    pub fn k(&self) -> Option<f64> {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    /// `x - y`, the argument of the projection that recovers `x`.
    pub fn difference(&self) -> SocVector {
        self.x.sub(&self.y)
    }

    pub fn swapped(&self) -> OmegaPair {
        OmegaPair {
            x: self.y.clone(),
            y: self.x.clone(),
            case: self.case.swapped(),
            k: self.k.map(|k| 1.0 / k),
        }
    }

    /// Builds a pair whose case is known by construction (exact strata used by
    /// samplers and oracles, possibly below the classification tolerance).
    pub(crate) fn assemble(x: SocVector, y: SocVector, case: CaseTag) -> OmegaPair {
        let k = (case == CaseTag::BdBd).then(|| y.x1() / x.x1());
        OmegaPair { x, y, case, k }
    }
}

pub fn classify_pair(x: &SocVector, y: &SocVector, tol: &Tolerances) -> Result<OmegaPair> {
    x.check_dim(y)?;
    let rx = classify_point_checked(x, tol)?;
    let ry = classify_point_checked(y, tol)?;
    if !rx.in_k() {
        return Err(SoccError::NotInOmega(format!("x = {x} is in region {rx}, not in K")));
    }
    if !ry.in_k() {
        return Err(SoccError::NotInOmega(format!("y = {y} is in region {ry}, not in K")));
    }
    let ip = x.dot(y);
    if ip.abs() > tol.member_tol * (1.0 + x.norm() * y.norm()) {
        return Err(SoccError::NotInOmega(format!("<x, y> = {ip:e} is not zero")));
    }
    use ConeRegion::*;
    let case = match (rx, ry) {
        (Zero, IntK) => CaseTag::ZeroInt,
        (IntK, Zero) => CaseTag::IntZero,
        (BdKNonzero, BdKNonzero) => CaseTag::BdBd,
        (Zero, BdKNonzero) => CaseTag::ZeroBd,
        (BdKNonzero, Zero) => CaseTag::BdZero,
        (Zero, Zero) => CaseTag::ZeroZero,
        (a, b) => {
            return Err(SoccError::NotInOmega(format!(
                "regions ({a}, {b}) cannot be complementary"
            )))
        }
    };
    let k = if case == CaseTag::BdBd {
        let k = y.x1() / x.x1();
        // y = k * reflect(x), equivalently x - y = ((1-k) x1, (1+k) x2)
        let resid = norm(&sub(y.as_slice(), x.reflect().scale(k).as_slice()));
        if k.is_nan() || k <= 0.0 || resid > tol.member_tol * (1.0 + x.norm() + y.norm()) {
            return Err(SoccError::NotInOmega(format!(
                "boundary pair is not of the form y = k * reflect(x) (k = {k}, residual {resid:e})"
            )));
        }
        Some(k)
    } else {
        None
    };
    Ok(OmegaPair {
        x: x.clone(),
        y: y.clone(),
        case,
        k,
    })
}

/// Which set [`ray_membership`] tests against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RayMode {
    /// `a` in `R b`
    FullLine,
    /// `a` in `R_- b`
    NegativeRay,
}

/// Outcome of a ray test: the least-squares coefficient and the Euclidean
/// distance from `a` to the tested set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RayFit {
    pub member: bool,
    pub coefficient: f64,
    pub residual: f64,
}

pub(crate) fn ray_fit(a: &[f64], b: &[f64], mode: RayMode) -> (f64, f64) {
    let bb = dot(b, b);
    if bb == 0.0 {
        return (0.0, norm(a));
    }
    let c = dot(a, b) / bb;
    let perp = norm(&crate::linalg::axpy(a, -c, b));
    match mode {
        RayMode::FullLine => (c, perp),
        RayMode::NegativeRay => {
            let over = c.max(0.0) * bb.sqrt();
            (c.min(0.0), perp.hypot(over))
        }
    }
}

pub fn ray_membership(a: &SocVector, b: &SocVector, mode: RayMode, tol: &Tolerances) -> Result<RayFit> {
    a.check_dim(b)?;
    let (coefficient, residual) = ray_fit(a.as_slice(), b.as_slice(), mode);
    Ok(RayFit {
        member: residual <= tol.member_tol * (1.0 + a.norm()),
        coefficient,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(d: &[f64]) -> SocVector {
        SocVector::new(d.to_vec()).unwrap()
    }

    fn close(a: &SocVector, b: &[f64], tol: f64) -> bool {
        a.as_slice().iter().zip(b).all(|(p, q)| (p - q).abs() <= tol)
    }

    const S2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(SocVector::new(vec![1.0]), Err(SoccError::DimensionTooSmall(1)));
        assert_eq!(SocVector::new(vec![1.0, f64::NAN]), Err(SoccError::NonFinite(1)));
    }

    #[test]
    fn spectral_examples() {
        let s = spectral_decompose(&v(&[0.0, 3.0, 4.0]));
        assert_eq!((s.lambda1, s.lambda2), (-5.0, 5.0));
        assert!(close(&s.c1, &[0.5, -0.3, -0.4], 1e-15));
        assert!(close(&s.c2, &[0.5, 0.3, 0.4], 1e-15));
        assert!(!s.tie_break_used);

        let s = spectral_decompose(&v(&[1.0, 0.0, 0.0]));
        assert_eq!((s.lambda1, s.lambda2), (1.0, 1.0));
        assert!(close(&s.c1, &[0.5, -0.5, 0.0], 0.0));
        assert!(close(&s.c2, &[0.5, 0.5, 0.0], 0.0));
        assert!(s.tie_break_used);

        let s = spectral_decompose(&v(&[0.0, 0.0, 0.0]));
        assert_eq!((s.lambda1, s.lambda2), (0.0, 0.0));
    }

    #[test]
    fn classify_examples() {
        let t = Tolerances::default();
        assert_eq!(classify_point(&v(&[2.0, 1.0, 0.0]), &t), ConeRegion::IntK);
        assert_eq!(classify_point(&v(&[-1.0, 3.0 / S2, 3.0 / S2]), &t), ConeRegion::Outside);
        assert_eq!(classify_point(&v(&[1.0, 1.0]), &t), ConeRegion::BdKNonzero);
        assert_eq!(classify_point(&v(&[0.0, 0.0]), &t), ConeRegion::Zero);
        assert_eq!(classify_point(&v(&[-1.0, 1.0]), &t), ConeRegion::NegBdKNonzero);
        assert_eq!(classify_point(&v(&[-2.0, 1.0, 0.0]), &t), ConeRegion::NegIntK);
    }

    #[test]
    fn classify_checked_flags_near_threshold() {
        let t = Tolerances::default();
        // lambda1 = 5e-9 with threshold ~ 1e-9 * (1 + |x|) ~ 2.4e-9
        let x = v(&[1.0 + 5e-9, 1.0]);
        assert!(matches!(
            classify_point_checked(&x, &t),
            Err(SoccError::AmbiguousCase(_))
        ));
        assert_eq!(
            classify_point_checked(&v(&[1.0, 1.0]), &t).unwrap(),
            ConeRegion::BdKNonzero
        );
    }

    #[test]
    fn projection_examples() {
        assert!(close(&project_soc(&v(&[2.0, 1.0, 0.0])), &[2.0, 1.0, 0.0], 0.0));
        assert!(close(&project_soc(&v(&[0.0, 3.0, 4.0])), &[2.5, 1.5, 2.0], 1e-15));
        assert!(close(
            &project_soc(&v(&[-1.0, 3.0 / S2, 3.0 / S2])),
            &[1.0, 1.0 / S2, 1.0 / S2],
            1e-15
        ));
        assert!(close(&project_polar(&v(&[2.0, 1.0, 0.0])), &[0.0, 0.0, 0.0], 0.0));
        assert!(close(&project_polar(&v(&[0.0, 3.0, 4.0])), &[-2.5, 1.5, 2.0], 1e-15));
        assert!(close(&project_polar(&v(&[-2.0, 1.0, 0.0])), &[-2.0, 1.0, 0.0], 0.0));
    }

    /// Brute force: minimize |z - x|^2 over a polar grid of K intersected with a
    /// ball, then compare the argmin with the closed form.
    #[test]
    fn projection_matches_grid_search() {
        let x = [0.0, 3.0, 4.0];
        let mut best = (f64::INFINITY, [0.0; 3]);
        let (n_h, n_r, n_th) = (200, 100, 360);
        for i in 0..=n_h {
            let z1 = 6.0 * i as f64 / n_h as f64;
            for r in 0..=n_r {
                let rho = z1 * r as f64 / n_r as f64;
                for j in 0..n_th {
                    let th = 2.0 * std::f64::consts::PI * j as f64 / n_th as f64;
                    let z = [z1, rho * th.cos(), rho * th.sin()];
                    let d: f64 = z.iter().zip(&x).map(|(a, b)| (a - b).powi(2)).sum();
                    if d < best.0 {
                        best = (d, z);
                    }
                }
            }
        }
        let p = project_soc(&v(&x));
        for (a, b) in p.as_slice().iter().zip(best.1) {
            assert!((a - b).abs() < 0.05, "{p} vs {:?}", best.1);
        }
        let d_closed: f64 = p.as_slice().iter().zip(&x).map(|(a, b)| (a - b).powi(2)).sum();
        assert!(d_closed <= best.0 + 1e-12);
    }

    #[test]
    fn reflect_examples() {
        assert!(close(&v(&[1.0, 1.0]).reflect(), &[1.0, -1.0], 0.0));
        let x = v(&[2.0, -S2, -S2]);
        assert!(close(&reflect(&x), &[2.0, S2, S2], 0.0));
        assert_eq!(reflect(&reflect(&x)), x);
    }

    #[test]
    fn classify_pair_examples() {
        let t = Tolerances::default();
        let x = v(&[1.0, 1.0 / S2, 1.0 / S2]);
        let y = v(&[2.0, -S2, -S2]);
        let p = classify_pair(&x, &y, &t).unwrap();
        assert_eq!(p.case(), CaseTag::BdBd);
        assert!((p.k().unwrap() - 2.0).abs() < 1e-15);

        let p = classify_pair(&v(&[0.0, 0.0]), &v(&[1.0, 1.0]), &t).unwrap();
        assert_eq!(p.case(), CaseTag::ZeroBd);
        assert_eq!(p.k(), None);

        assert!(matches!(
            classify_pair(&v(&[1.0, 0.0]), &v(&[1.0, 0.0]), &t),
            Err(SoccError::NotInOmega(_))
        ));
        assert!(matches!(
            classify_pair(&v(&[1.0, 0.0]), &v(&[1.0, 0.0, 0.0]), &t),
            Err(SoccError::DimensionMismatch { .. })
        ));
        // outside K
        assert!(matches!(
            classify_pair(&v(&[-1.0, 0.0]), &v(&[0.0, 0.0]), &t),
            Err(SoccError::NotInOmega(_))
        ));
    }

    #[test]
    fn ray_examples() {
        let t = Tolerances::default();
        let r = ray_membership(&v(&[2.0, -2.0]), &v(&[1.0, -1.0]), RayMode::FullLine, &t).unwrap();
        assert!(r.member);
        assert!((r.coefficient - 2.0).abs() < 1e-15);

        let r = ray_membership(&v(&[0.0, 0.0]), &v(&[3.0, 1.0]), RayMode::NegativeRay, &t).unwrap();
        assert!(r.member);
        assert_eq!(r.coefficient, 0.0);

        let r = ray_membership(&v(&[1.0, 0.0]), &v(&[0.0, 1.0]), RayMode::FullLine, &t).unwrap();
        assert!(!r.member);

        let r = ray_membership(&v(&[2.0, -2.0]), &v(&[1.0, -1.0]), RayMode::NegativeRay, &t).unwrap();
        assert!(!r.member);

        // b = 0 requires a = 0
        let r = ray_membership(&v(&[1.0, 0.0]), &v(&[0.0, 0.0]), RayMode::FullLine, &t).unwrap();
        assert!(!r.member);
    }
}
