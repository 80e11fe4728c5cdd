//! Definition-level numerical checks of the closed-form normal cones.
//!
//! Nearby points of `Omega` are generated through the global parametrization
//! `z -> (P(z), P(z) - z)`, perturbing `z = x - y` along random Gaussian
//! directions, coordinate axes, the candidate itself and the test curves
//! through `x` and `y`. The same directions are reused at every radius so
//! that ratios at different radii are comparable. All ratios and distances
//! are for the candidate rescaled to unit norm.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::cones::{
    distance_to_regular_cone, limiting_normal_contains, omega_from_difference, proximal_normal_contains,
    regular_normal_contains, sample_limiting_normal, sample_regular_normal, solve_origin_branch,
    variational_inequality_sup, NormalCandidate,
};
use crate::error::{Result, SoccError};
use crate::linalg::{dot, norm, scale};
use crate::soc::{classify_pair, project_soc, CaseTag, OmegaPair, SocVector, Tolerances};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleConfig {
    /// random perturbation directions per radius
    pub n_samples: usize,
    /// strictly decreasing neighborhood radii, in difference space
    pub radii: Vec<f64>,
    pub seed: u64,
    pub slack: f64,
    /// sampled directions for the first-order test in sweeps
    pub vi_samples: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            n_samples: 256,
            radii: vec![1e-2, 2.5e-3, 6.25e-4],
            seed: 0,
            slack: 1e-6,
            vi_samples: 10_000,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(SoccError::InvalidArgument("nSamples must be at least 1".into()));
        }
        if self.radii.len() < 2 {
            return Err(SoccError::InvalidArgument("at least two radii are needed".into()));
        }
        if self.radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) || self.radii.windows(2).any(|w| w[1] >= w[0]) {
            return Err(SoccError::InvalidArgument(
                "radii must be positive and strictly decreasing".into(),
            ));
        }
        if !(self.slack.is_finite() && self.slack >= 0.0) {
            return Err(SoccError::InvalidArgument("slack must be nonnegative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OracleVerdict {
    ConsistentMember,
    CertifiedNonMember,
    Inconclusive,
}

/// The nearby pair achieving the worst value, with that value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub x: SocVector,
    pub y: SocVector,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleReport {
    pub verdict: OracleVerdict,
    /// worst value at the smallest radius: the largest ratio for the
    /// proximal and regular oracles, the smallest distance for the limiting one
    pub worst_ratio: f64,
    /// worst value at each radius
    pub per_radius: Vec<f64>,
    pub witness: Option<Witness>,
}

/// `<(u, v), (x' - x, y' - y)> / |(x' - x, y' - y)|` for the unit-normalized candidate,
/// with pairings inside the rounding floor of the projected pairs taken as zero.
pub fn regular_ratio(pair: &OmegaPair, cand: &NormalCandidate, x: &SocVector, y: &SocVector) -> f64 {
    let (num, d) = pairing(pair, cand, x, y);
    if d == 0.0 {
        0.0
    } else {
        num / d
    }
}

/// `<(u, v), (x' - x, y' - y)> / |(x' - x, y' - y)|²`, with the same rounding floor.
pub fn proximal_ratio(pair: &OmegaPair, cand: &NormalCandidate, x: &SocVector, y: &SocVector) -> f64 {
    let (num, d) = pairing(pair, cand, x, y);
    if d == 0.0 {
        0.0
    } else {
        num / (d * d)
    }
}

fn pairing(pair: &OmegaPair, cand: &NormalCandidate, x: &SocVector, y: &SocVector) -> (f64, f64) {
    let (u, v, _) = cand.normalized();
    let dx = x.sub(pair.x());
    let dy = y.sub(pair.y());
    let num = dot(&u, dx.as_slice()) + dot(&v, dy.as_slice());
    // projected pairs carry rounding of order eps * |(x, y)|; pairings below it are zero
    let floor = 16.0 * f64::EPSILON * (pair.x().norm() + pair.y().norm() + x.norm() + y.norm());
    let num = num.signum() * (num.abs() - floor).max(0.0);
    (num, dx.norm().hypot(dy.norm()))
}

/// Unit directions in difference space: structural ones, then Gaussian.
fn directions(pair: &OmegaPair, cand: &NormalCandidate, cfg: &OracleConfig) -> Vec<(Vec<f64>, f64)> {
    let m = pair.dim();
    let (u, v, _) = cand.normalized();
    let mut raw: Vec<Vec<f64>> = Vec::new();
    for i in 0..m {
        let mut e = vec![0.0; m];
        e[i] = 1.0;
        raw.push(e);
    }
    let x = pair.x().as_slice().to_vec();
    let y = pair.y().as_slice().to_vec();
    raw.extend([
        u.clone(),
        v.clone(),
        x.clone(),
        y.clone(),
        pair.x().reflect().into_vec(),
        pair.y().reflect().into_vec(),
        project_soc(&SocVector::from_vec_unchecked(u.clone())).into_vec(),
        project_soc(&SocVector::from_vec_unchecked(v.clone())).into_vec(),
    ]);
    let mut out: Vec<(Vec<f64>, f64)> = Vec::new();
    for r in raw {
        let nr = norm(&r);
        if nr > 0.0 {
            let r = scale(1.0 / nr, &r);
            out.push((scale(-1.0, &r), 1.0));
            out.push((r, 1.0));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.n_samples {
        let g: Vec<f64> = (0..m).map(|_| StandardNormal.sample(&mut rng)).collect();
        let ng = norm(&g);
        if ng > 0.0 {
            out.push((scale(1.0 / ng, &g), rng.random::<f64>().max(1e-3)));
        }
    }
    out
}

fn nearby(pair: &OmegaPair, dir: &[f64], len: f64) -> (SocVector, SocVector) {
    let z = pair.difference().add(&SocVector::from_vec_unchecked(scale(len, dir)));
    omega_from_difference(&z)
}

/// Largest ratio per radius with its maximizer.
fn ratio_ladder(
    pair: &OmegaPair,
    cand: &NormalCandidate,
    cfg: &OracleConfig,
    ratio: fn(&OmegaPair, &NormalCandidate, &SocVector, &SocVector) -> f64,
) -> Vec<(f64, Option<Witness>)> {
    let dirs = directions(pair, cand, cfg);
    cfg.radii
        .iter()
        .map(|&r| {
            let mut best = (f64::NEG_INFINITY, None);
            for (d, rho) in &dirs {
                let (x, y) = nearby(pair, d, r * rho);
                if x.sub(pair.x()).norm() == 0.0 && y.sub(pair.y()).norm() == 0.0 {
                    continue;
                }
                let q = ratio(pair, cand, &x, &y);
                if q > best.0 {
                    best = (q, Some(Witness { x, y, value: q }));
                }
            }
            if best.1.is_none() {
                best.0 = 0.0;
            }
            best
        })
        .collect()
}

fn report(verdict: OracleVerdict, ladder: Vec<(f64, Option<Witness>)>) -> OracleReport {
    let per_radius: Vec<f64> = ladder.iter().map(|l| l.0).collect();
    let (worst, witness) = ladder.into_iter().last().expect("nonempty ladder");
    OracleReport {
        verdict,
        worst_ratio: worst,
        per_radius,
        witness,
    }
}

/// Samples `<(u, v), Δ> / |Δ|²` over nearby pairs; bounded ratios are
/// consistent with a proximal normal, ratios that at least double from one
/// radius to the next certify a non-member.
pub fn proximal_oracle(pair: &OmegaPair, cand: &NormalCandidate, cfg: &OracleConfig) -> Result<OracleReport> {
    cfg.validate()?;
    check_dims(pair, cand)?;
    let ladder = ratio_ladder(pair, cand, cfg, proximal_ratio);
    let r: Vec<f64> = ladder.iter().map(|l| l.0).collect();
    let (first, last) = (r[0], *r.last().unwrap());
    let growing = r.windows(2).all(|w| w[1] >= 2.0 * w[0] && w[1] > 0.0);
    let verdict = if growing && last > cfg.slack {
        OracleVerdict::CertifiedNonMember
    } else if last <= 2.0 * first.max(0.0) + cfg.slack {
        OracleVerdict::ConsistentMember
    } else {
        OracleVerdict::Inconclusive
    };
    Ok(report(verdict, ladder))
}

/// Samples `<(u, v), Δ> / |Δ|` over nearby pairs. A maximum within slack, or
/// one that at least halves at every radius and extrapolates linearly in the
/// radius to a limit within slack, is consistent with a regular normal; one
/// that stabilizes above slack over the last two radii certifies a non-member.
pub fn regular_oracle(pair: &OmegaPair, cand: &NormalCandidate, cfg: &OracleConfig) -> Result<OracleReport> {
    cfg.validate()?;
    check_dims(pair, cand)?;
    let ladder = ratio_ladder(pair, cand, cfg, regular_ratio);
    let r: Vec<f64> = ladder.iter().map(|l| l.0).collect();
    let n = r.len();
    let (prev, last) = (r[n - 2], r[n - 1]);
    let (rp, rl) = (cfg.radii[n - 2], cfg.radii[n - 1]);
    let limit = last + (last - prev) * rl / (rp - rl);
    let decaying = r.windows(2).all(|w| w[1] <= w[0] / 2.0) && limit <= cfg.slack + last / 4.0;
    let verdict = if last <= cfg.slack || decaying {
        OracleVerdict::ConsistentMember
    } else if last >= prev / 2.0 {
        OracleVerdict::CertifiedNonMember
    } else {
        OracleVerdict::Inconclusive
    };
    Ok(report(verdict, ladder))
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

fn unit_or_e1(t: &[f64]) -> Vec<f64> {
    let n = norm(t);
    if n > 0.0 {
        scale(1.0 / n, t)
    } else {
        let mut e = vec![0.0; t.len()];
        e[0] = 1.0;
        e
    }
}

fn bd(s: f64, w: &[f64]) -> SocVector {
    SocVector::from_vec_unchecked(std::iter::once(s).chain(w.iter().map(|c| s * c)).collect())
}

/// Pairs on thin strata adjacent to the anchor at scale `eps`, aimed at the
/// candidate: these are where limiting normals that are not regular live.
fn thin_probes(pair: &OmegaPair, cand: &NormalCandidate, eps: f64) -> Vec<OmegaPair> {
    let m = pair.dim();
    let e1 = |s: f64| {
        let mut e = vec![0.0; m];
        e[0] = s;
        SocVector::from_vec_unchecked(e)
    };
    let zero = SocVector::from_vec_unchecked(vec![0.0; m]);
    let mut out = Vec::new();
    match pair.case() {
        CaseTag::ZeroBd => {
            let y = pair.y();
            let yh = y.reflect();
            out.push(OmegaPair::assemble(zero.clone(), y.add(&e1(eps)), CaseTag::ZeroInt));
            out.push(OmegaPair::assemble(yh.scale(eps / yh.norm()), y.clone(), CaseTag::BdBd));
        }
        CaseTag::BdZero => {
            let x = pair.x();
            let xh = x.reflect();
            out.push(OmegaPair::assemble(x.add(&e1(eps)), zero.clone(), CaseTag::IntZero));
            out.push(OmegaPair::assemble(x.clone(), xh.scale(eps / xh.norm()), CaseTag::BdBd));
        }
        CaseTag::ZeroZero => {
            out.push(OmegaPair::assemble(zero.clone(), e1(eps), CaseTag::ZeroInt));
            out.push(OmegaPair::assemble(e1(eps), zero.clone(), CaseTag::IntZero));
            let (u, v, _) = cand.normalized();
            for t in [&u[1..], &v[1..]] {
                let w = unit_or_e1(t);
                for sign in [1.0, -1.0] {
                    let ws = scale(sign, &w);
                    let p = bd(eps / 2f64.sqrt(), &ws);
                    out.push(OmegaPair::assemble(p.clone(), zero.clone(), CaseTag::BdZero));
                    out.push(OmegaPair::assemble(zero.clone(), p, CaseTag::ZeroBd));
                }
            }
        }
        _ => {}
    }
    out
}

/// A boundary-boundary pair `(a ξ, b ξ̂)` with `b / a = (1 - α) / α`, scaled
/// so the larger of the two has norm `eps`; at such pairs an origin-branch
/// certificate `(ξ, α)` is an exact regular normal.
pub fn origin_hint_pair(xi: &[f64], alpha: f64, eps: f64) -> OmegaPair {
    let k = ((1.0 - alpha) / alpha).clamp(1e-12, 1e12);
    let w = &xi[1..];
    let wn: Vec<f64> = w.iter().map(|c| -c).collect();
    let (a, b) = if k <= 1.0 { (1.0, k) } else { (1.0 / k, 1.0) };
    let s = eps / 2f64.sqrt();
    OmegaPair::assemble(bd(a * s, w), bd(b * s, &wn), CaseTag::BdBd)
}

/// Smallest distance from the candidate to regular normal cones at nearby
/// pairs, per radius. Nearby pairs are the anchor, sampled pairs, thin-stratum
/// probes at scales `r`, `r·1e-2`, `r·1e-4`, and any supplied `hints`
/// (generated at the same scales by the caller).
pub fn limiting_oracle(
    pair: &OmegaPair,
    cand: &NormalCandidate,
    cfg: &OracleConfig,
    hints: &dyn Fn(f64) -> Vec<OmegaPair>,
) -> Result<OracleReport> {
    cfg.validate()?;
    check_dims(pair, cand)?;
    let (u, v, _) = cand.normalized();
    let unit = NormalCandidate {
        u: SocVector::from_vec_unchecked(u),
        v: SocVector::from_vec_unchecked(v),
    };
    let tol = Tolerances::default();
    let dirs = directions(pair, cand, cfg);
    let ladder: Vec<(f64, Option<Witness>)> = cfg
        .radii
        .iter()
        .map(|&r| {
            let mut pairs: Vec<OmegaPair> = vec![pair.clone()];
            for (d, rho) in &dirs {
                let (x, y) = nearby(pair, d, r * rho);
                if let Ok(p) = classify_pair(&x, &y, &tol) {
                    pairs.push(p);
                }
            }
            for eps in [r, r * 1e-2, r * 1e-4] {
                pairs.extend(thin_probes(pair, cand, eps));
                pairs.extend(hints(eps));
            }
            let mut best = (f64::INFINITY, None);
            for p in pairs {
                let d = distance_to_regular_cone(&p, &unit).expect("dimensions checked");
                if d < best.0 {
                    best = (
                        d,
                        Some(Witness {
                            x: p.x().clone(),
                            y: p.y().clone(),
                            value: d,
                        }),
                    );
                }
            }
            best
        })
        .collect();
    let first = ladder[0].0;
    let last = ladder.last().unwrap().0;
    let unit_scale = 1.0 + unit.norm();
    let verdict = if last <= cfg.slack * unit_scale {
        OracleVerdict::ConsistentMember
    } else if last > 100.0 * cfg.slack * unit_scale && last >= 0.5 * first {
        OracleVerdict::CertifiedNonMember
    } else {
        OracleVerdict::Inconclusive
    };
    Ok(report(verdict, ladder))
}

/// Hints for [`limiting_oracle`] from an origin-branch certificate, if the
/// anchor is the origin and one exists.
pub fn origin_hints(pair: &OmegaPair, cand: &NormalCandidate) -> impl Fn(f64) -> Vec<OmegaPair> {
    let cert = if pair.case() == CaseTag::ZeroZero {
        solve_origin_branch(&cand.u, &cand.v, &Tolerances::default())
    } else {
        None
    };
    move |eps| cert.iter().map(|c| origin_hint_pair(&c.xi, c.alpha, eps)).collect()
}

/// One disagreement between a closed form and another check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Disagreement {
    pub check: String,
    pub x: SocVector,
    pub y: SocVector,
    pub u: SocVector,
    pub v: SocVector,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    pub case: Option<CaseTag>,
    pub n_pairs: usize,
    pub n_cands: usize,
    pub total: usize,
    pub regular_members: usize,
    pub regular_non_members: usize,
    pub limiting_members: usize,
    pub limiting_non_members: usize,
    /// regular-oracle Inconclusive outcomes among closed-form non-members
    pub regular_inconclusive_non_members: usize,
    pub regular_inconclusive: usize,
    pub limiting_inconclusive: usize,
    pub disagreements: Vec<Disagreement>,
}

impl SweepReport {
    pub fn agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// A random anchor of the given case in `R^m`.
pub fn random_anchor(case: CaseTag, m: usize, seed: u64) -> Result<OmegaPair> {
    if m < 2 {
        return Err(SoccError::DimensionTooSmall(m));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g: Vec<f64> = (0..m - 1).map(|_| StandardNormal.sample(&mut rng)).collect();
    let w = unit_or_e1(&g);
    let wn: Vec<f64> = w.iter().map(|c| -c).collect();
    let mut s = || 10f64.powf(rng.random_range(-1.0..1.0));
    let (a, b) = (s(), s());
    let interior = |t: f64| {
        let tail = scale(0.5 * t, &g.iter().map(|c| c / (1.0 + norm(&g))).collect::<Vec<_>>());
        SocVector::from_parts(t, &tail)
    };
    let zero = SocVector::zeros(m)?;
    let (x, y) = match case {
        CaseTag::ZeroInt => (zero, interior(b)?),
        CaseTag::IntZero => (interior(a)?, zero),
        CaseTag::BdBd => (bd(a, &w), bd(b, &wn)),
        CaseTag::ZeroBd => (zero, bd(b, &w)),
        CaseTag::BdZero => (bd(a, &w), zero),
        CaseTag::ZeroZero => (zero.clone(), zero),
    };
    classify_pair(&x, &y, &Tolerances::default())
}

fn mix(seed: u64, i: u64) -> u64 {
    // splitmix64 step
    let mut z = seed.wrapping_add(i.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct CandOutcome {
    reg_member: bool,
    lim_member: bool,
    reg_oracle: OracleVerdict,
    lim_oracle: OracleVerdict,
    disagreements: Vec<Disagreement>,
}

/// Bulk agreement audit for one case: random anchors with `m` in `2..=5`,
/// candidates cycling through regular members, limiting members and Gaussian
/// vectors. Checks closed-form regular = proximal = first-order test =
/// regular oracle, regular ⊆ limiting, and limiting = limiting oracle, with
/// Inconclusive oracle outcomes counted rather than compared.
pub fn equivalence_sweep(case: CaseTag, n_pairs: usize, n_cands: usize, cfg: &OracleConfig) -> Result<SweepReport> {
    cfg.validate()?;
    if n_pairs == 0 || n_cands == 0 {
        return Err(SoccError::InvalidArgument("counts must be at least 1".into()));
    }
    let anchors: Vec<OmegaPair> = (0..n_pairs)
        .map(|i| random_anchor(case, 2 + i % 4, mix(cfg.seed, i as u64)))
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, usize)> = (0..n_pairs).flat_map(|i| (0..n_cands).map(move |j| (i, j))).collect();
    let outcomes: Vec<CandOutcome> = jobs
        .par_iter()
        .map(|&(i, j)| {
            let pair = &anchors[i];
            let seed = mix(cfg.seed ^ 0x5eed, (i * n_cands + j) as u64);
            let cand = sweep_candidate(pair, j, seed);
            audit(pair, &cand, cfg, seed)
        })
        .collect::<Result<_>>()?;
    let mut rep = SweepReport {
        case: Some(case),
        n_pairs,
        n_cands,
        total: outcomes.len(),
        ..Default::default()
    };
    for o in outcomes {
        if o.reg_member {
            rep.regular_members += 1;
        } else {
            rep.regular_non_members += 1;
            if o.reg_oracle == OracleVerdict::Inconclusive {
                rep.regular_inconclusive_non_members += 1;
            }
        }
        if o.lim_member {
            rep.limiting_members += 1;
        } else {
            rep.limiting_non_members += 1;
        }
        rep.regular_inconclusive += (o.reg_oracle == OracleVerdict::Inconclusive) as usize;
        rep.limiting_inconclusive += (o.lim_oracle == OracleVerdict::Inconclusive) as usize;
        rep.disagreements.extend(o.disagreements);
    }
    Ok(rep)
}

fn sweep_candidate(pair: &OmegaPair, j: usize, seed: u64) -> NormalCandidate {
    match j % 4 {
        0 | 1 => sample_regular_normal(pair, seed, 1).remove(0),
        2 => {
            // cycle through the limiting disjuncts
            let k = (seed % 6) as usize + 1;
            sample_limiting_normal(pair, seed, k).pop().unwrap()
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = pair.dim();
            let mut g = || SocVector::from_vec_unchecked((0..m).map(|_| StandardNormal.sample(&mut rng)).collect());
            NormalCandidate { u: g(), v: g() }
        }
    }
}

fn audit(pair: &OmegaPair, cand: &NormalCandidate, cfg: &OracleConfig, seed: u64) -> Result<CandOutcome> {
    let tol = Tolerances::default();
    let mut dis = Vec::new();
    let mut flag = |check: &str, detail: String| {
        dis.push(Disagreement {
            check: check.into(),
            x: pair.x().clone(),
            y: pair.y().clone(),
            u: cand.u.clone(),
            v: cand.v.clone(),
            detail,
        })
    };
    let local = OracleConfig { seed, ..cfg.clone() };
    let reg = regular_normal_contains(pair, cand, &tol)?;
    let prox = proximal_normal_contains(pair, cand, &tol)?;
    if reg.member != prox.member {
        flag(
            "regular=proximal",
            format!("regular {} proximal {}", reg.member, prox.member),
        );
    }
    let vi = variational_inequality_sup(pair, cand, cfg.vi_samples, seed)?;
    if reg.member != (vi.sup <= cfg.slack) {
        flag(
            "regular=first-order",
            format!("regular {} sup {:e}", reg.member, vi.sup),
        );
    }
    let ro = regular_oracle(pair, cand, &local)?;
    match (reg.member, ro.verdict) {
        (true, OracleVerdict::CertifiedNonMember) | (false, OracleVerdict::ConsistentMember) => flag(
            "regular=oracle",
            format!(
                "regular {} oracle {:?} per radius {:?}",
                reg.member, ro.verdict, ro.per_radius
            ),
        ),
        _ => {}
    }
    let lim = limiting_normal_contains(pair, cand, &tol)?;
    if reg.member && !lim.member {
        flag("regular⊆limiting", format!("limiting residual {:e}", lim.residual));
    }
    let lo = limiting_oracle(pair, cand, &local, &origin_hints(pair, cand))?;
    match (lim.member, lo.verdict) {
        (true, OracleVerdict::CertifiedNonMember) | (false, OracleVerdict::ConsistentMember) => flag(
            "limiting=oracle",
            format!(
                "limiting {} ({}) oracle {:?} per radius {:?}",
                lim.member, lim.branch, lo.verdict, lo.per_radius
            ),
        ),
        _ => {}
    }
    Ok(CandOutcome {
        reg_member: reg.member,
        lim_member: lim.member,
        reg_oracle: ro.verdict,
        lim_oracle: lo.verdict,
        disagreements: dis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const S2: f64 = std::f64::consts::SQRT_2;

    fn sv(d: &[f64]) -> SocVector {
        SocVector::new(d.to_vec()).unwrap()
    }

    fn pair(x: &[f64], y: &[f64]) -> OmegaPair {
        classify_pair(&sv(x), &sv(y), &Tolerances::default()).unwrap()
    }

    fn cand(u: &[f64], v: &[f64]) -> NormalCandidate {
        NormalCandidate::new(sv(u), sv(v)).unwrap()
    }

    fn none(_: f64) -> Vec<OmegaPair> {
        Vec::new()
    }

    fn example() -> (OmegaPair, NormalCandidate) {
        (
            pair(&[1.0, 1.0 / S2, 1.0 / S2], &[2.0, -S2, -S2]),
            cand(&[1.0 / S2, -1.0, 0.0], &[1.0 / (2.0 * S2), 0.0, 0.5]),
        )
    }

    #[test]
    fn proximal_oracle_examples() {
        let cfg = OracleConfig::default();
        let (p, c) = example();
        assert_eq!(
            proximal_oracle(&p, &c, &cfg).unwrap().verdict,
            OracleVerdict::ConsistentMember
        );
        let z = proximal_oracle(&p, &NormalCandidate::zero(3).unwrap(), &cfg).unwrap();
        assert_eq!(z.verdict, OracleVerdict::ConsistentMember);
        assert!(z.worst_ratio <= 0.0);
        let q = pair(&[1.0, 0.2, 0.0], &[0.0, 0.0, 0.0]);
        let r = proximal_oracle(&q, &cand(&[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0]), &cfg).unwrap();
        assert_eq!(r.verdict, OracleVerdict::CertifiedNonMember);
        assert!(r.witness.is_some());
    }

    #[test]
    fn regular_oracle_examples() {
        let cfg = OracleConfig::default();
        let (p, c) = example();
        assert_eq!(
            regular_oracle(&p, &c, &cfg).unwrap().verdict,
            OracleVerdict::ConsistentMember
        );
        let z = regular_oracle(&p, &NormalCandidate::zero(3).unwrap(), &cfg).unwrap();
        assert_eq!(z.verdict, OracleVerdict::ConsistentMember);
        let bad = NormalCandidate::new(p.x().clone(), SocVector::zeros(3).unwrap()).unwrap();
        let r = regular_oracle(&p, &bad, &cfg).unwrap();
        assert_eq!(r.verdict, OracleVerdict::CertifiedNonMember);
        let w = r.witness.unwrap();
        assert!((regular_ratio(&p, &bad, &w.x, &w.y) - w.value).abs() <= 1e-12);
    }

    #[test]
    fn limiting_oracle_examples() {
        let cfg = OracleConfig::default();
        let p = pair(&[0.0, 0.0], &[1.0, 1.0]);
        let c = cand(&[1.0, 1.0], &[2.0, -2.0]);
        assert_eq!(
            limiting_oracle(&p, &c, &cfg, &none).unwrap().verdict,
            OracleVerdict::ConsistentMember
        );

        let (q, d) = example();
        assert_eq!(
            limiting_oracle(&q, &d, &cfg, &none).unwrap().verdict,
            OracleVerdict::ConsistentMember
        );

        let o = pair(&[0.0; 3], &[0.0; 3]);
        let e = cand(&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]);
        let r = limiting_oracle(&o, &e, &cfg, &origin_hints(&o, &e)).unwrap();
        assert_eq!(r.verdict, OracleVerdict::CertifiedNonMember, "{r:?}");

        let f = cand(&[1.0, -1.0, 1.0], &[0.0, 0.0, 1.0]);
        let r = limiting_oracle(&o, &f, &cfg, &origin_hints(&o, &f)).unwrap();
        assert_eq!(r.verdict, OracleVerdict::ConsistentMember, "{r:?}");
    }

    #[test]
    fn config_is_validated() {
        let cfg = OracleConfig {
            radii: vec![1e-2, 1e-1],
            ..Default::default()
        };
        let (p, c) = example();
        assert!(regular_oracle(&p, &c, &cfg).is_err());
    }

    #[test]
    fn random_anchors_have_their_case() {
        for case in CaseTag::ALL {
            for m in 2..=5 {
                assert_eq!(random_anchor(case, m, m as u64).unwrap().case(), case);
            }
        }
    }

    #[test]
    fn small_sweeps_agree() {
        let cfg = OracleConfig {
            vi_samples: 500,
            ..Default::default()
        };
        for case in CaseTag::ALL {
            let r = equivalence_sweep(case, 4, 8, &cfg).unwrap();
            assert!(r.agree(), "{case:?} {:#?}", r.disagreements);
            assert_eq!(r.total, 32);
        }
    }
}
