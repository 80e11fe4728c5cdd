use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::{bd_bd_constraints, NormalCandidate};
use crate::error::{Result, SoccError};
use crate::linalg::{norm, orthogonal_complement, scale};
use crate::soc::{classify_pair, project_soc, CaseTag, OmegaPair, SocVector, Tolerances};

fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

fn split(z: Vec<f64>, m: usize) -> NormalCandidate {
    let v = z[m..].to_vec();
    let mut u = z;
    u.truncate(m);
    NormalCandidate {
        u: SocVector::from_vec_unchecked(u),
        v: SocVector::from_vec_unchecked(v),
    }
}

fn neg_polar(a: Vec<f64>) -> Vec<f64> {
    let a = SocVector::from_vec_unchecked(a);
    a.sub(&project_soc(&a)).into_vec()
}

/// Random elements of the regular normal cone at `pair`, built row by row.
pub fn sample_regular_normal(pair: &OmegaPair, seed: u64, n: usize) -> Vec<NormalCandidate> {
    let m = pair.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xh = pair.x().reflect().into_vec();
    let yh = pair.y().reflect().into_vec();
    let basis = match pair.case() {
        CaseTag::BdBd => orthogonal_complement(&bd_bd_constraints(pair), 2 * m),
        _ => Vec::new(),
    };
    // a random vector in the half-space d° = {z : <z, d> <= 0}
    let in_halfspace = |rng: &mut ChaCha8Rng, d: &[f64]| -> Vec<f64> {
        let g = gaussian(rng, m);
        let c = crate::linalg::dot(&g, d) / crate::linalg::dot(d, d);
        if c > 0.0 {
            crate::linalg::axpy(&g, -c, d)
        } else {
            g
        }
    };
    (0..n)
        .map(|_| {
            let z: Vec<f64> = match pair.case() {
                CaseTag::ZeroInt => gaussian(&mut rng, m).into_iter().chain(vec![0.0; m]).collect(),
                CaseTag::IntZero => vec![0.0; m].into_iter().chain(gaussian(&mut rng, m)).collect(),
                CaseTag::ZeroZero => {
                    let u = neg_polar(gaussian(&mut rng, m));
                    u.into_iter().chain(neg_polar(gaussian(&mut rng, m))).collect()
                }
                CaseTag::ZeroBd => {
                    let t: f64 = -rng.random::<f64>();
                    let u = in_halfspace(&mut rng, &yh);
                    u.into_iter().chain(scale(t, &yh)).collect()
                }
                CaseTag::BdZero => {
                    let t: f64 = -rng.random::<f64>();
                    let v = in_halfspace(&mut rng, &xh);
                    scale(t, &xh).into_iter().chain(v).collect()
                }
                CaseTag::BdBd => {
                    let g = gaussian(&mut rng, basis.len());
                    (0..2 * m)
                        .map(|i| basis.iter().zip(&g).map(|(b, c)| b[i] * c).sum())
                        .collect()
                }
            };
            split(z, m)
        })
        .collect()
}

/// The unique pair of `Omega` with difference `z`: `(P(z), P(z) - z)`.
pub fn omega_from_difference(z: &SocVector) -> (SocVector, SocVector) {
    let x = project_soc(z);
    let y = x.sub(z);
    (x, y)
}

/// Pairs of `Omega` near a base pair.
#[derive(Debug, Clone, Serialize)]
pub struct OmegaSample {
    pub pairs: Vec<OmegaPair>,
    pub seed: u64,
    pub radius: f64,
}

/// Samples pairs of `Omega` within `radius` of `x - y` in difference space.
///
/// Perturbations that land within the classification band of a stratum
/// boundary are resampled, so every returned pair passes [`classify_pair`].
pub fn sample_omega_near(pair: &OmegaPair, radius: f64, seed: u64, n: usize, tol: &Tolerances) -> Result<OmegaSample> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(SoccError::InvalidArgument(format!(
            "radius must be positive, got {radius}"
        )));
    }
    let m = pair.dim();
    let base = pair.difference();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while pairs.len() < n {
        attempts += 1;
        if attempts > 100 * n + 100 {
            return Err(SoccError::InvalidArgument(
                "could not sample classifiable pairs near the base pair".into(),
            ));
        }
        let g = gaussian(&mut rng, m);
        let r = radius * rng.random::<f64>().max(1e-3) / norm(&g);
        let z = base.add(&SocVector::from_vec_unchecked(scale(r, &g)));
        let (x, y) = omega_from_difference(&z);
        if let Ok(p) = classify_pair(&x, &y, tol) {
            pairs.push(p);
        }
    }
    Ok(OmegaSample { pairs, seed, radius })
}

fn unit_tail(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let g = gaussian(rng, n);
        let ng = norm(&g);
        if ng > 1e-3 {
            return scale(1.0 / ng, &g);
        }
    }
}

/// Random elements of the limiting normal cone at `pair`, drawn from every
/// disjunct of its case in turn.
pub fn sample_limiting_normal(pair: &OmegaPair, seed: u64, n: usize) -> Vec<NormalCandidate> {
    let m = pair.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let regular = sample_regular_normal(pair, seed, n);
    let cand = |u: Vec<f64>, v: Vec<f64>| NormalCandidate {
        u: SocVector::from_vec_unchecked(u),
        v: SocVector::from_vec_unchecked(v),
    };
    // component of a random vector orthogonal to `d`
    let perp = |rng: &mut ChaCha8Rng, d: &[f64]| -> Vec<f64> {
        let g = gaussian(rng, m);
        let c = crate::linalg::dot(&g, d) / crate::linalg::dot(d, d);
        crate::linalg::axpy(&g, -c, d)
    };
    let line = |rng: &mut ChaCha8Rng, d: &[f64]| scale(StandardNormal.sample(rng), d);
    regular
        .into_iter()
        .enumerate()
        .map(|(i, reg)| match pair.case() {
            CaseTag::ZeroInt | CaseTag::IntZero | CaseTag::BdBd => reg,
            CaseTag::ZeroBd => {
                let yh = pair.y().reflect().into_vec();
                match i % 3 {
                    0 => cand(gaussian(&mut rng, m), vec![0.0; m]),
                    1 => {
                        let u = perp(&mut rng, &yh);
                        cand(u, line(&mut rng, &yh))
                    }
                    _ => reg,
                }
            }
            CaseTag::BdZero => {
                let xh = pair.x().reflect().into_vec();
                match i % 3 {
                    0 => cand(vec![0.0; m], gaussian(&mut rng, m)),
                    1 => {
                        let v = perp(&mut rng, &xh);
                        cand(line(&mut rng, &xh), v)
                    }
                    _ => reg,
                }
            }
            CaseTag::ZeroZero => {
                let w = unit_tail(&mut rng, m - 1);
                let xi: Vec<f64> = std::iter::once(1.0).chain(w.iter().cloned()).collect();
                let s: f64 = rng.random::<f64>() + 0.1;
                // a random element of the half-space ξ°
                let in_polar = |rng: &mut ChaCha8Rng| -> Vec<f64> {
                    let g = gaussian(rng, m);
                    let c = crate::linalg::dot(&g, &xi) / 2.0;
                    if c > 0.0 {
                        crate::linalg::axpy(&g, -c, &xi)
                    } else {
                        g
                    }
                };
                match i % 6 {
                    0 => reg,
                    1 => cand(gaussian(&mut rng, m), vec![0.0; m]),
                    2 => cand(vec![0.0; m], gaussian(&mut rng, m)),
                    3 => {
                        let v = in_polar(&mut rng);
                        cand(scale(-s, &xi), v)
                    }
                    4 => {
                        let u = in_polar(&mut rng);
                        cand(u, scale(-s, &xi))
                    }
                    _ => {
                        // v = t ξ + (0, q) with q ⊥ w, then û = (η ξ − (1 − α) v) / α
                        let alpha: f64 = rng.random_range(0.05..0.95);
                        let eta: f64 = StandardNormal.sample(&mut rng);
                        let t: f64 = StandardNormal.sample(&mut rng);
                        let g = gaussian(&mut rng, m - 1);
                        let c = crate::linalg::dot(&g, &w);
                        let q = crate::linalg::axpy(&g, -c, &w);
                        let v: Vec<f64> = (0..m)
                            .map(|j| t * xi[j] + if j == 0 { 0.0 } else { q[j - 1] })
                            .collect();
                        let uh: Vec<f64> = (0..m).map(|j| (eta * xi[j] - (1.0 - alpha) * v[j]) / alpha).collect();
                        let u = std::iter::once(uh[0]).chain(uh[1..].iter().map(|c| -c)).collect();
                        cand(u, v)
                    }
                }
            }
        })
        .collect()
}
