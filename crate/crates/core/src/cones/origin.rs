use serde::Serialize;

use crate::linalg::{dot, norm, scale, unit_solution};
use crate::soc::{SocVector, Tolerances};

/// Witness for the origin branch of the limiting normal cone at `(0, 0)`:
/// `u ⊥ ξ`, `v ⊥ ξ̂` and `α û + (1 − α) v = η ξ` with `ξ = (1, w)`, `|w| = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OriginCertificate {
    pub xi: Vec<f64>,
    pub w: Vec<f64>,
    pub alpha: f64,
    pub eta: f64,
    /// largest violation, on the candidate rescaled to unit norm
    pub residual: f64,
}

/// Searches `α ∈ [0, 1]` and unit `w` for the origin branch.
///
/// With `p(α) = (1 − α) v2 − α u2` and `η(α) = α u1 + (1 − α) v1` the line
/// condition reads `p = η w`, so for `η ≠ 0` the direction is forced to
/// `w = p / η`. The three remaining scalar conditions `|p|² = η²`,
/// `u1 η + u2·p = 0` and `v1 η − v2·p = 0` are polynomials of degree at most
/// two in `α`; their roots and vertices are the candidates, backed up by a
/// grid scan with golden-section refinement. The `η = 0` sub-branch needs
/// `p(α) = 0` and a unit `w` solving `u2·w = −u1`, `v2·w = v1`.
pub fn solve_origin_branch(u: &SocVector, v: &SocVector, tol: &Tolerances) -> Option<OriginCertificate> {
    let m = u.dim();
    if v.dim() != m {
        return None;
    }
    let n = u.norm().hypot(v.norm());
    if n == 0.0 {
        let mut w = vec![0.0; m - 1];
        w[0] = 1.0;
        return Some(certificate(0.5, w, 0.0, 0.0));
    }
    let u = scale(1.0 / n, u.as_slice());
    let v = scale(1.0 / n, v.as_slice());
    let prob = Problem::new(&u, &v);
    let thr = tol.member_tol * (1.0 + norm(&u) + norm(&v));

    let mut best: Option<(f64, f64, Vec<f64>)> = None;
    let offer = |best: &mut Option<(f64, f64, Vec<f64>)>, alpha: f64, w: Vec<f64>| {
        let r = prob.residual(alpha, &w);
        if best.as_ref().is_none_or(|b| r < b.0) {
            *best = Some((r, alpha, w));
        }
    };

    for alpha in prob.polynomial_candidates() {
        if let Some(w) = prob.forced_w(alpha) {
            offer(&mut best, alpha, w);
        }
    }
    for (alpha, w) in prob.eta_zero_candidates(tol.member_tol) {
        offer(&mut best, alpha, w);
    }
    if best.as_ref().is_none_or(|b| b.0 > thr) {
        for alpha in prob.grid_candidates() {
            if let Some(w) = prob.forced_w(alpha) {
                offer(&mut best, alpha, w);
            }
        }
    }

    let (r, alpha, w) = best?;
    if r > thr {
        return None;
    }
    let eta = prob.eta(alpha) * n;
    Some(certificate(alpha, w, eta, r))
}

fn certificate(alpha: f64, w: Vec<f64>, eta: f64, residual: f64) -> OriginCertificate {
    let xi = std::iter::once(1.0).chain(w.iter().cloned()).collect();
    OriginCertificate {
        xi,
        w,
        alpha,
        eta,
        residual,
    }
}

struct Problem<'a> {
    u: &'a [f64],
    v: &'a [f64],
    /// `d = −u2 − v2`, so that `p(α) = v2 + α d`
    d: Vec<f64>,
}

impl<'a> Problem<'a> {
    fn new(u: &'a [f64], v: &'a [f64]) -> Self {
        let d = u[1..].iter().zip(&v[1..]).map(|(a, b)| -a - b).collect();
        Self { u, v, d }
    }

    fn eta(&self, alpha: f64) -> f64 {
        alpha * self.u[0] + (1.0 - alpha) * self.v[0]
    }

    fn p(&self, alpha: f64) -> Vec<f64> {
        self.v[1..].iter().zip(&self.d).map(|(a, b)| a + alpha * b).collect()
    }

    fn residual(&self, alpha: f64, w: &[f64]) -> f64 {
        let (u, v) = (self.u, self.v);
        let r1 = (u[0] + dot(&u[1..], w)).abs();
        let r2 = (v[0] - dot(&v[1..], w)).abs();
        let eta = self.eta(alpha);
        let r3 = norm(
            &self
                .p(alpha)
                .iter()
                .zip(w)
                .map(|(a, b)| a - eta * b)
                .collect::<Vec<_>>(),
        );
        r1.max(r2).max(r3)
    }

    fn forced_w(&self, alpha: f64) -> Option<Vec<f64>> {
        let eta = self.eta(alpha);
        let p = self.p(alpha);
        let np = norm(&p);
        if eta == 0.0 || np == 0.0 {
            return None;
        }
        Some(scale(eta.signum() / np, &p))
    }

    /// Roots in `[0, 1]` and vertices of the three scalar conditions.
    fn polynomial_candidates(&self) -> Vec<f64> {
        let (u, v, d) = (self.u, self.v, &self.d);
        let v2 = &v[1..];
        let u2 = &u[1..];
        let (e0, e1) = (v[0], u[0] - v[0]);
        let quads = [
            [
                dot(v2, v2) - e0 * e0,
                2.0 * dot(v2, d) - 2.0 * e0 * e1,
                dot(d, d) - e1 * e1,
            ],
            [u[0] * e0 + dot(u2, v2), u[0] * e1 + dot(u2, d), 0.0],
            [v[0] * e0 - dot(v2, v2), v[0] * e1 - dot(v2, d), 0.0],
        ];
        let mut out = vec![0.0, 0.5, 1.0];
        for q in quads {
            out.extend(quadratic_roots(q));
        }
        out.retain(|a| (-1e-9..=1.0 + 1e-9).contains(a));
        out.iter_mut().for_each(|a| *a = a.clamp(0.0, 1.0));
        out
    }

    /// Candidates with `η(α) = 0`.
    fn eta_zero_candidates(&self, tol: f64) -> Vec<(f64, Vec<f64>)> {
        let (u, v) = (self.u, self.v);
        let e1 = u[0] - v[0];
        let alphas: Vec<f64> = if e1.abs() > 1e-14 {
            vec![-v[0] / e1]
        } else if v[0].abs() <= 1e-14 {
            // η vanishes identically; pick α minimizing |p(α)|
            let dd = dot(&self.d, &self.d);
            vec![if dd > 0.0 { -dot(&v[1..], &self.d) / dd } else { 0.5 }]
        } else {
            Vec::new()
        };
        let rows = [u[1..].to_vec(), v[1..].to_vec()];
        alphas
            .into_iter()
            .filter(|a| (-1e-9..=1.0 + 1e-9).contains(a))
            .filter_map(|a| {
                let a = a.clamp(0.0, 1.0);
                unit_solution(&rows, &[-u[0], v[0]], u.len() - 1, tol).map(|w| (a, w))
            })
            .collect()
    }

    /// Local minima of the forced-direction residual on a grid, refined.
    fn grid_candidates(&self) -> Vec<f64> {
        const N: usize = 2000;
        let f = |a: f64| self.forced_w(a).map_or(f64::INFINITY, |w| self.residual(a, &w));
        let vals: Vec<f64> = (0..=N).map(|i| f(i as f64 / N as f64)).collect();
        let mut out = Vec::new();
        for i in 0..=N {
            let left = if i == 0 { f64::INFINITY } else { vals[i - 1] };
            let right = if i == N { f64::INFINITY } else { vals[i + 1] };
            if vals[i].is_finite() && vals[i] <= left && vals[i] <= right {
                let lo = i.saturating_sub(1) as f64 / N as f64;
                let hi = (i + 1).min(N) as f64 / N as f64;
                out.push(golden_min(&f, lo, hi));
            }
        }
        out
    }
}

/// Real roots of `c0 + c1 t + c2 t²`, plus the vertex; empty when identically zero.
fn quadratic_roots([c0, c1, c2]: [f64; 3]) -> Vec<f64> {
    let scale = c0.abs().max(c1.abs()).max(c2.abs());
    if scale <= 1e-14 {
        return Vec::new();
    }
    if c2.abs() <= 1e-14 * scale {
        return if c1.abs() > 1e-14 * scale {
            vec![-c0 / c1]
        } else {
            Vec::new()
        };
    }
    let mut out = vec![-c1 / (2.0 * c2)];
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc >= 0.0 {
        let q = -0.5 * (c1 + c1.signum() * disc.sqrt());
        if q != 0.0 {
            out.push(q / c2);
            out.push(c0 / q);
        }
    }
    out
}

fn golden_min(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - g * (hi - lo);
    let mut b = lo + g * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..80 {
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = f(b);
        }
    }
    0.5 * (lo + hi)
}
