//! One handler per subcommand. Each returns a payload and an exit code.

use serde_json::{json, Map, Value};
use socc::cones::sample_limiting_normal;
use socc::oracles::{
    equivalence_sweep, limiting_oracle, origin_hints, proximal_oracle, regular_oracle, OracleConfig, OracleReport,
    OracleVerdict,
};
use socc::*;

use crate::query::*;

pub struct Outcome {
    pub payload: Value,
    pub exit: u8,
}

impl Outcome {
    fn ok(payload: Value) -> Self {
        Self { payload, exit: 0 }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize to JSON")
}

fn pair_json(p: &OmegaPair) -> Value {
    let mut o = Map::new();
    o.insert("x".into(), to_value(p.x()));
    o.insert("y".into(), to_value(p.y()));
    o.insert("caseTag".into(), json!(p.case().name()));
    if let Some(k) = p.k() {
        o.insert("k".into(), json!(k));
    }
    Value::Object(o)
}

fn cone(name: &str) -> CliResult<ConeKind> {
    name.parse()
        .map_err(|_| CliError::schema(format!("cone must be proximal, regular or limiting, got {name:?}")))
}

pub fn classify(text: &str, flags: Flags) -> CliResult<Outcome> {
    let q: ClassifyQuery = parse(text)?;
    let tol = flags.tolerances(q.tolerances.as_ref())?;
    let x = vector("x", &q.x, q.m)?;
    let payload = match &q.y {
        None => {
            let region = classify_point_checked(&x, &tol)?;
            let s = spectral_decompose(&x);
            json!({ "region": region.name(), "lambda1": s.lambda1, "lambda2": s.lambda2 })
        }
        Some(y) => {
            let p = classify_pair(&x, &vector("y", y, q.m)?, &tol)?;
            let mut o = json!({ "caseTag": p.case().name() });
            if let Some(k) = p.k() {
                o["k"] = json!(k);
            }
            o
        }
    };
    Ok(Outcome::ok(payload))
}

pub fn member(text: &str, flags: Flags) -> CliResult<Outcome> {
    let q: MemberQuery = parse(text)?;
    let tol = flags.tolerances(q.tolerances.as_ref())?;
    let kind = cone(&q.cone)?;
    let pair = classify_pair(&vector("x", &q.x, q.m)?, &vector("y", &q.y, q.m)?, &tol)?;
    let cand = NormalCandidate::new(vector("u", &q.u, q.m)?, vector("v", &q.v, q.m)?)?;
    let verdict = normal_contains(kind, &pair, &cand, &tol)?;
    let exit = if verdict.member { 0 } else { EXIT_NON_MEMBER };
    let mut payload = to_value(&verdict);
    payload["caseTag"] = json!(pair.case().name());
    if let Some(k) = pair.k() {
        payload["k"] = json!(k);
    }
    Ok(Outcome { payload, exit })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CalcOp {
    Project,
    Ddir,
    Jacobian,
    Calmness,
}

const DEFAULT_SCALES: [f64; 5] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5];

pub fn calculus(op: CalcOp, text: &str, flags: Flags) -> CliResult<Outcome> {
    let q: CalculusQuery = parse(text)?;
    let tol = flags.tolerances(q.tolerances.as_ref())?;
    let x = vector("x", &q.x, q.m)?;
    let h = || -> CliResult<SocVector> { vector("h", required("h", &q.h)?, q.m) };
    if op != CalcOp::Calmness {
        forbidden("scales", &q.scales, "this operation")?;
    }
    if matches!(op, CalcOp::Project | CalcOp::Jacobian) {
        forbidden("h", &q.h, "this operation")?;
    }
    let payload = match op {
        CalcOp::Project => json!({
            "projection": to_value(&project_soc(&x)),
            "polar": to_value(&project_polar(&x)),
            "region": classify_point(&x, &tol).name(),
        }),
        CalcOp::Ddir => json!({
            "derivative": to_value(&dir_derivative_with(&x, &h()?, &tol)?),
            "region": classify_point(&x, &tol).name(),
        }),
        CalcOp::Jacobian => {
            let j = jacobian_with(&x, &tol)?;
            json!({ "matrix": j.matrix, "region": j.region.name() })
        }
        CalcOp::Calmness => {
            let scales = q.scales.clone().unwrap_or_else(|| DEFAULT_SCALES.to_vec());
            to_value(&calmness_report(&x, &h()?, &scales)?)
        }
    };
    Ok(Outcome::ok(payload))
}

fn oracle_config(q: &VerifyQuery, flags: Flags) -> CliResult<OracleConfig> {
    let d = OracleConfig::default();
    let cfg = OracleConfig {
        n_samples: q.samples.unwrap_or(d.n_samples),
        radii: q.radii.clone().unwrap_or(d.radii),
        seed: flags.seed(q.seed),
        slack: q.slack.unwrap_or(d.slack),
        vi_samples: q.vi_samples.unwrap_or(d.vi_samples),
    };
    cfg.validate()?;
    positive_count("viSamples", cfg.vi_samples)?;
    Ok(cfg)
}

fn contradicts(closed_form: bool, report: &OracleReport) -> bool {
    match report.verdict {
        OracleVerdict::ConsistentMember => !closed_form,
        OracleVerdict::CertifiedNonMember => closed_form,
        OracleVerdict::Inconclusive => false,
    }
}

pub fn verify(text: &str, flags: Flags) -> CliResult<Outcome> {
    let q: VerifyQuery = parse(text)?;
    let cfg = oracle_config(&q, flags)?;
    match &q.case_tag {
        Some(tag) => {
            let case: CaseTag = tag.parse()?;
            for (name, present) in [
                ("m", q.m.is_some()),
                ("x", q.x.is_some()),
                ("y", q.y.is_some()),
                ("u", q.u.is_some()),
                ("v", q.v.is_some()),
                ("cone", q.cone.is_some()),
                ("tolerances", q.tolerances.is_some()),
            ] {
                if present {
                    return Err(CliError::schema(format!("field `{name}` is not used by a sweep")));
                }
            }
            let pairs = positive_count("pairs", *required("pairs", &q.pairs)?)?;
            let cands = positive_count("candidates", *required("candidates", &q.candidates)?)?;
            let report = equivalence_sweep(case, pairs, cands, &cfg)?;
            let exit = if report.agree() { 0 } else { EXIT_VERIFICATION };
            let mut payload = to_value(&report);
            payload["disagreementDetails"] = payload["disagreements"].take();
            payload["disagreements"] = json!(report.disagreements.len());
            Ok(Outcome { payload, exit })
        }
        None => {
            forbidden("pairs", &q.pairs, "single-candidate verification")?;
            forbidden("candidates", &q.candidates, "single-candidate verification")?;
            let tol = flags.tolerances(q.tolerances.as_ref())?;
            let m = *required("m", &q.m)?;
            let pair = classify_pair(
                &vector("x", required("x", &q.x)?, m)?,
                &vector("y", required("y", &q.y)?, m)?,
                &tol,
            )?;
            let cand = NormalCandidate::new(
                vector("u", required("u", &q.u)?, m)?,
                vector("v", required("v", &q.v)?, m)?,
            )?;
            let kind = cone(required("cone", &q.cone)?)?;
            let closed = normal_contains(kind, &pair, &cand, &tol)?;
            let report = match kind {
                ConeKind::Proximal => proximal_oracle(&pair, &cand, &cfg)?,
                ConeKind::Regular => regular_oracle(&pair, &cand, &cfg)?,
                ConeKind::Limiting => limiting_oracle(&pair, &cand, &cfg, &origin_hints(&pair, &cand))?,
            };
            let agree = !contradicts(closed.member, &report);
            let payload = json!({
                "cone": kind.name(),
                "caseTag": pair.case().name(),
                "verdict": to_value(&report.verdict),
                "oracle": to_value(&report),
                "closedForm": { "member": closed.member, "branch": closed.branch, "residual": closed.residual },
                "agree": agree,
            });
            Ok(Outcome {
                payload,
                exit: if agree { 0 } else { EXIT_VERIFICATION },
            })
        }
    }
}

const DEFAULT_SAMPLES: usize = 16;

pub fn sample(text: &str, flags: Flags) -> CliResult<Outcome> {
    let q: SampleQuery = parse(text)?;
    let tol = flags.tolerances(q.tolerances.as_ref())?;
    let seed = flags.seed(q.seed);
    let n = positive_count("samples", q.samples.unwrap_or(DEFAULT_SAMPLES))?;
    let pair = classify_pair(&vector("x", &q.x, q.m)?, &vector("y", &q.y, q.m)?, &tol)?;
    let payload = match (&q.cone, q.radius) {
        (Some(name), None) => {
            let kind = cone(name)?;
            let cands = match kind {
                ConeKind::Limiting => sample_limiting_normal(&pair, seed, n),
                _ => sample_regular_normal(&pair, seed, n),
            };
            json!({ "cone": kind.name(), "caseTag": pair.case().name(), "seed": seed, "candidates": to_value(&cands) })
        }
        (None, Some(radius)) => {
            let s = sample_omega_near(&pair, radius, seed, n, &tol)?;
            json!({
                "radius": s.radius,
                "seed": s.seed,
                "pairs": s.pairs.iter().map(pair_json).collect::<Vec<_>>(),
            })
        }
        _ => {
            return Err(CliError::schema(
                "give exactly one of `cone` (normal-cone samples) or `radius` (nearby pairs)",
            ))
        }
    };
    Ok(Outcome::ok(payload))
}
