use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeKind {
    Proximal,
    Regular,
    Limiting,
}

impl ConeKind {
    pub fn name(self) -> &'static str {
        match self {
            ConeKind::Proximal => "proximal",
            ConeKind::Regular => "regular",
            ConeKind::Limiting => "limiting",
        }
    }
}

impl fmt::Display for ConeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ConeKind {
    type Err = crate::SoccError;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "proximal" => Ok(ConeKind::Proximal),
            "regular" => Ok(ConeKind::Regular),
            "limiting" => Ok(ConeKind::Limiting),
            _ => Err(crate::SoccError::InvalidArgument(format!("unknown cone {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum CertValue {
    Scalar(f64),
    Vector(Vec<f64>),
}

impl CertValue {
    pub fn as_scalar(&self) -> Option<f64> {
        match self {
            CertValue::Scalar(s) => Some(*s),
            CertValue::Vector(_) => None,
        }
    }

    pub fn as_vector(&self) -> Option<&[f64]> {
        match self {
            CertValue::Vector(v) => Some(v),
            CertValue::Scalar(_) => None,
        }
    }
}

/// Verdict of a membership test.
///
/// `residual` is the largest violation among the conditions of `branch`,
/// measured on the candidate rescaled to unit norm; `threshold` is what it
/// was compared against. For non-members `branch` names the disjunct that came
/// closest.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MembershipVerdict {
    pub member: bool,
    pub cone_kind: ConeKind,
    pub branch: String,
    pub certificate: BTreeMap<String, CertValue>,
    pub residual: f64,
    pub threshold: f64,
}

impl MembershipVerdict {
    pub fn scalar(&self, key: &str) -> Option<f64> {
        self.certificate.get(key).and_then(CertValue::as_scalar)
    }

    pub fn vector(&self, key: &str) -> Option<&[f64]> {
        self.certificate.get(key).and_then(CertValue::as_vector)
    }

    pub(crate) fn with_kind(mut self, kind: ConeKind) -> Self {
        self.cone_kind = kind;
        self
    }
}

/// One disjunct of a membership test after evaluation.
#[derive(Debug, Clone)]
pub(crate) struct BranchCheck {
    pub name: &'static str,
    pub residual: f64,
    pub cert: Vec<(&'static str, CertValue)>,
}

impl BranchCheck {
    pub fn new(name: &'static str, residual: f64) -> Self {
        Self {
            name,
            residual,
            cert: Vec::new(),
        }
    }

    pub fn scalar(mut self, key: &'static str, v: f64) -> Self {
        self.cert.push((key, CertValue::Scalar(v)));
        self
    }

    pub fn vector(mut self, key: &'static str, v: Vec<f64>) -> Self {
        self.cert.push((key, CertValue::Vector(v)));
        self
    }

    pub fn renamed(mut self, name: &'static str) -> Self {
        self.name = name;
        self
    }
}

/// Evaluates disjuncts in order, stopping at the first satisfied one.
pub(crate) fn decide(kind: ConeKind, threshold: f64, branches: &[&dyn Fn() -> BranchCheck]) -> MembershipVerdict {
    let mut best: Option<BranchCheck> = None;
    for b in branches {
        let check = b();
        if check.residual <= threshold {
            return finish(kind, threshold, true, check);
        }
        if best.as_ref().is_none_or(|c| check.residual < c.residual) {
            best = Some(check);
        }
    }
    finish(kind, threshold, false, best.expect("at least one branch"))
}

fn finish(kind: ConeKind, threshold: f64, member: bool, check: BranchCheck) -> MembershipVerdict {
    MembershipVerdict {
        member,
        cone_kind: kind,
        branch: check.name.to_string(),
        certificate: check.cert.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        residual: check.residual,
        threshold,
    }
}
