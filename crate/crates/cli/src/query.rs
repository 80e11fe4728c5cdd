//! Query documents, their validation, and the error-to-exit-code map.

use std::fmt;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use socc::{SocVector, SoccError, Tolerances};

pub const EXIT_NON_MEMBER: u8 = 1;
pub const EXIT_SCHEMA: u8 = 2;
pub const EXIT_NOT_IN_OMEGA: u8 = 3;
pub const EXIT_NOT_DIFFERENTIABLE: u8 = 4;
pub const EXIT_VERIFICATION: u8 = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: &'static str,
    pub exit: u8,
    pub message: String,
}

impl CliError {
    pub fn schema(message: impl Into<String>) -> Self {
        Self {
            code: "SchemaError",
            exit: EXIT_SCHEMA,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl From<SoccError> for CliError {
    fn from(e: SoccError) -> Self {
        let (code, exit) = match e {
            SoccError::NotInOmega(_) => ("NotInOmega", EXIT_NOT_IN_OMEGA),
            SoccError::AmbiguousCase(_) => ("AmbiguousCase", EXIT_NOT_IN_OMEGA),
            SoccError::NotDifferentiable(_) => ("NotDifferentiable", EXIT_NOT_DIFFERENTIABLE),
            _ => ("InvalidInput", EXIT_SCHEMA),
        };
        Self {
            code,
            exit,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn parse<T: DeserializeOwned>(text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::schema(e.to_string()))
}

/// Optional per-field tolerance overrides.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct TolSpec {
    pub classify_tol: Option<f64>,
    pub member_tol: Option<f64>,
    pub oracle_tol: Option<f64>,
}

/// Command-line flags shared by every subcommand.
#[derive(Debug, Clone, Copy, Default)]
pub struct Flags {
    pub tol: Option<f64>,
    pub seed: Option<u64>,
}

impl Flags {
    /// Defaults, then the document's `tolerances`, then `--tol`.
    pub fn tolerances(&self, spec: Option<&TolSpec>) -> CliResult<Tolerances> {
        if let Some(t) = self.tol {
            return Ok(Tolerances::uniform(t)?);
        }
        let d = Tolerances::default();
        let s = spec.map_or((None, None, None), |s| (s.classify_tol, s.member_tol, s.oracle_tol));
        Ok(Tolerances::new(
            s.0.unwrap_or(d.classify_tol),
            s.1.unwrap_or(d.member_tol),
            s.2.unwrap_or(d.oracle_tol),
        )?)
    }

    /// `--seed`, then the document's `seed`, then 0.
    pub fn seed(&self, doc: Option<u64>) -> u64 {
        self.seed.or(doc).unwrap_or(0)
    }
}

/// A length-`m` vector field.
pub fn vector(name: &str, data: &[f64], m: usize) -> CliResult<SocVector> {
    if data.len() != m {
        return Err(CliError::schema(format!(
            "{name} has length {}, expected m = {m}",
            data.len()
        )));
    }
    Ok(SocVector::new(data.to_vec())?)
}

pub fn required<'a, T>(name: &str, field: &'a Option<T>) -> CliResult<&'a T> {
    field
        .as_ref()
        .ok_or_else(|| CliError::schema(format!("missing field `{name}`")))
}

pub fn forbidden<T>(name: &str, field: &Option<T>, context: &str) -> CliResult<()> {
    match field {
        Some(_) => Err(CliError::schema(format!("field `{name}` is not used by {context}"))),
        None => Ok(()),
    }
}

pub fn positive_count(name: &str, n: usize) -> CliResult<usize> {
    if n == 0 {
        return Err(CliError::schema(format!("{name} must be at least 1")));
    }
    Ok(n)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ClassifyQuery {
    pub m: usize,
    pub x: Vec<f64>,
    pub y: Option<Vec<f64>>,
    pub tolerances: Option<TolSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct MemberQuery {
    pub m: usize,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub cone: String,
    pub tolerances: Option<TolSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct CalculusQuery {
    pub m: usize,
    pub x: Vec<f64>,
    pub h: Option<Vec<f64>>,
    pub scales: Option<Vec<f64>>,
    pub tolerances: Option<TolSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct VerifyQuery {
    pub case_tag: Option<String>,
    pub pairs: Option<usize>,
    pub candidates: Option<usize>,
    pub m: Option<usize>,
    pub x: Option<Vec<f64>>,
    pub y: Option<Vec<f64>>,
    pub u: Option<Vec<f64>>,
    pub v: Option<Vec<f64>>,
    pub cone: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub radii: Option<Vec<f64>>,
    pub slack: Option<f64>,
    pub vi_samples: Option<usize>,
    pub tolerances: Option<TolSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct SampleQuery {
    pub m: usize,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub cone: Option<String>,
    pub radius: Option<f64>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub tolerances: Option<TolSpec>,
}
