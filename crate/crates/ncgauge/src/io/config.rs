use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SCHEMA_VERSION;
use crate::dga::Deformation;
use crate::error::{Error, Result};
use crate::ring::rational::parse_rational;
use crate::ring::{Rational, SymbolTable};
use crate::solver::Setting;

/// A deformation matrix as given on the command line: `0`, `sym`,
/// `sym:PREFIX`, or rows `a,b;c,d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaSpec {
    Zero,
    Symbolic(Option<String>),
    Matrix(Vec<Vec<Rational>>),
}

impl FromStr for ThetaSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "0" | "zero" => return Ok(ThetaSpec::Zero),
            "sym" | "symbolic" => return Ok(ThetaSpec::Symbolic(None)),
            _ => {}
        }
        if let Some(prefix) = s.strip_prefix("sym:") {
            if prefix.is_empty()
                || !prefix.chars().all(|c| c.is_alphabetic() || c == '_')
                || prefix == "x"
            {
                return Err(Error::Config(format!("invalid symbol prefix `{prefix}`")));
            }
            return Ok(ThetaSpec::Symbolic(Some(prefix.to_string())));
        }
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Config(format!("deformation matrix `{s}`: {e}")))?;
        Ok(ThetaSpec::Matrix(rows))
    }
}

impl ThetaSpec {
    fn build(
        &self,
        n: usize,
        default_prefix: &str,
        table: &mut SymbolTable,
    ) -> Result<Deformation> {
        match self {
            ThetaSpec::Zero => Ok(Deformation::zero(n)),
            ThetaSpec::Symbolic(p) => Ok(Deformation::symbolic(
                n,
                p.as_deref().unwrap_or(default_prefix),
                table,
            )),
            ThetaSpec::Matrix(rows) => {
                if rows.len() != n {
                    return Err(Error::Config(format!(
                        "deformation matrix has {} rows but n = {n}",
                        rows.len()
                    )));
                }
                Deformation::explicit(rows)
            }
        }
    }
}

/// Parameters of a session, from flags or a JSON file of the same shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub schema_version: u32,
    pub n: usize,
    pub theta: String,
    pub theta_prime: String,
    #[serde(rename = "L")]
    pub order: usize,
    #[serde(rename = "D")]
    pub degree_bound: u32,
    #[serde(default)]
    pub seed: u64,
}

impl SessionConfig {
    pub fn new(
        n: usize,
        theta: &str,
        theta_prime: &str,
        order: usize,
        degree_bound: u32,
        seed: u64,
    ) -> Self {
        SessionConfig {
            schema_version: SCHEMA_VERSION,
            n,
            theta: theta.into(),
            theta_prime: theta_prime.into(),
            order,
            degree_bound,
            seed,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        super::check_schema(&value)?;
        serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))
    }

    /// Symbols of `θ` are registered before those of `θ'`. Default prefixes
    /// are `t` and `u`; equal prefixes share symbols.
    pub fn setting(&self) -> Result<Setting> {
        if self.n == 0 || self.order == 0 || self.degree_bound == 0 {
            return Err(Error::Config("n, L and D must all be at least 1".into()));
        }
        let mut table = SymbolTable::new();
        let theta = self
            .theta
            .parse::<ThetaSpec>()?
            .build(self.n, "t", &mut table)?;
        let theta_prime = self
            .theta_prime
            .parse::<ThetaSpec>()?
            .build(self.n, "u", &mut table)?;
        Setting::new(theta, theta_prime, table, self.order, self.degree_bound)
    }
}
