use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::field_tower::valuation::parse_rational;
use crate::field_tower::FieldKind;
use crate::tate_series::SeriesLiteral;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    /// Starting working precision (defaults to the height-dependent rule).
    #[serde(default)]
    pub initial: Option<i64>,
    #[serde(default = "default_ceiling")]
    pub ceiling: i64,
}

fn default_ceiling() -> i64 {
    512
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { initial: None, ceiling: default_ceiling() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldBlock {
    /// "padic" or "tadic".
    pub kind: String,
    #[serde(default)]
    pub p: Option<u64>,
    #[serde(default)]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<u32>,
    #[serde(default)]
    pub precision: PrecisionPolicy,
}

impl FieldBlock {
    pub fn kind(&self) -> Result<FieldKind, CliError> {
        match self.kind.as_str() {
            "padic" | "p-adic" | "Q_p" => Ok(FieldKind::Padic),
            "tadic" | "t-adic" | "F_q((t))" => Ok(FieldKind::Tadic),
            k => Err(CliError::Problem(format!("unknown field kind {k:?}"))),
        }
    }

    pub fn modulus(&self) -> Result<u64, CliError> {
        let v = match self.kind()? {
            FieldKind::Padic => self.p,
            FieldKind::Tadic => self.q,
        };
        v.ok_or_else(|| CliError::Problem("field block needs p (p-adic) or q (t-adic)".into()))
    }
}

/// "coordinates", or a list of series literals.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FSpec {
    Named(String),
    Series(Vec<SeriesLiteral>),
}

impl Default for FSpec {
    fn default() -> Self {
        FSpec::Named("coordinates".into())
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Experiment {
    #[serde(default)]
    pub heights: Option<Vec<u64>>,
    /// Inclusive range of h; H = q^h (t-adic) or p^h (p-adic).
    #[serde(default)]
    pub h_range: Option<[u32; 2]>,
    #[serde(default)]
    pub epsilon: Option<String>,
    #[serde(default)]
    pub mode: Option<String>,
    /// Target radii for the normalization scaling (default zero).
    #[serde(default)]
    pub delta_target: Option<Vec<String>>,
}

impl Experiment {
    pub fn heights(&self, kind: FieldKind, q: u64, p: u64) -> Result<Vec<BigUint>, CliError> {
        if let Some(hs) = &self.heights {
            return Ok(hs.iter().map(|&h| BigUint::from(h)).collect());
        }
        let r = match kind {
            FieldKind::Tadic => q,
            FieldKind::Padic => p,
        };
        match self.h_range {
            Some([lo, hi]) if lo <= hi => Ok((lo..=hi).map(|h| BigUint::from(r).pow(h)).collect()),
            Some(_) => Err(CliError::Problem("empty h_range".into())),
            None => Ok(vec![BigUint::from(r)]),
        }
    }

    pub fn epsilon(&self) -> Result<BigRational, CliError> {
        let s = self.epsilon.as_deref().unwrap_or("1/2");
        parse_rational(s).ok_or_else(|| CliError::Problem(format!("epsilon {s:?}")))
    }

    pub fn delta_target(&self, n: usize) -> Result<Vec<BigRational>, CliError> {
        match &self.delta_target {
            None => Ok(vec![BigRational::zero(); n]),
            Some(v) if v.len() == n => v
                .iter()
                .map(|s| parse_rational(s).ok_or_else(|| CliError::Problem(format!("delta_target {s:?}"))))
                .collect(),
            Some(_) => Err(CliError::Problem("delta_target length differs from nvars".into())),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub field: FieldBlock,
    pub nvars: usize,
    pub delta: Vec<String>,
    #[serde(default)]
    pub generators: Vec<SeriesLiteral>,
    #[serde(default)]
    pub f: FSpec,
    #[serde(default)]
    pub experiment: Experiment,
}

impl ProblemSpec {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let spec: ProblemSpec = serde_json::from_str(s).map_err(|e| CliError::Problem(e.to_string()))?;
        if spec.delta.len() != spec.nvars {
            return Err(CliError::Problem(format!("{} radii for {} variables", spec.delta.len(), spec.nvars)));
        }
        spec.delta()?;
        spec.field.kind()?;
        Ok(spec)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn delta(&self) -> Result<Vec<BigRational>, CliError> {
        self.delta
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| CliError::Problem(format!("delta {s:?}"))))
            .collect()
    }
}

/// "2,4,8" → [2, 4, 8].
pub fn parse_heights(s: &str) -> Result<Vec<BigUint>, CliError> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<BigUint>().map_err(|_| CliError::Problem(format!("height {x:?}"))))
        .collect()
}
