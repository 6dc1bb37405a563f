use std::path::Path;

use serde::{Deserialize, Serialize};

use super::json::from_json;
use crate::algebra::ThetaMatrix;
use crate::error::IoError;
use crate::loops::Convention;
use crate::spin::RandomFieldParams;

/// How Θ is given: a named preset or an explicit matrix.
///
/// Presets are `zero`, `golden` and `single-angle[:θ₁₂]` (θ₁₂ defaults to 1).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ThetaSpec {
    Preset(String),
    Matrix([[f64; 3]; 3]),
}

impl Default for ThetaSpec {
    fn default() -> Self {
        ThetaSpec::Preset("golden".into())
    }
}

impl ThetaSpec {
    pub fn resolve(&self) -> Result<ThetaMatrix, IoError> {
        match self {
            ThetaSpec::Matrix(m) => ThetaMatrix::new(*m).map_err(|e| IoError::invalid("theta", e.to_string())),
            ThetaSpec::Preset(name) => preset(name),
        }
    }

    /// Reads a command-line `--theta` value: a preset name, an inline JSON
    /// matrix, or a path to a file holding either.
    pub fn from_arg(arg: &str) -> Result<ThetaSpec, IoError> {
        let trimmed = arg.trim();
        if trimmed.starts_with('[') {
            let m: [[f64; 3]; 3] = from_json(trimmed)?;
            return Ok(ThetaSpec::Matrix(m));
        }
        if preset(trimmed).is_ok() {
            return Ok(ThetaSpec::Preset(trimmed.into()));
        }
        let path = Path::new(trimmed);
        if path.is_file() {
            let text = read_file(path)?;
            let spec: ThetaSpec = from_json(&text).map_err(|e| with_file(path, e))?;
            spec.resolve().map_err(|e| with_file(path, e))?;
            return Ok(spec);
        }
        Err(IoError::invalid("theta", format!("`{trimmed}` is neither a preset, an inline matrix nor a file")))
    }
}

fn preset(name: &str) -> Result<ThetaMatrix, IoError> {
    match name {
        "zero" => Ok(ThetaMatrix::zero()),
        "golden" => Ok(ThetaMatrix::golden()),
        "single-angle" => Ok(ThetaMatrix::single_angle(1.0)),
        _ => match name.strip_prefix("single-angle:").map(str::parse::<f64>) {
            Some(Ok(x)) if x.is_finite() => Ok(ThetaMatrix::single_angle(x)),
            _ => Err(IoError::invalid("theta", format!("unknown theta preset `{name}`"))),
        },
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path)
        .map_err(|e| IoError::File { path: path.display().to_string(), message: e.to_string() })
}

fn with_file(path: &Path, e: IoError) -> IoError {
    IoError::File { path: path.display().to_string(), message: e.to_string() }
}

/// Parameters of a reproducible run. Every field has a default, so `{}` is
/// a valid config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
pub struct ExperimentConfig {
    pub seed: u64,
    /// Matrix size `N`, 1 to 8.
    #[serde(rename = "N")]
    pub size: usize,
    /// Fourier support radius `K`, 1 to 6.
    #[serde(rename = "K")]
    pub support: i64,
    /// Envelope rate `s` of random coefficients, `e^{−s‖k‖∞}`.
    pub decay: f64,
    pub theta: ThetaSpec,
    /// Chern-Simons level, nonzero.
    pub level: i64,
    /// Loop momentum cutoff Λ, 1 to 8.
    pub cutoff: i64,
    pub convention: Convention,
    pub no_zero_mode: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            size: 2,
            support: 1,
            decay: 0.5,
            theta: ThetaSpec::default(),
            level: 1,
            cutoff: 2,
            convention: Convention::Theorem,
            no_zero_mode: false,
        }
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        let c: ExperimentConfig = from_json(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, IoError> {
        Self::parse(&read_file(path)?).map_err(|e| with_file(path, e))
    }

    pub fn validate(&self) -> Result<(), IoError> {
        if !(1..=8).contains(&self.size) {
            return Err(IoError::invalid("N", format!("must be in 1..=8, got {}", self.size)));
        }
        if !(1..=6).contains(&self.support) {
            return Err(IoError::invalid("K", format!("must be in 1..=6, got {}", self.support)));
        }
        if !self.decay.is_finite() || self.decay < 0.0 {
            return Err(IoError::invalid("decay", format!("must be finite and non-negative, got {}", self.decay)));
        }
        if self.level == 0 {
            return Err(IoError::invalid("level", "must be nonzero"));
        }
        if !(1..=8).contains(&self.cutoff) {
            return Err(IoError::invalid("cutoff", format!("must be in 1..=8, got {}", self.cutoff)));
        }
        self.theta.resolve()?;
        Ok(())
    }

    pub fn theta_matrix(&self) -> Result<ThetaMatrix, IoError> {
        self.theta.resolve()
    }

    pub fn field_params(&self) -> RandomFieldParams {
        RandomFieldParams {
            size: self.size,
            support: self.support,
            seed: self.seed,
            decay: self.decay,
            no_zero_mode: self.no_zero_mode,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_expand_to_skew_matrices() {
        for name in ["zero", "golden", "single-angle", "single-angle:0.25"] {
            let t = ThetaSpec::Preset(name.into()).resolve().unwrap();
            let e = t.entries();
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(e[i][j], -e[j][i]);
                }
            }
        }
        assert_eq!(ThetaSpec::Preset("single-angle:0.25".into()).resolve().unwrap(), ThetaMatrix::single_angle(0.25));
        assert!(ThetaSpec::Preset("single-angle:x".into()).resolve().is_err());
        assert!(ThetaSpec::Preset("silver".into()).resolve().is_err());
    }

    #[test]
    fn theta_arguments() {
        assert_eq!(ThetaSpec::from_arg("golden").unwrap(), ThetaSpec::Preset("golden".into()));
        let inline = ThetaSpec::from_arg("[[0,1,0],[-1,0,0],[0,0,0]]").unwrap();
        assert_eq!(inline.resolve().unwrap(), ThetaMatrix::single_angle(1.0));
        let bad = ThetaSpec::from_arg("[[0.1,0,0],[0,0,0],[0,0,0]]").unwrap().resolve().unwrap_err();
        assert!(bad.to_string().contains("theta not skew-symmetric"));
        assert!(ThetaSpec::from_arg("/nonexistent/theta.json").is_err());
    }

    #[test]
    fn config_defaults_and_validation() {
        let c = ExperimentConfig::parse("{}").unwrap();
        assert_eq!(c, ExperimentConfig::default());
        let c = ExperimentConfig::parse(r#"{"N":3,"K":2,"theta":"single-angle:0.5","convention":"box"}"#).unwrap();
        assert_eq!((c.size, c.support, c.convention), (3, 2, Convention::Box));
        let e = ExperimentConfig::parse(r#"{"N":0}"#).unwrap_err().to_string();
        assert!(e.starts_with("N:"), "{e}");
        let e = ExperimentConfig::parse(r#"{"levle":2}"#).unwrap_err().to_string();
        assert!(e.contains("levle"), "{e}");
        assert!(ExperimentConfig::parse(r#"{"level":0}"#).is_err());
        let round = serde_json::to_string(&c).unwrap();
        assert_eq!(ExperimentConfig::parse(&round).unwrap(), c);
    }
}
