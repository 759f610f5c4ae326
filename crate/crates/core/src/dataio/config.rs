use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::criteria::{Criterion, TendencyParams};
use crate::error::{Error, Result};
use crate::hp::{validate_lambda, DEFAULT_LAMBDA};
use crate::itd::BoundaryPolicy;
use crate::spectra::DEFAULT_MAX_BIN;

/// Fully resolved settings for one run.
///
/// `output_dir` is accepted on input but never serialized, so manifests of
/// identical runs written to different places compare equal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub boundary: BoundaryPolicy,
    pub criterion: Criterion,
    pub p_star: f64,
    pub n_lags: usize,
    pub hp_lambda: f64,
    pub seed: u64,
    #[serde(skip_serializing)]
    pub output_dir: Option<PathBuf>,
    pub max_bin: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let params = TendencyParams::default();
        Self {
            boundary: BoundaryPolicy::Free,
            criterion: Criterion::Stc,
            p_star: params.p_star,
            n_lags: params.n_lags,
            hp_lambda: DEFAULT_LAMBDA,
            seed: 0,
            output_dir: None,
            max_bin: DEFAULT_MAX_BIN,
        }
    }
}

impl RunConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => Error::FileNotFound(path.to_path_buf()),
            _ => Error::Io(e),
        })?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p_star) {
            return Err(Error::InvalidParameter {
                name: "p_star",
                reason: format!("{} is outside [0, 1]", self.p_star),
            });
        }
        validate_lambda(self.hp_lambda)?;
        if self.max_bin == 0 {
            return Err(Error::InvalidParameter {
                name: "max_bin",
                reason: "must be at least 1".into(),
            });
        }
        Ok(())
    }

    pub fn tendency_params(&self) -> TendencyParams {
        TendencyParams {
            p_star: self.p_star,
            n_lags: self.n_lags,
        }
    }
}
