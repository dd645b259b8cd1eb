//! Dataset profiles: the per-dataset shaping decisions (sample rate,
//! lookback/horizon, filters, normalization, post-processing).

use serde::{Deserialize, Serialize};

use super::DataError;

/// Normalization applied to targets, fitted on the training split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TransformKind {
    #[default]
    None,
    /// (x − μ) / σ
    Z,
    /// ln(1 + x), targets must be nonnegative
    Log1p,
    /// Z fitted in log1p space
    ZLog1p,
}

/// Whether normalization statistics are fitted per series or pooled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TransformScope {
    #[default]
    PerSeries,
    Global,
}

/// Domain post-processing applied after the inverse transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Postprocess {
    #[default]
    None,
    /// max(0, ·) then round half away from zero.
    ClipZeroRound,
}

/// Per-dataset shaping configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetProfile {
    pub name: String,
    /// Fixed sampling interval in seconds.
    pub sample_rate_seconds: i64,
    /// Lookback window length l (encoder input).
    pub lookback: usize,
    /// Forecast horizon h (decoder length).
    pub horizon: usize,
    /// Trim leading zero values from each series.
    #[serde(default)]
    pub zero_prefix_trim: bool,
    /// Drop series with fewer training-range observations than this.
    /// Zero disables the length filter.
    #[serde(default)]
    pub min_train_length: usize,
    #[serde(default)]
    pub transform: TransformKind,
    #[serde(default)]
    pub transform_scope: TransformScope,
    #[serde(default)]
    pub postprocess: Postprocess,
}

impl DatasetProfile {
    /// Validates the profile invariants; violations name the offending field.
    pub fn validate(&self) -> Result<(), DataError> {
        if self.lookback < 1 {
            return Err(DataError::InvalidProfile("lookback must be >= 1".into()));
        }
        if self.horizon < 1 {
            return Err(DataError::InvalidProfile("horizon must be >= 1".into()));
        }
        if self.sample_rate_seconds < 1 {
            return Err(DataError::InvalidProfile("sample_rate_seconds must be >= 1".into()));
        }
        if self.min_train_length > 0 && self.min_train_length < self.lookback + self.horizon {
            return Err(DataError::InvalidProfile(format!(
                "min_train_length ({}) must be >= lookback + horizon ({}) when the length filter is enabled",
                self.min_train_length,
                self.lookback + self.horizon
            )));
        }
        Ok(())
    }
}
