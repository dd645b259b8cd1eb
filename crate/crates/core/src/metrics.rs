//! Evaluation metrics: MAE, RMSE, SMAPE with per-point weight masks.
//!
//! Metrics are computed pointwise over all `B·h` entries regardless of the
//! forecast horizon, in original data space (after inverse transform and
//! post-processing). SMAPE uses the `(|y| + |ŷ|)/2` denominator and is
//! reported in percent, bounded by 200.

use serde::{Deserialize, Serialize};

use crate::nn::Matrix;

/// Aggregate metric values over a weighted set of points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricResult {
    pub mae: f64,
    pub rmse: f64,
    /// Percent, in [0, 200].
    pub smape: f64,
    /// Effective weighted point count.
    pub count: f64,
}

impl MetricResult {
    pub fn get(&self, kind: MetricKind) -> f64 {
        match kind {
            MetricKind::Mae => self.mae,
            MetricKind::Rmse => self.rmse,
            MetricKind::Smape => self.smape,
        }
    }
}

/// Which metric to read off a [`MetricResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Mae,
    Rmse,
    Smape,
}

impl MetricKind {
    pub const ALL: [MetricKind; 3] = [MetricKind::Mae, MetricKind::Rmse, MetricKind::Smape];

    pub fn name(&self) -> &'static str {
        match self {
            MetricKind::Mae => "mae",
            MetricKind::Rmse => "rmse",
            MetricKind::Smape => "smape",
        }
    }
}

impl std::fmt::Display for MetricKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum MetricsError {
    #[error("truth/pred/weight shapes differ: {0}")]
    ShapeMismatch(String),

    #[error("weights must be nonnegative")]
    NegativeWeight,

    #[error("all weights are zero")]
    AllZeroWeights,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}

/// Weighted pointwise MAE, RMSE, and SMAPE over `truth` vs `pred`.
///
/// `weights` defaults to all-ones when `None`. A SMAPE term with
/// `|y| + |ŷ| = 0` contributes zero.
pub fn compute_metrics(
    truth: &Matrix,
    pred: &Matrix,
    weights: Option<&Matrix>,
) -> Result<MetricResult, MetricsError> {
    if truth.rows() != pred.rows() || truth.cols() != pred.cols() {
        return Err(MetricsError::ShapeMismatch(format!(
            "truth {}x{}, pred {}x{}",
            truth.rows(),
            truth.cols(),
            pred.rows(),
            pred.cols()
        )));
    }
    if let Some(w) = weights {
        if w.rows() != truth.rows() || w.cols() != truth.cols() {
            return Err(MetricsError::ShapeMismatch(format!(
                "weights {}x{} vs truth {}x{}",
                w.rows(),
                w.cols(),
                truth.rows(),
                truth.cols()
            )));
        }
        if w.data().iter().any(|&v| v < 0.0 || !v.is_finite()) {
            return Err(MetricsError::NegativeWeight);
        }
    }
    if !truth.is_finite() {
        return Err(MetricsError::NonFinite("truth"));
    }
    if !pred.is_finite() {
        return Err(MetricsError::NonFinite("pred"));
    }

    let n = truth.data().len();
    let mut w_sum = 0.0;
    let mut abs_sum = 0.0;
    let mut sq_sum = 0.0;
    let mut smape_sum = 0.0;
    for i in 0..n {
        let w = weights.map_or(1.0, |m| m.data()[i]);
        if w == 0.0 {
            continue;
        }
        let y = truth.data()[i];
        let p = pred.data()[i];
        let err = (y - p).abs();
        w_sum += w;
        abs_sum += w * err;
        sq_sum += w * err * err;
        let denom = (y.abs() + p.abs()) / 2.0;
        if denom > 0.0 {
            smape_sum += w * err / denom;
        }
    }
    if w_sum == 0.0 {
        return Err(MetricsError::AllZeroWeights);
    }
    Ok(MetricResult {
        mae: abs_sum / w_sum,
        rmse: (sq_sum / w_sum).sqrt(),
        smape: smape_sum / w_sum * 100.0,
        count: w_sum,
    })
}
