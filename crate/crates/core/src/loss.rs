//! Differentiable training losses with analytic gradients.
//!
//! Losses operate in transformed (model) space on the decoder window;
//! evaluation metrics live in [`crate::metrics`] and operate in original
//! space. The Gaussian criterion is a negative log-likelihood over a
//! per-point `(mean, scale)` head; Tweedie is the unit deviance for power
//! `rho` in (1, 2) without the target-only constant.

use serde::{Deserialize, Serialize};

use crate::nn::Matrix;

/// Training criterion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum LossKind {
    L1,
    Mse,
    /// Gaussian negative log-likelihood; the model head emits (mean, scale).
    Gll,
    /// Tweedie deviance with power strictly inside (1, 2).
    Tweedie { rho: f64 },
}

impl LossKind {
    /// Parses a config name plus the separately-configured Tweedie power.
    pub fn from_name(name: &str, tweedie_rho: f64) -> Result<Self, LossError> {
        match name.to_ascii_lowercase().as_str() {
            "l1" => Ok(LossKind::L1),
            "mse" => Ok(LossKind::Mse),
            "gll" => Ok(LossKind::Gll),
            "tweedie" => {
                if !(tweedie_rho > 1.0 && tweedie_rho < 2.0) {
                    return Err(LossError::InvalidTweedieRho(tweedie_rho));
                }
                Ok(LossKind::Tweedie { rho: tweedie_rho })
            }
            other => Err(LossError::UnknownKind(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LossKind::L1 => "l1",
            LossKind::Mse => "mse",
            LossKind::Gll => "gll",
            LossKind::Tweedie { .. } => "tweedie",
        }
    }

    /// Whether the model head must emit a (mean, scale) pair.
    pub fn needs_scale_head(&self) -> bool {
        matches!(self, LossKind::Gll)
    }

    /// Whether the point-forecast head must be strictly positive.
    pub fn needs_positive_mean(&self) -> bool {
        matches!(self, LossKind::Tweedie { .. })
    }
}

/// Model output for a batch: a point forecast and, for Gaussian heads,
/// a strictly positive scale per point.
#[derive(Debug, Clone)]
pub struct Forecast {
    pub mean: Matrix,
    pub scale: Option<Matrix>,
}

impl Forecast {
    pub fn point(mean: Matrix) -> Self {
        Self { mean, scale: None }
    }

    pub fn rows(&self) -> usize {
        self.mean.rows()
    }

    pub fn cols(&self) -> usize {
        self.mean.cols()
    }

    /// Restrict to the first `n` decoder positions (curriculum training).
    pub fn take_cols(&self, n: usize) -> Forecast {
        Forecast {
            mean: self.mean.take_cols(n),
            scale: self.scale.as_ref().map(|s| s.take_cols(n)),
        }
    }
}

/// Gradient of a loss with respect to the model output.
#[derive(Debug, Clone)]
pub struct ForecastGrad {
    pub d_mean: Matrix,
    pub d_scale: Option<Matrix>,
}

#[derive(Debug, thiserror::Error)]
pub enum LossError {
    #[error("unknown loss kind {0:?}")]
    UnknownKind(String),

    #[error("tweedie power {0} outside (1, 2)")]
    InvalidTweedieRho(f64),

    #[error("shape mismatch: truth {truth}, forecast {forecast}")]
    ShapeMismatch { truth: String, forecast: String },

    #[error("gaussian loss requires a scale head")]
    MissingScale,

    #[error("gaussian scale must be positive, got {0}")]
    NonPositiveScale(f64),

    #[error("tweedie requires positive forecasts, got {0}")]
    NonPositiveTweedieMean(f64),

    #[error("tweedie requires nonnegative targets, got {0}")]
    NegativeTweedieTarget(f64),
}

fn check_shapes(truth: &Matrix, forecast: &Forecast) -> Result<(), LossError> {
    let ok = truth.rows() == forecast.mean.rows()
        && truth.cols() == forecast.mean.cols()
        && forecast
            .scale
            .as_ref()
            .map_or(true, |s| s.rows() == truth.rows() && s.cols() == truth.cols());
    if ok {
        Ok(())
    } else {
        Err(LossError::ShapeMismatch {
            truth: format!("{}x{}", truth.rows(), truth.cols()),
            forecast: format!("{}x{}", forecast.mean.rows(), forecast.mean.cols()),
        })
    }
}

/// Mean loss over all points of the batch.
pub fn loss_value(kind: LossKind, truth: &Matrix, forecast: &Forecast) -> Result<f64, LossError> {
    check_shapes(truth, forecast)?;
    let n = truth.data().len() as f64;
    let mean = forecast.mean.data();
    let t = truth.data();
    let value = match kind {
        LossKind::L1 => t.iter().zip(mean).map(|(y, p)| (y - p).abs()).sum::<f64>() / n,
        LossKind::Mse => t.iter().zip(mean).map(|(y, p)| (y - p) * (y - p)).sum::<f64>() / n,
        LossKind::Gll => {
            let scale = forecast.scale.as_ref().ok_or(LossError::MissingScale)?;
            let mut sum = 0.0;
            for ((y, mu), s) in t.iter().zip(mean).zip(scale.data()) {
                if *s <= 0.0 {
                    return Err(LossError::NonPositiveScale(*s));
                }
                let z = y - mu;
                sum += 0.5 * (2.0 * std::f64::consts::PI * s * s).ln() + z * z / (2.0 * s * s);
            }
            sum / n
        }
        LossKind::Tweedie { rho } => {
            let mut sum = 0.0;
            for (y, m) in t.iter().zip(mean) {
                if *m <= 0.0 {
                    return Err(LossError::NonPositiveTweedieMean(*m));
                }
                if *y < 0.0 {
                    return Err(LossError::NegativeTweedieTarget(*y));
                }
                sum += -y * m.powf(1.0 - rho) / (1.0 - rho) + m.powf(2.0 - rho) / (2.0 - rho);
            }
            sum / n
        }
    };
    Ok(value)
}

/// Analytic gradient of [`loss_value`] with respect to the model output.
///
/// The L1 subgradient at zero residual is taken as 0.
pub fn loss_gradient(
    kind: LossKind,
    truth: &Matrix,
    forecast: &Forecast,
) -> Result<ForecastGrad, LossError> {
    check_shapes(truth, forecast)?;
    let n = truth.data().len() as f64;
    let rows = truth.rows();
    let cols = truth.cols();
    let mean = forecast.mean.data();
    let t = truth.data();
    let mut d_mean = vec![0.0; t.len()];
    let mut d_scale = None;
    match kind {
        LossKind::L1 => {
            for (d, (y, p)) in d_mean.iter_mut().zip(t.iter().zip(mean)) {
                *d = if p > y {
                    1.0 / n
                } else if p < y {
                    -1.0 / n
                } else {
                    0.0
                };
            }
        }
        LossKind::Mse => {
            for (d, (y, p)) in d_mean.iter_mut().zip(t.iter().zip(mean)) {
                *d = 2.0 * (p - y) / n;
            }
        }
        LossKind::Gll => {
            let scale = forecast.scale.as_ref().ok_or(LossError::MissingScale)?;
            let mut ds = vec![0.0; t.len()];
            for i in 0..t.len() {
                let s = scale.data()[i];
                if s <= 0.0 {
                    return Err(LossError::NonPositiveScale(s));
                }
                let z = mean[i] - t[i];
                d_mean[i] = z / (s * s) / n;
                ds[i] = (1.0 / s - z * z / (s * s * s)) / n;
            }
            d_scale = Some(Matrix::from_vec(rows, cols, ds));
        }
        LossKind::Tweedie { rho } => {
            for i in 0..t.len() {
                let m = mean[i];
                if m <= 0.0 {
                    return Err(LossError::NonPositiveTweedieMean(m));
                }
                if t[i] < 0.0 {
                    return Err(LossError::NegativeTweedieTarget(t[i]));
                }
                d_mean[i] = (-t[i] * m.powf(-rho) + m.powf(1.0 - rho)) / n;
            }
        }
    }
    Ok(ForecastGrad { d_mean: Matrix::from_vec(rows, cols, d_mean), d_scale })
}
