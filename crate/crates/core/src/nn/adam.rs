//! Bias-corrected Adam.

use serde::{Deserialize, Serialize};

use super::NnError;

/// Optimizer state: first/second moment estimates plus the step counter.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdamState {
    pub m: Vec<f64>,
    pub v: Vec<f64>,
    pub t: u64,
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl AdamState {
    pub fn new(param_count: usize, learning_rate: f64) -> Self {
        Self {
            m: vec![0.0; param_count],
            v: vec![0.0; param_count],
            t: 0,
            learning_rate,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

/// One Adam update in place. Rejects non-finite gradients so the training
/// loop can convert them into a failed trial instead of corrupting state.
pub fn adam_step(params: &mut [f64], grads: &[f64], state: &mut AdamState) -> Result<(), NnError> {
    if params.len() != grads.len() || params.len() != state.m.len() {
        return Err(NnError::ShapeMismatch {
            context: "adam_step",
            detail: format!(
                "params {}, grads {}, state {}",
                params.len(),
                grads.len(),
                state.m.len()
            ),
        });
    }
    if grads.iter().any(|g| !g.is_finite()) {
        return Err(NnError::NonFiniteGradient);
    }
    state.t += 1;
    let b1 = state.beta1;
    let b2 = state.beta2;
    let bias1 = 1.0 - b1.powi(state.t as i32);
    let bias2 = 1.0 - b2.powi(state.t as i32);
    let lr = state.learning_rate;
    for i in 0..params.len() {
        let g = grads[i];
        state.m[i] = b1 * state.m[i] + (1.0 - b1) * g;
        state.v[i] = b2 * state.v[i] + (1.0 - b2) * g * g;
        let m_hat = state.m[i] / bias1;
        let v_hat = state.v[i] / bias2;
        params[i] -= lr * m_hat / (v_hat.sqrt() + state.eps);
    }
    Ok(())
}
