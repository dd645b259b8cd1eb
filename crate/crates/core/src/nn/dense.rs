//! Fully-connected layers with hand-written reverse-mode gradients.
//!
//! There is no autodiff graph: the layer vocabulary is fixed (dense,
//! ReLU/softplus, dropout, residual add, basis projection) and every
//! backward pass is written against the forward cache it consumes.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::matrix::Matrix;
use super::NnError;

/// Activation applied after the affine map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activation {
    Relu,
    Identity,
    Softplus,
}

impl Activation {
    fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Relu => x.max(0.0),
            Activation::Identity => x,
            Activation::Softplus => softplus(x),
        }
    }

    /// Derivative as a function of the pre-activation value.
    /// The ReLU subgradient at 0 is taken as 0.
    fn derivative(self, pre: f64) -> f64 {
        match self {
            Activation::Relu => {
                if pre > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Identity => 1.0,
            Activation::Softplus => sigmoid(pre),
        }
    }
}

/// Numerically stable ln(1 + e^x).
pub fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Values retained by [`dense_forward`] for the backward pass.
#[derive(Debug, Clone)]
pub struct DenseCache {
    pub input: Matrix,
    pub pre_activation: Matrix,
    pub activation: Activation,
}

/// `act(input · W + b)` where `input` is `(batch × in)`, `weights` is
/// row-major `(in × out)` and `bias` has length `out`.
pub fn dense_forward(
    input: &Matrix,
    weights: &Matrix,
    bias: &[f64],
    activation: Activation,
) -> Result<(Matrix, DenseCache), NnError> {
    if input.cols() != weights.rows() || bias.len() != weights.cols() {
        return Err(NnError::ShapeMismatch {
            context: "dense_forward",
            detail: format!(
                "input {}x{}, weights {}x{}, bias {}",
                input.rows(),
                input.cols(),
                weights.rows(),
                weights.cols(),
                bias.len()
            ),
        });
    }
    let mut pre = input.matmul(weights);
    pre.add_row_bias(bias);
    let out = match activation {
        Activation::Identity => pre.clone(),
        _ => pre.map(|v| activation.apply(v)),
    };
    Ok((out, DenseCache { input: input.clone(), pre_activation: pre, activation }))
}

/// Gradients of a dense layer given the upstream gradient at its output.
pub struct DenseGrads {
    pub d_weights: Matrix,
    pub d_bias: Vec<f64>,
    pub d_input: Matrix,
}

/// Reverse pass matching [`dense_forward`].
pub fn dense_backward(grad_output: &Matrix, weights: &Matrix, cache: &DenseCache) -> DenseGrads {
    // dPre = dOut ∘ act'(pre)
    let d_pre = match cache.activation {
        Activation::Identity => grad_output.clone(),
        act => {
            let mut d = grad_output.clone();
            for (dv, &p) in d.data_mut().iter_mut().zip(cache.pre_activation.data()) {
                *dv *= act.derivative(p);
            }
            d
        }
    };
    DenseGrads {
        d_weights: cache.input.tmatmul(&d_pre),
        d_bias: d_pre.col_sums(),
        d_input: d_pre.matmul_bt(weights),
    }
}

/// He-style uniform fan-in initialization: U(−√(6/fan_in), √(6/fan_in)).
pub fn init_dense(weights: &mut [f64], fan_in: usize, rng: &mut ChaCha8Rng) {
    let bound = (6.0 / fan_in as f64).sqrt();
    for w in weights.iter_mut() {
        *w = rng.gen_range(-bound..bound);
    }
}
