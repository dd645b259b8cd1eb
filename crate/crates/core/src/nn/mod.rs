//! Minimal dense-network computation engine.
//!
//! Matrices, fully-connected layers, dropout, reverse-accumulation
//! gradients, Adam, and parameter snapshots — just enough substrate to
//! express the model zoo with no external ML dependency. All arithmetic is
//! f64 and every random draw flows through a caller-supplied seeded RNG, so
//! training trajectories are reproducible bit for bit.

mod adam;
mod dense;
mod dropout;
mod gradcheck;
mod matrix;
mod params;

pub use adam::{adam_step, AdamState};
pub use dense::{
    dense_backward, dense_forward, init_dense, sigmoid, softplus, Activation, DenseCache,
    DenseGrads,
};
pub use dropout::{dropout, dropout_backward, DropoutMask};
pub use gradcheck::finite_difference_check;
pub use matrix::Matrix;
pub use params::{
    read_checkpoint, write_checkpoint, CheckpointHeader, ParamLayout, ParamSlice, ParamVector,
};

/// Errors from the network engine.
#[derive(Debug, thiserror::Error)]
pub enum NnError {
    #[error("shape mismatch in {context}: {detail}")]
    ShapeMismatch { context: &'static str, detail: String },

    #[error("non-finite gradient")]
    NonFiniteGradient,

    #[error("dropout rate {0} outside [0, 1)")]
    InvalidDropoutRate(f64),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
