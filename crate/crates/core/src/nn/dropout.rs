//! Inverted dropout.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::matrix::Matrix;
use super::NnError;

/// Dropout mask paired with its keep-scaling, reused by the backward pass.
#[derive(Debug, Clone)]
pub struct DropoutMask {
    /// Per-element multiplier: 0 for dropped, 1/(1−rate) for kept.
    pub scale: Vec<f64>,
}

/// Training-mode dropout: zero each element with probability `rate` and
/// scale survivors by 1/(1−rate). `rate == 0` is the identity. Evaluation
/// mode simply skips the call.
pub fn dropout(input: &Matrix, rate: f64, rng: &mut ChaCha8Rng) -> Result<(Matrix, DropoutMask), NnError> {
    if !(0.0..1.0).contains(&rate) {
        return Err(NnError::InvalidDropoutRate(rate));
    }
    if rate == 0.0 {
        let mask = DropoutMask { scale: vec![1.0; input.data().len()] };
        return Ok((input.clone(), mask));
    }
    let keep_scale = 1.0 / (1.0 - rate);
    let scale: Vec<f64> = (0..input.data().len())
        .map(|_| if rng.gen::<f64>() < rate { 0.0 } else { keep_scale })
        .collect();
    let mut out = input.clone();
    for (v, &s) in out.data_mut().iter_mut().zip(&scale) {
        *v *= s;
    }
    Ok((out, DropoutMask { scale }))
}

/// Backward through a dropout mask: same elementwise multiplier.
pub fn dropout_backward(grad_output: &Matrix, mask: &DropoutMask) -> Matrix {
    let mut out = grad_output.clone();
    for (v, &s) in out.data_mut().iter_mut().zip(&mask.scale) {
        *v *= s;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn rate_zero_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let input = Matrix::from_vec(2, 2, vec![1., 2., 3., 4.]);
        let (out, _) = dropout(&input, 0.0, &mut rng).unwrap();
        assert_eq!(out.data(), input.data());
    }

    #[test]
    fn rate_one_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let input = Matrix::zeros(1, 1);
        assert!(dropout(&input, 1.0, &mut rng).is_err());
        assert!(dropout(&input, -0.1, &mut rng).is_err());
    }

    #[test]
    fn survivor_fraction_concentrates_at_keep_probability() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let input = Matrix::from_vec(100, 1000, vec![1.0; 100_000]);
        let (out, _) = dropout(&input, 0.5, &mut rng).unwrap();
        let survivors = out.data().iter().filter(|&&v| v != 0.0).count();
        let fraction = survivors as f64 / 100_000.0;
        assert!((fraction - 0.5).abs() < 0.01, "fraction {fraction}");
        // survivors carry the inverted scale
        assert!(out.data().iter().all(|&v| v == 0.0 || (v - 2.0).abs() < 1e-15));
    }

    #[test]
    fn same_seed_same_mask() {
        let input = Matrix::from_vec(4, 4, (0..16).map(|i| i as f64).collect());
        let mut r1 = ChaCha8Rng::seed_from_u64(42);
        let mut r2 = ChaCha8Rng::seed_from_u64(42);
        let (a, _) = dropout(&input, 0.3, &mut r1).unwrap();
        let (b, _) = dropout(&input, 0.3, &mut r2).unwrap();
        assert_eq!(a.data(), b.data());
    }
}
