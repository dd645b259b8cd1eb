//! Central finite-difference verification of analytic gradients.

/// Compares `analytic` against central differences of `loss_at` around
/// `params` and returns the maximum relative deviation over coordinates.
///
/// The denominator is floored so that near-zero gradient pairs compare
/// absolutely instead of dividing by noise.
pub fn finite_difference_check(
    mut loss_at: impl FnMut(&[f64]) -> f64,
    params: &[f64],
    analytic: &[f64],
    step: f64,
) -> f64 {
    assert_eq!(params.len(), analytic.len(), "gradient length mismatch");
    let mut point = params.to_vec();
    let mut worst: f64 = 0.0;
    for i in 0..point.len() {
        let orig = point[i];
        point[i] = orig + step;
        let plus = loss_at(&point);
        point[i] = orig - step;
        let minus = loss_at(&point);
        point[i] = orig;
        let fd = (plus - minus) / (2.0 * step);
        let denom = fd.abs().max(analytic[i].abs()).max(1e-8);
        worst = worst.max((fd - analytic[i]).abs() / denom);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_is_exact_under_central_differences() {
        // f(w) = Σ (w_i − c_i)²; gradient 2(w − c). Central differences are
        // exact for quadratics up to rounding.
        let params = [0.3, -1.2, 2.0];
        let c = [1.0, 0.5, -0.5];
        let f = |w: &[f64]| w.iter().zip(&c).map(|(wi, ci)| (wi - ci) * (wi - ci)).sum::<f64>();
        let analytic: Vec<f64> = params.iter().zip(&c).map(|(w, ci)| 2.0 * (w - ci)).collect();
        let err = finite_difference_check(f, &params, &analytic, 1e-5);
        assert!(err <= 1e-8, "err {err}");
    }

    #[test]
    fn transcendental_within_default_tolerance() {
        let params = [0.7, -0.4];
        let f = |w: &[f64]| (w[0].sin() * w[1].exp()).powi(2);
        let g0 = 2.0 * params[0].sin() * params[1].exp().powi(2) * params[0].cos();
        let g1 = 2.0 * (params[0].sin() * params[1].exp()).powi(2);
        let err = finite_difference_check(f, &params, &[g0, g1], 1e-5);
        assert!(err <= 1e-4, "err {err}");
    }

    #[test]
    fn corrupted_gradient_is_detected() {
        let params = [0.3, -1.2];
        let f = |w: &[f64]| w.iter().map(|wi| wi * wi).sum::<f64>();
        let corrupted: Vec<f64> = params.iter().map(|w| 2.0 * w * 1.5).collect();
        let err = finite_difference_check(f, &params, &corrupted, 1e-5);
        assert!(err > 1e-2, "harness failed to flag corrupted gradient: {err}");
    }
}
