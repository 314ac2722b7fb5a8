//! Flat-ambient verification of the slice Laplacian estimate.
//!
//! For a slice `M x {s}` probing the tube of a hypersurface in `M x R+`,
//! the Laplacian of the barrier decomposes over an orthonormal frame
//! `{a_1..a_n, a_{n+1} = eta}` adapted to the parallel surface, with the
//! slice-normal direction expressed in spherical coordinates. Curvatures
//! here are signed so that the tangential Hessian of the distance function
//! is `+kappa_i^t` (the normal `eta` points away from the slice); in that
//! convention the supporting-surface relaxation reads
//! `sum_i kappa_i^t <= mu_relax`.

use super::BarrierError;

/// Inputs of one slice estimate. `g1`, `g2` are the profile derivatives at
/// the probe distance, `c` the parallel-curvature bound
/// (`c = max_i |kappa_i^t|`), and `theta` the `n` spherical angles of the
/// slice normal in the adapted frame.
#[derive(Debug, Clone)]
pub struct SliceEstimateInput {
    pub n: usize,
    pub g1: f64,
    pub g2: f64,
    pub c: f64,
    pub mu_relax: f64,
    pub theta: Vec<f64>,
    pub kappa_t: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct SliceEstimate {
    /// `mu_relax g' + (g'' + c g') sin^2 theta_1`.
    pub lower_bound: f64,
    /// `g' sum_i kappa_i^t (1 - lambda_{n+1,i}^2) + g'' (1 - lambda_{n+1,n+1}^2)`.
    pub direct_value: f64,
}

/// Components `lambda_{n+1,1..n+1}` of the slice normal from the spherical
/// angles: `lambda_{n+1,n+1} = cos t1`, `lambda_{n+1,n} = sin t1 cos t2`, ...,
/// `lambda_{n+1,1} = sin t1 ... sin t_n`.
pub fn spherical_components(theta: &[f64]) -> Vec<f64> {
    let n = theta.len();
    let mut w = vec![0.0; n + 1];
    w[n] = theta[0].cos();
    let mut running = theta[0].sin();
    for k in 1..n {
        w[n - k] = running * theta[k].cos();
        running *= theta[k].sin();
    }
    w[0] = running;
    w
}

/// Evaluate the direct slice Laplacian and its spherical-coordinate lower
/// bound.
///
/// Contract: with `|kappa_i^t| <= c` and the parallel-mean-curvature
/// relaxation `sum_i kappa_i^t <= mu_relax` (the flat-ambient form of the
/// monotonicity + supporting-surface hypotheses), `direct_value >=
/// lower_bound`. Violating `|kappa_i^t| <= c` is a contract error;
/// the mean-curvature condition is the caller's to arrange and is simply
/// reported through the returned values when it fails.
pub fn slice_estimate(input: &SliceEstimateInput) -> Result<SliceEstimate, BarrierError> {
    let n = input.n;
    if !(2..=4).contains(&n) {
        return Err(BarrierError::Contract(format!(
            "flat-ambient verification covers n in 2..=4, got {n}"
        )));
    }
    if input.theta.len() != n || input.kappa_t.len() != n {
        return Err(BarrierError::Contract(format!(
            "need {n} angles and {n} curvatures, got {} and {}",
            input.theta.len(),
            input.kappa_t.len()
        )));
    }
    for &k in &input.kappa_t {
        if k.abs() > input.c * (1.0 + 1e-12) {
            return Err(BarrierError::Contract(format!(
                "|kappa_t| = {} exceeds the bound c = {}",
                k.abs(),
                input.c
            )));
        }
    }
    let w = spherical_components(&input.theta);
    let norm: f64 = w.iter().map(|x| x * x).sum();
    debug_assert!((norm - 1.0).abs() < 1e-12);

    let mut tangential = 0.0;
    for (i, &kt) in input.kappa_t.iter().enumerate() {
        tangential += kt * (1.0 - w[i] * w[i]);
    }
    let direct_value = input.g1 * tangential + input.g2 * (1.0 - w[n] * w[n]);

    let sin2 = 1.0 - w[n] * w[n]; // sin^2 theta_1 exactly
    let lower_bound = input.mu_relax * input.g1 + (input.g2 + input.c * input.g1) * sin2;

    Ok(SliceEstimate {
        lower_bound,
        direct_value,
    })
}
