//! The log-barrier profile and its pointwise certificates.
//!
//! The profile `g(t) = log((2 + eps c) / (2 + 4 c t))` composed with a
//! signed distance function is the workhorse of every estimate here. Its
//! derivatives are rational:
//!
//! ```text
//! g'(t)  = -2c / (1 + 2ct)        g''(t) = 4c^2 / (1 + 2ct)^2 = (g')^2
//! ```
//!
//! and the Hessian of `F = g o t` in ambient space has eigenvalues
//! `mu_i = -g'(t) kappa_i^t` on the principal directions of the parallel
//! surface and `mu_3 = g''(t)` on the normal. Certificates check the
//! resulting trace bounds against finite-difference surface Laplacians.

mod boundary;
mod certify;
mod hessian;
mod slice;

pub use boundary::{boundary_distance_report, BoundaryReport};
pub use certify::{
    certify_cmc, certify_minimal, cmc_lambda_threshold, laplace_beltrami, BarrierCertificate,
    CertifyOptions, CertifyReport, CmcReport, SkipReason,
};
pub use hessian::{hessian_eigenvalues, subspace_trace};
pub use slice::{slice_estimate, SliceEstimate, SliceEstimateInput};

use crate::surfgeo::GeomError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BarrierError {
    #[error("profile contract violated: {0}")]
    Contract(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("surface is not well-oriented: {0}")]
    NotWellOriented(String),
}

/// The barrier profile `g(t) = log((2 + eps c)/(2 + 4 c t))` for a tube of
/// radius `eps` around a surface with principal curvatures bounded by `c`.
///
/// Invariants: `eps > 0`, `c >= 0`, `2 eps c <= 1`. Consequences used all
/// over: `g(eps/4) = 0`, `g` decreasing, and the exact identity
/// `g'' = (g')^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierProfile {
    epsilon: f64,
    c: f64,
}

impl BarrierProfile {
    pub fn new(epsilon: f64, c: f64) -> Result<Self, BarrierError> {
        if !(epsilon > 0.0) || !(c >= 0.0) {
            return Err(BarrierError::Contract(format!(
                "need eps > 0 and c >= 0, got eps = {epsilon}, c = {c}"
            )));
        }
        if 2.0 * epsilon * c > 1.0 + 1e-15 {
            return Err(BarrierError::Contract(format!(
                "need 2 eps c <= 1, got {}",
                2.0 * epsilon * c
            )));
        }
        Ok(BarrierProfile { epsilon, c })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn g(&self, t: f64) -> f64 {
        ((2.0 + self.epsilon * self.c) / (2.0 + 4.0 * self.c * t)).ln()
    }

    /// `g'(t) = -2c/(1 + 2ct)`, nonpositive.
    pub fn g1(&self, t: f64) -> f64 {
        -2.0 * self.c / (1.0 + 2.0 * self.c * t)
    }

    /// `g''(t) = 4c^2/(1 + 2ct)^2`.
    pub fn g2(&self, t: f64) -> f64 {
        let d = 1.0 + 2.0 * self.c * t;
        4.0 * self.c * self.c / (d * d)
    }

    /// True when `t` lies in the certified band `0 < 2t <= eps`.
    pub fn in_band(&self, t: f64) -> bool {
        t > 0.0 && 2.0 * t <= self.epsilon
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn profile_identities() {
        // g(eps/4) = 0 and g'' = (g')^2, randomized over admissible (eps, c, t)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let c = rng.gen_range(0.05..4.0);
            let eps = rng.gen_range(0.01..1.0 / (2.0 * c));
            let p = BarrierProfile::new(eps, c).unwrap();
            assert!(p.g(eps / 4.0).abs() <= 1e-14);
            let t = rng.gen_range(1e-6..eps / 2.0);
            let lhs = p.g2(t);
            let rhs = p.g1(t) * p.g1(t);
            assert!(
                (lhs - rhs).abs() <= 1e-12 * lhs.abs(),
                "g'' = {lhs}, (g')^2 = {rhs}"
            );
            // decreasing
            assert!(p.g(t) > p.g(t * 1.5));
            assert!(p.g1(t) < 0.0);
        }
    }

    #[test]
    fn contract_rejections() {
        assert!(BarrierProfile::new(0.6, 1.0).is_err()); // 2 eps c = 1.2
        assert!(BarrierProfile::new(-0.1, 1.0).is_err());
        assert!(BarrierProfile::new(0.4, -1.0).is_err());
        assert!(BarrierProfile::new(0.5, 1.0).is_ok()); // boundary 2 eps c = 1
    }

    #[test]
    fn flat_profile_is_identically_zero() {
        let p = BarrierProfile::new(3.0, 0.0).unwrap();
        for t in [0.0, 0.5, 2.9] {
            assert_eq!(p.g(t), 0.0);
            assert_eq!(p.g1(t), 0.0);
            assert_eq!(p.g2(t), 0.0);
        }
    }
}
