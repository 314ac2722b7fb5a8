//! Closed forms for the error-function surface.
//!
//! For `f = 2/sqrt(pi) exp(r1 z^2)`, `g = exp(-r2 z^2)` the Weierstrass
//! integrals evaluate in terms of erf and erfi. Two parameter regimes are
//! admissible, distinguished by the sign of `r2 - r1`, which decides whether
//! the height coordinate goes through erf or erfi.

use super::limit::{limit_probe, LimitProbe};
use crate::cnum::{erf_checked, erfi_checked, Complex};
use crate::surfgeo::{GeomError, V3};

/// The error-function surface with its closed-form evaluation.
#[derive(Debug, Clone, Copy)]
pub struct ErfSurface {
    pub r1: f64,
    pub r2: f64,
}

/// Sector-bound constants for the curvature decay estimate away from the
/// diagonals: outside the four sectors of half-width `eps_tilde` around
/// `theta = (2k-1) pi/4`, the curvature satisfies
/// `K(t e^{i theta}) > -A t^2 exp(-B t^2)`; inside them,
/// `K <= -A t^2 exp(-C t^2)` fails to flatten and `K -> -inf`.
#[derive(Debug, Clone, Copy)]
pub struct SectorConstants {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl ErfSurface {
    pub fn new(r1: f64, r2: f64) -> Result<Self, GeomError> {
        let erf_regime = r2 > r1 && r1 > 0.0;
        let erfi_regime = 2.0 * r2 > r1 && r1 > r2 && r2 > 0.0;
        if !erf_regime && !erfi_regime {
            return Err(GeomError::Invalid(format!(
                "parameters (r1, r2) = ({r1}, {r2}) outside both regimes \
                 r2 > r1 > 0 and 2 r2 > r1 > r2 > 0"
            )));
        }
        Ok(ErfSurface { r1, r2 })
    }

    /// True when the height coordinate is an erf (first regime `r2 > r1`).
    pub fn erf_regime(&self) -> bool {
        self.r2 > self.r1
    }

    /// Closed-form immersion: the `C x R` splitting
    /// `(erfi(sqrt(r1) conj z)/(2 sqrt r1) - erf(sqrt(2 r2 - r1) z)/(2 sqrt(2 r2 - r1)),
    ///   Re[erf(sqrt(r2-r1) z)]/sqrt(r2-r1))` (or the erfi variant).
    ///
    /// Errors on saturation of the underlying error functions.
    pub fn chi(&self, z: Complex) -> Result<V3, GeomError> {
        let s1 = self.r1.sqrt();
        let s2 = (2.0 * self.r2 - self.r1).sqrt();
        let a = erfi_checked(s1 * z.conj());
        let b = erf_checked(s2 * z);
        let horizontal = a.value / (2.0 * s1) - b.value / (2.0 * s2);
        let (vertical, vsat) = if self.erf_regime() {
            let s3 = (self.r2 - self.r1).sqrt();
            let e = erf_checked(s3 * z);
            (e.value.re / s3, e.saturated)
        } else {
            let s3 = (self.r1 - self.r2).sqrt();
            let e = erfi_checked(s3 * z);
            (e.value.re / s3, e.saturated)
        };
        if a.saturated || b.saturated || vsat {
            return Err(GeomError::Invalid(format!(
                "closed form saturated at z = {z}"
            )));
        }
        Ok(V3::new(horizontal.re, horizontal.im, vertical))
    }

    /// Conformal factor `lambda = exp(r1 u)(1 + exp(-2 r2 u))/sqrt(pi)`,
    /// `u = Re z^2`.
    pub fn conformal_factor(&self, z: Complex) -> f64 {
        let u = (z * z).re;
        (self.r1 * u).exp() * (1.0 + (-2.0 * self.r2 * u).exp()) / std::f64::consts::PI.sqrt()
    }

    /// Closed-form Gauss curvature
    /// `K = -[4 sqrt(pi) r2 |z| / (e^{(r1+r2) u/2} + e^{-(3 r2 - r1) u/2})^2]^2`.
    pub fn curvature_closed(&self, z: Complex) -> f64 {
        let u = (z * z).re;
        let t = z.norm();
        let den = (0.5 * (self.r1 + self.r2) * u).exp()
            + (-0.5 * (3.0 * self.r2 - self.r1) * u).exp();
        let root = 4.0 * std::f64::consts::PI.sqrt() * self.r2 * t / (den * den);
        -(root * root)
    }

    /// Constants of the sector decay bounds for sector half-width `eps_tilde`.
    pub fn sector_constants(&self, eps_tilde: f64) -> SectorConstants {
        let cosf = (std::f64::consts::FRAC_PI_2 - 2.0 * eps_tilde).cos();
        SectorConstants {
            a: 16.0 * std::f64::consts::PI * self.r2 * self.r2,
            b: (self.r1 + self.r2) * cosf,
            c: (3.0 * self.r2 - self.r1) * cosf,
        }
    }

    /// Whether `theta` lies inside the union of the four diagonal sectors
    /// of half-width `eps_tilde`.
    pub fn in_diagonal_sector(theta: f64, eps_tilde: f64) -> bool {
        let tau = std::f64::consts::TAU;
        let th = theta.rem_euclid(tau);
        (0..4).any(|i| {
            let center = (2 * i + 1) as f64 * std::f64::consts::FRAC_PI_4;
            let mut d = (th - center).abs();
            d = d.min(tau - d);
            d < eps_tilde
        })
    }

    /// The four limit points `q_{k pi/4}`, `k = 1, 3, 5, 7`, in that order.
    /// Closed forms exist in the erf regime (`r2 > r1`).
    pub fn limit_points(&self) -> Result<[V3; 4], GeomError> {
        if !self.erf_regime() {
            return Err(GeomError::Invalid(
                "closed-form limit points require the regime r2 > r1".into(),
            ));
        }
        let p = 0.5 / (2.0 * self.r2 - self.r1).sqrt();
        let q = 0.5 / self.r1.sqrt();
        let r = 1.0 / (self.r2 - self.r1).sqrt();
        Ok([
            V3::new(-p, -q, r),
            V3::new(p, -q, -r),
            V3::new(p, q, -r),
            V3::new(-p, q, r),
        ])
    }

    /// Probe the ray `gamma_theta(t) = t e^{i theta}` through the closed form.
    pub fn limit_probe(&self, theta: f64, t_list: &[f64], tol: f64) -> LimitProbe {
        limit_probe(|z| self.chi(z), theta, t_list, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weierstrass::WeierstrassData;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn regimes_enforced() {
        assert!(ErfSurface::new(1.0, 5.0).is_ok()); // erf regime
        assert!(ErfSurface::new(1.5, 1.0).is_ok()); // erfi regime
        assert!(ErfSurface::new(5.0, 1.0).is_err()); // r1 >= 2 r2
        assert!(ErfSurface::new(-1.0, 5.0).is_err());
        assert!(ErfSurface::new(1.0, 1.0).is_err()); // r1 = r2 degenerate
    }

    #[test]
    fn chi_at_origin_is_origin() {
        let s = ErfSurface::new(1.0, 5.0).unwrap();
        assert_eq!(s.chi(c(0.0, 0.0)).unwrap(), V3::zeros());
        let s = ErfSurface::new(1.5, 1.0).unwrap();
        assert_eq!(s.chi(c(0.0, 0.0)).unwrap(), V3::zeros());
    }

    #[test]
    fn closed_form_equals_quadrature() {
        // r1 = 1, r2 = 5 at z = 0.4: the spec's oracle-equivalence point,
        // plus off-axis samples
        let s = ErfSurface::new(1.0, 5.0).unwrap();
        let data = WeierstrassData::erf_example(1.0, 5.0);
        for z in [c(0.4, 0.0), c(0.3, 0.0), c(1.0, 0.5), c(-0.7, 1.1)] {
            let closed = s.chi(z).unwrap();
            let quad = data.immerse(z, 1e-12).unwrap();
            assert!(
                (closed - quad).norm() <= 1e-8,
                "mismatch {} at {z}",
                (closed - quad).norm()
            );
        }
    }

    #[test]
    fn erfi_regime_closed_form_equals_quadrature() {
        let s = ErfSurface::new(1.5, 1.0).unwrap();
        let data = WeierstrassData::erf_example(1.5, 1.0);
        for z in [c(0.5, 0.0), c(0.4, -0.6)] {
            let closed = s.chi(z).unwrap();
            let quad = data.immerse(z, 1e-12).unwrap();
            assert!(
                (closed - quad).norm() <= 1e-8,
                "mismatch {} at {z}",
                (closed - quad).norm()
            );
        }
    }

    #[test]
    fn reference_value_at_04() {
        // 40-digit reference: chi(0.4) for r1 = 1, r2 = 5
        let s = ErfSurface::new(1.0, 5.0).unwrap();
        let chi = s.chi(c(0.4, 0.0)).unwrap();
        assert!((chi.x - 0.08659332345406394948).abs() < 1e-14);
        assert!(chi.y.abs() < 1e-15);
        assert!((chi.z - 0.3710504823538302563).abs() < 1e-14);
    }

    #[test]
    fn curvature_closed_form_matches_weierstrass() {
        let s = ErfSurface::new(1.0, 5.0).unwrap();
        let data = WeierstrassData::erf_example(1.0, 5.0);
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..500 {
            let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let closed = s.curvature_closed(z);
            let std_form = data.gauss_curvature(z).unwrap();
            assert!(
                (closed - std_form).abs() <= 1e-10 * (1.0 + closed.abs()),
                "closed {closed} vs standard {std_form} at {z}"
            );
        }
        // reference spot value: K(0.3) at 40 digits
        assert!((s.curvature_closed(c(0.3, 0.0)) + 9.812266880030163197).abs() < 1e-12);
    }

    #[test]
    fn curvature_vanishes_at_origin() {
        let s = ErfSurface::new(1.0, 5.0).unwrap();
        assert_eq!(s.curvature_closed(c(0.0, 0.0)), 0.0);
    }

    #[test]
    fn diagonal_curvature_is_minus_pi_r2_sq_t_sq() {
        // Re z^2 = 0 on the diagonal: K = -pi r2^2 t^2 = -25 pi t^2
        let s = ErfSurface::new(1.0, 5.0).unwrap();
        for t in [1.0, 2.0, 4.0] {
            let z = Complex::from_polar(t, std::f64::consts::FRAC_PI_4);
            let want = -25.0 * std::f64::consts::PI * t * t;
            let got = s.curvature_closed(z);
            assert!(
                (got - want).abs() <= 1e-10 * want.abs(),
                "K({t} e^(i pi/4)) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn metric_lower_bound_strict() {
        // lambda sqrt(pi) >= 1, strict margin, on random z
        let s = ErfSurface::new(1.0, 5.0).unwrap();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..2000 {
            let z = c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let margin = s.conformal_factor(z) * std::f64::consts::PI.sqrt() - 1.0;
            assert!(margin >= 0.0, "metric bound violated at {z}: {margin}");
        }
    }

    #[test]
    fn sector_membership() {
        use std::f64::consts::PI;
        assert!(ErfSurface::in_diagonal_sector(PI / 4.0, 0.2));
        assert!(ErfSurface::in_diagonal_sector(7.0 * PI / 4.0 + 0.1, 0.2));
        assert!(!ErfSurface::in_diagonal_sector(0.0, 0.2));
        assert!(!ErfSurface::in_diagonal_sector(PI / 2.0, 0.2));
    }

    #[test]
    fn sector_bound_off_diagonals() {
        // K(t e^{i theta}) > -A t^2 exp(-B t^2) for theta outside the sectors
        let s = ErfSurface::new(1.0, 5.0).unwrap();
        let k = s.sector_constants(0.2);
        let mut checked = 0;
        for it in 1..=12 {
            let t = 0.25 * it as f64;
            for ith in 0..72 {
                let theta = ith as f64 * std::f64::consts::TAU / 72.0;
                if ErfSurface::in_diagonal_sector(theta, 0.2) {
                    continue;
                }
                let kv = s.curvature_closed(Complex::from_polar(t, theta));
                let bound = -k.a * t * t * (-k.b * t * t).exp();
                assert!(kv > bound, "K = {kv} <= bound {bound} at t={t}, theta={theta}");
                checked += 1;
            }
        }
        assert!(checked > 500);
    }

    #[test]
    fn limit_points_instantiated() {
        let s = ErfSurface::new(1.0, 5.0).unwrap();
        let q = s.limit_points().unwrap();
        let sixth = 1.0 / 6.0;
        assert!((q[0] - V3::new(-sixth, -0.5, 0.5)).norm() < 1e-15);
        assert!((q[1] - V3::new(sixth, -0.5, -0.5)).norm() < 1e-15);
        assert!((q[2] - V3::new(sixth, 0.5, -0.5)).norm() < 1e-15);
        assert!((q[3] - V3::new(-sixth, 0.5, 0.5)).norm() < 1e-15);
    }
}
