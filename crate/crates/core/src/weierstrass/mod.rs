//! Minimal immersions from Weierstrass data and the two built-in examples.
//!
//! A holomorphic pair `(f, g)` generates the immersion
//! `chi(z) = Re \int_base^z (f(1-g^2)/2, i f(1+g^2)/2, f g) dz`.
//! The derivative data of the integrand gives the whole two-jet of the
//! immersion without extra quadrature, so curvature and conformal-factor
//! evaluation is exact up to the expression arithmetic.

mod enneper;
mod erf_surface;
mod limit;

pub use enneper::{EnneperImmersion, EnneperParams};
pub use erf_surface::ErfSurface;
pub use limit::{geometric_ts, limit_probe, LimitProbe, LimitVerdict};

use crate::cnum::{integrate, Complex, HolomorphicExpr, PathSpec, QuadError};
use crate::surfgeo::{GeomError, Patch, PatchJet, V3};

/// Weierstrass data: holomorphic `f`, Gauss-map projection `g`, and the
/// base point integration starts from.
#[derive(Debug, Clone)]
pub struct WeierstrassData {
    pub f: HolomorphicExpr,
    pub g: HolomorphicExpr,
    pub base: Complex,
    f_prime: HolomorphicExpr,
    g_prime: HolomorphicExpr,
}

/// Jet of an immersion at a parameter point: position, first partials,
/// conformal factor, unit normal, Gauss and mean curvature.
///
/// `mean` is the trace of the shape operator, computed from the full
/// (non-simplified) fundamental-form expressions so it reflects genuine
/// floating arithmetic rather than an identity that cancels symbolically.
#[derive(Debug, Clone)]
pub struct SurfaceJet {
    pub position: V3,
    pub chi_u: V3,
    pub chi_v: V3,
    pub lambda: f64,
    pub normal: V3,
    pub gauss: f64,
    pub mean: f64,
}

impl WeierstrassData {
    pub fn new(f: HolomorphicExpr, g: HolomorphicExpr, base: Complex) -> Self {
        let f_prime = f.derivative();
        let g_prime = g.derivative();
        WeierstrassData {
            f,
            g,
            base,
            f_prime,
            g_prime,
        }
    }

    /// The complete error-function example: `f = 2/sqrt(pi) exp(r1 z^2)`,
    /// `g = exp(-r2 z^2)`, base point 0.
    pub fn erf_example(r1: f64, r2: f64) -> Self {
        use HolomorphicExpr as E;
        let z2 = E::Pow(Box::new(E::var()), Complex::new(2.0, 0.0));
        let f = E::real(2.0 / std::f64::consts::PI.sqrt())
            * E::Exp(Box::new(E::real(r1) * z2.clone()));
        let g = E::Exp(Box::new(E::real(-r2) * z2));
        WeierstrassData::new(f, g, Complex::new(0.0, 0.0))
    }

    /// The three components of the Weierstrass integrand at `z`.
    pub fn integrand(&self, z: Complex) -> [Complex; 3] {
        let f = self.f.eval(z);
        let g = self.g.eval(z);
        let gg = g * g;
        [
            0.5 * f * (1.0 - gg),
            Complex::new(0.0, 0.5) * f * (1.0 + gg),
            f * g,
        ]
    }

    /// z-derivative of the integrand, for second partials of the immersion.
    fn integrand_prime(&self, z: Complex) -> [Complex; 3] {
        let f = self.f.eval(z);
        let g = self.g.eval(z);
        let fp = self.f_prime.eval(z);
        let gp = self.g_prime.eval(z);
        let gg = g * g;
        [
            0.5 * (fp * (1.0 - gg) - 2.0 * f * g * gp),
            Complex::new(0.0, 0.5) * (fp * (1.0 + gg) + 2.0 * f * g * gp),
            fp * g + f * gp,
        ]
    }

    /// Position by quadrature along the straight segment from the base
    /// point (the integrands are entire, so the path does not matter).
    pub fn immerse(&self, z: Complex, tol: f64) -> Result<V3, QuadError> {
        if z == self.base {
            return Ok(V3::zeros());
        }
        let path = PathSpec::segment(self.base, z);
        let mut out = [0.0f64; 3];
        for (k, slot) in out.iter_mut().enumerate() {
            let r = integrate(|w| self.integrand(w)[k], &path, tol)?;
            *slot = r.value.re;
        }
        Ok(V3::new(out[0], out[1], out[2]))
    }

    /// Conformal factor `lambda = |f| (1 + |g|^2) / 2`.
    pub fn conformal_factor(&self, z: Complex) -> f64 {
        let f = self.f.eval(z).norm();
        let g2 = self.g.eval(z).norm_sqr();
        0.5 * f * (1.0 + g2)
    }

    /// Gauss curvature `K = -(4 |g'| / (|f| (1 + |g|^2)^2))^2 <= 0`.
    ///
    /// Errors at branch points of the metric (`lambda = 0`).
    pub fn gauss_curvature(&self, z: Complex) -> Result<f64, GeomError> {
        let f = self.f.eval(z).norm();
        let g2 = self.g.eval(z).norm_sqr();
        let gp = self.g_prime.eval(z).norm();
        let lambda = 0.5 * f * (1.0 + g2);
        if lambda <= 0.0 || !lambda.is_finite() {
            return Err(GeomError::Invalid(format!(
                "branch point: conformal factor {lambda} at z = {z}"
            )));
        }
        let root = 4.0 * gp / (f * (1.0 + g2) * (1.0 + g2));
        Ok(-(root * root))
    }

    /// Unit normal (the Gauss map): `(2 Re g, 2 Im g, |g|^2 - 1) / (1 + |g|^2)`.
    pub fn normal(&self, z: Complex) -> V3 {
        let g = self.g.eval(z);
        let g2 = g.norm_sqr();
        V3::new(2.0 * g.re, 2.0 * g.im, g2 - 1.0) / (1.0 + g2)
    }

    /// Differential part of the jet (everything except the position).
    fn differential_jet(&self, z: Complex) -> PatchJet {
        let phi = self.integrand(z);
        let dphi = self.integrand_prime(z);
        // chi = Re int phi: chi_u = Re phi, chi_v = -Im phi
        let re = |w: &[Complex; 3]| V3::new(w[0].re, w[1].re, w[2].re);
        let im = |w: &[Complex; 3]| V3::new(w[0].im, w[1].im, w[2].im);
        PatchJet {
            p: V3::zeros(),
            pu: re(&phi),
            pv: -im(&phi),
            puu: re(&dphi),
            puv: -im(&dphi),
            pvv: -re(&dphi),
        }
    }

    /// Full jet at `z`, with the position integrated to `tol`.
    pub fn jet(&self, z: Complex, tol: f64) -> Result<SurfaceJet, QuadError> {
        let position = self.immerse(z, tol)?;
        Ok(self.jet_with_position(z, position))
    }

    /// Jet with a caller-supplied position (used by tests that only need
    /// the differential data).
    pub fn jet_with_position(&self, z: Complex, position: V3) -> SurfaceJet {
        let jet = self.differential_jet(z);
        let e = jet.pu.dot(&jet.pu);
        let f1 = jet.pu.dot(&jet.pv);
        let g1 = jet.pv.dot(&jet.pv);
        let det = e * g1 - f1 * f1;
        let normal = self.normal(z);
        let ll = jet.puu.dot(&normal);
        let mm = jet.puv.dot(&normal);
        let nn = jet.pvv.dot(&normal);
        let mean = if det > 0.0 {
            (e * nn - 2.0 * f1 * mm + g1 * ll) / det
        } else {
            f64::NAN
        };
        let gauss = if det > 0.0 {
            (ll * nn - mm * mm) / det
        } else {
            f64::NAN
        };
        SurfaceJet {
            position,
            chi_u: jet.pu,
            chi_v: jet.pv,
            lambda: self.conformal_factor(z),
            normal,
            gauss,
            mean,
        }
    }
}

/// A Weierstrass immersion as a [`Patch`] over `(u, v) = (Re z, Im z)`.
///
/// Positions go through quadrature; on the (entire) built-in integrands the
/// adaptive rule always converges at the stored tolerance, and a failed
/// subdivision still carries its best estimate, which is used.
pub struct WeierstrassPatch {
    pub data: WeierstrassData,
    pub tol: f64,
}

impl WeierstrassPatch {
    pub fn new(data: WeierstrassData, tol: f64) -> Self {
        WeierstrassPatch { data, tol }
    }
}

impl Patch for WeierstrassPatch {
    fn jet(&self, u: f64, v: f64) -> PatchJet {
        let z = Complex::new(u, v);
        let mut jet = self.data.differential_jet(z);
        jet.p = self.position(u, v);
        jet
    }

    fn position(&self, u: f64, v: f64) -> V3 {
        let z = Complex::new(u, v);
        let path = PathSpec::segment(self.data.base, z);
        let mut out = [0.0f64; 3];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = match integrate(|w| self.data.integrand(w)[k], &path, self.tol) {
                Ok(r) => r.value.re,
                Err(QuadError::NoConvergence { estimate, .. }) => estimate.re,
                Err(_) => f64::NAN,
            };
        }
        V3::new(out[0], out[1], out[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnum::erfi;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn base_point_maps_to_origin() {
        let data = WeierstrassData::erf_example(1.0, 5.0);
        assert_eq!(data.immerse(c(0.0, 0.0), 1e-12).unwrap(), V3::zeros());
    }

    #[test]
    fn x3_matches_series_oracle() {
        // x3(z) = 2/sqrt(pi) Re int_0^z e^{(r1-r2) t^2} dt; at r1=1, r2=5,
        // z = 0.4 the series oracle for int e^{-4 t^2} gives the value.
        let data = WeierstrassData::erf_example(1.0, 5.0);
        let chi = data.immerse(c(0.4, 0.0), 1e-11).unwrap();
        // oracle: sum_k (-4)^k z^(2k+1) / (k! (2k+1)), 30 terms
        let z = 0.4f64;
        let mut sum = 0.0;
        let mut fact = 1.0;
        for k in 0..30u32 {
            if k > 0 {
                fact *= k as f64;
            }
            sum += (-4.0f64).powi(k as i32) * z.powi(2 * k as i32 + 1) / (fact * (2 * k + 1) as f64);
        }
        let oracle = 2.0 / std::f64::consts::PI.sqrt() * sum;
        assert!(
            (chi.z - oracle).abs() <= 1e-9,
            "x3 = {}, oracle = {oracle}",
            chi.z
        );
    }

    #[test]
    fn x2_vanishes_on_the_real_axis() {
        let data = WeierstrassData::erf_example(1.0, 5.0);
        for x in [0.2, 0.7, 1.1] {
            let chi = data.immerse(c(x, 0.0), 1e-12).unwrap();
            assert!(chi.y.abs() <= 1e-12, "x2({x}) = {}", chi.y);
        }
    }

    #[test]
    fn conformality_of_jets() {
        let data = WeierstrassData::erf_example(1.0, 5.0);
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..300 {
            let z = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            let jet = data.jet_with_position(z, V3::zeros());
            let lam2 = jet.lambda * jet.lambda;
            let defect =
                (jet.chi_u.norm() - jet.chi_v.norm()).abs() + jet.chi_u.dot(&jet.chi_v).abs();
            assert!(defect <= 1e-7 * lam2, "conformality defect {defect} at {z}");
            // metric formula: |chi_u| = lambda to relative 1e-9
            assert!(
                (jet.chi_u.norm() - jet.lambda).abs() <= 1e-9 * jet.lambda,
                "lambda mismatch at {z}"
            );
        }
    }

    #[test]
    fn minimality_and_nonpositive_curvature() {
        let data = WeierstrassData::erf_example(1.0, 5.0);
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let z = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            let jet = data.jet_with_position(z, V3::zeros());
            assert!(
                jet.mean.abs() <= 1e-6 * (1.0 + jet.gauss.abs()),
                "mean curvature {} at {z}",
                jet.mean
            );
            let k = data.gauss_curvature(z).unwrap();
            assert!(k <= 0.0);
            // jet's numerical K agrees with the closed form
            assert!(
                (jet.gauss - k).abs() <= 1e-8 * (1.0 + k.abs()),
                "K jet {} vs closed {k}",
                jet.gauss
            );
        }
    }

    #[test]
    fn normal_is_unit_gauss_map() {
        let data = WeierstrassData::erf_example(1.0, 5.0);
        let z = c(0.3, -0.8);
        let n = data.normal(z);
        assert!((n.norm() - 1.0).abs() < 1e-12);
        let jet = data.jet_with_position(z, V3::zeros());
        assert!(n.dot(&jet.chi_u).abs() < 1e-10 * jet.lambda);
        assert!(n.dot(&jet.chi_v).abs() < 1e-10 * jet.lambda);
    }

    #[test]
    fn path_independence_of_immersion() {
        // integrate 0 -> z directly and through a waypoint: equal
        let data = WeierstrassData::erf_example(1.0, 5.0);
        let z = c(0.8, 0.6);
        let direct = data.immerse(z, 1e-12).unwrap();
        let mid = c(0.1, 0.9);
        let mut via = V3::zeros();
        for k in 0..3 {
            let leg1 = integrate(
                |w| data.integrand(w)[k],
                &PathSpec::segment(c(0.0, 0.0), mid),
                1e-13,
            )
            .unwrap();
            let leg2 =
                integrate(|w| data.integrand(w)[k], &PathSpec::segment(mid, z), 1e-13).unwrap();
            via[k] = (leg1.value + leg2.value).re;
        }
        assert!((direct - via).norm() <= 1e-10);
    }

    #[test]
    fn x1_x2_match_erf_closed_form_at_sample() {
        // chi_C(z) = erfi(sqrt(r1) conj z)/(2 sqrt r1) - erf(sqrt(2r2-r1) z)/(2 sqrt(2r2-r1))
        let data = WeierstrassData::erf_example(1.0, 5.0);
        let z = c(1.0, 0.5);
        let chi = data.immerse(z, 1e-12).unwrap();
        let c1 = erfi(z.conj()) / 2.0 - crate::cnum::erf(3.0 * z) / 6.0;
        assert!((chi.x - c1.re).abs() <= 1e-10, "x1 {} vs {}", chi.x, c1.re);
        assert!((chi.y - c1.im).abs() <= 1e-10, "x2 {} vs {}", chi.y, c1.im);
    }
}
