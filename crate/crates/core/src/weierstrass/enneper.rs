//! The Enneper-type immersion `chi(z) = (L(z) - conj(H(z)), h(z))` with
//! `L = (r1 - r2) e^z`, `H = -d e^{(r1/r2 - 1) z}` and harmonic height
//! `h = Re Phi`, `Phi = -4 sqrt(d/r2) |r2/r1| |r1 - r2| i e^{(r1/(2 r2)) z}`.
//!
//! Minimality is equivalent to the identity `L' H' = (Phi'/2)^2`; the
//! immersion reports the residual of that identity as metadata, evaluated
//! through the symbolic expression engine.

use crate::cnum::{Complex, HolomorphicExpr};
use crate::surfgeo::{GeomError, Patch, PatchJet, V3};

/// Parameters of the Enneper-type immersion.
///
/// Non-degeneracy needs `r1 != r2` and `r1 r2 d != 0`. The strict
/// admissibility conditions are `0 < r1 < 4 r2 < 3 r1` together with
/// `d = r1 - r2 > 0`; irrationality of `r1/r2` matters for density of the
/// image but is recorded only as commentary, never checked numerically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnneperParams {
    pub r1: f64,
    pub r2: f64,
    pub d: f64,
}

impl EnneperParams {
    /// The sample admissible triple `(sqrt 5, 1, sqrt 5 - 1)`.
    pub fn sample_admissible() -> Self {
        EnneperParams {
            r1: 5f64.sqrt(),
            r2: 1.0,
            d: 5f64.sqrt() - 1.0,
        }
    }

    pub fn validate(&self) -> Result<(), GeomError> {
        if self.r1 == self.r2 || self.r1 * self.r2 * self.d == 0.0 {
            return Err(GeomError::Invalid(format!(
                "degenerate parameters: r1 = {}, r2 = {}, d = {}",
                self.r1, self.r2, self.d
            )));
        }
        Ok(())
    }

    /// The strict conditions `0 < r1 < 4 r2 < 3 r1` and `d = r1 - r2 > 0`.
    pub fn strictly_admissible(&self) -> bool {
        self.validate().is_ok()
            && 0.0 < self.r1
            && self.r1 < 4.0 * self.r2
            && 4.0 * self.r2 < 3.0 * self.r1
            && (self.d - (self.r1 - self.r2)).abs() <= 1e-12 * self.r1.abs()
            && self.d > 0.0
    }
}

pub struct EnneperImmersion {
    pub params: EnneperParams,
    l: HolomorphicExpr,
    h: HolomorphicExpr,
    phi: HolomorphicExpr,
    l1: HolomorphicExpr,
    h1: HolomorphicExpr,
    phi1: HolomorphicExpr,
    l2: HolomorphicExpr,
    h2: HolomorphicExpr,
    phi2: HolomorphicExpr,
}

impl EnneperImmersion {
    pub fn new(params: EnneperParams) -> Result<Self, GeomError> {
        params.validate()?;
        use HolomorphicExpr as E;
        let EnneperParams { r1, r2, d } = params;
        let cexp = |a: f64| E::Exp(Box::new(E::real(a) * E::var()));
        let l = E::real(r1 - r2) * cexp(1.0);
        let h = E::real(-d) * cexp(r1 / r2 - 1.0);
        let amp = -4.0 * (d / r2).sqrt() * (r2 / r1).abs() * (r1 - r2).abs();
        let phi = E::constant(Complex::new(0.0, amp)) * cexp(r1 / (2.0 * r2));
        let (l1, h1, phi1) = (l.derivative(), h.derivative(), phi.derivative());
        let (l2, h2, phi2) = (l1.derivative(), h1.derivative(), phi1.derivative());
        Ok(EnneperImmersion {
            params,
            l,
            h,
            phi,
            l1,
            h1,
            phi1,
            l2,
            h2,
            phi2,
        })
    }

    /// Position `(Re psi, Im psi, Re Phi)` with `psi = L - conj(H)`.
    pub fn chi(&self, z: Complex) -> V3 {
        let psi = self.l.eval(z) - self.h.eval(z).conj();
        V3::new(psi.re, psi.im, self.phi.eval(z).re)
    }

    /// Residual of the minimality identity `|L' H' - (Phi'/2)^2|` at `z`.
    pub fn minimality_residual(&self, z: Complex) -> f64 {
        let lh = self.l1.eval(z) * self.h1.eval(z);
        let half = self.phi1.eval(z) / 2.0;
        (lh - half * half).norm()
    }

    /// Conformal factor of the induced metric (`sqrt E`; the immersion is
    /// conformal when minimal).
    pub fn conformal_factor(&self, z: Complex) -> f64 {
        let jet = self.jet(z.re, z.im);
        jet.pu.norm()
    }
}

impl Patch for EnneperImmersion {
    fn jet(&self, u: f64, v: f64) -> PatchJet {
        let z = Complex::new(u, v);
        let (lp, hp, pp) = (self.l1.eval(z), self.h1.eval(z), self.phi1.eval(z));
        let (lpp, hpp, ppp) = (self.l2.eval(z), self.h2.eval(z), self.phi2.eval(z));
        let i = Complex::new(0.0, 1.0);
        // psi = L - conj H: d/du conj(H) = conj(H'), d/dv conj(H) = conj(i H') = -i conj(H')
        let psi_u = lp - hp.conj();
        let psi_v = i * lp + i * hp.conj();
        let psi_uu = lpp - hpp.conj();
        let psi_uv = i * lpp + i * hpp.conj();
        let psi_vv = -lpp + hpp.conj();
        let to3 = |w: Complex, s: f64| V3::new(w.re, w.im, s);
        PatchJet {
            p: self.chi(z),
            pu: to3(psi_u, pp.re),
            pv: to3(psi_v, (i * pp).re),
            puu: to3(psi_uu, ppp.re),
            puv: to3(psi_uv, (i * ppp).re),
            pvv: to3(psi_vv, -ppp.re),
        }
    }

    fn position(&self, u: f64, v: f64) -> V3 {
        self.chi(Complex::new(u, v))
    }
}
