//! Parametric and triangulated surface geometry.
//!
//! Everything downstream (barrier certificates, boundary reports, hit
//! statistics) consumes surfaces through two interfaces: [`Patch`] for
//! two-jet evaluation at parameter points, and [`DistanceSurface`] for
//! nearest-point / signed-distance queries in ambient space.

mod bvh;
mod distance;
mod forms;
mod mesh;
mod offset;

pub use distance::{
    AnalyticSurface, DistanceSurface, FootData, MeshSurface, ProjectedPatch, TubularQuery,
};
pub use forms::{fundamental_forms, SurfaceForms};
pub use mesh::{MeshIndex, TriMesh};
pub use offset::{parallel_curvatures, tubular_radius};

use nalgebra::Vector3;
use thiserror::Error;

/// Ambient 3-space vector.
pub type V3 = Vector3<f64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("degenerate metric at (u, v) = ({u}, {v}): det I = {det}")]
    DegenerateMetric { u: f64, v: f64, det: f64 },
    #[error("focal point: offset {t} reaches the focal distance {focal} of curvature {kappa}")]
    FocalPoint { t: f64, focal: f64, kappa: f64 },
    #[error("query point ({0}, {1}, {2}) outside the declared bounding region")]
    OutOfRegion(f64, f64, f64),
    #[error("surface carries no curvature data at the foot point")]
    NoCurvatureData,
    #[error("nearest-point projection did not converge (residual {residual})")]
    ProjectionFailed { residual: f64 },
    #[error("{0}")]
    Invalid(String),
}

/// Two-jet of a parametric surface at a parameter point.
#[derive(Debug, Clone, Copy)]
pub struct PatchJet {
    pub p: V3,
    pub pu: V3,
    pub pv: V3,
    pub puu: V3,
    pub puv: V3,
    pub pvv: V3,
}

/// A parametric surface with first and second derivatives.
pub trait Patch: Sync {
    fn jet(&self, u: f64, v: f64) -> PatchJet;

    /// Position only; default goes through the full jet.
    fn position(&self, u: f64, v: f64) -> V3 {
        self.jet(u, v).p
    }
}

impl<P: Patch + ?Sized> Patch for &P {
    fn jet(&self, u: f64, v: f64) -> PatchJet {
        (**self).jet(u, v)
    }
    fn position(&self, u: f64, v: f64) -> V3 {
        (**self).position(u, v)
    }
}

/// Plane through `origin` spanned by orthonormal `e1`, `e2`.
#[derive(Debug, Clone)]
pub struct PlanePatch {
    pub origin: V3,
    pub e1: V3,
    pub e2: V3,
}

impl PlanePatch {
    /// The coordinate plane `z = height`.
    pub fn horizontal(height: f64) -> Self {
        PlanePatch {
            origin: V3::new(0.0, 0.0, height),
            e1: V3::x(),
            e2: V3::y(),
        }
    }

    /// Plane through `origin` with unit normal `n`.
    pub fn with_normal(origin: V3, n: V3) -> Self {
        let n = n.normalize();
        let seed = if n.x.abs() < 0.9 { V3::x() } else { V3::y() };
        let e1 = (seed - n * seed.dot(&n)).normalize();
        let e2 = n.cross(&e1);
        PlanePatch { origin, e1, e2 }
    }
}

impl Patch for PlanePatch {
    fn jet(&self, u: f64, v: f64) -> PatchJet {
        PatchJet {
            p: self.origin + u * self.e1 + v * self.e2,
            pu: self.e1,
            pv: self.e2,
            puu: V3::zeros(),
            puv: V3::zeros(),
            pvv: V3::zeros(),
        }
    }
}

/// Cylinder of radius `r` about the z-axis; `u` is the angle, `v` the height.
#[derive(Debug, Clone)]
pub struct CylinderPatch {
    pub radius: f64,
}

impl Patch for CylinderPatch {
    fn jet(&self, u: f64, v: f64) -> PatchJet {
        let (s, c) = u.sin_cos();
        let r = self.radius;
        PatchJet {
            p: V3::new(r * c, r * s, v),
            pu: V3::new(-r * s, r * c, 0.0),
            pv: V3::z(),
            puu: V3::new(-r * c, -r * s, 0.0),
            puv: V3::zeros(),
            pvv: V3::zeros(),
        }
    }
}

/// Sphere of radius `r` centred at the origin; `u` is longitude, `v` the
/// polar angle in `(0, pi)`.
#[derive(Debug, Clone)]
pub struct SpherePatch {
    pub radius: f64,
}

impl Patch for SpherePatch {
    fn jet(&self, u: f64, v: f64) -> PatchJet {
        let (su, cu) = u.sin_cos();
        let (sv, cv) = v.sin_cos();
        let r = self.radius;
        PatchJet {
            p: V3::new(r * sv * cu, r * sv * su, r * cv),
            pu: V3::new(-r * sv * su, r * sv * cu, 0.0),
            pv: V3::new(r * cv * cu, r * cv * su, -r * sv),
            puu: V3::new(-r * sv * cu, -r * sv * su, 0.0),
            puv: V3::new(-r * cv * su, r * cv * cu, 0.0),
            pvv: V3::new(-r * sv * cu, -r * sv * su, -r * cv),
        }
    }
}

/// Catenoid `(a cosh(v/a) cos u, a cosh(v/a) sin u, v)`.
#[derive(Debug, Clone)]
pub struct CatenoidPatch {
    pub waist: f64,
}

impl Patch for CatenoidPatch {
    fn jet(&self, u: f64, v: f64) -> PatchJet {
        let a = self.waist;
        let (su, cu) = u.sin_cos();
        let ch = (v / a).cosh();
        let sh = (v / a).sinh();
        PatchJet {
            p: V3::new(a * ch * cu, a * ch * su, v),
            pu: V3::new(-a * ch * su, a * ch * cu, 0.0),
            pv: V3::new(sh * cu, sh * su, 1.0),
            puu: V3::new(-a * ch * cu, -a * ch * su, 0.0),
            puv: V3::new(-sh * su, sh * cu, 0.0),
            pvv: V3::new(ch / a * cu, ch / a * su, 0.0),
        }
    }
}

/// Helicoid `(v cos u, v sin u, a u)`.
#[derive(Debug, Clone)]
pub struct HelicoidPatch {
    pub pitch: f64,
}

impl Patch for HelicoidPatch {
    fn jet(&self, u: f64, v: f64) -> PatchJet {
        let (su, cu) = u.sin_cos();
        PatchJet {
            p: V3::new(v * cu, v * su, self.pitch * u),
            pu: V3::new(-v * su, v * cu, self.pitch),
            pv: V3::new(cu, su, 0.0),
            puu: V3::new(-v * cu, -v * su, 0.0),
            puv: V3::new(-su, cu, 0.0),
            pvv: V3::zeros(),
        }
    }
}

/// Position-only surface promoted to a [`Patch`] by central differences.
///
/// Step `h = eps_machine^(1/3) * scale`, the usual optimum for first
/// derivatives of a function known to roundoff accuracy.
pub struct FnPatch<F: Fn(f64, f64) -> V3 + Sync> {
    f: F,
    h: f64,
}

impl<F: Fn(f64, f64) -> V3 + Sync> FnPatch<F> {
    pub fn new(f: F, scale: f64) -> Self {
        let h = f64::EPSILON.cbrt() * scale;
        FnPatch { f, h }
    }
}

impl<F: Fn(f64, f64) -> V3 + Sync> Patch for FnPatch<F> {
    fn jet(&self, u: f64, v: f64) -> PatchJet {
        let h = self.h;
        let f = &self.f;
        let p = f(u, v);
        let pu = (f(u + h, v) - f(u - h, v)) / (2.0 * h);
        let pv = (f(u, v + h) - f(u, v - h)) / (2.0 * h);
        let puu = (f(u + h, v) - 2.0 * p + f(u - h, v)) / (h * h);
        let pvv = (f(u, v + h) - 2.0 * p + f(u, v - h)) / (h * h);
        let puv =
            (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) / (4.0 * h * h);
        PatchJet {
            p,
            pu,
            pv,
            puu,
            puv,
            pvv,
        }
    }

    fn position(&self, u: f64, v: f64) -> V3 {
        (self.f)(u, v)
    }
}
