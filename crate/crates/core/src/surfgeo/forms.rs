//! Fundamental forms and the shape-operator eigenproblem.

use super::{GeomError, Patch, PatchJet, V3};

/// First and second fundamental forms plus the derived curvature data at one
/// parameter point.
///
/// Principal curvatures are ordered `k1 <= k2` and signed with respect to
/// `normal`; `mean` is the trace of the shape operator (`k1 + k2`).
#[derive(Debug, Clone)]
pub struct SurfaceForms {
    /// `[E, F, G]`
    pub first: [f64; 3],
    /// `[L, M, N]`
    pub second: [f64; 3],
    pub k1: f64,
    pub k2: f64,
    pub mean: f64,
    pub gauss: f64,
    pub normal: V3,
    /// Principal direction for `k1`, unit, tangent.
    pub dir1: V3,
    /// Principal direction for `k2`, unit, tangent.
    pub dir2: V3,
}

impl SurfaceForms {
    /// The same data with the normal (and therefore the sign of the second
    /// form and the principal curvatures) flipped.
    pub fn flipped(&self) -> SurfaceForms {
        SurfaceForms {
            first: self.first,
            second: [-self.second[0], -self.second[1], -self.second[2]],
            k1: -self.k2,
            k2: -self.k1,
            mean: -self.mean,
            gauss: self.gauss,
            normal: -self.normal,
            dir1: self.dir2,
            dir2: self.dir1,
        }
    }

    /// Orient the normal toward `point`, flipping if needed.
    pub fn toward(&self, point: &V3, foot: &V3) -> SurfaceForms {
        if (point - foot).dot(&self.normal) >= 0.0 {
            self.clone()
        } else {
            self.flipped()
        }
    }
}

pub fn fundamental_forms(patch: &dyn Patch, u: f64, v: f64) -> Result<SurfaceForms, GeomError> {
    forms_from_jet(&patch.jet(u, v), u, v)
}

pub(crate) fn forms_from_jet(jet: &PatchJet, u: f64, v: f64) -> Result<SurfaceForms, GeomError> {
    let e = jet.pu.dot(&jet.pu);
    let f = jet.pu.dot(&jet.pv);
    let g = jet.pv.dot(&jet.pv);
    let det1 = e * g - f * f;
    // relative degeneracy test: det I scales like E*G for a healthy immersion
    if det1 <= 1e-14 * e.max(g).powi(2) || !det1.is_finite() {
        return Err(GeomError::DegenerateMetric { u, v, det: det1 });
    }
    let normal = jet.pu.cross(&jet.pv) / det1.sqrt();
    let ll = jet.puu.dot(&normal);
    let mm = jet.puv.dot(&normal);
    let nn = jet.pvv.dot(&normal);

    // shape operator S = I^{-1} II in the (pu, pv) basis
    let s11 = (g * ll - f * mm) / det1;
    let s12 = (g * mm - f * nn) / det1;
    let s21 = (e * mm - f * ll) / det1;
    let s22 = (e * nn - f * mm) / det1;

    let mean = s11 + s22;
    let gauss = s11 * s22 - s12 * s21;
    let disc = (mean * mean - 4.0 * gauss).max(0.0).sqrt();
    let k1 = 0.5 * (mean - disc);
    let k2 = 0.5 * (mean + disc);

    // eigenvector of [[s11,s12],[s21,s22]] for eigenvalue k: rows of (S - kI)
    // give the orthogonal complement; pick the better-conditioned row.
    let principal_dir = |k: f64| -> V3 {
        let r1 = (s11 - k, s12);
        let r2 = (s21, s22 - k);
        let (a, b) = if r1.0.hypot(r1.1) >= r2.0.hypot(r2.1) {
            (-r1.1, r1.0)
        } else {
            (-r2.1, r2.0)
        };
        let d = a * jet.pu + b * jet.pv;
        let n = d.norm();
        if n > 1e-12 {
            d / n
        } else {
            // umbilic: any tangent direction is principal
            jet.pu / e.sqrt()
        }
    };
    let dir1 = principal_dir(k1);
    let mut dir2 = principal_dir(k2);
    if disc <= 1e-12 * (k1.abs() + k2.abs() + 1.0) {
        // umbilic: force an orthonormal pair
        dir2 = normal.cross(&dir1);
    }

    Ok(SurfaceForms {
        first: [e, f, g],
        second: [ll, mm, nn],
        k1,
        k2,
        mean,
        gauss,
        normal,
        dir1,
        dir2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfgeo::{CatenoidPatch, CylinderPatch, PlanePatch, SpherePatch};

    #[test]
    fn unit_sphere_outward() {
        // outward normal: k1 = k2 = -1, H = -2, K = 1
        let sphere = SpherePatch { radius: 1.0 };
        let f = fundamental_forms(&sphere, 0.3, 1.2).unwrap();
        let jet = sphere.jet(0.3, 1.2);
        let outward = f.toward(&(2.0 * jet.p), &jet.p);
        assert!((outward.k1 + 1.0).abs() < 1e-12);
        assert!((outward.k2 + 1.0).abs() < 1e-12);
        assert!((outward.mean + 2.0).abs() < 1e-12);
        assert!((outward.gauss - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unit_cylinder_outward() {
        let cyl = CylinderPatch { radius: 1.0 };
        let f = fundamental_forms(&cyl, 0.7, -0.4).unwrap();
        let jet = cyl.jet(0.7, -0.4);
        let outward = f.toward(&(2.0 * jet.p.xy().push(jet.p.z)), &jet.p);
        assert!((outward.k1 + 1.0).abs() < 1e-12, "k1 = {}", outward.k1);
        assert!(outward.k2.abs() < 1e-12);
        assert!(outward.gauss.abs() < 1e-12);
    }

    #[test]
    fn catenoid_waist() {
        // closed form at the waist (v = 0, a = 1): H = 0, K = -1
        let cat = CatenoidPatch { waist: 1.0 };
        let f = fundamental_forms(&cat, 1.1, 0.0).unwrap();
        assert!(f.mean.abs() < 1e-12, "H = {}", f.mean);
        assert!((f.gauss + 1.0).abs() < 1e-12, "K = {}", f.gauss);
        assert!((f.k1 + 1.0).abs() < 1e-12);
        assert!((f.k2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn catenoid_off_waist_minimal() {
        let cat = CatenoidPatch { waist: 1.0 };
        for v in [-1.0, -0.3, 0.6, 1.4] {
            let f = fundamental_forms(&cat, 0.2, v).unwrap();
            assert!(f.mean.abs() < 1e-12);
            // K = -1/cosh^4(v)
            let want = -1.0 / v.cosh().powi(4);
            assert!((f.gauss - want).abs() < 1e-12 * want.abs());
        }
    }

    #[test]
    fn principal_directions_are_orthonormal_tangent() {
        let cat = CatenoidPatch { waist: 1.0 };
        let f = fundamental_forms(&cat, 0.9, 0.5).unwrap();
        assert!(f.dir1.dot(&f.dir2).abs() < 1e-10);
        assert!((f.dir1.norm() - 1.0).abs() < 1e-12);
        assert!(f.dir1.dot(&f.normal).abs() < 1e-10);
        assert!(f.dir2.dot(&f.normal).abs() < 1e-10);
    }

    #[test]
    fn degenerate_metric_detected() {
        // collapse a plane patch to a line
        let degenerate = PlanePatch {
            origin: V3::zeros(),
            e1: V3::x(),
            e2: V3::x(),
        };
        assert!(matches!(
            fundamental_forms(&degenerate, 0.0, 0.0),
            Err(GeomError::DegenerateMetric { .. })
        ));
    }
}
