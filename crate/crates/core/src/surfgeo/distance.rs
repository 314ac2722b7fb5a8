//! Signed-distance / nearest-point queries with curvature at the foot.
//!
//! Sign convention: `TubularQuery` reports principal curvatures with respect
//! to the normal pointing from the foot toward the query point (the tube
//! side the query lives on). `side` records where the query sits relative to
//! the surface's own parametric orientation, so a signed distance in that
//! orientation is `side * t`.

use super::forms::fundamental_forms;
use super::mesh::MeshIndex;
use super::{GeomError, Patch, V3};

/// Result of a tubular query against a surface.
#[derive(Debug, Clone)]
pub struct TubularQuery {
    /// Unsigned distance to the surface.
    pub t: f64,
    /// +1 when the query lies on the side of the surface's parametric
    /// normal, -1 opposite, 0 on the surface.
    pub side: i8,
    pub foot: V3,
    /// Principal curvatures at the foot, `k1 <= k2`, signed toward the query.
    pub k1: f64,
    pub k2: f64,
    /// Unit normal at the foot pointing toward the query point.
    pub normal: V3,
    pub dir1: V3,
    pub dir2: V3,
    /// True when `t < eps` for the tube radius the caller supplied.
    pub valid: bool,
    /// Number of distinct distance-realizing feet found (1 = unique foot;
    /// more indicates the query sits near the cut locus).
    pub multiplicity: usize,
    /// The other feet when `multiplicity > 1`.
    pub alternates: Vec<FootData>,
}

#[derive(Debug, Clone)]
pub struct FootData {
    pub foot: V3,
    pub t: f64,
    pub k1: f64,
    pub k2: f64,
    pub normal: V3,
    pub dir1: V3,
    pub dir2: V3,
}

impl TubularQuery {
    /// Signed distance in the surface's parametric orientation.
    pub fn signed_t(&self) -> f64 {
        self.side as f64 * self.t
    }
}

/// Any surface that answers nearest-point queries.
pub trait DistanceSurface: Sync {
    /// Nearest-point query; `eps` is the tube radius used for the `valid`
    /// flag (pass `f64::INFINITY` when no tube is intended).
    fn query(&self, y: &V3, eps: f64) -> Result<TubularQuery, GeomError>;
}

/// Closed-form distance fields for the classical test surfaces.
#[derive(Debug, Clone)]
pub enum AnalyticSurface {
    /// Plane through `origin` with unit `normal` (the parametric orientation).
    Plane { origin: V3, normal: V3 },
    /// Cylinder of `radius` about the z-axis, outward parametric normal.
    Cylinder { radius: f64 },
    /// Sphere of `radius` about the origin, outward parametric normal.
    Sphere { radius: f64 },
}

impl DistanceSurface for AnalyticSurface {
    fn query(&self, y: &V3, eps: f64) -> Result<TubularQuery, GeomError> {
        match *self {
            AnalyticSurface::Plane { origin, normal } => {
                let signed = (y - origin).dot(&normal);
                let foot = y - signed * normal;
                let toward = if signed >= 0.0 { normal } else { -normal };
                let seed = if toward.x.abs() < 0.9 { V3::x() } else { V3::y() };
                let dir1 = (seed - toward * seed.dot(&toward)).normalize();
                Ok(TubularQuery {
                    t: signed.abs(),
                    side: sign_of(signed),
                    foot,
                    k1: 0.0,
                    k2: 0.0,
                    normal: toward,
                    dir1,
                    dir2: toward.cross(&dir1),
                    valid: signed.abs() < eps,
                    multiplicity: 1,
                    alternates: Vec::new(),
                })
            }
            AnalyticSurface::Cylinder { radius } => {
                let rho = y.x.hypot(y.y);
                if rho < 1e-12 * radius {
                    // axis point: every direction realizes the distance
                    return Err(GeomError::OutOfRegion(y.x, y.y, y.z));
                }
                let radial = V3::new(y.x / rho, y.y / rho, 0.0);
                let foot = V3::new(radial.x * radius, radial.y * radius, y.z);
                let signed = rho - radius;
                let toward = if signed >= 0.0 { radial } else { -radial };
                // curvature of the circle section toward the query:
                // outside: -1/R (surface bends away), inside: +1/R
                let kappa = -sign_of(signed) as f64 / radius;
                let axis = V3::z();
                let (k1, k2, dir1, dir2) = if kappa <= 0.0 {
                    (kappa, 0.0, axis.cross(&toward), axis)
                } else {
                    (0.0, kappa, axis, axis.cross(&toward))
                };
                Ok(TubularQuery {
                    t: signed.abs(),
                    side: sign_of(signed),
                    foot,
                    k1,
                    k2,
                    normal: toward,
                    dir1,
                    dir2,
                    valid: signed.abs() < eps,
                    multiplicity: 1,
                    alternates: Vec::new(),
                })
            }
            AnalyticSurface::Sphere { radius } => {
                let r = y.norm();
                if r < 1e-12 * radius {
                    return Err(GeomError::OutOfRegion(y.x, y.y, y.z));
                }
                let radial = y / r;
                let foot = radial * radius;
                let signed = r - radius;
                let toward = if signed >= 0.0 { radial } else { -radial };
                let kappa = -sign_of(signed) as f64 / radius;
                let seed = if toward.x.abs() < 0.9 { V3::x() } else { V3::y() };
                let dir1 = (seed - toward * seed.dot(&toward)).normalize();
                Ok(TubularQuery {
                    t: signed.abs(),
                    side: sign_of(signed),
                    foot,
                    k1: kappa,
                    k2: kappa,
                    normal: toward,
                    dir1,
                    dir2: toward.cross(&dir1),
                    valid: signed.abs() < eps,
                    multiplicity: 1,
                    alternates: Vec::new(),
                })
            }
        }
    }
}

fn sign_of(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// A patch with a mesh acceleration index: mesh feet seed a Newton
/// projection onto the analytic patch, giving exact feet and curvatures.
pub struct ProjectedPatch<P: Patch> {
    pub patch: P,
    pub index: MeshIndex,
    /// Cut-locus tie tolerance used for multiplicity detection.
    pub tie_tol: f64,
}

impl<P: Patch> ProjectedPatch<P> {
    pub fn new(patch: P, index: MeshIndex) -> Self {
        ProjectedPatch {
            patch,
            index,
            tie_tol: 1e-9,
        }
    }

    /// Build by sampling the patch over a parameter rectangle.
    pub fn from_grid(
        patch: P,
        urange: (f64, f64),
        vrange: (f64, f64),
        nu: usize,
        nv: usize,
    ) -> Result<Self, GeomError> {
        let mesh = super::mesh::TriMesh::from_patch(&patch, urange, vrange, nu, nv)?;
        Ok(Self::new(patch, MeshIndex::build(mesh)))
    }

    fn uv_near_triangle(&self, triangle: u32, point: &V3) -> Option<(f64, f64)> {
        let uv = self.index.mesh.uv.as_ref()?;
        let bary = self.index.mesh.barycentric(triangle, point);
        let [a, b, c] = self.index.mesh.faces[triangle as usize];
        let ua = uv[a as usize];
        let ub = uv[b as usize];
        let uc = uv[c as usize];
        Some((
            bary[0] * ua[0] + bary[1] * ub[0] + bary[2] * uc[0],
            bary[0] * ua[1] + bary[1] * ub[1] + bary[2] * uc[1],
        ))
    }

    /// Newton projection of `y` onto the patch starting from `(u, v)`.
    ///
    /// Steps are accepted only when they do not increase the distance
    /// (backtracking halving otherwise), so the refined foot can never be
    /// worse than the mesh seed, and Newton cannot wander off to a saddle
    /// of the distance function.
    fn refine(&self, y: &V3, mut u: f64, mut v: f64) -> Result<(f64, f64), GeomError> {
        let mut last_grad = f64::INFINITY;
        let mut dist = (self.patch.position(u, v) - y).norm();
        for _ in 0..80 {
            let jet = self.patch.jet(u, v);
            let d = jet.p - y;
            let gu = jet.pu.dot(&d);
            let gv = jet.pv.dot(&d);
            let scale = jet.pu.norm_squared().max(jet.pv.norm_squared()).max(1e-300);
            let gnorm = gu.hypot(gv);
            last_grad = gnorm;
            if gnorm <= 1e-13 * scale.sqrt() * (1.0 + d.norm()) {
                return Ok((u, v));
            }
            let huu = jet.puu.dot(&d) + jet.pu.dot(&jet.pu);
            let huv = jet.puv.dot(&d) + jet.pu.dot(&jet.pv);
            let hvv = jet.pvv.dot(&d) + jet.pv.dot(&jet.pv);
            let det = huu * hvv - huv * huv;
            // Newton when the Hessian is positive definite, otherwise
            // scaled gradient descent
            let (mut du, mut dv) = if det > 1e-30 * scale * scale && huu > 0.0 {
                ((-gu * hvv + gv * huv) / det, (gu * huv - gv * huu) / det)
            } else {
                (-gu / scale, -gv / scale)
            };
            let step = du.hypot(dv);
            let cap = 0.5 * (1.0 + u.abs() + v.abs());
            if step > cap {
                du *= cap / step;
                dv *= cap / step;
            }
            let mut accepted = false;
            let mut shrink = 1.0;
            for _ in 0..30 {
                let nu = u + shrink * du;
                let nv = v + shrink * dv;
                let nd = (self.patch.position(nu, nv) - y).norm();
                if nd <= dist * (1.0 + 1e-15) {
                    u = nu;
                    v = nv;
                    dist = nd;
                    accepted = true;
                    break;
                }
                shrink *= 0.5;
            }
            if !accepted || shrink * step <= 1e-14 * (1.0 + u.abs() + v.abs()) {
                // distance plateaued at roundoff resolution
                return Ok((u, v));
            }
        }
        // iteration budget exhausted; a small residual still identifies the
        // foot to far better than the downstream angular tolerances
        let jet = self.patch.jet(u, v);
        let scale = jet.pu.norm_squared().max(jet.pv.norm_squared()).max(1e-300);
        if last_grad <= 1e-8 * scale.sqrt() * (1.0 + (jet.p - y).norm()) {
            return Ok((u, v));
        }
        Err(GeomError::ProjectionFailed {
            residual: last_grad,
        })
    }

    fn foot_data(&self, y: &V3, u: f64, v: f64) -> Result<(FootData, i8), GeomError> {
        let forms = fundamental_forms(&self.patch, u, v)?;
        let foot = self.patch.position(u, v);
        let offset = y - foot;
        let side = sign_of(offset.dot(&forms.normal));
        let toward = forms.toward(y, &foot);
        Ok((
            FootData {
                foot,
                t: offset.norm(),
                k1: toward.k1,
                k2: toward.k2,
                normal: toward.normal,
                dir1: toward.dir1,
                dir2: toward.dir2,
            },
            side,
        ))
    }
}

impl<P: Patch> DistanceSurface for ProjectedPatch<P> {
    fn query(&self, y: &V3, eps: f64) -> Result<TubularQuery, GeomError> {
        let (best, ties) = self.index.nearest(y, self.tie_tol.max(1e-7));
        let (u0, v0) = self
            .uv_near_triangle(best.triangle, &best.point)
            .ok_or(GeomError::NoCurvatureData)?;
        let (u, v) = self.refine(y, u0, v0)?;
        let (main, side) = self.foot_data(y, u, v)?;

        // refine tied feet; keep those still tied after Newton and spatially
        // distinct from the main foot
        let mut alternates = Vec::new();
        for tie in ties {
            if let Some((tu, tv)) = self.uv_near_triangle(tie.triangle, &tie.point) {
                if let Ok((ru, rv)) = self.refine(y, tu, tv) {
                    if let Ok((fd, _)) = self.foot_data(y, ru, rv) {
                        let distinct = (fd.foot - main.foot).norm()
                            > 1e-6 * (1.0 + main.t);
                        let tied = (fd.t - main.t).abs() <= self.tie_tol * (1.0 + main.t);
                        if distinct
                            && tied
                            && !alternates.iter().any(|a: &FootData| {
                                (a.foot - fd.foot).norm() <= 1e-6 * (1.0 + main.t)
                            })
                        {
                            alternates.push(fd);
                        }
                    }
                }
            }
        }

        Ok(TubularQuery {
            t: main.t,
            side,
            foot: main.foot,
            k1: main.k1,
            k2: main.k2,
            normal: main.normal,
            dir1: main.dir1,
            dir2: main.dir2,
            valid: main.t < eps,
            multiplicity: 1 + alternates.len(),
            alternates,
        })
    }
}

/// Pure-mesh distance field: feet stay on the triangles (distance error is
/// O(edge^2) against the smooth surface), curvatures interpolate the
/// per-vertex values when the mesh carries them.
pub struct MeshSurface {
    pub index: MeshIndex,
    pub tie_tol: f64,
}

impl MeshSurface {
    pub fn new(index: MeshIndex) -> Self {
        MeshSurface {
            index,
            tie_tol: 1e-9,
        }
    }
}

impl DistanceSurface for MeshSurface {
    fn query(&self, y: &V3, eps: f64) -> Result<TubularQuery, GeomError> {
        let (best, ties) = self.index.nearest(y, self.tie_tol);
        let mesh = &self.index.mesh;
        let bary = mesh.barycentric(best.triangle, &best.point);
        let [ia, ib, ic] = mesh.faces[best.triangle as usize];
        let interp_n = (bary[0] * mesh.normals[ia as usize]
            + bary[1] * mesh.normals[ib as usize]
            + bary[2] * mesh.normals[ic as usize])
            .normalize();
        let offset = y - best.point;
        let side = sign_of(offset.dot(&interp_n));
        let (k1, k2) = match &mesh.curvatures {
            Some(curv) => {
                let ka = curv[ia as usize];
                let kb = curv[ib as usize];
                let kc = curv[ic as usize];
                let k1 = bary[0] * ka[0] + bary[1] * kb[0] + bary[2] * kc[0];
                let k2 = bary[0] * ka[1] + bary[1] * kb[1] + bary[2] * kc[1];
                if side >= 0 {
                    (k1, k2)
                } else {
                    (-k2, -k1)
                }
            }
            None => return Err(GeomError::NoCurvatureData),
        };
        let toward = if side >= 0 { interp_n } else { -interp_n };
        let seed = if toward.x.abs() < 0.9 { V3::x() } else { V3::y() };
        let dir1 = (seed - toward * seed.dot(&toward)).normalize();
        let alternates: Vec<FootData> = ties
            .iter()
            .map(|t| FootData {
                foot: t.point,
                t: t.distance,
                k1,
                k2,
                normal: toward,
                dir1,
                dir2: toward.cross(&dir1),
            })
            .collect();
        Ok(TubularQuery {
            t: best.distance,
            side,
            foot: best.point,
            k1,
            k2,
            normal: toward,
            dir1,
            dir2: toward.cross(&dir1),
            valid: best.distance < eps,
            multiplicity: 1 + alternates.len(),
            alternates,
        })
    }
}
