//! Indexed triangle meshes: construction from patches, text I/O, and the
//! BVH-backed nearest-point index.

use super::bvh::Bvh;
use super::forms::fundamental_forms;
use super::{GeomError, Patch, V3};

/// Indexed triangle mesh. Vertex normals always exist (area-weighted from
/// faces when not supplied); parameter coordinates and principal curvatures
/// are carried only for meshes sampled from a patch.
pub struct TriMesh {
    pub vertices: Vec<V3>,
    pub faces: Vec<[u32; 3]>,
    pub normals: Vec<V3>,
    pub uv: Option<Vec<[f64; 2]>>,
    /// `[k1, k2]` with respect to the vertex normal.
    pub curvatures: Option<Vec<[f64; 2]>>,
}

impl TriMesh {
    pub fn new(vertices: Vec<V3>, faces: Vec<[u32; 3]>) -> Self {
        let normals = area_weighted_normals(&vertices, &faces);
        TriMesh {
            vertices,
            faces,
            normals,
            uv: None,
            curvatures: None,
        }
    }

    /// Sample `patch` on an `nu x nv` grid over `[u0,u1] x [v0,v1]`,
    /// carrying exact normals and curvatures along.
    pub fn from_patch(
        patch: &dyn Patch,
        urange: (f64, f64),
        vrange: (f64, f64),
        nu: usize,
        nv: usize,
    ) -> Result<Self, GeomError> {
        assert!(nu >= 2 && nv >= 2, "grid must be at least 2x2");
        let mut vertices = Vec::with_capacity(nu * nv);
        let mut uv = Vec::with_capacity(nu * nv);
        let mut normals = Vec::with_capacity(nu * nv);
        let mut curvatures = Vec::with_capacity(nu * nv);
        for i in 0..nu {
            let u = urange.0 + (urange.1 - urange.0) * i as f64 / (nu - 1) as f64;
            for j in 0..nv {
                let v = vrange.0 + (vrange.1 - vrange.0) * j as f64 / (nv - 1) as f64;
                let f = fundamental_forms(patch, u, v)?;
                vertices.push(patch.position(u, v));
                uv.push([u, v]);
                normals.push(f.normal);
                curvatures.push([f.k1, f.k2]);
            }
        }
        let mut faces = Vec::with_capacity(2 * (nu - 1) * (nv - 1));
        let idx = |i: usize, j: usize| (i * nv + j) as u32;
        for i in 0..nu - 1 {
            for j in 0..nv - 1 {
                faces.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)]);
                faces.push([idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)]);
            }
        }
        Ok(TriMesh {
            vertices,
            faces,
            normals,
            uv: Some(uv),
            curvatures: Some(curvatures),
        })
    }

    /// Parse the plain text format: `v x y z` vertex lines and `f i j k`
    /// face lines with 1-based indices. Unknown line heads are rejected.
    pub fn read_text(text: &str) -> Result<Self, GeomError> {
        let mut vertices = Vec::new();
        let mut faces = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let head = it.next().unwrap();
            let nums: Vec<&str> = it.collect();
            match head {
                "v" => {
                    if nums.len() != 3 {
                        return Err(GeomError::Invalid(format!(
                            "line {}: vertex needs 3 coordinates",
                            ln + 1
                        )));
                    }
                    let mut c = [0.0f64; 3];
                    for (k, s) in nums.iter().enumerate() {
                        c[k] = s.parse().map_err(|_| {
                            GeomError::Invalid(format!("line {}: bad number `{s}`", ln + 1))
                        })?;
                    }
                    vertices.push(V3::new(c[0], c[1], c[2]));
                }
                "f" => {
                    if nums.len() != 3 {
                        return Err(GeomError::Invalid(format!(
                            "line {}: face needs 3 indices",
                            ln + 1
                        )));
                    }
                    let mut c = [0u32; 3];
                    for (k, s) in nums.iter().enumerate() {
                        let i: u32 = s.parse().map_err(|_| {
                            GeomError::Invalid(format!("line {}: bad index `{s}`", ln + 1))
                        })?;
                        if i == 0 || i as usize > vertices.len() {
                            return Err(GeomError::Invalid(format!(
                                "line {}: index {i} out of range",
                                ln + 1
                            )));
                        }
                        c[k] = i - 1;
                    }
                    faces.push(c);
                }
                other => {
                    return Err(GeomError::Invalid(format!(
                        "line {}: unknown record `{other}`",
                        ln + 1
                    )))
                }
            }
        }
        Ok(TriMesh::new(vertices, faces))
    }

    /// Inverse of [`TriMesh::read_text`], 17 significant digits.
    pub fn write_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("v {:.16e} {:.16e} {:.16e}\n", v.x, v.y, v.z));
        }
        for f in &self.faces {
            out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
        }
        out
    }

    pub fn triangle(&self, t: u32) -> (V3, V3, V3) {
        let [a, b, c] = self.faces[t as usize];
        (
            self.vertices[a as usize],
            self.vertices[b as usize],
            self.vertices[c as usize],
        )
    }

    /// Barycentric coordinates of `p` (assumed on or near the triangle plane).
    pub fn barycentric(&self, t: u32, p: &V3) -> [f64; 3] {
        let (a, b, c) = self.triangle(t);
        let v0 = b - a;
        let v1 = c - a;
        let v2 = p - a;
        let d00 = v0.dot(&v0);
        let d01 = v0.dot(&v1);
        let d11 = v1.dot(&v1);
        let d20 = v2.dot(&v0);
        let d21 = v2.dot(&v1);
        let denom = d00 * d11 - d01 * d01;
        if denom.abs() < 1e-300 {
            return [1.0, 0.0, 0.0];
        }
        let v = (d11 * d20 - d01 * d21) / denom;
        let w = (d00 * d21 - d01 * d20) / denom;
        [1.0 - v - w, v, w]
    }

    /// Mean edge length, the mesh's intrinsic resolution scale.
    pub fn mean_edge(&self) -> f64 {
        if self.faces.is_empty() {
            return 0.0;
        }
        let mut total = 0.0;
        for t in 0..self.faces.len() as u32 {
            let (a, b, c) = self.triangle(t);
            total += (a - b).norm() + (b - c).norm() + (c - a).norm();
        }
        total / (3.0 * self.faces.len() as f64)
    }
}

fn area_weighted_normals(vertices: &[V3], faces: &[[u32; 3]]) -> Vec<V3> {
    let mut normals = vec![V3::zeros(); vertices.len()];
    for f in faces {
        let a = vertices[f[0] as usize];
        let b = vertices[f[1] as usize];
        let c = vertices[f[2] as usize];
        let n = (b - a).cross(&(c - a)); // length = 2 * area
        for &i in f {
            normals[i as usize] += n;
        }
    }
    for n in &mut normals {
        let len = n.norm();
        if len > 1e-300 {
            *n /= len;
        }
    }
    normals
}

/// A mesh plus its bounding-volume hierarchy; immutable after build, so
/// concurrent queries are free.
pub struct MeshIndex {
    pub mesh: TriMesh,
    bvh: Bvh,
}

pub struct MeshFoot {
    pub point: V3,
    pub triangle: u32,
    pub distance: f64,
}

impl MeshIndex {
    pub fn build(mesh: TriMesh) -> Self {
        let tris: Vec<(V3, V3, V3)> = (0..mesh.faces.len() as u32)
            .map(|t| mesh.triangle(t))
            .collect();
        let bvh = Bvh::build(&tris);
        MeshIndex { mesh, bvh }
    }

    /// Nearest foot plus any distinct near-tied feet within `tie_tol`.
    ///
    /// Ties that land on the same spatial point (shared vertices/edges of
    /// adjacent triangles) are merged; surviving alternates indicate a
    /// genuine cut-locus ambiguity.
    pub fn nearest(&self, p: &V3, tie_tol: f64) -> (MeshFoot, Vec<MeshFoot>) {
        let (best, ties) = self.bvh.nearest(p, |t| self.mesh.triangle(t), tie_tol);
        let best_foot = MeshFoot {
            point: best.point,
            triangle: best.triangle,
            distance: best.dist2.sqrt(),
        };
        let spatial_tol = tie_tol.max(1e-9 * (1.0 + best_foot.distance));
        let mut alternates: Vec<MeshFoot> = Vec::new();
        for h in ties {
            if h.triangle == best_foot.triangle {
                continue;
            }
            let d = h.dist2.sqrt();
            if d > best_foot.distance + tie_tol {
                continue;
            }
            let pt = h.point;
            if (pt - best_foot.point).norm() <= spatial_tol {
                continue;
            }
            if alternates
                .iter()
                .any(|a| (a.point - pt).norm() <= spatial_tol)
            {
                continue;
            }
            alternates.push(MeshFoot {
                point: pt,
                triangle: h.triangle,
                distance: d,
            });
        }
        (best_foot, alternates)
    }

    /// Exhaustive scan, the test oracle for the hierarchy.
    pub fn nearest_exhaustive(&self, p: &V3) -> MeshFoot {
        let mut best = MeshFoot {
            point: V3::zeros(),
            triangle: u32::MAX,
            distance: f64::INFINITY,
        };
        for t in 0..self.mesh.faces.len() as u32 {
            let (a, b, c) = self.mesh.triangle(t);
            let q = super::bvh::closest_point_triangle(p, &a, &b, &c);
            let d = (p - q).norm();
            if d < best.distance {
                best = MeshFoot {
                    point: q,
                    triangle: t,
                    distance: d,
                };
            }
        }
        best
    }
}
