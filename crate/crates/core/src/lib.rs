//! Numerical laboratory for half-space geometry of minimal and CMC surfaces.
//!
//! The crate is organized around five subsystems:
//!
//! * [`cnum`] — complex special functions (erf/erfi on `C`), holomorphic
//!   expression trees with exact symbolic derivatives, and adaptive
//!   Gauss-Kronrod quadrature along paths in the plane.
//! * [`weierstrass`] — minimal immersions from Weierstrass data `(f, g)`,
//!   including the two built-in examples (an Enneper-type immersion and an
//!   error-function surface), their metric, Gauss map, curvature and
//!   limit-set probes.
//! * [`surfgeo`] — generic surface geometry: fundamental forms and principal
//!   curvatures of parametric patches, triangle meshes with BVH-accelerated
//!   nearest-point queries, signed distance fields, parallel-surface
//!   curvature transport and tubular-radius bookkeeping.
//! * [`barrier`] — the log-barrier profile `g(t) = log((2+eps*c)/(2+4ct))`,
//!   its Hessian eigenvalues and subspace-trace bounds, and pointwise
//!   certificates for the subharmonicity / CMC sub-equation margins, plus
//!   the flat-ambient slice estimate and boundary-distance reports.
//! * [`stochastic`] — reproducible planar Brownian paths, disk-recurrence
//!   statistics, conformal time changes and surface-neighborhood hit
//!   frequencies.
//!
//! Mean curvature is everywhere the trace of the shape operator (the sum of
//! the principal curvatures, no 1/2 factor). Principal curvatures of a
//! surface queried through a signed-distance field are taken with respect to
//! the normal pointing toward the query point.

pub mod barrier;
pub mod cnum;
pub mod stochastic;
pub mod surfgeo;
pub mod weierstrass;

pub use cnum::{erf, erfi, Complex, HolomorphicExpr, PathSpec};
pub use surfgeo::{MeshIndex, Patch, SurfaceForms, TriMesh, TubularQuery};
pub use weierstrass::{EnneperParams, ErfSurface, SurfaceJet, WeierstrassData};
