//! Complex numerics: special functions, expression trees, path quadrature.

mod erf;
mod expr;
mod quad;

pub use erf::{erf, erf_checked, erfi, erfi_checked, ErfValue};
pub use expr::{ExprError, HolomorphicExpr};
pub use quad::{gaussian_tail_bound, integrate, PathSpec, QuadError, QuadResult};

/// Double-precision complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;
