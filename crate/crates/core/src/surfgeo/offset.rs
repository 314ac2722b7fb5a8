//! Parallel-surface curvature transport and tubular-radius bookkeeping.

use super::GeomError;

/// Principal curvatures of the parallel surface at offset `t`:
/// `k_i^t = k_i / (1 - t k_i)`.
///
/// Order `k1 <= k2` is preserved as long as `t` stays below the focal
/// distance of the larger positive curvature.
pub fn parallel_curvatures(k1: f64, k2: f64, t: f64) -> Result<(f64, f64), GeomError> {
    for k in [k1, k2] {
        let denom = 1.0 - t * k;
        if denom.abs() < 1e-12 * (1.0 + (t * k).abs()) {
            return Err(GeomError::FocalPoint {
                t,
                focal: 1.0 / k,
                kappa: k,
            });
        }
    }
    Ok((k1 / (1.0 - t * k1), k2 / (1.0 - t * k2)))
}

/// Tube radius from a principal-curvature bound `c` and a sectional bound
/// `Lambda` (`K >= -Lambda^2`): `eps = min(1/(2 Lambda), 1/(2c)) * (1 - margin)`.
///
/// The margin (default 1e-3 through [`tubular_radius`]) keeps `2 t c < 1`
/// strictly throughout the open tube. A flat surface (`c = Lambda = 0`) has
/// no focal obstruction; the caller's `flat_cap` is returned.
pub fn tubular_radius_with_margin(c: f64, lambda: f64, flat_cap: f64, margin: f64) -> f64 {
    let mut bound = f64::INFINITY;
    if lambda > 0.0 {
        bound = bound.min(0.5 / lambda);
    }
    if c > 0.0 {
        bound = bound.min(0.5 / c);
    }
    if bound.is_infinite() {
        return flat_cap;
    }
    bound * (1.0 - margin)
}

pub fn tubular_radius(c: f64, lambda: f64, flat_cap: f64) -> f64 {
    tubular_radius_with_margin(c, lambda, flat_cap, 1e-3)
}
