//! Limit-set probes along rays `gamma_theta(t) = t e^{i theta}`.

use crate::cnum::Complex;
use crate::surfgeo::{GeomError, V3};

#[derive(Debug, Clone, PartialEq)]
pub enum LimitVerdict {
    /// Successive probe points went Cauchy under the tolerance; `point` is
    /// the last evaluation, `rate` the ratio of the final two increments.
    Converged { point: V3, rate: f64 },
    Diverged,
    /// Evaluation failed before a verdict could be formed; the sequence is
    /// truncated at parameter `at`.
    Truncated { at: f64 },
}

#[derive(Debug, Clone)]
pub struct LimitProbe {
    pub theta: f64,
    /// `(t, chi(t e^{i theta}))` for every successfully evaluated t.
    pub points: Vec<(f64, V3)>,
    pub verdict: LimitVerdict,
}

/// Evaluate `eval` along the ray at the increasing parameters `t_list` and
/// classify the tail.
///
/// Convergence requires the final two increments to both sit under `tol`;
/// divergence is declared when the tail increments grow or the values blow
/// up. Evaluation failure truncates the sequence — if the points had already
/// grown beyond any earlier scale, that is still reported as divergence.
pub fn limit_probe<F>(eval: F, theta: f64, t_list: &[f64], tol: f64) -> LimitProbe
where
    F: Fn(Complex) -> Result<V3, GeomError>,
{
    assert!(
        t_list.windows(2).all(|w| w[0] < w[1]),
        "t_list must be strictly increasing"
    );
    let mut points: Vec<(f64, V3)> = Vec::with_capacity(t_list.len());
    let mut truncated_at = None;
    for &t in t_list {
        match eval(Complex::from_polar(t, theta)) {
            Ok(p) if p.iter().all(|x| x.is_finite()) => points.push((t, p)),
            _ => {
                truncated_at = Some(t);
                break;
            }
        }
    }

    let increments: Vec<f64> = points
        .windows(2)
        .map(|w| (w[1].1 - w[0].1).norm())
        .collect();

    let verdict = if points.len() >= 3 && truncated_at.is_none() {
        let n = increments.len();
        let last = increments[n - 1];
        let prev = increments[n - 2];
        if last <= tol && prev <= tol {
            LimitVerdict::Converged {
                point: points[points.len() - 1].1,
                rate: if prev > 0.0 { last / prev } else { 0.0 },
            }
        } else {
            LimitVerdict::Diverged
        }
    } else if let Some(at) = truncated_at {
        // saturation mid-ray after visible growth is divergence in substance
        let grew = increments.last().is_some_and(|&d| d > tol)
            || points
                .last()
                .is_some_and(|(_, p)| p.norm() > 1e6);
        if grew {
            LimitVerdict::Diverged
        } else {
            LimitVerdict::Truncated { at }
        }
    } else {
        LimitVerdict::Truncated {
            at: t_list.first().copied().unwrap_or(0.0),
        }
    };

    LimitProbe {
        theta,
        points,
        verdict,
    }
}

/// Geometric parameter ladder `start * ratio^k`, `k = 0..count`, for probe
/// schedules: error-function tails decay oscillating like `1/t`, so doubling
/// steps expose both convergence and its rate.
pub fn geometric_ts(start: f64, ratio: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| start * ratio.powi(k as i32)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weierstrass::ErfSurface;
    use std::f64::consts::PI;

    fn probe_surface(theta: f64) -> LimitProbe {
        let s = ErfSurface::new(1.0, 5.0).unwrap();
        let ts = geometric_ts(1.0, 2.0, 23); // up to ~4.2e6
        s.limit_probe(theta, &ts, 5e-7)
    }

    #[test]
    fn diagonal_rays_converge_to_limit_points() {
        let s = ErfSurface::new(1.0, 5.0).unwrap();
        let q = s.limit_points().unwrap();
        for (k, want) in [(1usize, q[0]), (3, q[1]), (5, q[2]), (7, q[3])] {
            let probe = probe_surface(k as f64 * PI / 4.0);
            match probe.verdict {
                LimitVerdict::Converged { point, .. } => {
                    assert!(
                        (point - want).norm() <= 1e-6,
                        "theta = {k}pi/4: got {point:?}, want {want:?}, err {}",
                        (point - want).norm()
                    );
                }
                other => panic!("theta = {k}pi/4 should converge, got {other:?}"),
            }
        }
    }

    #[test]
    fn real_ray_diverges() {
        // x1 grows like erfi along theta = 0
        let probe = probe_surface(0.0);
        assert_eq!(probe.verdict, LimitVerdict::Diverged);
    }

    #[test]
    fn imaginary_ray_diverges() {
        let probe = probe_surface(PI / 2.0);
        assert_eq!(probe.verdict, LimitVerdict::Diverged);
    }

    #[test]
    #[should_panic(expected = "strictly increasing")]
    fn rejects_unsorted_ts() {
        let s = ErfSurface::new(1.0, 5.0).unwrap();
        s.limit_probe(0.0, &[2.0, 1.0], 1e-6);
    }
}
