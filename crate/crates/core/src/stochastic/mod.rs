//! Reproducible planar Brownian paths and the Monte Carlo probes built on
//! them.
//!
//! Paths use one ChaCha stream per path index, so path `k` is identical
//! no matter how work is scheduled across threads, and ensembles aggregate
//! in path order. Recurrence and transience are reported as statistics and
//! trends at pinned configurations, never as verdicts on the underlying
//! dichotomy - a finite simulation cannot decide it.

mod hits;
mod recurrence;
mod timechange;

pub use hits::neighborhood_hits;
pub use recurrence::{recurrence_stat, PathRecurrence, RecurrenceStats};
pub use timechange::{time_change, TimeChange, TimeChangeVerdict};

use crate::surfgeo::{DistanceSurface, V3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StochasticError {
    #[error("step budget exceeded: T/h = {steps} > {budget}")]
    BudgetExceeded { steps: usize, budget: usize },
    #[error("invalid parameter: {0}")]
    Invalid(String),
}

/// Seed plus per-path stream selection for a counter-addressable generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RngSpec {
    pub seed: u64,
}

impl RngSpec {
    pub fn new(seed: u64) -> Self {
        RngSpec { seed }
    }

    /// Generator for path `stream`; identical on every platform for a fixed
    /// (seed, stream, step count).
    pub fn rng_for(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// One discretized planar Brownian path from the origin: positions after
/// each of the `steps` Euler increments (`N(0, h)` per coordinate).
#[derive(Debug, Clone)]
pub struct BmPath {
    pub stream: u64,
    pub h: f64,
    pub horizon: f64,
    pub positions: Vec<[f64; 2]>,
}

impl BmPath {
    /// Time of the k-th stored position (position k follows step k+1).
    pub fn time_at(&self, index: usize) -> f64 {
        (index + 1) as f64 * self.h
    }
}

/// Sample a single path on stream `stream`.
pub fn sample_path(spec: &RngSpec, stream: u64, h: f64, horizon: f64) -> BmPath {
    let steps = (horizon / h).round() as usize;
    let mut rng = spec.rng_for(stream);
    let sd = h.sqrt();
    let mut positions = Vec::with_capacity(steps);
    let mut x = 0.0f64;
    let mut y = 0.0f64;
    for _ in 0..steps {
        let gx: f64 = StandardNormal.sample(&mut rng);
        let gy: f64 = StandardNormal.sample(&mut rng);
        x += sd * gx;
        y += sd * gy;
        positions.push([x, y]);
    }
    BmPath {
        stream,
        h,
        horizon,
        positions,
    }
}

/// Sample `n_paths` independent paths (streams `0..n_paths`).
///
/// `budget` caps the per-path step count `T/h`.
pub fn sample_paths(
    spec: &RngSpec,
    n_paths: usize,
    h: f64,
    horizon: f64,
    budget: usize,
) -> Result<Vec<BmPath>, StochasticError> {
    if !(h > 0.0) || !(horizon > 0.0) {
        return Err(StochasticError::Invalid(format!(
            "need h > 0 and T > 0, got h = {h}, T = {horizon}"
        )));
    }
    let steps = (horizon / h).round() as usize;
    if steps > budget {
        return Err(StochasticError::BudgetExceeded { steps, budget });
    }
    Ok((0..n_paths as u64)
        .into_par_iter()
        .map(|k| sample_path(spec, k, h, horizon))
        .collect())
}

/// Default step size `h = 1e-3 sqrt(T)`.
pub fn default_step(horizon: f64) -> f64 {
    1e-3 * horizon.sqrt()
}

/// Streaming per-path summary row: everything the statistics exports need
/// without retaining path positions.
#[derive(Debug, Clone)]
pub struct PathRow {
    pub stream: u64,
    /// Distinct visit clusters to the disk.
    pub visits: usize,
    /// Last in-disk time, if the disk was ever visited.
    pub last_visit: Option<f64>,
    /// Final time-change integral, when a conformal factor was supplied.
    pub tau_final: Option<f64>,
    /// Minimum positive distance of the mapped path to the target surface.
    pub min_t: Option<f64>,
}

/// A full Monte Carlo experiment over one ensemble.
pub struct ExperimentSpec<'a> {
    pub rng: RngSpec,
    pub n_paths: usize,
    pub h: f64,
    pub horizon: f64,
    pub budget: usize,
    pub disk_radius: f64,
    pub revisit_gap: f64,
    /// Conformal factor squared for the time change.
    pub lambda_sq: Option<&'a (dyn Fn([f64; 2]) -> f64 + Sync)>,
    /// Immersion of the parameter plane plus the target surface for
    /// neighborhood hits.
    pub surface: Option<(
        &'a (dyn Fn([f64; 2]) -> V3 + Sync),
        &'a (dyn DistanceSurface),
    )>,
    pub eps_list: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub rows: Vec<PathRow>,
    pub horizon: f64,
    /// Fraction of paths with at least one distinct revisit.
    pub revisit_fraction: f64,
    /// Fraction of paths whose last disk visit falls after T/2.
    pub late_visit_fraction: f64,
    pub mean_visits: f64,
    /// `min_k tau_k(T) / T`, when a time change ran.
    pub min_tau_ratio: Option<f64>,
    /// Hit frequency per epsilon in `eps_list` order.
    pub hit_frequencies: Vec<(f64, f64)>,
    /// Ensemble mean of `|B_T|^2`.
    pub mean_sq_displacement: f64,
}

/// Run the experiment streaming: one pass per path, rows in stream order
/// regardless of the worker count.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult, StochasticError> {
    let steps = (spec.horizon / spec.h).round() as usize;
    if steps > spec.budget {
        return Err(StochasticError::BudgetExceeded {
            steps,
            budget: spec.budget,
        });
    }

    struct Acc {
        row: PathRow,
        final_sq: f64,
    }

    let accs: Vec<Acc> = (0..spec.n_paths as u64)
        .into_par_iter()
        .map(|stream| {
            let path = sample_path(&spec.rng, stream, spec.h, spec.horizon);
            let rec = recurrence::path_clusters(&path, spec.disk_radius, spec.revisit_gap);
            let tau_final = spec.lambda_sq.map(|ls| {
                // left-endpoint rule from the origin
                let mut tau = 0.0;
                let mut prev = [0.0f64; 2];
                for p in &path.positions {
                    tau += ls(prev) * spec.h;
                    prev = *p;
                }
                tau
            });
            let min_t = spec.surface.map(|(imm, surf)| {
                let mut min_t = f64::INFINITY;
                for p in &path.positions {
                    if let Ok(q) = surf.query(&imm(*p), f64::INFINITY) {
                        if q.t > 0.0 {
                            min_t = min_t.min(q.t);
                        }
                    }
                }
                min_t
            });
            let last = path.positions.last().copied().unwrap_or([0.0, 0.0]);
            Acc {
                row: PathRow {
                    stream,
                    visits: rec.0,
                    last_visit: rec.1,
                    tau_final,
                    min_t,
                },
                final_sq: last[0] * last[0] + last[1] * last[1],
            }
        })
        .collect();

    let n = accs.len().max(1) as f64;
    let revisit = accs.iter().filter(|a| a.row.visits >= 2).count() as f64 / n;
    let late = accs
        .iter()
        .filter(|a| a.row.last_visit.is_some_and(|t| t > spec.horizon / 2.0))
        .count() as f64
        / n;
    let mean_visits = accs.iter().map(|a| a.row.visits as f64).sum::<f64>() / n;
    let min_tau_ratio = spec.lambda_sq.map(|_| {
        accs.iter()
            .filter_map(|a| a.row.tau_final)
            .fold(f64::INFINITY, f64::min)
            / spec.horizon
    });
    let hit_frequencies = spec
        .eps_list
        .iter()
        .map(|&eps| {
            let f = accs
                .iter()
                .filter(|a| a.row.min_t.is_some_and(|t| t < eps))
                .count() as f64
                / n;
            (eps, f)
        })
        .collect();
    let mean_sq_displacement = accs.iter().map(|a| a.final_sq).sum::<f64>() / n;

    Ok(ExperimentResult {
        rows: accs.into_iter().map(|a| a.row).collect(),
        horizon: spec.horizon,
        revisit_fraction: revisit,
        late_visit_fraction: late,
        mean_visits,
        min_tau_ratio,
        hit_frequencies,
        mean_sq_displacement,
    })
}
