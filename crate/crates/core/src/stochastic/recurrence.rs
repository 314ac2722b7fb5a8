//! Disk-visit statistics for path ensembles.
//!
//! A "visit" is a sampled position inside the disk; visits separated by at
//! least `revisit_gap` in time count as distinct clusters. Two summary
//! fractions are reported: paths that genuinely came back (two or more
//! clusters), and paths whose last visit falls in the second half of the
//! horizon. The first is the headline recurrence statistic; the second is
//! the time-windowed variant that separates the planar walk from transient
//! controls.

use super::BmPath;

#[derive(Debug, Clone, PartialEq)]
pub struct PathRecurrence {
    pub stream: u64,
    /// Distinct visit clusters.
    pub visits: usize,
    /// Last in-disk sample time.
    pub last_visit: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct RecurrenceStats {
    pub disk_radius: f64,
    pub revisit_gap: f64,
    pub horizon: f64,
    pub per_path: Vec<PathRecurrence>,
    /// Fraction of paths with >= 2 distinct visit clusters.
    pub revisit_fraction: f64,
    /// Fraction of paths whose last visit time exceeds T/2.
    pub late_visit_fraction: f64,
    pub mean_visits: f64,
}

/// Cluster count and last-visit time for one path.
pub(crate) fn path_clusters(path: &BmPath, radius: f64, gap: f64) -> (usize, Option<f64>) {
    let r2 = radius * radius;
    let mut clusters = 0usize;
    let mut last_in: Option<f64> = None;
    for (i, p) in path.positions.iter().enumerate() {
        if p[0] * p[0] + p[1] * p[1] <= r2 {
            let t = path.time_at(i);
            match last_in {
                None => clusters = 1,
                Some(prev) if t - prev >= gap => clusters += 1,
                Some(_) => {}
            }
            last_in = Some(t);
        }
    }
    (clusters, last_in)
}

/// Visit statistics for an ensemble of sampled paths.
pub fn recurrence_stat(paths: &[BmPath], disk_radius: f64, revisit_gap: f64) -> RecurrenceStats {
    assert!(revisit_gap > 0.0, "revisit_gap must be positive");
    let horizon = paths.first().map(|p| p.horizon).unwrap_or(0.0);
    let per_path: Vec<PathRecurrence> = paths
        .iter()
        .map(|p| {
            let (visits, last_visit) = path_clusters(p, disk_radius, revisit_gap);
            PathRecurrence {
                stream: p.stream,
                visits,
                last_visit,
            }
        })
        .collect();
    let n = per_path.len().max(1) as f64;
    let revisit_fraction = per_path.iter().filter(|p| p.visits >= 2).count() as f64 / n;
    let late_visit_fraction = per_path
        .iter()
        .filter(|p| p.last_visit.is_some_and(|t| t > horizon / 2.0))
        .count() as f64
        / n;
    let mean_visits = per_path.iter().map(|p| p.visits as f64).sum::<f64>() / n;
    RecurrenceStats {
        disk_radius,
        revisit_gap,
        horizon,
        per_path,
        revisit_fraction,
        late_visit_fraction,
        mean_visits,
    }
}
