//! Multi-threaded grid sweeps.

use std::thread;

use weylscope_core::conditions::{evaluate_point, grid_points, Condition, ConditionReport, PointRecord, Tolerances};
use weylscope_core::tensor::{ChartPoint, MetricPatch};
use weylscope_core::Result;

/// Evaluates `points` on `workers` threads. Each worker takes one contiguous
/// chunk; records come back in point order and the first error in point
/// order wins.
pub fn evaluate_points(
    patch: &MetricPatch,
    points: &[ChartPoint],
    conditions: &[Condition],
    tol: &Tolerances,
    workers: usize,
) -> Result<Vec<PointRecord>> {
    let workers = workers.clamp(1, points.len().max(1));
    if workers == 1 {
        return points.iter().map(|p| evaluate_point(patch, p, conditions, tol)).collect();
    }
    let chunk = points.len().div_ceil(workers);
    let parts: Vec<Result<Vec<PointRecord>>> = thread::scope(|s| {
        let handles: Vec<_> = points
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(|p| evaluate_point(patch, p, conditions, tol)).collect()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(points.len());
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

/// Grid sweep over the chart interior; the report does not depend on the
/// worker count.
pub fn parallel_grid_sweep(
    patch: &MetricPatch,
    resolution: usize,
    conditions: &[Condition],
    tol: &Tolerances,
    budget: usize,
    workers: usize,
) -> Result<ConditionReport> {
    let points = grid_points(patch, resolution, budget)?;
    let records = evaluate_points(patch, &points, conditions, tol, workers)?;
    Ok(ConditionReport::from_records(patch, resolution, conditions, tol, records))
}

/// Worker count from the available parallelism.
pub fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}
