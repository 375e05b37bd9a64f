//! Chart-based metric evaluation and finite-difference covariant calculus.

mod chart;
mod covariant;
mod curvature;
pub mod fd;
mod metric;

pub use chart::{ChartDomain, ChartPoint, Orientation};
pub use covariant::{
    covariant_derivative, rough_laplacian, CovariantDerivativeField, FnField, MetricField, Tensor, TensorField,
};
pub use curvature::{christoffel, riemann, to_frame4, Christoffel, CurvatureData, Rank4};
pub use metric::{
    eval_metric, inverse_metric, Analytic, FnMetric, MetricComponents, MetricDerivatives, MetricMeta, MetricPatch,
    ScalarMetric, StepSizes, CONNECTION_STEP, FIELD_STEP, METRIC_STEP, MIN_METRIC_EIGENVALUE,
};
