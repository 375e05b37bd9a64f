use alloc::string::String;
use alloc::sync::Arc;

use super::chart::{ChartDomain, ChartPoint, Orientation};
use super::fd;
use crate::linalg::{self, Mat4};
use crate::scalar::{Dual, Scalar};
use crate::{Error, Result, DIM};

/// `dg[k][i][j] = ∂_k g_ij`.
pub type MetricDerivatives = [Mat4; DIM];

/// Smallest admissible metric eigenvalue.
pub const MIN_METRIC_EIGENVALUE: f64 = 1e-10;

/// Relative step of the first-derivative stencil applied to the metric.
pub const METRIC_STEP: f64 = 1e-3;
/// Relative step of the stencil applied to the Christoffel symbols.
pub const CONNECTION_STEP: f64 = 0.003_162_277_660_168_379_5; // 10^-2.5
/// Relative step of covariant derivatives of curvature-derived fields.
pub const FIELD_STEP: f64 = 2.5e-3;

/// Evaluates `g_ij` on a chart.
pub trait MetricComponents: Send + Sync {
    fn components(&self, x: &[f64; DIM]) -> Mat4;

    /// Exact first derivatives, when the evaluator can provide them.
    fn derivatives(&self, _x: &[f64; DIM]) -> Option<MetricDerivatives> {
        None
    }
}

/// Metric written once against [`Scalar`], so that exact derivatives come
/// from dual-number evaluation.
pub trait ScalarMetric: Send + Sync {
    fn components<S: Scalar>(&self, x: &[S; DIM]) -> [[S; DIM]; DIM];
}

/// Adapter turning a [`ScalarMetric`] into [`MetricComponents`] with exact
/// derivatives.
pub struct Analytic<M>(pub M);

impl<M: ScalarMetric> MetricComponents for Analytic<M> {
    fn components(&self, x: &[f64; DIM]) -> Mat4 {
        self.0.components(x)
    }

    fn derivatives(&self, x: &[f64; DIM]) -> Option<MetricDerivatives> {
        let mut out = [[[0.0; DIM]; DIM]; DIM];
        for (k, dk) in out.iter_mut().enumerate() {
            let mut xd = [Dual::constant(0.0); DIM];
            for i in 0..DIM {
                xd[i] = Dual::new(x[i], if i == k { 1.0 } else { 0.0 });
            }
            let g = self.0.components(&xd);
            for i in 0..DIM {
                for j in 0..DIM {
                    dk[i][j] = g[i][j].du;
                }
            }
        }
        Some(out)
    }
}

/// Plain closure metric; derivatives come from finite differences.
pub struct FnMetric<F>(pub F);

impl<F> MetricComponents for FnMetric<F>
where
    F: Fn(&[f64; DIM]) -> Mat4 + Send + Sync,
{
    fn components(&self, x: &[f64; DIM]) -> Mat4 {
        (self.0)(x)
    }
}

/// Finite-difference steps per coordinate axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepSizes {
    pub metric: [f64; DIM],
    pub connection: [f64; DIM],
    pub field: [f64; DIM],
}

impl StepSizes {
    /// Relative steps scaled by the chart extent, capped at unit extent.
    pub fn for_domain(domain: &ChartDomain) -> Self {
        let mut s = Self { metric: [0.0; DIM], connection: [0.0; DIM], field: [0.0; DIM] };
        for i in 0..DIM {
            let scale = domain.extent(i).min(1.0);
            s.metric[i] = METRIC_STEP * scale;
            s.connection[i] = CONNECTION_STEP * scale;
            s.field[i] = FIELD_STEP * scale;
        }
        s
    }

    /// Stencil margin keeping every evaluation inside the chart: the larger of
    /// five times the largest step and the reach of a rough Laplacian of a
    /// curvature field (`r·(2·field + connection + metric)` for stencil reach
    /// `r`).
    pub fn margin(&self) -> [f64; DIM] {
        let mut m = [0.0; DIM];
        for (i, v) in m.iter_mut().enumerate() {
            let largest = self.field[i].max(self.connection[i]).max(self.metric[i]);
            let reach = fd::REACH * (2.0 * self.field[i] + self.connection[i] + self.metric[i]);
            *v = (5.0 * largest).max(reach);
        }
        m
    }
}

/// Optional closed-form facts attached to a metric.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MetricMeta {
    /// `λ` with `Ric = λ g`, when the metric is known to be Einstein.
    pub einstein_constant: Option<f64>,
    pub scalar_curvature: Option<f64>,
}

/// A Riemannian metric on one rectangular chart.
#[derive(Clone)]
pub struct MetricPatch {
    name: String,
    domain: ChartDomain,
    components: Arc<dyn MetricComponents>,
    use_analytic: bool,
    scale2: f64,
    orientation: Orientation,
    steps: StepSizes,
    meta: MetricMeta,
}

impl core::fmt::Debug for MetricPatch {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("MetricPatch")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("scale2", &self.scale2)
            .field("orientation", &self.orientation)
            .field("analytic", &self.use_analytic)
            .finish()
    }
}

impl MetricPatch {
    pub fn new(name: impl Into<String>, domain: ChartDomain, components: impl MetricComponents + 'static) -> Self {
        let steps = StepSizes::for_domain(&domain);
        Self {
            name: name.into(),
            domain,
            components: Arc::new(components),
            use_analytic: true,
            scale2: 1.0,
            orientation: Orientation::Positive,
            steps,
            meta: MetricMeta::default(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &ChartDomain {
        &self.domain
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn steps(&self) -> &StepSizes {
        &self.steps
    }

    pub fn meta(&self) -> &MetricMeta {
        &self.meta
    }

    /// Domain shrunk by the stencil margin; every point in it supports all
    /// differential operations of this crate.
    pub fn interior(&self) -> Result<ChartDomain> {
        self.domain.shrunk(self.steps.margin())
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn with_meta(mut self, meta: MetricMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn with_steps(mut self, steps: StepSizes) -> Self {
        self.steps = steps;
        self
    }

    /// Forces finite-difference metric derivatives even when the evaluator
    /// provides exact ones.
    pub fn without_analytic_derivatives(mut self) -> Self {
        self.use_analytic = false;
        self
    }

    pub fn has_analytic_derivatives(&self) -> bool {
        self.use_analytic && self.components.derivatives(&self.domain.center().0).is_some()
    }

    /// The metric `c² g` on the same chart.
    pub fn scaled(mut self, c: f64) -> Self {
        let c2 = c * c;
        self.scale2 *= c2;
        self.meta.scalar_curvature = self.meta.scalar_curvature.map(|s| s / c2);
        self.meta.einstein_constant = self.meta.einstein_constant.map(|l| l / c2);
        self
    }

    /// `g_ij(p)` with only a domain and finiteness check.
    pub fn components_at(&self, p: &ChartPoint) -> Result<Mat4> {
        self.domain.check(p)?;
        let g = linalg::scale(&linalg::symmetrize(&self.components.components(&p.0)), self.scale2);
        if g.iter().flatten().all(|v| v.is_finite()) {
            Ok(g)
        } else {
            Err(Error::DegenerateMetric { point: p.0, min_eigenvalue: f64::NAN })
        }
    }

    /// `∂_k g_ij(p)`: exact when available, otherwise sixth-order central
    /// differences with the metric step.
    pub fn derivatives_at(&self, p: &ChartPoint) -> Result<MetricDerivatives> {
        if self.use_analytic {
            if let Some(d) = self.components.derivatives(&p.0) {
                self.domain.check(p)?;
                let mut d = d;
                for m in d.iter_mut() {
                    *m = linalg::scale(&linalg::symmetrize(m), self.scale2);
                }
                return Ok(d);
            }
        }
        let mut out = [[[0.0; DIM]; DIM]; DIM];
        for (k, dk) in out.iter_mut().enumerate() {
            *dk = fd::derivative_mat(|t| self.components_at(&p.shifted(k, t)), self.steps.metric[k])?;
        }
        Ok(out)
    }
}

/// `g_ij(p)`, rejecting non-positive-definite values.
pub fn eval_metric(patch: &MetricPatch, p: &ChartPoint) -> Result<Mat4> {
    let g = patch.components_at(p)?;
    check_positive_definite(&g, p)?;
    Ok(g)
}

pub(crate) fn check_positive_definite(g: &Mat4, p: &ChartPoint) -> Result<()> {
    let eig = linalg::symmetric_eigen(g)?;
    if eig.values[0] > MIN_METRIC_EIGENVALUE {
        Ok(())
    } else {
        Err(Error::DegenerateMetric { point: p.0, min_eigenvalue: eig.values[0] })
    }
}

/// Inverse metric; fails for singular `g`.
pub fn inverse_metric(g: &Mat4, p: &ChartPoint) -> Result<Mat4> {
    linalg::inverse(g).ok_or(Error::DegenerateMetric { point: p.0, min_eigenvalue: 0.0 })
}
