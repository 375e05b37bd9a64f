use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::checks::{check_asd, check_half_pic, check_kahler_spectrum, check_middle_eigenvalue};
use super::fields::{analyze_point, divergence_residual, kahler_form_check, weitzenbock_residual};
use crate::tensor::{ChartPoint, MetricPatch, Orientation};
use crate::{Error, Result, DIM};

/// Default cap on the number of grid points of one sweep.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative tolerance of exact algebraic identities.
    pub algebraic: f64,
    /// Absolute tolerance of quantities computed by finite differences.
    pub fd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { algebraic: 1e-10, fd: 1e-4 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    MiddleEigenvalue,
    HalfPic,
    AntiSelfDual,
    KahlerSpectrum,
    Divergence,
    Weitzenbock,
    AlmostComplex,
    ParallelForm,
}

/// Margins pass when `≥ -tol`, residuals when `≤ tol`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionKind {
    Margin,
    Residual,
}

impl Condition {
    pub const ALL: [Condition; 8] = [
        Condition::MiddleEigenvalue,
        Condition::HalfPic,
        Condition::AntiSelfDual,
        Condition::KahlerSpectrum,
        Condition::Divergence,
        Condition::Weitzenbock,
        Condition::AlmostComplex,
        Condition::ParallelForm,
    ];

    /// Conditions that need only the curvature at the point itself.
    pub const POINTWISE: [Condition; 4] =
        [Condition::MiddleEigenvalue, Condition::HalfPic, Condition::AntiSelfDual, Condition::KahlerSpectrum];

    pub fn name(self) -> &'static str {
        match self {
            Condition::MiddleEigenvalue => "middle_eigenvalue",
            Condition::HalfPic => "half_pic",
            Condition::AntiSelfDual => "asd",
            Condition::KahlerSpectrum => "kahler_spectrum",
            Condition::Divergence => "divergence",
            Condition::Weitzenbock => "weitzenbock",
            Condition::AlmostComplex => "almost_complex",
            Condition::ParallelForm => "parallel_form",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn kind(self) -> ConditionKind {
        match self {
            Condition::MiddleEigenvalue | Condition::HalfPic => ConditionKind::Margin,
            _ => ConditionKind::Residual,
        }
    }

    /// What the stored number is.
    pub fn quantity(self) -> &'static str {
        match self {
            Condition::MiddleEigenvalue => "lambda2 + S/12",
            Condition::HalfPic => "min(S, lambda1 + lambda2 + S/6)",
            Condition::AntiSelfDual => "|W+|",
            Condition::KahlerSpectrum => "|spectrum - (S/6, -S/12, -S/12)|",
            Condition::Divergence => "|delta W+|",
            Condition::Weitzenbock => "|Delta W+ - (S/2) W+ + 2 W+^2 + 4 W+#|",
            Condition::AlmostComplex => "|omega o omega + id|",
            Condition::ParallelForm => "|nabla omega|",
        }
    }

    pub fn passes(self, value: f64, tol: f64) -> bool {
        match self.kind() {
            ConditionKind::Margin => value >= -tol,
            ConditionKind::Residual => value <= tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConditionValue {
    Value(f64),
    NotApplicable(&'static str),
}

/// Everything evaluated at one sample point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointRecord {
    pub point: ChartPoint,
    pub scalar: f64,
    pub lambda: [f64; 3],
    pub w_plus_norm: f64,
    pub kahler_residual: f64,
    pub values: Vec<(Condition, ConditionValue)>,
}

impl PointRecord {
    pub fn value(&self, c: Condition) -> Option<ConditionValue> {
        self.values.iter().find(|(k, _)| *k == c).map(|(_, v)| *v)
    }
}

/// Evaluates `conditions` at `p`. All verdict tolerances are `tol.fd`.
pub fn evaluate_point(
    patch: &MetricPatch,
    p: &ChartPoint,
    conditions: &[Condition],
    tol: &Tolerances,
) -> Result<PointRecord> {
    let pc = analyze_point(patch, p)?;
    let s = pc.scalar();
    let kahler = check_kahler_spectrum(&pc.spectrum, s, tol.fd);
    let mut divergence = None;
    let mut form = None;
    let mut values = Vec::with_capacity(conditions.len());
    for &c in conditions {
        let v = match c {
            Condition::MiddleEigenvalue => {
                ConditionValue::Value(check_middle_eigenvalue(&pc.spectrum, s, tol.fd).margin)
            }
            Condition::HalfPic => ConditionValue::Value(check_half_pic(&pc.spectrum, s, tol.fd).margin()),
            Condition::AntiSelfDual => ConditionValue::Value(check_asd(&pc.w_plus, tol.fd).residual),
            Condition::KahlerSpectrum => ConditionValue::Value(kahler.residual),
            Condition::Divergence | Condition::Weitzenbock => {
                let d = match divergence {
                    Some(d) => d,
                    None => {
                        let d = divergence_residual(patch, p)?.norm;
                        divergence = Some(d);
                        d
                    }
                };
                if c == Condition::Divergence {
                    ConditionValue::Value(d)
                } else if d > tol.fd {
                    ConditionValue::NotApplicable("delta W+ != 0")
                } else {
                    ConditionValue::Value(weitzenbock_residual(patch, p)?.norm)
                }
            }
            Condition::AlmostComplex | Condition::ParallelForm => {
                if !kahler.pass {
                    ConditionValue::NotApplicable("spectrum is not of Kahler type")
                } else {
                    let f = match form {
                        Some(f) => f,
                        None => {
                            let f = match kahler_form_check(patch, p) {
                                Ok(f) => Some(f),
                                Err(Error::DegenerateEigenvector { .. }) => None,
                                Err(e) => return Err(e),
                            };
                            form = Some(f);
                            f
                        }
                    };
                    match (f, c) {
                        (None, _) => ConditionValue::NotApplicable("distinguished eigenvalue is not isolated"),
                        (Some(f), Condition::AlmostComplex) => ConditionValue::Value(f.almost_complex_residual),
                        (Some(f), _) => ConditionValue::Value(f.parallel_residual),
                    }
                }
            }
        };
        values.push((c, v));
    }
    Ok(PointRecord {
        point: *p,
        scalar: s,
        lambda: pc.spectrum.lambda,
        w_plus_norm: pc.w_plus.norm(),
        kahler_residual: kahler.residual,
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not applicable",
        }
    }
}

fn lex_less(a: &ChartPoint, b: &ChartPoint) -> bool {
    for i in 0..DIM {
        if a.0[i] != b.0[i] {
            return a.0[i] < b.0[i];
        }
    }
    false
}

/// Grid aggregate of one condition. Merging is associative and
/// commutative; ties in the extrema go to the lexicographically smallest
/// point.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionSummary {
    pub condition: Condition,
    pub tolerance: f64,
    pub evaluated: usize,
    pub not_applicable: usize,
    pub failures: usize,
    pub min: f64,
    pub argmin: Option<ChartPoint>,
    pub max: f64,
    pub argmax: Option<ChartPoint>,
    /// First reason recorded for a not-applicable point.
    pub note: Option<&'static str>,
}

impl ConditionSummary {
    pub fn empty(condition: Condition, tolerance: f64) -> Self {
        Self {
            condition,
            tolerance,
            evaluated: 0,
            not_applicable: 0,
            failures: 0,
            min: f64::INFINITY,
            argmin: None,
            max: f64::NEG_INFINITY,
            argmax: None,
            note: None,
        }
    }

    pub fn add(&mut self, p: &ChartPoint, v: ConditionValue) {
        match v {
            ConditionValue::NotApplicable(reason) => {
                self.not_applicable += 1;
                self.note.get_or_insert(reason);
            }
            ConditionValue::Value(x) => {
                let mut one = Self::empty(self.condition, self.tolerance);
                one.evaluated = 1;
                one.failures = usize::from(!self.condition.passes(x, self.tolerance));
                one.min = x;
                one.max = x;
                one.argmin = Some(*p);
                one.argmax = Some(*p);
                self.merge(&one);
            }
        }
    }

    pub fn merge(&mut self, other: &Self) {
        self.evaluated += other.evaluated;
        self.not_applicable += other.not_applicable;
        self.failures += other.failures;
        if self.note.is_none() {
            self.note = other.note;
        }
        if let Some(q) = other.argmin {
            let better = match self.argmin {
                None => true,
                Some(p) => other.min < self.min || (other.min == self.min && lex_less(&q, &p)),
            };
            if better {
                self.min = other.min;
                self.argmin = Some(q);
            }
        }
        if let Some(q) = other.argmax {
            let better = match self.argmax {
                None => true,
                Some(p) => other.max > self.max || (other.max == self.max && lex_less(&q, &p)),
            };
            if better {
                self.max = other.max;
                self.argmax = Some(q);
            }
        }
    }

    /// The extreme value that decides the verdict: the minimum of a margin,
    /// the maximum of a residual.
    pub fn worst(&self) -> Option<f64> {
        if self.evaluated == 0 {
            return None;
        }
        Some(match self.condition.kind() {
            ConditionKind::Margin => self.min,
            ConditionKind::Residual => self.max,
        })
    }

    pub fn worst_point(&self) -> Option<ChartPoint> {
        match self.condition.kind() {
            ConditionKind::Margin => self.argmin,
            ConditionKind::Residual => self.argmax,
        }
    }

    pub fn verdict(&self) -> Verdict {
        match self.worst() {
            None => Verdict::NotApplicable,
            Some(w) if self.condition.passes(w, self.tolerance) => Verdict::Pass,
            Some(_) => Verdict::Fail,
        }
    }
}

/// Coarse reading of the sampled self-dual Weyl tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// `W⁺ = 0` at every sample.
    AntiSelfDual,
    /// Spectrum `(S/6, -S/12, -S/12)` at every sample.
    KahlerSpectrum,
    Neither,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::AntiSelfDual => "anti-self-dual",
            Classification::KahlerSpectrum => "Kahler-spectrum",
            Classification::Neither => "neither: hypotheses fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub metric: String,
    pub orientation: Orientation,
    pub resolution: usize,
    pub tolerances: Tolerances,
    pub conditions: Vec<Condition>,
    pub summaries: Vec<ConditionSummary>,
    pub records: Vec<PointRecord>,
    pub classification: Classification,
    /// Scalar curvature range over the samples.
    pub scalar_range: (f64, f64),
}

impl ConditionReport {
    /// Aggregates per-point records; the result does not depend on the
    /// order of `records`.
    pub fn from_records(
        patch: &MetricPatch,
        resolution: usize,
        conditions: &[Condition],
        tol: &Tolerances,
        mut records: Vec<PointRecord>,
    ) -> Self {
        records.sort_by(|a, b| {
            if lex_less(&a.point, &b.point) {
                core::cmp::Ordering::Less
            } else if lex_less(&b.point, &a.point) {
                core::cmp::Ordering::Greater
            } else {
                core::cmp::Ordering::Equal
            }
        });
        let mut summaries: Vec<ConditionSummary> =
            conditions.iter().map(|&c| ConditionSummary::empty(c, tol.fd)).collect();
        let mut asd = true;
        let mut kahler = true;
        let mut smin = f64::INFINITY;
        let mut smax = f64::NEG_INFINITY;
        for r in &records {
            for s in summaries.iter_mut() {
                if let Some(v) = r.value(s.condition) {
                    s.add(&r.point, v);
                }
            }
            asd &= r.w_plus_norm < tol.fd;
            kahler &= r.kahler_residual < tol.fd;
            smin = smin.min(r.scalar);
            smax = smax.max(r.scalar);
        }
        let classification = if records.is_empty() {
            Classification::Neither
        } else if asd {
            Classification::AntiSelfDual
        } else if kahler {
            Classification::KahlerSpectrum
        } else {
            Classification::Neither
        };
        Self {
            metric: String::from(patch.name()),
            orientation: patch.orientation(),
            resolution,
            tolerances: *tol,
            conditions: conditions.to_vec(),
            summaries,
            records,
            classification,
            scalar_range: (smin, smax),
        }
    }

    pub fn summary(&self, c: Condition) -> Option<&ConditionSummary> {
        self.summaries.iter().find(|s| s.condition == c)
    }

    /// No selected condition fails (not-applicable conditions do not count).
    pub fn all_pass(&self) -> bool {
        self.summaries.iter().all(|s| s.verdict() != Verdict::Fail)
    }
}

/// Uniform `resolution⁴` grid over the chart interior, in lexicographic
/// order of the coordinates.
pub fn grid_points(patch: &MetricPatch, resolution: usize, budget: usize) -> Result<Vec<ChartPoint>> {
    if resolution < 2 {
        return Err(Error::InvalidSweep(format!("grid resolution must be at least 2, got {resolution}")));
    }
    let count = resolution.checked_pow(DIM as u32).unwrap_or(usize::MAX);
    if count > budget {
        return Err(Error::BudgetExceeded { requested: count, budget });
    }
    let interior = patch.interior()?;
    let step = 1.0 / (resolution - 1) as f64;
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        let mut u = [0.0; DIM];
        let mut rest = n;
        for axis in (0..DIM).rev() {
            u[axis] = (rest % resolution) as f64 * step;
            rest /= resolution;
        }
        out.push(interior.from_unit(u));
    }
    Ok(out)
}

/// Sequential grid sweep; see [`ConditionReport::from_records`] for the
/// aggregation.
pub fn grid_sweep(
    patch: &MetricPatch,
    resolution: usize,
    conditions: &[Condition],
    tol: &Tolerances,
    budget: usize,
) -> Result<ConditionReport> {
    let points = grid_points(patch, resolution, budget)?;
    let records = points.iter().map(|p| evaluate_point(patch, p, conditions, tol)).collect::<Result<Vec<_>>>()?;
    Ok(ConditionReport::from_records(patch, resolution, conditions, tol, records))
}
