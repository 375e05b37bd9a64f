//! Report assembly and rendering. Every renderer is a pure function of the
//! report value, so identical runs give byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use weylscope_core::catalog::{CatalogEntry, Truth};
use weylscope_core::conditions::{
    Condition, ConditionKind, ConditionReport, ConditionSummary, ConditionValue, Tolerances, Verdict,
};
use weylscope_core::tensor::ChartDomain;

use crate::identities::IdentityResult;
use crate::target::Target;

pub const SCHEMA_ID: &str = "weylscope-report/1";
pub const TOOL_NAME: &str = "weylscope";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CAVEAT: &str = "chart-sampled; not a global certificate";

/// Statements about closed manifolds that sampled charts cannot settle.
pub const OUT_OF_SCOPE: [&str; 5] = [
    "global dichotomy on closed four-manifolds",
    "double-cover alternative of the classification",
    "Hitchin classification of self-dual Einstein manifolds",
    "K3 branch (no closed-form Calabi-Yau metric)",
    "eigenvalue inequalities in the barrier sense at eigenvalue crossings",
];

/// Report key of a condition's quantity.
pub fn quantity_key(c: Condition) -> &'static str {
    match c {
        Condition::MiddleEigenvalue => "middle_eigenvalue_margin",
        Condition::HalfPic => "half_pic_margin",
        Condition::AntiSelfDual => "asd_norm",
        Condition::KahlerSpectrum => "kahler_spectrum_residual",
        Condition::Divergence => "divergence_residual",
        Condition::Weitzenbock => "weitzenbock_residual",
        Condition::AlmostComplex => "almost_complex_residual",
        Condition::ParallelForm => "parallel_form_residual",
    }
}

pub fn units(c: Condition) -> &'static str {
    match c {
        Condition::MiddleEigenvalue | Condition::HalfPic | Condition::AntiSelfDual | Condition::KahlerSpectrum => {
            "1/length^2"
        }
        Condition::Divergence => "1/length^3",
        Condition::Weitzenbock => "1/length^4",
        Condition::AlmostComplex => "dimensionless",
        Condition::ParallelForm => "1/length",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// What a verification run expects of one condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Pass,
    Fail,
    NotApplicable,
    Any,
}

impl Expectation {
    pub fn as_str(self) -> &'static str {
        match self {
            Expectation::Pass => "pass",
            Expectation::Fail => "fail",
            Expectation::NotApplicable => "not applicable",
            Expectation::Any => "any",
        }
    }

    pub fn met_by(self, v: Verdict) -> bool {
        match self {
            Expectation::Pass => v != Verdict::Fail,
            Expectation::Fail => v == Verdict::Fail,
            Expectation::NotApplicable => v == Verdict::NotApplicable,
            Expectation::Any => true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChartInfo {
    pub lower: [f64; 4],
    pub upper: [f64; 4],
}

impl From<&ChartDomain> for ChartInfo {
    fn from(d: &ChartDomain) -> Self {
        Self { lower: d.lower, upper: d.upper }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricInfo {
    pub name: String,
    pub origin: &'static str,
    pub sha256: String,
    pub chart: ChartInfo,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridInfo {
    pub resolution: usize,
    pub points: usize,
    /// Box actually sampled: the chart shrunk by the stencil margin.
    pub interior: ChartInfo,
}

#[derive(Debug, Clone, Serialize)]
pub struct ToleranceInfo {
    pub algebraic: f64,
    pub finite_difference: f64,
}

impl From<&Tolerances> for ToleranceInfo {
    fn from(t: &Tolerances) -> Self {
        Self { algebraic: t.algebraic, finite_difference: t.fd }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SummaryEntry {
    pub condition: &'static str,
    pub quantity: &'static str,
    pub kind: &'static str,
    pub units: &'static str,
    pub tolerance: f64,
    pub evaluated: usize,
    pub not_applicable: usize,
    pub failures: usize,
    pub min: Option<f64>,
    pub argmin: Option<[f64; 4]>,
    pub max: Option<f64>,
    pub argmax: Option<[f64; 4]>,
    pub verdict: &'static str,
    pub note: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub as_expected: Option<bool>,
}

impl SummaryEntry {
    fn new(s: &ConditionSummary, expectation: Option<Expectation>) -> Self {
        let some = s.evaluated > 0;
        let v = s.verdict();
        Self {
            condition: s.condition.name(),
            quantity: s.condition.quantity(),
            kind: match s.condition.kind() {
                ConditionKind::Margin => "margin",
                ConditionKind::Residual => "residual",
            },
            units: units(s.condition),
            tolerance: s.tolerance,
            evaluated: s.evaluated,
            not_applicable: s.not_applicable,
            failures: s.failures,
            min: some.then_some(s.min),
            argmin: s.argmin.map(|p| p.0),
            max: some.then_some(s.max),
            argmax: s.argmax.map(|p| p.0),
            verdict: v.as_str(),
            note: s.note,
            expected: expectation.map(Expectation::as_str),
            as_expected: expectation.map(|e| e.met_by(v)),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationInfo {
    pub label: &'static str,
    pub scalar_min: Option<f64>,
    pub scalar_max: Option<f64>,
    /// `S = 0`, `S > 0`, `S < 0` or `S changes sign`, at tolerance `tol.fd`.
    pub scalar_sign: &'static str,
}

impl ClassificationInfo {
    fn new(r: &ConditionReport) -> Self {
        let (lo, hi) = r.scalar_range;
        let tol = r.tolerances.fd;
        let sign = if r.records.is_empty() {
            "S unknown"
        } else if lo.abs() <= tol && hi.abs() <= tol {
            "S = 0"
        } else if lo > tol {
            "S > 0"
        } else if hi < -tol {
            "S < 0"
        } else {
            "S changes sign"
        };
        let finite = !r.records.is_empty();
        Self {
            label: r.classification.as_str(),
            scalar_min: finite.then_some(lo),
            scalar_max: finite.then_some(hi),
            scalar_sign: sign,
        }
    }

    pub fn line(&self) -> String {
        format!("{}, {}", self.label, self.scalar_sign)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PointEntry {
    pub x: [f64; 4],
    pub scalar: f64,
    pub lambda: [f64; 3],
    pub values: BTreeMap<&'static str, Option<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub samples: usize,
    pub max_relative_residual: f64,
    pub tolerance: f64,
    pub verdict: &'static str,
}

impl From<&IdentityResult> for IdentityEntry {
    fn from(r: &IdentityResult) -> Self {
        Self {
            name: r.name,
            description: r.description,
            samples: r.samples,
            max_relative_residual: r.max_relative_residual,
            tolerance: r.tolerance,
            verdict: if r.passes() { "pass" } else { "fail" },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpectationInfo {
    /// `None` when nothing is known about the metric.
    pub einstein: Option<bool>,
    pub basis: &'static str,
}

/// Result of `analyze` or `verify`.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub schema: &'static str,
    pub kind: &'static str,
    pub tool: ToolInfo,
    pub caveat: &'static str,
    pub out_of_scope: Vec<&'static str>,
    pub metric: MetricInfo,
    pub orientation: i32,
    pub grid: GridInfo,
    pub tolerances: ToleranceInfo,
    pub seed: u64,
    pub conditions: Vec<&'static str>,
    pub classification: ClassificationInfo,
    pub summary: BTreeMap<&'static str, SummaryEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expectation: Option<ExpectationInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identities: Option<Vec<IdentityEntry>>,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<PointEntry>>,
    #[serde(skip)]
    rows: Vec<PointEntry>,
    #[serde(skip)]
    order: Vec<Condition>,
}

fn envelope() -> (&'static str, ToolInfo, &'static str, Vec<&'static str>) {
    (SCHEMA_ID, ToolInfo { name: TOOL_NAME, version: TOOL_VERSION }, CAVEAT, OUT_OF_SCOPE.to_vec())
}

fn point_entries(r: &ConditionReport) -> Vec<PointEntry> {
    r.records
        .iter()
        .map(|rec| PointEntry {
            x: rec.point.0,
            scalar: rec.scalar,
            lambda: rec.lambda,
            values: rec
                .values
                .iter()
                .map(|(c, v)| {
                    (
                        quantity_key(*c),
                        match v {
                            ConditionValue::Value(x) => Some(*x),
                            ConditionValue::NotApplicable(_) => None,
                        },
                    )
                })
                .collect(),
        })
        .collect()
}

/// Run parameters that are echoed into every report.
#[derive(Debug, Clone, Copy)]
pub struct RunInfo {
    pub seed: u64,
    pub include_points: bool,
}

impl SweepReport {
    fn base(kind: &'static str, target: &Target, r: &ConditionReport, run: RunInfo) -> Self {
        let (schema, tool, caveat, out_of_scope) = envelope();
        let interior = target
            .patch
            .interior()
            .map(|d| ChartInfo::from(&d))
            .unwrap_or_else(|_| ChartInfo { lower: [f64::NAN; 4], upper: [f64::NAN; 4] });
        let rows = point_entries(r);
        Self {
            schema,
            kind,
            tool,
            caveat,
            out_of_scope,
            metric: MetricInfo {
                name: target.name.clone(),
                origin: target.origin.as_str(),
                sha256: target.sha256.clone(),
                chart: ChartInfo::from(target.patch.domain()),
            },
            orientation: r.orientation.sign() as i32,
            grid: GridInfo { resolution: r.resolution, points: r.records.len(), interior },
            tolerances: ToleranceInfo::from(&r.tolerances),
            seed: run.seed,
            conditions: r.conditions.iter().map(|c| c.name()).collect(),
            classification: ClassificationInfo::new(r),
            summary: BTreeMap::new(),
            expectation: None,
            identities: None,
            verdict: "pass",
            points: run.include_points.then(|| rows.clone()),
            rows,
            order: r.conditions.clone(),
        }
    }

    pub fn analyze(target: &Target, r: &ConditionReport, run: RunInfo) -> Self {
        let mut out = Self::base("analyze", target, r, run);
        out.summary = r.summaries.iter().map(|s| (quantity_key(s.condition), SummaryEntry::new(s, None))).collect();
        out.verdict = if r.all_pass() { "pass" } else { "fail" };
        out
    }

    /// `einstein` decides what the divergence-type residuals are expected
    /// to do; a non-Einstein metric is an expected-negative control.
    pub fn verify(
        target: &Target,
        r: &ConditionReport,
        identities: &[IdentityResult],
        einstein: Option<bool>,
        run: RunInfo,
    ) -> Self {
        let mut out = Self::base("verify", target, r, run);
        let expect = |c: Condition| match (einstein, c) {
            (Some(false), Condition::Divergence) => Expectation::Fail,
            (Some(false), Condition::Weitzenbock) => Expectation::NotApplicable,
            (Some(false), _) => Expectation::Any,
            _ => Expectation::Pass,
        };
        out.summary = r
            .summaries
            .iter()
            .map(|s| (quantity_key(s.condition), SummaryEntry::new(s, Some(expect(s.condition)))))
            .collect();
        out.expectation = Some(ExpectationInfo {
            einstein,
            basis: if einstein.is_some() { "catalog ground truth" } else { "none; every residual is expected to pass" },
        });
        out.identities = Some(identities.iter().map(IdentityEntry::from).collect());
        let ok = out.summary.values().all(|s| s.as_expected == Some(true)) && identities.iter().all(|i| i.passes());
        out.verdict = if ok { "pass" } else { "fail" };
        out
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Json => to_json(self),
            Format::Csv => self.csv(),
        }
    }

    fn text(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(o, "{} {} {}", TOOL_NAME, TOOL_VERSION, self.kind);
        let _ =
            writeln!(o, "metric:      {} ({}, sha256 {})", self.metric.name, self.metric.origin, self.metric.sha256);
        let _ = writeln!(o, "chart:       {}", chart_text(&self.metric.chart));
        let _ = writeln!(o, "orientation: {:+}", self.orientation);
        let _ = writeln!(
            o,
            "grid:        {}^4 = {} points on {}",
            self.grid.resolution,
            self.grid.points,
            chart_text(&self.grid.interior)
        );
        let _ = writeln!(
            o,
            "tolerances:  algebraic {:e}, finite-difference {:e}",
            self.tolerances.algebraic, self.tolerances.finite_difference
        );
        let _ = writeln!(o, "seed:        {}", self.seed);
        let _ = writeln!(o, "caveat:      {}", self.caveat);
        if let Some(e) = &self.expectation {
            let what = match e.einstein {
                Some(true) => "Einstein",
                Some(false) => "not Einstein",
                None => "unknown",
            };
            let _ = writeln!(o, "expectation: {} ({})", what, e.basis);
        }
        let _ = writeln!(o);
        let _ = writeln!(
            o,
            "{:<26} {:<40} {:>14} {:>14}  {:<44} verdict",
            "quantity", "definition", "min", "max", "worst point"
        );
        for c in &self.order {
            let s = &self.summary[quantity_key(*c)];
            let worst = if s.kind == "margin" { s.argmin } else { s.argmax };
            let mut verdict = s.verdict.to_string();
            if let Some(n) = s.note {
                let _ = write!(verdict, " (not applicable at {} points: {})", s.not_applicable, n);
            }
            if let (Some(e), Some(ok)) = (s.expected, s.as_expected) {
                let _ = write!(verdict, "; expected {e}: {}", if ok { "ok" } else { "MISMATCH" });
            }
            let _ = writeln!(
                o,
                "{:<26} {:<40} {:>14} {:>14}  {:<44} {}",
                quantity_key(*c),
                s.quantity,
                num_text(s.min),
                num_text(s.max),
                worst.map_or("-".to_string(), |p| point_text(&p)),
                verdict
            );
        }
        if let Some(ids) = &self.identities {
            let _ = writeln!(o);
            let _ =
                writeln!(o, "{:<32} {:>8} {:>16} {:>10}  verdict", "identity", "samples", "max relative", "tolerance");
            for i in ids {
                let _ = writeln!(
                    o,
                    "{:<32} {:>8} {:>16.3e} {:>10.0e}  {}",
                    i.name, i.samples, i.max_relative_residual, i.tolerance, i.verdict
                );
            }
        }
        let _ = writeln!(o);
        let c = &self.classification;
        let range = match (c.scalar_min, c.scalar_max) {
            (Some(a), Some(b)) => format!(" (S in [{}, {}])", num_text(Some(a)), num_text(Some(b))),
            _ => String::new(),
        };
        let _ = writeln!(o, "classification: {}{}", c.line(), range);
        let _ = writeln!(o, "out of scope:   {}", self.out_of_scope.join("; "));
        let _ = writeln!(o, "result:         {}", self.verdict);
        o
    }

    fn csv(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(o, "# schema: {}", self.schema);
        let _ = writeln!(o, "# kind: {}", self.kind);
        let _ = writeln!(o, "# tool: {} {}", self.tool.name, self.tool.version);
        let _ = writeln!(o, "# metric: {} ({})", self.metric.name, self.metric.origin);
        let _ = writeln!(o, "# sha256: {}", self.metric.sha256);
        let _ = writeln!(o, "# orientation: {:+}", self.orientation);
        let _ = writeln!(o, "# grid: {}^4", self.grid.resolution);
        let _ = writeln!(
            o,
            "# tolerances: algebraic={:e} finite_difference={:e}",
            self.tolerances.algebraic, self.tolerances.finite_difference
        );
        let _ = writeln!(o, "# seed: {}", self.seed);
        let _ = writeln!(o, "# classification: {}", self.classification.line());
        let _ = writeln!(o, "# verdict: {}", self.verdict);
        let _ = writeln!(o, "# caveat: {}", self.caveat);
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<&str> = vec!["x1", "x2", "x3", "x4", "scalar", "lambda1", "lambda2", "lambda3"];
        header.extend(self.order.iter().map(|c| quantity_key(*c)));
        w.write_record(&header).expect("in-memory write");
        for p in &self.rows {
            let mut row: Vec<String> =
                p.x.iter().chain([p.scalar].iter()).chain(p.lambda.iter()).map(|v| v.to_string()).collect();
            for c in &self.order {
                row.push(match p.values.get(quantity_key(*c)) {
                    Some(Some(v)) => v.to_string(),
                    _ => "NA".to_string(),
                });
            }
            w.write_record(&row).expect("in-memory write");
        }
        o.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output"));
        o
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SourcedValue<T: Serialize> {
    /// `None` when the quantity varies over the chart.
    pub value: Option<T>,
    pub pointwise: bool,
    pub provenance: &'static str,
}

fn sourced<T: Copy + Serialize>(t: &Truth<T>, provenance: &'static str) -> SourcedValue<T> {
    SourcedValue { value: t.constant(), pointwise: t.constant().is_none(), provenance }
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogItem {
    pub name: &'static str,
    pub description: &'static str,
    pub chart: ChartInfo,
    pub sha256: String,
    pub scalar_curvature: SourcedValue<f64>,
    pub spectrum: SourcedValue<[f64; 3]>,
    pub einstein_constant: SourcedValue<f64>,
    pub kahler: bool,
    pub orientation_note: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_test: Option<String>,
}

impl CatalogItem {
    pub fn new(e: &CatalogEntry, sha256: String, self_test: Option<String>) -> Self {
        let t = &e.truth;
        Self {
            name: e.name,
            description: e.description,
            chart: ChartInfo::from(e.patch.domain()),
            sha256,
            scalar_curvature: sourced(&t.scalar.value, t.scalar.provenance.as_str()),
            spectrum: sourced(&t.spectrum.value, t.spectrum.provenance.as_str()),
            einstein_constant: SourcedValue {
                value: t.einstein_constant,
                pointwise: false,
                provenance: t.einstein_provenance.as_str(),
            },
            kahler: t.kahler,
            orientation_note: t.orientation_note,
            self_test,
        }
    }
}

/// Result of `catalog`.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogReport {
    pub schema: &'static str,
    pub kind: &'static str,
    pub tool: ToolInfo,
    pub caveat: &'static str,
    pub out_of_scope: Vec<&'static str>,
    pub entries: Vec<CatalogItem>,
    pub verdict: &'static str,
}

impl CatalogReport {
    pub fn new(entries: Vec<CatalogItem>) -> Self {
        let (schema, tool, caveat, out_of_scope) = envelope();
        let ok = entries.iter().all(|e| e.self_test.as_deref().is_none_or(|s| s == "pass"));
        Self { schema, kind: "catalog", tool, caveat, out_of_scope, entries, verdict: if ok { "pass" } else { "fail" } }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Text => self.text(),
            Format::Csv => self.csv(),
        }
    }

    fn text(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(o, "{} {} catalog ({} entries)", TOOL_NAME, TOOL_VERSION, self.entries.len());
        for e in &self.entries {
            let _ = writeln!(o);
            let _ = writeln!(o, "{}: {}", e.name, e.description);
            let _ = writeln!(o, "  chart:       {}", chart_text(&e.chart));
            let _ = writeln!(
                o,
                "  S:           {} [{}]",
                value_text(&e.scalar_curvature.value),
                e.scalar_curvature.provenance
            );
            let _ = writeln!(o, "  W+ spectrum: {} [{}]", triple_text(&e.spectrum.value), e.spectrum.provenance);
            let einstein = e.einstein_constant.value.map_or("not Einstein".to_string(), |c| format!("Ric = {c} g"));
            let _ = writeln!(o, "  Einstein:    {} [{}]", einstein, e.einstein_constant.provenance);
            let _ = writeln!(o, "  Kahler:      {}", if e.kahler { "yes" } else { "no" });
            let _ = writeln!(o, "  orientation: {}", e.orientation_note);
            let _ = writeln!(o, "  sha256:      {}", e.sha256);
            if let Some(s) = &e.self_test {
                let _ = writeln!(o, "  self-test:   {s}");
            }
        }
        o
    }

    fn csv(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(o, "# schema: {}", self.schema);
        let _ = writeln!(o, "# kind: {}", self.kind);
        let _ = writeln!(o, "# tool: {} {}", self.tool.name, self.tool.version);
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "name",
            "scalar_curvature",
            "scalar_provenance",
            "lambda1",
            "lambda2",
            "lambda3",
            "spectrum_provenance",
            "einstein_constant",
            "einstein_provenance",
            "kahler",
            "self_test",
        ])
        .expect("in-memory write");
        for e in &self.entries {
            let l = e.spectrum.value.map(|l| l.map(|v| v.to_string()));
            let l = l.unwrap_or_else(|| ["pointwise".into(), "pointwise".into(), "pointwise".into()]);
            w.write_record([
                e.name.to_string(),
                e.scalar_curvature.value.map_or("pointwise".into(), |v| v.to_string()),
                e.scalar_curvature.provenance.to_string(),
                l[0].clone(),
                l[1].clone(),
                l[2].clone(),
                e.spectrum.provenance.to_string(),
                e.einstein_constant.value.map_or("NA".into(), |v| v.to_string()),
                e.einstein_constant.provenance.to_string(),
                e.kahler.to_string(),
                e.self_test.clone().unwrap_or_else(|| "NA".into()),
            ])
            .expect("in-memory write");
        }
        o.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output"));
        o
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values serialize");
    s.push('\n');
    s
}

fn num_text(v: Option<f64>) -> String {
    v.map_or("-".to_string(), |v| format!("{v:.6e}"))
}

fn value_text(v: &Option<f64>) -> String {
    v.map_or("varies over the chart".to_string(), |v| format!("{v}"))
}

fn triple_text(v: &Option<[f64; 3]>) -> String {
    v.map_or("varies over the chart".to_string(), |l| format!("({}, {}, {})", l[0], l[1], l[2]))
}

fn point_text(p: &[f64; 4]) -> String {
    format!("({:.4}, {:.4}, {:.4}, {:.4})", p[0], p[1], p[2], p[3])
}

fn chart_text(c: &ChartInfo) -> String {
    (0..4).map(|i| format!("[{}, {}]", c.lower[i], c.upper[i])).collect::<Vec<_>>().join(" x ")
}
