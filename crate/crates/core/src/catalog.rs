//! Built-in reference metrics with closed-form curvature.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::Float;

use crate::decomp::{curvature_operator, extract_weyl, spectrum, Side};
use crate::frames::selfdual_basis;
use crate::scalar::Scalar;
use crate::tensor::{riemann, Analytic, ChartDomain, ChartPoint, MetricMeta, MetricPatch, ScalarMetric};
use crate::{Error, Result, DIM};

/// Number of sample points of the load-time self-test.
pub const SELF_TEST_POINTS: usize = 20;
/// Absolute tolerance of the load-time self-test.
pub const SELF_TEST_TOLERANCE: f64 = 1e-5;

pub const ENTRY_NAMES: [&str; 7] =
    ["t4_flat", "s4_round", "h4_hyperbolic", "cp2_fubini_study", "ch2_complex_hyperbolic", "s2xs2", "warped_probe"];

/// Where a ground-truth number comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Immediate from the definition (flat metric, empty spectrum).
    Definition,
    /// Hand evaluation of a closed-form expression.
    ClosedForm,
    /// Independent automatic-differentiation computation, frozen in tests.
    SymbolicOracle,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Definition => "definition",
            Provenance::ClosedForm => "closed-form",
            Provenance::SymbolicOracle => "symbolic-oracle",
        }
    }
}

/// A ground-truth quantity, constant on the chart or given pointwise.
#[derive(Debug, Clone, Copy)]
pub enum Truth<T: Copy> {
    Constant(T),
    Pointwise(fn(&[f64; DIM]) -> T),
}

impl<T: Copy> Truth<T> {
    pub fn at(&self, x: &[f64; DIM]) -> T {
        match self {
            Truth::Constant(v) => *v,
            Truth::Pointwise(f) => f(x),
        }
    }

    pub fn constant(&self) -> Option<T> {
        match self {
            Truth::Constant(v) => Some(*v),
            Truth::Pointwise(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Sourced<T: Copy> {
    pub value: Truth<T>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy)]
pub struct GroundTruth {
    pub scalar: Sourced<f64>,
    /// Sorted self-dual Weyl spectrum for the positive chart orientation.
    pub spectrum: Sourced<[f64; 3]>,
    /// `Some(λ)` with `Ric = λ g`; `None` for non-Einstein entries.
    pub einstein_constant: Option<f64>,
    pub einstein_provenance: Provenance,
    pub kahler: bool,
    pub orientation_note: &'static str,
}

impl GroundTruth {
    pub fn is_einstein(&self) -> bool {
        self.einstein_constant.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub patch: MetricPatch,
    pub truth: GroundTruth,
}

impl CatalogEntry {
    /// Compares the engine against the ground truth at
    /// [`SELF_TEST_POINTS`] Halton points of the chart interior.
    pub fn self_test(&self) -> Result<()> {
        let points = self.patch.interior()?.halton_points(SELF_TEST_POINTS);
        for p in &points {
            let cd = riemann(&self.patch, p)?;
            let basis = selfdual_basis(&cd.frame);
            let op = curvature_operator(&cd, &basis)?;
            let w = extract_weyl(&op, cd.scalar, Side::SelfDual)?;
            let lambda = spectrum(&w)?.lambda;
            let s_expect = self.truth.scalar.value.at(&p.0);
            let l_expect = self.truth.spectrum.value.at(&p.0);
            let fail = |what: &str, got: f64, want: f64| Error::SelfTest {
                entry: self.name.to_string(),
                detail: format!("{what} = {got} at {:?}, expected {want}", p.0),
            };
            if (cd.scalar - s_expect).abs() > SELF_TEST_TOLERANCE {
                return Err(fail("S", cd.scalar, s_expect));
            }
            for k in 0..3 {
                if (lambda[k] - l_expect[k]).abs() > SELF_TEST_TOLERANCE {
                    return Err(fail("lambda", lambda[k], l_expect[k]));
                }
            }
            if let Some(c) = self.truth.einstein_constant {
                let dev = (0..DIM)
                    .flat_map(|i| (0..DIM).map(move |j| (i, j)))
                    .map(|(i, j)| (cd.ricci[i][j] - c * cd.metric[i][j]).abs())
                    .fold(0.0, f64::max);
                if dev > SELF_TEST_TOLERANCE {
                    return Err(fail("max |Ric - c g|", dev, 0.0));
                }
            }
        }
        Ok(())
    }
}

fn dot<S: Scalar>(x: &[S; DIM]) -> S {
    x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]
}

fn conformal<S: Scalar>(f: S) -> [[S; DIM]; DIM] {
    let z = S::from_f64(0.0);
    let mut g = [[z; DIM]; DIM];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = f;
    }
    g
}

struct Flat;

impl ScalarMetric for Flat {
    fn components<S: Scalar>(&self, _x: &[S; DIM]) -> [[S; DIM]; DIM] {
        conformal(S::from_f64(1.0))
    }
}

/// `4 / (1 + k |x|²)² δ`: round sphere for `k = 1`, Poincaré ball for `k = -1`.
struct ConstantCurvature {
    k: f64,
}

impl ScalarMetric for ConstantCurvature {
    fn components<S: Scalar>(&self, x: &[S; DIM]) -> [[S; DIM]; DIM] {
        let one = S::from_f64(1.0);
        let q = one + S::from_f64(self.k) * dot(x);
        conformal(S::from_f64(4.0) / (q * q))
    }
}

/// Fubini-Study (`k = 1`) or Bergman ball (`k = -1`) metric in affine
/// coordinates `z₁ = x1 + i x2`, `z₂ = x3 + i x4`, normalized to `Ric = 6k g`:
/// `g_ij = δ_ij / q - k (x_i x_j + b_i b_j) / q²`, `q = 1 + k |x|²`,
/// `b = (-x2, x1, -x4, x3)`.
struct ComplexSpaceForm {
    k: f64,
}

impl ScalarMetric for ComplexSpaceForm {
    fn components<S: Scalar>(&self, x: &[S; DIM]) -> [[S; DIM]; DIM] {
        let one = S::from_f64(1.0);
        let k = S::from_f64(self.k);
        let q = one + k * dot(x);
        let b = [-x[1], x[0], -x[3], x[2]];
        let mut g = [[S::from_f64(0.0); DIM]; DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                let mut v = -k * (x[i] * x[j] + b[i] * b[j]) / (q * q);
                if i == j {
                    v = v + one / q;
                }
                g[i][j] = v;
            }
        }
        g
    }
}

/// `dθ₁² + sin²θ₁ dφ₁² + dθ₂² + sin²θ₂ dφ₂²` in coordinates `(θ₁, φ₁, θ₂, φ₂)`.
struct SphereProduct;

impl ScalarMetric for SphereProduct {
    fn components<S: Scalar>(&self, x: &[S; DIM]) -> [[S; DIM]; DIM] {
        let one = S::from_f64(1.0);
        let mut g = [[S::from_f64(0.0); DIM]; DIM];
        g[0][0] = one;
        g[1][1] = x[0].sin().square();
        g[2][2] = one;
        g[3][3] = x[2].sin().square();
        g
    }
}

/// `dx1² + f(x1)² (dx2² + dx3²) + dx4²` with `f = 1 + 0.1 sin x1`.
struct Warped;

impl ScalarMetric for Warped {
    fn components<S: Scalar>(&self, x: &[S; DIM]) -> [[S; DIM]; DIM] {
        let one = S::from_f64(1.0);
        let f = one + S::from_f64(0.1) * x[0].sin();
        let mut g = [[S::from_f64(0.0); DIM]; DIM];
        g[0][0] = one;
        g[1][1] = f * f;
        g[2][2] = f * f;
        g[3][3] = one;
        g
    }
}

/// Sectional curvatures `(a, b)` of the warped probe: `a = -f''/f` on planes
/// containing `∂₁`, `b = -(f'/f)²` on the fibre plane.
fn warped_sectional(x: &[f64; DIM]) -> (f64, f64) {
    let f = 1.0 + 0.1 * Float::sin(x[0]);
    let df = 0.1 * Float::cos(x[0]);
    let ddf = -0.1 * Float::sin(x[0]);
    (-ddf / f, -(df / f) * (df / f))
}

fn warped_scalar(x: &[f64; DIM]) -> f64 {
    let (a, b) = warped_sectional(x);
    4.0 * a + 2.0 * b
}

fn warped_spectrum(x: &[f64; DIM]) -> [f64; 3] {
    // W⁺ = diag(μ, μ, -2μ) with μ = (a - b)/6
    let (a, b) = warped_sectional(x);
    let mu = (a - b) / 6.0;
    if mu >= 0.0 {
        [-2.0 * mu, mu, mu]
    } else {
        [mu, mu, -2.0 * mu]
    }
}

const ZERO3: [f64; 3] = [0.0; 3];

fn constant(v: f64, provenance: Provenance) -> Sourced<f64> {
    Sourced { value: Truth::Constant(v), provenance }
}

fn constant3(v: [f64; 3], provenance: Provenance) -> Sourced<[f64; 3]> {
    Sourced { value: Truth::Constant(v), provenance }
}

fn einstein_meta(lambda: f64) -> MetricMeta {
    MetricMeta { einstein_constant: Some(lambda), scalar_curvature: Some(4.0 * lambda) }
}

/// Builds an entry without running the self-test.
pub fn entry(name: &str) -> Result<CatalogEntry> {
    use Provenance::*;
    let e = match name {
        "t4_flat" => CatalogEntry {
            name: "t4_flat",
            description: "flat torus, unit box chart",
            patch: MetricPatch::new(name, ChartDomain::cube(name, 0.0, 1.0)?, Analytic(Flat))
                .with_meta(einstein_meta(0.0)),
            truth: GroundTruth {
                scalar: constant(0.0, Definition),
                spectrum: constant3(ZERO3, Definition),
                einstein_constant: Some(0.0),
                einstein_provenance: Definition,
                kahler: true,
                orientation_note: "both orientations give W+ = 0",
            },
        },
        "s4_round" => CatalogEntry {
            name: "s4_round",
            description: "unit round 4-sphere, north stereographic chart",
            patch: MetricPatch::new(name, ChartDomain::cube(name, -1.0, 1.0)?, Analytic(ConstantCurvature { k: 1.0 }))
                .with_meta(einstein_meta(3.0)),
            truth: GroundTruth {
                scalar: constant(12.0, ClosedForm),
                spectrum: constant3(ZERO3, ClosedForm),
                einstein_constant: Some(3.0),
                einstein_provenance: ClosedForm,
                kahler: false,
                orientation_note: "conformally flat: W+ = W- = 0 for both orientations",
            },
        },
        "h4_hyperbolic" => CatalogEntry {
            name: "h4_hyperbolic",
            description: "hyperbolic 4-space, Poincare ball chart",
            patch: MetricPatch::new(
                name,
                ChartDomain::cube(name, -0.45, 0.45)?,
                Analytic(ConstantCurvature { k: -1.0 }),
            )
            .with_meta(einstein_meta(-3.0)),
            truth: GroundTruth {
                scalar: constant(-12.0, ClosedForm),
                spectrum: constant3(ZERO3, ClosedForm),
                einstein_constant: Some(-3.0),
                einstein_provenance: ClosedForm,
                kahler: false,
                orientation_note: "conformally flat: W+ = W- = 0 for both orientations",
            },
        },
        "cp2_fubini_study" => CatalogEntry {
            name: "cp2_fubini_study",
            description: "complex projective plane, Fubini-Study metric with Ric = 6g, affine chart",
            patch: MetricPatch::new(name, ChartDomain::cube(name, -1.0, 1.0)?, Analytic(ComplexSpaceForm { k: 1.0 }))
                .with_meta(einstein_meta(6.0)),
            truth: GroundTruth {
                scalar: constant(24.0, SymbolicOracle),
                spectrum: constant3([-2.0, -2.0, 4.0], SymbolicOracle),
                einstein_constant: Some(6.0),
                einstein_provenance: SymbolicOracle,
                kahler: true,
                orientation_note: "complex orientation; the reversed orientation has W+ = 0",
            },
        },
        "ch2_complex_hyperbolic" => CatalogEntry {
            name: "ch2_complex_hyperbolic",
            description: "complex hyperbolic plane, Bergman ball metric with Ric = -6g",
            patch: MetricPatch::new(
                name,
                ChartDomain::cube(name, -0.45, 0.45)?,
                Analytic(ComplexSpaceForm { k: -1.0 }),
            )
            .with_meta(einstein_meta(-6.0)),
            truth: GroundTruth {
                scalar: constant(-24.0, SymbolicOracle),
                spectrum: constant3([-4.0, 2.0, 2.0], SymbolicOracle),
                einstein_constant: Some(-6.0),
                einstein_provenance: SymbolicOracle,
                kahler: true,
                orientation_note: "complex orientation; the reversed orientation has W+ = 0",
            },
        },
        "s2xs2" => {
            let pi = core::f64::consts::PI;
            let domain = ChartDomain::new(name, [0.2, 0.0, 0.2, 0.0], [pi - 0.2, 2.0 * pi, pi - 0.2, 2.0 * pi])?;
            CatalogEntry {
                name: "s2xs2",
                description: "product of two unit 2-spheres, polar coordinates with poles excluded",
                patch: MetricPatch::new(name, domain, Analytic(SphereProduct)).with_meta(einstein_meta(1.0)),
                truth: GroundTruth {
                    scalar: constant(4.0, ClosedForm),
                    spectrum: constant3([-1.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0], SymbolicOracle),
                    einstein_constant: Some(1.0),
                    einstein_provenance: ClosedForm,
                    kahler: true,
                    orientation_note: "Kahler for both orientations; W- has the same spectrum",
                },
            }
        }
        "warped_probe" => {
            let domain = ChartDomain::new(name, [-1.0, 0.0, 0.0, 0.0], [1.0, 1.0, 1.0, 1.0])?;
            CatalogEntry {
                name: "warped_probe",
                description: "warped product dx1^2 + f^2 (dx2^2 + dx3^2) + dx4^2, f = 1 + 0.1 sin x1 (not Einstein)",
                patch: MetricPatch::new(name, domain, Analytic(Warped)),
                truth: GroundTruth {
                    scalar: Sourced { value: Truth::Pointwise(warped_scalar), provenance: ClosedForm },
                    spectrum: Sourced { value: Truth::Pointwise(warped_spectrum), provenance: ClosedForm },
                    einstein_constant: None,
                    einstein_provenance: SymbolicOracle,
                    kahler: false,
                    orientation_note: "W+ and W- have the same spectrum",
                },
            }
        }
        other => return Err(Error::UnknownEntry(other.to_string())),
    };
    Ok(e)
}

/// Builds an entry and runs its self-test.
pub fn load(name: &str) -> Result<CatalogEntry> {
    let e = entry(name)?;
    e.self_test()?;
    Ok(e)
}

/// All entries, in listing order, without self-tests.
pub fn entries() -> Result<Vec<CatalogEntry>> {
    ENTRY_NAMES.iter().map(|n| entry(n)).collect()
}

/// Round unit 4-sphere on the south stereographic chart.
pub fn s4_south_chart() -> Result<MetricPatch> {
    let domain = ChartDomain::cube("s4_round_south", -1.0, 1.0)?;
    Ok(MetricPatch::new("s4_round_south", domain, Analytic(ConstantCurvature { k: 1.0 })).with_meta(einstein_meta(3.0)))
}

/// North-to-south stereographic transition `y = x / |x|²`.
pub fn stereographic_transition(p: &ChartPoint) -> Option<ChartPoint> {
    let r2: f64 = p.0.iter().map(|v| v * v).sum();
    if r2 == 0.0 || !r2.is_finite() {
        return None;
    }
    let mut y = p.0;
    for v in y.iter_mut() {
        *v /= r2;
    }
    Some(ChartPoint(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{christoffel, eval_metric};

    #[test]
    fn all_entries_pass_self_test() {
        for name in ENTRY_NAMES {
            load(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn unknown_entry() {
        assert_eq!(entry("k3").unwrap_err(), Error::UnknownEntry("k3".into()));
    }

    #[test]
    fn conformal_factor_at_origin() {
        for name in ["s4_round", "h4_hyperbolic"] {
            let g = eval_metric(&entry(name).unwrap().patch, &ChartPoint([0.0; 4])).unwrap();
            assert_eq!(g, crate::linalg::scale(&crate::linalg::identity::<4>(), 4.0));
        }
    }

    #[test]
    fn sphere_christoffel_vanishes_at_origin() {
        let gamma = christoffel(&entry("s4_round").unwrap().patch, &ChartPoint([0.0; 4])).unwrap();
        assert!(gamma.iter().flatten().flatten().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn sphere_product_christoffel() {
        let patch = entry("s2xs2").unwrap().patch;
        let th = 1.1;
        let gamma = christoffel(&patch, &ChartPoint([th, 1.0, 1.3, 2.0])).unwrap();
        assert!((gamma[0][1][1] + th.sin() * th.cos()).abs() < 1e-14);
        assert!((gamma[1][0][1] - th.cos() / th.sin()).abs() < 1e-14);
    }

    #[test]
    fn warped_probe_closed_form_matches_oracle() {
        let x = [1.0, 0.5, 0.5, 0.5];
        assert!((warped_scalar(&x) - 0.305496390560235).abs() < 1e-13);
        let l = warped_spectrum(&x);
        assert!((l[0] + 0.026699877059408).abs() < 1e-13);
        assert!((l[2] - 0.013349938529704).abs() < 1e-13);
        let l = warped_spectrum(&[4.0, 0.0, 0.0, 0.0]);
        assert!((l[2] - 0.025625306784889).abs() < 1e-13);
    }

    #[test]
    fn transition_is_an_involution() {
        let p = ChartPoint([0.9, -0.7, 0.3, 0.5]);
        let q = stereographic_transition(&stereographic_transition(&p).unwrap()).unwrap();
        for i in 0..4 {
            assert!((p.0[i] - q.0[i]).abs() < 1e-15);
        }
        assert!(stereographic_transition(&ChartPoint([0.0; 4])).is_none());
    }
}
