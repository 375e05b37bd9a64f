mod common;

use weylscope_core::catalog::{entry, s4_south_chart, stereographic_transition, ENTRY_NAMES};
use weylscope_core::conditions::SelfDualWeylField;
use weylscope_core::decomp::curvature_operator;
use weylscope_core::frames::selfdual_basis;
use weylscope_core::linalg::{self, Mat4};
use weylscope_core::tensor::{
    christoffel, covariant_derivative, eval_metric, riemann, rough_laplacian, ChartDomain, ChartPoint, FnField,
    FnMetric, MetricField, MetricPatch, StepSizes, Tensor,
};
use weylscope_core::Error;

fn interior_points(patch: &MetricPatch, n: usize, seed: u64) -> Vec<ChartPoint> {
    let interior = patch.interior().unwrap();
    let mut rng = common::rng(seed);
    (0..n)
        .map(|_| {
            let u = [(); 4].map(|_| common::uniform(&mut rng, 0.0, 1.0));
            interior.from_unit(u)
        })
        .collect()
}

fn sphere_riemann(g: &Mat4, k: f64) -> [[[[f64; 4]; 4]; 4]; 4] {
    let mut r = [[[[0.0; 4]; 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    r[i][j][a][b] = k * (g[i][a] * g[j][b] - g[i][b] * g[j][a]);
                }
            }
        }
    }
    r
}

fn max_diff4(a: &[[[[f64; 4]; 4]; 4]; 4], b: &[[[[f64; 4]; 4]; 4]; 4]) -> f64 {
    a.iter()
        .flatten()
        .flatten()
        .flatten()
        .zip(b.iter().flatten().flatten().flatten())
        .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

#[test]
fn metric_examples() {
    let flat = entry("t4_flat").unwrap().patch;
    assert_eq!(eval_metric(&flat, &ChartPoint([0.3, 0.1, 0.9, 0.5])).unwrap(), linalg::identity::<4>());
    for name in ["s4_round", "h4_hyperbolic"] {
        let patch = entry(name).unwrap().patch;
        let g = eval_metric(&patch, &ChartPoint([0.0; 4])).unwrap();
        assert!(linalg::max_abs(&linalg::sub(&g, &linalg::scale(&linalg::identity(), 4.0))) < 1e-15, "{name}");
    }
}

#[test]
fn metric_errors() {
    let flat = entry("t4_flat").unwrap().patch;
    assert!(matches!(eval_metric(&flat, &ChartPoint([1.5, 0.5, 0.5, 0.5])), Err(Error::Domain { .. })));
    assert!(matches!(riemann(&flat, &ChartPoint([-0.1, 0.5, 0.5, 0.5])), Err(Error::Domain { .. })));

    let domain = ChartDomain::cube("degenerate", -1.0, 1.0).unwrap();
    let patch = MetricPatch::new("degenerate", domain, FnMetric(|x: &[f64; 4]| linalg::diag([1.0, 1.0, 1.0, x[0]])));
    assert!(matches!(eval_metric(&patch, &ChartPoint([0.0, 0.0, 0.0, 0.0])), Err(Error::DegenerateMetric { .. })));
    assert!(matches!(eval_metric(&patch, &ChartPoint([-0.5, 0.0, 0.0, 0.0])), Err(Error::DegenerateMetric { .. })));
    assert!(eval_metric(&patch, &ChartPoint([0.5, 0.0, 0.0, 0.0])).is_ok());
}

#[test]
fn christoffel_examples() {
    let flat = entry("t4_flat").unwrap().patch;
    let gamma = christoffel(&flat, &ChartPoint([0.5; 4])).unwrap();
    assert!(gamma.iter().flatten().flatten().all(|v| *v == 0.0));

    let s4 = entry("s4_round").unwrap().patch;
    let gamma = christoffel(&s4, &ChartPoint([0.0; 4])).unwrap();
    assert!(gamma.iter().flatten().flatten().all(|v| v.abs() < 1e-15));

    let s2 = entry("s2xs2").unwrap().patch;
    for theta in [0.4, 1.0, 2.5] {
        let gamma = christoffel(&s2, &ChartPoint([theta, 1.0, 1.3, 2.0])).unwrap();
        assert!((gamma[0][1][1] + theta.sin() * theta.cos()).abs() < 1e-12);
        assert!((gamma[1][0][1] - theta.cos() / theta.sin()).abs() < 1e-12);
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(gamma[k][i][j], gamma[k][j][i]);
                }
            }
        }
    }
}

#[test]
fn riemann_examples() {
    let flat = entry("t4_flat").unwrap().patch;
    let cd = riemann(&flat, &ChartPoint([0.5; 4])).unwrap();
    assert_eq!(cd.max_abs_riemann(), 0.0);
    assert_eq!(cd.scalar, 0.0);

    let s4 = entry("s4_round").unwrap().patch;
    for p in interior_points(&s4, 10, 1) {
        let cd = riemann(&s4, &p).unwrap();
        let exact = sphere_riemann(&cd.metric, 1.0);
        assert!(max_diff4(&cd.riemann, &exact) < 1e-7, "{p:?}");
        assert!((cd.scalar - 12.0).abs() < 1e-7);
    }

    let cp2 = entry("cp2_fubini_study").unwrap().patch;
    for p in interior_points(&cp2, 10, 2) {
        let cd = riemann(&cp2, &p).unwrap();
        assert!((cd.scalar - 24.0).abs() < 1e-6, "{}", cd.scalar);
        let dev = linalg::max_abs(&linalg::sub(&cd.ricci, &linalg::scale(&cd.metric, 6.0)));
        assert!(dev < 1e-6, "{dev:e}");
    }
}

#[test]
fn riemann_symmetries_and_contractions() {
    for name in ENTRY_NAMES {
        let patch = entry(name).unwrap().patch;
        for p in interior_points(&patch, 5, 3) {
            let cd = riemann(&patch, &p).unwrap();
            let r = &cd.riemann;
            let tol = 1e-12 * cd.max_abs_riemann().max(1.0);
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        for l in 0..4 {
                            let v = r[i][j][k][l];
                            assert!((v + r[j][i][k][l]).abs() <= tol);
                            assert!((v + r[i][j][l][k]).abs() <= tol);
                            assert!((v - r[k][l][i][j]).abs() <= tol);
                            assert!((v + r[i][k][l][j] + r[i][l][j][k]).abs() <= tol);
                        }
                    }
                }
            }
            let mut s = 0.0;
            for j in 0..4 {
                for l in 0..4 {
                    s += cd.inverse[j][l] * cd.ricci[j][l];
                }
            }
            assert!((s - cd.scalar).abs() <= 1e-12 * cd.scalar.abs().max(1.0));
        }
    }
}

#[test]
fn scalar_from_ricci_matches_operator_trace() {
    for name in ENTRY_NAMES {
        let patch = entry(name).unwrap().patch;
        for p in interior_points(&patch, 10, 4) {
            let cd = riemann(&patch, &p).unwrap();
            let op = curvature_operator(&cd, &selfdual_basis(&cd.frame)).unwrap();
            let lhs = cd.scalar;
            let rhs = 2.0 * op.trace();
            assert!((lhs - rhs).abs() <= 1e-8 * lhs.abs().max(1.0), "{name}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn metric_compatibility_on_catalog() {
    for name in ENTRY_NAMES {
        let patch = entry(name).unwrap().patch;
        // g is differentiated at the metric step, as in the connection itself
        let mut steps = *patch.steps();
        steps.field = steps.metric;
        let patch = patch.with_steps(steps);
        let mut worst: f64 = 0.0;
        for p in interior_points(&patch, 100, 5) {
            let d = covariant_derivative(&patch, &p, &MetricField(&patch)).unwrap();
            worst = worst.max(d.norm(patch_frame(&patch, &p).vectors()));
        }
        assert!(worst < 1e-8, "{name}: |∇g| = {worst:e}");
    }
}

#[test]
fn product_kahler_form_is_parallel() {
    let patch = entry("s2xs2").unwrap().patch;
    let omega = FnField::new(2, |p: &ChartPoint| {
        let mut m = [[0.0; 4]; 4];
        let (a, b) = (p.0[0].sin(), p.0[2].sin());
        m[0][1] = a;
        m[1][0] = -a;
        m[2][3] = b;
        m[3][2] = -b;
        Ok(Tensor::from_matrix(&m))
    });
    for p in interior_points(&patch, 10, 6) {
        let d = covariant_derivative(&patch, &p, &omega).unwrap().norm(patch_frame(&patch, &p).vectors());
        assert!(d < 1e-8, "{d:e}");
    }
}

#[test]
fn constant_field_on_flat_space_is_parallel() {
    let patch = entry("t4_flat").unwrap().patch;
    let field = FnField::new(2, |_: &ChartPoint| Ok(Tensor::from_matrix(&linalg::diag([1.0, 2.0, 3.0, 4.0]))));
    let d = covariant_derivative(&patch, &ChartPoint([0.5; 4]), &field).unwrap();
    assert_eq!(d.max_abs(), 0.0);
}

#[test]
fn laplacian_of_flat_quadratic() {
    let patch = entry("t4_flat").unwrap().patch;
    let f = FnField::new(0, |p: &ChartPoint| Ok(Tensor::scalar(p.0[0] * p.0[0])));
    for p in interior_points(&patch, 5, 7) {
        let lap = rough_laplacian(&patch, &p, &f).unwrap();
        assert!((lap.data()[0] - 2.0).abs() < 1e-8, "{}", lap.data()[0]);
    }
}

#[test]
fn sphere_eigenfunction() {
    let patch = entry("s4_round").unwrap().patch;
    let height = |x: &[f64; 4]| 2.0 * x[0] / (1.0 + x.iter().map(|v| v * v).sum::<f64>());
    let f = FnField::new(0, move |p: &ChartPoint| Ok(Tensor::scalar(height(&p.0))));
    for p in interior_points(&patch, 10, 8) {
        let lap = rough_laplacian(&patch, &p, &f).unwrap().data()[0];
        let expect = -4.0 * height(&p.0);
        assert!((lap - expect).abs() < 1e-6, "{p:?}: {lap} vs {expect}");
    }
}

#[test]
fn self_dual_weyl_is_harmonic_on_symmetric_spaces() {
    for name in ["s4_round", "h4_hyperbolic", "cp2_fubini_study", "ch2_complex_hyperbolic", "s2xs2"] {
        let patch = entry(name).unwrap().patch;
        let field = SelfDualWeylField::new(&patch);
        for p in interior_points(&patch, 3, 9) {
            let lap = rough_laplacian(&patch, &p, &field).unwrap();
            assert!(lap.norm(patch_frame(&patch, &p).vectors()) < 1e-4, "{name}");
        }
    }
}

fn patch_frame(patch: &MetricPatch, p: &ChartPoint) -> weylscope_core::frames::OrthonormalFrame {
    riemann(patch, p).unwrap().frame
}

#[test]
fn finite_difference_order() {
    for (name, k) in [("s4_round", 1.0), ("h4_hyperbolic", -1.0)] {
        let base = entry(name).unwrap().patch;
        let domain = base.domain().clone();
        let error_at = |h: f64| {
            let mut steps = StepSizes::for_domain(&domain);
            steps.connection = [h; 4];
            let patch = entry(name).unwrap().patch.with_steps(steps);
            let p = ChartPoint([0.21, -0.13, 0.17, 0.08]);
            let cd = riemann(&patch, &p).unwrap();
            max_diff4(&cd.riemann, &sphere_riemann(&cd.metric, k))
        };
        let coarse = error_at(0.04);
        let fine = error_at(0.02);
        assert!(coarse / fine >= 8.0, "{name}: {coarse:e} -> {fine:e}");
    }
}

#[test]
fn sphere_charts_agree() {
    let north = entry("s4_round").unwrap().patch;
    let south = s4_south_chart().unwrap();
    let south_interior = south.interior().unwrap();
    let mut checked = 0;
    for p in interior_points(&north, 400, 10) {
        let Some(q) = stereographic_transition(&p) else { continue };
        if !south_interior.contains(&q) {
            continue;
        }
        let a = riemann(&north, &p).unwrap().scalar;
        let b = riemann(&south, &q).unwrap().scalar;
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        checked += 1;
    }
    assert!(checked >= 10, "only {checked} overlap points");
}
