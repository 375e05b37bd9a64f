mod common;

use proptest::prelude::*;
use weylscope_core::catalog::entry;
use weylscope_core::decomp::{curvature_operator, spectrum_of};
use weylscope_core::frames::{gram_schmidt_frame, hodge_star, projectors, selfdual_basis, OrthonormalFrame};
use weylscope_core::linalg::{self, Mat4, Mat6};
use weylscope_core::tensor::{riemann, ChartPoint, Orientation};

fn positive_definite() -> impl Strategy<Value = Mat4> {
    prop::array::uniform4(prop::array::uniform4(-2.0..2.0f64)).prop_map(|a| {
        let mut g = linalg::matmul(&linalg::transpose(&a), &a);
        for (i, row) in g.iter_mut().enumerate() {
            row[i] += 0.1;
        }
        g
    })
}

fn orientation() -> impl Strategy<Value = Orientation> {
    prop_oneof![Just(Orientation::Positive), Just(Orientation::Negative)]
}

fn close6(a: &Mat6, b: &Mat6) -> f64 {
    linalg::max_abs(&linalg::sub(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn projector_algebra(g in positive_definite(), o in orientation()) {
        let frame = gram_schmidt_frame(&g, o).unwrap();
        prop_assert!(frame.orthonormality_defect(&g) < 1e-12);
        prop_assert_eq!(frame.handedness(), o.sign());
        let (p, m) = projectors(&frame);
        prop_assert!(close6(&linalg::matmul(&p, &p), &p) < 1e-12);
        prop_assert!(close6(&linalg::matmul(&m, &m), &m) < 1e-12);
        prop_assert!(linalg::max_abs(&linalg::matmul(&p, &m)) < 1e-12);
        prop_assert!(close6(&linalg::add(&p, &m), &linalg::identity()) < 1e-12);
        let rank_p = spectrum_count(&p, 1.0);
        let rank_m = spectrum_count(&m, 1.0);
        prop_assert_eq!((rank_p, rank_m), (3, 3));
    }

    #[test]
    fn star_is_symmetric_involution(g in positive_definite(), o in orientation()) {
        let frame = gram_schmidt_frame(&g, o).unwrap();
        let star = hodge_star(&frame);
        prop_assert!(close6(&star, &linalg::transpose(&star)) < 1e-15);
        prop_assert!(close6(&linalg::matmul(&star, &star), &linalg::identity()) < 1e-15);
        prop_assert_eq!(spectrum_count(&star, 1.0), 3);
        prop_assert_eq!(spectrum_count(&star, -1.0), 3);
        let q = selfdual_basis(&frame).change_of_basis();
        let sq = linalg::matmul(&star, &q);
        for col in 0..6 {
            let sign = if col < 3 { 1.0 } else { -1.0 };
            for row in 0..6 {
                prop_assert!((sq[row][col] - sign * q[row][col]).abs() < 1e-15);
            }
        }
    }
}

fn spectrum_count(m: &Mat6, value: f64) -> usize {
    let eig = linalg::symmetric_eigen(&linalg::symmetrize(m)).unwrap();
    eig.values.iter().filter(|v| (*v - value).abs() < 1e-10).count()
}

#[test]
fn orientation_flip_exchanges_triples() {
    let mut rng = common::rng(11);
    for _ in 0..50 {
        let g = common::random_metric(&mut rng);
        let plus = selfdual_basis(&gram_schmidt_frame(&g, Orientation::Positive).unwrap());
        let minus = selfdual_basis(&gram_schmidt_frame(&g, Orientation::Negative).unwrap());
        // the same two-forms in chart components, compared as subspaces
        let forms = |b: &weylscope_core::frames::BivectorBasis, range: core::ops::Range<usize>| -> Vec<Mat4> {
            range.map(|k| weylscope_core::frames::bivector_to_form(b.frame(), &g, &b.elements()[k])).collect()
        };
        let sd_plus = forms(&plus, 0..3);
        let asd_minus = forms(&minus, 3..6);
        let ginv = linalg::inverse(&g).unwrap();
        for a in &sd_plus {
            let captured: f64 = asd_minus.iter().map(|b| form_inner(a, b, &ginv).powi(2)).sum();
            assert!((captured - 1.0).abs() < 1e-10, "{captured}");
        }
    }
}

fn form_inner(a: &Mat4, b: &Mat4, ginv: &Mat4) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    s += 0.5 * ginv[i][k] * ginv[j][l] * a[i][j] * b[k][l];
                }
            }
        }
    }
    s
}

fn sorted_eigenvalues<const N: usize>(m: &[[f64; N]; N]) -> [f64; N] {
    linalg::symmetric_eigen(m).unwrap().values
}

#[test]
fn spectra_are_frame_gauge_invariant() {
    let mut rng = common::rng(12);
    for name in ["cp2_fubini_study", "s2xs2", "warped_probe"] {
        let patch = entry(name).unwrap().patch;
        let p = patch.interior().unwrap().center();
        let p = ChartPoint([p.0[0] + 0.05, p.0[1] - 0.03, p.0[2] + 0.02, p.0[3]]);
        let cd = riemann(&patch, &p).unwrap();
        let op = curvature_operator(&cd, &selfdual_basis(&cd.frame)).unwrap();
        let full = sorted_eigenvalues(op.matrix());
        let wp = spectrum_of(&op.self_dual_block()).unwrap().lambda;
        let wm = spectrum_of(&op.anti_self_dual_block()).unwrap().lambda;
        for _ in 0..20 {
            let r: Mat4 = common::random_rotation(&mut rng);
            let frame: OrthonormalFrame = cd.frame.rotated(&r);
            assert!(frame.orthonormality_defect(&cd.metric) < 1e-12);
            let mut rotated = cd;
            rotated.frame = frame;
            let op2 = curvature_operator(&rotated, &selfdual_basis(&frame)).unwrap();
            let full2 = sorted_eigenvalues(op2.matrix());
            let wp2 = spectrum_of(&op2.self_dual_block()).unwrap().lambda;
            let wm2 = spectrum_of(&op2.anti_self_dual_block()).unwrap().lambda;
            for k in 0..6 {
                assert!((full[k] - full2[k]).abs() < 1e-10, "{name}");
            }
            for k in 0..3 {
                assert!((wp[k] - wp2[k]).abs() < 1e-10, "{name}");
                assert!((wm[k] - wm2[k]).abs() < 1e-10, "{name}");
            }
        }
    }
}

#[test]
fn rotated_frame_keeps_orientation_class() {
    let mut rng = common::rng(13);
    let g = common::random_metric(&mut rng);
    let frame = gram_schmidt_frame(&g, Orientation::Positive).unwrap();
    let r: Mat4 = common::random_rotation(&mut rng);
    let rotated = frame.rotated(&r);
    assert_eq!(rotated.handedness(), 1.0);
    assert_eq!(rotated.orientation(), Orientation::Positive);
    let reflection = linalg::diag([1.0, 1.0, 1.0, -1.0]);
    let flipped = frame.rotated(&reflection);
    assert_eq!(flipped.orientation(), Orientation::Negative);
    assert_eq!(flipped.handedness(), -1.0);
}
