//! Curvature operator on two-forms and its irreducible pieces.
//!
//! In a basis of `Λ² = Λ⁺ ⊕ Λ⁻` the curvature operator is the symmetric block
//! matrix
//!
//! ```text
//! [ W⁺ + (S/12) I      B        ]
//! [      Bᵀ         W⁻ + (S/12) I ]
//! ```
//!
//! where `B` carries the traceless Ricci tensor. The functions here assemble
//! that matrix from a [`CurvatureData`], split it, diagonalize the Weyl
//! blocks and evaluate the pointwise algebraic identities satisfied by the
//! self-dual Weyl spectrum.

use crate::frames::{BivectorBasis, BIVECTOR_PAIRS};
use crate::linalg::{self, Mat3, Mat6};
use crate::tensor::CurvatureData;
use crate::{Error, Result};

/// Relative eigenvalue gap below which two eigenvalues are treated as equal.
pub const DEGENERACY_GAP: f64 = 1e-8;
/// Tolerance of [`extract_weyl`] on the trace of the extracted block,
/// relative to `max(‖w‖, |S|)`.
pub const EXTRACTION_TRACE_TOLERANCE: f64 = 1e-6;
/// Trace tolerance for Weyl blocks supplied directly, relative to `max(‖w‖, 1)`.
pub const WEYL_TRACE_TOLERANCE: f64 = 1e-10;

/// Curvature operator `Rm: Λ² → Λ²` in a [`BivectorBasis`] (Λ⁺ first).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureOperator {
    matrix: Mat6,
}

impl CurvatureOperator {
    pub fn from_matrix(matrix: Mat6) -> Self {
        Self { matrix }
    }

    pub fn from_blocks(a: &Mat3, b: &Mat3, c: &Mat3) -> Self {
        let mut m = [[0.0; 6]; 6];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = a[i][j];
                m[i][j + 3] = b[i][j];
                m[j + 3][i] = b[i][j];
                m[i + 3][j + 3] = c[i][j];
            }
        }
        Self { matrix: m }
    }

    pub fn matrix(&self) -> &Mat6 {
        &self.matrix
    }

    fn block(&self, r: usize, c: usize) -> Mat3 {
        let mut b = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                b[i][j] = self.matrix[r + i][c + j];
            }
        }
        b
    }

    /// `Λ⁺ → Λ⁺` block, `W⁺ + (S/12) I`.
    pub fn self_dual_block(&self) -> Mat3 {
        self.block(0, 0)
    }

    /// Off-diagonal block (rows `Λ⁺`, columns `Λ⁻`), zero iff Einstein.
    pub fn off_diagonal_block(&self) -> Mat3 {
        self.block(0, 3)
    }

    /// `Λ⁻ → Λ⁻` block, `W⁻ + (S/12) I`.
    pub fn anti_self_dual_block(&self) -> Mat3 {
        self.block(3, 3)
    }

    pub fn trace(&self) -> f64 {
        linalg::trace(&self.matrix)
    }

    /// Scalar curvature read off the operator (`S = 2·trace`).
    pub fn scalar_curvature(&self) -> f64 {
        2.0 * self.trace()
    }

    pub fn symmetry_defect(&self) -> f64 {
        linalg::max_abs(&linalg::sub(&self.matrix, &linalg::transpose(&self.matrix)))
    }

    /// The same operator in another orthonormal basis (`Qᵀ M Q`).
    pub fn conjugated(&self, q: &Mat6) -> Self {
        Self { matrix: linalg::congruence(&self.matrix, q) }
    }
}

/// `⟨Rm ω_α, ω_β⟩ = Σ_{a<b, c<d} c^α_ab c^β_cd R_abcd`.
pub fn curvature_operator(cd: &CurvatureData, basis: &BivectorBasis) -> Result<CurvatureOperator> {
    if !basis.frame().approx_eq(&cd.frame) {
        return Err(Error::FrameMismatch);
    }
    let r = cd.riemann_in_frame();
    let mut standard = [[0.0; 6]; 6];
    for (i, &(a, b)) in BIVECTOR_PAIRS.iter().enumerate() {
        for (j, &(c, d)) in BIVECTOR_PAIRS.iter().enumerate() {
            standard[i][j] = r[a][b][c][d];
        }
    }
    let m = linalg::symmetrize(&linalg::congruence(&standard, &basis.change_of_basis()));
    Ok(CurvatureOperator { matrix: m })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    SelfDual,
    AntiSelfDual,
}

/// Trace-free `3×3` Weyl operator on `Λ⁺` or `Λ⁻`, with the scalar curvature
/// of the point it was taken from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylBlock {
    w: Mat3,
    scalar: f64,
    side: Side,
}

impl WeylBlock {
    pub fn new(w: Mat3, scalar: f64, side: Side) -> Result<Self> {
        let tr = linalg::trace(&w);
        let tol = WEYL_TRACE_TOLERANCE * linalg::frobenius(&w).max(1.0);
        if tr.abs() > tol {
            return Err(Error::TraceViolation { trace: tr.abs(), tolerance: tol });
        }
        Ok(Self { w: linalg::symmetrize(&w), scalar, side })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.w
    }

    pub fn scalar(&self) -> f64 {
        self.scalar
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Frobenius norm `|W|`, so that `|W|² = Σ λᵢ²`.
    pub fn norm(&self) -> f64 {
        linalg::frobenius(&self.w)
    }
}

/// `W± = Rm± - (S/12) I`. The residual trace (finite-difference noise) is
/// removed after the consistency check.
pub fn extract_weyl(op: &CurvatureOperator, scalar: f64, side: Side) -> Result<WeylBlock> {
    let block = match side {
        Side::SelfDual => op.self_dual_block(),
        Side::AntiSelfDual => op.anti_self_dual_block(),
    };
    let mut w = linalg::symmetrize(&block);
    for (i, row) in w.iter_mut().enumerate() {
        row[i] -= scalar / 12.0;
    }
    let tr = linalg::trace(&w);
    let tol = EXTRACTION_TRACE_TOLERANCE * linalg::frobenius(&w).max(scalar.abs());
    if tr.abs() > tol {
        return Err(Error::TraceViolation { trace: tr.abs(), tolerance: tol });
    }
    for (i, row) in w.iter_mut().enumerate() {
        row[i] -= tr / 3.0;
    }
    Ok(WeylBlock { w, scalar, side })
}

/// Sorted eigenvalues `λ₁ ≤ λ₂ ≤ λ₃` with orthonormal eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylSpectrum {
    pub lambda: [f64; 3],
    /// `eigenvectors[k]` belongs to `lambda[k]`, in the coordinates of the
    /// `Λ±` basis the block was expressed in.
    pub eigenvectors: [[f64; 3]; 3],
    /// `[λ₂ - λ₁ small, λ₃ - λ₂ small]`. Eigenvectors inside a degenerate
    /// cluster are an arbitrary orthonormal completion.
    pub degenerate: [bool; 2],
}

impl WeylSpectrum {
    pub fn sum(&self) -> f64 {
        self.lambda.iter().sum()
    }

    /// Whether `lambda[k]` is separated from its neighbours.
    pub fn is_isolated(&self, k: usize) -> bool {
        match k {
            0 => !self.degenerate[0],
            1 => !self.degenerate[0] && !self.degenerate[1],
            _ => !self.degenerate[1],
        }
    }
}

/// Diagonalizes a Weyl block by cyclic Jacobi iteration.
pub fn spectrum(w: &WeylBlock) -> Result<WeylSpectrum> {
    spectrum_of(&w.w)
}

pub fn spectrum_of(m: &Mat3) -> Result<WeylSpectrum> {
    let eig = linalg::symmetric_eigen(m)?;
    let gap = DEGENERACY_GAP * linalg::frobenius(m);
    let l = eig.values;
    Ok(WeylSpectrum { lambda: l, eigenvectors: eig.vectors, degenerate: [l[1] - l[0] <= gap, l[2] - l[1] <= gap] })
}

/// Adjugate (matrix of cofactors, transposed): by Cayley-Hamilton
/// `adj(w) = w² - tr(w) w + ½(tr(w)² - tr(w²)) I`. In an eigenbasis it is
/// `diag(λ₂λ₃, λ₁λ₃, λ₁λ₂)`.
pub fn adjoint_matrix(w: &Mat3) -> Mat3 {
    let w2 = linalg::matmul(w, w);
    let t = linalg::trace(w);
    let c = 0.5 * (t * t - linalg::trace(&w2));
    let mut adj = linalg::sub(&w2, &linalg::scale(w, t));
    for (i, row) in adj.iter_mut().enumerate() {
        row[i] += c;
    }
    adj
}

/// Which algebraic form of the Weitzenböck right-hand side to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeitzenbockForm {
    /// `(S/2) W - 2 W² - 4 W^#`
    Adjugate,
    /// `(S/2) W - 6 W∘W + 2|W|² I`
    Square,
}

fn rhs_unchecked(w: &Mat3, scalar: f64, form: WeitzenbockForm) -> Mat3 {
    let w2 = linalg::matmul(w, w);
    let base = linalg::scale(w, 0.5 * scalar);
    match form {
        WeitzenbockForm::Adjugate => {
            linalg::sub(&linalg::sub(&base, &linalg::scale(&w2, 2.0)), &linalg::scale(&adjoint_matrix(w), 4.0))
        }
        WeitzenbockForm::Square => {
            let mut m = linalg::sub(&base, &linalg::scale(&w2, 6.0));
            let n2 = linalg::trace(&w2);
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += 2.0 * n2;
            }
            m
        }
    }
}

/// Algebraic right-hand side of the Weitzenböck formula for `ΔW⁺`. Both
/// forms are evaluated and required to agree (they coincide exactly for
/// trace-free `w`).
pub fn weitzenbock_rhs(w: &Mat3, scalar: f64, form: WeitzenbockForm) -> Result<Mat3> {
    let scale = linalg::frobenius(w).max(scalar.abs()).max(1.0);
    let tr = linalg::trace(w);
    let tol = WEYL_TRACE_TOLERANCE * scale;
    if tr.abs() > tol {
        return Err(Error::TraceViolation { trace: tr.abs(), tolerance: tol });
    }
    let a = rhs_unchecked(w, scalar, WeitzenbockForm::Adjugate);
    let b = rhs_unchecked(w, scalar, WeitzenbockForm::Square);
    let gap = linalg::max_abs(&linalg::sub(&a, &b));
    if gap > 1e-12 * scale * scale {
        return Err(Error::TraceViolation { trace: tr.abs(), tolerance: tol });
    }
    Ok(match form {
        WeitzenbockForm::Adjugate => a,
        WeitzenbockForm::Square => b,
    })
}

fn check_trace_free(lambda: &[f64; 3], scalar: f64) -> Result<()> {
    let scale = lambda.iter().fold(scalar.abs(), |m, l| m.max(l.abs())).max(1.0);
    let tol = 1e-12 * scale;
    let s: f64 = lambda.iter().sum();
    if s.abs() > tol {
        return Err(Error::TraceViolation { trace: s.abs(), tolerance: tol });
    }
    Ok(())
}

/// Per-eigenvalue Weitzenböck expression `(S/2) λ - 2 λ² - 4 λ' λ''`.
pub fn eigenvalue_weitzenbock(lambda: f64, others: (f64, f64), scalar: f64) -> f64 {
    0.5 * scalar * lambda - 2.0 * lambda * lambda - 4.0 * others.0 * others.1
}

/// Difference between the top-minus-bottom eigenvalue Weitzenböck
/// expression and its factored form `6(λ₃ - λ₁)(λ₂ + S/12)`. Vanishes
/// identically on trace-free triples.
pub fn eigenvalue_inequality_identity(lambda: [f64; 3], scalar: f64) -> Result<f64> {
    check_trace_free(&lambda, scalar)?;
    let [l1, l2, l3] = lambda;
    let top = eigenvalue_weitzenbock(l3, (l1, l2), scalar);
    let bottom = eigenvalue_weitzenbock(l1, (l2, l3), scalar);
    Ok(top - bottom - 6.0 * (l3 - l1) * (l2 + scalar / 12.0))
}

/// Which extreme eigenvalue the substitution is written for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremeEigenvalue {
    Lowest,
    Highest,
}

/// With `λ₂ = -S/12` and trace-free closure, returns
/// `((S/2)λ - 2λ² - 4λ'λ'', -2(λ + S/12)(λ - S/6))`; the pair is equal.
pub fn root_factorization(lambda: f64, scalar: f64, which: ExtremeEigenvalue) -> (f64, f64) {
    let middle = -scalar / 12.0;
    let other = -lambda - middle;
    let unfactored = match which {
        ExtremeEigenvalue::Lowest => eigenvalue_weitzenbock(lambda, (middle, other), scalar),
        ExtremeEigenvalue::Highest => eigenvalue_weitzenbock(lambda, (other, middle), scalar),
    };
    let factored = -2.0 * (lambda + scalar / 12.0) * (lambda - scalar / 6.0);
    (unfactored, factored)
}

/// Sum of the three eigenvalue Laplacian expressions of a harmonic `W⁺` with
/// eigenframe connection terms `|ι_a ω₃|², |ι_b ω₁|², |ι_c ω₂|²` given as
/// `gradient_terms = (A, B, C)`. Equals `Δ(λ₁+λ₂+λ₃) = 0` for trace-free
/// triples.
pub fn eigenvalue_laplacian_sum(lambda: [f64; 3], scalar: f64, gradient_terms: (f64, f64, f64)) -> Result<f64> {
    check_trace_free(&lambda, scalar)?;
    let [l1, l2, l3] = lambda;
    let (a, b, c) = gradient_terms;
    let d1 = 2.0 * (l1 - l2) * a + 2.0 * (l1 - l3) * c + eigenvalue_weitzenbock(l1, (l2, l3), scalar);
    let d2 = 2.0 * (l2 - l1) * a + 2.0 * (l2 - l3) * b + eigenvalue_weitzenbock(l2, (l1, l3), scalar);
    let d3 = 2.0 * (l3 - l1) * c + 2.0 * (l3 - l2) * b + eigenvalue_weitzenbock(l3, (l1, l2), scalar);
    Ok(d1 + d2 + d3)
}

/// Irreducible pieces of an algebraic curvature operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraicCurvature {
    pub scalar: f64,
    /// Off-diagonal block (traceless Ricci).
    pub ricci_block: Mat3,
    pub w_plus: Mat3,
    pub w_minus: Mat3,
}

fn trace_free_symmetric(m: &Mat3) -> Mat3 {
    let mut s = linalg::symmetrize(m);
    let t = linalg::trace(&s) / 3.0;
    for (i, row) in s.iter_mut().enumerate() {
        row[i] -= t;
    }
    s
}

impl AlgebraicCurvature {
    /// Random operator: `W±` entries uniform in `[-1, 1]`, symmetrized and
    /// trace-projected, Ricci block entries uniform in `[-1, 1]`, `S` uniform
    /// in `[-24, 24]`. `uniform` must return samples of `[0, 1)`.
    pub fn sample(uniform: &mut impl FnMut() -> f64) -> Self {
        let m3 = |u: &mut dyn FnMut() -> f64| {
            let mut m = [[0.0; 3]; 3];
            for v in m.iter_mut().flatten() {
                *v = 2.0 * u() - 1.0;
            }
            m
        };
        let w_plus = trace_free_symmetric(&m3(uniform));
        let w_minus = trace_free_symmetric(&m3(uniform));
        let ricci_block = m3(uniform);
        let scalar = 48.0 * uniform() - 24.0;
        Self { scalar, ricci_block, w_plus, w_minus }
    }

    pub fn assemble(&self) -> CurvatureOperator {
        let shift = linalg::scale(&linalg::identity::<3>(), self.scalar / 12.0);
        CurvatureOperator::from_blocks(
            &linalg::add(&self.w_plus, &shift),
            &self.ricci_block,
            &linalg::add(&self.w_minus, &shift),
        )
    }

    pub fn decompose(op: &CurvatureOperator) -> Result<Self> {
        let scalar = op.scalar_curvature();
        Ok(Self {
            scalar,
            ricci_block: op.off_diagonal_block(),
            w_plus: *extract_weyl(op, scalar, Side::SelfDual)?.matrix(),
            w_minus: *extract_weyl(op, scalar, Side::AntiSelfDual)?.matrix(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjugate_examples() {
        assert_eq!(adjoint_matrix(&linalg::identity()), linalg::identity::<3>());
        assert_eq!(adjoint_matrix(&linalg::diag([1.0, 2.0, 3.0])), linalg::diag([6.0, 3.0, 2.0]));
        assert_eq!(adjoint_matrix(&linalg::diag([4.0, -2.0, -2.0])), linalg::diag([4.0, -8.0, -8.0]));
    }

    #[test]
    fn weitzenbock_rhs_vanishes_on_kahler_spectrum() {
        let w = linalg::diag([4.0, -2.0, -2.0]);
        for form in [WeitzenbockForm::Adjugate, WeitzenbockForm::Square] {
            assert_eq!(weitzenbock_rhs(&w, 24.0, form).unwrap(), linalg::zeros::<3>());
            assert_eq!(weitzenbock_rhs(&linalg::zeros(), 5.0, form).unwrap(), linalg::zeros::<3>());
        }
    }

    #[test]
    fn weitzenbock_rhs_rejects_trace() {
        let err = weitzenbock_rhs(&linalg::identity(), 1.0, WeitzenbockForm::Adjugate).unwrap_err();
        assert!(matches!(err, Error::TraceViolation { .. }));
    }

    #[test]
    fn eigenvalue_identity_examples() {
        assert_eq!(eigenvalue_inequality_identity([0.0; 3], 7.0).unwrap(), 0.0);
        assert_eq!(eigenvalue_inequality_identity([-2.0, -2.0, 4.0], 24.0).unwrap(), 0.0);
        assert!(eigenvalue_inequality_identity([1.0, 0.0, 0.0], 1.0).is_err());
    }

    #[test]
    fn root_factorization_examples() {
        for s in [-24.0, -1.0, 0.0, 3.0, 24.0] {
            for which in [ExtremeEigenvalue::Lowest, ExtremeEigenvalue::Highest] {
                let (u, f) = root_factorization(s / 6.0, s, which);
                assert!(u.abs() < 1e-12 && f.abs() < 1e-12);
                let (u, f) = root_factorization(-s / 12.0, s, which);
                assert!(u.abs() < 1e-12 && f.abs() < 1e-12);
            }
        }
        assert_eq!(root_factorization(1.0, 24.0, ExtremeEigenvalue::Lowest), (18.0, 18.0));
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum_of(&linalg::zeros()).unwrap();
        assert_eq!(s.lambda, [0.0; 3]);
        assert_eq!(s.degenerate, [true, true]);
        let s = spectrum_of(&linalg::diag([4.0, -2.0, -2.0])).unwrap();
        assert_eq!(s.lambda, [-2.0, -2.0, 4.0]);
        assert_eq!(s.degenerate, [true, false]);
        assert!(s.is_isolated(2) && !s.is_isolated(0));
    }

    #[test]
    fn weyl_block_trace_checked() {
        assert!(WeylBlock::new(linalg::identity(), 0.0, Side::SelfDual).is_err());
        let op = CurvatureOperator::from_blocks(&linalg::identity(), &linalg::zeros(), &linalg::identity());
        // block trace 3 but S/12·3 = 0.25·3 for S = 3: inconsistent assembly
        assert!(matches!(extract_weyl(&op, 3.0, Side::SelfDual), Err(Error::TraceViolation { .. })));
        assert_eq!(extract_weyl(&op, 12.0, Side::SelfDual).unwrap().matrix(), &linalg::zeros::<3>());
    }

    #[test]
    fn laplacian_sum_vanishes() {
        let v = eigenvalue_laplacian_sum([-1.5, 0.25, 1.25], 3.0, (0.7, 1.9, 0.2)).unwrap();
        assert!(v.abs() < 1e-13);
    }
}
