#[allow(unused_imports)]
use num_traits::Float;

use crate::decomp::{WeylBlock, WeylSpectrum};
use crate::frames::{form_to_bivector, gram_schmidt_frame};
use crate::linalg::{self, Mat4};
use crate::tensor::Orientation;
use crate::Result;

/// A signed margin, passing when `margin ≥ -tolerance`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginCheck {
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl MarginCheck {
    pub fn new(margin: f64, tolerance: f64) -> Self {
        Self { margin, tolerance, pass: margin >= -tolerance }
    }
}

/// A non-negative residual, passing when `residual ≤ tolerance`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualCheck {
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ResidualCheck {
    pub fn new(residual: f64, tolerance: f64) -> Self {
        Self { residual, tolerance, pass: residual <= tolerance }
    }
}

/// `λ₂ + S/12`.
pub fn check_middle_eigenvalue(spec: &WeylSpectrum, scalar: f64, tol: f64) -> MarginCheck {
    MarginCheck::new(spec.lambda[1] + scalar / 12.0, tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPicCheck {
    /// `S`.
    pub scalar_margin: f64,
    /// `λ₁ + λ₂ + S/6`.
    pub eigen_margin: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl HalfPicCheck {
    /// `min(S, λ₁ + λ₂ + S/6)`.
    pub fn margin(&self) -> f64 {
        self.scalar_margin.min(self.eigen_margin)
    }
}

/// Half nonnegative isotropic curvature: `S ≥ 0` and `λ₁ + λ₂ ≥ -S/6`.
pub fn check_half_pic(spec: &WeylSpectrum, scalar: f64, tol: f64) -> HalfPicCheck {
    let eigen_margin = spec.lambda[0] + spec.lambda[1] + scalar / 6.0;
    HalfPicCheck { scalar_margin: scalar, eigen_margin, tolerance: tol, pass: scalar >= -tol && eigen_margin >= -tol }
}

/// `‖W⁺‖` (Frobenius); passes when below `tol`.
pub fn check_asd(w: &WeylBlock, tol: f64) -> ResidualCheck {
    let n = w.norm();
    ResidualCheck { residual: n, tolerance: tol, pass: n < tol }
}

/// Which sign branch a Kähler-type spectrum falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KahlerBranch {
    /// `S > 0`: `λ₁ = λ₂ = -S/12`, `λ₃ = S/6`.
    PositiveScalar,
    /// `S < 0`: `λ₁ = S/6`, `λ₂ = λ₃ = -S/12`.
    NegativeScalar,
    /// `S = 0`: `W⁺ = 0`.
    ZeroScalar,
}

impl KahlerBranch {
    pub fn of(scalar: f64) -> Self {
        if scalar > 0.0 {
            KahlerBranch::PositiveScalar
        } else if scalar < 0.0 {
            KahlerBranch::NegativeScalar
        } else {
            KahlerBranch::ZeroScalar
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            KahlerBranch::PositiveScalar => "S > 0: lambda1 = -S/12, lambda3 = S/6",
            KahlerBranch::NegativeScalar => "S < 0: lambda1 = S/6, lambda3 = -S/12",
            KahlerBranch::ZeroScalar => "S = 0: W+ = 0",
        }
    }
}

/// Sorted `(S/6, -S/12, -S/12)`.
pub fn kahler_spectrum(scalar: f64) -> [f64; 3] {
    let (a, b) = (scalar / 6.0, -scalar / 12.0);
    if scalar >= 0.0 {
        [b, b, a]
    } else {
        [a, b, b]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KahlerSpectrumCheck {
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Set when the check passes.
    pub branch: Option<KahlerBranch>,
}

/// Euclidean distance from the sorted spectrum to sorted `(S/6, -S/12, -S/12)`.
pub fn check_kahler_spectrum(spec: &WeylSpectrum, scalar: f64, tol: f64) -> KahlerSpectrumCheck {
    let target = kahler_spectrum(scalar);
    let residual = (0..3).map(|k| (spec.lambda[k] - target[k]).powi(2)).sum::<f64>().sqrt();
    let pass = residual < tol;
    let branch = if !pass {
        None
    } else if scalar.abs() <= tol {
        Some(KahlerBranch::ZeroScalar)
    } else {
        Some(KahlerBranch::of(scalar))
    };
    KahlerSpectrumCheck { residual, tolerance: tol, pass, branch }
}

/// `‖J∘J + id‖` for `J = g⁻¹Ω`, measured in an orthonormal frame of `g`.
/// `omega` holds lowered chart components normalized to `|ω|² = 2`.
pub fn check_almost_complex(omega: &Mat4, g: &Mat4) -> Result<f64> {
    let frame = gram_schmidt_frame(g, Orientation::Positive)?;
    let j = form_to_bivector(&frame, omega);
    let mut jj = linalg::matmul(&j, &j);
    for (i, row) in jj.iter_mut().enumerate() {
        row[i] += 1.0;
    }
    Ok(linalg::frobenius(&jj))
}
