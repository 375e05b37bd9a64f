//! Seeded sweeps of the algebraic identities behind the maximum-principle
//! argument, on random algebraic curvature operators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weylscope_core::decomp::{
    eigenvalue_inequality_identity, eigenvalue_laplacian_sum, root_factorization, spectrum_of, weitzenbock_rhs,
    AlgebraicCurvature, ExtremeEigenvalue, WeitzenbockForm,
};
use weylscope_core::linalg;
use weylscope_core::Result;

pub const INEQUALITY_SAMPLES: usize = 100_000;
pub const ROOT_SAMPLES: usize = 100_000;
pub const FORM_SAMPLES: usize = 1_000;
pub const LAPLACIAN_SAMPLES: usize = 10_000;

/// Agreement required between the two algebraic forms of the Weitzenböck
/// right-hand side.
pub const FORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityResult {
    pub name: &'static str,
    pub description: &'static str,
    pub samples: usize,
    /// Largest residual divided by the natural scale of the sample.
    pub max_relative_residual: f64,
    pub tolerance: f64,
}

impl IdentityResult {
    pub fn passes(&self) -> bool {
        self.max_relative_residual <= self.tolerance
    }
}

/// Square of the largest curvature magnitude in the sample, at least 1.
fn quadratic_scale(lambda: &[f64], scalar: f64) -> f64 {
    let m = lambda.iter().fold(scalar.abs() / 12.0, |m, v| m.max(v.abs()));
    (m * m).max(1.0)
}

fn sampler(seed: u64) -> (ChaCha8Rng, impl FnMut(&mut ChaCha8Rng) -> AlgebraicCurvature) {
    (ChaCha8Rng::seed_from_u64(seed), |rng: &mut ChaCha8Rng| AlgebraicCurvature::sample(&mut || rng.random::<f64>()))
}

pub fn inequality_identity(seed: u64, samples: usize, tol: f64) -> Result<IdentityResult> {
    let (mut rng, mut sample) = sampler(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let c = sample(&mut rng);
        let lambda = spectrum_of(&c.w_plus)?.lambda;
        let mut l = lambda;
        // The eigensolver leaves a roundoff-size trace.
        let t = l.iter().sum::<f64>() / 3.0;
        l.iter_mut().for_each(|v| *v -= t);
        let r = eigenvalue_inequality_identity(l, c.scalar)?;
        worst = worst.max(r.abs() / quadratic_scale(&l, c.scalar));
    }
    Ok(IdentityResult {
        name: "eigenvalue_inequality_identity",
        description: "top minus bottom eigenvalue Weitzenbock terms = 6 (l3 - l1)(l2 + S/12)",
        samples,
        max_relative_residual: worst,
        tolerance: tol,
    })
}

pub fn root_factorization_identity(seed: u64, samples: usize, tol: f64) -> Result<IdentityResult> {
    let (mut rng, mut sample) = sampler(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let c = sample(&mut rng);
        let lambda = spectrum_of(&c.w_plus)?.lambda;
        for (l, which) in [(lambda[0], ExtremeEigenvalue::Lowest), (lambda[2], ExtremeEigenvalue::Highest)] {
            let (u, f) = root_factorization(l, c.scalar, which);
            worst = worst.max((u - f).abs() / quadratic_scale(&[l], c.scalar));
        }
    }
    Ok(IdentityResult {
        name: "root_factorization",
        description: "with l2 = -S/12 the extreme-eigenvalue terms factor as -2 (l + S/12)(l - S/6)",
        samples,
        max_relative_residual: worst,
        tolerance: tol,
    })
}

pub fn weitzenbock_forms(seed: u64, samples: usize) -> Result<IdentityResult> {
    let (mut rng, mut sample) = sampler(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let c = sample(&mut rng);
        let a = weitzenbock_rhs(&c.w_plus, c.scalar, WeitzenbockForm::Adjugate)?;
        let b = weitzenbock_rhs(&c.w_plus, c.scalar, WeitzenbockForm::Square)?;
        let n = linalg::frobenius(&c.w_plus);
        let scale = (n * n).max(n * c.scalar.abs()).max(1.0);
        worst = worst.max(linalg::max_abs(&linalg::sub(&a, &b)) / scale);
    }
    Ok(IdentityResult {
        name: "weitzenbock_forms",
        description: "(S/2) W - 2 W^2 - 4 W# = (S/2) W - 6 W^2 + 2 |W|^2 I on trace-free W",
        samples,
        max_relative_residual: worst,
        tolerance: FORM_TOLERANCE,
    })
}

pub fn laplacian_sum(seed: u64, samples: usize, tol: f64) -> Result<IdentityResult> {
    let (mut rng, mut sample) = sampler(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let c = sample(&mut rng);
        let mut l = spectrum_of(&c.w_plus)?.lambda;
        let t = l.iter().sum::<f64>() / 3.0;
        l.iter_mut().for_each(|v| *v -= t);
        let g = (rng.random::<f64>(), rng.random::<f64>(), rng.random::<f64>());
        let v = eigenvalue_laplacian_sum(l, c.scalar, g)?;
        worst = worst.max(v.abs() / quadratic_scale(&l, c.scalar));
    }
    Ok(IdentityResult {
        name: "laplacian_sum",
        description: "the three eigenvalue Laplacian expressions sum to the Laplacian of the trace, zero",
        samples,
        max_relative_residual: worst,
        tolerance: tol,
    })
}

/// All identity sweeps with their default sample counts; each sweep draws
/// from its own stream derived from `seed`.
pub fn identity_suite(seed: u64, tol_algebraic: f64) -> Result<Vec<IdentityResult>> {
    Ok(vec![
        inequality_identity(seed, INEQUALITY_SAMPLES, tol_algebraic)?,
        root_factorization_identity(seed.wrapping_add(1), ROOT_SAMPLES, tol_algebraic)?,
        weitzenbock_forms(seed.wrapping_add(2), FORM_SAMPLES)?,
        laplacian_sum(seed.wrapping_add(3), LAPLACIAN_SAMPLES, tol_algebraic)?,
    ])
}
