//! Sixth-order central difference stencils.

use alloc::vec::Vec;

use crate::linalg::Mat4;
use crate::Result;

/// Offsets (in units of `h`) and weights of the first-derivative stencil;
/// the result is divided by `DENOMINATOR · h`.
pub const FIRST_DERIVATIVE: [(f64, f64); 6] =
    [(-3.0, -1.0), (-2.0, 9.0), (-1.0, -45.0), (1.0, 45.0), (2.0, -9.0), (3.0, 1.0)];
pub const DENOMINATOR: f64 = 60.0;
/// Largest stencil offset, in units of `h`.
pub const REACH: f64 = 3.0;

/// `f'(0)` for a scalar function of a shift `t`.
pub fn derivative(mut f: impl FnMut(f64) -> Result<f64>, h: f64) -> Result<f64> {
    let mut acc = 0.0;
    for (off, w) in FIRST_DERIVATIVE {
        acc += w * f(off * h)?;
    }
    Ok(acc / (DENOMINATOR * h))
}

pub fn derivative_mat(mut f: impl FnMut(f64) -> Result<Mat4>, h: f64) -> Result<Mat4> {
    let mut acc = [[0.0; 4]; 4];
    for (off, w) in FIRST_DERIVATIVE {
        let v = f(off * h)?;
        for i in 0..4 {
            for j in 0..4 {
                acc[i][j] += w * v[i][j];
            }
        }
    }
    let inv = 1.0 / (DENOMINATOR * h);
    for row in acc.iter_mut() {
        for v in row.iter_mut() {
            *v *= inv;
        }
    }
    Ok(acc)
}

pub fn derivative_slice<const N: usize>(mut f: impl FnMut(f64) -> Result<[f64; N]>, h: f64) -> Result<[f64; N]> {
    let mut acc = [0.0; N];
    for (off, w) in FIRST_DERIVATIVE {
        let v = f(off * h)?;
        for (a, x) in acc.iter_mut().zip(v.iter()) {
            *a += w * x;
        }
    }
    let inv = 1.0 / (DENOMINATOR * h);
    acc.iter_mut().for_each(|a| *a *= inv);
    Ok(acc)
}

pub fn derivative_vec(mut f: impl FnMut(f64) -> Result<Vec<f64>>, h: f64) -> Result<Vec<f64>> {
    let mut acc: Vec<f64> = Vec::new();
    for (off, w) in FIRST_DERIVATIVE {
        let v = f(off * h)?;
        if acc.is_empty() {
            acc.resize(v.len(), 0.0);
        }
        for (a, x) in acc.iter_mut().zip(v.iter()) {
            *a += w * x;
        }
    }
    let inv = 1.0 / (DENOMINATOR * h);
    acc.iter_mut().for_each(|a| *a *= inv);
    Ok(acc)
}
