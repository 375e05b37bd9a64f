//! Fixed-size dense matrix helpers and a cyclic Jacobi eigensolver.

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

pub type Mat<const N: usize> = [[f64; N]; N];
pub type Mat3 = Mat<3>;
pub type Mat4 = Mat<4>;
pub type Mat6 = Mat<6>;

/// Maximum number of cyclic sweeps before reporting non-convergence.
pub const JACOBI_MAX_SWEEPS: usize = 50;
/// Relative off-diagonal Frobenius norm at which the iteration stops.
pub const JACOBI_TOLERANCE: f64 = 1e-14;

pub fn zeros<const N: usize>() -> Mat<N> {
    [[0.0; N]; N]
}

pub fn identity<const N: usize>() -> Mat<N> {
    let mut m = zeros::<N>();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

pub fn diag<const N: usize>(d: [f64; N]) -> Mat<N> {
    let mut m = zeros::<N>();
    for i in 0..N {
        m[i][i] = d[i];
    }
    m
}

pub fn matmul<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut c = zeros::<N>();
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..N {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

pub fn transpose<const N: usize>(a: &Mat<N>) -> Mat<N> {
    let mut t = zeros::<N>();
    for i in 0..N {
        for j in 0..N {
            t[j][i] = a[i][j];
        }
    }
    t
}

pub fn add<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut c = *a;
    for i in 0..N {
        for j in 0..N {
            c[i][j] += b[i][j];
        }
    }
    c
}

pub fn sub<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut c = *a;
    for i in 0..N {
        for j in 0..N {
            c[i][j] -= b[i][j];
        }
    }
    c
}

pub fn scale<const N: usize>(a: &Mat<N>, s: f64) -> Mat<N> {
    let mut c = *a;
    for row in c.iter_mut() {
        for v in row.iter_mut() {
            *v *= s;
        }
    }
    c
}

pub fn trace<const N: usize>(a: &Mat<N>) -> f64 {
    (0..N).map(|i| a[i][i]).sum()
}

pub fn frobenius<const N: usize>(a: &Mat<N>) -> f64 {
    a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn max_abs<const N: usize>(a: &Mat<N>) -> f64 {
    a.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
}

/// `Aᵀ M A`, i.e. `M` expressed in the basis given by the columns of `A`.
pub fn congruence<const N: usize>(m: &Mat<N>, a: &Mat<N>) -> Mat<N> {
    matmul(&transpose(a), &matmul(m, a))
}

pub fn symmetrize<const N: usize>(a: &Mat<N>) -> Mat<N> {
    let mut s = *a;
    for i in 0..N {
        for j in 0..N {
            s[i][j] = 0.5 * (a[i][j] + a[j][i]);
        }
    }
    s
}

pub fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn det4(m: &Mat4) -> f64 {
    let mut total = 0.0;
    for col in 0..4 {
        let mut minor = [[0.0; 3]; 3];
        for r in 1..4 {
            let mut cc = 0;
            for c in 0..4 {
                if c == col {
                    continue;
                }
                minor[r - 1][cc] = m[r][c];
                cc += 1;
            }
        }
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * m[0][col] * det3(&minor);
    }
    total
}

/// Inverse via Gauss-Jordan elimination with partial pivoting. Returns `None`
/// for (numerically) singular input.
pub fn inverse<const N: usize>(a: &Mat<N>) -> Option<Mat<N>> {
    let mut m = *a;
    let mut inv = identity::<N>();
    let scale_ref = max_abs(a);
    if scale_ref == 0.0 {
        return None;
    }
    for col in 0..N {
        let pivot = (col..N).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() <= f64::EPSILON * scale_ref {
            return None;
        }
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = 1.0 / m[col][col];
        for j in 0..N {
            m[col][j] *= p;
            inv[col][j] *= p;
        }
        for row in 0..N {
            if row == col {
                continue;
            }
            let f = m[row][col];
            if f == 0.0 {
                continue;
            }
            for j in 0..N {
                m[row][j] -= f * m[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    Some(inv)
}

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricEigen<const N: usize> {
    /// Eigenvalues in ascending order.
    pub values: [f64; N],
    /// `vectors[k]` is the unit eigenvector for `values[k]`, with its first
    /// non-negligible component positive.
    pub vectors: [[f64; N]; N],
}

/// Cyclic Jacobi iteration. Stops once the off-diagonal Frobenius norm drops
/// below `JACOBI_TOLERANCE · ‖a‖_F`; fails after `JACOBI_MAX_SWEEPS` sweeps.
pub fn symmetric_eigen<const N: usize>(a: &Mat<N>) -> Result<SymmetricEigen<N>> {
    let mut m = symmetrize(a);
    let mut v = identity::<N>();
    let norm = frobenius(&m);
    let target = JACOBI_TOLERANCE * norm;

    let off = |m: &Mat<N>| -> f64 {
        let mut s = 0.0;
        for i in 0..N {
            for j in 0..N {
                if i != j {
                    s += m[i][j] * m[i][j];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off(&m) > target {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::Convergence { off_norm: off(&m), sweeps });
        }
        sweeps += 1;
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = m[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta.is_infinite() { 0.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                if s == 0.0 {
                    m[p][q] = 0.0;
                    m[q][p] = 0.0;
                    continue;
                }
                for k in 0..N {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..N {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                m[p][q] = 0.0;
                m[q][p] = 0.0;
                for k in 0..N {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order = [0usize; N];
    for (i, o) in order.iter_mut().enumerate() {
        *o = i;
    }
    order.sort_by(|&i, &j| m[i][i].total_cmp(&m[j][j]));

    let mut values = [0.0; N];
    let mut vectors = [[0.0; N]; N];
    for (slot, &k) in order.iter().enumerate() {
        values[slot] = m[k][k];
        let mut vec = [0.0; N];
        for (r, x) in vec.iter_mut().enumerate() {
            *x = v[r][k];
        }
        let lead = vec.iter().copied().find(|x| x.abs() > 1e-12).unwrap_or(1.0);
        if lead < 0.0 {
            for x in vec.iter_mut() {
                *x = -*x;
            }
        }
        vectors[slot] = vec;
    }
    Ok(SymmetricEigen { values, vectors })
}
