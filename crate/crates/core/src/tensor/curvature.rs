use super::chart::ChartPoint;
use super::fd;
use super::metric::{check_positive_definite, inverse_metric, MetricPatch};
use crate::frames::{frame_at, OrthonormalFrame};
use crate::linalg::Mat4;
use crate::{Error, Result, DIM};

/// `gamma[k][i][j] = Γ^k_ij`.
pub type Christoffel = [[[f64; DIM]; DIM]; DIM];
/// Fully covariant rank-4 tensor, `r[i][j][k][l]`.
pub type Rank4 = [[[[f64; DIM]; DIM]; DIM]; DIM];

/// Floor of the finite-difference error estimate, relative to `max(1, max|R|)`.
const ROUNDOFF_FLOOR: f64 = 1e-10;

/// Curvature of a metric at one chart point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureData {
    pub point: ChartPoint,
    pub metric: Mat4,
    pub inverse: Mat4,
    pub gamma: Christoffel,
    /// `R_ijkl` with `R_1212 > 0` on round spheres.
    pub riemann: Rank4,
    pub ricci: Mat4,
    pub scalar: f64,
    pub frame: OrthonormalFrame,
    /// Size of the symmetry defect of the raw finite-difference tensor, used
    /// as the error estimate for the Bianchi check.
    pub fd_error_estimate: f64,
    /// First Bianchi residual before projection onto algebraic curvature
    /// tensors.
    pub bianchi_residual: f64,
}

impl CurvatureData {
    /// `Ric - (S/4) g`.
    pub fn traceless_ricci(&self) -> Mat4 {
        let mut t = self.ricci;
        for i in 0..DIM {
            for j in 0..DIM {
                t[i][j] -= 0.25 * self.scalar * self.metric[i][j];
            }
        }
        t
    }

    /// `R(e_a, e_b, e_c, e_d)` in the attached orthonormal frame.
    pub fn riemann_in_frame(&self) -> Rank4 {
        to_frame4(&self.riemann, self.frame.vectors())
    }

    pub fn max_abs_riemann(&self) -> f64 {
        self.riemann.iter().flatten().flatten().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Contracts every slot of a covariant rank-4 tensor with `e[a]`.
pub fn to_frame4(t: &Rank4, e: &Mat4) -> Rank4 {
    let mut cur = *t;
    for slot in 0..4 {
        let mut next = [[[[0.0; DIM]; DIM]; DIM]; DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    for l in 0..DIM {
                        let mut idx = [i, j, k, l];
                        let a = idx[slot];
                        let mut s = 0.0;
                        for m in 0..DIM {
                            idx[slot] = m;
                            s += e[a][m] * cur[idx[0]][idx[1]][idx[2]][idx[3]];
                        }
                        next[i][j][k][l] = s;
                    }
                }
            }
        }
        cur = next;
    }
    cur
}

fn christoffel_from(ginv: &Mat4, dg: &[Mat4; DIM]) -> Christoffel {
    let mut gamma = [[[0.0; DIM]; DIM]; DIM];
    for i in 0..DIM {
        for j in i..DIM {
            let mut lowered = [0.0; DIM];
            for (l, low) in lowered.iter_mut().enumerate() {
                *low = 0.5 * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
            }
            for k in 0..DIM {
                let v: f64 = (0..DIM).map(|l| ginv[k][l] * lowered[l]).sum();
                gamma[k][i][j] = v;
                gamma[k][j][i] = v;
            }
        }
    }
    gamma
}

/// Christoffel symbols without the positive-definiteness check.
pub(crate) fn christoffel_raw(patch: &MetricPatch, p: &ChartPoint) -> Result<Christoffel> {
    let g = patch.components_at(p)?;
    let ginv = inverse_metric(&g, p)?;
    let dg = patch.derivatives_at(p)?;
    Ok(christoffel_from(&ginv, &dg))
}

/// Levi-Civita connection `Γ^k_ij = ½ g^{kl}(∂_i g_jl + ∂_j g_il - ∂_l g_ij)`.
pub fn christoffel(patch: &MetricPatch, p: &ChartPoint) -> Result<Christoffel> {
    let g = patch.components_at(p)?;
    check_positive_definite(&g, p)?;
    christoffel_raw(patch, p)
}

fn flatten_gamma(g: &Christoffel) -> [f64; 64] {
    let mut out = [0.0; 64];
    for k in 0..DIM {
        for i in 0..DIM {
            for j in 0..DIM {
                out[16 * k + 4 * i + j] = g[k][i][j];
            }
        }
    }
    out
}

/// Riemann, Ricci and scalar curvature at `p`, with an orthonormal frame for
/// the patch orientation.
pub fn riemann(patch: &MetricPatch, p: &ChartPoint) -> Result<CurvatureData> {
    let g = patch.components_at(p)?;
    check_positive_definite(&g, p)?;
    let ginv = inverse_metric(&g, p)?;
    let gamma = christoffel_from(&ginv, &patch.derivatives_at(p)?);

    // dgamma[i] = ∂_i Γ (flattened k,j,l)
    let mut dgamma = [[0.0; 64]; DIM];
    for (i, d) in dgamma.iter_mut().enumerate() {
        *d = fd::derivative_slice(
            |t| christoffel_raw(patch, &p.shifted(i, t)).map(|c| flatten_gamma(&c)),
            patch.steps().connection[i],
        )?;
    }
    let dg = |i: usize, l: usize, j: usize, k: usize| dgamma[i][16 * l + 4 * j + k];

    // R^l_ijk = ∂_i Γ^l_jk - ∂_j Γ^l_ik + Γ^l_im Γ^m_jk - Γ^l_jm Γ^m_ik
    let mut rup = [[[[0.0; DIM]; DIM]; DIM]; DIM];
    for l in 0..DIM {
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    let mut v = dg(i, l, j, k) - dg(j, l, i, k);
                    for m in 0..DIM {
                        v += gamma[l][i][m] * gamma[m][j][k] - gamma[l][j][m] * gamma[m][i][k];
                    }
                    rup[l][i][j][k] = v;
                }
            }
        }
    }
    // R_ijkl = g_km R^m_ijl
    let mut raw = [[[[0.0; DIM]; DIM]; DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                for l in 0..DIM {
                    raw[i][j][k][l] = (0..DIM).map(|m| g[k][m] * rup[m][i][j][l]).sum();
                }
            }
        }
    }

    let (riemann, fd_error_estimate, bianchi_residual) = project_algebraic(&raw)?;

    let mut ricci = [[0.0; DIM]; DIM];
    for j in 0..DIM {
        for l in 0..DIM {
            let mut s = 0.0;
            for i in 0..DIM {
                for k in 0..DIM {
                    s += ginv[i][k] * riemann[i][j][k][l];
                }
            }
            ricci[j][l] = s;
        }
    }
    let scalar = (0..DIM).flat_map(|j| (0..DIM).map(move |l| (j, l))).map(|(j, l)| ginv[j][l] * ricci[j][l]).sum();
    let frame = frame_at(&g, patch.orientation(), p)?;

    Ok(CurvatureData {
        point: *p,
        metric: g,
        inverse: ginv,
        gamma,
        riemann,
        ricci,
        scalar,
        frame,
        fd_error_estimate,
        bianchi_residual,
    })
}

/// Projects a raw finite-difference tensor onto algebraic curvature tensors:
/// antisymmetry in each pair, pair symmetry, then removal of the totally
/// antisymmetric part (first Bianchi identity).
///
/// Returns the projected tensor, the symmetry defect (error estimate) and the
/// Bianchi residual measured before its projection.
fn project_algebraic(raw: &Rank4) -> Result<(Rank4, f64, f64)> {
    let mut r = [[[[0.0; DIM]; DIM]; DIM]; DIM];
    let mut defect: f64 = 0.0;
    let mut max_r: f64 = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                for l in 0..DIM {
                    let a = 0.25
                        * (raw[i][j][k][l] - raw[j][i][k][l] - raw[i][j][l][k] + raw[j][i][l][k] + raw[k][l][i][j]
                            - raw[l][k][i][j]
                            - raw[k][l][j][i]
                            + raw[l][k][j][i])
                        * 0.5;
                    r[i][j][k][l] = a;
                    defect = defect.max((a - raw[i][j][k][l]).abs());
                    max_r = max_r.max(a.abs());
                }
            }
        }
    }
    let mut bianchi: f64 = 0.0;
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                for l in 0..DIM {
                    bianchi = bianchi.max((r[i][j][k][l] + r[i][k][l][j] + r[i][l][j][k]).abs());
                }
            }
        }
    }
    let estimate = defect.max(ROUNDOFF_FLOOR * max_r.max(1.0));
    if bianchi > 100.0 * estimate {
        return Err(Error::NumericalInstability { residual: bianchi, estimate });
    }
    // totally antisymmetric part is a multiple of the permutation symbol
    let alt = (r[0][1][2][3] - r[0][2][1][3] + r[0][3][1][2]) / 3.0;
    if alt != 0.0 {
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    for l in 0..DIM {
                        r[i][j][k][l] -= alt * crate::frames::levi_civita([i, j, k, l]);
                    }
                }
            }
        }
    }
    Ok((r, estimate, bianchi))
}
