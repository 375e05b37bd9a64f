//! Orthonormal frames, the bivector space `Λ²` and its self-dual splitting.
//!
//! Bivectors are stored as antisymmetric `4×4` coefficient matrices `c_ab`
//! over a frame, so that `β = Σ_{a<b} c_ab e_a∧e_b` and the induced norm is
//! `Σ_{a<b} c_ab²`. Basis elements are unit vectors for this norm.

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{self, Mat4, Mat6};
use crate::tensor::{ChartPoint, Orientation};
use crate::{Error, Result, DIM};

/// Ordered frame index pairs of the standard bivector basis
/// `e12, e13, e14, e23, e24, e34` (0-based).
pub const BIVECTOR_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Ratio between the `|ω|² = 2` normalization of Kähler-type forms
/// (`ω = e12 + e34`) and the unit-norm bivectors used internally.
pub const KAHLER_FORM_SCALE: f64 = core::f64::consts::SQRT_2;

/// Four `g`-orthonormal vectors given by their chart components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthonormalFrame {
    /// `vectors[a][i]` is the `i`-th chart component of `e_a`.
    vectors: Mat4,
    orientation: Orientation,
}

impl OrthonormalFrame {
    /// Wraps explicit frame vectors; fails if they are not orthonormal for
    /// `g` (to 1e-12) or their handedness does not match `orientation`.
    pub fn new(vectors: Mat4, orientation: Orientation, g: &Mat4) -> Result<Self> {
        let frame = Self { vectors, orientation };
        if frame.orthonormality_defect(g) > 1e-12 || frame.handedness() != orientation.sign() {
            return Err(Error::FrameMismatch);
        }
        Ok(frame)
    }

    pub fn vectors(&self) -> &Mat4 {
        &self.vectors
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Sign of the determinant of the frame matrix (chart handedness).
    pub fn handedness(&self) -> f64 {
        if linalg::det4(&self.vectors) >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    /// `max |g(e_a, e_b) - δ_ab|`.
    pub fn orthonormality_defect(&self, g: &Mat4) -> f64 {
        let gf = linalg::congruence(g, &self.matrix());
        linalg::max_abs(&linalg::sub(&gf, &linalg::identity()))
    }

    /// Matrix whose columns are the frame vectors (`E[i][a] = e_a^i`).
    pub fn matrix(&self) -> Mat4 {
        linalg::transpose(&self.vectors)
    }

    /// Dual coframe `θ^a_i = g_ij e_a^j`, as rows.
    pub fn coframe(&self, g: &Mat4) -> Mat4 {
        let mut th = [[0.0; DIM]; DIM];
        for a in 0..DIM {
            for i in 0..DIM {
                th[a][i] = (0..DIM).map(|j| g[i][j] * self.vectors[a][j]).sum();
            }
        }
        th
    }

    /// New frame `e'_a = Σ_b r[a][b] e_b`. `r` must be orthogonal; an
    /// improper `r` flips the recorded orientation.
    pub fn rotated(&self, r: &Mat4) -> Self {
        let vectors = linalg::matmul(r, &self.vectors);
        let orientation = if linalg::det4(r) < 0.0 { self.orientation.flipped() } else { self.orientation };
        Self { vectors, orientation }
    }

    pub(crate) fn approx_eq(&self, other: &Self) -> bool {
        self.orientation == other.orientation && linalg::max_abs(&linalg::sub(&self.vectors, &other.vectors)) <= 1e-12
    }
}

/// Gram-Schmidt on the coordinate basis in index order, no pivoting. For
/// `Orientation::Negative` the last vector is negated.
pub fn gram_schmidt_frame(g: &Mat4, orientation: Orientation) -> Result<OrthonormalFrame> {
    let inner = |u: &[f64; DIM], v: &[f64; DIM]| -> f64 {
        let mut s = 0.0;
        for i in 0..DIM {
            for j in 0..DIM {
                s += u[i] * g[i][j] * v[j];
            }
        }
        s
    };
    let scale = linalg::max_abs(g);
    let mut vectors = [[0.0; DIM]; DIM];
    for a in 0..DIM {
        let mut v = [0.0; DIM];
        v[a] = 1.0;
        for b in 0..a {
            let proj = inner(&v, &vectors[b]);
            for i in 0..DIM {
                v[i] -= proj * vectors[b][i];
            }
        }
        let n2 = inner(&v, &v);
        if n2.is_nan() || n2 <= 1e-14 * scale {
            return Err(Error::DegenerateMetric { point: [f64::NAN; DIM], min_eigenvalue: n2 });
        }
        let inv = 1.0 / n2.sqrt();
        for i in 0..DIM {
            vectors[a][i] = v[i] * inv;
        }
    }
    if orientation == Orientation::Negative {
        for x in vectors[3].iter_mut() {
            *x = -*x;
        }
    }
    Ok(OrthonormalFrame { vectors, orientation })
}

/// As [`gram_schmidt_frame`], reporting the chart point on failure.
pub(crate) fn frame_at(g: &Mat4, orientation: Orientation, p: &ChartPoint) -> Result<OrthonormalFrame> {
    gram_schmidt_frame(g, orientation).map_err(|e| match e {
        Error::DegenerateMetric { min_eigenvalue, .. } => Error::DegenerateMetric { point: p.0, min_eigenvalue },
        other => other,
    })
}

/// Levi-Civita symbol on four frame indices.
pub fn levi_civita(idx: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if idx[i] == idx[j] {
                return 0.0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Hodge star on `Λ²` in the standard bivector basis of `frame`
/// (column `k` holds `★` of the `k`-th basis bivector).
///
/// The sign is taken relative to the orientation recorded in the frame, so a
/// frame built for the opposite orientation represents `-★` of the chart
/// orientation.
pub fn hodge_star(frame: &OrthonormalFrame) -> Mat6 {
    let parity = frame.handedness() * frame.orientation().sign();
    let mut star = [[0.0; 6]; 6];
    for (col, &(a, b)) in BIVECTOR_PAIRS.iter().enumerate() {
        for (row, &(c, d)) in BIVECTOR_PAIRS.iter().enumerate() {
            star[row][col] = parity * levi_civita([a, b, c, d]);
        }
    }
    star
}

/// Self-dual / anti-self-dual projectors `P± = (I ± ★)/2` in the standard basis.
pub fn projectors(frame: &OrthonormalFrame) -> (Mat6, Mat6) {
    let star = hodge_star(frame);
    let id = linalg::identity::<6>();
    (linalg::scale(&linalg::add(&id, &star), 0.5), linalg::scale(&linalg::sub(&id, &star), 0.5))
}

/// Orthonormal basis of `Λ² = Λ⁺ ⊕ Λ⁻` over a frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BivectorBasis {
    frame: OrthonormalFrame,
    /// `elements[0..3]` span `Λ⁺`, `elements[3..6]` span `Λ⁻`.
    elements: [Mat4; 6],
}

impl BivectorBasis {
    pub fn frame(&self) -> &OrthonormalFrame {
        &self.frame
    }

    pub fn elements(&self) -> &[Mat4; 6] {
        &self.elements
    }

    pub fn self_dual(&self) -> [Mat4; 3] {
        [self.elements[0], self.elements[1], self.elements[2]]
    }

    pub fn anti_self_dual(&self) -> [Mat4; 3] {
        [self.elements[3], self.elements[4], self.elements[5]]
    }

    /// Columns are the basis bivectors in standard-basis coordinates.
    pub fn change_of_basis(&self) -> Mat6 {
        let mut m = [[0.0; 6]; 6];
        for (col, c) in self.elements.iter().enumerate() {
            for (row, &(a, b)) in BIVECTOR_PAIRS.iter().enumerate() {
                m[row][col] = c[a][b];
            }
        }
        m
    }
}

fn bivector(pairs: [((usize, usize), f64); 2]) -> Mat4 {
    let mut c = [[0.0; DIM]; DIM];
    let w = core::f64::consts::FRAC_1_SQRT_2;
    for ((a, b), s) in pairs {
        c[a][b] += s * w;
        c[b][a] -= s * w;
    }
    c
}

/// `ω₁± = (e12 ± e34)/√2`, `ω₂± = (e13 ± e42)/√2`, `ω₃± = (e14 ± e23)/√2`,
/// with the frame made positively oriented for its recorded orientation.
pub fn selfdual_basis(frame: &OrthonormalFrame) -> BivectorBasis {
    // ±1 relative sign so that ★ fixes the first triple for this frame
    let s = frame.handedness() * frame.orientation().sign();
    let mut elements = [[[0.0; DIM]; DIM]; 6];
    for (k, sd) in [1.0, -1.0].into_iter().enumerate() {
        let t = s * sd;
        elements[3 * k] = bivector([((0, 1), 1.0), ((2, 3), t)]);
        elements[3 * k + 1] = bivector([((0, 2), 1.0), ((3, 1), t)]);
        elements[3 * k + 2] = bivector([((0, 3), 1.0), ((1, 2), t)]);
    }
    BivectorBasis { frame: *frame, elements }
}

/// Lowered chart components `Ω_ij = Σ_ab c_ab θ^a_i θ^b_j` of a frame
/// bivector viewed as a two-form.
pub fn bivector_to_form(frame: &OrthonormalFrame, g: &Mat4, c: &Mat4) -> Mat4 {
    let th = frame.coframe(g);
    linalg::congruence(c, &th)
}

/// Contravariant chart components `Σ_ab c_ab e_a^i e_b^j`.
pub fn bivector_to_chart(frame: &OrthonormalFrame, c: &Mat4) -> Mat4 {
    linalg::congruence(c, frame.vectors())
}

/// Frame components of a lowered two-form: `c_ab = Ω(e_a, e_b)`.
pub fn form_to_bivector(frame: &OrthonormalFrame, omega: &Mat4) -> Mat4 {
    linalg::congruence(omega, &frame.matrix())
}

/// Inner product of two frame bivectors (`Σ_{a<b}`).
pub fn bivector_dot(x: &Mat4, y: &Mat4) -> f64 {
    BIVECTOR_PAIRS.iter().map(|&(a, b)| x[a][b] * y[a][b]).sum()
}
