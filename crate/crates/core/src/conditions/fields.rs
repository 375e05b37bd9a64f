use super::checks::check_almost_complex;
use crate::decomp::{
    curvature_operator, extract_weyl, spectrum, weitzenbock_rhs, CurvatureOperator, Side, WeitzenbockForm, WeylBlock,
    WeylSpectrum,
};
use crate::frames::{bivector_to_form, selfdual_basis, BivectorBasis, KAHLER_FORM_SCALE};
use crate::linalg::{self, Mat3, Mat4};
use crate::tensor::{
    covariant_derivative, inverse_metric, riemann, rough_laplacian, ChartPoint, CurvatureData, MetricPatch, Tensor,
    TensorField,
};
use crate::{Error, Result, DIM};

/// Required gap around the distinguished eigenvalue of the Kähler form
/// construction.
pub const ISOLATION_GAP: f64 = 1e-6;

/// Curvature decomposition at one point.
#[derive(Debug, Clone, Copy)]
pub struct PointCurvature {
    pub curvature: CurvatureData,
    pub basis: BivectorBasis,
    pub operator: CurvatureOperator,
    pub w_plus: WeylBlock,
    pub w_minus: WeylBlock,
    pub spectrum: WeylSpectrum,
}

impl PointCurvature {
    pub fn scalar(&self) -> f64 {
        self.curvature.scalar
    }
}

pub fn analyze_point(patch: &MetricPatch, p: &ChartPoint) -> Result<PointCurvature> {
    let curvature = riemann(patch, p)?;
    let basis = selfdual_basis(&curvature.frame);
    let operator = curvature_operator(&curvature, &basis)?;
    let w_plus = extract_weyl(&operator, curvature.scalar, Side::SelfDual)?;
    let w_minus = extract_weyl(&operator, curvature.scalar, Side::AntiSelfDual)?;
    let spectrum = spectrum(&w_plus)?;
    Ok(PointCurvature { curvature, basis, operator, w_plus, w_minus, spectrum })
}

/// `Σ_αβ m_αβ Ω^α ⊗ Ω^β` for the self-dual basis forms `Ω^α`.
fn operator_to_tensor(m: &Mat3, forms: &[Mat4; 3]) -> Tensor {
    let mut d = alloc::vec![0.0; 256];
    for a in 0..3 {
        for b in 0..3 {
            let w = m[a][b];
            if w == 0.0 {
                continue;
            }
            for i in 0..DIM {
                for j in 0..DIM {
                    let x = w * forms[a][i][j];
                    for k in 0..DIM {
                        for l in 0..DIM {
                            d[64 * i + 16 * j + 4 * k + l] += x * forms[b][k][l];
                        }
                    }
                }
            }
        }
    }
    Tensor::from_data(4, d)
}

/// `M_αβ = ¼ Σ c^α_ab c^β_cd T(e_a, e_b, e_c, e_d)` on the self-dual triple.
fn tensor_to_operator(t: &Tensor, basis: &BivectorBasis) -> Mat3 {
    let tf = t.to_frame(basis.frame().vectors());
    let sd = basis.self_dual();
    let mut m = [[0.0; 3]; 3];
    for (a, ca) in sd.iter().enumerate() {
        for (b, cb) in sd.iter().enumerate() {
            let mut s = 0.0;
            for i in 0..DIM {
                for j in 0..DIM {
                    if ca[i][j] == 0.0 {
                        continue;
                    }
                    for k in 0..DIM {
                        for l in 0..DIM {
                            s += ca[i][j] * cb[k][l] * tf.get(&[i, j, k, l]);
                        }
                    }
                }
            }
            m[a][b] = 0.25 * s;
        }
    }
    m
}

fn self_dual_forms(pc: &PointCurvature) -> [Mat4; 3] {
    let g = &pc.curvature.metric;
    pc.basis.self_dual().map(|c| bivector_to_form(pc.basis.frame(), g, &c))
}

/// The self-dual Weyl tensor as a covariant rank-4 field.
pub struct SelfDualWeylField<'a> {
    patch: &'a MetricPatch,
}

impl<'a> SelfDualWeylField<'a> {
    pub fn new(patch: &'a MetricPatch) -> Self {
        Self { patch }
    }
}

impl TensorField for SelfDualWeylField<'_> {
    fn rank(&self) -> usize {
        4
    }

    fn eval(&self, p: &ChartPoint) -> Result<Tensor> {
        let pc = analyze_point(self.patch, p)?;
        Ok(operator_to_tensor(pc.w_plus.matrix(), &self_dual_forms(&pc)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceResidual {
    /// `(δW⁺)_jkl = -g^{im} (∇W⁺)_{m i j k l}`.
    pub divergence: Tensor,
    /// Norm in an orthonormal frame.
    pub norm: f64,
}

pub fn divergence_residual(patch: &MetricPatch, p: &ChartPoint) -> Result<DivergenceResidual> {
    let field = SelfDualWeylField::new(patch);
    let nabla = covariant_derivative(patch, p, &field)?;
    let g = patch.components_at(p)?;
    let ginv = inverse_metric(&g, p)?;
    let mut divergence = nabla.trace_first_pair(&ginv);
    let data: alloc::vec::Vec<f64> = divergence.data().iter().map(|v| -v).collect();
    divergence = Tensor::from_data(3, data);
    let frame = crate::frames::gram_schmidt_frame(&g, patch.orientation())?;
    let norm = divergence.norm(frame.vectors());
    Ok(DivergenceResidual { divergence, norm })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeitzenbockResidual {
    /// `ΔW⁺` projected to `Λ⁺`.
    pub laplacian: Mat3,
    pub rhs: Mat3,
    pub residual: Mat3,
    /// Frobenius norm of `residual`.
    pub norm: f64,
}

/// `ΔW⁺ - ((S/2) W⁺ - 2 (W⁺)² - 4 (W⁺)^#)` at `p`.
pub fn weitzenbock_residual(patch: &MetricPatch, p: &ChartPoint) -> Result<WeitzenbockResidual> {
    let pc = analyze_point(patch, p)?;
    let field = SelfDualWeylField::new(patch);
    let lap = rough_laplacian(patch, p, &field)?;
    let laplacian = linalg::symmetrize(&tensor_to_operator(&lap, &pc.basis));
    let rhs = weitzenbock_rhs(pc.w_plus.matrix(), pc.scalar(), WeitzenbockForm::Adjugate)?;
    let residual = linalg::sub(&laplacian, &rhs);
    Ok(WeitzenbockResidual { laplacian, rhs, residual, norm: linalg::frobenius(&residual) })
}

/// Index of the distinguished eigenvalue: the top one for `S ≥ 0`, the
/// bottom one for `S < 0`.
pub fn distinguished_index(scalar: f64) -> usize {
    if scalar >= 0.0 {
        2
    } else {
        0
    }
}

/// Eigenvector of `W⁺` for the distinguished eigenvalue, as a lowered chart
/// two-form with `|ω|² = 2`. Fails when the eigenvalue is not isolated.
pub fn distinguished_form(pc: &PointCurvature) -> Result<Mat4> {
    let k = distinguished_index(pc.scalar());
    let l = pc.spectrum.lambda;
    let gap = match k {
        0 => l[1] - l[0],
        _ => l[2] - l[1],
    };
    if gap < ISOLATION_GAP {
        return Err(Error::DegenerateEigenvector { gap, required: ISOLATION_GAP });
    }
    let v = pc.spectrum.eigenvectors[k];
    let forms = self_dual_forms(pc);
    let mut omega = [[0.0; DIM]; DIM];
    for (a, f) in forms.iter().enumerate() {
        omega = linalg::add(&omega, &linalg::scale(f, v[a] * KAHLER_FORM_SCALE));
    }
    Ok(omega)
}

/// `g^{ik} g^{jl} α_ij β_kl`.
fn form_inner(ginv: &Mat4, a: &Mat4, b: &Mat4) -> f64 {
    let raised = linalg::matmul(&linalg::matmul(ginv, a), ginv);
    (0..DIM).flat_map(|i| (0..DIM).map(move |j| (i, j))).map(|(i, j)| raised[i][j] * b[i][j]).sum()
}

/// The distinguished eigenform as a field near a base point, sign-aligned
/// with its value at the base point.
pub struct DistinguishedFormField<'a> {
    patch: &'a MetricPatch,
    reference: Mat4,
}

impl<'a> DistinguishedFormField<'a> {
    pub fn new(patch: &'a MetricPatch, base: &ChartPoint) -> Result<Self> {
        let reference = distinguished_form(&analyze_point(patch, base)?)?;
        Ok(Self { patch, reference })
    }

    pub fn reference(&self) -> &Mat4 {
        &self.reference
    }
}

impl TensorField for DistinguishedFormField<'_> {
    fn rank(&self) -> usize {
        2
    }

    fn eval(&self, p: &ChartPoint) -> Result<Tensor> {
        let pc = analyze_point(self.patch, p)?;
        let omega = distinguished_form(&pc)?;
        let overlap = form_inner(&pc.curvature.inverse, &omega, &self.reference);
        let omega = if overlap < 0.0 { linalg::scale(&omega, -1.0) } else { omega };
        Ok(Tensor::from_matrix(&omega))
    }
}

/// `‖∇ω‖` in an orthonormal frame.
pub fn kahler_form_parallel<F: TensorField + ?Sized>(
    patch: &MetricPatch,
    p: &ChartPoint,
    omega_field: &F,
) -> Result<f64> {
    let nabla = covariant_derivative(patch, p, omega_field)?;
    let g = patch.components_at(p)?;
    let frame = crate::frames::gram_schmidt_frame(&g, patch.orientation())?;
    Ok(nabla.norm(frame.vectors()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KahlerFormCheck {
    /// Lowered chart components of `ω` at the point, `|ω|² = 2`.
    pub omega: Mat4,
    pub almost_complex_residual: f64,
    pub parallel_residual: f64,
}

/// Builds the distinguished eigenform around `p` and measures
/// `‖ω∘ω + id‖` and `‖∇ω‖`.
pub fn kahler_form_check(patch: &MetricPatch, p: &ChartPoint) -> Result<KahlerFormCheck> {
    let field = DistinguishedFormField::new(patch, p)?;
    let g = patch.components_at(p)?;
    let omega = *field.reference();
    Ok(KahlerFormCheck {
        omega,
        almost_complex_residual: check_almost_complex(&omega, &g)?,
        parallel_residual: kahler_form_parallel(patch, p, &field)?,
    })
}
