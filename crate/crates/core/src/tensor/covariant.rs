use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::chart::ChartPoint;
use super::curvature::{christoffel_raw, Christoffel};
use super::fd;
use super::metric::{inverse_metric, MetricPatch};
use crate::linalg::Mat4;
use crate::{Error, Result, DIM};

/// Covariant tensor with chart components stored row-major (first index
/// slowest).
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    rank: usize,
    data: Vec<f64>,
}

impl Tensor {
    pub fn zeros(rank: usize) -> Self {
        Self { rank, data: vec![0.0; DIM.pow(rank as u32)] }
    }

    pub fn scalar(v: f64) -> Self {
        Self { rank: 0, data: vec![v] }
    }

    pub fn from_data(rank: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), DIM.pow(rank as u32), "tensor data length does not match rank {rank}");
        Self { rank, data }
    }

    pub fn from_matrix(m: &Mat4) -> Self {
        Self { rank: 2, data: m.iter().flatten().copied().collect() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[flat_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: f64) {
        let i = flat_index(idx);
        self.data[i] = v;
    }

    pub fn to_matrix(&self) -> Mat4 {
        assert_eq!(self.rank, 2);
        let mut m = [[0.0; DIM]; DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                m[i][j] = self.data[4 * i + j];
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Components `T(e_{a1}, …, e_{ar})` in a frame (`e[a][i]`).
    pub fn to_frame(&self, e: &Mat4) -> Tensor {
        let mut cur = self.data.clone();
        let stride_of = |slot: usize| DIM.pow((self.rank - 1 - slot) as u32);
        for slot in 0..self.rank {
            let stride = stride_of(slot);
            let mut next = vec![0.0; cur.len()];
            for (flat, out) in next.iter_mut().enumerate() {
                let a = (flat / stride) % DIM;
                let base = flat - a * stride;
                *out = (0..DIM).map(|m| e[a][m] * cur[base + m * stride]).sum();
            }
            cur = next;
        }
        Tensor { rank: self.rank, data: cur }
    }

    /// Norm induced by the metric, computed from orthonormal-frame components.
    pub fn norm(&self, frame_vectors: &Mat4) -> f64 {
        self.to_frame(frame_vectors).data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `g^{ab} T_{ab…}`: contraction of the first two slots.
    pub fn trace_first_pair(&self, ginv: &Mat4) -> Tensor {
        assert!(self.rank >= 2);
        let rest = DIM.pow((self.rank - 2) as u32);
        let mut data = vec![0.0; rest];
        for a in 0..DIM {
            for b in 0..DIM {
                let w = ginv[a][b];
                let base = (a * DIM + b) * rest;
                for (r, out) in data.iter_mut().enumerate() {
                    *out += w * self.data[base + r];
                }
            }
        }
        Tensor { rank: self.rank - 2, data }
    }
}

fn flat_index(idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * DIM + i)
}

/// A covariant tensor field evaluable at chart points.
pub trait TensorField: Sync {
    fn rank(&self) -> usize;
    fn eval(&self, p: &ChartPoint) -> Result<Tensor>;
}

/// Tensor field given by a closure.
pub struct FnField<F> {
    rank: usize,
    f: F,
}

impl<F> FnField<F>
where
    F: Fn(&ChartPoint) -> Result<Tensor> + Sync,
{
    pub fn new(rank: usize, f: F) -> Self {
        Self { rank, f }
    }
}

impl<F> TensorField for FnField<F>
where
    F: Fn(&ChartPoint) -> Result<Tensor> + Sync,
{
    fn rank(&self) -> usize {
        self.rank
    }

    fn eval(&self, p: &ChartPoint) -> Result<Tensor> {
        let t = (self.f)(p)?;
        if t.rank != self.rank {
            return Err(Error::InvalidSweep(alloc::format!(
                "tensor field declared rank {} but produced rank {}",
                self.rank,
                t.rank
            )));
        }
        Ok(t)
    }
}

/// The metric itself as a rank-2 field.
pub struct MetricField<'a>(pub &'a MetricPatch);

impl TensorField for MetricField<'_> {
    fn rank(&self) -> usize {
        2
    }

    fn eval(&self, p: &ChartPoint) -> Result<Tensor> {
        Ok(Tensor::from_matrix(&self.0.components_at(p)?))
    }
}

fn apply_connection(partial: &mut Tensor, gamma: &Christoffel, value: &Tensor) {
    let r = value.rank;
    let size = DIM.pow(r as u32);
    for m in 0..DIM {
        for flat in 0..size {
            let mut corr = 0.0;
            for slot in 0..r {
                let stride = DIM.pow((r - 1 - slot) as u32);
                let ia = (flat / stride) % DIM;
                let base = flat - ia * stride;
                for k in 0..DIM {
                    corr += gamma[k][m][ia] * value.data[base + k * stride];
                }
            }
            partial.data[m * size + flat] -= corr;
        }
    }
}

/// `(∇T)_{m i1…ir} = ∂_m T_{i1…ir} - Σ_a Γ^k_{m i_a} T_{…k…}`, with
/// sixth-order partial derivatives at the patch field step.
pub fn covariant_derivative<F: TensorField + ?Sized>(patch: &MetricPatch, p: &ChartPoint, field: &F) -> Result<Tensor> {
    let value = field.eval(p)?;
    let r = value.rank;
    let size = DIM.pow(r as u32);
    let mut out = Tensor::zeros(r + 1);
    for m in 0..DIM {
        let d = fd::derivative_vec(|t| field.eval(&p.shifted(m, t)).map(Tensor::into_data), patch.steps().field[m])?;
        out.data[m * size..(m + 1) * size].copy_from_slice(&d);
    }
    let gamma = christoffel_raw(patch, p)?;
    apply_connection(&mut out, &gamma, &value);
    Ok(out)
}

/// `∇T` viewed as a tensor field of one rank higher.
pub struct CovariantDerivativeField<'a, F: ?Sized> {
    patch: &'a MetricPatch,
    field: &'a F,
}

impl<'a, F: TensorField + ?Sized> CovariantDerivativeField<'a, F> {
    pub fn new(patch: &'a MetricPatch, field: &'a F) -> Self {
        Self { patch, field }
    }
}

impl<F: TensorField + ?Sized> TensorField for CovariantDerivativeField<'_, F> {
    fn rank(&self) -> usize {
        self.field.rank() + 1
    }

    fn eval(&self, p: &ChartPoint) -> Result<Tensor> {
        covariant_derivative(self.patch, p, self.field)
    }
}

/// Rough Laplacian `ΔT = g^{ab} (∇∇T)_{ab…}` by nesting covariant
/// derivatives, so connection-derivative terms are included.
pub fn rough_laplacian<F: TensorField + ?Sized>(patch: &MetricPatch, p: &ChartPoint, field: &F) -> Result<Tensor> {
    let first = CovariantDerivativeField::new(patch, field);
    let second = covariant_derivative(patch, p, &first)?;
    let g = patch.components_at(p)?;
    let ginv = inverse_metric(&g, p)?;
    Ok(second.trace_first_pair(&ginv))
}
