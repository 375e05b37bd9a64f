use alloc::string::{String, ToString};

use crate::{Error, Result, DIM};

/// A point of a coordinate chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint(pub [f64; DIM]);

impl ChartPoint {
    pub fn new(coords: [f64; DIM]) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[f64; DIM] {
        &self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Returns the point moved by `delta` along coordinate `axis`.
    pub fn shifted(&self, axis: usize, delta: f64) -> Self {
        let mut c = self.0;
        c[axis] += delta;
        Self(c)
    }
}

impl From<[f64; DIM]> for ChartPoint {
    fn from(c: [f64; DIM]) -> Self {
        Self(c)
    }
}

/// Rectangular parameter box in ℝ⁴.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartDomain {
    pub name: String,
    pub lower: [f64; DIM],
    pub upper: [f64; DIM],
}

impl ChartDomain {
    pub fn new(name: impl Into<String>, lower: [f64; DIM], upper: [f64; DIM]) -> Result<Self> {
        let name = name.into();
        for i in 0..DIM {
            if !(lower[i].is_finite() && upper[i].is_finite() && lower[i] < upper[i]) {
                return Err(Error::InvalidDomain(alloc::format!(
                    "{name}: axis {} has bounds [{}, {}]",
                    i + 1,
                    lower[i],
                    upper[i]
                )));
            }
        }
        Ok(Self { name, lower, upper })
    }

    /// The same box on every axis.
    pub fn cube(name: impl Into<String>, lo: f64, hi: f64) -> Result<Self> {
        Self::new(name, [lo; DIM], [hi; DIM])
    }

    pub fn extent(&self, axis: usize) -> f64 {
        self.upper[axis] - self.lower[axis]
    }

    pub fn center(&self) -> ChartPoint {
        let mut c = [0.0; DIM];
        for (i, v) in c.iter_mut().enumerate() {
            *v = 0.5 * (self.lower[i] + self.upper[i]);
        }
        ChartPoint(c)
    }

    pub fn contains(&self, p: &ChartPoint) -> bool {
        p.is_finite() && (0..DIM).all(|i| p.0[i] >= self.lower[i] && p.0[i] <= self.upper[i])
    }

    pub fn check(&self, p: &ChartPoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::Domain { point: p.0, domain: self.name.to_string() })
        }
    }

    /// The box shrunk by `margin[i]` on both sides of each axis.
    pub fn shrunk(&self, margin: [f64; DIM]) -> Result<Self> {
        let mut lower = self.lower;
        let mut upper = self.upper;
        for i in 0..DIM {
            lower[i] += margin[i];
            upper[i] -= margin[i];
        }
        Self::new(self.name.clone(), lower, upper)
    }

    /// Maps a point of the unit cube `[0,1]⁴` affinely onto the box.
    pub fn from_unit(&self, u: [f64; DIM]) -> ChartPoint {
        let mut c = [0.0; DIM];
        for i in 0..DIM {
            c[i] = self.lower[i] + u[i] * self.extent(i);
        }
        ChartPoint(c)
    }

    /// Deterministic, well-spread sample points (Halton sequence in bases 2, 3, 5, 7).
    pub fn halton_points(&self, count: usize) -> alloc::vec::Vec<ChartPoint> {
        const BASES: [u32; DIM] = [2, 3, 5, 7];
        (1..=count)
            .map(|n| {
                let mut u = [0.0; DIM];
                for (axis, b) in BASES.iter().enumerate() {
                    u[axis] = radical_inverse(n as u64, u64::from(*b));
                }
                self.from_unit(u)
            })
            .collect()
    }
}

fn radical_inverse(mut n: u64, base: u64) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut out = 0.0;
    while n > 0 {
        out += (n % base) as f64 * inv;
        n /= base;
        inv /= base as f64;
    }
    out
}

/// Orientation of the chart relative to the manifold orientation in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum Orientation {
    /// Chart coordinate order `(x1, x2, x3, x4)` is positively oriented.
    #[default]
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Self::Positive => 1.0,
            Self::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Self::Positive => Self::Negative,
            Self::Negative => Self::Positive,
        }
    }

    pub fn from_sign(s: i32) -> Option<Self> {
        match s {
            1 => Some(Self::Positive),
            -1 => Some(Self::Negative),
            _ => None,
        }
    }
}

impl core::fmt::Display for Orientation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Self::Positive => "+1",
            Self::Negative => "-1",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_axis() {
        assert!(ChartDomain::new("bad", [0.0; 4], [1.0, 1.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn halton_points_inside() {
        let d = ChartDomain::new("d", [-1.0, 0.0, 2.0, -5.0], [1.0, 0.5, 3.0, 5.0]).unwrap();
        let pts = d.halton_points(50);
        assert_eq!(pts.len(), 50);
        assert!(pts.iter().all(|p| d.contains(p)));
    }

    #[test]
    fn domain_check_reports_point() {
        let d = ChartDomain::cube("unit", 0.0, 1.0).unwrap();
        let err = d.check(&ChartPoint([0.5, 0.5, 1.5, 0.5])).unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
        assert!(d.check(&ChartPoint([f64::NAN, 0.5, 0.5, 0.5])).is_err());
    }
}
