//! Scalar abstraction used by closed-form metric evaluators.
//!
//! Catalog metrics and parsed metric expressions are written once against
//! [`Scalar`] and evaluated either on plain `f64` or on forward-mode [`Dual`]
//! numbers, which yields exact first derivatives of the metric components.

use core::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Float;

pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
    fn value(self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn tan(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn tanh(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn powf(self, e: Self) -> Self;

    fn square(self) -> Self {
        self * self
    }
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn value(self) -> f64 {
        self
    }
    fn sin(self) -> Self {
        Float::sin(self)
    }
    fn cos(self) -> Self {
        Float::cos(self)
    }
    fn tan(self) -> Self {
        Float::tan(self)
    }
    fn exp(self) -> Self {
        Float::exp(self)
    }
    fn ln(self) -> Self {
        Float::ln(self)
    }
    fn sqrt(self) -> Self {
        Float::sqrt(self)
    }
    fn sinh(self) -> Self {
        Float::sinh(self)
    }
    fn cosh(self) -> Self {
        Float::cosh(self)
    }
    fn tanh(self) -> Self {
        Float::tanh(self)
    }
    fn powi(self, n: i32) -> Self {
        Float::powi(self, n)
    }
    fn powf(self, e: Self) -> Self {
        Float::powf(self, e)
    }
}

/// Forward-mode dual number `re + du·ε` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub re: f64,
    pub du: f64,
}

impl Dual {
    pub const fn new(re: f64, du: f64) -> Self {
        Self { re, du }
    }

    pub const fn constant(re: f64) -> Self {
        Self { re, du: 0.0 }
    }

    #[inline]
    fn chain(self, f: f64, df: f64) -> Self {
        Self::new(f, df * self.du)
    }
}

impl Add for Dual {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.du + o.du)
    }
}

impl Sub for Dual {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.du - o.du)
    }
}

impl Mul for Dual {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re, self.du * o.re + self.re * o.du)
    }
}

impl Div for Dual {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let inv = 1.0 / o.re;
        Self::new(self.re * inv, (self.du * o.re - self.re * o.du) * inv * inv)
    }
}

impl Neg for Dual {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.du)
    }
}

impl Scalar for Dual {
    fn from_f64(v: f64) -> Self {
        Self::constant(v)
    }
    fn value(self) -> f64 {
        self.re
    }
    fn sin(self) -> Self {
        self.chain(Float::sin(self.re), Float::cos(self.re))
    }
    fn cos(self) -> Self {
        self.chain(Float::cos(self.re), -Float::sin(self.re))
    }
    fn tan(self) -> Self {
        let t = Float::tan(self.re);
        self.chain(t, 1.0 + t * t)
    }
    fn exp(self) -> Self {
        let e = Float::exp(self.re);
        self.chain(e, e)
    }
    fn ln(self) -> Self {
        self.chain(Float::ln(self.re), 1.0 / self.re)
    }
    fn sqrt(self) -> Self {
        let s = Float::sqrt(self.re);
        self.chain(s, 0.5 / s)
    }
    fn sinh(self) -> Self {
        self.chain(Float::sinh(self.re), Float::cosh(self.re))
    }
    fn cosh(self) -> Self {
        self.chain(Float::cosh(self.re), Float::sinh(self.re))
    }
    fn tanh(self) -> Self {
        let t = Float::tanh(self.re);
        self.chain(t, 1.0 - t * t)
    }
    fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::constant(1.0);
        }
        let prev = Float::powi(self.re, n - 1);
        self.chain(prev * self.re, f64::from(n) * prev)
    }
    fn powf(self, e: Self) -> Self {
        let v = Float::powf(self.re, e.re);
        if e.du == 0.0 {
            // constant exponent: valid for negative bases with integral exponents
            let d = if e.re == 0.0 { 0.0 } else { e.re * Float::powf(self.re, e.re - 1.0) };
            Self::new(v, d * self.du)
        } else {
            Self::new(v, v * (e.du * Float::ln(self.re) + e.re * self.du / self.re))
        }
    }
}
