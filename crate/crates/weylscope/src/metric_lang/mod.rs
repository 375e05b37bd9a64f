//! The metric-definition language.
//!
//! A definition is a sequence of statements separated by newlines or `;`:
//!
//! ```text
//! # round sphere, stereographic chart
//! domain = [-1,1]x[-1,1]x[-1,1]x[-1,1]
//! orientation = +1
//! g11 = 4/(1 + x1^2 + x2^2 + x3^2 + x4^2)^2
//! ```
//!
//! Expressions use `+ - * / ^`, parentheses, the coordinates `x1..x4`, the
//! constants `pi` and `e`, and the functions `sin cos tan exp log sqrt sinh
//! cosh tanh`. Missing off-diagonal entries are zero; every diagonal entry is
//! required. When both `gij` and `gji` are given they must agree.

mod ast;
mod error;
mod lexer;
mod parser;

use std::fmt::Write as _;
use std::sync::Arc;

use weylscope_core::scalar::Scalar;
use weylscope_core::tensor::{Analytic, ChartDomain, MetricPatch, Orientation, ScalarMetric};

pub use ast::{BinOp, Expr, Func};
pub use error::LangError;
pub use parser::{parse_expr, parse_program, Assignment, Program};

/// Domain used when a definition has no `domain` line.
pub const DEFAULT_DOMAIN: ([f64; 4], [f64; 4]) = ([0.0; 4], [1.0; 4]);

/// Sample points used to compare `gij` with `gji`.
const SYMMETRY_SAMPLES: usize = 16;

/// A parsed, validated metric definition.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricDefinition {
    /// Symmetric component table; absent off-diagonal entries are `0`.
    pub components: [[Expr; 4]; 4],
    pub lower: [f64; 4],
    pub upper: [f64; 4],
    pub domain_given: bool,
    pub orientation: Option<Orientation>,
}

pub fn parse_metric(src: &str) -> Result<MetricDefinition, LangError> {
    MetricDefinition::from_program(parse_program(src)?, src)
}

impl MetricDefinition {
    fn from_program(prog: Program, src: &str) -> Result<Self, LangError> {
        let (lower, upper) = prog.domain.unwrap_or(DEFAULT_DOMAIN);
        let mut slots: [[Option<&Assignment>; 4]; 4] = Default::default();
        for a in &prog.assignments {
            slots[a.i][a.j] = Some(a);
        }
        for i in 0..4 {
            if slots[i][i].is_none() {
                let lines = src.lines().count().max(1);
                let column = src.lines().last().map_or(0, |l| l.chars().count()) + 1;
                return Err(LangError::UndefinedSymbol {
                    symbol: format!("g{0}{0}", i + 1),
                    line: lines,
                    column,
                    detail: "every diagonal component must be assigned",
                });
            }
        }
        let domain = ChartDomain::new("definition", lower, upper)
            .map_err(|e| LangError::InvalidDomain { line: 1, detail: e.to_string() })?;
        let samples = domain.halton_points(SYMMETRY_SAMPLES);
        let mut components: [[Expr; 4]; 4] = Default::default();
        for i in 0..4 {
            for j in i..4 {
                let e = match (slots[i][j], slots[j][i]) {
                    (Some(a), Some(b)) if i != j => {
                        let agree = a.expr == b.expr
                            || samples.iter().all(|p| {
                                let (u, v) = (a.expr.eval(&p.0), b.expr.eval(&p.0));
                                (u - v).abs() <= 1e-12 * (1.0 + u.abs().max(v.abs())) || (u.is_nan() && v.is_nan())
                            });
                        if !agree {
                            return Err(LangError::NonSymmetric { i: i + 1, j: j + 1, line: a.line.max(b.line) });
                        }
                        a.expr.clone()
                    }
                    (Some(a), _) | (None, Some(a)) => a.expr.clone(),
                    (None, None) => Expr::Num(0.0),
                };
                components[j][i] = e.clone();
                components[i][j] = e;
            }
        }
        Ok(Self {
            components,
            lower,
            upper,
            domain_given: prog.domain.is_some(),
            orientation: prog.orientation.and_then(Orientation::from_sign),
        })
    }

    pub fn domain(&self, name: &str) -> ChartDomain {
        ChartDomain::new(name, self.lower, self.upper).expect("validated at parse time")
    }

    /// Canonical source text; parsing it yields an equivalent definition.
    pub fn to_source(&self) -> String {
        let mut out = String::new();
        let axes: Vec<String> = (0..4).map(|i| format!("[{}, {}]", self.lower[i], self.upper[i])).collect();
        let _ = writeln!(out, "domain = {}", axes.join("x"));
        if let Some(o) = self.orientation {
            let _ = writeln!(out, "orientation = {}", if o.sign() > 0.0 { "+1" } else { "-1" });
        }
        for i in 0..4 {
            for j in i..4 {
                let e = &self.components[i][j];
                if i == j || !e.is_zero() {
                    let _ = writeln!(out, "g{}{} = {}", i + 1, j + 1, e);
                }
            }
        }
        out
    }

    pub fn metric(&self) -> ExprMetric {
        ExprMetric(Arc::new(self.components.clone()))
    }

    /// A patch evaluating this definition, with exact metric derivatives.
    pub fn to_patch(&self, name: &str) -> MetricPatch {
        MetricPatch::new(name, self.domain(name), Analytic(self.metric()))
            .with_orientation(self.orientation.unwrap_or(Orientation::Positive))
    }
}

/// Expression-table metric, generic over the scalar type.
#[derive(Debug, Clone)]
pub struct ExprMetric(Arc<[[Expr; 4]; 4]>);

impl ScalarMetric for ExprMetric {
    fn components<S: Scalar>(&self, x: &[S; 4]) -> [[S; 4]; 4] {
        let mut g = [[S::from_f64(0.0); 4]; 4];
        for i in 0..4 {
            for j in i..4 {
                let v = self.0[i][j].eval(x);
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        g
    }
}

impl Default for Expr {
    fn default() -> Self {
        Expr::Num(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_definition() {
        let d = parse_metric("g11 = 1; g22 = 1; g33 = 1; g44 = 1").unwrap();
        assert!(!d.domain_given);
        assert_eq!((d.lower, d.upper), DEFAULT_DOMAIN);
        let g = d.metric().components(&[0.3f64, 0.1, 0.2, 0.9]);
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn missing_diagonal_is_reported() {
        match parse_metric("g11 = 1; g22 = sin(x1)^2").unwrap_err() {
            LangError::UndefinedSymbol { symbol, .. } => assert_eq!(symbol, "g33"),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn transposed_entries() {
        let d = parse_metric("g11 = 2; g22 = 2; g33 = 1; g44 = 1; g21 = x1").unwrap();
        assert_eq!(d.components[0][1], Expr::Var(0));
        assert!(parse_metric("g11 = 2; g22 = 2; g33 = 1; g44 = 1; g12 = x1*2; g21 = 2*x1").is_ok());
        assert!(matches!(
            parse_metric("g11 = 2; g22 = 2; g33 = 1; g44 = 1; g12 = x1\ng21 = x2"),
            Err(LangError::NonSymmetric { i: 1, j: 2, line: 2 })
        ));
    }

    #[test]
    fn source_round_trip() {
        let src = "domain = [-1,1]x[0,pi]x[0,1]x[0,1]\norientation = -1\ng11 = 1/(1+x1^2); g22 = exp(-x2); g33 = 1; g44 = 1; g34 = 0.1*x1";
        let d = parse_metric(src).unwrap();
        let again = parse_metric(&d.to_source()).unwrap();
        assert_eq!(d, again);
    }
}
