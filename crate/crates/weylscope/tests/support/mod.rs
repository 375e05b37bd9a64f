//! Test-only reference implementations shared by integration targets.

#![allow(dead_code)]

pub mod shunting_yard;

use rand::Rng;

const FUNCTIONS: [&str; 9] = ["sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh", "tanh"];

/// Random expression source text in the metric language, using unparenthesized
/// operator chains so that precedence and associativity matter.
pub fn random_expression<R: Rng>(rng: &mut R, depth: u32) -> String {
    let mut s = String::new();
    let operands = rng.random_range(1..=if depth == 0 { 2 } else { 4 });
    for k in 0..operands {
        if k > 0 {
            let op = ["+", "-", "*", "/", "^"][rng.random_range(0..5)];
            push_spaced(rng, &mut s, op);
        }
        let signs = if rng.random_bool(0.3) { rng.random_range(1..=2) } else { 0 };
        for _ in 0..signs {
            s.push(if rng.random_bool(0.8) { '-' } else { '+' });
        }
        s.push_str(&random_operand(rng, depth));
    }
    s
}

fn push_spaced<R: Rng>(rng: &mut R, s: &mut String, tok: &str) {
    if rng.random_bool(0.5) {
        s.push(' ');
    }
    s.push_str(tok);
    if rng.random_bool(0.5) {
        s.push(' ');
    }
}

fn random_operand<R: Rng>(rng: &mut R, depth: u32) -> String {
    let pick = if depth == 0 { rng.random_range(0..3) } else { rng.random_range(0..6) };
    match pick {
        0 => random_number(rng),
        1 => format!("x{}", rng.random_range(1..=4)),
        2 if rng.random_bool(0.3) => ["pi", "e"][rng.random_range(0..2)].to_string(),
        2 => format!("x{}", rng.random_range(1..=4)),
        3 | 4 => format!("({})", random_expression(rng, depth - 1)),
        _ => format!("{}({})", FUNCTIONS[rng.random_range(0..FUNCTIONS.len())], random_expression(rng, depth - 1)),
    }
}

fn random_number<R: Rng>(rng: &mut R) -> String {
    match rng.random_range(0..4) {
        0 => rng.random_range(0..10).to_string(),
        1 => format!("{:.3}", rng.random_range(0.0..5.0)),
        2 => format!(".{}", rng.random_range(1..100)),
        _ => format!("{}e-{}", rng.random_range(1..9), rng.random_range(0..3)),
    }
}

/// Equality up to `tol` relative to magnitude, treating matching
/// non-finite values as equal.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    if a.is_nan() || b.is_nan() {
        return a.is_nan() && b.is_nan();
    }
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}
