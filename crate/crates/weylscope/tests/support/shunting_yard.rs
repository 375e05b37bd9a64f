//! Stand-alone evaluator for metric-language expressions.
//!
//! Tokenizes and evaluates directly with Dijkstra's shunting-yard algorithm,
//! sharing no code with the crate's parser. Binding strength from loose to
//! tight: `+ -`, `* /`, prefix sign, `^` (right associative, exponent may
//! carry a prefix sign). An integral constant exponent up to 64 in magnitude
//! is applied by repeated multiplication.

#[derive(Debug, Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Neg,
    Plus,
    Open,
    Call(fn(f64) -> f64),
}

impl Op {
    fn precedence(self) -> u8 {
        match self {
            Op::Add | Op::Sub => 1,
            Op::Mul | Op::Div => 2,
            Op::Neg | Op::Plus => 3,
            Op::Pow => 4,
            Op::Open | Op::Call(_) => 0,
        }
    }

    fn right_assoc(self) -> bool {
        matches!(self, Op::Pow)
    }
}

/// A value plus whether it depends on the coordinates.
#[derive(Debug, Clone, Copy)]
struct Val {
    v: f64,
    constant: bool,
}

fn function(name: &str) -> Option<fn(f64) -> f64> {
    Some(match name {
        "sin" => f64::sin,
        "cos" => f64::cos,
        "tan" => f64::tan,
        "exp" => f64::exp,
        "log" => f64::ln,
        "sqrt" => f64::sqrt,
        "sinh" => f64::sinh,
        "cosh" => f64::cosh,
        "tanh" => f64::tanh,
        _ => return None,
    })
}

fn apply(op: Op, out: &mut Vec<Val>) -> Result<(), String> {
    let pop = |out: &mut Vec<Val>| out.pop().ok_or_else(|| "missing operand".to_string());
    let r = match op {
        Op::Neg => {
            let a = pop(out)?;
            Val { v: -a.v, constant: a.constant }
        }
        Op::Plus => pop(out)?,
        Op::Call(f) => {
            let a = pop(out)?;
            Val { v: f(a.v), constant: a.constant }
        }
        Op::Open => return Err("unbalanced parenthesis".into()),
        _ => {
            let b = pop(out)?;
            let a = pop(out)?;
            let v = match op {
                Op::Add => a.v + b.v,
                Op::Sub => a.v - b.v,
                Op::Mul => a.v * b.v,
                Op::Div => a.v / b.v,
                _ if b.constant && b.v.fract() == 0.0 && b.v.abs() <= 64.0 => a.v.powi(b.v as i32),
                _ => a.v.powf(b.v),
            };
            Val { v, constant: a.constant && b.constant }
        }
    };
    out.push(r);
    Ok(())
}

/// Evaluates `src` at the coordinates `x`.
pub fn evaluate(src: &str, x: [f64; 4]) -> Result<f64, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut out: Vec<Val> = Vec::new();
    let mut ops: Vec<Op> = Vec::new();
    // True when the next token starts an operand, so a sign is a prefix sign.
    let mut want_operand = true;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i + 1 < chars.len() && matches!(chars[i], 'e' | 'E') {
                let mut j = i + 1;
                if matches!(chars[j], '+' | '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v = text.parse::<f64>().map_err(|e| format!("{text}: {e}"))?;
            out.push(Val { v, constant: true });
            want_operand = false;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            match name.as_str() {
                "x1" | "x2" | "x3" | "x4" => {
                    let k = name[1..].parse::<usize>().unwrap() - 1;
                    out.push(Val { v: x[k], constant: false });
                    want_operand = false;
                }
                "pi" => {
                    out.push(Val { v: std::f64::consts::PI, constant: true });
                    want_operand = false;
                }
                "e" => {
                    out.push(Val { v: std::f64::consts::E, constant: true });
                    want_operand = false;
                }
                _ => {
                    let f = function(&name).ok_or_else(|| format!("unknown name {name}"))?;
                    while i < chars.len() && chars[i].is_whitespace() {
                        i += 1;
                    }
                    if chars.get(i) != Some(&'(') {
                        return Err(format!("{name} needs an argument"));
                    }
                    i += 1;
                    ops.push(Op::Call(f));
                    want_operand = true;
                }
            }
            continue;
        }
        i += 1;
        match c {
            '(' => {
                ops.push(Op::Open);
                want_operand = true;
            }
            ')' => {
                loop {
                    match ops.pop() {
                        None => return Err("unbalanced parenthesis".into()),
                        Some(Op::Open) => break,
                        Some(f @ Op::Call(_)) => {
                            apply(f, &mut out)?;
                            break;
                        }
                        Some(op) => apply(op, &mut out)?,
                    }
                }
                want_operand = false;
            }
            '+' | '-' if want_operand => ops.push(if c == '-' { Op::Neg } else { Op::Plus }),
            '+' | '-' | '*' | '/' | '^' => {
                let op = match c {
                    '+' => Op::Add,
                    '-' => Op::Sub,
                    '*' => Op::Mul,
                    '/' => Op::Div,
                    _ => Op::Pow,
                };
                while let Some(&top) = ops.last() {
                    let p = top.precedence();
                    if p > op.precedence() || (p == op.precedence() && !op.right_assoc() && p > 0) {
                        apply(top, &mut out)?;
                        ops.pop();
                    } else {
                        break;
                    }
                }
                ops.push(op);
                want_operand = true;
            }
            _ => return Err(format!("unexpected character {c:?}")),
        }
    }
    while let Some(op) = ops.pop() {
        apply(op, &mut out)?;
    }
    match out.as_slice() {
        [v] => Ok(v.v),
        _ => Err("malformed expression".into()),
    }
}
