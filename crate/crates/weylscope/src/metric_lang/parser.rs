use super::ast::{BinOp, Expr, Func, CONSTANTS};
use super::error::LangError;
use super::lexer::{tokenize, Spanned, Tok};

/// One `gIJ = expr` statement, indices 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub i: usize,
    pub j: usize,
    pub expr: Expr,
    pub line: usize,
}

/// Raw statements of a definition file, before symmetrization.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Program {
    pub assignments: Vec<Assignment>,
    pub domain: Option<([f64; 4], [f64; 4])>,
    pub orientation: Option<i32>,
}

pub fn parse_program(src: &str) -> Result<Program, LangError> {
    let tokens = tokenize(src)?;
    Parser { tokens, pos: 0 }.program()
}

/// Parses a standalone expression.
pub fn parse_expr(src: &str) -> Result<Expr, LangError> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    p.expect_end_of_statement()?;
    match p.peek().tok {
        Tok::Eof => Ok(e),
        _ => Err(p.unexpected(&["end of input"])),
    }
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if !matches!(t.tok, Tok::Eof) {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> LangError {
        let t = self.peek();
        LangError::Syntax {
            line: t.line,
            column: t.column,
            found: t.tok.describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Spanned, LangError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&[&tok.describe()]))
        }
    }

    fn expect_end_of_statement(&mut self) -> Result<(), LangError> {
        match self.peek().tok {
            Tok::Newline | Tok::Semicolon | Tok::Eof => Ok(()),
            _ => Err(self.unexpected(&["an operator", "end of line", "`;`"])),
        }
    }

    fn program(mut self) -> Result<Program, LangError> {
        let mut prog = Program::default();
        let mut domain_line = None;
        let mut orientation_line = None;
        loop {
            while matches!(self.peek().tok, Tok::Newline | Tok::Semicolon) {
                self.bump();
            }
            let head = self.peek().clone();
            let name = match &head.tok {
                Tok::Eof => break,
                Tok::Ident(s) => s.clone(),
                _ => return Err(self.unexpected(&["an assignment target"])),
            };
            self.bump();
            self.expect(Tok::Equals)?;
            match name.as_str() {
                "domain" => {
                    if domain_line.is_some() {
                        return Err(LangError::Duplicate { symbol: name, line: head.line });
                    }
                    prog.domain = Some(self.domain(head.line)?);
                    domain_line = Some(head.line);
                }
                "orientation" => {
                    if orientation_line.is_some() {
                        return Err(LangError::Duplicate { symbol: name, line: head.line });
                    }
                    prog.orientation = Some(self.orientation()?);
                    orientation_line = Some(head.line);
                }
                _ => {
                    let (i, j) = component_indices(&name).ok_or_else(|| LangError::UndefinedSymbol {
                        symbol: name.clone(),
                        line: head.line,
                        column: head.column,
                        detail: "assignment targets are g11..g44, domain and orientation",
                    })?;
                    if prog.assignments.iter().any(|a| a.i == i && a.j == j) {
                        return Err(LangError::Duplicate { symbol: name, line: head.line });
                    }
                    let expr = self.expr()?;
                    prog.assignments.push(Assignment { i, j, expr, line: head.line });
                }
            }
            self.expect_end_of_statement()?;
        }
        Ok(prog)
    }

    fn domain(&mut self, line: usize) -> Result<([f64; 4], [f64; 4]), LangError> {
        let mut lower = [0.0; 4];
        let mut upper = [0.0; 4];
        for axis in 0..4 {
            if axis > 0 {
                match &self.peek().tok {
                    Tok::Ident(s) if s == "x" => {
                        self.bump();
                    }
                    _ => return Err(self.unexpected(&["`x`"])),
                }
            }
            self.expect(Tok::LBracket)?;
            lower[axis] = self.constant_expr()?;
            self.expect(Tok::Comma)?;
            upper[axis] = self.constant_expr()?;
            self.expect(Tok::RBracket)?;
            if !(lower[axis].is_finite() && upper[axis].is_finite() && lower[axis] < upper[axis]) {
                return Err(LangError::InvalidDomain {
                    line,
                    detail: format!("axis {} has bounds [{}, {}]", axis + 1, lower[axis], upper[axis]),
                });
            }
        }
        Ok((lower, upper))
    }

    fn constant_expr(&mut self) -> Result<f64, LangError> {
        let start = self.peek().clone();
        let e = self.expr()?;
        if !e.is_constant() {
            return Err(LangError::UndefinedSymbol {
                symbol: e.to_string(),
                line: start.line,
                column: start.column,
                detail: "domain bounds must not depend on coordinates",
            });
        }
        Ok(e.eval::<f64>(&[0.0; 4]))
    }

    fn orientation(&mut self) -> Result<i32, LangError> {
        let negative = match self.peek().tok {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        match self.peek().tok {
            Tok::Number(1.0) => {
                self.bump();
                Ok(if negative { -1 } else { 1 })
            }
            _ => Err(self.unexpected(&["`+1`", "`-1`"])),
        }
    }

    pub(crate) fn expr(&mut self) -> Result<Expr, LangError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, LangError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, LangError> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, LangError> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let exp = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, LangError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Number(v) => {
                self.bump();
                Ok(Expr::Num(*v))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(i) = coordinate_index(name) {
                    return Ok(Expr::Var(i));
                }
                if let Some((c, _)) = CONSTANTS.iter().find(|(c, _)| c == name) {
                    return Ok(Expr::Const(c));
                }
                if let Some(f) = Func::from_name(name) {
                    self.expect(Tok::LParen)?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Expr::Call(f, Box::new(arg)));
                }
                Err(LangError::UndefinedSymbol {
                    symbol: name.clone(),
                    line: t.line,
                    column: t.column,
                    detail: "known symbols are x1..x4, pi, e and the functions sin cos tan exp log sqrt sinh cosh tanh",
                })
            }
            _ => Err(self.unexpected(&["a number", "a symbol", "`(`", "`-`"])),
        }
    }
}

fn coordinate_index(name: &str) -> Option<usize> {
    match name {
        "x1" => Some(0),
        "x2" => Some(1),
        "x3" => Some(2),
        "x4" => Some(3),
        _ => None,
    }
}

fn component_indices(name: &str) -> Option<(usize, usize)> {
    let b = name.as_bytes();
    if b.len() != 3 || b[0] != b'g' {
        return None;
    }
    let digit = |c: u8| (b'1'..=b'4').contains(&c).then(|| usize::from(c - b'1'));
    Some((digit(b[1])?, digit(b[2])?))
}
