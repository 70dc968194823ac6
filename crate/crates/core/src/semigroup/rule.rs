//! Closed-form eigenvalue rules: rational expressions in the index `k` and
//! the imaginary unit `i`, e.g. `-1/k + i*k`, `ik`, `(k-1)/(k+1)`.

use crate::error::{LabError, Result};
use num_complex::Complex64;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Num(f64),
    K,
    I,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

impl Expr {
    fn eval(&self, k: f64) -> Complex64 {
        match self {
            Expr::Num(x) => Complex64::new(*x, 0.0),
            Expr::K => Complex64::new(k, 0.0),
            Expr::I => Complex64::new(0.0, 1.0),
            Expr::Neg(a) => -a.eval(k),
            Expr::Add(a, b) => a.eval(k) + b.eval(k),
            Expr::Sub(a, b) => a.eval(k) - b.eval(k),
            Expr::Mul(a, b) => a.eval(k) * b.eval(k),
            Expr::Div(a, b) => a.eval(k) / b.eval(k),
            Expr::Pow(a, n) => a.eval(k).powi(*n),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    K,
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let bad = |msg: String| LabError::InvalidParameter(format!("eigenvalue rule '{s}': {msg}"));
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            'k' => out.push(Token::K),
            'i' => out.push(Token::I),
            '+' => out.push(Token::Plus),
            '-' => out.push(Token::Minus),
            '*' => out.push(Token::Star),
            '/' => out.push(Token::Slash),
            '^' => out.push(Token::Caret),
            '(' => out.push(Token::Open),
            ')' => out.push(Token::Close),
            d if d.is_ascii_digit() || d == '.' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_digit() || chars[i + 1] == '.') {
                    i += 1;
                }
                if i + 1 < chars.len() && (chars[i + 1] == 'e' || chars[i + 1] == 'E') {
                    let mut j = i + 2;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        while j < chars.len() && chars[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j - 1;
                    }
                }
                let text: String = chars[start..=i].iter().collect();
                let x: f64 = text.parse().map_err(|_| bad(format!("bad number '{text}'")))?;
                out.push(Token::Num(x));
            }
            other => return Err(bad(format!("unexpected character '{other}'"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    source: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> LabError {
        LabError::InvalidParameter(format!("eigenvalue rule '{}': {msg} at token {}", self.source, self.pos))
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                // juxtaposition such as `2k`, `ik` or `3(k+1)`
                Some(Token::Num(_)) | Some(Token::K) | Some(Token::I) | Some(Token::Open) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let neg = if self.peek() == Some(&Token::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.next() {
                Some(Token::Num(x)) if x.fract() == 0.0 && x.abs() <= 64.0 => {
                    let n = if neg { -(x as i32) } else { x as i32 };
                    return Ok(Expr::Pow(Box::new(base), n));
                }
                _ => return Err(self.err("exponent must be an integer literal of magnitude <= 64")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Token::Num(x)) => Ok(Expr::Num(x)),
            Some(Token::K) => Ok(Expr::K),
            Some(Token::I) => Ok(Expr::I),
            Some(Token::Open) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(e),
                    _ => Err(self.err("missing ')'")),
                }
            }
            _ => Err(self.err("expected a number, k, i or '('")),
        }
    }
}

/// A parsed eigenvalue rule `k ↦ λ_k`.
#[derive(Clone, PartialEq)]
pub struct LambdaRule {
    source: String,
    expr: Expr,
}

impl fmt::Debug for LambdaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LambdaRule({:?})", self.source)
    }
}

impl LambdaRule {
    pub fn parse(source: &str) -> Result<Self> {
        let tokens = tokenize(source)?;
        if tokens.is_empty() {
            return Err(LabError::InvalidParameter("empty eigenvalue rule".into()));
        }
        let mut p = Parser { tokens: &tokens, pos: 0, source };
        let expr = p.expr()?;
        if p.pos != tokens.len() {
            return Err(p.err("trailing input"));
        }
        Ok(LambdaRule { source: source.to_string(), expr })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn eval(&self, k: usize) -> Complex64 {
        self.expr.eval(k as f64)
    }

    /// `λ_1, …, λ_n`; non-finite values are rejected.
    pub fn sequence(&self, n: usize) -> Result<Vec<Complex64>> {
        (1..=n)
            .map(|k| {
                let v = self.eval(k);
                if v.re.is_finite() && v.im.is_finite() {
                    Ok(v)
                } else {
                    Err(LabError::InvalidParameter(format!("rule '{}' is not finite at k={k}", self.source)))
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn shipped_rules() {
        let r = LambdaRule::parse("-1/k + i*k").unwrap();
        assert_eq!(r.eval(4), c(-0.25, 4.0));
        assert_eq!(LambdaRule::parse("ik").unwrap().eval(3), c(0.0, 3.0));
        assert_eq!(LambdaRule::parse("i k").unwrap().eval(3), c(0.0, 3.0));
        assert_eq!(LambdaRule::parse("-1/k^2 + 2ik").unwrap().eval(2), c(-0.25, 4.0));
        assert_eq!(LambdaRule::parse("(k-1)/(k+1)").unwrap().eval(3), c(0.5, 0.0));
        assert_eq!(LambdaRule::parse("-2^2").unwrap().eval(1), c(-4.0, 0.0));
        assert_eq!(LambdaRule::parse("1.5e-1 * k").unwrap().eval(2), c(0.3, 0.0));
        assert_eq!(LambdaRule::parse("k^-1").unwrap().eval(4), c(0.25, 0.0));
    }

    #[test]
    fn rejects_outside_grammar() {
        for bad in ["", "sin(k)", "k +", "(k", "k^k", "k^0.5", "exp(1)", "j"] {
            assert!(LambdaRule::parse(bad).is_err(), "{bad}");
        }
        assert!(LambdaRule::parse("1/(k-1)").unwrap().sequence(3).is_err());
    }
}
