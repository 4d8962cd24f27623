use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::ast::{Assertion, BinOp, Builtin, Expected, Expr, ExprKind, Span};
use super::lexer::{tokenize, Tok, Token};
use super::SyntaxError;
use crate::lambert::LambertSpec;
use crate::monomial::{Sign, SignedMonomial};

pub fn parse(src: &str) -> Result<Vec<Assertion>, SyntaxError> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0 };
    let mut out = Vec::new();
    while p.peek() != &Tok::Eof {
        out.push(p.statement()?);
    }
    Ok(out)
}

/// Parses a single expression (no trailing input allowed).
pub fn parse_expr(src: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0 };
    let e = p.expr()?;
    p.expect(Tok::Eof)?;
    Ok(e)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

/// `(a2 n² + b2 n + c2) / 2`
#[derive(Default)]
struct HalfPoly {
    a2: i64,
    b2: i64,
    c2: i64,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, SyntaxError> {
        Err(SyntaxError::new(self.span(), expected.iter().map(|s| s.to_string()).collect(), &self.peek().to_string()))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.error(&[&tok.to_string()])
        }
    }

    fn is_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == name)
    }

    fn expect_ident(&mut self, name: &str) -> Result<(), SyntaxError> {
        if self.is_ident(name) {
            self.next();
            Ok(())
        } else {
            self.error(&[&format!("`{name}`")])
        }
    }

    fn statement(&mut self) -> Result<Assertion, SyntaxError> {
        let line = self.span().line;
        self.expect_ident("assert")?;
        let lhs = self.expr()?;
        self.expect(Tok::EqEq)?;
        let rhs = self.expr()?;
        self.expect_ident("to")?;
        let order = self.uint()?;
        let expected = if self.is_ident("known") {
            self.next();
            match self.next().tok {
                Tok::Str(s) => Expected::KnownDiscrepancy(s),
                _ => {
                    self.pos -= 1;
                    return self.error(&["a quoted note"]);
                }
            }
        } else {
            Expected::Pass
        };
        if self.peek() != &Tok::Semi {
            return if matches!(expected, Expected::Pass) { self.error(&["`known`", "`;`"]) } else { self.error(&["`;`"]) };
        }
        self.next();
        Ok(Assertion { lhs, rhs, order, expected, line })
    }

    fn uint(&mut self) -> Result<u64, SyntaxError> {
        match self.peek().clone() {
            Tok::Int(n) => match n.to_u64() {
                Some(v) => {
                    self.next();
                    Ok(v)
                }
                None => self.error(&["a small nonnegative integer"]),
            },
            _ => self.error(&["integer"]),
        }
    }

    fn int(&mut self) -> Result<i64, SyntaxError> {
        let neg = self.eat(&Tok::Minus);
        let v = self.uint()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let span = self.next().span;
            let rhs = self.term()?;
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            let span = self.next().span;
            let rhs = self.unary()?;
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if self.peek() == &Tok::Minus {
            let span = self.next().span;
            let e = self.unary()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(e)), span));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.atom()?;
        if self.peek() != &Tok::Caret {
            return Ok(base);
        }
        let span = self.next().span;
        let e = self.exponent()?;
        Ok(Expr::new(ExprKind::Pow(Box::new(base), e), span))
    }

    /// `-?INT` or `(-?INT)` after a caret.
    fn exponent(&mut self) -> Result<i64, SyntaxError> {
        match self.peek() {
            Tok::LParen => {
                self.next();
                let v = self.int()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Tok::Minus | Tok::Int(_) => self.int(),
            _ => self.error(&["integer exponent"]),
        }
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                Ok(Expr::new(ExprKind::Int(n), span))
            }
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) if name == "q" => {
                self.next();
                Ok(Expr::new(ExprKind::Q, span))
            }
            Tok::Ident(name) if name == "L" && self.peek_at(1) == &Tok::LBracket => {
                self.next();
                let spec = self.lambert()?;
                Ok(Expr::new(ExprKind::Call(Builtin::Lambert(spec)), span))
            }
            Tok::Ident(name) if self.peek_at(1) == &Tok::LParen => {
                self.next();
                self.next();
                let b = self.builtin(&name)?;
                self.expect(Tok::RParen)?;
                Ok(Expr::new(ExprKind::Call(b), span))
            }
            _ => self.error(&["integer", "`q`", "`(`", "builtin call", "`L[`"]),
        }
    }

    /// `-q^3`, `q`, `q^-2`, `-1`, `1`.
    fn monomial(&mut self) -> Result<SignedMonomial, SyntaxError> {
        let sign = if self.eat(&Tok::Minus) { Sign::Minus } else { Sign::Plus };
        match self.peek() {
            Tok::Ident(s) if s == "q" => {
                self.next();
                let e = if self.eat(&Tok::Caret) { self.exponent()? } else { 1 };
                Ok(SignedMonomial::new(sign, e))
            }
            Tok::Int(n) if n.is_one() => {
                self.next();
                Ok(SignedMonomial::new(sign, 0))
            }
            _ => self.error(&["monomial such as `-q^3` or `1`"]),
        }
    }

    fn comma(&mut self) -> Result<(), SyntaxError> {
        self.expect(Tok::Comma)
    }

    fn semi(&mut self) -> Result<(), SyntaxError> {
        self.expect(Tok::Semi)
    }

    fn pos_int(&mut self) -> Result<u64, SyntaxError> {
        let v = self.uint()?;
        if v == 0 {
            self.pos -= 1;
            return self.error(&["positive integer"]);
        }
        Ok(v)
    }

    fn small(&mut self, max: u64) -> Result<u32, SyntaxError> {
        let v = self.uint()?;
        if v > max {
            self.pos -= 1;
            return self.error(&[&format!("integer in 0..={max}")]);
        }
        Ok(v as u32)
    }

    fn builtin(&mut self, name: &str) -> Result<Builtin, SyntaxError> {
        Ok(match name {
            "J" => {
                let a = self.int()?;
                self.comma()?;
                Builtin::J(a, self.pos_int()?)
            }
            "Jm" => Builtin::Jm(self.pos_int()?),
            "jtheta" | "br" | "poch" => {
                let a = self.monomial()?;
                self.comma()?;
                let m = self.pos_int()?;
                match name {
                    "jtheta" => Builtin::Theta(a, m),
                    "br" => Builtin::Bracket(a, m),
                    _ => Builtin::Poch(a, m),
                }
            }
            "fpoch" => {
                let a = self.monomial()?;
                self.comma()?;
                let step = self.pos_int()?;
                self.comma()?;
                Builtin::FinitePoch(a, step, self.uint()?)
            }
            "P" => {
                let a = self.monomial()?;
                self.comma()?;
                let b = self.monomial()?;
                self.comma()?;
                let c = self.monomial()?;
                self.semi()?;
                Builtin::P([a, b, c], self.pos_int()?)
            }
            "S" => {
                let a = self.monomial()?;
                self.semi()?;
                let n = self.int()?;
                if n == 0 {
                    self.pos -= 1;
                    return self.error(&["nonzero integer"]);
                }
                Builtin::S(a, n)
            }
            "AL" => {
                let x = self.monomial()?;
                self.semi()?;
                let b = self.pos_int()?;
                self.semi()?;
                Builtin::AppellLerch(x, b, self.monomial()?)
            }
            "g2" => {
                let x = self.monomial()?;
                self.semi()?;
                Builtin::G2(x, self.pos_int()?)
            }
            "omega" => Builtin::Omega,
            "rho" => Builtin::Rho,
            "OPGF" => Builtin::Opgf,
            "RBAR" => Builtin::Rbar(self.small(3)?),
            "RGF" => Builtin::Rgf(self.small(3)?),
            "RDISS" => {
                let s = self.small(3)?;
                self.comma()?;
                Builtin::Rdiss(s, self.small(2)?)
            }
            _ => {
                self.pos -= 2;
                return self.error(&["builtin name"]);
            }
        })
    }

    /// `L[ (-1)^n q^(poly) / (1 ± q^(linear))^p, n != k, ... ]`
    fn lambert(&mut self) -> Result<LambertSpec, SyntaxError> {
        self.expect(Tok::LBracket)?;
        let mut alternating = false;
        if self.peek() == &Tok::LParen && self.peek_at(1) == &Tok::Minus {
            self.next();
            self.next();
            match self.peek() {
                Tok::Int(n) if n.is_one() => {
                    self.next();
                }
                _ => return self.error(&["`1`"]),
            }
            self.expect(Tok::RParen)?;
            self.expect(Tok::Caret)?;
            self.expect_ident("n")?;
            alternating = true;
        }
        let num = if self.is_ident("q") {
            self.next();
            self.expect(Tok::Caret)?;
            self.poly_exponent()?
        } else if !alternating {
            match self.peek() {
                Tok::Int(n) if n.is_one() => {
                    self.next();
                    HalfPoly::default()
                }
                _ => return self.error(&["`(-1)^n`", "`q^(...)`", "`1`"]),
            }
        } else {
            HalfPoly::default()
        };
        if num.a2 < 1 {
            return self.error(&["numerator exponent with a positive n^2 term"]);
        }
        if num.c2 % 2 != 0 || (num.a2 + num.b2) % 2 != 0 {
            return self.error(&["integer-valued numerator exponent"]);
        }
        self.expect(Tok::Slash)?;
        self.expect(Tok::LParen)?;
        match self.peek() {
            Tok::Int(n) if n.is_one() => {
                self.next();
            }
            _ => return self.error(&["`1`"]),
        }
        let denom_sign = match self.next().tok {
            Tok::Minus => Sign::Plus,
            Tok::Plus => Sign::Minus,
            _ => {
                self.pos -= 1;
                return self.error(&["`+`", "`-`"]);
            }
        };
        self.expect_ident("q")?;
        let den = if self.eat(&Tok::Caret) { self.poly_exponent()? } else { HalfPoly { a2: 0, b2: 0, c2: 2 } };
        if den.a2 != 0 || den.b2 % 2 != 0 || den.c2 % 2 != 0 {
            return self.error(&["integer linear denominator exponent"]);
        }
        self.expect(Tok::RParen)?;
        let power = if self.eat(&Tok::Caret) { self.small(2)? } else { 1 };
        if power == 0 {
            self.pos -= 1;
            return self.error(&["`1`", "`2`"]);
        }
        let mut spec = LambertSpec {
            alternating,
            a2: num.a2,
            b2: num.b2,
            c: num.c2 / 2,
            denom_sign,
            d: den.b2 / 2,
            e: den.c2 / 2,
            power,
            exclusions: Vec::new(),
        };
        while self.eat(&Tok::Comma) {
            self.expect_ident("n")?;
            self.expect(Tok::NotEq)?;
            spec = spec.excluding(self.int()?);
        }
        self.expect(Tok::RBracket)?;
        Ok(spec)
    }

    /// `n`, `INT`, or a parenthesized polynomial in `n`.
    fn poly_exponent(&mut self) -> Result<HalfPoly, SyntaxError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let p = self.poly()?;
                self.expect(Tok::RParen)?;
                Ok(p)
            }
            Tok::Ident(s) if s == "n" => {
                self.next();
                Ok(HalfPoly { a2: 0, b2: 2, c2: 0 })
            }
            Tok::Int(_) => Ok(HalfPoly { a2: 0, b2: 0, c2: 2 * self.uint()? as i64 }),
            _ => self.error(&["`(`", "`n`", "integer"]),
        }
    }

    /// Sum of terms `[k]n^2[/2]`, `[k]n[/2]`, `k[/2]`.
    fn poly(&mut self) -> Result<HalfPoly, SyntaxError> {
        let mut p = HalfPoly::default();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Tok::Minus => {
                    self.next();
                    true
                }
                Tok::Plus if !first => {
                    self.next();
                    false
                }
                _ if first => false,
                _ => return Ok(p),
            };
            first = false;
            let coeff = match self.peek().clone() {
                Tok::Int(n) => {
                    self.next();
                    Some(n.to_i64().ok_or_else(|| SyntaxError::new(self.span(), vec!["small integer".into()], "large literal"))?)
                }
                _ => None,
            };
            let degree = if self.is_ident("n") {
                self.next();
                if self.eat(&Tok::Caret) {
                    match self.peek() {
                        Tok::Int(n) if *n == BigInt::from(2) => {
                            self.next();
                            2
                        }
                        _ => return self.error(&["`2`"]),
                    }
                } else {
                    1
                }
            } else if coeff.is_some() {
                0
            } else {
                return self.error(&["integer", "`n`"]);
            };
            let mut k2 = 2 * coeff.unwrap_or(1);
            if self.peek() == &Tok::Slash {
                self.next();
                match self.peek() {
                    Tok::Int(n) if *n == BigInt::from(2) => {
                        self.next();
                        k2 /= 2;
                    }
                    _ => return self.error(&["`2`"]),
                }
            }
            if negative {
                k2 = -k2;
            }
            match degree {
                2 => p.a2 += k2,
                1 => p.b2 += k2,
                _ => p.c2 += k2,
            }
        }
    }
}
