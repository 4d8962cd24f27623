use std::fmt;

use num_bigint::BigInt;

use crate::lambert::LambertSpec;
use crate::monomial::{Sign, SignedMonomial};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `J(a, m) = j(q^a; q^m)`
    J(i64, u64),
    /// `Jm(m) = (q^m; q^m)_∞`
    Jm(u64),
    Theta(SignedMonomial, u64),
    Bracket(SignedMonomial, u64),
    Poch(SignedMonomial, u64),
    FinitePoch(SignedMonomial, u64, u64),
    P([SignedMonomial; 3], u64),
    S(SignedMonomial, i64),
    AppellLerch(SignedMonomial, u64, SignedMonomial),
    G2(SignedMonomial, u64),
    Omega,
    Rho,
    Opgf,
    Rbar(u32),
    Rgf(u32),
    Rdiss(u32, u32),
    Lambert(LambertSpec),
}

#[derive(Clone, Debug)]
pub enum ExprKind {
    Int(BigInt),
    Q,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(Builtin),
}

/// An expression node; equality ignores source positions.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        use ExprKind::*;
        match (&self.kind, &other.kind) {
            (Int(a), Int(b)) => a == b,
            (Q, Q) => true,
            (Neg(a), Neg(b)) => a == b,
            (Binary(o1, a1, b1), Binary(o2, a2, b2)) => o1 == o2 && a1 == a2 && b1 == b2,
            (Pow(a, e1), Pow(b, e2)) => e1 == e2 && a == b,
            (Call(a), Call(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Expr {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expected {
    Pass,
    KnownDiscrepancy(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assertion {
    pub lhs: Expr,
    pub rhs: Expr,
    pub order: u64,
    pub expected: Expected,
    pub line: usize,
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            ExprKind::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            ExprKind::Neg(_) => 3,
            ExprKind::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(n) => write!(f, "{n}"),
            ExprKind::Q => write!(f, "q"),
            ExprKind::Neg(e) => {
                write!(f, "-")?;
                wrap(f, e, 3)
            }
            ExprKind::Binary(op, a, b) => {
                let (sym, p) = match op {
                    BinOp::Add => (" + ", 1),
                    BinOp::Sub => (" - ", 1),
                    BinOp::Mul => (" * ", 2),
                    BinOp::Div => (" / ", 2),
                };
                wrap(f, a, p)?;
                write!(f, "{sym}")?;
                wrap(f, b, p + 1)
            }
            ExprKind::Pow(base, e) => {
                wrap(f, base, 5)?;
                if *e < 0 {
                    write!(f, "^({e})")
                } else {
                    write!(f, "^{e}")
                }
            }
            ExprKind::Call(b) => write!(f, "{b}"),
        }
    }
}

/// Writes `k/2 · var` as a signed term, e.g. ` + 3n^2/2`; `first` omits a leading `+`.
fn half_term(f: &mut fmt::Formatter<'_>, k2: i64, var: &str, first: bool) -> fmt::Result {
    let sign = if k2 < 0 {
        if first {
            "-"
        } else {
            " - "
        }
    } else if first {
        ""
    } else {
        " + "
    };
    let a = k2.abs();
    let (num, halved) = if a % 2 == 0 { (a / 2, false) } else { (a, true) };
    let coeff = if num == 1 && !var.is_empty() { String::new() } else { num.to_string() };
    write!(f, "{sign}{coeff}{var}")?;
    if halved {
        write!(f, "/2")?;
    }
    Ok(())
}

/// Polynomial `(a2 n² + b2 n + c2) / 2`.
pub(crate) struct HalfPoly(pub i64, pub i64, pub i64);

impl fmt::Display for HalfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, var) in [(self.0, "n^2"), (self.1, "n"), (self.2, "")] {
            if k != 0 {
                half_term(f, k, var, first)?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn fmt_lambert(f: &mut fmt::Formatter<'_>, s: &LambertSpec) -> fmt::Result {
    write!(f, "L[")?;
    if s.alternating {
        write!(f, "(-1)^n ")?;
    }
    write!(f, "q^({})", HalfPoly(s.a2, s.b2, 2 * s.c))?;
    let op = match s.denom_sign {
        Sign::Plus => '-',
        Sign::Minus => '+',
    };
    write!(f, " / (1 {op} q^({}))", HalfPoly(0, 2 * s.d, 2 * s.e))?;
    if s.power != 1 {
        write!(f, "^{}", s.power)?;
    }
    for n in &s.exclusions {
        write!(f, ", n != {n}")?;
    }
    write!(f, "]")
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::J(a, m) => write!(f, "J({a}, {m})"),
            Builtin::Jm(m) => write!(f, "Jm({m})"),
            Builtin::Theta(z, m) => write!(f, "jtheta({z}, {m})"),
            Builtin::Bracket(a, m) => write!(f, "br({a}, {m})"),
            Builtin::Poch(a, s) => write!(f, "poch({a}, {s})"),
            Builtin::FinitePoch(a, s, k) => write!(f, "fpoch({a}, {s}, {k})"),
            Builtin::P([a, b, c], m) => write!(f, "P({a}, {b}, {c}; {m})"),
            Builtin::S(a, n) => write!(f, "S({a}; {n})"),
            Builtin::AppellLerch(x, b, z) => write!(f, "AL({x}; {b}; {z})"),
            Builtin::G2(x, b) => write!(f, "g2({x}; {b})"),
            Builtin::Omega => write!(f, "omega()"),
            Builtin::Rho => write!(f, "rho()"),
            Builtin::Opgf => write!(f, "OPGF()"),
            Builtin::Rbar(t) => write!(f, "RBAR({t})"),
            Builtin::Rgf(s) => write!(f, "RGF({s})"),
            Builtin::Rdiss(s, d) => write!(f, "RDISS({s}, {d})"),
            Builtin::Lambert(spec) => fmt_lambert(f, spec),
        }
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "assert {} == {} to {}", self.lhs, self.rhs, self.order)?;
        if let Expected::KnownDiscrepancy(note) = &self.expected {
            write!(f, " known {note:?}")?;
        }
        write!(f, ";")
    }
}

/// Prints a script so that it parses back to the same assertions.
pub fn pretty(assertions: &[Assertion]) -> String {
    let mut out = String::new();
    for a in assertions {
        out.push_str(&a.to_string());
        out.push('\n');
    }
    out
}
