use std::fmt;
use std::ops::{Div, Mul, Neg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(s: i64) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `(-1)^k`.
    pub fn parity(k: i64) -> Sign {
        if k.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn pow(self, k: i64) -> Sign {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus => Sign::parity(k),
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// The value `sign·q^exponent`; all specialization parameters are of this form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedMonomial {
    pub sign: Sign,
    pub exponent: i64,
}

impl SignedMonomial {
    pub const ONE: SignedMonomial = SignedMonomial { sign: Sign::Plus, exponent: 0 };

    pub fn new(sign: Sign, exponent: i64) -> Self {
        SignedMonomial { sign, exponent }
    }

    pub fn plus(exponent: i64) -> Self {
        SignedMonomial::new(Sign::Plus, exponent)
    }

    pub fn minus(exponent: i64) -> Self {
        SignedMonomial::new(Sign::Minus, exponent)
    }

    pub fn inverse(self) -> Self {
        SignedMonomial::new(self.sign, -self.exponent)
    }

    pub fn pow(self, k: i64) -> Self {
        SignedMonomial::new(self.sign.pow(k), self.exponent * k)
    }

    /// Multiplies by `q^k`.
    pub fn shift(self, k: i64) -> Self {
        SignedMonomial::new(self.sign, self.exponent + k)
    }
}

impl Mul for SignedMonomial {
    type Output = SignedMonomial;
    fn mul(self, rhs: SignedMonomial) -> SignedMonomial {
        SignedMonomial::new(self.sign * rhs.sign, self.exponent + rhs.exponent)
    }
}

impl Div for SignedMonomial {
    type Output = SignedMonomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: SignedMonomial) -> SignedMonomial {
        self * rhs.inverse()
    }
}

impl fmt::Display for SignedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Minus {
            write!(f, "-")?;
        }
        match self.exponent {
            0 => write!(f, "1"),
            1 => write!(f, "q"),
            e if e < 0 => write!(f, "q^({e})"),
            e => write!(f, "q^{e}"),
        }
    }
}
