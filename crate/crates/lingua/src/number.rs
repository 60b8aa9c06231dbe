//! Exact decimal numbers: an integer coefficient scaled by a power of ten.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A finite decimal `coeff * 10^-scale`, kept normalized: no trailing
/// fractional zeros, and zero always has scale 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decimal {
    coeff: BigInt,
    scale: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed decimal literal `{0}`")]
pub struct DecimalParseError(pub String);

fn pow10(n: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u8), n as usize)
}

impl Decimal {
    pub fn new(coeff: BigInt, scale: u32) -> Self {
        let mut d = Decimal { coeff, scale };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Decimal { coeff: BigInt::zero(), scale: 0 }
    }

    pub fn one() -> Self {
        Decimal::from(1)
    }

    fn normalize(&mut self) {
        if self.coeff.is_zero() {
            self.scale = 0;
            return;
        }
        let ten = BigInt::from(10u8);
        while self.scale > 0 {
            let (q, r) = self.coeff.div_rem(&ten);
            if !r.is_zero() {
                break;
            }
            self.coeff = q;
            self.scale -= 1;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.coeff.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.scale == 0
    }

    /// Number of digits after the decimal point.
    pub fn frac_digits(&self) -> u32 {
        self.scale
    }

    /// Number of digits before the decimal point (zero has none).
    pub fn int_digits(&self) -> u32 {
        let int_part = self.coeff.abs() / pow10(self.scale);
        if int_part.is_zero() {
            0
        } else {
            int_part.to_string().len() as u32
        }
    }

    fn aligned(&self, other: &Decimal) -> (BigInt, BigInt, u32) {
        let scale = self.scale.max(other.scale);
        let a = &self.coeff * pow10(scale - self.scale);
        let b = &other.coeff * pow10(scale - other.scale);
        (a, b, scale)
    }

    pub fn add(&self, other: &Decimal) -> Decimal {
        let (a, b, scale) = self.aligned(other);
        Decimal::new(a + b, scale)
    }

    pub fn sub(&self, other: &Decimal) -> Decimal {
        let (a, b, scale) = self.aligned(other);
        Decimal::new(a - b, scale)
    }

    pub fn mul(&self, other: &Decimal) -> Decimal {
        Decimal::new(&self.coeff * &other.coeff, self.scale + other.scale)
    }

    pub fn neg(&self) -> Decimal {
        Decimal::new(-&self.coeff, self.scale)
    }

    /// Quotient truncated toward zero to `frac` fractional digits;
    /// `None` when dividing by zero.
    pub fn div_truncated(&self, other: &Decimal, frac: u32) -> Option<Decimal> {
        if other.is_zero() {
            return None;
        }
        // self/other = (a * 10^-sa) / (b * 10^-sb); scale the numerator so the
        // integer quotient carries exactly `frac` fractional digits.
        let exponent = frac as i64 + other.scale as i64 - self.scale as i64;
        let (num, den) = if exponent >= 0 {
            (&self.coeff * pow10(exponent as u32), other.coeff.clone())
        } else {
            (self.coeff.clone(), &other.coeff * pow10((-exponent) as u32))
        };
        // BigInt division truncates toward zero.
        Some(Decimal::new(num / den, frac))
    }

    /// Truncation toward zero to at most `frac` fractional digits.
    pub fn truncate(&self, frac: u32) -> Decimal {
        if self.scale <= frac {
            return self.clone();
        }
        let q = &self.coeff / pow10(self.scale - frac);
        Decimal::new(q, frac)
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.scale == 0 {
            self.coeff.to_i64()
        } else {
            None
        }
    }

    /// Integer value if this is a non-negative integer that fits in `u64`.
    pub fn to_u64(&self) -> Option<u64> {
        if self.scale == 0 {
            self.coeff.to_u64()
        } else {
            None
        }
    }
}

impl From<i64> for Decimal {
    fn from(n: i64) -> Self {
        Decimal { coeff: BigInt::from(n), scale: 0 }
    }
}

impl From<BigInt> for Decimal {
    fn from(n: BigInt) -> Self {
        Decimal { coeff: n, scale: 0 }
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for Decimal {
    type Err = DecimalParseError;

    /// Accepts an optional leading `-`, digits, and an optional `.digits` part.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DecimalParseError(s.to_string());
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if body.contains('.') && (frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit())) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let mut coeff = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(bad)?;
        if negative {
            coeff = -coeff;
        }
        Ok(Decimal::new(coeff, frac.len() as u32))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.coeff.abs().to_string();
        let sign = if self.coeff.sign() == Sign::Minus { "-" } else { "" };
        if self.scale == 0 {
            return write!(f, "{sign}{digits}");
        }
        let scale = self.scale as usize;
        let padded = if digits.len() <= scale {
            format!("{}{}", "0".repeat(scale - digits.len() + 1), digits)
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - scale);
        write!(f, "{sign}{int}.{frac}")
    }
}

/// `10^n` as a decimal; handy for limit arithmetic in tests and examples.
pub fn power_of_ten(n: u32) -> Decimal {
    Decimal::from(pow10(n))
}

impl Decimal {
    pub fn is_one(&self) -> bool {
        self.scale == 0 && self.coeff.is_one()
    }
}
