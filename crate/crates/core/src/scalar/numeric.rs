//! High-precision floating point backend and the global arithmetic context.
//!
//! All numeric-mode values are carried at a fixed mantissa precision
//! (default 256 bits, about 77 significant decimal digits) so that paper
//! quantities involving `ln 2` keep far more accuracy than the comparison
//! tolerance requires. Comparisons in numeric mode use a single global
//! tolerance `eps` (default 1e-12).

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Result, ShiftError};

/// Default mantissa precision in bits (~77 decimal digits).
pub const DEFAULT_PRECISION_BITS: usize = 256;

/// Default comparison tolerance for numeric mode.
pub const DEFAULT_EPS: &str = "1e-12";

const RM: RoundingMode = RoundingMode::ToEven;

/// Whether scalars are kept symbolic as long as possible or demoted to
/// floating point on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithmeticMode {
    Exact,
    Numeric,
}

#[derive(Debug, Clone)]
pub struct NumericContext {
    pub precision_bits: usize,
    pub eps: BigRational,
    pub mode: ArithmeticMode,
}

impl Default for NumericContext {
    fn default() -> Self {
        NumericContext {
            precision_bits: DEFAULT_PRECISION_BITS,
            eps: rational_from_decimal(DEFAULT_EPS).expect("default eps parses"),
            mode: ArithmeticMode::Exact,
        }
    }
}

static CONTEXT: RwLock<Option<NumericContext>> = RwLock::new(None);

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// Install the global arithmetic context. Intended to be called once at
/// startup; operations read it on every numeric comparison.
pub fn set_context(ctx: NumericContext) {
    *CONTEXT.write().expect("context lock") = Some(ctx);
}

pub fn context() -> NumericContext {
    CONTEXT
        .read()
        .expect("context lock")
        .clone()
        .unwrap_or_default()
}

pub fn precision_bits() -> usize {
    context().precision_bits
}

/// Parse a plain decimal string (optionally scientific) into an exact rational.
pub fn rational_from_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..]
                .parse()
                .map_err(|_| ShiftError::Parse(format!("bad exponent in '{s}'")))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    let digits = format!(
        "{}{}",
        if int_part.is_empty() { "0" } else { int_part },
        frac_part
    );
    let n = BigInt::from_str(&digits).map_err(|_| ShiftError::Parse(format!("bad number '{s}'")))?;
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        BigRational::from_integer(n * ten.pow(shift as u32))
    } else {
        BigRational::new(n, ten.pow((-shift) as u32))
    };
    Ok(value)
}

/// Arbitrary-precision float at the context precision.
#[derive(Clone)]
pub struct Precise(BigFloat);

impl Precise {
    pub fn from_bigfloat(f: BigFloat) -> Self {
        Precise(f)
    }

    pub fn raw(&self) -> &BigFloat {
        &self.0
    }

    pub fn zero() -> Self {
        Precise(BigFloat::from_u8(0, precision_bits()))
    }

    pub fn one() -> Self {
        Precise(BigFloat::from_u8(1, precision_bits()))
    }

    pub fn from_i64(v: i64) -> Self {
        Precise(BigFloat::from_i64(v, precision_bits()))
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let p = precision_bits();
        let hex = v.magnitude().to_str_radix(16);
        let f = CONSTS.with(|cc| BigFloat::parse(&hex, Radix::Hex, p, RM, &mut cc.borrow_mut()));
        if v.is_negative() {
            Precise(f.neg())
        } else {
            Precise(f)
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        let p = precision_bits();
        let n = Self::from_bigint(r.numer());
        let d = Self::from_bigint(r.denom());
        Precise(n.0.div(&d.0, p, RM))
    }

    pub fn add(&self, rhs: &Precise) -> Precise {
        Precise(self.0.add(&rhs.0, precision_bits(), RM))
    }

    pub fn sub(&self, rhs: &Precise) -> Precise {
        Precise(self.0.sub(&rhs.0, precision_bits(), RM))
    }

    pub fn mul(&self, rhs: &Precise) -> Precise {
        Precise(self.0.mul(&rhs.0, precision_bits(), RM))
    }

    pub fn div(&self, rhs: &Precise) -> Precise {
        Precise(self.0.div(&rhs.0, precision_bits(), RM))
    }

    pub fn neg(&self) -> Precise {
        Precise(self.0.neg())
    }

    pub fn abs(&self) -> Precise {
        Precise(self.0.abs())
    }

    pub fn powi(&self, n: usize) -> Precise {
        Precise(self.0.powi(n, precision_bits(), RM))
    }

    pub fn sqrt(&self) -> Result<Precise> {
        if self.0.is_negative() {
            return Err(ShiftError::Precondition(
                "square root of a negative value".into(),
            ));
        }
        Ok(Precise(self.0.sqrt(precision_bits(), RM)))
    }

    pub fn ln(&self) -> Result<Precise> {
        if self.0.is_negative() || self.0.is_zero() {
            return Err(ShiftError::Precondition(
                "logarithm of a non-positive value".into(),
            ));
        }
        let p = precision_bits();
        Ok(Precise(CONSTS.with(|cc| {
            self.0.ln(p, RM, &mut cc.borrow_mut())
        })))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_nan(&self) -> bool {
        self.0.is_nan()
    }

    /// Total order; NaN is treated as an error elsewhere and never compared.
    pub fn cmp_total(&self, rhs: &Precise) -> Ordering {
        self.0.partial_cmp(&rhs.0).unwrap_or(Ordering::Equal)
    }

    /// Tolerance comparison: values within `eps` of each other are equal.
    pub fn cmp_eps(&self, rhs: &Precise, eps: &Precise) -> Ordering {
        let diff = self.sub(rhs);
        if diff.abs().cmp_total(eps) != Ordering::Greater {
            Ordering::Equal
        } else if diff.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn to_f64(&self) -> f64 {
        format!("{}", self.0).parse::<f64>().unwrap_or(f64::NAN)
    }

    /// Canonical decimal form truncated to `sig` significant digits.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        let full = format!("{}", self.0);
        truncate_decimal(&full, sig)
    }
}

impl fmt::Debug for Precise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(30))
    }
}

impl fmt::Display for Precise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(50))
    }
}

fn truncate_decimal(s: &str, sig: usize) -> String {
    // astro-float prints "d.ddddd...e+xx" (or plain integers like "0").
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    };
    let mut out = String::new();
    let mut digits = 0usize;
    for ch in mantissa.chars() {
        if ch.is_ascii_digit() {
            if digits >= sig {
                continue;
            }
            digits += 1;
        }
        out.push(ch);
    }
    // drop a trailing dot left by truncation
    let trimmed = out.trim_end_matches('.').to_string();
    format!("{}{}", trimmed, exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn rational_decimal_parse() {
        let r = rational_from_decimal("0.72").unwrap();
        assert_eq!(r, BigRational::new(BigInt::from(72), BigInt::from(100)));
        let r = rational_from_decimal("1e-12").unwrap();
        assert_eq!(
            r,
            BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12))
        );
        let r = rational_from_decimal("-3.5e2").unwrap();
        assert_eq!(r, BigRational::from_integer(BigInt::from(-350)));
    }

    #[test]
    fn precise_roundtrip_and_ops() {
        let half = Precise::from_rational(&BigRational::new(BigInt::one(), BigInt::from(2)));
        let two = Precise::from_i64(2);
        let one = half.mul(&two);
        assert_eq!(one.cmp_total(&Precise::one()), Ordering::Equal);
        let ln2 = two.ln().unwrap();
        // first digits of ln 2
        assert!(ln2.to_decimal_string(20).starts_with("6.9314718055994530941"));
    }

    #[test]
    fn eps_comparison() {
        let eps = Precise::from_rational(&rational_from_decimal("1e-12").unwrap());
        let a = Precise::one();
        let b = a.add(&Precise::from_rational(
            &rational_from_decimal("1e-13").unwrap(),
        ));
        assert_eq!(a.cmp_eps(&b, &eps), Ordering::Equal);
        let c = a.add(&Precise::from_rational(
            &rational_from_decimal("1e-11").unwrap(),
        ));
        assert_eq!(a.cmp_eps(&c, &eps), Ordering::Less);
    }

    #[test]
    fn big_rational_conversion_is_faithful() {
        let numer = BigInt::parse_bytes(b"123456789012345678901234567891", 10).unwrap();
        let denom = BigInt::from(7);
        let r = BigRational::new(numer.clone(), denom);
        let f = Precise::from_rational(&r);
        let sevens = f.mul(&Precise::from_i64(7));
        let back = Precise::from_bigint(&numer);
        let eps = Precise::from_rational(&rational_from_decimal("1e-40").unwrap());
        let rel = sevens.sub(&back).div(&back).abs();
        assert_eq!(rel.cmp_total(&eps), Ordering::Less);
    }
}
