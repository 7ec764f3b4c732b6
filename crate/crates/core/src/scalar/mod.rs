//! Scalar arithmetic for the library.
//!
//! A [`Scalar`] is either exact — a rational, a value in a real quadratic
//! extension `a + b*sqrt(d)`, or a log-linear combination `r + sum c_i ln(q_i)`
//! — or a high-precision float. Exact scalars combine with exact scalars
//! without leaving exact territory whenever the result stays in one of the
//! three exact shapes; any operation that would leave them (and any operation
//! touching a float) demotes the result to numeric mode. Numeric comparisons
//! use the single global tolerance from [`numeric::context`].

pub mod loglin;
pub mod numeric;
pub mod quad;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, ShiftError};
use loglin::{LogLin, LogLinOrRational};
use numeric::{context, rational_from_decimal, ArithmeticMode, Precise};
use quad::{make_quad, sqrt_rational, Quad, QuadOrRational};

#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Quad(Quad),
    LogLin(LogLin),
    Numeric(Precise),
}

/// Outcome of a comparison together with its certainty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub ord: Ordering,
    pub exact: bool,
}

impl From<QuadOrRational> for Scalar {
    fn from(v: QuadOrRational) -> Self {
        match v {
            QuadOrRational::Rational(r) => Scalar::Rational(r),
            QuadOrRational::Quad(q) => Scalar::Quad(q),
        }
    }
}

impl From<LogLinOrRational> for Scalar {
    fn from(v: LogLinOrRational) -> Self {
        match v {
            LogLinOrRational::Rational(r) => Scalar::Rational(r),
            LogLinOrRational::LogLin(l) => Scalar::LogLin(l),
        }
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    /// `c * ln(q)` as an exact log-linear scalar.
    pub fn ln_of_rational(c: Scalar, q: &BigRational) -> Result<Scalar> {
        match c {
            Scalar::Rational(c) => Ok(loglin::ln_term(c, q.clone()).into()),
            other => {
                let lnq = Precise::from_rational(q).ln()?;
                Ok(Scalar::Numeric(other.to_precise().mul(&lnq)))
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Numeric(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Numeric value at the context precision.
    pub fn to_precise(&self) -> Precise {
        match self {
            Scalar::Rational(r) => Precise::from_rational(r),
            Scalar::Quad(q) => {
                let root = Precise::from_rational(&q.d)
                    .sqrt()
                    .expect("canonical radicand is positive");
                Precise::from_rational(&q.a).add(&Precise::from_rational(&q.b).mul(&root))
            }
            Scalar::LogLin(l) => l.eval(),
            Scalar::Numeric(p) => p.clone(),
        }
    }

    /// Force numeric representation (used when the arithmetic mode is numeric).
    pub fn demoted(&self) -> Scalar {
        Scalar::Numeric(self.to_precise())
    }

    pub fn demote_per_mode(self) -> Scalar {
        match context().mode {
            ArithmeticMode::Exact => self,
            ArithmeticMode::Numeric => self.demoted(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            other => other.to_precise().to_f64(),
        }
    }

    pub fn add_scalar(&self, rhs: &Scalar) -> Scalar {
        use Scalar::*;
        match (self, rhs) {
            (Rational(a), Rational(b)) => Rational(a + b),
            (Rational(a), Quad(q)) | (Quad(q), Rational(a)) => Quad(q.add_rational(a)),
            (Quad(a), Quad(b)) => match a.add(b) {
                Some(v) => v.into(),
                None => self.numeric_binop(rhs, Precise::add),
            },
            (Rational(a), LogLin(l)) | (LogLin(l), Rational(a)) => LogLin(l.add_rational(a)),
            (LogLin(a), LogLin(b)) => a.add(b).into(),
            _ => self.numeric_binop(rhs, Precise::add),
        }
    }

    pub fn sub_scalar(&self, rhs: &Scalar) -> Scalar {
        self.add_scalar(&rhs.neg_scalar())
    }

    pub fn neg_scalar(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quad(q) => Scalar::Quad(q.neg()),
            Scalar::LogLin(l) => Scalar::LogLin(l.neg()),
            Scalar::Numeric(p) => Scalar::Numeric(p.neg()),
        }
    }

    pub fn mul_scalar(&self, rhs: &Scalar) -> Scalar {
        use Scalar::*;
        match (self, rhs) {
            (Rational(a), Rational(b)) => Rational(a * b),
            (Rational(a), Quad(q)) | (Quad(q), Rational(a)) => q.mul_rational(a).into(),
            (Quad(a), Quad(b)) => match a.mul(b) {
                Some(v) => v.into(),
                None => self.numeric_binop(rhs, Precise::mul),
            },
            (Rational(a), LogLin(l)) | (LogLin(l), Rational(a)) => l.mul_rational(a).into(),
            _ => self.numeric_binop(rhs, Precise::mul),
        }
    }

    /// Division; the caller guarantees `rhs != 0` (checked for exact zero).
    pub fn div_scalar(&self, rhs: &Scalar) -> Scalar {
        use Scalar::*;
        assert!(!rhs.is_exact_zero(), "division by zero scalar");
        match (self, rhs) {
            (Rational(a), Rational(b)) => Rational(a / b),
            (Quad(q), Rational(b)) => q.mul_rational(&b.recip()).into(),
            (Rational(a), Quad(q)) => Scalar::from(q.recip()).mul_scalar(&Rational(a.clone())),
            (Quad(a), Quad(b)) if a.d == b.d => {
                Scalar::from(b.recip()).mul_scalar(&Quad(a.clone()))
            }
            (LogLin(l), Rational(b)) => l.mul_rational(&b.recip()).into(),
            _ => self.numeric_binop(rhs, Precise::div),
        }
    }

    pub fn recip(&self) -> Scalar {
        Scalar::one().div_scalar(self)
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = acc.mul_scalar(self);
        }
        acc
    }

    pub fn sqrt(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => sqrt_rational(r)
                .map(Scalar::from)
                .ok_or_else(|| ShiftError::Precondition("square root of a negative value".into())),
            other => {
                let p = other.to_precise();
                Ok(Scalar::Numeric(p.sqrt()?))
            }
        }
    }

    /// Natural logarithm; symbolic (`ln q`) for rational arguments.
    pub fn ln(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if !r.is_positive() {
                    return Err(ShiftError::Precondition(
                        "logarithm of a non-positive value".into(),
                    ));
                }
                Ok(loglin::ln_term(BigRational::one(), r.clone()).into())
            }
            other => Ok(Scalar::Numeric(other.to_precise().ln()?)),
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            self.neg_scalar()
        } else {
            self.clone()
        }
    }

    fn numeric_binop(&self, rhs: &Scalar, op: fn(&Precise, &Precise) -> Precise) -> Scalar {
        Scalar::Numeric(op(&self.to_precise(), &rhs.to_precise()))
    }

    /// Exact zero test without tolerance; numeric values are exactly zero only
    /// when the float is zero.
    pub fn is_exact_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Quad(_) => false,
            Scalar::LogLin(_) => false,
            Scalar::Numeric(p) => p.is_zero(),
        }
    }

    /// Three-way comparison with a certainty flag. Exact whenever both sides
    /// stay in a decidable exact shape, numeric (at the global tolerance)
    /// otherwise.
    pub fn compare(&self, rhs: &Scalar) -> Comparison {
        use Scalar::*;
        let exact = |ord| Comparison { ord, exact: true };
        match (self, rhs) {
            (Rational(a), Rational(b)) => exact(a.cmp(b)),
            (Quad(q), Rational(r)) => exact(q.cmp_rational(r)),
            (Rational(r), Quad(q)) => exact(q.cmp_rational(r).reverse()),
            (Quad(a), Quad(b)) => match a.cmp_quad(b) {
                Some(ord) => exact(ord),
                None => self.numeric_compare(rhs),
            },
            (LogLin(a), LogLin(b)) => match a.cmp_exact(b) {
                Some(ord) => exact(ord),
                None => self.numeric_compare(rhs),
            },
            _ => self.numeric_compare(rhs),
        }
    }

    fn numeric_compare(&self, rhs: &Scalar) -> Comparison {
        let ctx = context();
        let eps = Precise::from_rational(&ctx.eps);
        Comparison {
            ord: self.to_precise().cmp_eps(&rhs.to_precise(), &eps),
            exact: false,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.compare(&Scalar::zero()).ord == Ordering::Equal
    }

    pub fn is_positive(&self) -> bool {
        self.compare(&Scalar::zero()).ord == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.compare(&Scalar::zero()).ord == Ordering::Less
    }

    pub fn le(&self, rhs: &Scalar) -> bool {
        self.compare(rhs).ord != Ordering::Greater
    }

    pub fn lt(&self, rhs: &Scalar) -> bool {
        self.compare(rhs).ord == Ordering::Less
    }

    pub fn ge(&self, rhs: &Scalar) -> bool {
        self.compare(rhs).ord != Ordering::Less
    }

    pub fn gt(&self, rhs: &Scalar) -> bool {
        self.compare(rhs).ord == Ordering::Greater
    }

    /// Canonical decimal rendering, truncated to `sig` significant digits.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        self.to_precise().to_decimal_string(sig)
    }

    /// Parse the canonical string forms: `p/q`, decimals, `sqrt(x)`,
    /// `a + b*sqrt(d)` and `r + c*ln(q)` combinations.
    pub fn parse(input: &str) -> Result<Scalar> {
        parse_scalar(input)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other).ord == Ordering::Equal
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.add_scalar(rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.sub_scalar(rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_scalar(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_scalar()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", r),
            Scalar::Quad(q) => write!(f, "{}", q),
            Scalar::LogLin(l) => write!(f, "{}", l),
            Scalar::Numeric(p) => write!(f, "{}", p),
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

fn parse_rational_token(tok: &str) -> Result<BigRational> {
    let tok = tok.trim();
    if let Some(i) = tok.find('/') {
        let n: BigInt = tok[..i]
            .trim()
            .parse()
            .map_err(|_| ShiftError::Parse(format!("bad numerator in '{tok}'")))?;
        let d: BigInt = tok[i + 1..]
            .trim()
            .parse()
            .map_err(|_| ShiftError::Parse(format!("bad denominator in '{tok}'")))?;
        if d.is_zero() {
            return Err(ShiftError::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(n, d))
    } else {
        rational_from_decimal(tok)
    }
}

/// One additive term: `coef`, `coef*sqrt(d)`, `sqrt(d)`, `coef*ln(q)`, `ln(q)`.
enum Term {
    Rat(BigRational),
    Sqrt(BigRational, BigRational),
    Ln(BigRational, BigRational),
}

fn parse_term(tok: &str) -> Result<Term> {
    let tok = tok.trim();
    let (coef, func) = match tok.find('*') {
        Some(i) => (parse_rational_token(&tok[..i])?, tok[i + 1..].trim()),
        None => (BigRational::one(), tok),
    };
    if let Some(arg) = func.strip_prefix("sqrt(").and_then(|s| s.strip_suffix(")")) {
        Ok(Term::Sqrt(coef, parse_rational_token(arg)?))
    } else if let Some(arg) = func.strip_prefix("ln(").and_then(|s| s.strip_suffix(")")) {
        Ok(Term::Ln(coef, parse_rational_token(arg)?))
    } else if func == tok {
        Ok(Term::Rat(parse_rational_token(tok)?))
    } else {
        Err(ShiftError::Parse(format!("unrecognized term '{tok}'")))
    }
}

fn split_terms(input: &str) -> Vec<(bool, String)> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut depth = 0usize;
    let mut seen_content = false;
    let mut prev: Option<char> = None;
    for ch in input.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            '+' | '-'
                if depth == 0
                    && seen_content
                    && !matches!(prev, Some('e') | Some('E') | Some('/')) =>
            {
                terms.push((neg, cur.trim().to_string()));
                cur = String::new();
                neg = ch == '-';
            }
            '-' if depth == 0 && !seen_content => {
                neg = true;
            }
            _ => {
                if !ch.is_whitespace() {
                    seen_content = true;
                }
                cur.push(ch);
            }
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if !cur.trim().is_empty() {
        terms.push((neg, cur.trim().to_string()));
    }
    terms
}

fn parse_scalar(input: &str) -> Result<Scalar> {
    let input = input.trim();
    if input.is_empty() {
        return Err(ShiftError::Parse("empty scalar".into()));
    }
    let mut rat = BigRational::zero();
    let mut sqrt_terms: Vec<(BigRational, BigRational)> = Vec::new();
    let mut ln_terms: Vec<(BigRational, BigRational)> = Vec::new();
    for (neg, tok) in split_terms(input) {
        let sign = if neg {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        match parse_term(&tok)? {
            Term::Rat(r) => rat += sign * r,
            Term::Sqrt(c, d) => sqrt_terms.push((sign * c, d)),
            Term::Ln(c, q) => ln_terms.push((sign * c, q)),
        }
    }
    match (sqrt_terms.is_empty(), ln_terms.is_empty()) {
        (true, true) => Ok(Scalar::Rational(rat)),
        (false, true) if sqrt_terms.len() == 1 => {
            let (c, d) = sqrt_terms.pop().expect("one sqrt term");
            if d.is_negative() {
                return Err(ShiftError::Parse("negative radicand".into()));
            }
            Ok(make_quad(rat, c, d).into())
        }
        (true, false) => Ok(loglin::make_loglin(rat, ln_terms).into()),
        _ => {
            // mixed or multi-radical inputs collapse to numeric
            let mut acc = Precise::from_rational(&rat);
            for (c, d) in sqrt_terms {
                let root = Precise::from_rational(&d).sqrt()?;
                acc = acc.add(&Precise::from_rational(&c).mul(&root));
            }
            for (c, q) in ln_terms {
                let lnq = Precise::from_rational(&q).ln()?;
                acc = acc.add(&Precise::from_rational(&c).mul(&lnq));
            }
            Ok(Scalar::Numeric(acc))
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Numeric(p) => serializer.serialize_str(&p.to_decimal_string(50)),
            other => serializer.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Scalar::parse(&s).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_stays_exact_and_float_demotes() {
        let half = Scalar::ratio(1, 2);
        let third = Scalar::ratio(1, 3);
        assert!(matches!(&half + &third, Scalar::Rational(_)));
        let f = Scalar::Numeric(Precise::from_i64(1));
        assert!(matches!(&half + &f, Scalar::Numeric(_)));
    }

    #[test]
    fn sqrt_arithmetic_collapses() {
        let s = Scalar::int(2).sqrt().unwrap();
        let sq = s.mul_scalar(&s);
        assert_eq!(sq, Scalar::int(2));
        assert!(matches!(sq, Scalar::Rational(_)));
        // (2 - sqrt 2)(2 + sqrt 2) = 2
        let a = Scalar::int(2).sub_scalar(&s);
        let b = Scalar::int(2).add_scalar(&s);
        assert_eq!(a.mul_scalar(&b), Scalar::int(2));
    }

    #[test]
    fn compare_certainty() {
        let s = Scalar::ratio(1, 2).sqrt().unwrap(); // sqrt(1/2)
        let h = Scalar::ratio(11, 20).sqrt().unwrap();
        let c = s.compare(&h);
        assert_eq!(c.ord, Ordering::Less);
        assert!(c.exact);
        let lg = Scalar::ln_of_rational(Scalar::int(2), &BigRational::from_integer(2.into()))
            .unwrap();
        let c2 = lg.compare(&Scalar::ratio(7, 5));
        assert_eq!(c2.ord, Ordering::Less); // 2 ln 2 = 1.386... < 1.4
        assert!(!c2.exact);
    }

    #[test]
    fn parse_roundtrip() {
        for s in [
            "3/4",
            "-7/2",
            "0.72",
            "sqrt(2)",
            "1/2*sqrt(11/5)",
            "2*ln(2)",
            "1 - 1/2*ln(2)",
            "2 - sqrt(2)",
        ] {
            let v = Scalar::parse(s).unwrap();
            let back = Scalar::parse(&v.to_string()).unwrap();
            assert_eq!(v, back, "roundtrip failed for {s}");
        }
        assert_eq!(Scalar::parse("0.72").unwrap(), Scalar::ratio(72, 100));
        assert_eq!(
            Scalar::parse("1/2*sqrt(11/5)").unwrap().pow(2),
            Scalar::ratio(11, 20)
        );
    }

    #[test]
    fn json_string_form() {
        let v = Scalar::ratio(3, 4);
        assert_eq!(serde_json::to_string(&v).unwrap(), "\"3/4\"");
        let w: Scalar = serde_json::from_str("\"2 - sqrt(2)\"").unwrap();
        assert_eq!(w, Scalar::int(2).sub_scalar(&Scalar::int(2).sqrt().unwrap()));
    }
}
