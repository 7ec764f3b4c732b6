//! Exact arithmetic in a real quadratic extension: values `a + b*sqrt(d)`
//! with rational `a`, `b` and a shared positive non-square radicand `d`.
//!
//! Square roots of rationals (extremal values, Stampfli atoms) live here, so
//! moments of two-atom measures collapse back to exact rationals instead of
//! being rounded through floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `a + b*sqrt(d)`; invariants: `b != 0`, `d > 0` an integer (denominator 1)
/// that is not a perfect square and has no small square factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quad {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigRational,
}

const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Either a rational (the radical part vanished or collapsed) or a true quad.
pub enum QuadOrRational {
    Rational(BigRational),
    Quad(Quad),
}

/// Exact square root of a nonnegative rational: rational when the argument is
/// a perfect square, otherwise `sqrt` as a canonical quad.
pub fn sqrt_rational(r: &BigRational) -> Option<QuadOrRational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(QuadOrRational::Rational(BigRational::zero()));
    }
    Some(make_quad(
        BigRational::zero(),
        BigRational::one(),
        r.clone(),
    ))
}

/// Build `a + b*sqrt(d)` in canonical form, collapsing to a rational when the
/// radical part vanishes or `d` is a perfect square.
pub fn make_quad(a: BigRational, b: BigRational, d: BigRational) -> QuadOrRational {
    if b.is_zero() || d.is_zero() {
        return QuadOrRational::Rational(a);
    }
    assert!(d.is_positive(), "radicand must be positive");
    // sqrt(p/q) = sqrt(p*q)/q
    let p = d.numer().clone();
    let q = d.denom().clone();
    let mut m: BigInt = &p * &q;
    let mut b = b / BigRational::from_integer(q);
    // pull out small square factors, then check for a perfect square
    for prime in SMALL_PRIMES {
        let p2 = BigInt::from(prime * prime);
        while (&m % &p2).is_zero() {
            m /= &p2;
            b *= BigRational::from_integer(BigInt::from(prime));
        }
    }
    let root = m.sqrt();
    if &root * &root == m {
        return QuadOrRational::Rational(a + b * BigRational::from_integer(root));
    }
    QuadOrRational::Quad(Quad {
        a,
        b,
        d: BigRational::from_integer(m),
    })
}

impl Quad {
    pub fn add_rational(&self, r: &BigRational) -> Quad {
        Quad {
            a: &self.a + r,
            b: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn mul_rational(&self, r: &BigRational) -> QuadOrRational {
        make_quad(&self.a * r, &self.b * r, self.d.clone())
    }

    pub fn neg(&self) -> Quad {
        Quad {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// Addition within the same extension field; `None` if radicands differ.
    pub fn add(&self, rhs: &Quad) -> Option<QuadOrRational> {
        if self.d != rhs.d {
            return None;
        }
        Some(make_quad(
            &self.a + &rhs.a,
            &self.b + &rhs.b,
            self.d.clone(),
        ))
    }

    /// Multiplication; handles same-field products and pure-radical products
    /// across different radicands (`b sqrt(d) * b' sqrt(d') = b b' sqrt(d d')`).
    pub fn mul(&self, rhs: &Quad) -> Option<QuadOrRational> {
        if self.d == rhs.d {
            let a = &self.a * &rhs.a + &self.b * &rhs.b * &self.d;
            let b = &self.a * &rhs.b + &self.b * &rhs.a;
            return Some(make_quad(a, b, self.d.clone()));
        }
        if self.a.is_zero() && rhs.a.is_zero() {
            return Some(make_quad(
                BigRational::zero(),
                &self.b * &rhs.b,
                &self.d * &rhs.d,
            ));
        }
        None
    }

    /// Multiplicative inverse via the conjugate; always stays in the field.
    pub fn recip(&self) -> QuadOrRational {
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        assert!(!norm.is_zero(), "quad with zero norm has a rational root");
        make_quad(&self.a / &norm, -&self.b / &norm, self.d.clone())
    }

    /// Exact sign of `a + b*sqrt(d)`.
    pub fn sign(&self) -> Ordering {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            _ => {
                // opposite signs: compare a^2 with b^2 d, sign follows the winner
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * &self.d;
                match lhs.cmp(&rhs) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                }
            }
        }
    }

    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        Quad {
            a: &self.a - r,
            b: self.b.clone(),
            d: self.d.clone(),
        }
        .sign()
    }

    /// Exact comparison within the same field, or of pure radicals across
    /// fields; `None` when the difference leaves quadratic territory.
    pub fn cmp_quad(&self, rhs: &Quad) -> Option<Ordering> {
        if self.d == rhs.d {
            return Some(
                match make_quad(&self.a - &rhs.a, &self.b - &rhs.b, self.d.clone()) {
                    QuadOrRational::Rational(r) => rational_sign(&r),
                    QuadOrRational::Quad(q) => q.sign(),
                },
            );
        }
        if self.a == rhs.a {
            // b sqrt(d) vs b' sqrt(d')
            let sb = rational_sign(&self.b);
            let sb2 = rational_sign(&rhs.b);
            if sb != sb2 {
                return Some(sb);
            }
            let lhs = &self.b * &self.b * &self.d;
            let rhs_v = &rhs.b * &rhs.b * &rhs.d;
            let mag = lhs.cmp(&rhs_v);
            return Some(if sb == Ordering::Greater { mag } else { mag.reverse() });
        }
        None
    }
}

pub fn rational_sign(r: &BigRational) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.a.is_zero() {
            write!(f, "{} ", self.a)?;
            if self.b.is_positive() {
                write!(f, "+ ")?;
            } else {
                write!(f, "- ")?;
            }
            write!(f, "{}*sqrt({})", self.b.abs(), self.d)
        } else if self.b.is_one() {
            write!(f, "sqrt({})", self.d)
        } else {
            write!(f, "{}*sqrt({})", self.b, self.d)
        }
    }
}
