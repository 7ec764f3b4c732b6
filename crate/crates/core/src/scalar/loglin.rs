//! Log-linear symbolic values: `r + sum_i c_i * ln(q_i)` with rational `r`,
//! `c_i` and rational arguments `q_i > 1`.
//!
//! Negative-moment integrals of polynomial densities produce exactly this
//! shape (`2*ln 2`, `1 - (1/2)*ln 2`, ...). Keeping the log terms symbolic
//! lets masses cancel exactly in backward extensions; numeric collapse
//! happens only at comparison or display time.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::numeric::Precise;

/// `r + sum c_i ln(q_i)`; canonical form keeps `q_i > 1` distinct and sorted,
/// with all `c_i` nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogLin {
    pub r: BigRational,
    pub terms: Vec<(BigRational, BigRational)>,
}

pub enum LogLinOrRational {
    Rational(BigRational),
    LogLin(LogLin),
}

/// `c * ln(q)` for rational `q > 0`, in canonical form.
pub fn ln_term(c: BigRational, q: BigRational) -> LogLinOrRational {
    make_loglin(BigRational::zero(), vec![(c, q)])
}

pub fn make_loglin(
    r: BigRational,
    raw_terms: Vec<(BigRational, BigRational)>,
) -> LogLinOrRational {
    let mut terms: Vec<(BigRational, BigRational)> = Vec::new();
    for (mut c, mut q) in raw_terms {
        assert!(q.is_positive(), "logarithm argument must be positive");
        if c.is_zero() || q.is_one() {
            continue;
        }
        if q < BigRational::one() {
            q = q.recip();
            c = -c;
        }
        // reduce perfect powers: ln(m^k) = k ln(m)
        let (reduced_q, mult) = reduce_power(&q);
        q = reduced_q;
        c *= BigRational::from_integer(BigInt::from(mult));
        match terms.iter_mut().find(|(_, arg)| *arg == q) {
            Some((coeff, _)) => *coeff += c,
            None => terms.push((c, q)),
        }
    }
    terms.retain(|(c, _)| !c.is_zero());
    terms.sort_by(|x, y| x.1.cmp(&y.1));
    if terms.is_empty() {
        LogLinOrRational::Rational(r)
    } else {
        LogLinOrRational::LogLin(LogLin { r, terms })
    }
}

/// If `q = m^k` for integers `k in 2..=6`, return `(m, k)`; otherwise `(q, 1)`.
fn reduce_power(q: &BigRational) -> (BigRational, u32) {
    for k in (2u32..=6).rev() {
        let rn = q.numer().nth_root(k);
        let rd = q.denom().nth_root(k);
        if rn.pow(k) == *q.numer() && rd.pow(k) == *q.denom() {
            let base = BigRational::new(rn, rd);
            if !base.is_one() {
                return (base, k);
            }
        }
    }
    (q.clone(), 1)
}

impl LogLin {
    pub fn add_rational(&self, r: &BigRational) -> LogLin {
        LogLin {
            r: &self.r + r,
            terms: self.terms.clone(),
        }
    }

    pub fn mul_rational(&self, c: &BigRational) -> LogLinOrRational {
        make_loglin(
            &self.r * c,
            self.terms
                .iter()
                .map(|(coeff, q)| (coeff * c, q.clone()))
                .collect(),
        )
    }

    pub fn add(&self, rhs: &LogLin) -> LogLinOrRational {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        make_loglin(&self.r + &rhs.r, terms)
    }

    pub fn neg(&self) -> LogLin {
        LogLin {
            r: -self.r.clone(),
            terms: self.terms.iter().map(|(c, q)| (-c, q.clone())).collect(),
        }
    }

    /// Exact comparison is possible only when the log parts agree termwise;
    /// the caller falls back to numeric evaluation otherwise.
    pub fn cmp_exact(&self, rhs: &LogLin) -> Option<Ordering> {
        if self.terms == rhs.terms {
            return Some(self.r.cmp(&rhs.r));
        }
        None
    }

    pub fn eval(&self) -> Precise {
        let mut acc = Precise::from_rational(&self.r);
        for (c, q) in &self.terms {
            let lnq = Precise::from_rational(q)
                .ln()
                .expect("canonical log argument is > 1");
            acc = acc.add(&Precise::from_rational(c).mul(&lnq));
        }
        acc
    }
}

impl fmt::Display for LogLin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.r.is_zero() || self.terms.is_empty() {
            write!(f, "{}", self.r)?;
            first = false;
        }
        for (c, q) in &self.terms {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "ln({})", q)?;
            } else {
                write!(f, "{}*ln({})", mag, q)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonical_form() {
        // ln(1/2) = -ln 2, ln(4) = 2 ln 2
        match ln_term(rat(1, 1), rat(1, 2)) {
            LogLinOrRational::LogLin(l) => {
                assert_eq!(l.terms, vec![(rat(-1, 1), rat(2, 1))]);
            }
            _ => panic!(),
        }
        match ln_term(rat(3, 1), rat(4, 1)) {
            LogLinOrRational::LogLin(l) => {
                assert_eq!(l.terms, vec![(rat(6, 1), rat(2, 1))]);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn exact_cancellation() {
        // (1/4)*2ln2 + (1 - (1/2) ln 2) = 1
        let a = match ln_term(rat(1, 2), rat(2, 1)) {
            LogLinOrRational::LogLin(l) => l,
            _ => panic!(),
        };
        let b = match make_loglin(rat(1, 1), vec![(rat(-1, 2), rat(2, 1))]) {
            LogLinOrRational::LogLin(l) => l,
            _ => panic!(),
        };
        match a.add(&b) {
            LogLinOrRational::Rational(r) => assert_eq!(r, rat(1, 1)),
            _ => panic!("log terms should cancel exactly"),
        }
    }

    #[test]
    fn display_reads_naturally() {
        let l = match make_loglin(rat(1, 1), vec![(rat(-1, 2), rat(2, 1))]) {
            LogLinOrRational::LogLin(l) => l,
            _ => panic!(),
        };
        assert_eq!(format!("{}", l), "1 - 1/2*ln(2)");
    }
}
