//! Rational-coefficient polynomials with exact root isolation.
//!
//! Used to decide nonnegativity of a density polynomial on an interval with
//! exact certainty: isolate the distinct real roots with Sturm sequences and
//! check signs at sample points between them.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial with ascending rational coefficients; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.scale(&-BigRational::one()))
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division: `(quotient, remainder)` with `deg r < deg rhs`.
    pub fn divmod(&self, rhs: &Poly) -> (Poly, Poly) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dr = rhs.degree();
        let lead = rhs.coeffs.last().expect("nonzero divisor").clone();
        if rem.len() <= dr {
            return (Poly::zero(), Poly::new(rem));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dr];
        while rem.len() > dr && !rem.iter().all(|c| c.is_zero()) {
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dr {
                break;
            }
            let k = rem.len() - 1 - dr;
            let f = rem.last().expect("nonempty") / &lead;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let idx = k + j;
                let sub = &f * b;
                rem[idx] -= sub;
            }
            quot[k] = f;
            rem.pop();
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact division by `(x - root)`; the caller guarantees `root` is a root.
    pub fn deflate(&self, root: &BigRational) -> Poly {
        let divisor = Poly::new(vec![-root.clone(), BigRational::one()]);
        let (q, r) = self.divmod(&divisor);
        debug_assert!(r.is_zero(), "deflation by a non-root");
        q
    }

    /// `∫_c^d x^k p(x) dx` for integer `k >= 0`, exactly.
    pub fn integrate_moment(&self, k: u32, c: &BigRational, d: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (j, coeff) in self.coeffs.iter().enumerate() {
            let e = j as u32 + k + 1;
            let term = coeff * (pow_rational(d, e) - pow_rational(c, e))
                / BigRational::from_integer(e.into());
            acc += term;
        }
        acc
    }
}

pub fn pow_rational(x: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

fn sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm chain of `p`.
fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().expect("nonempty chain").is_zero() {
        let n = chain.len();
        let (_, r) = chain[n - 2].divmod(&chain[n - 1]);
        chain.push(r.scale(&-BigRational::one()));
    }
    chain.pop();
    chain
}

fn sign_variations(chain: &[Poly], x: &BigRational) -> usize {
    let mut vars = 0usize;
    let mut last = 0i8;
    for q in chain {
        let s = sign(&q.eval(x));
        if s != 0 {
            if last != 0 && s != last {
                vars += 1;
            }
            last = s;
        }
    }
    vars
}

/// Number of distinct real roots of `p` in `(a, b]`, requiring `p(a) != 0`.
fn count_roots(chain: &[Poly], a: &BigRational, b: &BigRational) -> usize {
    sign_variations(chain, a) - sign_variations(chain, b)
}

/// A sample point in `(a, b)` that is not a root of `p`.
fn pick_nonroot_point(p: &Poly, a: &BigRational, b: &BigRational) -> BigRational {
    let span = b - a;
    let denom = p.degree() as i64 + 2;
    for k in 1..=denom + 1 {
        let x = a + &span * BigRational::new(k.into(), (denom + 1).into());
        if x > *a && x < *b && !p.eval(&x).is_zero() {
            return x;
        }
    }
    unreachable!("polynomial cannot vanish at more points than its degree")
}

/// Disjoint ordered intervals `(a_i, b_i)` with `p(a_i) p(b_i) != 0`, each
/// containing exactly one distinct real root of `p`; requires `p(a) != 0`
/// and `p(b) != 0`.
pub fn isolate_roots(p: &Poly, a: &BigRational, b: &BigRational) -> Vec<(BigRational, BigRational)> {
    if p.degree() == 0 || p.is_zero() {
        return vec![];
    }
    let chain = sturm_chain(p);
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let n = count_roots(&chain, &lo, &hi);
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = pick_nonroot_point(p, &lo, &hi);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Exact decision of `p(x) >= 0` for all `x` in `[c, d]`.
pub fn nonneg_on_interval(p: &Poly, c: &BigRational, d: &BigRational) -> bool {
    assert!(c < d, "interval must be nondegenerate");
    if p.is_zero() {
        return true;
    }
    // strip roots at the endpoints: p = (x-c)^j (x-d)^k q with the sign of
    // (x-d)^k on the interior equal to (-1)^k
    let mut q = p.clone();
    while q.eval(c).is_zero() {
        q = q.deflate(c);
        if q.is_zero() {
            return true;
        }
    }
    let mut flip = false;
    while q.eval(d).is_zero() {
        q = q.deflate(d);
        flip = !flip;
    }
    if flip {
        q = q.scale(&-BigRational::one());
    }
    if q.eval(c).is_negative() || q.eval(d).is_negative() {
        return false;
    }
    let isolated = isolate_roots(&q, c, d);
    // sign is constant between consecutive distinct roots; sample each gap
    let mut boundaries = vec![c.clone()];
    for (lo, hi) in &isolated {
        boundaries.push(lo.clone());
        boundaries.push(hi.clone());
    }
    boundaries.push(d.clone());
    for w in boundaries.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        if lo >= hi {
            continue;
        }
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        if q.eval(&mid).is_negative() {
            return false;
        }
        if q.eval(lo).is_negative() || q.eval(hi).is_negative() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn poly(cs: &[(i64, i64)]) -> Poly {
        Poly::new(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn divmod_and_eval() {
        // (x^2 - 1) / (x - 1) = x + 1
        let p = poly(&[(-1, 1), (0, 1), (1, 1)]);
        let d = poly(&[(-1, 1), (1, 1)]);
        let (q, r) = p.divmod(&d);
        assert!(r.is_zero());
        assert_eq!(q, poly(&[(1, 1), (1, 1)]));
    }

    #[test]
    fn root_isolation_quadratic() {
        // x^2 - 2: roots ±sqrt(2); isolate in (0, 2)
        let p = poly(&[(-2, 1), (0, 1), (1, 1)]);
        let roots = isolate_roots(&p, &rat(0, 1), &rat(2, 1));
        assert_eq!(roots.len(), 1);
        let (lo, hi) = &roots[0];
        assert!(p.eval(lo).is_negative() != p.eval(hi).is_negative());
    }

    #[test]
    fn nonneg_decisions() {
        // x^2 - x = x(x-1): zero at both ends of [0,1], negative inside
        let p = poly(&[(0, 1), (-1, 1), (1, 1)]);
        assert!(!nonneg_on_interval(&p, &rat(0, 1), &rat(1, 1)));
        // (x - 1/2)^2 >= 0 everywhere
        let q = poly(&[(1, 4), (-1, 1), (1, 1)]);
        assert!(nonneg_on_interval(&q, &rat(0, 1), &rat(1, 1)));
        // 3x^2 on [0,1]
        let r = poly(&[(0, 1), (0, 1), (3, 1)]);
        assert!(nonneg_on_interval(&r, &rat(0, 1), &rat(1, 1)));
        // x - 1/4 is negative near 0 on [0,1]
        let s = poly(&[(-1, 4), (1, 1)]);
        assert!(!nonneg_on_interval(&s, &rat(0, 1), &rat(1, 1)));
        // degree-4 with double root inside: (x-1/3)^2 (x+1) (2-x) on [0,1]
        let t = poly(&[(1, 9), (-2, 3), (1, 1)])
            .mul(&poly(&[(1, 1), (1, 1)]))
            .mul(&poly(&[(2, 1), (-1, 1)]));
        assert!(nonneg_on_interval(&t, &rat(0, 1), &rat(1, 1)));
        // flip one factor: (x-1/3)^2 (x+1) (x-2) <= 0
        let u = poly(&[(1, 9), (-2, 3), (1, 1)])
            .mul(&poly(&[(1, 1), (1, 1)]))
            .mul(&poly(&[(-2, 1), (1, 1)]));
        assert!(!nonneg_on_interval(&u, &rat(0, 1), &rat(1, 1)));
    }

    #[test]
    fn moment_integrals() {
        // ∫_0^1 x^k * 2x dx = 2/(k+2)
        let p = poly(&[(0, 1), (2, 1)]);
        for k in 0..6u32 {
            assert_eq!(
                p.integrate_moment(k, &rat(0, 1), &rat(1, 1)),
                rat(2, k as i64 + 2)
            );
        }
        // ∫_{1/2}^1 2 dx = 1
        let c = poly(&[(2, 1)]);
        assert_eq!(c.integrate_moment(0, &rat(1, 2), &rat(1, 1)), rat(1, 1));
    }
}
