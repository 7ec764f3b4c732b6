//! One-variable weighted shifts.
//!
//! A shift is stored as a finite head of squared weights plus a tail rule:
//! a constant, a two-step recursion `α_(n+1)² = φ₀/α_n² + φ₁` on squared
//! weights, or the weights generated by a measure. Moments are
//! `γ_0 = 1`, `γ_k = α_0²···α_(k-1)²`; a shift is subnormal exactly when its
//! moments come from a probability measure, and hyponormal exactly when the
//! weights are nondecreasing.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ShiftError};
use crate::measures::{stampfli_completion, Measure1D, NegMomentValue};
use crate::report::{Scope, Verdict, Witness};
use crate::scalar::Scalar;

/// How the weight sequence continues after the head.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tail {
    Constant { value_sq: Scalar },
    Recursive { phi0: Scalar, phi1: Scalar },
    Measure { measure: Measure1D, offset: u32 },
}

/// Number of generated terms validated eagerly for recursive tails.
pub const RECURSIVE_VALIDATION_TERMS: usize = 200;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightSeq1D {
    head: Vec<Scalar>,
    tail: Tail,
    norm_bound_sq: Scalar,
}

impl WeightSeq1D {
    pub fn new(head: Vec<Scalar>, tail: Tail) -> Result<Self> {
        for (i, w) in head.iter().enumerate() {
            if !w.is_positive() {
                return Err(ShiftError::Invariant(format!(
                    "squared weight at index {i} is not positive"
                )));
            }
        }
        let mut bound = head
            .iter()
            .fold(Scalar::zero(), |acc, w| if w.gt(&acc) { w.clone() } else { acc });
        match &tail {
            Tail::Constant { value_sq } => {
                if !value_sq.is_positive() {
                    return Err(ShiftError::Invariant(
                        "constant tail must be positive".into(),
                    ));
                }
                if value_sq.gt(&bound) {
                    bound = value_sq.clone();
                }
            }
            Tail::Recursive { phi0, phi1 } => {
                if head.is_empty() {
                    return Err(ShiftError::Precondition(
                        "recursive tail needs a seed weight in the head".into(),
                    ));
                }
                let mut x = head.last().expect("nonempty head").clone();
                for n in 0..RECURSIVE_VALIDATION_TERMS {
                    x = phi0.div_scalar(&x).add_scalar(phi1);
                    if !x.is_positive() {
                        return Err(ShiftError::Invariant(format!(
                            "recursive tail turns nonpositive at generated term {n}"
                        )));
                    }
                    if x.gt(&bound) {
                        bound = x.clone();
                    }
                }
                // limit of the recursion, when it converges, is the larger
                // root of t² - φ₁ t - φ₀
                let disc = phi1.pow(2).add_scalar(&Scalar::int(4).mul_scalar(phi0));
                if disc.is_positive() {
                    let t1 = phi1
                        .add_scalar(&disc.sqrt()?)
                        .div_scalar(&Scalar::int(2));
                    if t1.gt(&bound) {
                        bound = t1;
                    }
                }
            }
            Tail::Measure { measure, offset } => {
                let restricted = measure.restrict_rescale(*offset)?;
                let sup = support_sup(&restricted);
                if sup.gt(&bound) {
                    bound = sup;
                }
            }
        }
        Ok(WeightSeq1D {
            head,
            tail,
            norm_bound_sq: bound,
        })
    }

    /// `shift(1, 1, 1, ...)`, the unweighted unilateral shift.
    pub fn unilateral() -> Self {
        WeightSeq1D::new(
            vec![],
            Tail::Constant {
                value_sq: Scalar::one(),
            },
        )
        .expect("constant tail")
    }

    /// `shift(a, 1, 1, ...)` for `0 < a ≤ 1` (squared input).
    pub fn s_a(a_sq: Scalar) -> Result<Self> {
        WeightSeq1D::new(
            vec![a_sq],
            Tail::Constant {
                value_sq: Scalar::one(),
            },
        )
    }

    /// The shift whose Berger measure is the given probability measure.
    pub fn from_measure(m: Measure1D) -> Result<Self> {
        if !m.is_probability() {
            return Err(ShiftError::Precondition(format!(
                "measure-generated shift needs a probability measure (mass = {})",
                m.mass()
            )));
        }
        if !m.moment(1).is_positive() {
            return Err(ShiftError::DegenerateMeasure(
                "first moment must be positive".into(),
            ));
        }
        WeightSeq1D::new(vec![], Tail::Measure { measure: m, offset: 0 })
    }

    pub fn head(&self) -> &[Scalar] {
        &self.head
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn norm_bound_sq(&self) -> &Scalar {
        &self.norm_bound_sq
    }

    /// Squared weights `α_0², ..., α_(n-1)²`.
    pub fn weights_sq(&self, n: usize) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(n);
        out.extend(self.head.iter().take(n).cloned());
        let mut k = out.len();
        match &self.tail {
            Tail::Constant { value_sq } => {
                while k < n {
                    out.push(value_sq.clone());
                    k += 1;
                }
            }
            Tail::Recursive { phi0, phi1 } => {
                let mut x = self
                    .head
                    .last()
                    .expect("recursive tails have a seed")
                    .clone();
                // regenerate from the seed even when the head is truncated
                while k < n {
                    x = phi0.div_scalar(&x).add_scalar(phi1);
                    out.push(x.clone());
                    k += 1;
                }
            }
            Tail::Measure { measure, offset } => {
                while k < n {
                    let idx = (k - self.head.len()) as u32 + offset;
                    let num = measure.moment(idx + 1);
                    let den = measure.moment(idx);
                    out.push(num.div_scalar(&den));
                    k += 1;
                }
            }
        }
        out
    }

    pub fn weight_sq(&self, n: usize) -> Scalar {
        self.weights_sq(n + 1)
            .pop()
            .expect("requested weight exists")
    }

    /// Moment `γ_k = α_0²···α_(k-1)²`, `γ_0 = 1`.
    pub fn gamma(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for w in self.weights_sq(k as usize) {
            acc = acc.mul_scalar(&w);
        }
        acc
    }

    /// Hyponormality: the squared weights are nondecreasing. Constant and
    /// measure tails give a decided verdict (moment ratios of a measure are
    /// nondecreasing); recursive tails are decided by the sign of
    /// `seed² - φ₁ seed - φ₀`, which places the seed relative to the fixed
    /// points of the recursion.
    pub fn is_hyponormal(&self, horizon: u32) -> Verdict {
        let n = (self.head.len() + 2).max(horizon as usize);
        let w = self.weights_sq(n);
        let mut exact = true;
        for i in 0..w.len() - 1 {
            let c = w[i].compare(&w[i + 1]);
            exact &= c.exact;
            if c.ord == Ordering::Greater {
                return Verdict::fail(Scope::Decided, exact, Witness::Index(i as u32));
            }
        }
        match &self.tail {
            Tail::Constant { .. } => Verdict::pass(Scope::Decided, exact),
            Tail::Measure { .. } => Verdict::pass(Scope::Decided, exact),
            Tail::Recursive { phi0, phi1 } => {
                let seed = self.head.last().expect("seed exists");
                let p = seed.pow(2).sub_scalar(&phi1.mul_scalar(seed)).sub_scalar(phi0);
                let c = p.compare(&Scalar::zero());
                exact &= c.exact;
                if c.ord == Ordering::Greater {
                    // seed above the attracting fixed point: the generated
                    // sequence decreases somewhere
                    Verdict::fail(
                        Scope::UpToHorizon(horizon),
                        exact,
                        Witness::Condition("recursive tail seed above its fixed point".into()),
                    )
                } else {
                    Verdict::pass(Scope::Decided, exact)
                }
            }
        }
    }
}

fn support_sup(m: &Measure1D) -> Scalar {
    let mut sup = Scalar::zero();
    for a in m.atoms() {
        if a.t.gt(&sup) {
            sup = a.t.clone();
        }
    }
    for p in m.ac_parts() {
        if p.hi.gt(&sup) {
            sup = p.hi.clone();
        }
    }
    sup
}

/// Subnormal backward extension: prepend squared weight `a0sq` to the shift
/// with Berger measure `mu_m`. Succeeds iff `1/t` is integrable and
/// `a0sq ≤ (‖1/t‖)^(-1)`; the extended Berger measure is
/// `(a0sq/t) dμ_M + (1 - a0sq·‖1/t‖) δ₀`.
pub fn backward_extend_1d(mu_m: &Measure1D, a0sq: &Scalar) -> Result<Measure1D> {
    if !mu_m.is_probability() {
        return Err(ShiftError::Precondition(format!(
            "backward extension needs a probability measure (mass = {})",
            mu_m.mass()
        )));
    }
    if !a0sq.is_positive() {
        return Err(ShiftError::Precondition(
            "new squared weight must be positive".into(),
        ));
    }
    let norm = match mu_m.neg_moment(1) {
        NegMomentValue::Infinite => {
            return Err(ShiftError::NotExtendable(
                "1/t is not integrable (measure charges 0 or diverges there)".into(),
            ))
        }
        NegMomentValue::Finite(v) => v,
    };
    let bound = norm.recip();
    if a0sq.gt(&bound) {
        return Err(ShiftError::ThresholdViolation(format!(
            "a0² = {} exceeds the extension bound (‖1/t‖)^(-1) = {}",
            a0sq, bound
        )));
    }
    let scaled = mu_m.div_t_dropping_zero()?.scale(a0sq)?;
    let lambda = Scalar::one().sub_scalar(&a0sq.mul_scalar(&norm));
    if lambda.compare(&Scalar::zero()).ord == Ordering::Greater {
        scaled.add_measure(&Measure1D::dirac(Scalar::zero()).scale(&lambda)?)
    } else {
        Ok(scaled)
    }
}

/// Check `γ_k(w) = ∫ t^k dm` for `k ≤ up_to`. Exact data is compared
/// exactly; numeric data at relative tolerance 1e-10 per moment (moments
/// shrink or grow geometrically, so an absolute tolerance would be vacuous).
pub fn verify_moments(w: &WeightSeq1D, m: &Measure1D, up_to: u32) -> Verdict {
    let mut exact = true;
    for k in 0..=up_to {
        let lhs = w.gamma(k);
        let rhs = m.moment(k);
        let c = lhs.compare(&rhs);
        exact &= c.exact;
        let ok = if c.exact {
            c.ord == Ordering::Equal
        } else {
            let diff = lhs.sub_scalar(&rhs).abs();
            let scale = rhs.abs();
            diff.le(&scale.mul_scalar(&Scalar::ratio(1, 10_000_000_000)))
        };
        if !ok {
            return Verdict::fail(Scope::UpToHorizon(up_to), exact, Witness::Index(k));
        }
    }
    Verdict::pass(Scope::UpToHorizon(up_to), exact)
}

/// Extremal value of the restriction of the completion through
/// `(a0, a1, a2)` (squared inputs): build the two-atom completion, drop the
/// first weight, and return the extremal value of the restricted measure.
/// Equal to `sqrt(a0sq)` exactly.
pub fn eta_ext_of_restriction(a0sq: &Scalar, a1sq: &Scalar, a2sq: &Scalar) -> Result<Scalar> {
    let completion = stampfli_completion(a0sq, a1sq, a2sq)?;
    let restricted = completion.measure.restrict_rescale(1)?;
    Ok(restricted.ext_value())
}
