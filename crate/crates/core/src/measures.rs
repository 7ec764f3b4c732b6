//! Positive measures on the half line and finite product-sums of them on the
//! quarter plane.
//!
//! A [`Measure1D`] is a finite atomic part plus finitely many absolutely
//! continuous parts whose densities are Laurent polynomials `sum_j c_j t^j`
//! with exponents down to `t^-2` (negative exponents arise from backward
//! extensions, which divide a density by `t`). A [`Measure2D`] is a positive
//! combination of products of one-variable measures; that is the shape every
//! Berger measure in this library takes.
//!
//! Moments `∫ t^k dm` of rational data are exact rationals; negative moments
//! `∫ t^-p dm` produce exact `rational + rational·ln(rational)` values, kept
//! symbolic until a comparison or a display forces numeric collapse.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ShiftError};
use crate::poly::{nonneg_on_interval, Poly};
use crate::scalar::Scalar;

/// Point mass: location `t >= 0`, density `rho > 0`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Atom {
    pub t: Scalar,
    pub rho: Scalar,
}

/// Absolutely continuous part on `[lo, hi]` with density
/// `sum_j coeffs[j] * t^(min_exp + j)`.
#[derive(Clone, Debug)]
pub struct AcPart {
    pub lo: Scalar,
    pub hi: Scalar,
    pub min_exp: i32,
    pub coeffs: Vec<Scalar>,
}

/// Lowest Laurent exponent supported in densities.
const MIN_SUPPORTED_EXP: i32 = -2;

#[derive(Clone, Debug)]
pub struct Measure1D {
    atoms: Vec<Atom>,
    ac_parts: Vec<AcPart>,
    total_mass: Scalar,
}

/// Finite value or a divergent integral. Finite exact values of negative
/// moments are log-linear scalars (`rational + rational*ln(rational)`).
#[derive(Clone, Debug, PartialEq)]
pub enum NegMomentValue {
    Finite(Scalar),
    Infinite,
}

impl NegMomentValue {
    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            NegMomentValue::Finite(v) => Some(v),
            NegMomentValue::Infinite => None,
        }
    }
}

/// Verdict of the partial order on measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ternary {
    True,
    False,
    Undecided,
}

/// `∫_lo^hi t^j dt`, `None` when divergent.
fn power_integral(lo: &Scalar, hi: &Scalar, j: i64) -> Option<Scalar> {
    if j >= 0 {
        let e = (j + 1) as u32;
        let num = hi.pow(e).sub_scalar(&lo.pow(e));
        return Some(num.div_scalar(&Scalar::int(j + 1)));
    }
    if lo.is_exact_zero() || lo.is_zero() {
        return None;
    }
    if j == -1 {
        let ratio = hi.div_scalar(lo);
        return Some(ratio.ln().expect("positive ratio"));
    }
    // j <= -2: antiderivative t^(j+1)/(j+1)
    let e = (-(j + 1)) as u32;
    let num = hi.recip().pow(e).sub_scalar(&lo.recip().pow(e));
    Some(num.div_scalar(&Scalar::int(j + 1)))
}

impl AcPart {
    /// `∫ t^k · density dt` over the part, `None` when divergent.
    fn moment(&self, k: i64) -> Option<Scalar> {
        let mut acc = Scalar::zero();
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            let j = self.min_exp as i64 + idx as i64 + k;
            let term = power_integral(&self.lo, &self.hi, j)?;
            acc = acc.add_scalar(&c.mul_scalar(&term));
        }
        Some(acc)
    }

    /// Density as an ordinary polynomial after multiplying by `t^(-min_exp)`,
    /// available when every coefficient is rational.
    fn rational_poly_numerator(&self) -> Option<Poly> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.as_rational()?.clone());
        }
        Some(Poly::new(coeffs))
    }

    fn scale(&self, c: &Scalar) -> AcPart {
        AcPart {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|a| a.mul_scalar(c)).collect(),
        }
    }

    /// Multiply the density by `t^h`.
    fn shift_exponent(&self, h: i32) -> AcPart {
        AcPart {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            min_exp: self.min_exp + h,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Normalize so that `min_exp` carries no leading zero coefficients and
    /// is never above 0.
    fn normalized(mut self) -> AcPart {
        while !self.coeffs.is_empty() && self.coeffs[0].is_exact_zero() {
            self.coeffs.remove(0);
            self.min_exp += 1;
        }
        while self.min_exp > 0 {
            self.coeffs.insert(0, Scalar::zero());
            self.min_exp -= 1;
        }
        while self.coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            self.coeffs.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exact_zero())
    }

    fn densities_are_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_rational().is_some())
    }

    /// Exact or sampled nonnegativity of the density on `[lo, hi]`.
    ///
    /// Multiplying by `t^(-min_exp) > 0` turns the Laurent density into a
    /// plain polynomial with the same sign pattern (the constructor rejects
    /// negative exponents on intervals reaching 0, so `lo > 0` there).
    fn density_nonneg(&self) -> Result<bool> {
        if let (Some(poly), Some(lo), Some(hi)) = (
            self.rational_poly_numerator(),
            self.lo.as_rational(),
            self.hi.as_rational(),
        ) {
            return Ok(poly.is_zero() || nonneg_on_interval(&poly, lo, hi));
        }
        // numeric densities: sample on a fixed grid
        let n = 64u32;
        let span = self.hi.sub_scalar(&self.lo);
        for i in 1..=n {
            let x = self
                .lo
                .add_scalar(&span.mul_scalar(&Scalar::ratio(i as i64, n as i64)));
            let mut val = Scalar::zero();
            for (idx, c) in self.coeffs.iter().enumerate() {
                let j = self.min_exp + idx as i32;
                let p = if j >= 0 {
                    x.pow(j as u32)
                } else {
                    x.recip().pow((-j) as u32)
                };
                val = val.add_scalar(&c.mul_scalar(&p));
            }
            if val.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl Measure1D {
    /// Empty (zero) measure.
    pub fn zero() -> Self {
        Measure1D {
            atoms: vec![],
            ac_parts: vec![],
            total_mass: Scalar::zero(),
        }
    }

    /// Build and validate: atom locations nonnegative and distinct, densities
    /// positive, intervals nonoverlapping, densities nonnegative on their
    /// intervals, Laurent exponents within the supported range.
    pub fn new(atoms: Vec<Atom>, ac_parts: Vec<AcPart>) -> Result<Self> {
        let mut kept_atoms: Vec<Atom> = Vec::new();
        for a in atoms {
            match a.rho.compare(&Scalar::zero()).ord {
                Ordering::Less => {
                    return Err(ShiftError::Invariant(format!(
                        "atom density {} is not strictly positive",
                        a.rho
                    )))
                }
                Ordering::Equal => continue,
                Ordering::Greater => {}
            }
            if a.t.is_negative() {
                return Err(ShiftError::Invariant(format!(
                    "atom location {} is negative",
                    a.t
                )));
            }
            if kept_atoms
                .iter()
                .any(|b| b.t.compare(&a.t).ord == Ordering::Equal)
            {
                return Err(ShiftError::Invariant(format!(
                    "duplicate atom location {}",
                    a.t
                )));
            }
            kept_atoms.push(a);
        }
        kept_atoms.sort_by(|a, b| a.t.compare(&b.t).ord);

        let mut kept_ac: Vec<AcPart> = Vec::new();
        for part in ac_parts {
            let part = part.normalized();
            if part.is_zero() {
                continue;
            }
            if part.min_exp < MIN_SUPPORTED_EXP {
                return Err(ShiftError::Unsupported(format!(
                    "density exponent t^{} below supported range",
                    part.min_exp
                )));
            }
            if part.lo.is_negative() || part.lo.compare(&part.hi).ord != Ordering::Less {
                return Err(ShiftError::Invariant(
                    "interval must satisfy 0 <= lo < hi".into(),
                ));
            }
            if part.min_exp < 0 && part.lo.is_zero() {
                return Err(ShiftError::Invariant(
                    "density with negative exponents on an interval reaching 0 has infinite mass"
                        .into(),
                ));
            }
            if !part.density_nonneg()? {
                return Err(ShiftError::Invariant(
                    "density is negative somewhere on its interval".into(),
                ));
            }
            kept_ac.push(part);
        }
        kept_ac.sort_by(|a, b| a.lo.compare(&b.lo).ord);
        for w in kept_ac.windows(2) {
            if w[0].hi.compare(&w[1].lo).ord == Ordering::Greater {
                return Err(ShiftError::Invariant(
                    "absolutely continuous intervals overlap".into(),
                ));
            }
        }

        let mut m = Measure1D {
            atoms: kept_atoms,
            ac_parts: kept_ac,
            total_mass: Scalar::zero(),
        };
        m.total_mass = m.compute_mass()?;
        Ok(m)
    }

    pub fn dirac(t: Scalar) -> Self {
        Measure1D::new(
            vec![Atom {
                t,
                rho: Scalar::one(),
            }],
            vec![],
        )
        .expect("point mass is valid")
    }

    pub fn atomic(pairs: Vec<(Scalar, Scalar)>) -> Result<Self> {
        Measure1D::new(
            pairs.into_iter().map(|(t, rho)| Atom { t, rho }).collect(),
            vec![],
        )
    }

    /// Polynomial density `coeffs[0] + coeffs[1] t + ...` on `[lo, hi]`.
    pub fn ac_poly(lo: Scalar, hi: Scalar, coeffs: Vec<Scalar>) -> Result<Self> {
        Measure1D::new(
            vec![],
            vec![AcPart {
                lo,
                hi,
                min_exp: 0,
                coeffs,
            }],
        )
    }

    /// Lebesgue measure `dt` on `[0, 1]`.
    pub fn lebesgue01() -> Self {
        Measure1D::ac_poly(Scalar::zero(), Scalar::one(), vec![Scalar::one()])
            .expect("valid density")
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn ac_parts(&self) -> &[AcPart] {
        &self.ac_parts
    }

    pub fn mass(&self) -> &Scalar {
        &self.total_mass
    }

    pub fn is_probability(&self) -> bool {
        self.total_mass.compare(&Scalar::one()).ord == Ordering::Equal
    }

    pub fn is_zero_measure(&self) -> bool {
        self.atoms.is_empty() && self.ac_parts.is_empty()
    }

    fn compute_mass(&self) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for a in &self.atoms {
            acc = acc.add_scalar(&a.rho);
        }
        for part in &self.ac_parts {
            let m = part.moment(0).ok_or_else(|| {
                ShiftError::Invariant("absolutely continuous part has infinite mass".into())
            })?;
            acc = acc.add_scalar(&m);
        }
        Ok(acc)
    }

    /// `∫ t^k dm`; exact rational for rational data and `k >= 1`, and for
    /// `k = 0` exact up to symbolic log terms from `1/t` density parts.
    pub fn moment(&self, k: u32) -> Scalar {
        let mut acc = Scalar::zero();
        for a in &self.atoms {
            acc = acc.add_scalar(&a.rho.mul_scalar(&a.t.pow(k)));
        }
        for part in &self.ac_parts {
            let m = part
                .moment(k as i64)
                .expect("validated parts have finite moments");
            acc = acc.add_scalar(&m);
        }
        acc
    }

    /// `∫ t^-p dm` for `p` in `{1, 2}`; infinity is a value, not an error.
    pub fn neg_moment(&self, p: u8) -> NegMomentValue {
        assert!(p == 1 || p == 2, "only t^-1 and t^-2 moments are defined");
        let mut acc = Scalar::zero();
        for a in &self.atoms {
            if a.t.is_zero() {
                return NegMomentValue::Infinite;
            }
            acc = acc.add_scalar(&a.rho.div_scalar(&a.t.pow(p as u32)));
        }
        for part in &self.ac_parts {
            match part.moment(-(p as i64)) {
                Some(m) => acc = acc.add_scalar(&m),
                None => return NegMomentValue::Infinite,
            }
        }
        NegMomentValue::Finite(acc)
    }

    /// Density of the atom at `t`, zero when absent.
    pub fn atom_at(&self, t: &Scalar) -> Scalar {
        self.atoms
            .iter()
            .find(|a| a.t.compare(t).ord == Ordering::Equal)
            .map(|a| a.rho.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// The probability measure `(1/γ_h) t^h dm`; atoms at 0 drop out.
    pub fn restrict_rescale(&self, h: u32) -> Result<Measure1D> {
        let gamma_h = self.moment(h);
        if !gamma_h.is_positive() {
            return Err(ShiftError::DegenerateMeasure(format!(
                "moment of order {h} is not positive"
            )));
        }
        let inv = gamma_h.recip();
        let atoms = self
            .atoms
            .iter()
            .filter(|a| !(h > 0 && a.t.is_zero()))
            .map(|a| Atom {
                t: a.t.clone(),
                rho: a.rho.mul_scalar(&a.t.pow(h)).mul_scalar(&inv),
            })
            .collect();
        let ac = self
            .ac_parts
            .iter()
            .map(|part| part.shift_exponent(h as i32).scale(&inv))
            .collect();
        Measure1D::new(atoms, ac)
    }

    /// Largest admissible new weight (not squared) for backward extension:
    /// `(‖1/t‖)^(-1/2)`, with the convention that a non-integrable `1/t`
    /// gives 0.
    pub fn ext_value(&self) -> Scalar {
        match self.neg_moment(1) {
            NegMomentValue::Infinite => Scalar::zero(),
            NegMomentValue::Finite(v) => v
                .recip()
                .sqrt()
                .expect("norm of 1/t is positive for a nonzero measure"),
        }
    }

    /// Squared weights `γ_(k+1)/γ_k` for `k = 0..n-1` of the shift whose
    /// Berger measure is this probability measure.
    pub fn berger_weights(&self, n: u32) -> Result<Vec<Scalar>> {
        if !self.is_probability() {
            return Err(ShiftError::Precondition(format!(
                "Berger weights need a probability measure (mass = {})",
                self.total_mass
            )));
        }
        let mut out = Vec::with_capacity(n as usize);
        let mut prev = self.moment(0);
        for k in 1..=n {
            let next = self.moment(k);
            if !prev.is_positive() {
                return Err(ShiftError::DegenerateMeasure(format!(
                    "moment of order {} vanishes",
                    k - 1
                )));
            }
            out.push(next.div_scalar(&prev));
            prev = next;
        }
        Ok(out)
    }

    /// Positive sum of two measures, merging atoms and fragmenting
    /// overlapping intervals.
    pub fn add_measure(&self, rhs: &Measure1D) -> Result<Measure1D> {
        let mut atoms: Vec<Atom> = self.atoms.clone();
        for b in &rhs.atoms {
            match atoms
                .iter_mut()
                .find(|a| a.t.compare(&b.t).ord == Ordering::Equal)
            {
                Some(a) => a.rho = a.rho.add_scalar(&b.rho),
                None => atoms.push(b.clone()),
            }
        }
        let ac = merge_ac_parts(&self.ac_parts, &rhs.ac_parts, false)?;
        Measure1D::new(atoms, ac)
    }

    /// `self - rhs` when the difference is again a positive measure; errors
    /// otherwise.
    pub fn sub_measure(&self, rhs: &Measure1D) -> Result<Measure1D> {
        let mut atoms: Vec<Atom> = self.atoms.clone();
        for b in &rhs.atoms {
            match atoms
                .iter_mut()
                .find(|a| a.t.compare(&b.t).ord == Ordering::Equal)
            {
                Some(a) => {
                    let diff = a.rho.sub_scalar(&b.rho);
                    if diff.is_negative() {
                        return Err(ShiftError::Invariant(format!(
                            "difference density at {} is negative",
                            a.t
                        )));
                    }
                    a.rho = diff;
                }
                None => {
                    return Err(ShiftError::Invariant(format!(
                        "no atom at {} to subtract from",
                        b.t
                    )))
                }
            }
        }
        atoms.retain(|a| a.rho.compare(&Scalar::zero()).ord == Ordering::Greater);
        let ac = merge_ac_parts(&self.ac_parts, &rhs.ac_parts, true)?;
        Measure1D::new(atoms, ac)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Measure1D> {
        if c.is_negative() {
            return Err(ShiftError::Invariant("negative scaling of a measure".into()));
        }
        if c.is_exact_zero() {
            return Ok(Measure1D::zero());
        }
        Measure1D::new(
            self.atoms
                .iter()
                .map(|a| Atom {
                    t: a.t.clone(),
                    rho: a.rho.mul_scalar(c),
                })
                .collect(),
            self.ac_parts.iter().map(|p| p.scale(c)).collect(),
        )
    }

    /// Divide by the variable: atoms `(t, ρ) -> (t, ρ/t)` with atoms at 0
    /// removed, densities `f(t) -> f(t)/t`.
    pub fn div_t_dropping_zero(&self) -> Result<Measure1D> {
        let atoms = self
            .atoms
            .iter()
            .filter(|a| !a.t.is_zero())
            .map(|a| Atom {
                t: a.t.clone(),
                rho: a.rho.div_scalar(&a.t),
            })
            .collect();
        let ac = self
            .ac_parts
            .iter()
            .map(|p| p.shift_exponent(-1))
            .collect::<Vec<_>>();
        Measure1D::new(atoms, ac)
    }

    /// `∫ (1/t) dm` over `t > 0`, ignoring any atom at 0.
    pub fn neg_moment_excluding_zero(&self) -> NegMomentValue {
        let mut acc = Scalar::zero();
        for a in &self.atoms {
            if a.t.is_zero() {
                continue;
            }
            acc = acc.add_scalar(&a.rho.div_scalar(&a.t));
        }
        for part in &self.ac_parts {
            match part.moment(-1) {
                Some(m) => acc = acc.add_scalar(&m),
                None => return NegMomentValue::Infinite,
            }
        }
        NegMomentValue::Finite(acc)
    }
}

/// Fragment two ac-part lists over the common endpoint grid and combine
/// (sum or difference) densities per fragment. With `subtract`, every rhs
/// fragment must be matched and the result must stay nonnegative (validated
/// later by the constructor).
fn merge_ac_parts(lhs: &[AcPart], rhs: &[AcPart], subtract: bool) -> Result<Vec<AcPart>> {
    if rhs.is_empty() {
        return Ok(lhs.to_vec());
    }
    if lhs.is_empty() && subtract {
        return Err(ShiftError::Invariant(
            "cannot subtract a density from a purely atomic measure".into(),
        ));
    }
    // collect endpoints
    let mut points: Vec<Scalar> = Vec::new();
    for p in lhs.iter().chain(rhs.iter()) {
        for v in [&p.lo, &p.hi] {
            if !points.iter().any(|q| q.compare(v).ord == Ordering::Equal) {
                points.push(v.clone());
            }
        }
    }
    points.sort_by(|a, b| a.compare(b).ord);

    let mut out: Vec<AcPart> = Vec::new();
    for w in points.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let covers = |p: &AcPart| {
            p.lo.compare(lo).ord != Ordering::Greater && p.hi.compare(hi).ord != Ordering::Less
        };
        let left: Vec<&AcPart> = lhs.iter().filter(|p| covers(p)).collect();
        let right: Vec<&AcPart> = rhs.iter().filter(|p| covers(p)).collect();
        if right.is_empty() && left.is_empty() {
            continue;
        }
        if subtract && !right.is_empty() && left.is_empty() {
            return Err(ShiftError::Invariant(
                "subtrahend density not covered by minuend".into(),
            ));
        }
        let min_exp = left
            .iter()
            .chain(right.iter())
            .map(|p| p.min_exp)
            .min()
            .expect("nonempty");
        let max_exp = left
            .iter()
            .chain(right.iter())
            .map(|p| p.min_exp + p.coeffs.len() as i32 - 1)
            .max()
            .expect("nonempty");
        let mut coeffs = vec![Scalar::zero(); (max_exp - min_exp + 1) as usize];
        for p in &left {
            for (i, c) in p.coeffs.iter().enumerate() {
                let idx = (p.min_exp + i as i32 - min_exp) as usize;
                coeffs[idx] = coeffs[idx].add_scalar(c);
            }
        }
        for p in &right {
            for (i, c) in p.coeffs.iter().enumerate() {
                let idx = (p.min_exp + i as i32 - min_exp) as usize;
                coeffs[idx] = if subtract {
                    coeffs[idx].sub_scalar(c)
                } else {
                    coeffs[idx].add_scalar(c)
                };
            }
        }
        out.push(
            AcPart {
                lo: lo.clone(),
                hi: hi.clone(),
                min_exp,
                coeffs,
            }
            .normalized(),
        );
    }
    Ok(out.into_iter().filter(|p| !p.is_zero()).collect())
}

/// Partial order `m1 <= m2` on positive measures, decided exactly where the
/// representation allows and `Undecided` otherwise.
pub fn leq(m1: &Measure1D, m2: &Measure1D) -> Ternary {
    // atom domination is necessary regardless of ac parts
    for a in m1.atoms() {
        let bound = m2.atom_at(&a.t);
        if a.rho.compare(&bound).ord == Ordering::Greater {
            return Ternary::False;
        }
    }
    if m1.ac_parts().is_empty() {
        return Ternary::True;
    }
    if m2.ac_parts().is_empty() {
        // m1 carries ac mass where m2 has none
        return Ternary::False;
    }
    match merge_ac_parts(m2.ac_parts(), m1.ac_parts(), true) {
        Err(_) => Ternary::False,
        Ok(diff) => {
            for part in &diff {
                if !part.densities_are_rational()
                    || part.lo.as_rational().is_none()
                    || part.hi.as_rational().is_none()
                {
                    return Ternary::Undecided;
                }
                let poly = part.rational_poly_numerator().expect("rational coeffs");
                let lo = part.lo.as_rational().expect("rational endpoint");
                let hi = part.hi.as_rational().expect("rational endpoint");
                if !nonneg_on_interval(&poly, lo, hi) {
                    return Ternary::False;
                }
            }
            Ternary::True
        }
    }
}

// ---------------------------------------------------------------------------
// Stampfli completion
// ---------------------------------------------------------------------------

/// Output of the two-atom completion through three prescribed squared
/// weights: recursion coefficients, atoms, densities, and the measure itself.
#[derive(Clone, Debug)]
pub struct StampfliCompletion {
    pub phi0: Scalar,
    pub phi1: Scalar,
    pub t0: Scalar,
    pub t1: Scalar,
    pub rho0: Scalar,
    pub rho1: Scalar,
    pub measure: Measure1D,
}

/// The unique two-atom probability measure whose moment sequence starts with
/// the moments of `shift(a0, a1, a2)` (inputs squared). The recursion
/// coefficients are
/// `phi0 = -a0² a1² (a2²-a1²)/(a1²-a0²)`, `phi1 = a1² (a2²-a0²)/(a1²-a0²)`,
/// the atoms are the roots of `t² - phi1 t - phi0 = 0`, and the densities
/// solve `rho0 + rho1 = 1`, `rho0 t0 + rho1 t1 = a0²`.
pub fn stampfli_completion(
    a0sq: &Scalar,
    a1sq: &Scalar,
    a2sq: &Scalar,
) -> Result<StampfliCompletion> {
    let zero = Scalar::zero();
    let increasing = zero.compare(a0sq).ord == Ordering::Less
        && a0sq.compare(a1sq).ord == Ordering::Less
        && a1sq.compare(a2sq).ord == Ordering::Less;
    if !increasing {
        return Err(ShiftError::Precondition(
            "stampfli completion needs 0 < a0² < a1² < a2²".into(),
        ));
    }
    let denom = a1sq.sub_scalar(a0sq);
    let phi0 = a0sq
        .mul_scalar(a1sq)
        .mul_scalar(&a2sq.sub_scalar(a1sq))
        .div_scalar(&denom)
        .neg_scalar();
    let phi1 = a1sq.mul_scalar(&a2sq.sub_scalar(a0sq)).div_scalar(&denom);

    let disc = phi1
        .pow(2)
        .add_scalar(&Scalar::int(4).mul_scalar(&phi0));
    let root = disc.sqrt().map_err(|_| {
        ShiftError::Invariant("discriminant of the atom equation is negative".into())
    })?;
    let two = Scalar::int(2);
    let t0 = phi1.sub_scalar(&root).div_scalar(&two);
    let t1 = phi1.add_scalar(&root).div_scalar(&two);

    let spread = t1.sub_scalar(&t0);
    let rho0 = t1.sub_scalar(a0sq).div_scalar(&spread);
    let rho1 = a0sq.sub_scalar(&t0).div_scalar(&spread);
    for rho in [&rho0, &rho1] {
        if !rho.is_positive() || !rho.lt(&Scalar::one()) {
            return Err(ShiftError::Invariant(
                "completion densities left (0, 1)".into(),
            ));
        }
    }
    let measure = Measure1D::atomic(vec![(t0.clone(), rho0.clone()), (t1.clone(), rho1.clone())])?;
    Ok(StampfliCompletion {
        phi0,
        phi1,
        t0,
        t1,
        rho0,
        rho1,
        measure,
    })
}

// ---------------------------------------------------------------------------
// Two-variable measures
// ---------------------------------------------------------------------------

/// One product term `coeff · (x_factor × y_factor)`.
#[derive(Clone, Debug)]
pub struct Term2D {
    pub coeff: Scalar,
    pub x: Measure1D,
    pub y: Measure1D,
}

/// Finite positive combination of products of one-variable measures.
#[derive(Clone, Debug)]
pub struct Measure2D {
    terms: Vec<Term2D>,
}

impl Measure2D {
    pub fn new(terms: Vec<Term2D>) -> Result<Self> {
        let mut kept = Vec::new();
        for t in terms {
            if t.coeff.is_exact_zero() || t.x.is_zero_measure() || t.y.is_zero_measure() {
                continue;
            }
            if t.coeff.is_negative() {
                return Err(ShiftError::Invariant(
                    "term coefficient must be strictly positive".into(),
                ));
            }
            kept.push(t);
        }
        Ok(Measure2D { terms: kept })
    }

    pub fn product(x: Measure1D, y: Measure1D) -> Self {
        Measure2D::new(vec![Term2D {
            coeff: Scalar::one(),
            x,
            y,
        }])
        .expect("unit coefficient")
    }

    pub fn terms(&self) -> &[Term2D] {
        &self.terms
    }

    pub fn mass(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for t in &self.terms {
            acc = acc.add_scalar(&t.coeff.mul_scalar(t.x.mass()).mul_scalar(t.y.mass()));
        }
        acc
    }

    pub fn is_probability(&self) -> bool {
        self.mass().compare(&Scalar::one()).ord == Ordering::Equal
    }

    /// `∬ s^i t^j dμ`.
    pub fn moment(&self, i: u32, j: u32) -> Scalar {
        let mut acc = Scalar::zero();
        for t in &self.terms {
            acc = acc.add_scalar(
                &t.coeff
                    .mul_scalar(&t.x.moment(i))
                    .mul_scalar(&t.y.moment(j)),
            );
        }
        acc
    }

    /// Pushforward onto the first coordinate.
    pub fn marginal_x(&self) -> Result<Measure1D> {
        let mut acc = Measure1D::zero();
        for t in &self.terms {
            let weight = t.coeff.mul_scalar(t.y.mass());
            acc = acc.add_measure(&t.x.scale(&weight)?)?;
        }
        Ok(acc)
    }

    /// Pushforward onto the second coordinate.
    pub fn marginal_y(&self) -> Result<Measure1D> {
        let mut acc = Measure1D::zero();
        for t in &self.terms {
            let weight = t.coeff.mul_scalar(t.x.mass());
            acc = acc.add_measure(&t.y.scale(&weight)?)?;
        }
        Ok(acc)
    }

    /// `∬ (1/t) dμ` over `t > 0` (second coordinate), ignoring atoms at 0.
    pub fn neg_moment_y_excluding_zero(&self) -> NegMomentValue {
        let mut acc = Scalar::zero();
        for t in &self.terms {
            match t.y.neg_moment_excluding_zero() {
                NegMomentValue::Infinite => return NegMomentValue::Infinite,
                NegMomentValue::Finite(v) => {
                    acc = acc.add_scalar(&t.coeff.mul_scalar(t.x.mass()).mul_scalar(&v));
                }
            }
        }
        NegMomentValue::Finite(acc)
    }

    /// Strict `∬ (1/t) dμ`: infinite as soon as some `y` factor has an atom
    /// at 0.
    pub fn neg_moment_y(&self) -> NegMomentValue {
        for t in &self.terms {
            if let NegMomentValue::Infinite = t.y.neg_moment(1) {
                return NegMomentValue::Infinite;
            }
        }
        self.neg_moment_y_excluding_zero()
    }

    /// The extremal measure `dμ_ext(s,t) = (1-δ₀(t)) / (t ‖1/t‖) dμ(s,t)`:
    /// `y` factors lose their atom at 0, remaining atoms at `t` get density
    /// `ρ/t`, densities become `f(t)/t`, all renormalized to a probability
    /// measure.
    pub fn extremal(&self) -> Result<Measure2D> {
        let z = match self.neg_moment_y_excluding_zero() {
            NegMomentValue::Infinite => {
                return Err(ShiftError::NotExtendable(
                    "‖1/t‖ is infinite for the second coordinate".into(),
                ))
            }
            NegMomentValue::Finite(v) => v,
        };
        if !z.is_positive() {
            return Err(ShiftError::DegenerateMeasure(
                "second coordinate is concentrated at 0".into(),
            ));
        }
        let inv_z = z.recip();
        let mut terms = Vec::new();
        for t in &self.terms {
            let y = t.y.div_t_dropping_zero()?;
            if y.is_zero_measure() {
                continue;
            }
            terms.push(Term2D {
                coeff: t.coeff.mul_scalar(&inv_z),
                x: t.x.clone(),
                y,
            });
        }
        Measure2D::new(terms)
    }

    /// Append the terms of `other`.
    pub fn add_measure(&self, other: &Measure2D) -> Result<Measure2D> {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Measure2D::new(terms)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Measure2D> {
        if c.is_exact_zero() {
            return Measure2D::new(vec![]);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term2D {
                coeff: t.coeff.mul_scalar(c),
                x: t.x.clone(),
                y: t.y.clone(),
            })
            .collect();
        Measure2D::new(terms)
    }
}

// ---------------------------------------------------------------------------
// JSON encoding per the external schema
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct AcPartJson {
    interval: [Scalar; 2],
    poly: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "is_zero_i32")]
    min_exp: i32,
}

fn is_zero_i32(v: &i32) -> bool {
    *v == 0
}

#[derive(Serialize, Deserialize)]
struct Measure1DJson {
    atoms: Vec<Atom>,
    ac: Vec<AcPartJson>,
}

impl Serialize for Measure1D {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Measure1DJson {
            atoms: self.atoms.clone(),
            ac: self
                .ac_parts
                .iter()
                .map(|p| AcPartJson {
                    interval: [p.lo.clone(), p.hi.clone()],
                    poly: p.coeffs.clone(),
                    min_exp: p.min_exp,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Measure1D {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Measure1DJson::deserialize(d)?;
        let ac = raw
            .ac
            .into_iter()
            .map(|p| {
                let [lo, hi] = p.interval;
                AcPart {
                    lo,
                    hi,
                    min_exp: p.min_exp,
                    coeffs: p.poly,
                }
            })
            .collect();
        Measure1D::new(raw.atoms, ac).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct Term2DJson {
    coeff: Scalar,
    x: Measure1D,
    y: Measure1D,
}

impl Serialize for Measure2D {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct T<'a> {
            coeff: &'a Scalar,
            x: &'a Measure1D,
            y: &'a Measure1D,
        }
        #[derive(Serialize)]
        struct Outer<'a> {
            terms: Vec<T<'a>>,
        }
        Outer {
            terms: self
                .terms
                .iter()
                .map(|t| T {
                    coeff: &t.coeff,
                    x: &t.x,
                    y: &t.y,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Measure2D {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Outer {
            terms: Vec<Term2DJson>,
        }
        let raw = Outer::deserialize(d)?;
        Measure2D::new(
            raw.terms
                .into_iter()
                .map(|t| Term2D {
                    coeff: t.coeff,
                    x: t.x,
                    y: t.y,
                })
                .collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    /// 2dt on [1/2, 1] — the measure ω_M behind the η shift of the first
    /// counterexample family.
    fn two_dt_half_one() -> Measure1D {
        Measure1D::ac_poly(sc(1, 2), Scalar::one(), vec![Scalar::int(2)]).unwrap()
    }

    /// 3s² ds on [0, 1] — the Bergman restriction measure of the third family.
    fn three_s2() -> Measure1D {
        Measure1D::ac_poly(Scalar::zero(), Scalar::one(), vec![Scalar::zero(), Scalar::zero(), Scalar::int(3)]).unwrap()
    }

    fn s_a_measure(asq: (i64, i64)) -> Measure1D {
        // (1-a²)δ₀ + a²δ₁
        let asq = sc(asq.0, asq.1);
        Measure1D::atomic(vec![
            (Scalar::zero(), Scalar::one().sub_scalar(&asq)),
            (Scalar::one(), asq),
        ])
        .unwrap()
    }

    fn moments_match(a: &Measure1D, b: &Measure1D, up_to: u32) -> bool {
        (0..=up_to).all(|k| a.moment(k) == b.moment(k))
    }

    #[test]
    fn moment_examples() {
        let delta1 = Measure1D::dirac(Scalar::one());
        for k in 0..8 {
            assert_eq!(delta1.moment(k), Scalar::one());
        }
        assert_eq!(two_dt_half_one().moment(1), sc(3, 4));
        assert_eq!(three_s2().moment(1), sc(3, 4));
        assert!(two_dt_half_one().is_probability());
        assert!(three_s2().is_probability());
    }

    #[test]
    fn neg_moment_examples() {
        // ∫ (1/t) 2dt on [1/2,1] = 2 ln 2, symbolically
        let v = two_dt_half_one().neg_moment(1);
        let expected = Scalar::int(4).ln().unwrap(); // ln 4 = 2 ln 2
        assert_eq!(v, NegMomentValue::Finite(expected.clone()));
        match v.finite().unwrap() {
            Scalar::LogLin(l) => assert_eq!(format!("{l}"), "2*ln(2)"),
            other => panic!("expected symbolic log value, got {other}"),
        }
        // ∫ (1/s²) 3s² ds = 3 and ∫ (1/s) 3s² ds = 3/2, exactly
        assert_eq!(three_s2().neg_moment(2), NegMomentValue::Finite(Scalar::int(3)));
        assert_eq!(three_s2().neg_moment(1), NegMomentValue::Finite(sc(3, 2)));
        assert_eq!(Measure1D::dirac(Scalar::zero()).neg_moment(1), NegMomentValue::Infinite);
    }

    #[test]
    fn restrict_rescale_examples() {
        let delta1 = Measure1D::dirac(Scalar::one());
        assert!(moments_match(&delta1.restrict_rescale(3).unwrap(), &delta1, 10));

        let sa = s_a_measure((9, 16));
        let r = sa.restrict_rescale(1).unwrap();
        assert!(moments_match(&r, &delta1, 10));

        // (1/γ₁) t · dt on [0,1] = 2t dt; oracle: moment(r, k) = moment(m, k+1)/moment(m, 1)
        let leb = Measure1D::lebesgue01();
        let r = leb.restrict_rescale(1).unwrap();
        for k in 0..=10 {
            let oracle = leb.moment(k + 1).div_scalar(&leb.moment(1));
            assert_eq!(r.moment(k), oracle);
        }
        assert_eq!(r.moment(1), sc(2, 3));

        // composition law: rescale by h₁ then h₂ equals rescale by h₁+h₂
        let twice = leb
            .restrict_rescale(1)
            .unwrap()
            .restrict_rescale(2)
            .unwrap();
        let once = leb.restrict_rescale(3).unwrap();
        assert!(moments_match(&twice, &once, 10));
    }

    #[test]
    fn ext_value_examples() {
        // (2 ln 2)^{-1/2} ≈ 0.849
        let e = two_dt_half_one().ext_value();
        assert!(!e.is_exact());
        assert!(e.sub_scalar(&sc(849, 1000)).abs().lt(&sc(1, 1000)));
        // (3/2)^{-1/2} = sqrt(2/3) exactly
        let e = three_s2().ext_value();
        assert_eq!(e, sc(2, 3).sqrt().unwrap());
        assert!(e.is_exact());
        // atom at zero: not integrable, extremal weight 0
        assert_eq!(Measure1D::dirac(Scalar::zero()).ext_value(), Scalar::zero());
    }

    #[test]
    fn stampfli_one_two_three() {
        let c = stampfli_completion(&Scalar::one(), &Scalar::int(2), &Scalar::int(3)).unwrap();
        assert_eq!(c.phi0, Scalar::int(-2));
        assert_eq!(c.phi1, Scalar::int(4));
        // independent oracle: roots of t² - 4t + 2 are 2 ∓ sqrt 2, densities
        // solve the 2×2 system by hand
        let rt2 = Scalar::int(2).sqrt().unwrap();
        let t0 = Scalar::int(2).sub_scalar(&rt2);
        let t1 = Scalar::int(2).add_scalar(&rt2);
        assert_eq!(c.t0, t0);
        assert_eq!(c.t1, t1);
        let rho1 = Scalar::one()
            .sub_scalar(&t0)
            .div_scalar(&t1.sub_scalar(&t0));
        let rho0 = Scalar::one().sub_scalar(&rho1);
        assert_eq!(c.rho0, rho0);
        assert_eq!(c.rho1, rho1);
        // γ₃ = φ₀ γ₁ + φ₁ γ₂ = -2·1 + 4·2 = 6, and the measure reproduces the
        // input moments exactly
        assert_eq!(c.measure.moment(0), Scalar::one());
        assert_eq!(c.measure.moment(1), Scalar::one());
        assert_eq!(c.measure.moment(2), Scalar::int(2));
        assert_eq!(c.measure.moment(3), Scalar::int(6));
        assert!(c.measure.moment(3).is_exact());
    }

    #[test]
    fn stampfli_rejects_non_increasing() {
        let e = stampfli_completion(&Scalar::one(), &Scalar::one(), &Scalar::int(2));
        assert!(e.is_err());
    }

    #[test]
    fn stampfli_example13_instance() {
        // s₂² = 1/(2 ln 2); completion of (s₂, 1, sqrt 2) squared
        let s2sq = Scalar::int(4).ln().unwrap().recip(); // 1/(2 ln 2)
        let c = stampfli_completion(&s2sq, &Scalar::one(), &Scalar::int(2)).unwrap();
        let close = |v: &Scalar, target: f64, tol: f64| (v.to_f64() - target).abs() < tol;
        assert!(close(&c.t0, 0.659, 5e-3));
        assert!(close(&c.t1, 3.93, 5e-3));
        assert!(close(&c.rho0, 0.981, 5e-3));
        assert!(close(&c.rho1, 0.019, 5e-3));
        // ‖1/t‖ of the two-atom measure ≈ 1.494, extremal weight ≈ 0.818
        let norm = c.measure.neg_moment(1);
        assert!(close(norm.finite().unwrap(), 1.494, 5e-3));
        assert!(close(&c.measure.ext_value(), 0.818, 5e-3));
    }

    #[test]
    fn marginal_examples() {
        let xi = two_dt_half_one();
        let eta = Measure1D::dirac(Scalar::one());
        let prod = Measure2D::product(xi.clone(), eta.clone());
        assert!(moments_match(&prod.marginal_x().unwrap(), &xi, 10));
        assert!(moments_match(&prod.marginal_y().unwrap(), &eta, 10));

        // δ₀×δ₁ + δ₁×δ₁ → δ₀ + δ₁
        let m = Measure2D::new(vec![
            Term2D { coeff: Scalar::one(), x: Measure1D::dirac(Scalar::zero()), y: Measure1D::dirac(Scalar::one()) },
            Term2D { coeff: Scalar::one(), x: Measure1D::dirac(Scalar::one()), y: Measure1D::dirac(Scalar::one()) },
        ])
        .unwrap();
        let mx = m.marginal_x().unwrap();
        assert_eq!(mx.atom_at(&Scalar::zero()), Scalar::one());
        assert_eq!(mx.atom_at(&Scalar::one()), Scalar::one());
        assert_eq!(mx.mass(), &Scalar::int(2));

        // μ_M = [(1-a²)δ₀ + a²δ₁] × δ₁ has X-marginal (1-a²)δ₀ + a²δ₁
        let sa = s_a_measure((1, 4));
        let mu = Measure2D::product(sa.clone(), Measure1D::dirac(Scalar::one()));
        assert!(moments_match(&mu.marginal_x().unwrap(), &sa, 10));
        // mass preserved by marginals
        assert_eq!(mu.marginal_x().unwrap().mass(), &mu.mass());
    }

    #[test]
    fn extremal_examples() {
        // ξ × δ₁ with non-probability ξ normalizes the x factor
        let xi = two_dt_half_one().scale(&Scalar::int(3)).unwrap();
        let e = Measure2D::product(xi.clone(), Measure1D::dirac(Scalar::one()))
            .extremal()
            .unwrap();
        assert!(e.is_probability());
        assert_eq!(e.moment(1, 0), sc(3, 4));
        assert_eq!(e.moment(0, 1), Scalar::one());

        // y factor t dt on [0,1] becomes dt on [0,1]
        let tdt = Measure1D::ac_poly(Scalar::zero(), Scalar::one(), vec![Scalar::zero(), Scalar::one()]).unwrap();
        let m = Measure2D::product(Measure1D::dirac(Scalar::one()), tdt);
        let e = m.extremal().unwrap();
        let dt = Measure1D::lebesgue01();
        for j in 0..=10 {
            assert_eq!(e.moment(0, j), dt.moment(j));
        }
        assert!(e.is_probability());

        // atom at 0 in the y factor is dropped and the rest renormalized
        let half_half = s_a_measure((1, 2));
        let m = Measure2D::product(two_dt_half_one(), half_half);
        let e = m.extremal().unwrap();
        // by hand: Z = 1/2, surviving y part = (1/2)δ₁ scaled by 1/(t·Z) = 2··δ₁
        for k in 0..=5 {
            assert_eq!(e.moment(k, 0), two_dt_half_one().moment(k));
            assert_eq!(e.moment(k, 1), two_dt_half_one().moment(k));
        }
        assert!(e.is_probability());
        // no atom at second-coordinate 0 remains
        assert_eq!(e.marginal_y().unwrap().atom_at(&Scalar::zero()), Scalar::zero());
    }

    #[test]
    fn leq_examples() {
        // y²[(1-a²)δ₀ + a²δ₁] ≤ (1-x²)δ₀ + x²δ₁ iff y²(1-a²) ≤ 1-x² and ay ≤ x
        let check = |ysq: (i64, i64), asq: (i64, i64), xsq: (i64, i64)| -> Ternary {
            let y2 = sc(ysq.0, ysq.1);
            let lhs = s_a_measure(asq).scale(&y2).unwrap();
            let rhs = s_a_measure(xsq);
            leq(&lhs, &rhs)
        };
        // a=1/2, x=0.8: sub bound y ≤ min{x/a, sqrt((1-x²)/(1-a²))} = sqrt(0.48)
        // y² = 0.25 ≤ 0.48 → true; y² = 0.49 > 0.48 → false
        assert_eq!(check((1, 4), (1, 4), (16, 25)), Ternary::True);
        assert_eq!(check((49, 100), (1, 4), (16, 25)), Ternary::False);
        // reflexivity and strict failure
        let m = two_dt_half_one();
        assert_eq!(leq(&m, &m), Ternary::True);
        let two_delta = Measure1D::dirac(Scalar::one()).scale(&Scalar::int(2)).unwrap();
        assert_eq!(leq(&two_delta, &Measure1D::dirac(Scalar::one())), Ternary::False);
        // ac density comparison: dt ≤ 2t·dt fails near 0, 2t·dt ≤ 3·dt holds
        let dt = Measure1D::lebesgue01();
        let twot = Measure1D::ac_poly(Scalar::zero(), Scalar::one(), vec![Scalar::zero(), Scalar::int(2)]).unwrap();
        let three = Measure1D::ac_poly(Scalar::zero(), Scalar::one(), vec![Scalar::int(3)]).unwrap();
        assert_eq!(leq(&dt, &twot), Ternary::False);
        assert_eq!(leq(&twot, &three), Ternary::True);
    }

    #[test]
    fn atom_at_examples() {
        // (1-ρ)η + ρδ₁ with η having no atom at 1
        let eta = two_dt_half_one().scale(&sc(3, 4)).unwrap();
        let m = eta
            .add_measure(&Measure1D::dirac(Scalar::one()).scale(&sc(1, 4)).unwrap())
            .unwrap();
        assert_eq!(m.atom_at(&Scalar::one()), sc(1, 4));
        assert_eq!(Measure1D::lebesgue01().atom_at(&Scalar::one()), Scalar::zero());
        assert_eq!(Measure1D::dirac(Scalar::zero()).atom_at(&Scalar::zero()), Scalar::one());
    }

    #[test]
    fn berger_weights_examples() {
        let delta1 = Measure1D::dirac(Scalar::one());
        assert_eq!(delta1.berger_weights(5).unwrap(), vec![Scalar::one(); 5]);
        // Bergman: α_n² = (n+1)/(n+2)
        let leb = Measure1D::lebesgue01();
        assert_eq!(
            leb.berger_weights(3).unwrap(),
            vec![sc(1, 2), sc(2, 3), sc(3, 4)]
        );
        // restriction by two steps: [3/4, 4/5, 5/6]
        let r = leb.restrict_rescale(2).unwrap();
        assert_eq!(
            r.berger_weights(3).unwrap(),
            vec![sc(3, 4), sc(4, 5), sc(5, 6)]
        );
        // weights of any probability measure are nondecreasing
        let w = three_s2().berger_weights(12).unwrap();
        for pair in w.windows(2) {
            assert!(pair[0].le(&pair[1]));
        }
    }

    #[test]
    fn mass_cancellation_in_extension_shape() {
        // (a²/t)·ω_M + (1 - a²‖1/t‖)δ₀ has exact unit mass, symbolically
        let om = two_dt_half_one();
        let asq = sc(1, 4);
        let scaled = om.div_t_dropping_zero().unwrap().scale(&asq).unwrap();
        let norm = om.neg_moment(1);
        let lambda = Scalar::one().sub_scalar(&asq.mul_scalar(norm.finite().unwrap()));
        let ext = scaled
            .add_measure(&Measure1D::dirac(Scalar::zero()).scale(&lambda).unwrap())
            .unwrap();
        assert_eq!(ext.mass(), &Scalar::one());
        assert!(ext.mass().is_exact());
        // moments shift: ∫ t^k dμ = a² ∫ t^(k-1) dω_M for k ≥ 1
        for k in 1..=8u32 {
            let lhs = ext.moment(k);
            let rhs = asq.mul_scalar(&om.moment(k - 1));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn hankel_positivity_of_moment_sequences() {
        // Hankel forms of genuine measures are PSD; check 2x2 minors up to
        // order 6: γ_k γ_(k+2) ≥ γ_(k+1)²  (Cauchy-Schwarz)
        for m in [
            two_dt_half_one(),
            three_s2(),
            s_a_measure((3, 7)),
            Measure1D::lebesgue01(),
        ] {
            for k in 0..=6u32 {
                let lhs = m.moment(k).mul_scalar(&m.moment(k + 2));
                let rhs = m.moment(k + 1).pow(2);
                assert!(lhs.ge(&rhs));
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let m = two_dt_half_one()
            .add_measure(&Measure1D::dirac(Scalar::one()).scale(&sc(1, 3)).unwrap())
            .unwrap();
        let s = serde_json::to_string(&m).unwrap();
        let back: Measure1D = serde_json::from_str(&s).unwrap();
        assert!(moments_match(&m, &back, 10));
        let m2 = Measure2D::product(m, three_s2());
        let s2 = serde_json::to_string(&m2).unwrap();
        let back2: Measure2D = serde_json::from_str(&s2).unwrap();
        assert_eq!(m2.moment(3, 2), back2.moment(3, 2));
    }
}
