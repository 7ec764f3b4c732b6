//! Verdict and report types shared by the shift-level tests.

use serde::{Deserialize, Serialize};

use crate::measures::Measure2D;
use crate::scalar::Scalar;

/// What a verdict covers: the whole lattice (via a finite certificate) or
/// only the points examined below a horizon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Decided,
    UpToHorizon(u32),
}

/// Location of a first failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Index(u32),
    Point(u32, u32),
    Condition(String),
}

/// Outcome of a yes/no test with certainty and coverage information.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub scope: Scope,
    /// true when every comparison along the way was decided exactly
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass(scope: Scope, exact: bool) -> Self {
        Verdict {
            holds: true,
            scope,
            exact,
            witness: None,
        }
    }

    pub fn fail(scope: Scope, exact: bool, witness: Witness) -> Self {
        Verdict {
            holds: false,
            scope,
            exact,
            witness: Some(witness),
        }
    }
}

/// Subnormality conclusion for a commuting pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubnormalityVerdict {
    /// A Berger measure was produced and its moments match the shift's.
    CertifiedSubnormal {
        measure: Measure2D,
        verified_to: u32,
    },
    /// A moment matrix over these monomials has a negative determinant.
    Obstructed {
        monomials: Vec<(u32, u32)>,
        det: Scalar,
    },
    Undecided,
}

/// How certain the report is overall.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certainty {
    Exact,
    Numeric { eps: String },
}

/// Full classification of a two-variable shift.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub commuting: Verdict,
    pub t1_subnormal: Verdict,
    pub t2_subnormal: Verdict,
    pub jointly_hyponormal: Verdict,
    pub subnormality: SubnormalityVerdict,
    pub certainty: Certainty,
    pub horizon: u32,
}

impl ClassificationReport {
    /// `true` when the pair is certified subnormal, `false` when obstructed
    /// or some prerequisite fails, `None` when undecided.
    pub fn jointly_subnormal(&self) -> Option<bool> {
        if !self.commuting.holds || !self.jointly_hyponormal.holds {
            return Some(false);
        }
        match &self.subnormality {
            SubnormalityVerdict::CertifiedSubnormal { .. } => Some(true),
            SubnormalityVerdict::Obstructed { .. } => Some(false),
            SubnormalityVerdict::Undecided => None,
        }
    }
}
