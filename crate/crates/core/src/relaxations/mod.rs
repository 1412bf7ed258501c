//! Lift-and-project LP relaxations of the coding problems and checkers for
//! their dual constraints.
//!
//! The channel is always the identity, so channel outputs range over the same
//! sets as channel inputs.

mod dual;
mod primal;
pub mod tensor;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::probability::{CodeSizes, DistortionSpec, JointPmf, SinglePmf};

pub use dual::{
    check_dp_feasible, check_dpje_feasible, check_dpsi_feasible, check_dpsw_feasible, dpsw_objective,
    DualPointDp, DualPointJe, DualPointSW, DualPointSid,
};
pub use primal::{
    build_lp_je, build_lp_sc, build_lp_sw, build_lpsi, LpscLayout, LpsiLayout, LpswLayout, SwRowFamily,
};

/// Default ceiling on the number of LP variables a builder will emit.
pub const DEFAULT_VAR_CAP: usize = 200_000;

/// Which source is encoded in a side-information problem; the other one is
/// available at the decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    /// Encode the first source, second is side information.
    One,
    /// Encode the second source, first is side information.
    Two,
}

/// Point-to-point source coding with an excess-distortion criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct ScInstance {
    pub source: SinglePmf,
    pub m: usize,
    pub distortion: DistortionSpec,
}

impl ScInstance {
    pub fn new(source: SinglePmf, m: usize, distortion: DistortionSpec) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("code size must be at least 1".into()));
        }
        if distortion.n_src() != source.len() {
            return Err(Error::DimensionMismatch("distortion rows must match the source alphabet".into()));
        }
        Ok(ScInstance { source, m, distortion })
    }

    pub fn lossless(source: SinglePmf, m: usize) -> Result<Self> {
        let d = DistortionSpec::lossless(source.len());
        ScInstance::new(source, m, d)
    }

    pub fn n_src(&self) -> usize {
        self.source.len()
    }

    pub fn n_rec(&self) -> usize {
        self.distortion.n_rec()
    }
}

/// Two correlated sources, encoded separately, decoded jointly.
#[derive(Debug, Clone, PartialEq)]
pub struct SwInstance {
    pub joint: JointPmf,
    pub sizes: CodeSizes,
}

impl SwInstance {
    pub fn new(joint: JointPmf, m1: usize, m2: usize) -> Result<Self> {
        Ok(SwInstance { joint, sizes: CodeSizes::new(m1, m2)? })
    }

    pub fn n1(&self) -> usize {
        self.joint.sizes().0
    }

    pub fn n2(&self) -> usize {
        self.joint.sizes().1
    }

    pub fn m1(&self) -> usize {
        self.sizes.m1
    }

    pub fn m2(&self) -> usize {
        self.sizes.m2
    }

    #[inline]
    pub fn p(&self, s1: usize, s2: usize) -> f64 {
        self.joint.get(s1, s2)
    }

    /// The instance with the two sources swapped.
    pub fn mirrored(&self) -> SwInstance {
        SwInstance { joint: self.joint.transpose(), sizes: CodeSizes { m1: self.sizes.m2, m2: self.sizes.m1 } }
    }

    /// The pair seen as one source coded jointly with `m1 * m2` messages.
    pub fn jointly_encoded(&self) -> ScInstance {
        let src = self.joint.flatten();
        let n = src.len();
        ScInstance { source: src, m: self.m1() * self.m2(), distortion: DistortionSpec::lossless(n) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ConstraintId {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
    P1,
    P2,
    P3,
    A1,
    A2,
    A3,
    B1,
    B2,
    B3,
    C1,
    C2,
    C3,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintViolation {
    pub id: ConstraintId,
    pub index: Vec<usize>,
    pub residual: f64,
}

impl fmt::Display for ConstraintViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?} exceeds by {:e}", self.id, self.index, self.residual)
    }
}

pub(crate) fn infeasible(v: &[ConstraintViolation]) -> Error {
    Error::InfeasibleInput { count: v.len(), first: v.first().map(|x| x.to_string()).unwrap_or_default() }
}
