//! Rank-one (BC₁) Cherednik–Opdam analysis.
//!
//! The crate has two layers that check each other:
//!
//! * [`exact`] works in rational arithmetic on the closed family of functions
//!   `cosh^{-(σ+2m)}(t)·tanh^ε(t)`, where the Cherednik operator acts by a
//!   finite rule. Operator identities (shift formulas, Rodrigues formulas)
//!   are decided by comparing coefficients.
//! * [`specfun`], [`model`] and [`transform`] evaluate the same objects in
//!   floating point: Jacobi-type orthogonal functions, the Opdam
//!   eigenfunction, c-functions, closed-form transforms, and the quadrature
//!   that checks them.
//!
//! [`suites`] bundles the checks into [`report::VerificationReport`]s.

// Negated comparisons are deliberate: NaN must fail every domain check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exact;
pub mod model;
pub mod report;
pub mod specfun;
pub mod suites;
pub mod transform;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

pub use error::{Error, Result};

/// Parity under the reflection `t ↦ -t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    /// `+1` for even, `-1` for odd.
    pub fn sign(self) -> i32 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("+1"),
            Parity::Odd => f.write_str("-1"),
        }
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" | "even" => Ok(Parity::Even),
            "-1" | "-" | "odd" => Ok(Parity::Odd),
            other => Err(Error::Parse(format!("parity must be +1 or -1, got {other:?}"))),
        }
    }
}

impl Serialize for Parity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i32(self.sign())
    }
}
