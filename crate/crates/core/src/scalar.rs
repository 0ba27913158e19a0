//! Numeric type used for evaluation scores and weights.
//!
//! Search and evaluation are generic over [`Scalar`]; `f32`, `f64`, `i64` and
//! the exact [`Rational64`] are provided. Comparisons between search routines
//! are exact for every implementation because both sides perform the same
//! operations in the same order.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{FromPrimitive, Signed};

pub trait Scalar:
    Copy + PartialOrd + Debug + Display + Signed + FromPrimitive + FromStr + Send + Sync + 'static
{
    /// Score of a won game at the root. Heuristic scores are clamped well
    /// inside `(-win_bound, win_bound)`.
    fn win_bound() -> Self;

    fn from_count(n: i64) -> Self {
        Self::from_i64(n).expect("count representable in scalar")
    }
}

impl Scalar for f64 {
    fn win_bound() -> Self {
        (1u64 << 40) as f64
    }
}

impl Scalar for f32 {
    // keeps `bound - ply` exact within the 24-bit mantissa
    fn win_bound() -> Self {
        (1u32 << 22) as f32
    }
}

impl Scalar for i64 {
    fn win_bound() -> Self {
        1 << 40
    }
}

impl Scalar for Rational64 {
    fn win_bound() -> Self {
        Rational64::from_integer(1 << 40)
    }
}

/// Largest search depth in plies that a decided score can encode.
pub const MAX_PLY: i64 = 1 << 10;

/// Score of a decided game `ply` steps below the root. Earlier wins and later
/// losses score higher.
pub fn win_at<S: Scalar>(ply: u32) -> S {
    S::win_bound() - S::from_count(ply as i64)
}

pub fn loss_at<S: Scalar>(ply: u32) -> S {
    -win_at::<S>(ply)
}

pub fn is_win<S: Scalar>(v: S) -> bool {
    v > S::win_bound() - S::from_count(MAX_PLY)
}

pub fn is_loss<S: Scalar>(v: S) -> bool {
    v < -(S::win_bound() - S::from_count(MAX_PLY))
}

/// Clamps a heuristic score to half the win bound.
pub fn clamp_heuristic<S: Scalar>(v: S) -> S {
    let two = S::from_count(2);
    let cap = S::win_bound() / two;
    if v > cap {
        cap
    } else if v < -cap {
        -cap
    } else {
        v
    }
}

/// Bound strictly above every reachable score.
pub(crate) fn infinity<S: Scalar>() -> S {
    S::win_bound() + S::win_bound()
}
