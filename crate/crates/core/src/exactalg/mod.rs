//! Exact integer and rational linear algebra.
//!
//! Everything here is generic over an exact integer type ([`ExactInt`]):
//! `i64` and `i128` work for small inputs, [`num_bigint::BigInt`] for
//! anything where coefficient growth matters. No rounding happens anywhere.

mod elimination;
mod lp;
mod matrix;
mod snf;

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

pub use elimination::{nullspace, rank, EchelonBasis};
pub use lp::{Feasibility, LinearSystem, Relation, Solver};
pub use matrix::Matrix;
pub use snf::{invariant_factors, saturation_index, snf, Snf};

/// Integer types the exact engine can run on.
pub trait ExactInt:
    Integer + Signed + Clone + Debug + Display + FromPrimitive + Send + Sync + 'static
{
}

impl<T> ExactInt for T where
    T: Integer + Signed + Clone + Debug + Display + FromPrimitive + Send + Sync + 'static
{
}
