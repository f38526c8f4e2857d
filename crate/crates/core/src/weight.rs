use std::fmt::Debug;
use std::iter::Sum;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

/// Totally ordered exact scalar used for costs and capacities.
///
/// Implemented for every signed integer type and for exact rationals such as
/// `num_rational::Rational64`. Floats are excluded on purpose: the solvers
/// compare weights for equality when certifying optimality.
pub trait Weight:
    Copy + Ord + Debug + Zero + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> + Sum
{
}

impl<T> Weight for T where
    T: Copy + Ord + Debug + Zero + Add<Output = T> + Sub<Output = T> + Neg<Output = T> + Sum
{
}
