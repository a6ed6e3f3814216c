//! Scalar abstraction shared by every geometric and network type.
//!
//! All of the library is written against [`Scalar`]. The exact type used by
//! the text formats and the CLI is [`Rational`](crate::Rational), an
//! arbitrary-precision fraction; `Ratio<i64>` and `f64` also satisfy the
//! bound and are handy for quick experiments, but only exact types give
//! trustworthy answers on half-space boundaries.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, Signed};

/// An ordered field element.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }

    /// Strictly greater than zero. `Signed::is_positive` treats `+0.0` as
    /// positive for floats, so comparisons go through here instead.
    fn gt_zero(&self) -> bool {
        *self > Self::zero()
    }

    fn lt_zero(&self) -> bool {
        *self < Self::zero()
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Embeds a bit as 0 or 1.
    fn from_bit(bit: bool) -> Self {
        if bit {
            Self::one()
        } else {
            Self::zero()
        }
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}
