//! Exact coordinate types.
//!
//! Crimpable-sequence detection compares interval lengths for exact
//! equality, so every coordinate type here is a primitive signed integer.
//! Floating point does not implement [`Coord`] (no total order).

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{PrimInt, Signed};

/// A signed integer coordinate on the paper line.
pub trait Coord: PrimInt + Signed + Hash + Debug + Display + Send + Sync + 'static {
    /// `a + b`, or `None` on overflow.
    fn add_checked(self, rhs: Self) -> Option<Self> {
        self.checked_add(&rhs)
    }

    /// `a - b`, or `None` on overflow.
    fn sub_checked(self, rhs: Self) -> Option<Self> {
        self.checked_sub(&rhs)
    }

    /// `2 * a`, or `None` on overflow.
    fn double_checked(self) -> Option<Self> {
        self.checked_add(&self)
    }
}

impl<T> Coord for T where T: PrimInt + Signed + Hash + Debug + Display + Send + Sync + 'static {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_helpers_report_overflow() {
        assert_eq!(3i64.add_checked(4), Some(7));
        assert_eq!(i64::MAX.add_checked(1), None);
        assert_eq!(i32::MIN.sub_checked(1), None);
        assert_eq!((i64::MAX / 2 + 1).double_checked(), None);
        assert_eq!(5i128.double_checked(), Some(10));
    }
}
