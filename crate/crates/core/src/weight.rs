use std::fmt;

use crate::error::{Error, Result};

/// Non-negative integer weight with overflow-checked arithmetic.
///
/// Every element weight, block term, threshold and bound in the crate is a
/// `Weight`. There is deliberately no `Add` impl: all arithmetic goes through
/// the `try_*` methods so that overflow surfaces as [`Error::Overflow`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(u64);

impl Weight {
    pub const ZERO: Weight = Weight(0);
    pub const ONE: Weight = Weight(1);

    pub const fn new(value: u64) -> Self {
        Weight(value)
    }

    pub const fn get(self) -> u64 {
        self.0
    }

    pub fn try_add(self, rhs: Weight) -> Result<Weight> {
        self.0
            .checked_add(rhs.0)
            .map(Weight)
            .ok_or(Error::Overflow("weight sum"))
    }

    pub fn try_sub(self, rhs: Weight) -> Result<Weight> {
        self.0
            .checked_sub(rhs.0)
            .map(Weight)
            .ok_or(Error::Overflow("weight difference"))
    }

    pub fn try_mul(self, factor: u64) -> Result<Weight> {
        self.0
            .checked_mul(factor)
            .map(Weight)
            .ok_or(Error::Overflow("weight product"))
    }

    /// `⌈self / divisor⌉`. `divisor` must be positive.
    pub fn div_ceil(self, divisor: u64) -> Weight {
        assert!(divisor > 0, "division by zero");
        Weight(self.0.div_ceil(divisor))
    }

    /// Checked sum of an iterator of weights.
    pub fn try_sum<I: IntoIterator<Item = Weight>>(iter: I) -> Result<Weight> {
        iter.into_iter().try_fold(Weight::ZERO, Weight::try_add)
    }
}

impl From<u64> for Weight {
    fn from(value: u64) -> Self {
        Weight(value)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_is_rejected() {
        let big = Weight::new(u64::MAX);
        assert_eq!(big.try_add(Weight::ONE), Err(Error::Overflow("weight sum")));
        assert!(big.try_mul(2).is_err());
        assert!(Weight::ZERO.try_sub(Weight::ONE).is_err());
        assert!(Weight::try_sum([big, Weight::ONE]).is_err());
    }

    #[test]
    fn ceil_division() {
        assert_eq!(Weight::new(15).div_ceil(2), Weight::new(8));
        assert_eq!(Weight::new(16).div_ceil(2), Weight::new(8));
        assert_eq!(Weight::new(0).div_ceil(3), Weight::ZERO);
        assert_eq!(Weight::new(u64::MAX).div_ceil(1), Weight::new(u64::MAX));
    }
}
