use super::rat::BigRat;
use num_traits::{One, Zero};
use std::fmt::Debug;

/// Exact commutative ring with unit. Method names avoid the std operator
/// traits so that generic code stays unambiguous.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(q: &BigRat) -> Self;
    fn radd(&self, o: &Self) -> Self;
    fn rmul(&self, o: &Self) -> Self;
    fn rneg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn rsub(&self, o: &Self) -> Self {
        self.radd(&o.rneg())
    }

    fn scale(&self, q: &BigRat) -> Self {
        self.rmul(&Self::from_rat(q))
    }

    /// Panics when `e < 0` and the element is not invertible.
    fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inv().expect("negative power of a non-unit")
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.rmul(&b);
            }
            b = b.rmul(&b);
            n >>= 1;
        }
        acc
    }
}

impl Ring for BigRat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rat(q: &BigRat) -> Self {
        q.clone()
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn rneg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}
