//! The scalar field every exact computation is carried out in.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

/// An exact ordered field of characteristic zero.
///
/// `BigRational` is the workhorse; fixed-width `Ratio<i64>` / `Ratio<i128>`
/// also satisfy the bound and are handy for quick cross-checks at small
/// degree, where they cannot overflow.
pub trait Field: Num + Signed + Clone + PartialOrd + Debug + Display + FromPrimitive + Send + Sync + 'static {
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer is representable in every field")
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_int(numer) / Self::from_int(denom)
    }
}

impl<T> Field for T where T: Num + Signed + Clone + PartialOrd + Debug + Display + FromPrimitive + Send + Sync + 'static {}

/// `n choose k` in the field; zero when `k > n`.
pub fn binomial<T: Field>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * T::from_int((n - i) as i64) / T::from_int((i + 1) as i64);
    }
    acc
}

pub fn factorial<T: Field>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, i| acc * T::from_int(i as i64))
}

/// `(-1)^k` as a field element.
pub fn sign<T: Field>(k: usize) -> T {
    if k.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn binomials() {
        let c: BigRational = binomial(5, 2);
        assert_eq!(c, BigRational::from_int(10));
        assert_eq!(binomial::<BigRational>(3, 4), BigRational::from_int(0));
        assert_eq!(binomial::<BigRational>(0, 0), BigRational::from_int(1));
        assert_eq!(factorial::<BigRational>(6), BigRational::from_int(720));
    }
}
