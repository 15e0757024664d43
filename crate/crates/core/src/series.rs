//! Truncated power series in `x` whose coefficients are polynomials in `y`.

use std::fmt;

use crate::error::{GenusError, Result};
use crate::poly::Poly;
use crate::scalar::{factorial, Field};

/// `Σ_{k<order} a_k(y) x^k`. Coefficients at or beyond `order` are unknown
/// and never read.
#[derive(Clone, PartialEq, Eq)]
pub struct Series<T> {
    coeffs: Vec<Poly<T>>,
}

impl<T: Field> Series<T> {
    pub fn zero(order: usize) -> Self {
        assert!(order > 0, "series order must be positive");
        Series { coeffs: vec![Poly::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Poly::one();
        s
    }

    /// The series `x` (zero at order 1).
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 1 {
            s.coeffs[1] = Poly::one();
        }
        s
    }

    /// Takes the first `order` coefficients, padding with zeros.
    pub fn from_coeffs(order: usize, coeffs: Vec<Poly<T>>) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in coeffs.into_iter().take(order).enumerate() {
            s.coeffs[k] = c;
        }
        s
    }

    /// Series with constant (y-free) coefficients.
    pub fn from_scalars(order: usize, coeffs: Vec<T>) -> Self {
        Self::from_coeffs(order, coeffs.into_iter().map(Poly::constant).collect())
    }

    /// `exp(c·x)` for a polynomial `c` in `y`.
    pub fn exp_linear(order: usize, c: &Poly<T>) -> Self {
        let mut coeffs = Vec::with_capacity(order);
        let mut power = Poly::one();
        for k in 0..order {
            coeffs.push(power.scale(&(T::one() / factorial::<T>(k))));
            power = &power * c;
        }
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &Poly<T> {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Poly<T>] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(GenusError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![Poly::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Ok(Series { coeffs: out })
    }

    pub fn scale(&self, c: &Poly<T>) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by `x`, dropping the coefficient pushed past the order.
    pub fn mul_x(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order());
        coeffs.push(Poly::zero());
        coeffs.extend(self.coeffs[..self.order() - 1].iter().cloned());
        Series { coeffs }
    }

    /// `a(-x)`
    pub fn negate_x(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 0 { c.clone() } else { -c }).collect(),
        }
    }

    /// Applies `y ↦ -y` to every coefficient.
    pub fn flip_y(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(Poly::flip).collect() }
    }

    /// `a(x)` with `y` specialised to a number.
    pub fn eval_y(&self, y: &T) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| Poly::constant(c.eval(y))).collect() }
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![Poly::zero(); n];
        for k in 1..n {
            coeffs[k - 1] = self.coeffs[k].scale(&T::from_int(k as i64));
        }
        Series { coeffs }
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![Poly::zero(); n];
        for k in 1..n {
            coeffs[k] = self.coeffs[k - 1].scale(&(T::one() / T::from_int(k as i64)));
        }
        Series { coeffs }
    }

    /// Multiplicative inverse. The constant term must be a nonzero constant
    /// polynomial so that every coefficient stays polynomial in `y`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() || !c0.is_constant() {
            return Err(GenusError::NonUnit);
        }
        let inv0 = T::one() / c0.coeff(0);
        let n = self.order();
        let mut out: Vec<Poly<T>> = Vec::with_capacity(n);
        out.push(Poly::constant(inv0.clone()));
        for k in 1..n {
            let mut acc = Poly::zero();
            for j in 1..=k {
                acc += &(&self.coeffs[j] * &out[k - j]);
            }
            out.push(acc.scale(&(-inv0.clone())));
        }
        Ok(Series { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inverse()?)
    }

    /// Formal logarithm; requires constant term `1`.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != Poly::one() {
            return Err(GenusError::ConstantTerm { op: "log", expected: "1" });
        }
        // log a = ∫ a'/a; the constant term of a is 1 so the inverse is polynomial.
        Ok(self.derivative().mul(&self.inverse()?)?.integral())
    }

    /// Formal exponential; requires constant term `0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(GenusError::ConstantTerm { op: "exp", expected: "0" });
        }
        // k e_k = Σ_{j=1}^k j a_j e_{k-j}
        let n = self.order();
        let mut out: Vec<Poly<T>> = Vec::with_capacity(n);
        out.push(Poly::one());
        for k in 1..n {
            let mut acc = Poly::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc += &(&self.coeffs[j] * &out[k - j]).scale(&T::from_int(j as i64));
            }
            out.push(acc.scale(&(T::one() / T::from_int(k as i64))));
        }
        Ok(Series { coeffs: out })
    }
}

impl<T: Field> fmt::Debug for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]x^{k}")?;
        }
        write!(f, " + O(x^{})", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Q = BigRational;
    type P = Poly<Q>;
    type S = Series<Q>;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn ints(order: usize, cs: &[i64]) -> S {
        S::from_scalars(order, cs.iter().map(|&c| Q::from_int(c)).collect())
    }

    /// Todd series x/(1-e^{-x}) by direct long division of x by 1-e^{-x}.
    fn todd_oracle(order: usize) -> Vec<Q> {
        // (1 - e^{-x})/x = Σ (-1)^k x^k/(k+1)!
        let d: Vec<Q> = (0..order)
            .map(|k| {
                let s = if k % 2 == 0 { Q::from_int(1) } else { Q::from_int(-1) };
                s / factorial::<Q>(k + 1)
            })
            .collect();
        let mut t = vec![Q::from_int(0); order];
        t[0] = Q::from_int(1);
        for k in 1..order {
            let mut acc = Q::from_int(0);
            for j in 1..=k {
                acc += d[j].clone() * t[k - j].clone();
            }
            t[k] = -acc;
        }
        t
    }

    #[test]
    fn products() {
        let a = ints(3, &[1, 1]);
        let b = ints(3, &[1, -1]);
        assert_eq!(a.mul(&b).unwrap(), ints(3, &[1, 0, -1]));

        let yx = S::from_coeffs(3, vec![P::one(), P::y()]);
        let sq = yx.mul(&yx).unwrap();
        assert_eq!(sq.coeff(1), &P::from_ints(&[0, 2]));
        assert_eq!(sq.coeff(2), &P::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        assert_eq!(ints(3, &[1]).mul(&ints(4, &[1])), Err(GenusError::OrderMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn todd_times_reflected_todd_is_even() {
        let tod = S::from_scalars(4, todd_oracle(4));
        let prod = tod.mul(&tod.negate_x()).unwrap();
        assert_eq!(prod.coeff(0), &P::one());
        assert!(prod.coeff(1).is_zero());
        assert_eq!(prod.coeff(2), &P::constant(q(-1, 12)));
        assert!(prod.coeff(3).is_zero());
    }

    #[test]
    fn mercator_and_exponential() {
        let l = ints(6, &[1, 1]).log().unwrap();
        let expect: Vec<Q> = vec![q(0, 1), q(1, 1), q(-1, 2), q(1, 3), q(-1, 4), q(1, 5)];
        assert_eq!(l, S::from_scalars(6, expect));
        assert_eq!(S::one(5).log().unwrap(), S::zero(5));

        assert_eq!(S::zero(4).exp().unwrap(), S::one(4));
        let e = S::x(5).exp().unwrap();
        assert_eq!(e, S::from_scalars(5, vec![q(1, 1), q(1, 1), q(1, 2), q(1, 6), q(1, 24)]));
        assert_eq!(l.exp().unwrap(), ints(6, &[1, 1]));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(ints(3, &[2, 1]).log(), Err(GenusError::ConstantTerm { .. })));
        assert!(matches!(ints(3, &[1, 1]).exp(), Err(GenusError::ConstantTerm { .. })));
        let non_unit = S::from_coeffs(3, vec![P::from_ints(&[1, 1])]);
        assert_eq!(non_unit.inverse(), Err(GenusError::NonUnit));
    }

    #[test]
    fn todd_log_has_linear_coefficient_one_half() {
        let l = S::from_scalars(5, todd_oracle(5)).log().unwrap();
        assert_eq!(l.coeff(1), &P::constant(q(1, 2)));
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec(-6i64..=6, 0..3).prop_map(|cs| P::from_ints(&cs))
    }

    fn arb_series(order: usize, constant: Option<P>) -> impl Strategy<Value = S> {
        prop::collection::vec(arb_poly(), order).prop_map(move |mut cs| {
            if let Some(c) = &constant {
                cs[0] = c.clone();
            }
            S::from_coeffs(order, cs)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn exp_log_roundtrip(a in (1usize..=16).prop_flat_map(|o| arb_series(o, Some(P::one())))) {
            prop_assert_eq!(a.log().unwrap().exp().unwrap(), a.clone());
            let mut b = a;
            b.coeffs[0] = P::zero();
            prop_assert_eq!(b.exp().unwrap().log().unwrap(), b);
        }

        #[test]
        fn inverse_is_two_sided(a in arb_series(8, Some(P::constant(Q::from_int(3))))) {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), S::one(8));
        }
    }
}
