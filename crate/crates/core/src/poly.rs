//! Univariate polynomials in the genus parameter `y`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::scalar::{binomial, Field};

/// Dense polynomial in `y`. Trailing zero coefficients are never stored, so
/// the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Poly<T> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·y^degree`
    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    /// The polynomial `y`.
    pub fn y() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// Coefficients listed from degree 0 upward.
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| T::from_int(c)).collect())
    }

    /// Builds from `(degree, coefficient)` pairs; repeated degrees accumulate.
    pub fn from_terms<I: IntoIterator<Item = (usize, T)>>(terms: I) -> Self {
        let mut coeffs: Vec<T> = Vec::new();
        for (d, c) in terms {
            if coeffs.len() <= d {
                coeffs.resize(d + 1, T::zero());
            }
            coeffs[d] = coeffs[d].clone() + c;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, degree: usize) -> T {
        self.coeffs.get(degree).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Nonzero terms in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &T)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Coefficients `0..=n`, padding with zeros.
    pub fn padded(&self, n: usize) -> Vec<T> {
        (0..=n).map(|d| self.coeff(d)).collect()
    }

    pub fn constant_term(&self) -> T {
        self.coeff(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, y: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * y.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// `p(y + shift)`, i.e. re-expansion around `y = -shift`.
    pub fn shift(&self, shift: &T) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![T::zero(); n];
        for (d, c) in self.coeffs.iter().enumerate() {
            let mut power = T::one();
            // c·(y+s)^d = Σ_k C(d,k) s^(d-k) y^k
            for k in (0..=d).rev() {
                out[k] = out[k].clone() + c.clone() * binomial::<T>(d, k) * power.clone();
                power = power * shift.clone();
            }
        }
        Self::from_coeffs(out)
    }

    /// `p(-y)`
    pub fn flip(&self) -> Self {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| if d % 2 == 0 { c.clone() } else { -c.clone() })
                .collect(),
        }
    }

    /// `p(y^k)`
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k > 0);
        Self::from_terms(self.coeffs.iter().enumerate().map(|(d, c)| (d * k, c.clone())))
    }

    /// Multiplication by `y^k`.
    pub fn shift_degree(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact division by a nonzero constant polynomial; `None` otherwise.
    pub fn div_by_unit(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() || !divisor.is_constant() {
            return None;
        }
        let c = divisor.coeff(0);
        Some(Poly { coeffs: self.coeffs.iter().map(|a| a.clone() / c.clone()).collect() })
    }

    /// Applies a coefficient map, e.g. to change scalar type.
    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Field> Default for Poly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a, T: Field> Add<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: &'a Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl<'a, T: Field> Sub<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: &'a Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|d| self.coeff(d) - rhs.coeff(d)).collect())
    }
}

impl<'a, T: Field> Mul<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: &'a Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<T: Field> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Field> $tr<Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, T: Field> $tr<&'a Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: &'a Poly<T>) -> Poly<T> {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<T: Field> Neg for Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Field> AddAssign<&Poly<T>> for Poly<T> {
    fn add_assign(&mut self, rhs: &Poly<T>) {
        *self = &*self + rhs;
    }
}

impl<T: Field> SubAssign<&Poly<T>> for Poly<T> {
    fn sub_assign(&mut self, rhs: &Poly<T>) {
        *self = &*self - rhs;
    }
}

impl<T: Field> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Field> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*y")?,
                _ => write!(f, "({c})*y^{d}")?,
            }
        }
        Ok(())
    }
}
