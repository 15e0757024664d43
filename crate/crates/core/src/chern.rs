//! Homogeneous polynomials in the Chern classes `c_1, …, c_n` with
//! coefficients in `ℚ[y]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::partition::Partition;
use crate::poly::Poly;
use crate::scalar::Field;

/// `Σ_λ a_λ(y) c_λ` with every `λ` of weight `grade`. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct ChernPoly<T> {
    grade: usize,
    terms: BTreeMap<Partition, Poly<T>>,
}

impl<T: Field> ChernPoly<T> {
    pub fn zero(grade: usize) -> Self {
        ChernPoly { grade, terms: BTreeMap::new() }
    }

    /// The constant `1` in grade 0.
    pub fn one() -> Self {
        Self::monomial(Partition::empty(), Poly::one())
    }

    pub fn monomial(partition: Partition, coeff: Poly<T>) -> Self {
        let mut out = Self::zero(partition.weight());
        if !coeff.is_zero() {
            out.terms.insert(partition, coeff);
        }
        out
    }

    /// The generator `c_k` for `k ≥ 1`; `c_0` is the unit.
    pub fn c(k: usize) -> Self {
        if k == 0 {
            Self::one()
        } else {
            Self::monomial(Partition::single(k), Poly::one())
        }
    }

    /// Builds from `(partition, coefficient)` pairs of a common weight.
    ///
    /// Panics if some partition has the wrong weight.
    pub fn from_terms<I: IntoIterator<Item = (Partition, Poly<T>)>>(grade: usize, terms: I) -> Self {
        let mut out = Self::zero(grade);
        for (p, c) in terms {
            assert_eq!(p.weight(), grade, "inhomogeneous term {p:?} in grade {grade}");
            out.accumulate(p, &c);
        }
        out
    }

    fn accumulate(&mut self, p: Partition, c: &Poly<T>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c.clone());
            }
        }
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `c_λ` (zero when absent).
    pub fn coeff(&self, p: &Partition) -> Poly<T> {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    /// Terms in reverse-lexicographic partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Poly<T>)> {
        self.terms.iter()
    }

    /// Largest `y`-degree among the coefficients.
    pub fn y_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(Poly::degree).max()
    }

    pub fn scale(&self, c: &Poly<T>) -> Self {
        let mut out = Self::zero(self.grade);
        for (p, a) in &self.terms {
            out.accumulate(p.clone(), &(a * c));
        }
        out
    }

    pub fn scale_scalar(&self, c: &T) -> Self {
        self.scale(&Poly::constant(c.clone()))
    }

    /// Applies a map to every coefficient, dropping terms that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&Poly<T>) -> Poly<T>) -> Self {
        let mut out = Self::zero(self.grade);
        for (p, a) in &self.terms {
            out.accumulate(p.clone(), &f(a));
        }
        out
    }

    /// Specialises `y` to a number; the result has constant coefficients.
    pub fn at_y(&self, y: &T) -> Self {
        self.map_coeffs(|a| Poly::constant(a.eval(y)))
    }

    /// Coefficient of `y^k` in every term.
    pub fn y_coefficient(&self, k: usize) -> Self {
        self.map_coeffs(|a| Poly::constant(a.coeff(k)))
    }

    /// Drops every monomial that involves some `c_j` with `j > n`.
    pub fn truncate_classes(&self, n: usize) -> Self {
        let mut out = Self::zero(self.grade);
        for (p, a) in &self.terms {
            if p.largest() <= n {
                out.accumulate(p.clone(), a);
            }
        }
        out
    }

    /// `Σ_λ a_λ(y) · value(λ)`.
    pub fn evaluate(&self, mut value: impl FnMut(&Partition) -> T) -> Poly<T> {
        let mut out = Poly::zero();
        for (p, a) in &self.terms {
            out += &a.scale(&value(p));
        }
        out
    }

    /// Substitutes `c_i = e_i(t_1, …, t_m)` for the given roots.
    pub fn evaluate_on_roots(&self, roots: &[T]) -> Poly<T> {
        let e = elementary_symmetric(roots);
        self.evaluate(|p| {
            p.parts().iter().map(|&k| e.get(k).cloned().unwrap_or_else(T::zero)).fold(T::one(), |acc, v| acc * v)
        })
    }

    /// Change of scalar type.
    pub fn map_scalar<U: Field>(&self, f: impl Fn(&T) -> U) -> ChernPoly<U> {
        let mut out = ChernPoly::zero(self.grade);
        for (p, a) in &self.terms {
            out.accumulate(p.clone(), &a.map(&f));
        }
        out
    }
}

/// `e_0, …, e_m` of the given values.
pub fn elementary_symmetric<T: Field>(roots: &[T]) -> Vec<T> {
    let mut e = vec![T::zero(); roots.len() + 1];
    e[0] = T::one();
    for (i, t) in roots.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            e[k] = e[k].clone() + e[k - 1].clone() * t.clone();
        }
    }
    e
}

/// The power sum `p_k = Σ x_i^k` of the Chern roots, written in `c_1, …, c_n`
/// via Newton's identities. Classes `c_j` with `j > n` are taken to vanish.
pub fn power_sum_in_chern<T: Field>(k: usize, n: usize) -> ChernPoly<T> {
    assert!(k >= 1, "power sums start at p_1");
    power_sums_in_chern(k, n).pop().expect("k ≥ 1")
}

/// `[p_1, …, p_upto]` in terms of `c_1, …, c_n`.
pub fn power_sums_in_chern<T: Field>(upto: usize, n: usize) -> Vec<ChernPoly<T>> {
    // p_k = Σ_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
    let mut sums: Vec<ChernPoly<T>> = Vec::with_capacity(upto);
    for k in 1..=upto {
        let mut pk = ChernPoly::zero(k);
        for i in 1..k.min(n + 1) {
            let term = &ChernPoly::c(i) * &sums[k - i - 1];
            pk = if i % 2 == 1 { &pk + &term } else { &pk - &term };
        }
        if k <= n {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            pk = &pk + &ChernPoly::c(k).scale_scalar(&T::from_int(sign * k as i64));
        }
        sums.push(pk);
    }
    sums
}

impl<'a, T: Field> Add<&'a ChernPoly<T>> for &'a ChernPoly<T> {
    type Output = ChernPoly<T>;

    /// Panics on a grade mismatch: the sum would not be homogeneous.
    fn add(self, rhs: &'a ChernPoly<T>) -> ChernPoly<T> {
        assert_eq!(self.grade, rhs.grade, "adding Chern polynomials of different grades");
        let mut out = self.clone();
        for (p, a) in &rhs.terms {
            out.accumulate(p.clone(), a);
        }
        out
    }
}

impl<'a, T: Field> Sub<&'a ChernPoly<T>> for &'a ChernPoly<T> {
    type Output = ChernPoly<T>;

    fn sub(self, rhs: &'a ChernPoly<T>) -> ChernPoly<T> {
        self + &(-rhs)
    }
}

impl<T: Field> Neg for &ChernPoly<T> {
    type Output = ChernPoly<T>;

    fn neg(self) -> ChernPoly<T> {
        self.map_coeffs(|a| -a)
    }
}

impl<'a, T: Field> Mul<&'a ChernPoly<T>> for &'a ChernPoly<T> {
    type Output = ChernPoly<T>;

    fn mul(self, rhs: &'a ChernPoly<T>) -> ChernPoly<T> {
        let mut out = ChernPoly::zero(self.grade + rhs.grade);
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                out.accumulate(p.merge(q), &(a * b));
            }
        }
        out
    }
}

impl<T: Field> fmt::Debug for ChernPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Field> fmt::Display for ChernPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, a) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{a}]*{p}")?;
        }
        Ok(())
    }
}
