//! The χ_y-genus as a Chern polynomial and its evaluation on manifolds.
//!
//! With Chern roots `x_i`, `χ_y = ∫ ∏ Q̂(y; x_i)` where
//! `Q̂(y; x) = x(1 + y e^{-x(1+y)}) / (1 - e^{-x(1+y)})` has constant term 1.
//! Writing `log Q̂ = Σ a_k(y) x^k`, the sum `Σ_i log Q̂(x_i)` equals
//! `Σ_k a_k p_k`, and exponentiating in the graded ring gives the genus.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::chern::{power_sums_in_chern, ChernPoly};
use crate::error::{GenusError, Result};
use crate::manifold::ManifoldData;
use crate::poly::Poly;
use crate::scalar::{factorial, Field};
use crate::series::Series;
use crate::{ChernPolynomial, Rational, YPolynomial};

/// `Q̂(y; x)` truncated at `order`.
///
/// Built as `A/B` with `A = 1 + y Σ_{k≥1} (-1)^k (1+y)^{k-1} x^k/k!` and
/// `B = Σ_k (-1)^k (1+y)^k x^k/(k+1)!`, so every coefficient is polynomial.
pub fn normalized_series<T: Field>(order: usize) -> Series<T> {
    let one_plus_y = Poly::<T>::from_coeffs(vec![T::one(), T::one()]);
    let mut a = Vec::with_capacity(order);
    let mut b = Vec::with_capacity(order);
    let mut power = Poly::one(); // (1+y)^{k-1} for A, (1+y)^k for B
    let mut prev = Poly::one();
    for k in 0..order {
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        if k == 0 {
            a.push(Poly::one());
        } else {
            a.push((&Poly::y() * &prev).scale(&(sign.clone() / factorial::<T>(k))));
            prev = &prev * &one_plus_y;
        }
        b.push(power.scale(&(sign / factorial::<T>(k + 1))));
        power = &power * &one_plus_y;
    }
    let a = Series::from_coeffs(order, a);
    let b = Series::from_coeffs(order, b);
    a.div(&b).expect("B has constant term 1")
}

/// `χ_y` in complex dimension `n` as a grade-`n` Chern polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct GenusTable<T> {
    pub n: usize,
    pub chi_poly: ChernPoly<T>,
}

impl<T: Field> std::fmt::Debug for GenusTable<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "χ_y[n={}] = {}", self.n, self.chi_poly)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct GenusTableWire {
    n: usize,
    chi_poly: ChernPolynomial,
}

impl Serialize for GenusTable<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GenusTableWire { n: self.n, chi_poly: self.chi_poly.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GenusTable<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = GenusTableWire::deserialize(d)?;
        if w.chi_poly.grade() != w.n {
            return Err(serde::de::Error::custom("chiPoly grade differs from n"));
        }
        Ok(GenusTable { n: w.n, chi_poly: w.chi_poly })
    }
}

/// Computes the genus polynomial through power sums; no caching.
pub fn chi_y_chern_polynomial<T: Field>(n: usize) -> GenusTable<T> {
    if n == 0 {
        return GenusTable { n, chi_poly: ChernPoly::one() };
    }
    let log = normalized_series::<T>(n + 1).log().expect("Q̂ has constant term 1");
    let power_sums = power_sums_in_chern::<T>(n, n);
    let s: Vec<ChernPoly<T>> = (1..=n).map(|k| power_sums[k - 1].scale(log.coeff(k))).collect();
    // E_k = (1/k) Σ_{j=1}^k j S_j E_{k-j}
    let mut e: Vec<ChernPoly<T>> = vec![ChernPoly::one()];
    for k in 1..=n {
        let mut acc = ChernPoly::zero(k);
        for j in 1..=k {
            let term = (&s[j - 1] * &e[k - j]).scale_scalar(&T::from_int(j as i64));
            acc = &acc + &term;
        }
        e.push(acc.scale_scalar(&(T::one() / T::from_int(k as i64))));
    }
    GenusTable { n, chi_poly: e.pop().expect("n ≥ 1") }
}

/// Memoized [`chi_y_chern_polynomial`] over the rationals.
pub fn genus_table(n: usize) -> Arc<GenusTable<Rational>> {
    static MEMO: OnceLock<Mutex<HashMap<usize, Arc<GenusTable<Rational>>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(t) = memo.lock().expect("genus memo poisoned").get(&n) {
        return Arc::clone(t);
    }
    // Computed outside the lock; a racing duplicate computes the same value.
    let table = Arc::new(chi_y_chern_polynomial::<Rational>(n));
    Arc::clone(memo.lock().expect("genus memo poisoned").entry(n).or_insert(table))
}

/// `Σ_λ coeff_λ(y)·c_λ[M]`.
pub fn evaluate_genus(table: &GenusTable<Rational>, m: &ManifoldData) -> Result<YPolynomial> {
    if m.n() != table.n {
        return Err(GenusError::DimensionMismatch { expected: table.n, found: m.n() });
    }
    evaluate_chern(&table.chi_poly, m)
}

/// Evaluates any Chern polynomial of grade `n` on the Chern numbers of `m`.
pub fn evaluate_chern(p: &ChernPolynomial, m: &ManifoldData) -> Result<YPolynomial> {
    if p.grade() != m.n() {
        return Err(GenusError::DimensionMismatch { expected: p.grade(), found: m.n() });
    }
    let mut out = YPolynomial::zero();
    for (lambda, coeff) in p.terms() {
        out += &coeff.scale(m.chern_number(lambda)?);
    }
    Ok(out)
}

/// `(χ^0, …, χ^n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChiVector {
    #[serde(with = "crate::rational::vec_string")]
    pub entries: Vec<Rational>,
}

impl ChiVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(GenusError::Invalid("a χ-vector has at least one entry".into()));
        }
        Ok(ChiVector { entries })
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        ChiVector { entries: entries.iter().map(|&v| Rational::from_int(v)).collect() }
    }

    /// Reads `χ^p` off a genus polynomial of a manifold of dimension `n`.
    pub fn from_polynomial(p: &YPolynomial, n: usize) -> Self {
        ChiVector { entries: p.padded(n) }
    }

    pub fn n(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, p: usize) -> &Rational {
        &self.entries[p]
    }

    pub fn polynomial(&self) -> YPolynomial {
        YPolynomial::from_coeffs(self.entries.clone())
    }
}

pub fn genus_of(m: &ManifoldData) -> Result<YPolynomial> {
    evaluate_genus(&genus_table(m.n()), m)
}

pub fn chi_vector(m: &ManifoldData) -> Result<ChiVector> {
    let p = genus_of(m)?;
    if p.degree().is_some_and(|d| d > m.n()) {
        return Err(GenusError::Inconsistent("genus polynomial exceeds degree n".into()));
    }
    Ok(ChiVector::from_polynomial(&p, m.n()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Specialization {
    /// `y = -1`, the Euler characteristic `c_n[M]`.
    Euler,
    /// `y = 0`, the Todd genus `χ^0`.
    Todd,
    /// `y = 1`, the signature.
    Signature,
}

impl Specialization {
    pub fn y(self) -> Rational {
        Rational::from_int(match self {
            Specialization::Euler => -1,
            Specialization::Todd => 0,
            Specialization::Signature => 1,
        })
    }
}

pub fn specialize(m: &ManifoldData, at: Specialization) -> Result<Rational> {
    Ok(genus_of(m)?.eval(&at.y()))
}

/// `χ^p = (-1)^n χ^{n-p}` for every `p`.
pub fn check_duality(chi: &ChiVector) -> bool {
    let n = chi.n();
    (0..=n).all(|p| {
        let mirrored = chi.get(n - p);
        if n.is_multiple_of(2) {
            chi.get(p) == mirrored
        } else {
            *chi.get(p) == -mirrored.clone()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;
    use crate::scalar::binomial;
    use num_rational::Ratio;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    type Q = Rational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn mono(parts: &[usize], coeffs: &[(i64, i64)]) -> ChernPolynomial {
        ChernPoly::monomial(
            Partition::new(parts.to_vec()).unwrap(),
            Poly::from_coeffs(coeffs.iter().map(|&(a, b)| q(a, b)).collect()),
        )
    }

    fn pn(n: usize) -> ManifoldData {
        let numbers: BTreeMap<Partition, Q> = crate::partition::partitions_of(n)
            .into_iter()
            .map(|p| {
                let v = p.parts().iter().fold(Q::from_int(1), |acc, &k| acc * binomial::<Q>(n + 1, k));
                (p, v)
            })
            .collect();
        ManifoldData::from_chern_numbers(format!("P{n}"), n, numbers).unwrap()
    }

    fn k3() -> ManifoldData {
        let numbers = [(vec![2], 24), (vec![1, 1], 0)]
            .into_iter()
            .map(|(p, v)| (Partition::new(p).unwrap(), Q::from_int(v)))
            .collect();
        ManifoldData::from_chern_numbers("K3", 2, numbers).unwrap()
    }

    #[test]
    fn normalized_series_low_coefficients() {
        let s = normalized_series::<Q>(6);
        assert_eq!(*s.coeff(0), Poly::one());
        assert_eq!(*s.coeff(1), Poly::from_coeffs(vec![q(1, 2), q(-1, 2)]));
        let todd: Vec<Q> = (0..5).map(|k| s.coeff(k).eval(&Q::from_int(0))).collect();
        assert_eq!(todd, vec![q(1, 1), q(1, 2), q(1, 12), q(0, 1), q(-1, 720)]);
        for k in 0..6 {
            assert!(s.coeff(k).degree().unwrap_or(0) <= k + 1);
        }
    }

    #[test]
    fn normalized_series_against_long_division() {
        // Independent oracle: Q̂ = x / (1 - e^{-u}) · (1 + y e^{-u}) with u = (1+y)x,
        // specialised at several y and expanded with scalar series.
        for yv in [-3i64, -2, 0, 1, 2, 5] {
            let y = Q::from_int(yv);
            let order = 7;
            let u = Q::from_int(1) + y.clone();
            let e = |sign: i64, k: usize| -> Q {
                num_traits::pow(u.clone() * Q::from_int(sign), k) / crate::scalar::factorial::<Q>(k)
            };
            // (1 - e^{-u x})/x = Σ_{k≥0} -(-u)^{k+1} x^k/(k+1)!
            let den: Vec<Q> = (0..order).map(|k| -e(-1, k + 1)).collect();
            let num: Vec<Q> =
                (0..order).map(|k| if k == 0 { Q::from_int(1) + y.clone() } else { y.clone() * e(-1, k) }).collect();
            let mut quot = vec![Q::from_int(0); order];
            for k in 0..order {
                let mut acc = num[k].clone();
                for j in 0..k {
                    acc -= quot[j].clone() * den[k - j].clone();
                }
                quot[k] = acc / den[0].clone();
            }
            if u == Q::from_int(0) {
                continue;
            }
            let s = normalized_series::<Q>(order).eval_y(&y);
            let got: Vec<Q> = (0..order).map(|k| s.coeff(k).coeff(0)).collect();
            assert_eq!(got, quot, "y = {yv}");
        }
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(chi_y_chern_polynomial::<Q>(0).chi_poly, ChernPoly::one());
        assert_eq!(chi_y_chern_polynomial::<Q>(1).chi_poly, mono(&[1], &[(1, 2), (-1, 2)]));
        // ((1+y)²/12)(c_1² - 2c_2) + ((1-y)²/4) c_2
        let c11 = mono(&[1, 1], &[(1, 12), (2, 12), (1, 12)]);
        let c2 = &mono(&[2], &[(-2, 12), (-4, 12), (-2, 12)]) + &mono(&[2], &[(1, 4), (-2, 4), (1, 4)]);
        assert_eq!(chi_y_chern_polynomial::<Q>(2).chi_poly, &c11 + &c2);
    }

    #[test]
    fn todd_at_y_zero() {
        let t2 = chi_y_chern_polynomial::<Q>(2).chi_poly.at_y(&Q::from_int(0));
        assert_eq!(t2, &mono(&[1, 1], &[(1, 12)]) + &mono(&[2], &[(1, 12)]));
        let t3 = chi_y_chern_polynomial::<Q>(3).chi_poly.at_y(&Q::from_int(0));
        assert_eq!(t3, mono(&[2, 1], &[(1, 24)]));
    }

    #[test]
    fn euler_specialization_is_top_class() {
        for n in 0..=10 {
            let at = genus_table(n).chi_poly.at_y(&Q::from_int(-1));
            let expected = if n == 0 { ChernPoly::one() } else { ChernPoly::c(n) };
            assert_eq!(at, expected, "n = {n}");
        }
    }

    #[test]
    fn projective_spaces() {
        for n in 0..=6 {
            let expected: Vec<i64> = (0..=n).map(|p| if p % 2 == 0 { 1 } else { -1 }).collect();
            assert_eq!(genus_of(&pn(n)).unwrap(), Poly::from_ints(&expected));
        }
        assert_eq!(specialize(&pn(2), Specialization::Euler).unwrap(), q(3, 1));
        assert_eq!(specialize(&pn(3), Specialization::Signature).unwrap(), q(0, 1));
        assert!(check_duality(&chi_vector(&pn(4)).unwrap()));
    }

    #[test]
    fn k3_surface() {
        let m = k3();
        assert_eq!(chi_vector(&m).unwrap(), ChiVector::from_ints(&[2, -20, 2]));
        assert_eq!(genus_of(&m).unwrap().flip(), Poly::from_ints(&[2, 20, 2]));
        assert_eq!(specialize(&m, Specialization::Todd).unwrap(), q(2, 1));
        assert_eq!(specialize(&m, Specialization::Signature).unwrap(), q(-16, 1));
        assert_eq!(specialize(&m, Specialization::Euler).unwrap(), q(24, 1));
        assert!(check_duality(&chi_vector(&m).unwrap()));
    }

    #[test]
    fn duality_detects_asymmetry() {
        assert!(!check_duality(&ChiVector::from_ints(&[1, 0, 2])));
        assert!(check_duality(&ChiVector::from_ints(&[1])));
        assert!(check_duality(&ChiVector::from_ints(&[1, -1])));
        assert!(!check_duality(&ChiVector::from_ints(&[1, 1])));
    }

    #[test]
    fn dimension_mismatch() {
        let t = genus_table(3);
        assert!(matches!(evaluate_genus(&t, &pn(2)), Err(GenusError::DimensionMismatch { .. })));
    }

    #[test]
    fn memo_returns_shared_tables() {
        let a = genus_table(5);
        let b = genus_table(5);
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(*a, chi_y_chern_polynomial::<Q>(5));
    }

    #[test]
    fn fixed_width_scalar_agrees() {
        type Small = Ratio<i128>;
        for n in 0..=6 {
            let small = chi_y_chern_polynomial::<Small>(n);
            let big = chi_y_chern_polynomial::<Q>(n);
            let lifted = small.chi_poly.map_scalar(|r| Q::new((*r.numer()).into(), (*r.denom()).into()));
            assert_eq!(lifted, big.chi_poly);
        }
    }

    #[test]
    fn table_json_roundtrip() {
        let t = genus_table(3);
        let s = serde_json::to_string(&*t).unwrap();
        let back: GenusTable<Q> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, *t);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    /// `[x^n] ∏_i Q̂(y; t_i x)` computed directly from the series.
    fn split_oracle(roots: &[i64]) -> YPolynomial {
        let n = roots.len();
        let base = normalized_series::<Q>(n + 1);
        let mut prod = Series::<Q>::one(n + 1);
        for &t in roots {
            let scaled: Vec<Poly<Q>> =
                (0..=n).map(|k| base.coeff(k).scale(&num_traits::pow(Q::from_int(t), k))).collect();
            prod = prod.mul(&Series::from_coeffs(n + 1, scaled)).unwrap();
        }
        prod.coeff(n).clone()
    }

    proptest! {
        #[test]
        fn split_manifold_oracle(roots in prop::collection::vec(-3i64..=3, 1..=4)) {
            let t: Vec<Q> = roots.iter().map(|&r| Q::from_int(r)).collect();
            let via_chern = genus_table(roots.len()).chi_poly.evaluate_on_roots(&t);
            prop_assert_eq!(via_chern, split_oracle(&roots));
        }
    }
}
