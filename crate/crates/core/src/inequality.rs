//! Chern number inequalities `A_i[M] ≥ ε^n A_i[P^n]` for (signed) χ-positive
//! manifolds, with `A_i = ε^n K_{2i}`, and the Miyaoka-Yau inequality.

use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{GenusError, Result};
use crate::genus::{chi_vector, evaluate_chern, ChiVector};
use crate::kexp::k_coefficients;
use crate::manifold::ManifoldData;
use crate::partition::Partition;
use crate::scalar::{binomial, Field};
use crate::{ChernPolynomial, Rational};

/// `ε = 1` for χ-positive, `ε = -1` for signed χ-positive manifolds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum PositivityKind {
    #[default]
    ChiPositive,
    SignedChiPositive,
}

impl PositivityKind {
    pub fn epsilon(self) -> i8 {
        match self {
            PositivityKind::ChiPositive => 1,
            PositivityKind::SignedChiPositive => -1,
        }
    }

    /// `ε^n`
    pub fn sign(self, n: usize) -> Rational {
        if self == PositivityKind::SignedChiPositive && n % 2 == 1 {
            Rational::from_int(-1)
        } else {
            Rational::from_int(1)
        }
    }
}

impl TryFrom<i8> for PositivityKind {
    type Error = GenusError;

    fn try_from(e: i8) -> Result<Self> {
        match e {
            1 => Ok(PositivityKind::ChiPositive),
            -1 => Ok(PositivityKind::SignedChiPositive),
            _ => Err(GenusError::Invalid(format!("epsilon must be 1 or -1, got {e}"))),
        }
    }
}

impl From<PositivityKind> for i8 {
    fn from(k: PositivityKind) -> i8 {
        k.epsilon()
    }
}

/// `A_i = ε^n K_{2i}` for `0 ≤ i ≤ ⌊n/2⌋`.
pub fn a_polynomial(i: usize, n: usize, kind: PositivityKind) -> Result<ChernPolynomial> {
    if i > n / 2 {
        return Err(GenusError::IndexOutOfRange { index: i, max: n / 2 });
    }
    Ok(k_coefficients(n).k(2 * i).scale_scalar(&kind.sign(n)))
}

/// `A_i` evaluated at `c_j = C(n+1, j)`, the Chern numbers of `P^n`.
fn a_on_projective_space(a: &ChernPolynomial, n: usize) -> Rational {
    a.evaluate(|p: &Partition| p.parts().iter().fold(Rational::one(), |acc, &k| acc * binomial::<Rational>(n + 1, k)))
        .coeff(0)
}

/// Positive integer that clears the denominators of `A_i`.
///
/// For `i = 0, 1, 2` this is `1, 12, 5760`, the normalisations in which the
/// first three inequalities are customarily written.
pub fn clearing_scale(i: usize, a: &ChernPolynomial) -> Rational {
    match i {
        0 => Rational::one(),
        1 => Rational::from_int(12),
        2 => Rational::from_int(5760),
        _ => {
            let l = a
                .terms()
                .flat_map(|(_, c)| c.coeffs().iter().map(|r| r.denom().clone()).collect::<Vec<_>>())
                .fold(num_bigint::BigInt::one(), |acc, d| acc.lcm(&d));
            Rational::from_integer(l)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InequalityReport {
    pub index: usize,
    /// `A_i[M]`
    #[serde(with = "crate::rational::string")]
    pub lhs: Rational,
    /// `ε^n A_i[P^n]`
    #[serde(with = "crate::rational::string")]
    pub rhs: Rational,
    #[serde(with = "crate::rational::string")]
    pub scale: Rational,
    #[serde(with = "crate::rational::string")]
    pub cleared_lhs: Rational,
    #[serde(with = "crate::rational::string")]
    pub cleared_rhs: Rational,
    pub holds: bool,
    pub equality: bool,
    /// The indices `p ∈ [2i, n]` at which `χ^p = ε^n(-1)^p` was tested.
    pub equality_witness: Vec<usize>,
    /// Whether `χ^p = ε^n(-1)^p` held at every witness index.
    pub witness_holds: bool,
    /// Whether `M` is (signed) χ-positive for the chosen `ε`.
    pub hypothesis_met: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Positivity {
    pub chi_positive: bool,
    pub signed_chi_positive: bool,
}

impl Positivity {
    pub fn satisfies(&self, kind: PositivityKind) -> bool {
        match kind {
            PositivityKind::ChiPositive => self.chi_positive,
            PositivityKind::SignedChiPositive => self.signed_chi_positive,
        }
    }
}

/// χ-positive: `(-1)^p χ^p > 0`; signed: `(-1)^{n+p} χ^p > 0`, for all `p`.
pub fn positivity_predicate(chi: &ChiVector) -> Positivity {
    let n = chi.n();
    let signed = |p: usize, shift: usize| {
        let v = chi.get(p);
        if (p + shift).is_multiple_of(2) {
            v.is_positive()
        } else {
            v.is_negative()
        }
    };
    Positivity { chi_positive: (0..=n).all(|p| signed(p, 0)), signed_chi_positive: (0..=n).all(|p| signed(p, n)) }
}

/// One report per `0 ≤ i ≤ ⌊n/2⌋`. Manifolds that fail the positivity
/// hypothesis still get reports, flagged through `hypothesis_met`.
pub fn check_inequalities(m: &ManifoldData, kind: PositivityKind) -> Result<Vec<InequalityReport>> {
    let n = m.n();
    let chi = chi_vector(m)?;
    let hypothesis_met = positivity_predicate(&chi).satisfies(kind);
    let eps_n = kind.sign(n);
    let table = k_coefficients(n);
    (0..=n / 2)
        .map(|i| {
            let a = table.k(2 * i).scale_scalar(&eps_n);
            let lhs = evaluate_chern(&a, m)?.coeff(0);
            let rhs = &eps_n * a_on_projective_space(&a, n);
            if i == 1
                && &rhs * Rational::from_int(12) != Rational::from_int(2 * (n as i64 - 1) * n as i64 * (n as i64 + 1))
            {
                return Err(GenusError::Inconsistent(format!("ε^n A_1[P^{n}] disagrees with 2(n-1)n(n+1)/12")));
            }
            let scale = clearing_scale(i, &a);
            let equality_witness: Vec<usize> = (2 * i..=n).collect();
            let witness_holds = equality_witness.iter().all(|&p| {
                let target = if p % 2 == 0 { eps_n.clone() } else { -eps_n.clone() };
                *chi.get(p) == target
            });
            Ok(InequalityReport {
                index: i,
                holds: lhs >= rhs,
                equality: lhs == rhs,
                cleared_lhs: &lhs * &scale,
                cleared_rhs: &rhs * &scale,
                lhs,
                rhs,
                scale,
                equality_witness,
                witness_holds,
                hypothesis_met,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NamedInequality {
    pub name: String,
    #[serde(with = "crate::rational::string")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::string")]
    pub rhs: Rational,
    pub holds: bool,
    pub equality: bool,
}

impl NamedInequality {
    fn new(name: &str, lhs: Rational, rhs: Rational) -> Self {
        NamedInequality { name: name.into(), holds: lhs >= rhs, equality: lhs == rhs, lhs, rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MiyaokaYauReport {
    pub n: usize,
    /// `c_2(-c_1)^{n-2}[M] ≥ n/(2(n+1))·(-c_1)^n[M]`
    pub main: NamedInequality,
    /// The three surface inequalities, only for `n = 2`.
    pub surface: Vec<NamedInequality>,
}

impl MiyaokaYauReport {
    pub fn all_hold(&self) -> bool {
        self.main.holds && self.surface.iter().all(|s| s.holds)
    }
}

pub fn miyaoka_yau_check(m: &ManifoldData) -> Result<MiyaokaYauReport> {
    let n = m.n();
    if n < 2 {
        return Err(GenusError::Invalid(format!("Miyaoka-Yau needs n ≥ 2, got {n}")));
    }
    let sign = |k: usize| if k.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let c1n = m.chern_number(&Partition::from_indices(&vec![1; n]))?.clone();
    let mut mixed = vec![2];
    mixed.extend(std::iter::repeat_n(1, n - 2));
    let c2c1 = m.chern_number(&Partition::from_indices(&mixed))?.clone();
    let lhs = c2c1 * sign(n - 2);
    let rhs = Rational::from_ratio(n as i64, 2 * (n as i64 + 1)) * c1n.clone() * sign(n);
    let main = NamedInequality::new("c2(-c1)^(n-2) >= n/(2(n+1)) (-c1)^n", lhs, rhs);
    let surface = if n == 2 {
        let c2 = m.chern_number(&Partition::single(2))?.clone();
        vec![
            NamedInequality::new("c2 >= 3", c2.clone(), Rational::from_int(3)),
            NamedInequality::new("c2 + c1^2 >= 12", &c2 + &c1n, Rational::from_int(12)),
            NamedInequality::new("3 c2 >= c1^2", c2 * Rational::from_int(3), c1n),
        ]
    } else {
        Vec::new()
    };
    Ok(MiyaokaYauReport { n, main, surface })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;
    use crate::poly::Poly;
    use std::collections::BTreeMap;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from_ratio(a, b)
    }

    fn surface(c11: i64, c2: i64) -> ManifoldData {
        let numbers: BTreeMap<Partition, Rational> = [(vec![2], c2), (vec![1, 1], c11)]
            .into_iter()
            .map(|(p, v)| (Partition::new(p).unwrap(), q(v, 1)))
            .collect();
        ManifoldData::from_chern_numbers("S", 2, numbers).unwrap()
    }

    fn pn(n: usize) -> ManifoldData {
        let numbers = partitions_of(n)
            .into_iter()
            .map(|p| {
                let v = p.parts().iter().fold(q(1, 1), |acc, &k| acc * binomial::<Rational>(n + 1, k));
                (p, v)
            })
            .collect();
        ManifoldData::from_chern_numbers("Pn", n, numbers).unwrap()
    }

    fn mono(parts: &[usize], c: Rational) -> ChernPolynomial {
        ChernPolynomial::monomial(Partition::new(parts.to_vec()).unwrap(), Poly::constant(c))
    }

    #[test]
    fn a_polynomials() {
        for n in 1..=6 {
            assert_eq!(a_polynomial(0, n, PositivityKind::ChiPositive).unwrap(), mono(&[n], q(1, 1)));
        }
        assert_eq!(
            a_polynomial(1, 2, PositivityKind::ChiPositive).unwrap(),
            &mono(&[1, 1], q(1, 12)) + &mono(&[2], q(1, 12))
        );
        assert_eq!(
            a_polynomial(1, 3, PositivityKind::SignedChiPositive).unwrap(),
            &mono(&[3], q(-6, 12)) + &mono(&[2, 1], q(-1, 12))
        );
        assert!(matches!(
            a_polynomial(2, 3, PositivityKind::ChiPositive),
            Err(GenusError::IndexOutOfRange { index: 2, max: 1 })
        ));
    }

    #[test]
    fn projective_spaces_are_extremal() {
        for n in 1..=8 {
            let reports = check_inequalities(&pn(n), PositivityKind::ChiPositive).unwrap();
            assert_eq!(reports.len(), n / 2 + 1);
            for r in &reports {
                assert!(r.hypothesis_met && r.holds && r.equality && r.witness_holds, "n = {n}, i = {}", r.index);
                assert_eq!(r.rhs, binomial::<Rational>(n + 1, 2 * r.index + 1));
            }
        }
    }

    #[test]
    fn equality_iff_witness_on_catalog() {
        for m in crate::catalog::standard_manifolds().unwrap() {
            for kind in [PositivityKind::ChiPositive, PositivityKind::SignedChiPositive] {
                for r in check_inequalities(&m, kind).unwrap().iter().filter(|r| r.hypothesis_met) {
                    assert!(r.holds, "{} i = {}", m.name, r.index);
                    assert_eq!(r.equality, r.witness_holds, "{} i = {}", m.name, r.index);
                }
            }
        }
    }

    #[test]
    fn projective_plane_numbers() {
        let r = check_inequalities(&pn(2), PositivityKind::ChiPositive).unwrap();
        assert_eq!((r[1].lhs.clone(), r[1].rhs.clone()), (q(1, 1), q(1, 1)));
        assert_eq!((r[1].cleared_lhs.clone(), r[1].cleared_rhs.clone()), (q(12, 1), q(12, 1)));
        assert_eq!(r[1].scale, q(12, 1));
    }

    #[test]
    fn k3_is_strict_at_zero() {
        let r = check_inequalities(&surface(0, 24), PositivityKind::ChiPositive).unwrap();
        assert_eq!((r[0].lhs.clone(), r[0].rhs.clone()), (q(24, 1), q(3, 1)));
        assert!(r[0].holds && !r[0].equality && r[0].hypothesis_met);
        assert!(!r[0].witness_holds);
    }

    #[test]
    fn hypothesis_flag() {
        assert_eq!(chi_vector(&surface(9, 3)).unwrap(), ChiVector::from_ints(&[1, -1, 1]));
        assert_eq!(chi_vector(&surface(1, 11)).unwrap(), ChiVector::from_ints(&[1, -9, 1]));
        let r = check_inequalities(&surface(8, 4), PositivityKind::SignedChiPositive).unwrap();
        assert!(r.iter().all(|r| r.hypothesis_met));
        let bad = surface(-8, 4);
        let r = check_inequalities(&bad, PositivityKind::ChiPositive).unwrap();
        assert!(r.iter().all(|r| !r.hypothesis_met));
    }

    #[test]
    fn positivity_examples() {
        let p3 = positivity_predicate(&ChiVector::from_ints(&[1, -1, 1, -1]));
        assert!(p3.chi_positive && !p3.signed_chi_positive);
        let k3 = positivity_predicate(&ChiVector::from_ints(&[2, -20, 2]));
        assert!(k3.chi_positive && k3.signed_chi_positive);
        let bad = positivity_predicate(&ChiVector::from_ints(&[1, 1]));
        assert!(!bad.chi_positive && !bad.signed_chi_positive);
    }

    #[test]
    fn cleared_scales() {
        for n in 4..=8 {
            let a2 = a_polynomial(2, n, PositivityKind::ChiPositive).unwrap();
            let cleared = a2.scale_scalar(&clearing_scale(2, &a2));
            assert!(cleared.terms().all(|(_, c)| c.coeff(0).is_integer()));
        }
        let a3 = a_polynomial(3, 6, PositivityKind::ChiPositive).unwrap();
        let s = clearing_scale(3, &a3);
        assert!(s.is_positive() && a3.scale_scalar(&s).terms().all(|(_, c)| c.coeff(0).is_integer()));
    }

    #[test]
    fn miyaoka_yau() {
        let fpp = miyaoka_yau_check(&surface(9, 3)).unwrap();
        assert!(fpp.all_hold());
        assert!(fpp.main.equality);
        assert!(fpp.surface.iter().all(|s| s.equality));
        let k3 = miyaoka_yau_check(&surface(0, 24)).unwrap();
        assert!(k3.surface[2].holds && !k3.surface[2].equality);
        assert_eq!(k3.surface[2].lhs, q(72, 1));
        assert!(miyaoka_yau_check(&pn(1)).is_err());
        let p3 = miyaoka_yau_check(&pn(3)).unwrap();
        assert!(p3.surface.is_empty());
        assert_eq!(p3.main.lhs, q(-24, 1));
    }

    #[test]
    fn kind_serde() {
        assert_eq!(serde_json::to_string(&PositivityKind::SignedChiPositive).unwrap(), "-1");
        assert_eq!(serde_json::from_str::<PositivityKind>("1").unwrap(), PositivityKind::ChiPositive);
        assert!(serde_json::from_str::<PositivityKind>("2").is_err());
    }
}
