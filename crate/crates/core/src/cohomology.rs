//! Truncated polynomial cohomology rings `ℚ[h_1,…,h_k]/(h_i^{n_i+1})` with a
//! fundamental class, used to integrate Chern monomials.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{GenusError, Result};
use crate::partition::{partitions_of, Partition};
use crate::rational::format_rational;
use crate::scalar::Field;
use crate::Rational;

/// A degree-2 generator `h` with `h^{top+1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Generator {
    pub name: String,
    pub top: usize,
}

/// Element of the truncated ring, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ClassPoly {
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl ClassPoly {
    pub fn one(rank: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; rank], Rational::from_int(1));
        ClassPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<usize>, Rational)>>(terms: I) -> Self {
        let mut out = ClassPoly::default();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exps: Vec<usize>, c: Rational) {
        use num_traits::Zero;
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.terms.iter()
    }

    /// Product, discarding monomials killed by the nilpotency relations.
    pub fn mul(&self, other: &ClassPoly, tops: &[usize]) -> ClassPoly {
        let mut out = ClassPoly::default();
        for (a, x) in &self.terms {
            'inner: for (b, y) in &other.terms {
                let mut e = Vec::with_capacity(tops.len());
                for i in 0..tops.len() {
                    let s = a[i] + b[i];
                    if s > tops[i] {
                        continue 'inner;
                    }
                    e.push(s);
                }
                out.add_term(e, x * y);
            }
        }
        out
    }

    /// Homogeneous part of total degree `d` (each generator has degree 1 here).
    pub fn part(&self, d: usize) -> ClassPoly {
        ClassPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<usize>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Tensor product with a class on a second factor.
    pub fn tensor(&self, other: &ClassPoly) -> ClassPoly {
        let mut out = ClassPoly::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut e = a.clone();
                e.extend_from_slice(b);
                out.add_term(e, x * y);
            }
        }
        out
    }

    pub fn coeff(&self, exps: &[usize]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(|| Rational::from_int(0))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassTermWire {
    exponents: Vec<usize>,
    #[serde(with = "crate::rational::string")]
    coeff: Rational,
}

impl Serialize for ClassPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let wire: Vec<ClassTermWire> =
            self.terms.iter().map(|(e, c)| ClassTermWire { exponents: e.clone(), coeff: c.clone() }).collect();
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ClassPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = Vec::<ClassTermWire>::deserialize(d)?;
        Ok(ClassPoly::from_terms(wire.into_iter().map(|t| (t.exponents, t.coeff))))
    }
}

/// Cohomology ring with fundamental class and total Chern class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CohomologyModel {
    pub generators: Vec<Generator>,
    /// Value of `∫ h_1^{top_1}···h_k^{top_k}`.
    #[serde(with = "crate::rational::string")]
    pub top_integral: Rational,
    pub total_chern_class: ClassPoly,
}

impl CohomologyModel {
    pub fn new(generators: Vec<Generator>, top_integral: Rational, total_chern_class: ClassPoly) -> Result<Self> {
        let model = CohomologyModel { generators, top_integral, total_chern_class };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        use num_traits::Zero;
        if self.top_integral.is_zero() {
            return Err(GenusError::Inconsistent("fundamental monomial integrates to zero".into()));
        }
        let tops = self.tops();
        for (e, _) in self.total_chern_class.terms() {
            if e.len() != tops.len() || e.iter().zip(&tops).any(|(a, t)| a > t) {
                return Err(GenusError::Inconsistent(format!("Chern class monomial {e:?} outside the truncated ring")));
            }
        }
        if self.total_chern_class.coeff(&vec![0; tops.len()]) != Rational::from_int(1) {
            return Err(GenusError::Inconsistent("total Chern class must start with 1".into()));
        }
        Ok(())
    }

    pub fn tops(&self) -> Vec<usize> {
        self.generators.iter().map(|g| g.top).collect()
    }

    /// Complex dimension `Σ n_i`.
    pub fn dimension(&self) -> usize {
        self.generators.iter().map(|g| g.top).sum()
    }

    pub fn chern_class(&self, k: usize) -> ClassPoly {
        self.total_chern_class.part(k)
    }

    pub fn integrate(&self, class: &ClassPoly) -> Rational {
        class.coeff(&self.tops()) * &self.top_integral
    }

    /// `c_λ[M]` by multiplying Chern classes in the ring and integrating.
    pub fn chern_number(&self, p: &Partition) -> Rational {
        let tops = self.tops();
        let product = p.parts().iter().fold(ClassPoly::one(tops.len()), |acc, &k| acc.mul(&self.chern_class(k), &tops));
        self.integrate(&product)
    }

    /// Every Chern number of the model.
    pub fn chern_numbers(&self) -> BTreeMap<Partition, Rational> {
        partitions_of(self.dimension())
            .into_iter()
            .map(|p| {
                let v = self.chern_number(&p);
                (p, v)
            })
            .collect()
    }

    /// Product manifold: generators side by side, Whitney product of total
    /// Chern classes, product of fundamental integrals.
    pub fn product(&self, other: &CohomologyModel) -> CohomologyModel {
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        CohomologyModel {
            generators,
            top_integral: &self.top_integral * &other.top_integral,
            total_chern_class: self.total_chern_class.tensor(&other.total_chern_class),
        }
    }

    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| format!("{}^{}=0", g.name, g.top + 1)).collect();
        format!("Q[{}], top integral {}", gens.join(", "), format_rational(&self.top_integral))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn p2() -> CohomologyModel {
        let c = ClassPoly::from_terms([(vec![0], q(1)), (vec![1], q(3)), (vec![2], q(3))]);
        CohomologyModel::new(vec![Generator { name: "h".into(), top: 2 }], q(1), c).unwrap()
    }

    #[test]
    fn integrates_projective_plane() {
        let m = p2();
        assert_eq!(m.chern_number(&Partition::new(vec![1, 1]).unwrap()), q(9));
        assert_eq!(m.chern_number(&Partition::new(vec![2]).unwrap()), q(3));
    }

    #[test]
    fn product_uses_whitney_formula() {
        let c = ClassPoly::from_terms([(vec![0], q(1)), (vec![1], q(2))]);
        let p1 = CohomologyModel::new(vec![Generator { name: "h".into(), top: 1 }], q(1), c).unwrap();
        let m = p1.product(&p1);
        assert_eq!(m.chern_number(&Partition::new(vec![1, 1]).unwrap()), q(8));
        assert_eq!(m.chern_number(&Partition::new(vec![2]).unwrap()), q(4));
    }

    #[test]
    fn rejects_degenerate_models() {
        let c = ClassPoly::from_terms([(vec![0], q(1))]);
        assert!(CohomologyModel::new(vec![Generator { name: "h".into(), top: 1 }], q(0), c.clone()).is_err());
        let bad = ClassPoly::from_terms([(vec![0], q(1)), (vec![3], q(1))]);
        assert!(CohomologyModel::new(vec![Generator { name: "h".into(), top: 1 }], q(1), bad).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let m = p2();
        let s = serde_json::to_string(&m).unwrap();
        let back: CohomologyModel = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
