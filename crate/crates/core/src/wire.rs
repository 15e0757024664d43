//! JSON encodings of polynomials in `y` and of Chern polynomials.
//!
//! `YPolynomial` ↔ `{"0": "1", "2": "-1/3"}` (nonzero terms, increasing degree);
//! `ChernPolynomial` ↔ `{"grade": n, "terms": [{"partition": [..], "coeff": {..}}]}`.

use std::collections::BTreeMap;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::partition::Partition;
use crate::rational::{format_rational, parse_rational};
use crate::{ChernPolynomial, Rational, YPolynomial};

impl Serialize for YPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<_> = self.terms().collect();
        let mut map = s.serialize_map(Some(terms.len()))?;
        for (d, c) in terms {
            map.serialize_entry(&d.to_string(), &format_rational(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for YPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = YPolynomial;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an object mapping degrees to rational strings")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut terms: BTreeMap<usize, Rational> = BTreeMap::new();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    let degree: usize = k.parse().map_err(|_| de::Error::custom(format!("bad degree key {k:?}")))?;
                    let c = parse_rational(&v).map_err(de::Error::custom)?;
                    if terms.insert(degree, c).is_some() {
                        return Err(de::Error::custom(format!("duplicate degree {degree}")));
                    }
                }
                Ok(YPolynomial::from_terms(terms))
            }
        }

        d.deserialize_map(PolyVisitor)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermWire {
    partition: Partition,
    coeff: YPolynomial,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChernWire {
    grade: usize,
    terms: Vec<TermWire>,
}

impl Serialize for ChernPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ChernWire {
            grade: self.grade(),
            terms: self.terms().map(|(p, c)| TermWire { partition: p.clone(), coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChernPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = ChernWire::deserialize(d)?;
        if let Some(t) = wire.terms.iter().find(|t| t.partition.weight() != wire.grade) {
            return Err(de::Error::custom(format!("partition {:?} does not have weight {}", t.partition, wire.grade)));
        }
        Ok(ChernPolynomial::from_terms(wire.grade, wire.terms.into_iter().map(|t| (t.partition, t.coeff))))
    }
}
