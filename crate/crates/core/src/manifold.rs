//! Chern-number data of a closed almost complex manifold.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::betti::BettiProfile;
use crate::cohomology::CohomologyModel;
use crate::error::{GenusError, Result};
use crate::fixedpoint::FixedPointModel;
use crate::partition::{partitions_of, Partition};
use crate::Rational;

/// User-asserted geometric annotations; never inferred.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Flags {
    #[serde(default)]
    pub pure_type: bool,
    #[serde(default)]
    pub kahler_hyperbolic: bool,
    #[serde(default, rename = "hamiltonianS1")]
    pub hamiltonian_s1: bool,
}

/// Complex dimension `n` and every Chern number `c_λ[M]`, `λ ⊢ n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ManifoldWire", into = "ManifoldWire")]
pub struct ManifoldData {
    pub name: String,
    n: usize,
    chern_numbers: BTreeMap<Partition, Rational>,
    pub flags: Flags,
    pub betti: Option<BettiProfile>,
    pub model: Option<CohomologyModel>,
    pub action: Option<FixedPointModel>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChernNumberWire {
    partition: Partition,
    #[serde(with = "crate::rational::string")]
    value: Rational,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ManifoldWire {
    #[serde(default)]
    name: String,
    n: usize,
    #[serde(default)]
    chern_numbers: Option<Vec<ChernNumberWire>>,
    #[serde(default)]
    flags: Flags,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    betti: Option<BettiProfile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    model: Option<CohomologyModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    action: Option<FixedPointModel>,
}

impl TryFrom<ManifoldWire> for ManifoldData {
    type Error = GenusError;

    /// Chern numbers may be omitted when a cohomology model is given; when
    /// both are present they must agree.
    fn try_from(w: ManifoldWire) -> Result<Self> {
        let from_model = w.model.as_ref().map(|m| -> Result<_> {
            m.validate()?;
            if m.dimension() != w.n {
                return Err(GenusError::DimensionMismatch { expected: w.n, found: m.dimension() });
            }
            Ok(m.chern_numbers())
        });
        let listed = match w.chern_numbers {
            Some(list) => {
                let mut map = BTreeMap::new();
                for t in list {
                    if map.insert(t.partition.clone(), t.value).is_some() {
                        return Err(GenusError::Invalid(format!("Chern number {} listed twice", t.partition)));
                    }
                }
                Some(map)
            }
            None => None,
        };
        let chern_numbers = match (listed, from_model) {
            (Some(l), Some(m)) => {
                let m = m?;
                if l != m {
                    return Err(GenusError::Inconsistent(
                        "listed Chern numbers disagree with the cohomology model".into(),
                    ));
                }
                l
            }
            (Some(l), None) => l,
            (None, Some(m)) => m?,
            (None, None) => return Err(GenusError::missing("chernNumbers or model")),
        };
        let data = ManifoldData {
            name: w.name,
            n: w.n,
            chern_numbers,
            flags: w.flags,
            betti: w.betti,
            model: w.model,
            action: w.action,
        };
        data.validate()?;
        Ok(data)
    }
}

impl From<ManifoldData> for ManifoldWire {
    fn from(m: ManifoldData) -> Self {
        ManifoldWire {
            name: m.name,
            n: m.n,
            chern_numbers: Some(
                m.chern_numbers.into_iter().map(|(partition, value)| ChernNumberWire { partition, value }).collect(),
            ),
            flags: m.flags,
            betti: m.betti,
            model: m.model,
            action: m.action,
        }
    }
}

impl ManifoldData {
    pub fn from_chern_numbers(
        name: impl Into<String>,
        n: usize,
        chern_numbers: BTreeMap<Partition, Rational>,
    ) -> Result<Self> {
        let data = ManifoldData {
            name: name.into(),
            n,
            chern_numbers,
            flags: Flags::default(),
            betti: None,
            model: None,
            action: None,
        };
        data.validate()?;
        Ok(data)
    }

    /// Chern numbers obtained by integrating over the model.
    pub fn from_model(name: impl Into<String>, model: CohomologyModel) -> Result<Self> {
        model.validate()?;
        let mut data = Self::from_chern_numbers(name, model.dimension(), model.chern_numbers())?;
        data.model = Some(model);
        Ok(data)
    }

    pub fn with_flags(mut self, flags: Flags) -> Self {
        self.flags = flags;
        self
    }

    pub fn with_betti(mut self, betti: BettiProfile) -> Result<Self> {
        if betti.dim() != 2 * self.n {
            return Err(GenusError::DimensionMismatch { expected: 2 * self.n, found: betti.dim() });
        }
        self.betti = Some(betti);
        Ok(self)
    }

    pub fn with_action(mut self, action: FixedPointModel) -> Result<Self> {
        if action.n() != self.n {
            return Err(GenusError::DimensionMismatch { expected: self.n, found: action.n() });
        }
        self.action = Some(action);
        Ok(self)
    }

    /// Every partition of `n` has a value and nothing else does.
    pub fn validate(&self) -> Result<()> {
        let basis = partitions_of(self.n);
        for p in &basis {
            if !self.chern_numbers.contains_key(p) {
                return Err(GenusError::missing(format!("Chern number {p}")));
            }
        }
        if self.chern_numbers.len() != basis.len() {
            let extra = self.chern_numbers.keys().find(|p| p.weight() != self.n);
            return Err(GenusError::Invalid(format!(
                "Chern number {} has the wrong weight for n = {}",
                extra.map(ToString::to_string).unwrap_or_default(),
                self.n
            )));
        }
        if let Some(b) = &self.betti {
            if b.dim() != 2 * self.n {
                return Err(GenusError::DimensionMismatch { expected: 2 * self.n, found: b.dim() });
            }
        }
        if let Some(a) = &self.action {
            if a.n() != self.n {
                return Err(GenusError::DimensionMismatch { expected: self.n, found: a.n() });
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chern_numbers(&self) -> &BTreeMap<Partition, Rational> {
        &self.chern_numbers
    }

    pub fn chern_number(&self, p: &Partition) -> Result<&Rational> {
        self.chern_numbers.get(p).ok_or_else(|| GenusError::missing(format!("Chern number {p}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn p2_numbers() -> BTreeMap<Partition, Rational> {
        [(vec![2], 3), (vec![1, 1], 9)]
            .into_iter()
            .map(|(p, v)| (Partition::new(p).unwrap(), Rational::from_int(v)))
            .collect()
    }

    #[test]
    fn requires_every_partition() {
        let mut m = p2_numbers();
        assert!(ManifoldData::from_chern_numbers("P2", 2, m.clone()).is_ok());
        m.remove(&Partition::single(2));
        assert!(matches!(ManifoldData::from_chern_numbers("x", 2, m), Err(GenusError::Missing { .. })));
        let mut m = p2_numbers();
        m.insert(Partition::single(3), Rational::from_int(1));
        assert!(ManifoldData::from_chern_numbers("x", 2, m).is_err());
    }

    #[test]
    fn json_roundtrip_and_field_names() {
        let m = ManifoldData::from_chern_numbers("P2", 2, p2_numbers())
            .unwrap()
            .with_flags(Flags { pure_type: true, ..Flags::default() });
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains(r#""chernNumbers":[{"partition":[2],"value":"3"},{"partition":[1,1],"value":"9"}]"#));
        assert!(s.contains(r#""pureType":true"#));
        assert!(s.contains(r#""hamiltonianS1":false"#));
        let back: ManifoldData = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn rejects_duplicates_and_unknown_fields() {
        let dup = r#"{"n":1,"chernNumbers":[{"partition":[1],"value":"2"},{"partition":[1],"value":"2"}]}"#;
        assert!(serde_json::from_str::<ManifoldData>(dup).is_err());
        let unknown = r#"{"n":1,"chernNumbers":[{"partition":[1],"value":"2"}],"colour":1}"#;
        assert!(serde_json::from_str::<ManifoldData>(unknown).is_err());
        let none = r#"{"n":1}"#;
        assert!(serde_json::from_str::<ManifoldData>(none).is_err());
    }
}
