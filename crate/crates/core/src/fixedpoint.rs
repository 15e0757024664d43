//! Fixed-point data of circle actions and the invariants it determines:
//! `χ_{-y}`, the Novikov polynomial and the signature.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::betti::{signature_alternating, BettiProfile};
use crate::error::{GenusError, Result};
use crate::scalar::Field;
use crate::{Rational, YPolynomial};

/// Number of negative weights at a fixed component.
pub fn negative_weight_count(weights: &[i64]) -> Result<usize> {
    if weights.contains(&0) {
        return Err(GenusError::ZeroWeight { component: 0 });
    }
    Ok(weights.iter().filter(|&&w| w < 0).count())
}

/// A connected component `F` of the fixed point set.
///
/// Isolated points (`complex_dim = 0`) default to `b = (1)`, `σ = 1` and
/// `χ_{-y} = 1`. Positive-dimensional components carry whatever topological
/// data the caller supplies; operations that need missing data fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComponentWire", into = "ComponentWire")]
pub struct FixedComponent {
    complex_dim: usize,
    weights: Option<Vec<i64>>,
    d_f: usize,
    betti: Option<Vec<u64>>,
    signature: Option<i64>,
    chi_minus_y: Option<YPolynomial>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ComponentWire {
    #[serde(default)]
    complex_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<i64>>,
    #[serde(default, rename = "dF", skip_serializing_if = "Option::is_none")]
    d_f: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    betti: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signature: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    chi_minus_y: Option<YPolynomial>,
}

impl TryFrom<ComponentWire> for FixedComponent {
    type Error = GenusError;

    fn try_from(w: ComponentWire) -> Result<Self> {
        let d_f = match (&w.weights, w.d_f) {
            (Some(ws), given) => {
                let d = negative_weight_count(ws)?;
                if given.is_some_and(|g| g != d) {
                    return Err(GenusError::Inconsistent(format!(
                        "dF = {} but the weights have {d} negative entries",
                        given.unwrap_or(0)
                    )));
                }
                d
            }
            (None, Some(d)) => d,
            (None, None) => return Err(GenusError::missing("weights (or dF) of a fixed component")),
        };
        let mut c = FixedComponent {
            complex_dim: w.complex_dim,
            weights: w.weights,
            d_f,
            betti: w.betti,
            signature: w.signature,
            chi_minus_y: w.chi_minus_y,
        };
        c.fill_point_defaults();
        Ok(c)
    }
}

impl From<FixedComponent> for ComponentWire {
    fn from(c: FixedComponent) -> Self {
        ComponentWire {
            complex_dim: c.complex_dim,
            weights: c.weights,
            d_f: Some(c.d_f),
            betti: c.betti,
            signature: c.signature,
            chi_minus_y: c.chi_minus_y,
        }
    }
}

impl FixedComponent {
    /// An isolated fixed point with the given weights.
    pub fn isolated(weights: Vec<i64>) -> Result<Self> {
        Self::with_weights(0, weights)
    }

    /// A component of complex dimension `r` with its normal weights.
    pub fn with_weights(complex_dim: usize, weights: Vec<i64>) -> Result<Self> {
        let d_f = negative_weight_count(&weights)?;
        let mut c = FixedComponent {
            complex_dim,
            weights: Some(weights),
            d_f,
            betti: None,
            signature: None,
            chi_minus_y: None,
        };
        c.fill_point_defaults();
        Ok(c)
    }

    /// A component known only through its negative-weight count.
    pub fn with_index(complex_dim: usize, d_f: usize) -> Self {
        let mut c = FixedComponent { complex_dim, weights: None, d_f, betti: None, signature: None, chi_minus_y: None };
        c.fill_point_defaults();
        c
    }

    pub fn betti(mut self, betti: Vec<u64>) -> Self {
        self.betti = Some(betti);
        self
    }

    pub fn signature(mut self, sigma: i64) -> Self {
        self.signature = Some(sigma);
        self
    }

    pub fn chi_minus_y(mut self, chi: YPolynomial) -> Self {
        self.chi_minus_y = Some(chi);
        self
    }

    fn fill_point_defaults(&mut self) {
        if self.complex_dim == 0 {
            self.betti.get_or_insert_with(|| vec![1]);
            self.signature.get_or_insert(1);
            self.chi_minus_y.get_or_insert_with(YPolynomial::one);
        }
    }

    pub fn complex_dim(&self) -> usize {
        self.complex_dim
    }

    pub fn weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    pub fn d_f(&self) -> usize {
        self.d_f
    }

    pub fn betti_numbers(&self) -> Option<&[u64]> {
        self.betti.as_deref()
    }

    pub fn sigma(&self) -> Option<i64> {
        self.signature
    }

    pub fn chi(&self) -> Option<&YPolynomial> {
        self.chi_minus_y.as_ref()
    }

    pub fn is_isolated(&self) -> bool {
        self.complex_dim == 0
    }

    /// Betti profile of `F` itself (real dimension `2r`), when known.
    pub fn profile(&self) -> Option<Result<BettiProfile>> {
        self.betti.as_ref().map(|b| BettiProfile::new(2 * self.complex_dim, b.clone(), self.signature))
    }

    fn validate(&self, index: usize, n: usize) -> Result<()> {
        if self.complex_dim > n {
            return Err(GenusError::Invalid(format!("component {index} has dimension {} > {n}", self.complex_dim)));
        }
        let codim = n - self.complex_dim;
        if let Some(ws) = &self.weights {
            if ws.contains(&0) {
                return Err(GenusError::ZeroWeight { component: index });
            }
            if ws.len() != codim {
                return Err(GenusError::Invalid(format!("component {index} needs {codim} weights, got {}", ws.len())));
            }
        }
        if self.d_f > codim {
            return Err(GenusError::Inconsistent(format!("component {index} has dF = {} > n - r = {codim}", self.d_f)));
        }
        if let Some(b) = &self.betti {
            if b.len() != 2 * self.complex_dim + 1 {
                return Err(GenusError::Invalid(format!(
                    "component {index} needs {} Betti numbers, got {}",
                    2 * self.complex_dim + 1,
                    b.len()
                )));
            }
        }
        if let Some(chi) = &self.chi_minus_y {
            if chi.degree().is_some_and(|d| d > self.complex_dim) {
                return Err(GenusError::Inconsistent(format!(
                    "component {index}: χ_{{-y}} has degree above {}",
                    self.complex_dim
                )));
            }
        }
        Ok(())
    }
}

/// The fixed point set of a circle action on a `2n`-manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModelWire", into = "ModelWire")]
pub struct FixedPointModel {
    n: usize,
    hamiltonian: bool,
    components: Vec<FixedComponent>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelWire {
    n: usize,
    #[serde(default)]
    hamiltonian: bool,
    components: Vec<FixedComponent>,
}

impl TryFrom<ModelWire> for FixedPointModel {
    type Error = GenusError;

    fn try_from(w: ModelWire) -> Result<Self> {
        FixedPointModel::new(w.n, w.hamiltonian, w.components)
    }
}

impl From<FixedPointModel> for ModelWire {
    fn from(m: FixedPointModel) -> Self {
        ModelWire { n: m.n, hamiltonian: m.hamiltonian, components: m.components }
    }
}

impl FixedPointModel {
    pub fn new(n: usize, hamiltonian: bool, components: Vec<FixedComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(GenusError::Invalid("the fixed point set must be nonempty".into()));
        }
        for (i, c) in components.iter().enumerate() {
            c.validate(i, n)?;
        }
        let model = FixedPointModel { n, hamiltonian, components };
        if hamiltonian && model.all_isolated() {
            // Minimum and maximum of the moment map.
            let has = |d: usize| model.components.iter().any(|c| c.d_f == d);
            if !has(0) || !has(n) {
                return Err(GenusError::Inconsistent(
                    "a Hamiltonian action needs fixed points of index 0 and n".into(),
                ));
            }
        }
        Ok(model)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hamiltonian(&self) -> bool {
        self.hamiltonian
    }

    pub fn components(&self) -> &[FixedComponent] {
        &self.components
    }

    pub fn all_isolated(&self) -> bool {
        self.components.iter().all(FixedComponent::is_isolated)
    }

    /// Fixed data of the product action on `M × N`: pairs of components,
    /// concatenated weights, multiplied invariants.
    pub fn product(&self, other: &FixedPointModel) -> FixedPointModel {
        let mut components = Vec::with_capacity(self.components.len() * other.components.len());
        for a in &self.components {
            for b in &other.components {
                let weights = match (&a.weights, &b.weights) {
                    (Some(x), Some(y)) => Some(x.iter().chain(y).copied().collect()),
                    _ => None,
                };
                let betti = match (&a.betti, &b.betti) {
                    (Some(x), Some(y)) => {
                        let mut out = vec![0u64; x.len() + y.len() - 1];
                        for (i, p) in x.iter().enumerate() {
                            for (j, q) in y.iter().enumerate() {
                                out[i + j] += p * q;
                            }
                        }
                        Some(out)
                    }
                    _ => None,
                };
                components.push(FixedComponent {
                    complex_dim: a.complex_dim + b.complex_dim,
                    weights,
                    d_f: a.d_f + b.d_f,
                    betti,
                    signature: a.signature.zip(b.signature).map(|(s, t)| s * t),
                    chi_minus_y: match (&a.chi_minus_y, &b.chi_minus_y) {
                        (Some(x), Some(y)) => Some(x * y),
                        _ => None,
                    },
                });
            }
        }
        FixedPointModel { n: self.n + other.n, hamiltonian: self.hamiltonian && other.hamiltonian, components }
    }
}

/// `χ_{-y}(M) = Σ_F χ_{-y}(F)·y^{d_F}`.
pub fn localized_chi_minus_y(model: &FixedPointModel) -> Result<YPolynomial> {
    let mut total = YPolynomial::zero();
    for (i, c) in model.components.iter().enumerate() {
        let chi = c.chi_minus_y.as_ref().ok_or_else(|| GenusError::missing(format!("chiMinusY of component {i}")))?;
        total += &chi.shift_degree(c.d_f);
    }
    Ok(total)
}

/// `Σ_i b_i(ξ) y^i = Σ_F P_y(F)·y^{2 d_F}`.
pub fn novikov_polynomial(model: &FixedPointModel) -> Result<YPolynomial> {
    let mut total = YPolynomial::zero();
    for (i, c) in model.components.iter().enumerate() {
        let betti = c.betti.as_ref().ok_or_else(|| GenusError::missing(format!("betti of component {i}")))?;
        let poincare = YPolynomial::from_coeffs(betti.iter().map(|&b| Rational::from_int(b as i64)).collect());
        total += &poincare.shift_degree(2 * c.d_f);
    }
    Ok(total)
}

/// `σ(M) = Σ_F σ(F)·(-1)^{d_F}`.
pub fn localized_signature(model: &FixedPointModel) -> Result<i64> {
    let mut total = 0i64;
    for (i, c) in model.components.iter().enumerate() {
        let s = c.signature.ok_or_else(|| GenusError::missing(format!("signature of component {i}")))?;
        total += if c.d_f % 2 == 0 { s } else { -s };
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IsolatedReport {
    pub chi_minus_y: YPolynomial,
    pub novikov: YPolynomial,
    /// Every odd Novikov number vanishes.
    pub odd_vanish: bool,
    /// `Novikov(y) = χ_{-y}(y²)`.
    pub matches: bool,
    /// All `b_{2i}(ξ)`, `0 ≤ i ≤ n`, are nonzero, hence `M` is χ-positive.
    pub chi_positive: bool,
}

impl IsolatedReport {
    pub fn consistent(&self) -> bool {
        self.odd_vanish && self.matches
    }
}

/// Cross-checks the two localization formulas for isolated fixed points.
pub fn consistency_isolated(model: &FixedPointModel) -> Result<IsolatedReport> {
    if !model.all_isolated() {
        return Err(GenusError::Invalid("consistency_isolated needs isolated fixed points".into()));
    }
    let chi = localized_chi_minus_y(model)?;
    let novikov = novikov_polynomial(model)?;
    let odd_vanish = novikov.terms().all(|(d, _)| d % 2 == 0);
    let matches = novikov == chi.inflate(2);
    let chi_positive = (0..=model.n).all(|i| novikov.coeff(2 * i).is_positive());
    Ok(IsolatedReport { chi_minus_y: chi, novikov, odd_vanish, matches, chi_positive })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Mainapp4Report {
    pub applicable: bool,
    /// Components failing the hypothesis, with the reason.
    pub obstructions: Vec<String>,
    pub localized_signature: Option<i64>,
    /// `Σ_i (-1)^i b_{2i}(ξ)`
    pub alternating_novikov_sum: Option<i64>,
    pub holds: Option<bool>,
}

/// When every fixed component is signature-alternating, the localized
/// signature equals the alternating sum of even Novikov numbers.
pub fn theorem_mainapp4_check(model: &FixedPointModel) -> Result<Mainapp4Report> {
    let mut obstructions = Vec::new();
    for (i, c) in model.components.iter().enumerate() {
        if c.is_isolated() {
            continue;
        }
        match c.profile() {
            None => obstructions.push(format!("component {i}: no Betti numbers")),
            Some(Err(e)) => obstructions.push(format!("component {i}: {e}")),
            Some(Ok(p)) => match signature_alternating(&p) {
                Ok(true) => {}
                Ok(false) => obstructions.push(format!("component {i}: not signature-alternating")),
                Err(e) => obstructions.push(format!("component {i}: {e}")),
            },
        }
    }
    if !obstructions.is_empty() {
        return Ok(Mainapp4Report {
            applicable: false,
            obstructions,
            localized_signature: localized_signature(model).ok(),
            alternating_novikov_sum: None,
            holds: None,
        });
    }
    let sigma = localized_signature(model)?;
    let novikov = novikov_polynomial(model)?;
    let mut alt = Rational::from_int(0);
    for i in 0..=model.n {
        let b = novikov.coeff(2 * i);
        alt = if i % 2 == 0 { alt + b } else { alt - b };
    }
    let alt = crate::rational::to_i64(&alt)?;
    Ok(Mainapp4Report {
        applicable: true,
        obstructions,
        localized_signature: Some(sigma),
        alternating_novikov_sum: Some(alt),
        holds: Some(sigma == alt),
    })
}
