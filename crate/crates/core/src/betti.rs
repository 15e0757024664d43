//! Intersection-form inertia, the signature-alternating condition and the
//! Betti number inequalities it implies in dimensions divisible by four.

use serde::{Deserialize, Serialize};

use crate::error::{GenusError, Result};
use crate::scalar::Field;

/// `(b⁺, b⁻, b⁰)` of a symmetric bilinear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InertiaTriple {
    pub b_plus: usize,
    pub b_minus: usize,
    pub b_zero: usize,
}

impl InertiaTriple {
    pub fn new(b_plus: usize, b_minus: usize, b_zero: usize) -> Self {
        InertiaTriple { b_plus, b_minus, b_zero }
    }

    pub fn size(&self) -> usize {
        self.b_plus + self.b_minus + self.b_zero
    }

    pub fn signature(&self) -> i64 {
        self.b_plus as i64 - self.b_minus as i64
    }
}

/// Inertia by symmetric Gaussian elimination (congruence diagonalization).
///
/// A zero pivot with a nonzero off-diagonal entry `a_ij` is repaired by the
/// congruence `e_i ↦ e_i + e_j`, which puts `2a_ij` on the diagonal.
pub fn inertia<T: Field>(matrix: &[Vec<T>]) -> Result<InertiaTriple> {
    let k = matrix.len();
    if matrix.iter().any(|row| row.len() != k) {
        return Err(GenusError::Invalid("intersection form must be square".into()));
    }
    for i in 0..k {
        for j in 0..i {
            if matrix[i][j] != matrix[j][i] {
                return Err(GenusError::NotSymmetric);
            }
        }
    }

    let mut a: Vec<Vec<T>> = matrix.to_vec();
    let mut out = InertiaTriple::new(0, 0, 0);
    for s in 0..k {
        if a[s][s].is_zero() {
            let pivot_row = if let Some(i) = (s + 1..k).find(|&i| !a[i][i].is_zero()) {
                i
            } else if let Some((i, j)) =
                (s..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
            {
                add_congruent(&mut a, i, j);
                i
            } else {
                out.b_zero += k - s;
                return Ok(out);
            };
            if pivot_row != s {
                a.swap(s, pivot_row);
                for row in a.iter_mut() {
                    row.swap(s, pivot_row);
                }
            }
        }
        let pivot = a[s][s].clone();
        for j in s + 1..k {
            if a[j][s].is_zero() {
                continue;
            }
            let factor = a[j][s].clone() / pivot.clone();
            for c in s..k {
                let v = a[j][c].clone() - factor.clone() * a[s][c].clone();
                a[j][c] = v;
            }
            for r in s..k {
                let v = a[r][j].clone() - factor.clone() * a[r][s].clone();
                a[r][j] = v;
            }
        }
        if pivot.is_positive() {
            out.b_plus += 1;
        } else {
            out.b_minus += 1;
        }
    }
    Ok(out)
}

/// Row and column `i` += row and column `j`.
fn add_congruent<T: Field>(a: &mut [Vec<T>], i: usize, j: usize) {
    let k = a.len();
    for c in 0..k {
        let v = a[i][c].clone() + a[j][c].clone();
        a[i][c] = v;
    }
    for r in 0..k {
        let v = a[r][i].clone() + a[r][j].clone();
        a[r][i] = v;
    }
}

/// Rank over the field by row reduction.
pub fn rank<T: Field>(m: &[Vec<T>]) -> usize {
    let mut a = m.to_vec();
    let (rows, cols) = (a.len(), a.first().map_or(0, |r| r.len()));
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = a[r][c].clone() / a[rank][c].clone();
                for cc in 0..cols {
                    let v = a[r][cc].clone() - f.clone() * a[rank][cc].clone();
                    a[r][cc] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `PᵀAP`
pub fn congruence<T: Field>(p: &[Vec<T>], a: &[Vec<T>]) -> Vec<Vec<T>> {
    let k = a.len();
    let mut out = vec![vec![T::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let mut s = T::zero();
            for r in 0..k {
                for c in 0..k {
                    s = s + p[r][i].clone() * a[r][c].clone() * p[c][j].clone();
                }
            }
            out[i][j] = s;
        }
    }
    out
}

/// Real dimension, full Betti vector and (optionally) the signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BettiWire", into = "BettiWire")]
pub struct BettiProfile {
    dim: usize,
    betti: Vec<u64>,
    sigma: Option<i64>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct BettiWire {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    betti: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    even_betti: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sigma: Option<i64>,
}

impl TryFrom<BettiWire> for BettiProfile {
    type Error = GenusError;

    fn try_from(w: BettiWire) -> Result<Self> {
        match (w.betti, w.even_betti) {
            (Some(b), None) => BettiProfile::new(w.dim, b, w.sigma),
            (None, Some(e)) => BettiProfile::from_even(w.dim, &e, w.sigma),
            _ => Err(GenusError::Invalid("give exactly one of `betti` and `evenBetti`".into())),
        }
    }
}

impl From<BettiProfile> for BettiWire {
    fn from(p: BettiProfile) -> Self {
        BettiWire { dim: p.dim, betti: Some(p.betti), even_betti: None, sigma: p.sigma }
    }
}

impl BettiProfile {
    /// Checks length, Poincaré duality and the signature convention in
    /// dimensions not divisible by four.
    pub fn new(dim: usize, betti: Vec<u64>, sigma: Option<i64>) -> Result<Self> {
        if !dim.is_multiple_of(2) {
            return Err(GenusError::Invalid(format!("dimension {dim} is odd")));
        }
        if betti.len() != dim + 1 {
            return Err(GenusError::Invalid(format!(
                "expected {} Betti numbers for dimension {dim}, got {}",
                dim + 1,
                betti.len()
            )));
        }
        if (0..=dim).any(|i| betti[i] != betti[dim - i]) {
            return Err(GenusError::Inconsistent("Betti numbers violate Poincaré duality".into()));
        }
        if !dim.is_multiple_of(4) && sigma.is_some_and(|s| s != 0) {
            return Err(GenusError::Inconsistent(format!("signature must vanish in dimension {dim}")));
        }
        Ok(BettiProfile { dim, betti, sigma })
    }

    /// Profile with vanishing odd Betti numbers.
    pub fn from_even(dim: usize, even: &[u64], sigma: Option<i64>) -> Result<Self> {
        if !dim.is_multiple_of(2) || even.len() != dim / 2 + 1 {
            return Err(GenusError::Invalid(format!(
                "expected {} even Betti numbers for dimension {dim}",
                dim / 2 + 1
            )));
        }
        let mut betti = vec![0; dim + 1];
        for (i, &b) in even.iter().enumerate() {
            betti[2 * i] = b;
        }
        Self::new(dim, betti, sigma)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn betti(&self) -> &[u64] {
        &self.betti
    }

    pub fn b(&self, i: usize) -> u64 {
        self.betti.get(i).copied().unwrap_or(0)
    }

    pub fn sigma(&self) -> Option<i64> {
        self.sigma
    }

    pub fn with_sigma(mut self, sigma: i64) -> Result<Self> {
        self.sigma = Some(sigma);
        Self::new(self.dim, self.betti, self.sigma)
    }

    pub fn even_betti(&self) -> Vec<u64> {
        self.betti.iter().step_by(2).copied().collect()
    }

    /// `Σ_i (-1)^i b_{2i}`
    pub fn alternating_even_sum(&self) -> i64 {
        self.even_betti().iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// `P_y = Σ b_j y^j`
    pub fn poincare_polynomial(&self) -> crate::YPolynomial {
        crate::YPolynomial::from_coeffs(self.betti.iter().map(|&b| crate::Rational::from_int(b as i64)).collect())
    }

    /// Künneth formula; signatures multiply.
    pub fn product(&self, other: &BettiProfile) -> BettiProfile {
        let dim = self.dim + other.dim;
        let mut betti = vec![0u64; dim + 1];
        for (i, a) in self.betti.iter().enumerate() {
            for (j, b) in other.betti.iter().enumerate() {
                betti[i + j] += a * b;
            }
        }
        let sigma = match (self.sigma, other.sigma) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        BettiProfile { dim, betti, sigma }
    }

    /// `(b⁺, b⁻)` of the middle form from `b_{2m}` and `σ`.
    pub fn middle_inertia(&self) -> Result<(u64, u64)> {
        if !self.dim.is_multiple_of(4) {
            return Err(GenusError::Invalid(format!("dimension {} is not divisible by 4", self.dim)));
        }
        let sigma = self.sigma.ok_or_else(|| GenusError::missing("signature"))?;
        let mid = self.b(self.dim / 2) as i64;
        if (mid + sigma).rem_euclid(2) != 0 {
            return Err(GenusError::Inconsistent(format!(
                "b_{} = {mid} and signature {sigma} have different parity",
                self.dim / 2
            )));
        }
        let plus = (mid + sigma) / 2;
        let minus = (mid - sigma) / 2;
        if plus < 0 || minus < 0 {
            return Err(GenusError::Inconsistent(format!(
                "|signature| = {} exceeds b_{} = {mid}",
                sigma.abs(),
                self.dim / 2
            )));
        }
        Ok((plus as u64, minus as u64))
    }
}

/// `σ = Σ (-1)^i b_{2i}`. Always true in dimensions `≡ 2 (mod 4)` where both
/// sides vanish.
pub fn signature_alternating(profile: &BettiProfile) -> Result<bool> {
    let sigma = profile.sigma.ok_or_else(|| GenusError::missing("signature"))?;
    Ok(sigma == profile.alternating_even_sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CsClassification {
    /// The middle cohomology satisfies the reverse Cauchy-Schwarz inequality.
    pub reverse_cs: bool,
    /// The middle cohomology satisfies the Cauchy-Schwarz inequality.
    pub cs: bool,
}

/// Reverse Cauchy-Schwarz iff `b⁺ = 1`; Cauchy-Schwarz iff `b⁻ = 0`.
///
/// The middle form of a symplectic manifold always has `b⁺ ≥ 1`
/// (`∫ω^{2m} > 0`), so `b⁺ = 0` is rejected.
pub fn cs_classification(inertia: &InertiaTriple) -> Result<CsClassification> {
    if inertia.b_plus == 0 {
        return Err(GenusError::Inconsistent("b⁺ = 0 cannot come from a symplectic middle form".into()));
    }
    Ok(CsClassification { reverse_cs: inertia.b_plus == 1, cs: inertia.b_minus == 0 })
}

/// One of the two Betti inequalities in dimension `4m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BettiInequality {
    pub k: usize,
    /// Indices `j` of the `b_j` summed on the left.
    pub lhs_indices: Vec<usize>,
    pub rhs_indices: Vec<usize>,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
    pub equality: bool,
    /// `b⁺ = 1` for the first inequality, `b⁻ = 0` for the second.
    pub criterion: bool,
    /// `equality ⟺ criterion`.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Mainapp5Report {
    pub dim: usize,
    pub m: usize,
    pub b_plus: u64,
    pub b_minus: u64,
    /// The hypothesis: σ equals the alternating even Betti sum.
    pub signature_alternating: bool,
    pub classification: CsClassification,
    /// `Σ_{i<k} b_{2+4i} ≤ Σ_{i<k} b_{4+4i}`, `k = ⌊m/2⌋`.
    pub upper: BettiInequality,
    /// `Σ_{i<k} b_{2+4i} ≥ Σ_{i<k} b_{4i}`, `k = ⌈m/2⌉`.
    pub lower: BettiInequality,
}

impl Mainapp5Report {
    /// Under the hypothesis both inequalities hold and both equality cases
    /// match the inertia criteria.
    pub fn confirms(&self) -> bool {
        !self.signature_alternating
            || (self.upper.holds && self.lower.holds && self.upper.consistent && self.lower.consistent)
    }
}

/// Betti inequalities of a signature-alternating manifold of dimension `4m`,
/// with their equality cases.
pub fn mainapp5_check(profile: &BettiProfile) -> Result<Mainapp5Report> {
    if !profile.dim.is_multiple_of(4) {
        return Err(GenusError::Invalid(format!("dimension {} is not divisible by 4", profile.dim)));
    }
    let m = profile.dim / 4;
    let (b_plus, b_minus) = profile.middle_inertia()?;
    let alternating = signature_alternating(profile)?;
    let sum = |idx: &[usize]| idx.iter().map(|&j| profile.b(j)).sum::<u64>();

    let k_up = m / 2;
    let lhs_up: Vec<usize> = (0..k_up).map(|i| 2 + 4 * i).collect();
    let rhs_up: Vec<usize> = (0..k_up).map(|i| 4 + 4 * i).collect();
    let (l, r) = (sum(&lhs_up), sum(&rhs_up));
    let upper = BettiInequality {
        k: k_up,
        lhs: l,
        rhs: r,
        holds: l <= r,
        equality: l == r,
        criterion: b_plus == 1,
        consistent: (l == r) == (b_plus == 1),
        lhs_indices: lhs_up,
        rhs_indices: rhs_up,
    };

    let k_low = m.div_ceil(2);
    let lhs_low: Vec<usize> = (0..k_low).map(|i| 2 + 4 * i).collect();
    let rhs_low: Vec<usize> = (0..k_low).map(|i| 4 * i).collect();
    let (l, r) = (sum(&lhs_low), sum(&rhs_low));
    let lower = BettiInequality {
        k: k_low,
        lhs: l,
        rhs: r,
        holds: l >= r,
        equality: l == r,
        criterion: b_minus == 0,
        consistent: (l == r) == (b_minus == 0),
        lhs_indices: lhs_low,
        rhs_indices: rhs_low,
    };

    let classification = CsClassification { reverse_cs: b_plus == 1, cs: b_minus == 0 };
    Ok(Mainapp5Report {
        dim: profile.dim,
        m,
        b_plus,
        b_minus,
        signature_alternating: alternating,
        classification,
        upper,
        lower,
    })
}

/// Diagnostic for the open unimodality question: is
/// `b_2 ≤ b_4 ≤ … ≤ b_{2⌊n/2⌋}` for complex dimension `n`?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct UnimodalityReport {
    pub label: String,
    /// Indices `j` of the chain `b_j`.
    pub indices: Vec<usize>,
    pub values: Vec<u64>,
    pub holds: bool,
    /// First `j` with `b_j < b_{j-2}` along the chain.
    pub first_failure: Option<usize>,
}

pub fn tolman_unimodality_report(profile: &BettiProfile) -> UnimodalityReport {
    let n = profile.dim / 2;
    let top = n - n % 2;
    let indices: Vec<usize> = (2..=top).step_by(2).collect();
    let values: Vec<u64> = indices.iter().map(|&j| profile.b(j)).collect();
    let first_failure = indices.windows(2).zip(values.windows(2)).find(|(_, v)| v[1] < v[0]).map(|(j, _)| j[1]);
    UnimodalityReport {
        label: "conjecture diagnostic (not a theorem)".into(),
        indices,
        values,
        holds: first_failure.is_none(),
        first_failure,
    }
}
