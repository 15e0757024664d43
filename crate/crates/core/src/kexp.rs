//! Taylor expansion of χ_y at `y = -1`: `χ_y = Σ_j K_j (y+1)^j`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chern::ChernPoly;
use crate::error::{GenusError, Result};
use crate::genus::{genus_table, normalized_series, ChiVector};
use crate::partition::{partitions_of, Partition};
use crate::poly::Poly;
use crate::scalar::{binomial, factorial, Field};
use crate::series::Series;
use crate::{ChernPolynomial, Rational, YPolynomial};

/// `K_0, …, K_n` for complex dimension `n`; every coefficient is a constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct KTable {
    pub n: usize,
    pub k_polys: Vec<ChernPolynomial>,
}

impl KTable {
    pub fn k(&self, j: usize) -> &ChernPolynomial {
        &self.k_polys[j]
    }

    /// `Σ_j K_j (y+1)^j`.
    pub fn reassemble(&self) -> ChernPolynomial {
        let z = YPolynomial::from_ints(&[1, 1]);
        self.k_polys.iter().enumerate().fold(ChernPoly::zero(self.n), |acc, (j, k)| &acc + &k.scale(&z.pow(j)))
    }
}

/// Re-expands every coefficient of the genus polynomial in `z = y + 1`.
pub fn k_coefficients(n: usize) -> KTable {
    let chi = &genus_table(n).chi_poly;
    let shifted = chi.map_coeffs(|a| a.shift(&Rational::from_int(-1)));
    let k_polys = (0..=n).map(|j| shifted.y_coefficient(j)).collect();
    KTable { n, k_polys }
}

/// `c_{i_1}···c_{i_k}` with `c_0 = 1`; `None` when some index is negative.
fn chern_monomial(indices: &[i64]) -> Option<Partition> {
    if indices.iter().any(|&i| i < 0) {
        return None;
    }
    let idx: Vec<usize> = indices.iter().map(|&i| i as usize).collect();
    Some(Partition::from_indices(&idx))
}

/// The printed closed forms of `K_0, …, K_4` in dimension `n`, with absent
/// monomials dropped.
pub fn closed_form(j: usize, n: usize) -> Option<ChernPolynomial> {
    let ni = n as i64;
    let r = |num: i64, den: i64| Rational::from_ratio(num, den);
    let terms: Vec<(Vec<i64>, Rational)> = match j {
        0 => vec![(vec![ni], r(1, 1))],
        1 => vec![(vec![ni], r(-ni, 2))],
        2 => vec![(vec![ni], r(ni * (3 * ni - 5), 24)), (vec![1, ni - 1], r(1, 12))],
        3 => vec![(vec![ni], r(-ni * (ni - 2) * (ni - 3), 48)), (vec![1, ni - 1], r(-(ni - 2), 24))],
        4 => {
            let s = 5760;
            vec![
                (vec![ni], r(ni * (15 * ni.pow(3) - 150 * ni.pow(2) + 485 * ni - 502), s)),
                (vec![1, ni - 1], r(4 * (15 * ni.pow(2) - 85 * ni + 108), s)),
                (vec![1, 1, ni - 2], r(8, s)),
                (vec![2, ni - 2], r(24, s)),
                (vec![1, 1, 1, ni - 3], r(-8, s)),
                (vec![2, 1, ni - 3], r(24, s)),
                (vec![3, ni - 3], r(-24, s)),
            ]
        }
        _ => return None,
    };
    let mut out = ChernPoly::zero(n);
    for (idx, c) in terms {
        if let Some(p) = chern_monomial(&idx) {
            out = &out + &ChernPoly::monomial(p, Poly::constant(c));
        }
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClosedFormCheck {
    pub j: usize,
    pub expected: ChernPolynomial,
    pub computed: ChernPolynomial,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClosedFormReport {
    pub n: usize,
    pub checks: Vec<ClosedFormCheck>,
}

impl ClosedFormReport {
    pub fn all_match(&self) -> bool {
        self.checks.iter().all(|c| c.matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &ClosedFormCheck> {
        self.checks.iter().filter(|c| !c.matches)
    }
}

/// Compares `K_j`, `j ≤ min(4, n)`, with the closed forms term by term.
pub fn verify_closed_forms(n: usize) -> ClosedFormReport {
    let table = k_coefficients(n);
    let checks = (0..=n.min(4))
        .map(|j| {
            let expected = closed_form(j, n).expect("j ≤ 4");
            let computed = table.k(j).clone();
            ClosedFormCheck { j, matches: expected == computed, expected, computed }
        })
        .collect();
    ClosedFormReport { n, checks }
}

/// `K_j = Σ_{p ≥ j} (-1)^{p+j} χ^p C(p, j)`.
///
/// `epsilon` multiplies both sides of the identity by `ε^n` and therefore
/// does not change the result; it is validated and otherwise ignored.
pub fn binomial_transform(chi: &ChiVector, epsilon: i8) -> Result<Vec<Rational>> {
    if epsilon != 1 && epsilon != -1 {
        return Err(GenusError::Invalid(format!("epsilon must be ±1, got {epsilon}")));
    }
    let n = chi.n();
    Ok((0..=n)
        .map(|j| {
            (j..=n).fold(Rational::from_int(0), |acc, p| {
                let term = chi.get(p) * binomial::<Rational>(p, j);
                if (p + j) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpanEntry {
    /// Odd index `2i + 1`.
    pub index: usize,
    /// Coefficients of `K_0, K_2, …, K_{2i}`, when a combination exists.
    #[serde(with = "crate::rational::opt_vec_string")]
    pub coefficients: Option<Vec<Rational>>,
}

impl SpanEntry {
    pub fn member(&self) -> bool {
        self.coefficients.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpanReport {
    pub n: usize,
    pub entries: Vec<SpanEntry>,
}

impl SpanReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(SpanEntry::member)
    }
}

/// Exhibits every `K_{2i+1}` as a rational combination of `K_0, …, K_{2i}`.
pub fn odd_k_span_check(n: usize) -> SpanReport {
    let table = k_coefficients(n);
    let basis = partitions_of(n);
    let column = |k: &ChernPolynomial| -> Vec<Rational> { basis.iter().map(|p| k.coeff(p).coeff(0)).collect() };
    let entries = (0..)
        .map(|i| 2 * i + 1)
        .take_while(|&odd| odd <= n)
        .map(|odd| {
            let columns: Vec<Vec<Rational>> = (0..odd).step_by(2).map(|e| column(table.k(e))).collect();
            SpanEntry { index: odd, coefficients: solve(&columns, &column(table.k(odd))) }
        })
        .collect();
    SpanReport { n, entries }
}

/// Some `x` with `Σ_j x_j columns[j] = target`, free variables set to zero.
fn solve(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let rows = target.len();
    let cols = columns.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rational::from_int(1) / m[r][c].clone();
        for v in m[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=cols {
                    let delta = f.clone() * m[r][k].clone();
                    m[i][k] = m[i][k].clone() - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::from_int(0); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

/// `P_1, …, P_upto` from `A(i,k) = (k+1)A(i-1,k) + (i-k)A(i-1,k-1)`.
pub fn eulerian_polynomials(upto: usize) -> Vec<YPolynomial> {
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(upto);
    let mut prev = vec![Rational::from_int(1)];
    for i in 1..=upto {
        if i > 1 {
            let mut next = vec![Rational::from_int(0); i];
            for k in 0..i {
                let mut v = Rational::from_int(0);
                if k < prev.len() {
                    v += Rational::from_int(k as i64 + 1) * prev[k].clone();
                }
                if k >= 1 {
                    v += Rational::from_int((i - k) as i64) * prev[k - 1].clone();
                }
                next[k] = v;
            }
            prev = next;
        }
        rows.push(prev.clone());
    }
    rows.into_iter().map(YPolynomial::from_coeffs).collect()
}

/// `Σ_{σ ∈ S_i} y^{des(σ)}` by enumerating all `i!` permutations.
pub fn eulerian_by_descents(i: usize) -> YPolynomial {
    fn walk(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, counts: &mut [i64]) {
        if rest.is_empty() {
            counts[prefix.windows(2).filter(|w| w[0] > w[1]).count()] += 1;
            return;
        }
        for k in 0..rest.len() {
            let v = rest.remove(k);
            prefix.push(v);
            walk(prefix, rest, counts);
            prefix.pop();
            rest.insert(k, v);
        }
    }
    let mut counts = vec![0; i.max(1)];
    walk(&mut Vec::new(), &mut (0..i).collect(), &mut counts);
    YPolynomial::from_ints(&counts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EulerianReport {
    pub order: usize,
    /// Generating function `(e^{x(1-y)} - 1)/(1 - y e^{x(1-y)})` matches.
    pub closed_form: bool,
    /// `x / Q(-y; -x)` from the normalized genus series matches.
    pub from_genus_series: bool,
}

impl EulerianReport {
    pub fn holds(&self) -> bool {
        self.closed_form && self.from_genus_series
    }
}

fn matches_eulerian(series: &Series<Rational>, polys: &[YPolynomial]) -> bool {
    series.coeff(0).is_zero()
        && (1..series.order()).all(|i| series.coeff(i).scale(&factorial::<Rational>(i)) == polys[i - 1])
}

/// Checks `Σ_{i ≥ 1} P_i(y) x^i / i!` for all `i < order`.
pub fn eulerian_identity_check(order: usize) -> Result<EulerianReport> {
    if order == 0 || order > 12 {
        return Err(GenusError::Invalid(format!("order must be in 1..=12, got {order}")));
    }
    let polys = eulerian_polynomials(order.saturating_sub(1));
    // With N' = Σ_{k≥1} (1-y)^{k-1} x^k/k!, e^{x(1-y)} = 1 + (1-y)N', so the
    // quotient is N'/(1 - yN') and no division by (1-y) is needed.
    let one_minus_y = YPolynomial::from_ints(&[1, -1]);
    let mut n_prime = vec![YPolynomial::zero()];
    for k in 1..order {
        n_prime.push(one_minus_y.pow(k - 1).scale(&(Rational::from_int(1) / factorial::<Rational>(k))));
    }
    let n_prime = Series::from_coeffs(order, n_prime);
    let denom = Series::one(order).sub(&n_prime.scale(&YPolynomial::y()))?;
    let closed = n_prime.div(&denom)?;

    let dual = normalized_series::<Rational>(order).flip_y().negate_x();
    let from_genus = dual.inverse()?.mul_x();

    Ok(EulerianReport {
        order,
        closed_form: matches_eulerian(&closed, &polys),
        from_genus_series: matches_eulerian(&from_genus, &polys),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from_ratio(a, b)
    }

    fn mono(parts: &[usize], c: Rational) -> ChernPolynomial {
        ChernPoly::monomial(Partition::new(parts.to_vec()).unwrap(), Poly::constant(c))
    }

    #[test]
    fn leading_terms_in_dimension_four() {
        let t = k_coefficients(4);
        assert_eq!(*t.k(0), mono(&[4], q(1, 1)));
        assert_eq!(*t.k(1), mono(&[4], q(-2, 1)));
        assert_eq!(*t.k(2), &mono(&[4], q(14, 12)) + &mono(&[3, 1], q(1, 12)));
    }

    #[test]
    fn dimension_two_k2() {
        let t = k_coefficients(2);
        assert_eq!(*t.k(2), &mono(&[2], q(1, 12)) + &mono(&[1, 1], q(1, 12)));
    }

    #[test]
    fn closed_forms_hold() {
        for n in 1..=9 {
            let r = verify_closed_forms(n);
            assert!(r.all_match(), "n = {n}: {:?}", r.mismatches().collect::<Vec<_>>());
        }
    }

    #[test]
    fn reassembly_is_exact() {
        for n in 0..=10 {
            assert_eq!(k_coefficients(n).reassemble(), genus_table(n).chi_poly, "n = {n}");
        }
    }

    #[test]
    fn coefficients_are_constant() {
        for n in 1..=6 {
            for k in &k_coefficients(n).k_polys {
                assert!(k.y_degree().unwrap_or(0) == 0);
            }
        }
    }

    #[test]
    fn transform_examples() {
        let ints = |v: &[i64]| v.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>();
        let p2 = ChiVector::from_ints(&[1, -1, 1]);
        assert_eq!(binomial_transform(&p2, 1).unwrap(), ints(&[3, -3, 1]));
        assert_eq!(binomial_transform(&p2, -1).unwrap(), ints(&[3, -3, 1]));
        assert_eq!(binomial_transform(&ChiVector::from_ints(&[1]), 1).unwrap(), ints(&[1]));
        let p3 = ChiVector::from_ints(&[1, -1, 1, -1]);
        assert_eq!(binomial_transform(&p3, 1).unwrap(), ints(&[4, -6, 4, -1]));
        assert!(binomial_transform(&p3, 0).is_err());
    }

    #[test]
    fn transform_inverts_taylor_shift() {
        // Transform coefficients are the Taylor coefficients at y = -1.
        let chi = ChiVector::from_ints(&[3, -7, 0, 2, 5]);
        let shifted = chi.polynomial().shift(&Rational::from_int(-1));
        assert_eq!(binomial_transform(&chi, 1).unwrap(), shifted.padded(4));
    }

    #[test]
    fn odd_coefficients_lie_in_even_span() {
        let r = odd_k_span_check(4);
        assert_eq!(r.entries[0].coefficients, Some(vec![q(-2, 1)]));
        for n in 1..=8 {
            assert!(odd_k_span_check(n).holds(), "n = {n}");
        }
        let r5 = odd_k_span_check(5);
        assert_eq!(r5.entries.iter().map(|e| e.index).collect::<Vec<_>>(), vec![1, 3, 5]);
    }

    #[test]
    fn solver_reports_inconsistency() {
        let cols = vec![vec![q(1, 1), q(0, 1)]];
        assert_eq!(solve(&cols, &[q(2, 1), q(0, 1)]), Some(vec![q(2, 1)]));
        assert_eq!(solve(&cols, &[q(2, 1), q(1, 1)]), None);
        let dependent = vec![vec![q(1, 1), q(1, 1)], vec![q(2, 1), q(2, 1)]];
        assert_eq!(solve(&dependent, &[q(3, 1), q(3, 1)]), Some(vec![q(3, 1), q(0, 1)]));
    }

    #[test]
    fn eulerian_against_descents() {
        let polys = eulerian_polynomials(8);
        assert_eq!(polys[0], YPolynomial::from_ints(&[1]));
        assert_eq!(polys[1], YPolynomial::from_ints(&[1, 1]));
        assert_eq!(polys[2], YPolynomial::from_ints(&[1, 4, 1]));
        for i in 1..=6 {
            assert_eq!(polys[i - 1], eulerian_by_descents(i), "i = {i}");
        }
        for (i, p) in polys.iter().enumerate() {
            let i = i + 1;
            let cs = p.padded(i - 1);
            assert!(cs.iter().all(|c| c > &Rational::zero()));
            assert!(cs.iter().eq(cs.iter().rev()));
            assert_eq!(cs.iter().fold(Rational::zero(), |a, c| a + c), factorial::<Rational>(i));
        }
    }

    #[test]
    fn eulerian_identity() {
        for order in [1, 4, 8, 12] {
            let r = eulerian_identity_check(order).unwrap();
            assert!(r.holds(), "order {order}: {r:?}");
        }
        assert!(eulerian_identity_check(13).is_err());
    }

    #[test]
    fn projective_space_values() {
        use crate::genus::evaluate_chern;
        use crate::manifold::ManifoldData;
        for n in 1..=8 {
            let numbers = partitions_of(n)
                .into_iter()
                .map(|p| {
                    let v = p.parts().iter().fold(q(1, 1), |acc, &k| acc * binomial::<Rational>(n + 1, k));
                    (p, v)
                })
                .collect();
            let m = ManifoldData::from_chern_numbers("Pn", n, numbers).unwrap();
            let t = k_coefficients(n);
            for j in 0..=n {
                let v = evaluate_chern(t.k(j), &m).unwrap().coeff(0);
                let sign = if j % 2 == 0 { 1 } else { -1 };
                assert_eq!(v, binomial::<Rational>(n + 1, j + 1) * Rational::from_int(sign));
            }
        }
    }
}
