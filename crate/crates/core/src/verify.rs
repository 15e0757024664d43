//! The acceptance criteria as executable checks. Every comparison is exact.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::betti::{
    congruence, cs_classification, inertia, mainapp5_check, rank, signature_alternating, BettiProfile, InertiaTriple,
};
use crate::catalog::{hypersurface, product, projective_space, standard_manifolds, standard_pn_action};
use crate::error::Result;
use crate::fixedpoint::{
    consistency_isolated, localized_chi_minus_y, localized_signature, novikov_polynomial, theorem_mainapp4_check,
    FixedComponent, FixedPointModel,
};
use crate::genus::{check_duality, chi_vector, evaluate_chern, genus_of, specialize, ChiVector, Specialization};
use crate::inequality::{check_inequalities, PositivityKind};
use crate::kexp::{
    binomial_transform, eulerian_by_descents, eulerian_identity_check, eulerian_polynomials, k_coefficients,
    verify_closed_forms,
};
use crate::scalar::Field;
use crate::{Rational, YPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Criterion {
    pub fn line(&self) -> String {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        format!("[{mark}] {:>2}. {}: {}", self.id, self.title, self.detail)
    }
}

/// Collects failures; an `Err` from the library counts as one.
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn run(&mut self, what: &str, f: impl FnOnce(&mut Tally) -> Result<()>) {
        if let Err(e) = f(self) {
            self.checked += 1;
            self.failures.push(format!("{what}: {e}"));
        }
    }

    fn finish(self, id: u8, title: &'static str, summary: String) -> Criterion {
        let passed = self.failures.is_empty();
        let mut detail = format!("{summary} ({} checks)", self.checked);
        if !passed {
            let _ = write!(detail, "; failed: {}", self.failures.join("; "));
        }
        Criterion { id, title, passed, detail }
    }
}

fn alternating_sum(n: usize) -> YPolynomial {
    YPolynomial::from_ints(&(0..=n).map(|p| if p % 2 == 0 { 1 } else { -1 }).collect::<Vec<_>>())
}

pub fn k_formula_reproduction() -> Criterion {
    let mut t = Tally::new();
    for n in 4..=8 {
        let report = verify_closed_forms(n);
        t.check(report.checks.len() == 5, || format!("n={n}: {} forms checked", report.checks.len()));
        for c in &report.checks {
            t.check(c.matches, || format!("n={n}: K_{} differs", c.j));
        }
    }
    t.finish(1, "K-formula reproduction", "K_0..K_4 closed forms, n = 4..8".into())
}

pub fn projective_space_genus() -> Criterion {
    let mut t = Tally::new();
    for n in 1..=10 {
        t.run(&format!("P^{n}"), |t| {
            let g = genus_of(&projective_space(n)?)?;
            t.check(g == alternating_sum(n), || format!("P^{n}: got {g}"));
            Ok(())
        });
    }
    t.finish(2, "Projective-space genus", "χ_y(P^n) = Σ (-y)^p, n ≤ 10".into())
}

pub fn duality() -> Criterion {
    let mut t = Tally::new();
    let mut count = 0;
    t.run("catalog", |t| {
        for m in standard_manifolds()? {
            count += 1;
            let ok = check_duality(&chi_vector(&m)?);
            t.check(ok, || m.name.clone());
        }
        Ok(())
    });
    t.finish(3, "Duality", format!("χ^p = (-1)^n χ^(n-p) on {count} catalog manifolds"))
}

pub fn inequality_optimality() -> Criterion {
    let mut t = Tally::new();
    for n in 1..=8 {
        t.run(&format!("P^{n}"), |t| {
            let reports = check_inequalities(&projective_space(n)?, PositivityKind::ChiPositive)?;
            t.check(reports.len() == n / 2 + 1, || format!("P^{n}: {} reports", reports.len()));
            for r in &reports {
                t.check(r.hypothesis_met && r.holds && r.equality && r.witness_holds, || {
                    format!("P^{n}, i={}: lhs {} rhs {}", r.index, r.lhs, r.rhs)
                });
            }
            Ok(())
        });
    }
    let mut cleared = String::new();
    t.run("P^2", |t| {
        let r = &check_inequalities(&projective_space(2)?, PositivityKind::ChiPositive)?[1];
        let target = Rational::from_int(2 * 2 * 3);
        cleared = format!("{} ≥ {} = 2(n-1)n(n+1)", r.cleared_lhs, r.cleared_rhs);
        t.check(r.cleared_lhs == target && r.cleared_rhs == target, || format!("P^2 cleared i=1: {cleared}"));
        Ok(())
    });
    t.finish(4, "Inequality optimality", format!("P^n extremal for n ≤ 8, ε = 1; P^2 cleared i=1: {cleared}"))
}

pub fn binomial_transform_consistency() -> Criterion {
    let mut t = Tally::new();
    let mut count = 0;
    t.run("catalog", |t| {
        for m in standard_manifolds()? {
            count += 1;
            let chi = chi_vector(&m)?;
            let table = k_coefficients(m.n());
            for eps in [1, -1] {
                let transformed = binomial_transform(&chi, eps)?;
                for (j, v) in transformed.iter().enumerate() {
                    let k = evaluate_chern(table.k(j), &m)?.coeff(0);
                    t.check(*v == k, || format!("{} ε={eps} K_{j}: {v} vs {k}", m.name));
                }
            }
        }
        Ok(())
    });
    t.finish(5, "Binomial transform", format!("transform of χ equals evaluated K_j on {count} catalog manifolds"))
}

pub fn localization_oracle() -> Criterion {
    let mut t = Tally::new();
    for n in 1..=6 {
        t.run(&format!("P^{n}"), |t| {
            let chi_minus_y = genus_of(&projective_space(n)?)?.flip();
            let novikov = YPolynomial::from_ints(&(0..=2 * n).map(|i| i64::from(i % 2 == 0)).collect::<Vec<_>>());
            let increasing: Vec<i64> = (0..=n as i64).collect();
            let scrambled: Vec<i64> = (0..=n as i64).map(|a| 3 * (n as i64 - a).pow(2) - a).collect();
            for exps in [increasing, scrambled] {
                let model = standard_pn_action(n, &exps)?;
                t.check(localized_chi_minus_y(&model)? == chi_minus_y, || format!("P^{n} {exps:?}: χ_-y"));
                t.check(novikov_polynomial(&model)? == novikov, || format!("P^{n} {exps:?}: Novikov"));
                t.check(consistency_isolated(&model)?.consistent(), || format!("P^{n}: isolated consistency"));
            }
            Ok(())
        });
    }
    t.finish(6, "Localization oracle", "fixed-point χ_-y and Novikov polynomial of P^n, n ≤ 6".into())
}

/// Circle-action models exercised by the signature chain.
pub fn example_actions() -> Result<Vec<(String, FixedPointModel)>> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push((format!("P^{n}"), standard_pn_action(n, &(0..=n as i64).collect::<Vec<_>>())?));
    }
    let p1 = projective_space(1)?;
    let p2 = projective_space(2)?;
    for (a, b) in [(&p1, &p1), (&p1, &p2), (&p2, &p2)] {
        let m = product(a, b)?;
        out.push((m.name.clone(), m.action.clone().expect("factors carry actions")));
    }
    let sphere = FixedComponent::with_weights(1, vec![-3])?
        .betti(vec![1, 0, 1])
        .signature(0)
        .chi_minus_y(YPolynomial::from_ints(&[1, 1]));
    out.push((
        "two points and a sphere".into(),
        FixedPointModel::new(
            2,
            false,
            vec![FixedComponent::isolated(vec![1, 2])?, FixedComponent::isolated(vec![2, 5])?, sphere],
        )?,
    ));
    let k3 = FixedComponent::with_index(2, 1)
        .betti(vec![1, 0, 22, 0, 1])
        .signature(-16)
        .chi_minus_y(YPolynomial::from_ints(&[2, 20, 2]));
    out.push(("quartic surface component".into(), FixedPointModel::new(3, false, vec![k3])?));
    Ok(out)
}

pub fn signature_chain() -> Criterion {
    let mut t = Tally::new();
    for k in 1..=3 {
        t.run(&format!("P^{}", 2 * k), |t| {
            let model = standard_pn_action(2 * k, &(0..=2 * k as i64).collect::<Vec<_>>())?;
            t.check(localized_signature(&model)? == 1, || format!("σ(P^{}) ≠ 1", 2 * k));
            Ok(())
        });
    }
    let mut applicable = 0;
    t.run("models", |t| {
        let models = example_actions()?;
        for (name, model) in &models {
            let r = theorem_mainapp4_check(model)?;
            if r.applicable {
                applicable += 1;
                t.check(r.holds == Some(true), || format!("{name}: identity fails"));
            }
            let at_minus_one = localized_chi_minus_y(model)?.eval(&Rational::from_int(-1));
            let sigma = Rational::from_int(localized_signature(model)?);
            t.check(at_minus_one == sigma, || format!("{name}: χ_-y(-1) ≠ σ"));
        }
        t.check(applicable < models.len(), || "no non-applicable model exercised".into());
        Ok(())
    });
    t.finish(
        7,
        "Signature chain",
        format!("σ(P^2k) = 1 for k ≤ 3; alternating identity on {applicable} applicable models; χ_-y(-1) = σ"),
    )
}

pub fn k3_cross_check() -> Criterion {
    let mut t = Tally::new();
    t.run("K3", |t| {
        let k3 = hypersurface(2, 4)?;
        let chi = chi_vector(&k3)?;
        t.check(chi == ChiVector::from_ints(&[2, -20, 2]), || format!("χ-vector {:?}", chi.entries));
        let chi_minus_y = genus_of(&k3)?.flip();
        t.check(chi_minus_y == YPolynomial::from_ints(&[2, 20, 2]), || format!("χ_-y = {chi_minus_y}"));
        for (at, v) in [(Specialization::Todd, 2), (Specialization::Signature, -16), (Specialization::Euler, 24)] {
            let got = specialize(&k3, at)?;
            t.check(got == Rational::from_int(v), || format!("{at:?}: {got}"));
        }
        let profile = k3.betti.clone().expect("hypersurfaces carry Betti numbers");
        t.check(profile.betti() == [1, 0, 22, 0, 1], || format!("Betti {:?}", profile.betti()));
        t.check(!signature_alternating(&profile)?, || "K3 reported signature-alternating".into());
        let r = mainapp5_check(&profile)?;
        t.check(!r.signature_alternating && (r.b_plus, r.b_minus) == (3, 19), || {
            format!("mainapp5: alternating {} b± ({}, {})", r.signature_alternating, r.b_plus, r.b_minus)
        });
        Ok(())
    });
    t.finish(
        8,
        "K3 cross-check",
        "χ = (2, -20, 2), χ_-y = 2 + 20y + 2y², Todd 2, σ -16, e 24, not signature-alternating".into(),
    )
}

pub fn eulerian_identity() -> Criterion {
    let mut t = Tally::new();
    t.run("identity", |t| {
        let r = eulerian_identity_check(8)?;
        t.check(r.closed_form, || "generating function".into());
        t.check(r.from_genus_series, || "x/Q(-y;-x)".into());
        Ok(())
    });
    let polys = eulerian_polynomials(8);
    for i in 1..=6 {
        t.check(polys[i - 1] == eulerian_by_descents(i), || format!("P_{i} vs descents"));
    }
    t.finish(9, "Eulerian identity", "order 8, P_1..P_6 against descent counts".into())
}

fn random_invertible(rng: &mut ChaCha8Rng, k: usize) -> Vec<Vec<Rational>> {
    loop {
        let p: Vec<Vec<Rational>> = (0..k)
            .map(|_| (0..k).map(|_| Rational::from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))).collect())
            .collect();
        if rank(&p) == k {
            return p;
        }
    }
}

/// Palindromic even Betti numbers in dimension `4m` with `b_0 = 1` and a
/// signature of matching parity.
fn random_profile(rng: &mut ChaCha8Rng) -> BettiProfile {
    loop {
        let m = rng.gen_range(1..=3usize);
        let half: Vec<u64> = (0..m).map(|i| if i == 0 { 1 } else { rng.gen_range(0..=4) }).collect();
        let middle = rng.gen_range(1..=8u64);
        let mut even = half.clone();
        even.push(middle);
        even.extend(half.iter().rev());
        let alternating = even.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        let sigma: i64 = if rng.gen_bool(0.5) {
            alternating
        } else {
            let b_plus = rng.gen_range(1..=middle) as i64;
            2 * b_plus - middle as i64
        };
        if let Ok(p) = BettiProfile::from_even(4 * m, &even, Some(sigma)) {
            if matches!(p.middle_inertia(), Ok((plus, _)) if plus >= 1) {
                return p;
            }
        }
    }
}

pub fn inertia_suite() -> Criterion {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    t.run("Sylvester", |t| {
        for trial in 0..100 {
            let k = rng.gen_range(1..=5);
            let d: Vec<i64> = (0..k).map(|_| rng.gen_range(-3..=3)).collect();
            let mut diag = vec![vec![Rational::from_int(0); k]; k];
            for i in 0..k {
                diag[i][i] = Rational::from_int(d[i]);
            }
            let expect = InertiaTriple::new(
                d.iter().filter(|&&x| x > 0).count(),
                d.iter().filter(|&&x| x < 0).count(),
                d.iter().filter(|&&x| x == 0).count(),
            );
            let p = random_invertible(&mut rng, k);
            let got = inertia(&congruence(&p, &diag))?;
            t.check(got == expect, || format!("trial {trial}: {got:?} vs {expect:?}"));
        }
        Ok(())
    });
    t.run("classification", |t| {
        for (plus, minus) in [(1, 5), (3, 0), (1, 0), (2, 2)] {
            let c = cs_classification(&InertiaTriple::new(plus, minus, 0))?;
            t.check(c.reverse_cs == (plus == 1) && c.cs == (minus == 0), || format!("({plus}, {minus})"));
        }
        t.check(cs_classification(&InertiaTriple::new(0, 2, 0)).is_err(), || "b⁺ = 0 accepted".into());
        Ok(())
    });
    let mut alternating = 0;
    t.run("profiles", |t| {
        for trial in 0..50 {
            let p = random_profile(&mut rng);
            let r = mainapp5_check(&p)?;
            let c = cs_classification(&InertiaTriple::new(r.b_plus as usize, r.b_minus as usize, 0))?;
            t.check(r.upper.criterion == c.reverse_cs && r.lower.criterion == c.cs, || format!("profile {trial}"));
            if r.signature_alternating {
                alternating += 1;
                t.check(r.confirms(), || format!("profile {trial}: {:?}", p.betti()));
            }
        }
        Ok(())
    });
    t.finish(
        10,
        "Inertia property suite",
        format!("100 congruences, b± classification, 50 random profiles ({alternating} signature-alternating)"),
    )
}

/// All criteria in order.
pub fn run_all() -> Vec<Criterion> {
    vec![
        k_formula_reproduction(),
        projective_space_genus(),
        duality(),
        inequality_optimality(),
        binomial_transform_consistency(),
        localization_oracle(),
        signature_chain(),
        k3_cross_check(),
        eulerian_identity(),
        inertia_suite(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_actions_are_valid() {
        let models = example_actions().unwrap();
        assert!(models.iter().any(|(_, m)| !m.all_isolated()));
        assert!(models.iter().all(|(_, m)| localized_chi_minus_y(m).is_ok()));
    }

    #[test]
    fn random_profiles_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let p = random_profile(&mut rng);
            let (plus, minus) = p.middle_inertia().unwrap();
            assert!(plus >= 1);
            assert_eq!(plus + minus, p.b(p.dim() / 2));
        }
    }

    #[test]
    fn failures_are_reported() {
        let mut t = Tally::new();
        t.check(true, || unreachable!());
        t.check(false, || "boom".into());
        let c = t.finish(99, "demo", "summary".into());
        assert!(!c.passed);
        assert!(c.line().starts_with("[FAIL] 99. demo: summary (2 checks); failed: boom"));
    }
}
