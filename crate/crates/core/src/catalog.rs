//! Manifolds with closed-form Chern data and standard circle actions.
//!
//! Spec strings: `pn:N`, `product:A,B[,…]`, `hyp:N:D`, `pnaction:N:a0,…,aN`,
//! `fpp`, `k3`.

use serde::{Deserialize, Serialize};

use crate::betti::BettiProfile;
use crate::cohomology::{ClassPoly, CohomologyModel, Generator};
use crate::error::{GenusError, Result};
use crate::fixedpoint::{FixedComponent, FixedPointModel};
use crate::genus::{specialize, Specialization};
use crate::manifold::{Flags, ManifoldData};
use crate::partition::Partition;
use crate::rational::to_i64;
use crate::scalar::{binomial, Field};
use crate::Rational;

fn single_generator(n: usize, top_integral: i64, chern: Vec<Rational>) -> Result<CohomologyModel> {
    CohomologyModel::new(
        vec![Generator { name: "h".into(), top: n }],
        Rational::from_int(top_integral),
        ClassPoly::from_terms(chern.into_iter().enumerate().map(|(k, c)| (vec![k], c))),
    )
}

/// `P^n` with `c(P^n) = (1+h)^{n+1}`, its Betti numbers and the standard action.
pub fn projective_space(n: usize) -> Result<ManifoldData> {
    let chern = (0..=n).map(|k| binomial::<Rational>(n + 1, k)).collect();
    let model = single_generator(n, 1, chern)?;
    let sigma = if n.is_multiple_of(2) { 1 } else { 0 };
    let betti = BettiProfile::from_even(2 * n, &vec![1; n + 1], Some(sigma))?;
    let exponents: Vec<i64> = (0..=n as i64).collect();
    ManifoldData::from_model(format!("P^{n}"), model)?
        .with_flags(Flags { pure_type: true, kahler_hyperbolic: false, hamiltonian_s1: true })
        .with_betti(betti)?
        .with_action(standard_pn_action(n, &exponents)?)
}

/// `M × N` through the tensor product of cohomology models.
pub fn product(a: &ManifoldData, b: &ManifoldData) -> Result<ManifoldData> {
    let ma = a.model.as_ref().ok_or_else(|| GenusError::missing(format!("cohomology model of {}", a.name)))?;
    let mb = b.model.as_ref().ok_or_else(|| GenusError::missing(format!("cohomology model of {}", b.name)))?;
    let mut out = ManifoldData::from_model(format!("{} x {}", a.name, b.name), ma.product(mb))?.with_flags(Flags {
        pure_type: a.flags.pure_type && b.flags.pure_type,
        kahler_hyperbolic: a.flags.kahler_hyperbolic && b.flags.kahler_hyperbolic,
        hamiltonian_s1: a.flags.hamiltonian_s1 && b.flags.hamiltonian_s1,
    });
    if let (Some(x), Some(y)) = (&a.betti, &b.betti) {
        out = out.with_betti(x.product(y))?;
    }
    if let (Some(x), Some(y)) = (&a.action, &b.action) {
        out = out.with_action(x.product(y))?;
    }
    Ok(out)
}

/// Degree-`d` hypersurface `X ⊂ P^{n+1}`: `c(X) = (1+h)^{n+2}(1+dh)^{-1}`,
/// `∫ h^n = d`.
pub fn hypersurface(n: usize, d: u32) -> Result<ManifoldData> {
    if n == 0 || d == 0 {
        return Err(GenusError::Invalid("hypersurface needs n ≥ 1 and d ≥ 1".into()));
    }
    let dq = Rational::from_int(d as i64);
    // (1+dh)^{-1} = Σ (-dh)^k in the truncated ring.
    let chern: Vec<Rational> = (0..=n)
        .map(|k| {
            (0..=k).fold(Rational::from_int(0), |acc, j| {
                let geometric = num_traits::pow(-dq.clone(), k - j);
                acc + binomial::<Rational>(n + 2, j) * geometric
            })
        })
        .collect();
    let model = single_generator(n, d as i64, chern)?;
    let mut m = ManifoldData::from_model(format!("X_{d} in P^{}", n + 1), model)?;
    m.flags = Flags { pure_type: d <= 2, kahler_hyperbolic: false, hamiltonian_s1: d == 1 };
    // Lefschetz: all Betti numbers but b_n agree with P^n.
    let euler = to_i64(m.chern_number(&Partition::single(n))?)?;
    let middle = if n.is_multiple_of(2) { euler - n as i64 } else { n as i64 + 1 - euler };
    let mut betti: Vec<u64> = (0..=2 * n).map(|i| if i % 2 == 0 { 1 } else { 0 }).collect();
    betti[n] = u64::try_from(middle)
        .map_err(|_| GenusError::Inconsistent(format!("negative middle Betti number {middle}")))?;
    let sigma = if n.is_multiple_of(2) { to_i64(&specialize(&m, Specialization::Signature)?)? } else { 0 };
    m = m.with_betti(BettiProfile::new(2 * n, betti, Some(sigma))?)?;
    if d == 1 {
        let exponents: Vec<i64> = (0..=n as i64).collect();
        m = m.with_action(standard_pn_action(n, &exponents)?)?;
    }
    Ok(m)
}

/// Formal Chern numbers `c_1² = 9`, `c_2 = 3` of a fake projective plane.
pub fn fake_projective_plane() -> Result<ManifoldData> {
    let numbers = [(vec![2], 3), (vec![1, 1], 9)]
        .into_iter()
        .map(|(p, v)| Ok((Partition::new(p)?, Rational::from_int(v))))
        .collect::<Result<_>>()?;
    ManifoldData::from_chern_numbers("fake projective plane", 2, numbers)?
        .with_flags(Flags { pure_type: true, kahler_hyperbolic: true, hamiltonian_s1: false })
        .with_betti(BettiProfile::from_even(4, &[1, 1, 1], Some(1))?)
}

/// `t·[z_0:…:z_n] = [t^{a_0}z_0:…:t^{a_n}z_n]`. The fixed point `e_j` has
/// weights `a_i - a_j`, `i ≠ j`, so its index is the rank of `a_j`.
pub fn standard_pn_action(n: usize, exponents: &[i64]) -> Result<FixedPointModel> {
    if exponents.len() != n + 1 {
        return Err(GenusError::Invalid(format!("P^{n} needs {} exponents, got {}", n + 1, exponents.len())));
    }
    let components = exponents
        .iter()
        .enumerate()
        .map(|(j, &aj)| {
            let weights: Vec<i64> =
                exponents.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &ai)| ai - aj).collect();
            FixedComponent::isolated(weights).map_err(|_| GenusError::Invalid(format!("exponent {aj} is repeated")))
        })
        .collect::<Result<Vec<_>>>()?;
    FixedPointModel::new(n, true, components)
}

/// Output of a catalog spec string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CatalogItem {
    Manifold(Box<ManifoldData>),
    Action(FixedPointModel),
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| GenusError::Invalid(format!("bad {what} {s:?}")))
}

fn parse_manifold(spec: &str) -> Result<ManifoldData> {
    match make(spec)? {
        CatalogItem::Manifold(m) => Ok(*m),
        CatalogItem::Action(_) => Err(GenusError::Invalid(format!("{spec:?} is an action, not a manifold"))),
    }
}

/// Builds a catalog entry from its spec string.
pub fn make(spec: &str) -> Result<CatalogItem> {
    let spec = spec.trim();
    let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let manifold = |m: ManifoldData| Ok(CatalogItem::Manifold(Box::new(m)));
    match head {
        "pn" => manifold(projective_space(parse_usize(rest, "dimension")?)?),
        "hyp" => {
            let (n, d) =
                rest.split_once(':').ok_or_else(|| GenusError::Invalid(format!("expected hyp:N:D, got {spec:?}")))?;
            let d = parse_usize(d, "degree")?;
            let d = u32::try_from(d).map_err(|_| GenusError::Invalid(format!("degree {d} too large")))?;
            manifold(hypersurface(parse_usize(n, "dimension")?, d)?)
        }
        "product" => {
            let factors: Vec<&str> = rest.split(',').collect();
            if factors.len() < 2 {
                return Err(GenusError::Invalid(format!("a product needs two factors, got {spec:?}")));
            }
            let mut acc = parse_manifold(factors[0])?;
            for f in &factors[1..] {
                acc = product(&acc, &parse_manifold(f)?)?;
            }
            manifold(acc)
        }
        "pnaction" => {
            let (n, exps) = rest
                .split_once(':')
                .ok_or_else(|| GenusError::Invalid(format!("expected pnaction:N:a0,…,aN, got {spec:?}")))?;
            let exps = exps
                .split(',')
                .map(|e| e.trim().parse::<i64>().map_err(|_| GenusError::Invalid(format!("bad exponent {e:?}"))))
                .collect::<Result<Vec<_>>>()?;
            Ok(CatalogItem::Action(standard_pn_action(parse_usize(n, "dimension")?, &exps)?))
        }
        "fpp" if rest.is_empty() => manifold(fake_projective_plane()?),
        "k3" if rest.is_empty() => manifold(hypersurface(2, 4)?),
        _ => Err(GenusError::Invalid(format!("unknown catalog spec {spec:?}"))),
    }
}

/// `(pattern, description)` for every constructor.
pub fn list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("pn:N", "complex projective space P^N with Betti numbers and the standard circle action"),
        ("product:A,B[,...]", "product of catalog manifolds (Whitney formula, Künneth)"),
        ("hyp:N:D", "degree-D hypersurface of complex dimension N in P^(N+1)"),
        ("pnaction:N:a0,...,aN", "fixed points of t.[z_i] = [t^(a_i) z_i] on P^N"),
        ("k3", "quartic surface, alias for hyp:2:4"),
        ("fpp", "formal Chern numbers of a fake projective plane (c1^2 = 9, c2 = 3)"),
    ]
}

/// Spec strings of the manifolds used as the standard test population:
/// projective spaces, products and hypersurfaces of complex dimension ≤ 8.
pub fn standard_specs() -> Vec<String> {
    let mut specs: Vec<String> = (1..=8).map(|n| format!("pn:{n}")).collect();
    specs.extend(
        [
            "product:pn:1,pn:1",
            "product:pn:1,pn:2",
            "product:pn:2,pn:2",
            "product:pn:1,pn:1,pn:1",
            "product:pn:3,pn:4",
            "product:k3,pn:1",
            "product:k3,k3",
            "hyp:1:3",
            "hyp:2:1",
            "hyp:2:2",
            "hyp:2:3",
            "k3",
            "hyp:2:5",
            "hyp:3:4",
            "hyp:3:5",
            "hyp:4:3",
            "hyp:4:6",
            "hyp:5:2",
            "hyp:6:3",
            "hyp:8:2",
            "fpp",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    specs
}

pub fn standard_manifolds() -> Result<Vec<ManifoldData>> {
    standard_specs().iter().map(|s| parse_manifold(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::{check_duality, chi_vector, genus_of};
    use crate::partition::partitions_of;
    use crate::YPolynomial;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn c(m: &ManifoldData, parts: &[usize]) -> Rational {
        m.chern_number(&Partition::new(parts.to_vec()).unwrap()).unwrap().clone()
    }

    #[test]
    fn projective_space_numbers() {
        let p2 = projective_space(2).unwrap();
        assert_eq!((c(&p2, &[1, 1]), c(&p2, &[2])), (q(9), q(3)));
        assert_eq!(c(&projective_space(1).unwrap(), &[1]), q(2));
        for n in 1..=8 {
            let m = projective_space(n).unwrap();
            assert_eq!(c(&m, &[n]), q(n as i64 + 1));
            for p in partitions_of(n) {
                let direct = p.parts().iter().fold(q(1), |acc, &k| acc * binomial::<Rational>(n + 1, k));
                assert_eq!(*m.chern_number(&p).unwrap(), direct, "n = {n}, {p}");
            }
        }
    }

    #[test]
    fn products() {
        let p1 = projective_space(1).unwrap();
        let p1p1 = product(&p1, &p1).unwrap();
        assert_eq!((c(&p1p1, &[1, 1]), c(&p1p1, &[2])), (q(8), q(4)));
        assert_eq!(genus_of(&p1p1).unwrap(), YPolynomial::from_ints(&[1, -2, 1]));
        let p1p2 = product(&p1, &projective_space(2).unwrap()).unwrap();
        assert_eq!(c(&p1p2, &[3]), q(6));
        assert_eq!(p1p2.betti.as_ref().unwrap().betti(), &[1, 0, 2, 0, 2, 0, 1]);
        let bare = fake_projective_plane().unwrap();
        assert!(matches!(product(&bare, &p1), Err(GenusError::Missing { .. })));
    }

    #[test]
    fn hypersurfaces() {
        let k3 = hypersurface(2, 4).unwrap();
        assert_eq!((c(&k3, &[1, 1]), c(&k3, &[2])), (q(0), q(24)));
        assert_eq!(k3.betti.as_ref().unwrap().betti(), &[1, 0, 22, 0, 1]);
        assert_eq!(k3.betti.as_ref().unwrap().sigma(), Some(-16));
        let quintic = hypersurface(3, 5).unwrap();
        assert_eq!(c(&quintic, &[3]), q(-200));
        assert_eq!(quintic.betti.as_ref().unwrap().b(3), 204);
        for n in 1..=6 {
            let a = hypersurface(n, 1).unwrap();
            let b = projective_space(n).unwrap();
            assert_eq!(a.chern_numbers(), b.chern_numbers());
            assert_eq!(a.betti, b.betti);
        }
        let cubic = hypersurface(1, 3).unwrap();
        assert_eq!(c(&cubic, &[1]), q(0));
    }

    #[test]
    fn actions() {
        let m = standard_pn_action(1, &[0, 1]).unwrap();
        assert_eq!(m.components()[0].weights(), Some(&[1][..]));
        assert_eq!(m.components()[1].weights(), Some(&[-1][..]));
        let d: Vec<usize> =
            standard_pn_action(3, &[5, -2, 7, 0]).unwrap().components().iter().map(|c| c.d_f()).collect();
        assert_eq!(d, vec![2, 0, 3, 1]);
        assert!(standard_pn_action(2, &[0, 1, 1]).is_err());
        assert!(standard_pn_action(2, &[0, 1]).is_err());
    }

    #[test]
    fn standard_population_is_dual() {
        for m in standard_manifolds().unwrap() {
            assert!(m.n() <= 8);
            assert!(check_duality(&chi_vector(&m).unwrap()), "{}", m.name);
        }
    }

    #[test]
    fn spec_strings() {
        assert!(matches!(make("pn:4").unwrap(), CatalogItem::Manifold(m) if m.n() == 4));
        assert!(matches!(make("product:pn:1,pn:2").unwrap(), CatalogItem::Manifold(m) if m.n() == 3));
        assert!(matches!(make("hyp:3:5").unwrap(), CatalogItem::Manifold(m) if m.n() == 3));
        assert!(matches!(make("pnaction:4:0,1,2,3,4").unwrap(), CatalogItem::Action(a) if a.n() == 4));
        assert!(matches!(make("fpp").unwrap(), CatalogItem::Manifold(_)));
        assert!(matches!(make("pn:0").unwrap(), CatalogItem::Manifold(m) if m.n() == 0));
        for bad in ["", "pn", "pn:x", "hyp:2", "product:pn:1", "pnaction:1:0,0", "torus", "fpp:2"] {
            assert!(make(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn catalog_json_roundtrip() {
        for spec in ["pn:3", "product:pn:1,pn:1", "hyp:2:4", "pnaction:2:0,1,2", "fpp"] {
            let item = make(spec).unwrap();
            let s = serde_json::to_string(&item).unwrap();
            let back: CatalogItem = serde_json::from_str(&s).unwrap();
            assert_eq!(back, item, "{spec}");
            assert_eq!(serde_json::to_string(&back).unwrap(), s);
        }
    }
}
