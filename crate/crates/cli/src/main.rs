use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use genus_core::betti::{
    cs_classification, inertia, mainapp5_check, tolman_unimodality_report, BettiProfile, CsClassification,
    InertiaTriple, Mainapp5Report, UnimodalityReport,
};
use genus_core::catalog::{self, CatalogItem};
use genus_core::fixedpoint::{
    consistency_isolated, localized_chi_minus_y, localized_signature, novikov_polynomial, theorem_mainapp4_check,
    FixedPointModel, IsolatedReport, Mainapp4Report,
};
use genus_core::genus::{chi_vector, genus_table, specialize, Specialization};
use genus_core::inequality::{check_inequalities, PositivityKind};
use genus_core::kexp::{k_coefficients, odd_k_span_check, verify_closed_forms, ClosedFormReport, KTable, SpanReport};
use genus_core::manifold::ManifoldData;
use genus_core::rational::{format_rational, parse_rational};
use genus_core::verify::run_all;
use genus_core::{Rational, YPolynomial};

const DEFAULT_MAX_N: usize = 12;

#[derive(Parser)]
#[command(name = "genus", version, about = "Exact χ_y-genus, Chern number inequalities and fixed-point checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// χ_y as a Chern polynomial, or its values on a manifold.
    Chi {
        /// Complex dimension; optional when --manifold is given.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        manifold: Option<PathBuf>,
        /// Evaluate at y = -1, 0 or 1.
        #[arg(long, value_enum)]
        at: Option<At>,
    },
    /// Taylor coefficients K_j of χ_y at y = -1.
    Kcoeffs {
        #[arg(long)]
        n: usize,
        /// Also check the closed forms of K_0..K_4 and the odd-K span relation.
        #[arg(long)]
        verify: bool,
    },
    /// Chern number inequalities A_i ≥ binomial bound.
    Ineq {
        #[arg(long)]
        manifold: PathBuf,
        /// 1: χ-positive, -1: signed χ-positive.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        epsilon: i8,
    },
    /// Localization over the fixed points of a circle action.
    Localize {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum)]
        check: Option<LocalizeCheck>,
    },
    /// Betti inequalities and inertia of an intersection form.
    Betti {
        #[arg(long)]
        profile: PathBuf,
        /// Middle intersection form as an array of rows of rational strings.
        #[arg(long)]
        form: Option<PathBuf>,
    },
    /// Catalog of manifolds and circle actions.
    Catalog {
        #[arg(long, conflicts_with = "make", required_unless_present = "make")]
        list: bool,
        /// Spec string such as pn:4, hyp:3:5, product:pn:1,pn:2, pnaction:2:0,1,2.
        #[arg(long)]
        make: Option<String>,
    },
    /// Runs every acceptance criterion and prints a pass/fail table.
    VerifyPaper,
}

#[derive(Clone, Copy, ValueEnum)]
enum At {
    Euler,
    Todd,
    Signature,
}

impl From<At> for Specialization {
    fn from(a: At) -> Self {
        match a {
            At::Euler => Specialization::Euler,
            At::Todd => Specialization::Todd,
            At::Signature => Specialization::Signature,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LocalizeCheck {
    Mainapp4,
}

/// `χ^p` for every `p`, as `[p, value]` string pairs.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChiOutput {
    chi: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct KcoeffsVerified {
    table: KTable,
    closed_forms: ClosedFormReport,
    span: SpanReport,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct LocalizeOutput {
    n: usize,
    chi_minus_y: YPolynomial,
    novikov: YPolynomial,
    signature: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    isolated: Option<IsolatedReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mainapp4: Option<Mainapp4Report>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct FormReport {
    inertia: InertiaTriple,
    classification: CsClassification,
    /// The form's `(b⁺, b⁻)` equal the profile's middle inertia and it is nondegenerate.
    matches_profile: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct BettiOutput {
    profile: BettiProfile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mainapp5: Option<Mainapp5Report>,
    unimodality: UnimodalityReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    form: Option<FormReport>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogEntry {
    spec: String,
    description: String,
}

/// A completed command: its JSON or text payload and whether every check passed.
struct Output {
    payload: String,
    passed: bool,
}

impl Output {
    fn json<T: Serialize>(value: &T, passed: bool) -> Result<Self> {
        Ok(Output { payload: serde_json::to_string(value)?, passed })
    }
}

fn max_n() -> Result<usize> {
    match std::env::var("GENUS_MAX_N") {
        Ok(s) => s.trim().parse().with_context(|| format!("GENUS_MAX_N must be a non-negative integer, got {s:?}")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_N),
        Err(e) => bail!("GENUS_MAX_N: {e}"),
    }
}

fn check_n(n: usize) -> Result<()> {
    let cap = max_n()?;
    if n > cap {
        bail!("complex dimension {n} exceeds GENUS_MAX_N = {cap}");
    }
    Ok(())
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        anyhow::anyhow!("{}: field {at}: {}", path.display(), e.into_inner())
    })
}

fn read_manifold(path: &Path) -> Result<ManifoldData> {
    let m: ManifoldData = read_json(path)?;
    check_n(m.n())?;
    Ok(m)
}

fn read_form(path: &Path) -> Result<Vec<Vec<Rational>>> {
    let rows: Vec<Vec<String>> = read_json(path)?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, s)| parse_rational(s).with_context(|| format!("{}: field [{i}][{j}]", path.display())))
                .collect()
        })
        .collect()
}

fn chi(n: Option<usize>, manifold: Option<&Path>, at: Option<At>) -> Result<Output> {
    let Some(path) = manifold else {
        let n = n.context("--n is required without --manifold")?;
        check_n(n)?;
        let table = genus_table(n);
        return match at {
            None => Output::json(&*table, true),
            Some(at) => Output::json(&table.chi_poly.at_y(&Specialization::from(at).y()), true),
        };
    };
    let m = read_manifold(path)?;
    if let Some(n) = n {
        if n != m.n() {
            bail!("--n {n} differs from the manifold's complex dimension {}", m.n());
        }
    }
    match at {
        Some(at) => Output::json(&format_rational(&specialize(&m, at.into())?), true),
        None => {
            let chi = chi_vector(&m)?;
            let pairs = chi.entries.iter().enumerate().map(|(p, c)| (p.to_string(), format_rational(c))).collect();
            Output::json(&ChiOutput { chi: pairs }, true)
        }
    }
}

fn kcoeffs(n: usize, verify: bool) -> Result<Output> {
    check_n(n)?;
    let table = k_coefficients(n);
    if !verify {
        return Output::json(&table, true);
    }
    let closed_forms = verify_closed_forms(n);
    let span = odd_k_span_check(n);
    let passed = closed_forms.all_match() && span.holds();
    Output::json(&KcoeffsVerified { table, closed_forms, span }, passed)
}

fn ineq(path: &Path, epsilon: i8) -> Result<Output> {
    let kind = match epsilon {
        1 => PositivityKind::ChiPositive,
        -1 => PositivityKind::SignedChiPositive,
        e => bail!("--epsilon must be 1 or -1, got {e}"),
    };
    let reports = check_inequalities(&read_manifold(path)?, kind)?;
    let passed = reports.iter().all(|r| !r.hypothesis_met || (r.holds && r.equality == r.witness_holds));
    Output::json(&reports, passed)
}

fn localize(path: &Path, check: Option<LocalizeCheck>) -> Result<Output> {
    let model: FixedPointModel = read_json(path)?;
    check_n(model.n())?;
    let isolated = if model.all_isolated() { Some(consistency_isolated(&model)?) } else { None };
    let mainapp4 = match check {
        Some(LocalizeCheck::Mainapp4) => Some(theorem_mainapp4_check(&model)?),
        None => None,
    };
    let passed = isolated.as_ref().is_none_or(IsolatedReport::consistent)
        && mainapp4.as_ref().is_none_or(|r| r.holds != Some(false));
    let out = LocalizeOutput {
        n: model.n(),
        chi_minus_y: localized_chi_minus_y(&model)?,
        novikov: novikov_polynomial(&model)?,
        signature: localized_signature(&model)?,
        isolated,
        mainapp4,
    };
    Output::json(&out, passed)
}

fn betti(path: &Path, form: Option<&Path>) -> Result<Output> {
    let profile: BettiProfile = read_json(path)?;
    let mainapp5 = if profile.dim().is_multiple_of(4) && profile.sigma().is_some() {
        Some(mainapp5_check(&profile)?)
    } else {
        None
    };
    let form = match form {
        None => None,
        Some(f) => {
            let matrix = read_form(f)?;
            let triple = inertia(&matrix)?;
            let matches_profile = triple.b_zero == 0
                && match profile.middle_inertia() {
                    Ok((plus, minus)) => (triple.b_plus as u64, triple.b_minus as u64) == (plus, minus),
                    Err(_) => false,
                };
            Some(FormReport { inertia: triple, classification: cs_classification(&triple)?, matches_profile })
        }
    };
    let passed =
        mainapp5.as_ref().is_none_or(Mainapp5Report::confirms) && form.as_ref().is_none_or(|f| f.matches_profile);
    let unimodality = tolman_unimodality_report(&profile);
    Output::json(&BettiOutput { profile, mainapp5, unimodality, form }, passed)
}

fn catalog_cmd(list: bool, make: Option<&str>) -> Result<Output> {
    if list {
        let entries: Vec<CatalogEntry> =
            catalog::list().into_iter().map(|(s, d)| CatalogEntry { spec: s.into(), description: d.into() }).collect();
        return Output::json(&entries, true);
    }
    let item = catalog::make(make.context("either --list or --make is required")?)?;
    match &item {
        CatalogItem::Manifold(m) => check_n(m.n())?,
        CatalogItem::Action(a) => check_n(a.n())?,
    }
    Output::json(&item, true)
}

fn verify_paper() -> Output {
    let criteria = run_all();
    let mut payload = String::new();
    for c in &criteria {
        payload.push_str(&c.line());
        payload.push('\n');
    }
    let passed_count = criteria.iter().filter(|c| c.passed).count();
    payload.push_str(&format!("{passed_count}/{} criteria passed", criteria.len()));
    Output { payload, passed: passed_count == criteria.len() }
}

fn run(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Chi { n, manifold, at } => chi(n, manifold.as_deref(), at),
        Command::Kcoeffs { n, verify } => kcoeffs(n, verify),
        Command::Ineq { manifold, epsilon } => ineq(&manifold, epsilon),
        Command::Localize { model, check } => localize(&model, check),
        Command::Betti { profile, form } => betti(&profile, form.as_deref()),
        Command::Catalog { list, make } => catalog_cmd(list, make.as_deref()),
        Command::VerifyPaper => Ok(verify_paper()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{}", out.payload);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("genus: a check failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("genus: {e:#}");
            ExitCode::from(2)
        }
    }
}
