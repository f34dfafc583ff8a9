//! The `mfq` command line: argument parsing, subcommands and output.

pub mod serial;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use mfq_core::foundations::rational;
use mfq_core::liealg::GlMinimal;
use mfq_core::mfshift::{independence_check, mf_candidates, sample_regular_chi};
use mfq_core::poisson_inv::{good_system_check, minimal_e_family};
use mfq_core::quantize::{extract_q, finite_pbw, loop_pbw, quantized_generators};
use mfq_core::verify::{run_all, run_one, Report, Status, VerifyConfig};
use mfq_core::{Error, Functional, LieAlgebra};
use serde_json::{json, Value};

use crate::serial::{poly_to_json, uea_to_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mfq",
    version,
    about = "Mishchenko-Fomenko subalgebras of minimal centralizers in gl_n and their quantization"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for every random choice.
    #[arg(long, global = true, env = "MFQ_SEED", default_value_t = 7)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basis and brackets of g^e.
    Centralizer(RankArgs),
    /// The e-truncated invariants ^eP_i and the good-system check.
    Invariants(RankArgs),
    /// Mishchenko-Fomenko generators and their commutativity.
    Mf(ChiArgs),
    /// The central elements Q_i of the vacuum module.
    Q(QuantumArgs),
    /// The generators I, A_i^(j) of the quantized algebra and their commutativity.
    Quantize(ChiArgs),
    /// The acceptance suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=8))]
    pub n: u8,
}

#[derive(Debug, Args)]
pub struct QuantumArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=5))]
    pub n: u8,
}

#[derive(Debug, Args)]
pub struct ChiArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=5))]
    pub n: u8,

    /// `random` (seeded, regular), `zero`, or a JSON file mapping basis labels
    /// to rational strings; missing labels are zero.
    #[arg(long, default_value = "random")]
    pub chi: String,

    /// Accept a functional whose stabilizer is larger than the index.
    #[arg(long)]
    pub allow_singular: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("which").required(true).args(["all", "check"])))]
pub struct VerifyArgs {
    /// Run all ten checks.
    #[arg(long)]
    pub all: bool,

    /// Run only the given check (repeatable).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
    pub check: Vec<u8>,

    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(3..=5))]
    pub n_max: u8,

    /// Include n = 5 in the centrality check.
    #[arg(long)]
    pub slow: bool,
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
    }

    fn failure(stdout: String, msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_CHECK, stdout, stderr: format!("error: {}\n", msg.into()) }
    }
}

fn core_error(e: Error) -> Outcome {
    match e {
        Error::Regularity { .. } => Outcome::failure(String::new(), format!("{e}; pass --allow-singular to proceed")),
        Error::Parse(_) | Error::Dimension { .. } => Outcome::usage(e.to_string()),
        _ => Outcome::failure(String::new(), e.to_string()),
    }
}

fn render(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
            s.push('\n');
            s
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Centralizer(a) => centralizer(cli, a.n as usize),
        Command::Invariants(a) => invariants(cli, a.n as usize),
        Command::Mf(a) => mf(cli, a),
        Command::Q(a) => q(cli, a.n as usize),
        Command::Quantize(a) => quantize(cli, a),
        Command::Verify(a) => Ok(verify(cli, a)),
    };
    result.unwrap_or_else(|o| o)
}

type Run = std::result::Result<Outcome, Outcome>;

fn minimal(n: usize) -> std::result::Result<GlMinimal, Outcome> {
    GlMinimal::new(n).map_err(core_error)
}

fn centralizer(cli: &Cli, n: usize) -> Run {
    let m = minimal(n)?;
    let g = &m.ge.algebra;
    let mut text = format!("g^e for e = e{n}{} in gl_{n}, dim {}\nbasis: {}\n", n - 1, g.dim(), g.labels().join(", "));
    let mut brackets = Vec::new();
    for i in 0..g.dim() {
        for j in (i + 1)..g.dim() {
            let b = g.bracket_basis(i, j);
            if b.is_zero() {
                continue;
            }
            writeln!(text, "[{}, {}] = {}", g.label(i), g.label(j), g.format_element(&b)).unwrap();
            let value: Vec<Value> = b.iter().map(|(k, c)| json!([g.label(k), rational::to_string(c)])).collect();
            brackets.push(json!({ "left": g.label(i), "right": g.label(j), "value": value }));
        }
    }
    let value = json!({ "n": n, "dim": g.dim(), "basis": g.labels(), "brackets": brackets });
    Ok(Outcome::ok(render(cli.format, text, value)))
}

fn invariants(cli: &Cli, n: usize) -> Run {
    let m = minimal(n)?;
    let g = &m.ge.algebra;
    let fam = minimal_e_family(&m).map_err(core_error)?;
    let good = good_system_check(&fam, g, n);
    let label = |k: usize| g.label(k);
    let mut text = String::new();
    let mut members = Vec::new();
    for (i, (p, d)) in fam.members.iter().zip(&fam.degrees).enumerate() {
        writeln!(text, "^eP_{} = {}  (degree {d})", i + 1, p.display_with(&label)).unwrap();
        members.push(json!({ "name": format!("^eP_{}", i + 1), "degree": d, "poly": poly_to_json(p, g) }));
    }
    writeln!(
        text,
        "degree sum {}, (dim + index)/2 = {}: {}",
        fam.degree_sum(),
        (g.dim() + n) / 2,
        if good { "good system" } else { "NOT a good system" }
    )
    .unwrap();
    let value = json!({ "n": n, "invariants": members, "good_system": good });
    let out = render(cli.format, text, value);
    Ok(if good { Outcome::ok(out) } else { Outcome::failure(out, "not a good generating system") })
}

fn resolve_chi(g: &LieAlgebra, n: usize, source: &str, seed: u64) -> std::result::Result<Functional, Outcome> {
    match source {
        "random" => sample_regular_chi(g, n, seed).map_err(core_error),
        "zero" => Ok(Functional::zero(g)),
        path => {
            let path = PathBuf::from(path);
            let body = std::fs::read_to_string(&path)
                .map_err(|e| Outcome::usage(format!("cannot read {}: {e}", path.display())))?;
            let map: BTreeMap<String, String> = serde_json::from_str(&body)
                .map_err(|e| Outcome::usage(format!("bad chi file {}: {e}", path.display())))?;
            let mut values = vec![rational::parse("0").expect("zero"); g.dim()];
            for (label, v) in &map {
                let k = g
                    .index_of(label)
                    .ok_or_else(|| Outcome::usage(format!("unknown basis label {label:?} in chi file")))?;
                values[k] = rational::parse(v).map_err(|e| Outcome::usage(e.to_string()))?;
            }
            Functional::new(g, values).map_err(core_error)
        }
    }
}

fn chi_json(g: &LieAlgebra, chi: &Functional) -> Value {
    let map: serde_json::Map<String, Value> =
        (0..g.dim()).map(|k| (g.label(k), Value::String(rational::to_string(chi.value(k))))).collect();
    Value::Object(map)
}

fn chi_text(g: &LieAlgebra, chi: &Functional) -> String {
    (0..g.dim()).map(|k| format!("{}={}", g.label(k), rational::to_string(chi.value(k)))).collect::<Vec<_>>().join(", ")
}

fn mf(cli: &Cli, a: &ChiArgs) -> Run {
    let n = a.n as usize;
    let m = minimal(n)?;
    let g = &m.ge.algebra;
    let chi = resolve_chi(g, n, &a.chi, cli.seed)?;
    let fam = minimal_e_family(&m).map_err(core_error)?;
    let alg = mf_candidates(&fam, &chi, g, n, a.allow_singular).map_err(core_error)?;
    let witness = alg.commutativity_witness(g).map_err(core_error)?;
    let independent = independence_check(&alg, 5, cli.seed);
    let label = |k: usize| g.label(k);
    let mut text = format!("chi: {}\n", chi_text(g, &chi));
    let mut gens = Vec::new();
    for (k, p) in alg.generators.iter().enumerate() {
        writeln!(text, "{} = {}", alg.label(k), p.display_with(&label)).unwrap();
        gens.push(json!({ "name": alg.label(k), "poly": poly_to_json(p, g) }));
    }
    writeln!(text, "{} generators, Jacobian rank {}", alg.len(), if independent { "full" } else { "deficient" })
        .unwrap();
    let wit = witness.as_ref().map(|(x, y, r)| {
        writeln!(text, "FAIL: {{{}, {}}} = {}", alg.label(*x), alg.label(*y), r.display_with(&label)).unwrap();
        json!({ "left": alg.label(*x), "right": alg.label(*y), "bracket": poly_to_json(r, g) })
    });
    if wit.is_none() {
        writeln!(text, "PASS: generators Poisson-commute").unwrap();
    }
    let value = json!({
        "n": n, "chi": chi_json(g, &chi), "generators": gens,
        "independent": independent, "commutative": wit.is_none(), "witness": wit,
    });
    let out = render(cli.format, text, value);
    Ok(if wit.is_some() { Outcome::failure(out, "generators do not Poisson-commute") } else { Outcome::ok(out) })
}

fn q(cli: &Cli, n: usize) -> Run {
    let m = minimal(n)?;
    let g = &m.ge.algebra;
    let pbw = loop_pbw(&m);
    let qs = extract_q(&m).map_err(core_error)?;
    let mut text = String::new();
    let mut items = Vec::new();
    for (i, x) in qs.iter().enumerate() {
        writeln!(text, "Q_{} = {}", i + 1, pbw.display(x)).unwrap();
        items.push(json!({ "name": format!("Q_{}", i + 1), "value": uea_to_json(x, g) }));
    }
    Ok(Outcome::ok(render(cli.format, text, json!({ "n": n, "q": items }))))
}

fn quantize(cli: &Cli, a: &ChiArgs) -> Run {
    let n = a.n as usize;
    let m = minimal(n)?;
    let g = &m.ge.algebra;
    let chi = resolve_chi(g, n, &a.chi, cli.seed)?;
    let alg = quantized_generators(&m, &chi, a.allow_singular).map_err(core_error)?;
    let pbw = finite_pbw(&m);
    let mut text = format!("chi: {}\n", chi_text(g, &chi));
    let mut gens = Vec::new();
    for (k, x) in alg.generators.iter().enumerate() {
        writeln!(text, "{} = {}", alg.label(k), pbw.display(x)).unwrap();
        gens.push(json!({ "name": alg.label(k), "value": uea_to_json(x, g) }));
    }
    writeln!(text, "{} generators", alg.len()).unwrap();
    let witness = alg.commutator_witness(&m);
    let wit = witness.as_ref().map(|(x, y, c)| {
        writeln!(text, "FAIL: [{}, {}] = {}", alg.label(*x), alg.label(*y), pbw.display(c)).unwrap();
        json!({ "left": alg.label(*x), "right": alg.label(*y), "commutator": uea_to_json(c, g) })
    });
    if wit.is_none() {
        writeln!(text, "PASS: generators commute").unwrap();
    }
    let value =
        json!({ "n": n, "chi": chi_json(g, &chi), "generators": gens, "commutative": wit.is_none(), "witness": wit });
    let out = render(cli.format, text, value);
    Ok(if wit.is_some() { Outcome::failure(out, "generators do not commute") } else { Outcome::ok(out) })
}

fn report_text(report: &Report) -> String {
    let mut text = String::new();
    for c in &report.checks {
        let verdict = if c.passed() { "PASS" } else { "FAIL" };
        write!(text, "[{verdict}] {:>2} {}", c.criterion, c.name).unwrap();
        if c.status == Status::Flagged {
            text.push_str(" (flagged)");
        }
        text.push('\n');
        if !c.detail.is_empty() {
            writeln!(text, "       {}", c.detail).unwrap();
        }
        if let Some(w) = &c.witness {
            writeln!(text, "       witness: {w}").unwrap();
        }
    }
    let failed = report.checks.iter().filter(|c| !c.passed()).count();
    if failed == 0 {
        let n = report.checks.len();
        writeln!(text, "all {n} check{} passed", if n == 1 { "" } else { "s" }).unwrap();
    } else {
        writeln!(text, "{failed} of {} checks failed", report.checks.len()).unwrap();
    }
    text
}

fn report_json(report: &Report) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "criterion": c.criterion,
                "name": c.name,
                "status": c.status.to_string().to_lowercase(),
                "detail": c.detail,
                "witness": c.witness,
            })
        })
        .collect();
    json!({ "checks": checks, "passed": report.all_passed() })
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Outcome {
    let cfg = VerifyConfig { n_max: a.n_max as usize, seed: cli.seed, slow: a.slow, ..VerifyConfig::default() };
    let report = if a.all {
        run_all(&cfg)
    } else {
        let mut wanted = a.check.clone();
        wanted.sort_unstable();
        wanted.dedup();
        Report { checks: wanted.iter().filter_map(|&k| run_one(&cfg, k)).collect() }
    };
    let out = render(cli.format, report_text(&report), report_json(&report));
    if report.all_passed() {
        Outcome::ok(out)
    } else {
        Outcome::failure(out, "verification failed")
    }
}
