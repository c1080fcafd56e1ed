//! `repzeta`: censuses, zeta values, bounds audits and Euler product probes
//! from the command line.
//!
//! Every subcommand prints a short summary on stdout. With `--out` it also
//! writes its data as CSV or JSON and a `<out>.manifest.json` recording the
//! parameters and a SHA-256 of the data, so reruns can be compared byte for
//! byte.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use repzeta::bounds::isotropic_audit;
use repzeta::euler::{divergence_probe, global_partial_product, EulerProductConfig, ProbeVerdict};
use repzeta::finquot::{build_group_with_budget, conjugacy_classes, Flavor, QuotientRing};
use repzeta::localfactor::LocalFactorSL2;
use repzeta::rootsys::abscissa_rk;
use repzeta::symzeta::{alt_degree_census, sym_degree_census};
use repzeta::witten::{abscissa_estimate, enumerate_weights_parallel, DEFAULT_BUDGET};
use repzeta::{build_root_system, zeta_partial, DegreeCensus, Series};

#[derive(Parser, Debug)]
#[command(
    name = "repzeta",
    version,
    about = "Representation zeta functions at desk scale"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
struct OutputArgs {
    /// Data file; a manifest is written beside it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Degree census of a simple complex group by highest weights.
    Witten(WittenArgs),
    /// Closed-form SL2 local factor and its level census.
    Local(LocalArgs),
    /// Brute-force conjugacy classes.
    #[command(subcommand)]
    Census(CensusCommand),
    /// Exact audit of the isotropic abscissa bounds.
    BoundsAudit(AuditArgs),
    /// Alternating (or symmetric) group degree census and zeta value.
    Alt(AltArgs),
    /// Partial global Euler product.
    Euler(EulerArgs),
    /// Partial products over a schedule of prime bounds.
    Probe(ProbeArgs),
}

#[derive(Args, Debug, Serialize)]
struct WittenArgs {
    /// Cartan type letter, A to G.
    #[arg(long = "type")]
    series: char,
    #[arg(long)]
    rank: usize,
    #[arg(long, default_value_t = 100_000)]
    max_dim: u128,
    #[arg(long)]
    estimate_abscissa: bool,
    /// Also report the partial sum at this exponent.
    #[arg(long)]
    s: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Args, Debug, Serialize)]
struct LocalArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 2.0)]
    s: f64,
    /// Census of representations of level at most this.
    #[arg(long, default_value_t = 1)]
    level: u32,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CensusCommand {
    /// SL2 over Z/p^k or F_p[t]/(t^k).
    Sl2(Sl2Args),
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "lowercase")]
enum FlavorArg {
    Char0,
    Charp,
}

#[derive(Args, Debug, Serialize)]
struct Sl2Args {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    k: u32,
    #[arg(long, value_enum, default_value_t = FlavorArg::Char0)]
    flavor: FlavorArg,
    #[arg(long, default_value_t = 200_000)]
    budget: u64,
}

#[derive(Args, Debug, Serialize)]
struct AuditArgs {
    #[arg(long, default_value_t = 50)]
    x_max: u64,
    #[arg(long, default_value_t = 50)]
    md_max: u64,
    /// Print every audited row.
    #[arg(long)]
    table: bool,
}

#[derive(Args, Debug, Serialize)]
struct AltArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1.0)]
    s: f64,
    /// Symmetric instead of alternating group.
    #[arg(long)]
    sym: bool,
}

#[derive(Args, Debug, Serialize)]
struct EulerArgs {
    #[arg(long)]
    s: f64,
    #[arg(long)]
    prime_bound: u64,
    #[arg(long, default_value_t = 0)]
    archimedean_exponent: u32,
    /// Cap of the SL2(C) census used for the archimedean factor.
    #[arg(long, default_value_t = 1_000_000)]
    witten_cap: u128,
    /// Comma-separated primes to leave out; 2 is always left out unless a
    /// bracket for it is given.
    #[arg(long, value_delimiter = ',')]
    exclude: Vec<u64>,
    #[arg(long, requires = "p2_upper")]
    p2_lower: Option<f64>,
    #[arg(long, requires = "p2_lower")]
    p2_upper: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
struct ProbeArgs {
    #[arg(long)]
    s: f64,
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000,100000")]
    schedule: Vec<u64>,
}

/// Twelve significant digits.
fn num(x: f64) -> String {
    format!("{x:.11e}")
}

struct Outcome {
    summary: Vec<String>,
    csv: Vec<u8>,
    json: String,
}

#[derive(Serialize)]
struct RunManifest<'a> {
    subcommand: &'a str,
    parameters: &'a Command,
    format: Format,
    version: &'static str,
    output_sha256: String,
}

fn census_outcome(census: &DegreeCensus, summary: Vec<String>) -> Result<Outcome> {
    let mut csv = Vec::new();
    census.write_csv(&mut csv)?;
    Ok(Outcome {
        summary,
        csv,
        json: census.to_json()?,
    })
}

fn run_witten(a: &WittenArgs) -> Result<Outcome> {
    let series = Series::from_letter(a.series)
        .with_context(|| format!("unknown Cartan type '{}'; expected one of A-G", a.series))?;
    let rs = build_root_system(series, a.rank)?;
    let census = enumerate_weights_parallel(&rs, a.max_dim, a.budget, a.threads)?;
    let mut summary = vec![
        format!("root system: {}", rs.name()),
        format!("weights with dim <= {}: {}", a.max_dim, census.total()),
        format!("distinct dimensions: {}", census.entries().len()),
    ];
    if a.estimate_abscissa {
        let est = abscissa_estimate(&census)?;
        summary.push(format!("abscissa estimate: {}", num(est.slope)));
        summary.push(format!("r/kappa: {}", abscissa_rk(&rs)));
    }
    if let Some(s) = a.s {
        summary.push(format!(
            "partial sum at s = {s}: {}",
            num(zeta_partial(&census, s))
        ));
    }
    census_outcome(&census, summary)
}

fn run_local(a: &LocalArgs) -> Result<Outcome> {
    let f = LocalFactorSL2::new(a.q)?;
    let census = f.census(a.level)?;
    let summary = vec![
        format!(
            "Z(s) at q = {}, s = {}: {}",
            a.q,
            a.s,
            num(f.evaluate(a.s)?)
        ),
        format!("irreducibles of level <= {}: {}", a.level, census.total()),
        format!("group order: {}", f.group_order(a.level)),
    ];
    census_outcome(&census, summary)
}

fn run_sl2(a: &Sl2Args) -> Result<Outcome> {
    let flavor = match a.flavor {
        FlavorArg::Char0 => Flavor::Char0,
        FlavorArg::Charp => Flavor::CharP,
    };
    let ring = QuotientRing::new(flavor, a.p, a.k)?;
    let g = build_group_with_budget(ring, a.budget)?;
    let classes = conjugacy_classes(&g);
    let summary = vec![
        format!("order: {}", g.order()),
        format!("classes: {}", classes.count()),
        format!(
            "predicted irreducibles: {}",
            LocalFactorSL2::new(a.p as u64)?.class_count(a.k)
        ),
    ];
    let mut csv = Vec::new();
    classes.write_csv(&mut csv)?;
    Ok(Outcome {
        summary,
        csv,
        json: serde_json::to_string_pretty(&classes)?,
    })
}

fn run_audit(a: &AuditArgs) -> Result<Outcome> {
    let rep = isotropic_audit(a.x_max, a.md_max)?;
    let summary = if a.table {
        rep.to_table().lines().map(String::from).collect()
    } else {
        vec![
            format!("rows audited: {}", rep.rows.len()),
            format!("global min: {}", rep.global_min),
            format!("attained at: {}", rep.argmin.join(", ")),
            format!(
                "global min ≥ 1/15: {}",
                if rep.passes { "PASS" } else { "FAIL" }
            ),
        ]
    };
    let mut csv = String::from(
        "case,params,root_system,coxeter_number,case_bound,torus_bound,bound,bound_value\n",
    );
    for r in &rep.rows {
        csv.push_str(&format!(
            "{},\"{}\",{},{},{},{},{},{}\n",
            r.case,
            r.params,
            r.root_system,
            r.coxeter_number,
            r.case_bound.as_deref().unwrap_or(""),
            r.torus_bound,
            r.bound,
            num(r.bound_value)
        ));
    }
    Ok(Outcome {
        summary,
        csv: csv.into_bytes(),
        json: rep.to_json()?,
    })
}

fn run_alt(a: &AltArgs) -> Result<Outcome> {
    let (name, census) = if a.sym {
        ("S", sym_degree_census(a.k)?)
    } else {
        ("A", alt_degree_census(a.k)?)
    };
    if a.s.is_nan() || a.s < 0.0 {
        bail!("s = {} must be non-negative", a.s);
    }
    let summary = vec![
        format!("irreducibles of {name}{}: {}", a.k, census.total()),
        format!("Z(s) at s = {}: {}", a.s, num(zeta_partial(&census, a.s))),
    ];
    census_outcome(&census, summary)
}

fn run_euler(a: &EulerArgs) -> Result<Outcome> {
    let mut cfg = EulerProductConfig::new(a.s, a.prime_bound);
    cfg.archimedean_exponent = a.archimedean_exponent;
    cfg.excluded_primes.extend(a.exclude.iter().copied());
    if let (Some(lo), Some(hi)) = (a.p2_lower, a.p2_upper) {
        cfg.excluded_primes.remove(&2);
        cfg.bracket_p2 = Some((lo, hi));
    }
    let census = (a.archimedean_exponent > 0).then(|| DegreeCensus::from_degrees(1..=a.witten_cap));
    let v = global_partial_product(&cfg, census.as_ref())?;
    let summary = vec![
        format!("primes used: {}", v.primes_used),
        format!("log product: {}", num(v.log_lower)),
        format!("log product upper: {}", num(v.log_upper)),
        format!("product: {}", num(v.value())),
    ];
    let csv = format!(
        "s,prime_bound,primes_used,log_archimedean,log_local,log_lower,log_upper\n{},{},{},{},{},{},{}\n",
        num(a.s),
        a.prime_bound,
        v.primes_used,
        num(v.log_archimedean),
        num(v.log_local),
        num(v.log_lower),
        num(v.log_upper)
    );
    Ok(Outcome {
        summary,
        csv: csv.into_bytes(),
        json: serde_json::to_string_pretty(&v)?,
    })
}

fn run_probe(a: &ProbeArgs) -> Result<Outcome> {
    let rep = divergence_probe(a.s, &a.schedule)?;
    let mut summary = Vec::new();
    let mut csv = String::from(
        "prime_bound,log_product,lower_comparator,upper_comparator,effective_exponent,increment\n",
    );
    for p in &rep.steps {
        let inc = p.increment.map(num).unwrap_or_default();
        summary.push(format!(
            "P = {}: log product {} (comparators {} .. {})",
            p.prime_bound,
            num(p.log_product),
            num(p.lower_comparator),
            num(p.upper_comparator)
        ));
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            p.prime_bound,
            num(p.log_product),
            num(p.lower_comparator),
            num(p.upper_comparator),
            num(p.effective_exponent),
            inc
        ));
    }
    summary.push(match rep.verdict {
        ProbeVerdict::Growth { strictly_increasing, above_lower_comparator } => format!(
            "verdict: strictly increasing {strictly_increasing}, above lower comparator {above_lower_comparator}"
        ),
        ProbeVerdict::Stabilization { last_increment, tolerance, stable } => format!(
            "verdict: last increment {} against {}: {}",
            num(last_increment),
            num(tolerance),
            if stable { "stable" } else { "not stable" }
        ),
    });
    Ok(Outcome {
        summary,
        csv: csv.into_bytes(),
        json: rep.to_json()?,
    })
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Witten(_) => "witten",
        Command::Local(_) => "local",
        Command::Census(CensusCommand::Sl2(_)) => "census sl2",
        Command::BoundsAudit(_) => "bounds-audit",
        Command::Alt(_) => "alt",
        Command::Euler(_) => "euler",
        Command::Probe(_) => "probe",
    }
}

fn write_outputs(path: &Path, cli: &Cli, data: &[u8]) -> Result<()> {
    fs::write(path, data).with_context(|| format!("writing {}", path.display()))?;
    let manifest = RunManifest {
        subcommand: subcommand_name(&cli.command),
        parameters: &cli.command,
        format: cli.output.format,
        version: env!("CARGO_PKG_VERSION"),
        output_sha256: hex::encode(Sha256::digest(data)),
    };
    let mut manifest_path = path.as_os_str().to_owned();
    manifest_path.push(".manifest.json");
    fs::write(
        &manifest_path,
        serde_json::to_string_pretty(&manifest)? + "\n",
    )
    .with_context(|| format!("writing manifest for {}", path.display()))?;
    Ok(())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Witten(a) => run_witten(a),
        Command::Local(a) => run_local(a),
        Command::Census(CensusCommand::Sl2(a)) => run_sl2(a),
        Command::BoundsAudit(a) => run_audit(a),
        Command::Alt(a) => run_alt(a),
        Command::Euler(a) => run_euler(a),
        Command::Probe(a) => run_probe(a),
    }
    .with_context(|| format!("{} failed", subcommand_name(&cli.command)))?;
    for line in &outcome.summary {
        println!("{line}");
    }
    if let Some(path) = &cli.output.out {
        let data = match cli.output.format {
            Format::Csv => outcome.csv,
            Format::Json => (outcome.json + "\n").into_bytes(),
        };
        write_outputs(path, &cli, &data)?;
    }
    Ok(())
}
