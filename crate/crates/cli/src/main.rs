use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;
use zkerov::acceptance::{run_suite, SuiteOptions};
use zkerov::census::{census_sweep, qualifying_gluings, CensusFilter, SymmetryGroup};
use zkerov::engine::{coefficient, render_rational, tally, Coefficient, EngineConfig, Tally};
use zkerov::genus1::{closed_form_polynomial, map_sum_polynomial, symmetric_sum_polynomial};
use zkerov::polygon::double_factorial_odd;
use zkerov::report::{self, Check};
use zkerov::{cache, Error, Partition};

mod table;

const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_CONSISTENCY: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "zkerov",
    version,
    about = "Exact coefficients of Z_n from polygon gluings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Half the number of polygon sides.
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Monomial as comma-separated parts, each at least 2 (e.g. 3,2).
    #[arg(long, global = true)]
    mu: Option<String>,

    /// Twice the genus of the maps to keep.
    #[arg(long = "genus-doubled", global = true)]
    genus_doubled: Option<u32>,

    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Directory holding cached full-pass tallies.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Cross-check the result through an independent route.
    #[arg(long, global = true)]
    verify: bool,

    /// Largest n used by selftest.
    #[arg(long = "max-n", global = true)]
    max_n: Option<usize>,

    /// Allow n above the default limit, up to the hard cap.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Raw count and rescaled coefficient of one monomial.
    Coeff,
    /// Every coefficient of Z_n, grouped by genus.
    Expand,
    /// The genus-one part from its closed form.
    Genus1,
    /// Classes of gluings up to polygon symmetries.
    Census(CensusArgs),
    /// Run the acceptance checks.
    Selftest,
}

#[derive(Debug, clap::Args)]
struct CensusArgs {
    /// Keep only reduced maps (reduced bipartite maps for matchings).
    #[arg(long)]
    reduced: bool,
    /// Use every gluing with both twist choices per pair, colours ignored.
    /// Classes are then taken up to all rotations and reflections.
    #[arg(long)]
    twisted: bool,
    /// Keep only properly two-coloured maps.
    #[arg(long)]
    bipartite: bool,
    /// Keep only maps with an admissible colouring.
    #[arg(long)]
    contributing: bool,
    /// Also identify matchings related by a reflection.
    #[arg(long)]
    reflections: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Usage(_) | Error::LimitExceeded { .. } => EXIT_USAGE,
            _ => EXIT_CONSISTENCY,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// A rendered document and the exit code to finish with.
struct Outcome {
    json: Value,
    table: String,
    code: u8,
    note: Option<String>,
}

impl Cli {
    fn engine(&self) -> Result<EngineConfig, Failure> {
        let mut cfg = match self.threads {
            Some(t) => EngineConfig::with_threads(t),
            None => EngineConfig::default(),
        };
        if cfg.threads == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        if self.force {
            cfg = cfg.forced();
        }
        Ok(cfg)
    }

    fn require_n(&self) -> Result<usize, Failure> {
        match self.n {
            Some(0) => Err(usage("--n must be at least 1")),
            Some(n) => Ok(n),
            None => Err(usage("--n is required")),
        }
    }

    fn require_mu(&self) -> Result<Partition, Failure> {
        let text = self
            .mu
            .as_deref()
            .ok_or_else(|| usage("--mu is required"))?;
        text.parse::<Partition>().map_err(Failure::from)
    }

    /// The full tally for `n`, from the cache when possible.
    fn full_tally(&self, n: usize, cfg: &EngineConfig) -> Result<Tally, Failure> {
        if let Some(dir) = &self.cache {
            if let Some(t) = cache::load(dir, n)? {
                return Ok(t);
            }
            let t = tally(n, None, cfg)?;
            cache::store(dir, &t)?;
            return Ok(t);
        }
        Ok(tally(n, None, cfg)?)
    }
}

fn inexact_note(terms: &[(String, &Coefficient)]) -> Option<String> {
    let bad: Vec<String> = terms
        .iter()
        .filter(|(_, c)| !c.is_integral())
        .map(|(what, c)| {
            format!(
                "{what}: rawCount {} gives {}",
                c.raw,
                render_rational(&c.value)
            )
        })
        .collect();
    (!bad.is_empty()).then(|| format!("inexact power-of-two division: {}", bad.join("; ")))
}

fn cmd_coeff(cli: &Cli) -> Result<Outcome, Failure> {
    let n = cli.require_n()?;
    let mu = cli.require_mu()?;
    let cfg = cli.engine()?;
    let c = match &cli.cache {
        Some(_) => {
            let t = cli.full_tally(n, &cfg)?;
            let raw = t.raw.get(&mu).cloned().unwrap_or_default();
            Coefficient::new(n, &mu, raw)
        }
        None => coefficient(n, &mu, &cfg)?,
    };
    let mut code = 0;
    let mut note = None;
    if cli.verify {
        let full = tally(n, None, &cfg)?;
        let other = full.raw.get(&mu).cloned().unwrap_or_default();
        if other != c.raw {
            code = EXIT_MISMATCH;
            note = Some(format!(
                "dedicated pass found {} pairs, full pass {}",
                c.raw, other
            ));
        }
    }
    if code == 0 {
        if let Some(msg) = inexact_note(&[(mu.to_string(), &c)]) {
            code = EXIT_CONSISTENCY;
            note = Some(msg);
        }
    }
    let json = report::coeff_json(n, &mu, &c);
    let table = table::coeff(&json);
    Ok(Outcome {
        json,
        table,
        code,
        note,
    })
}

fn cmd_expand(cli: &Cli) -> Result<Outcome, Failure> {
    let n = cli.require_n()?;
    let cfg = cli.engine()?;
    let t = match (cli.genus_doubled, &cli.cache) {
        (Some(dg), None) => tally(n, Some(dg), &cfg)?,
        _ => cli.full_tally(n, &cfg)?,
    };
    let polys = match cli.genus_doubled {
        Some(dg) => vec![t.restricted(dg)],
        None => t.by_genus(),
    };
    let terms: Vec<(String, &Coefficient)> = polys
        .iter()
        .flat_map(|p| p.terms.iter().map(|(mu, c)| (mu.to_string(), c)))
        .collect();
    let note = inexact_note(&terms);
    let json = report::expand_json(&t, cli.genus_doubled);
    let table = table::expand(&json);
    Ok(Outcome {
        code: if note.is_some() { EXIT_CONSISTENCY } else { 0 },
        json,
        table,
        note,
    })
}

fn cmd_genus1(cli: &Cli) -> Result<Outcome, Failure> {
    let n = cli.require_n()?;
    let closed = closed_form_polynomial(n)?;
    let checks = if cli.verify {
        let cfg = cli.engine()?;
        let mut checks = Vec::new();
        for (name, other) in [
            ("per-map sum", map_sum_polynomial(n)?),
            ("symmetrised sum", symmetric_sum_polynomial(n)?),
        ] {
            checks.push(Check {
                name: name.to_string(),
                passed: other.terms == closed.terms,
                detail: format!("{} terms", other.terms.len()),
            });
        }
        let enumerated = tally(n, Some(2), &cfg)?.restricted(2);
        let mut agree = enumerated.terms.len() == closed.terms.len();
        for (mu, c) in &enumerated.terms {
            agree &= c.is_integral() && closed.terms.get(mu) == Some(&c.value.to_integer());
        }
        checks.push(Check {
            name: "enumeration".to_string(),
            passed: agree,
            detail: format!(
                "{} terms over {} gluings",
                enumerated.terms.len(),
                double_factorial_odd(n)
            ),
        });
        Some(checks)
    } else {
        None
    };
    let json = report::genus1_json(&closed, checks.as_deref());
    let table = table::genus1(&json);
    let failed = checks.as_ref().is_some_and(|c| c.iter().any(|x| !x.passed));
    Ok(Outcome {
        code: if failed { EXIT_MISMATCH } else { 0 },
        note: failed.then(|| "closed form and enumeration disagree".to_string()),
        json,
        table,
    })
}

fn cmd_census(cli: &Cli, args: &CensusArgs) -> Result<Outcome, Failure> {
    let group = if args.twisted {
        SymmetryGroup::DIHEDRAL
    } else {
        SymmetryGroup {
            step: 2,
            reflections: args.reflections,
        }
    };
    let filter = CensusFilter {
        doubled_genus: Some(cli.genus_doubled.unwrap_or(2)),
        reduced_only: args.reduced,
        bipartite_only: args.bipartite,
        contributing_only: args.contributing,
        twisted: args.twisted,
        group,
    };
    let ns: Vec<usize> = match cli.n {
        Some(0) => return Err(usage("--n must be at least 1")),
        Some(n) => vec![n],
        None if args.twisted => (1..=3).collect(),
        None => (1..=6).collect(),
    };
    let census_cap = if args.twisted { 6 } else { 8 };
    if ns.iter().any(|&n| n > census_cap) {
        return Err(usage(format!(
            "census is limited to n <= {census_cap} here"
        )));
    }
    let classes = census_sweep(ns.iter().copied(), &filter)?;
    let mut code = 0;
    let mut note = None;
    if cli.verify {
        let mut problems = Vec::new();
        for &n in &ns {
            let direct = qualifying_gluings(n, &filter)?.len();
            let covered: usize = classes
                .iter()
                .filter(|c| c.n == n)
                .map(|c| c.orbit_size)
                .sum();
            if direct != covered {
                problems.push(format!(
                    "n = {n}: orbits cover {covered} of {direct} gluings"
                ));
            }
        }
        for c in &classes {
            if c.orbit_size * c.stabilizer_order != c.group_order {
                problems.push(format!(
                    "{}: orbit times stabilizer is not the group order",
                    c.representative
                ));
            }
        }
        if !problems.is_empty() {
            code = EXIT_MISMATCH;
            note = Some(problems.join("; "));
        }
    }
    let json = report::census_json(&ns, &filter, &classes);
    let table = table::census(&json);
    Ok(Outcome {
        json,
        table,
        code,
        note,
    })
}

fn cmd_selftest(cli: &Cli) -> Result<Outcome, Failure> {
    let max_n = cli.max_n.unwrap_or(6);
    if !(1..=8).contains(&max_n) {
        return Err(usage("--max-n must be between 1 and 8"));
    }
    let opts = SuiteOptions {
        max_n,
        threads: cli.engine()?.threads,
        ..SuiteOptions::default()
    };
    let results = run_suite(&opts);
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    let json = report::selftest_json(max_n, &results);
    let table: String = results.iter().map(|r| format!("{r}\n")).collect();
    Ok(Outcome {
        json,
        table,
        code: if failed.is_empty() { 0 } else { EXIT_MISMATCH },
        note: (!failed.is_empty()).then(|| format!("failed criteria: {failed:?}")),
    })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Coeff => cmd_coeff(cli),
        Command::Expand => cmd_expand(cli),
        Command::Genus1 => cmd_genus1(cli),
        Command::Census(args) => cmd_census(cli, args),
        Command::Selftest => cmd_selftest(cli),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => report::to_text(&out.json),
                Format::Table => out.table,
            };
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            if let Some(note) = out.note {
                eprintln!("zkerov: {note}");
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("zkerov: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
