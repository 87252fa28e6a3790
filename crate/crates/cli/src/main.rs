use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use kapranov::m0n::{class_of_boundary, effective_boundary_reps, expected_rep_count, f_class, BoundaryIndex};
use kapranov::plucker::plucker_span_rank;
use kapranov::{build_losev_manin, flag_fan, forgetful_class, h0_toric, Subset};

const FAN_RANGE: std::ops::RangeInclusive<usize> = 4..=9;
const ENUMERATION_RANGE: std::ops::RangeInclusive<usize> = 4..=7;

/// Exact computations on Losev–Manin fans and boundary divisors of M_{0,n}.
///
/// Every command prints one JSON document on stdout. The exit code is 0
/// exactly when every `agree`, `verified` and `fans_equal` field is true.
#[derive(Parser)]
#[command(name = "kapranov", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// Compact JSON on one line.
    Json,
    /// Indented JSON.
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Build the fan by iterated blow-ups and validate it.
    Fan {
        #[command(flatten)]
        n: Markings,
        /// Also build the flag fan and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Sections of the forgetful class, by lattice points and by formula.
    H0 {
        #[command(flatten)]
        n: Markings,
        #[command(flatten)]
        j: Labels,
    },
    /// Effective boundary representations of the forgetful class.
    Reps {
        #[command(flatten)]
        n: Markings,
        #[command(flatten)]
        j: Labels,
    },
    /// Plücker generation reports in the forgetful degrees for n = 6.
    Plucker {
        #[command(flatten)]
        n: OptionalMarkings,
    },
    /// Class of every boundary divisor in the Kapranov basis.
    Classes {
        #[command(flatten)]
        n: Markings,
    },
}

#[derive(Args)]
struct Markings {
    /// Number of marked points.
    #[arg(value_name = "N", required_unless_present = "n_flag")]
    n: Option<usize>,
    #[arg(long = "n", id = "n_flag", value_name = "N", conflicts_with = "n")]
    n_flag: Option<usize>,
}

impl Markings {
    fn get(&self) -> usize {
        self.n.or(self.n_flag).expect("clap enforces one of the two")
    }
}

#[derive(Args)]
struct OptionalMarkings {
    /// Number of marked points.
    #[arg(value_name = "N")]
    n: Option<usize>,
    #[arg(long = "n", id = "n_flag", value_name = "N", conflicts_with = "n")]
    n_flag: Option<usize>,
}

#[derive(Args)]
struct Labels {
    /// Comma-separated labels, e.g. `1,2`. Empty or omitted means the empty set.
    #[arg(long = "j", value_name = "LABELS", default_value = "")]
    j: String,
}

fn parse_labels(s: &str) -> Result<Subset> {
    let mut out = Subset::default();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let label: u32 = part.parse().with_context(|| format!("label {part:?} is not a positive integer"))?;
        ensure!((1..=32).contains(&label), "label {label} is out of range 1..=32");
        ensure!(!out.contains(label), "label {label} is repeated");
        out = out.insert(label);
    }
    Ok(out)
}

fn check_range(n: usize, range: std::ops::RangeInclusive<usize>, what: &str) -> Result<()> {
    ensure!(
        range.contains(&n),
        "{what} needs {} <= n <= {}, got n = {n}",
        range.start(),
        range.end()
    );
    Ok(())
}

fn check_forgetful_labels(n: usize, j: Subset) -> Result<()> {
    ensure!(
        j.max_label() as usize <= n - 2 && j.len() <= n - 4,
        "J = {j} must be a subset of {{1..{}}} with at most {} elements",
        n - 2,
        n - 4
    );
    Ok(())
}

/// The report plus whether every check inside it passed.
struct Report {
    body: Value,
    ok: bool,
}

fn fan(n: usize, oracle: bool) -> Result<Report> {
    check_range(n, FAN_RANGE, "fan")?;
    let lm = build_losev_manin(n)?;
    let validation = lm.fan().validate();
    let mut body = serde_json::to_value(&lm)?;
    let obj = body.as_object_mut().expect("a labeled fan serializes as an object");
    obj.insert("validation".into(), serde_json::to_value(validation)?);
    let mut ok = validation.all() && lm.cones_are_chains();
    if oracle {
        let equal = lm.fan().same_fan(flag_fan(n)?.fan());
        obj.insert("fans_equal".into(), json!(equal));
        ok &= equal;
    }
    Ok(Report { body, ok })
}

#[derive(Serialize)]
struct H0Report {
    n: usize,
    #[serde(rename = "J")]
    j: Subset,
    h0_lattice: usize,
    h0_formula: usize,
    agree: bool,
}

fn h0(n: usize, j: Subset) -> Result<Report> {
    check_range(n, ENUMERATION_RANGE, "h0")?;
    check_forgetful_labels(n, j)?;
    let lm = build_losev_manin(n)?;
    let h0_lattice = h0_toric(&lm, &forgetful_class(n, j)?)?;
    let h0_formula = n - j.len() - 2;
    let agree = h0_lattice == h0_formula;
    let body = serde_json::to_value(H0Report {
        n,
        j,
        h0_lattice,
        h0_formula,
        agree,
    })?;
    Ok(Report { body, ok: agree })
}

fn reps(n: usize, j: Subset) -> Result<Report> {
    check_range(n, ENUMERATION_RANGE, "reps")?;
    check_forgetful_labels(n, j)?;
    let class = f_class(n, j, n as u32)?;
    let representations = effective_boundary_reps(&class)?;
    let count = representations.len();
    let expected = expected_rep_count(n, j.len());
    let agree = count == expected;
    let body = json!({
        "n": n,
        "J": j,
        "class": class,
        "representations": representations,
        "count": count,
        "expected": expected,
        "agree": agree,
    });
    Ok(Report { body, ok: agree })
}

fn plucker(n: usize) -> Result<Report> {
    if n != 6 {
        bail!("plucker is out of scope for n = {n}: generation is only checked for n = 6");
    }
    let reports = [Subset::default(), Subset::from([1]), Subset::from([1, 2])]
        .into_iter()
        .map(|j| plucker_span_rank(j, n))
        .collect::<kapranov::Result<Vec<_>>>()?;
    let all_verified = reports.iter().all(|r| r.verified);
    let body = json!({ "reports": reports, "all_verified": all_verified });
    Ok(Report { body, ok: all_verified })
}

fn classes(n: usize) -> Result<Report> {
    check_range(n, FAN_RANGE, "classes")?;
    let table: Vec<Value> = BoundaryIndex::all(n)?
        .into_iter()
        .map(|t| json!({ "side": t.side(), "class": class_of_boundary(t) }))
        .collect();
    let body = json!({ "n": n, "classes": table });
    Ok(Report { body, ok: true })
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Fan { n, oracle } => fan(n.get(), *oracle),
        Command::H0 { n, j } => h0(n.get(), parse_labels(&j.j)?),
        Command::Reps { n, j } => reps(n.get(), parse_labels(&j.j)?),
        Command::Plucker { n } => plucker(n.n.or(n.n_flag).unwrap_or(6)),
        Command::Classes { n } => classes(n.get()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string(&report.body),
                Format::Pretty => serde_json::to_string_pretty(&report.body),
            }
            .expect("reports serialize");
            println!("{text}");
            if report.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("kapranov: a check in the report failed");
                ExitCode::FAILURE
            }
        }
        Err(err) => {
            eprintln!("kapranov: {err:#}");
            ExitCode::from(2)
        }
    }
}
