//! Command line front end: arrangement combinatorics, cochain-complex
//! reports, restriction and filtered-system certificates, measure
//! lattices, the truncated series scan, and the `verify-all` harness.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on
//! configuration or input errors.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use tubular::arr::{classify_uni, compatible_family, project_arrangement, Arrangement, UniShape};
use tubular::cech::{twisted_complex, twisted_complex_mod, xdt_graded_ht, MultiDegree};
use tubular::complex::cohomology;
use tubular::limits::{check_filtered_condition, check_restriction_inclusion, CoordRange, MonomialBox};
use tubular::logexp::verify_log_exp;
use tubular::measures::{kummer_reduce, zero_mass_basis};
use tubular::proj::{enumerate_points, project_point};
use tubular::torus::torus_cohomology;
use tubular_cli::io::{
    arrangement_to_file, load_arrangement, load_filtered, load_measure, parse_point,
};
use tubular_cli::suites::{
    geometric_filtered_system, run_suite, violating_filtered_system, SuiteConfig, SUITES,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "tubular", version, about = "Exact arrangement combinatorics over Z/p^n")]
struct Cli {
    /// Prime for commands that build their own rings
    #[arg(long, global = true, env = "TUBULAR_P")]
    p: Option<u64>,
    /// Precision / tubular order for commands that need one
    #[arg(long, global = true, env = "TUBULAR_N")]
    n: Option<u32>,
    /// Ambient projective dimension
    #[arg(long, global = true, env = "TUBULAR_D")]
    d: Option<usize>,
    /// Seed for the randomized property checks
    #[arg(long, global = true, default_value_t = 0, env = "TUBULAR_SEED")]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text, env = "TUBULAR_FORMAT")]
    format: Format,
    /// Size cap: maximum points enumerated, or the degree cap of graded tables
    #[arg(long, global = true, env = "TUBULAR_CAP")]
    cap: Option<u64>,
    /// Collect wall-clock timings (off by default so reports are
    /// byte-reproducible)
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank of an arrangement file
    Rank {
        #[arg(long)]
        file: PathBuf,
    },
    /// Fibration shape of the union of a closed tubular arrangement
    ClassifyUni {
        #[arg(long)]
        file: PathBuf,
    },
    /// List the points of P^d(Z/p^n) (requires --p --n --d)
    Enumerate,
    /// Project an arrangement file or a point (--point JSON) to a lower order
    Project {
        #[arg(long)]
        file: Option<PathBuf>,
        /// inline point {"p":..,"n":..,"coords":[..]}
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        to: u32,
    },
    /// Cohomology of one multidegree summand of the twisted cover complex
    CechTwisted {
        #[arg(long)]
        t: usize,
        /// comma-separated exponents, e.g. -1,2,0
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// rerun the same matrices over Z/p^prec (uses --p)
        #[arg(long)]
        prec: Option<u32>,
    },
    /// Cohomology of the ratio complex of P^t
    TorusH {
        #[arg(long)]
        t: usize,
    },
    /// Graded table of the top cohomology of a ball fibration (uses --d, --cap)
    XdtGraded {
        #[arg(long)]
        t: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Shrink-exponent certificate for a monomial box (uses --p)
    RestrictionCheck {
        /// number of coordinates
        #[arg(long)]
        dims: usize,
        /// per-coordinate ranges, e.g. "0..3,-2..2" (lower bound 0 = disk)
        #[arg(long, allow_hyphen_values = true)]
        ranges: String,
        /// coefficient precision m >= 2
        #[arg(long)]
        prec: u32,
        #[arg(long, default_value_t = 1)]
        steps: u32,
    },
    /// Model-check the filtered-group shift criterion
    FilteredCheck {
        #[arg(long)]
        file: Option<PathBuf>,
        /// built-in demonstration systems
        #[arg(long, value_parser = ["positive", "negative"])]
        builtin: Option<String>,
        #[arg(long, default_value_t = 1)]
        shift: u32,
    },
    /// Zero-mass lattices of the compatible family of an algebraic seed
    Measures {
        /// algebraic arrangement file
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        levels: u32,
        /// print the basis at this order
        #[arg(long)]
        level: Option<u32>,
    },
    /// Reduce a zero-mass measure file modulo m
    Kummer {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        modulus: u64,
    },
    /// Exhaustive truncated exp/log isometry scan (uses --p)
    Logexp {
        #[arg(long)]
        prec: u32,
        #[arg(long, default_value_t = 2)]
        v0: u32,
    },
    /// Run the verification suites
    VerifyAll {
        #[arg(long, default_value = "all", value_parser = SUITES.to_vec())]
        suite: String,
    },
}

#[derive(Debug)]
enum CliFailure {
    /// bad input or configuration: exit 2
    Config(String),
    /// a verification failed: exit 1
    Verification(String),
}

impl From<tubular::Error> for CliFailure {
    fn from(e: tubular::Error) -> Self {
        CliFailure::Config(e.to_string())
    }
}

impl From<tubular_cli::io::IoError> for CliFailure {
    fn from(e: tubular_cli::io::IoError) -> Self {
        CliFailure::Config(e.to_string())
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliFailure> {
    value.ok_or_else(|| CliFailure::Config(format!("missing required global flag {flag}")))
}

fn groups_json(groups: &[tubular::complex::CohomologyGroup]) -> Value {
    Value::Array(
        groups
            .iter()
            .map(|g| {
                json!({
                    "degree": g.degree,
                    "free": g.free_rank,
                    "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn groups_text(groups: &[tubular::complex::CohomologyGroup]) -> String {
    let mut out = String::from("degree  free  torsion\n");
    for g in groups {
        let torsion = if g.torsion.is_empty() {
            "-".to_string()
        } else {
            g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        };
        out.push_str(&format!("{:>6}  {:>4}  {}\n", g.degree, g.free_rank, torsion));
    }
    out
}

fn shape_json(shape: &UniShape) -> Value {
    match shape {
        UniShape::Ball => json!({"shape": "ball"}),
        UniShape::Fibration { t, beta, alphas, basis_change } => {
            let alphas: Vec<Value> = alphas
                .iter()
                .map(|a| match a {
                    tubular::ring::Valuation::Finite(v) => json!(v),
                    tubular::ring::Valuation::Infinity => json!("inf"),
                })
                .collect();
            let change: Vec<Vec<String>> = (0..basis_change.rows())
                .map(|i| (0..basis_change.cols()).map(|j| basis_change.at(i, j).to_string()).collect())
                .collect();
            json!({"shape": "fibration", "t": t, "beta": beta, "alphas": alphas, "basis_change": change})
        }
    }
}

/// Text or JSON for a generic value; CSV only where a tabular form exists.
fn emit(format: Format, json_value: &Value, text: String) -> Result<(), CliFailure> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(json_value).unwrap()),
        Format::Text => print!("{text}"),
        Format::Csv => {
            return Err(CliFailure::Config(
                "csv output is only available for graded tables and reports".into(),
            ))
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliFailure> {
    match cli.command {
        Command::Rank { file } => {
            let a = load_arrangement(&file)?;
            let rank = a.rank();
            emit(
                cli.format,
                &json!({"rank": rank, "members": a.len()}),
                format!("rank {rank} ({} members)\n", a.len()),
            )
        }
        Command::ClassifyUni { file } => {
            let a = load_arrangement(&file)?;
            let shape = classify_uni(&a)?;
            let text = match &shape {
                UniShape::Ball => "ball (single tube)\n".to_string(),
                UniShape::Fibration { t, beta, .. } => {
                    format!("fibration over P^{t} with ball fibers, beta = {beta:?}\n")
                }
            };
            emit(cli.format, &shape_json(&shape), text)
        }
        Command::Enumerate => {
            let p = require(cli.p, "--p")?;
            let n = require(cli.n, "--n")?;
            let d = require(cli.d, "--d")?;
            let cap = cli.cap.unwrap_or(1_000_000);
            let points = enumerate_points(d, p, n, cap)?;
            let coords: Vec<Vec<String>> = points
                .iter()
                .map(|pt| pt.coords().iter().map(ToString::to_string).collect())
                .collect();
            let mut text = String::new();
            for c in &coords {
                text.push_str(&format!("[{}]\n", c.join(", ")));
            }
            text.push_str(&format!("{} points\n", points.len()));
            emit(cli.format, &json!({"count": points.len(), "points": coords}), text)
        }
        Command::Project { file, point, to } => match (file, point) {
            (Some(file), None) => {
                let a = load_arrangement(&file)?;
                let b = project_arrangement(&a, to)?;
                let out = arrangement_to_file(&b);
                emit(
                    cli.format,
                    &serde_json::to_value(&out).unwrap(),
                    format!("projected to order {to}: {} members\n", b.len()),
                )
            }
            (None, Some(point)) => {
                let z = parse_point(&point)?;
                let w = project_point(&z, to)?;
                let coords: Vec<String> = w.coords().iter().map(ToString::to_string).collect();
                emit(
                    cli.format,
                    &json!({"p": w.ring().p(), "n": w.level(), "coords": coords}),
                    format!("[{}] at level {to}\n", coords.join(", ")),
                )
            }
            _ => Err(CliFailure::Config("pass exactly one of --file or --point".into())),
        },
        Command::CechTwisted { t, alpha, prec } => {
            let exponents: Result<Vec<i64>, _> =
                alpha.split(',').map(|s| s.trim().parse::<i64>()).collect();
            let alpha = MultiDegree(
                exponents.map_err(|e| CliFailure::Config(format!("bad --alpha: {e}")))?,
            );
            let complex = match prec {
                None => twisted_complex(t, &alpha)?,
                Some(m) => {
                    let p = require(cli.p, "--p")?;
                    twisted_complex_mod(t, &alpha, p, m)?
                }
            };
            let groups = cohomology(&complex)?;
            let text = format!("terms {:?}\n{}", complex.ranks, groups_text(&groups));
            emit(
                cli.format,
                &json!({"terms": complex.ranks, "cohomology": groups_json(&groups)}),
                text,
            )
        }
        Command::TorusH { t } => {
            let groups = torus_cohomology(t)?;
            emit(cli.format, &json!({"cohomology": groups_json(&groups)}), groups_text(&groups))
        }
        Command::XdtGraded { t, k } => {
            let d = require(cli.d, "--d")?;
            let default_cap = (t as i64 + 1 + k).max(0) + 8;
            let cap = cli.cap.map(|c| c as i64).unwrap_or(default_cap);
            let table = xdt_graded_ht(d, t, k, cap)?;
            let mut text = String::from("degree  rank\n");
            for row in &table.rows {
                text.push_str(&format!("{:>6}  {}\n", row.degree, row.rank));
            }
            text.push_str(&format!("(truncated at degree {})\n", table.truncated_at));
            if cli.format == Format::Csv {
                let mut csv = String::from("degree,rank\n");
                for row in &table.rows {
                    csv.push_str(&format!("{},{}\n", row.degree, row.rank));
                }
                csv.push_str(&format!("# truncated_at,{}\n", table.truncated_at));
                print!("{csv}");
                return Ok(());
            }
            emit(cli.format, &serde_json::to_value(&table).unwrap(), text)
        }
        Command::RestrictionCheck { dims, ranges, prec, steps } => {
            let p = require(cli.p, "--p")?;
            let parsed: Result<Vec<CoordRange>, CliFailure> = ranges
                .split(',')
                .map(|r| {
                    let (lo, hi) = r
                        .trim()
                        .split_once("..")
                        .ok_or_else(|| CliFailure::Config(format!("bad range {r:?}")))?;
                    let lo: i64 = lo
                        .parse()
                        .map_err(|e| CliFailure::Config(format!("bad range {r:?}: {e}")))?;
                    let hi: i64 = hi
                        .parse()
                        .map_err(|e| CliFailure::Config(format!("bad range {r:?}: {e}")))?;
                    Ok(if lo == 0 {
                        CoordRange::Disk { upper: hi }
                    } else {
                        CoordRange::Annulus { lower: lo, upper: hi }
                    })
                })
                .collect();
            let coords = parsed?;
            if coords.len() != dims {
                return Err(CliFailure::Config(format!(
                    "--dims {dims} but {} ranges given",
                    coords.len()
                )));
            }
            let cert = check_restriction_inclusion(&MonomialBox::new(coords)?, p, prec, steps)?;
            let text = format!(
                "ok: {} (checked {} monomials, min exponent {:?}, steps {})\n",
                cert.ok, cert.monomials_checked, cert.min_exponent, cert.steps
            );
            emit(cli.format, &serde_json::to_value(&cert).unwrap(), text)?;
            if cert.ok {
                Ok(())
            } else {
                Err(CliFailure::Verification("restriction inclusion failed".into()))
            }
        }
        Command::FilteredCheck { file, builtin, shift } => {
            let (system, shift) = match (file, builtin) {
                (Some(path), None) => {
                    let (sys, c) = load_filtered(&path)?;
                    (sys, c)
                }
                (None, Some(name)) => match name.as_str() {
                    "positive" => (geometric_filtered_system(2, 8, 5, 4), shift),
                    _ => (violating_filtered_system(), shift),
                },
                _ => {
                    return Err(CliFailure::Config(
                        "pass exactly one of --file or --builtin".into(),
                    ))
                }
            };
            let verdict = check_filtered_condition(&system, shift)?;
            let text = format!(
                "ok: {} (inclusion {}, iterated {}, intersection {}, cocycles {} over {} checks)\n{}",
                verdict.ok,
                verdict.inclusion_ok,
                verdict.iterated_ok,
                verdict.intersection_ok,
                verdict.cocycle_ok,
                verdict.inclusions_checked,
                verdict
                    .witness
                    .as_ref()
                    .map(|w| format!(
                        "witness: filtration {}, level {}, generator {:?}\n",
                        w.filtration, w.level, w.generator
                    ))
                    .unwrap_or_default()
            );
            emit(cli.format, &serde_json::to_value(&verdict).unwrap(), text)?;
            if verdict.ok {
                Ok(())
            } else {
                Err(CliFailure::Verification("filtered criterion failed".into()))
            }
        }
        Command::Measures { family, levels, level } => {
            let seed = load_arrangement(&family)?;
            let fam = compatible_family(&seed, levels)?;
            let sizes: Vec<usize> = fam.levels.iter().map(Arrangement::len).collect();
            let ranks: Vec<usize> = sizes.iter().map(|s| s - 1).collect();
            let mut text = String::from("order  members  zero-mass rank\n");
            for (i, (s, r)) in sizes.iter().zip(&ranks).enumerate() {
                text.push_str(&format!("{:>5}  {:>7}  {:>14}\n", i + 1, s, r));
            }
            let mut basis_json = json!(null);
            if let Some(order) = level {
                if order == 0 || order > levels {
                    return Err(CliFailure::Config(format!(
                        "--level {order} outside 1..={levels}"
                    )));
                }
                let basis = zero_mass_basis(fam.level(order));
                let rows: Vec<Vec<String>> = basis
                    .iter()
                    .map(|b| b.weights.iter().map(ToString::to_string).collect())
                    .collect();
                text.push_str(&format!("basis at order {order}: {rows:?}\n"));
                basis_json = json!(rows);
            }
            emit(
                cli.format,
                &json!({"sizes": sizes, "zero_mass_ranks": ranks, "basis": basis_json}),
                text,
            )
        }
        Command::Kummer { file, modulus } => {
            let mu = load_measure(&file)?;
            let residues = kummer_reduce(&mu, modulus)?;
            emit(
                cli.format,
                &json!({"modulus": modulus, "residues": residues}),
                format!("residues mod {modulus}: {residues:?}\n"),
            )
        }
        Command::Logexp { prec, v0 } => {
            let p = require(cli.p, "--p")?;
            let verdict = verify_log_exp(p, prec, v0)?;
            let text = format!(
                "ok: {} ({} elements scanned at p = {}, precision {})\n",
                verdict.ok, verdict.cases, verdict.p, verdict.precision
            );
            emit(cli.format, &serde_json::to_value(&verdict).unwrap(), text)?;
            if verdict.ok {
                Ok(())
            } else {
                Err(CliFailure::Verification("series isometry failed".into()))
            }
        }
        Command::VerifyAll { suite } => {
            let config = SuiteConfig {
                seed: cli.seed,
                cap: cli.cap.unwrap_or(1_000_000),
                timings: cli.timings,
            };
            let report =
                run_suite(&suite, &config).map_err(|e| CliFailure::Config(e.to_string()))?;
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
                Format::Csv => print!("{}", report.to_csv()),
            }
            if report.all_passed() {
                Ok(())
            } else {
                Err(CliFailure::Verification(format!("{} checks failed", report.failed)))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliFailure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliFailure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
