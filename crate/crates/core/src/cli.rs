//! The `powmean` command-line front end.
//!
//! Every command builds an [`OutputRecord`] and renders it as human-readable
//! text, JSON or CSV. Exit codes: 0 on success, 1 when a check finds a
//! violation, 2 on usage or input errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grid::{Grid, DEFAULT_SAMPLES};
use crate::kind::{format_order, parse_order, MeanKind, PowerTypeSpec};
use crate::means::power_type_eval;
use crate::series::{mean_series, power_type_series};
use crate::sharp::{
    conjecture_pair, conjecture_scan, critical_exponent, restate_by_rescaling, scan_grid,
    ComparisonPair, Direction,
};
use crate::verify::{
    verify_chain, verify_monotonicity_in_p, witness_f, witness_profile, ChainSpec, Witness,
};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "powmean",
    version,
    about = "Power-type bivariate means and their sharp exponents"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct FormatArg {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

fn order_arg(s: &str) -> std::result::Result<f64, String> {
    parse_order(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate M_p(a, b)
    #[command(allow_negative_numbers = true)]
    Eval {
        /// Base mean: A, G, He, L, I, P, T, N, Z or Y
        #[arg(long)]
        mean: MeanKind,
        /// Order, as a decimal or a fraction such as 2/3
        #[arg(long, default_value = "1", value_parser = order_arg)]
        p: f64,
        /// First argument, > 0
        #[arg(long)]
        a: f64,
        /// Second argument, > 0
        #[arg(long)]
        b: f64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Taylor coefficients of M_p(x, 1) at x = 1
    #[command(allow_negative_numbers = true)]
    Series {
        /// Base mean: A, G, He, L, I, P, T, N, Z or Y
        #[arg(long)]
        mean: MeanKind,
        /// Order of the power-type mean; omitted means the base mean
        #[arg(long, value_parser = order_arg)]
        p: Option<f64>,
        /// Highest power of (x - 1)
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Sharp exponent of a comparison between KIND_p and a fixed mean
    Sharp {
        /// Kind whose order p is free
        #[arg(long)]
        family: MeanKind,
        /// KIND or KIND:P
        #[arg(long)]
        reference: PowerTypeSpec,
        /// `below`: family_p < reference; `above`: reference < family_p
        #[arg(long)]
        direction: Direction,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Verify an inequality chain on a grid of x in (0, 1)
    Chain {
        /// yang1, yang2, yang3, costin_toader or chu_yang
        #[arg(long)]
        name: String,
        /// Points on the blended grid
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Check that p -> M_p(a, b) is increasing
    #[command(allow_negative_numbers = true)]
    Mono {
        /// Base mean: A, G, He, L, I, P, T, N, Z or Y
        #[arg(long)]
        mean: MeanKind,
        /// Smallest order
        #[arg(long, value_parser = order_arg)]
        pmin: f64,
        /// Largest order
        #[arg(long, value_parser = order_arg)]
        pmax: f64,
        /// Evenly spaced orders from pmin to pmax
        #[arg(long, default_value_t = 41)]
        steps: usize,
        /// First argument, > 0
        #[arg(long)]
        a: f64,
        /// Second argument, > 0
        #[arg(long)]
        b: f64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Scan the sign of T_p(x, 1) - N(x, 1)
    #[command(allow_negative_numbers = true)]
    Conjecture {
        /// Order of T_p, > 0
        #[arg(long, value_parser = order_arg)]
        p: f64,
        /// Points on the blended grid, before adding the near-diagonal points
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Evaluate or scan the auxiliary functions f1, f2, f3
    Witness {
        /// 1, 2 or 3
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        /// Single point in (0, 1); without it the function is scanned
        #[arg(long)]
        x: Option<f64>,
        /// Points on the uniform scan grid
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Value,
}

/// What every command reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Value,
    pub status: Status,
}

impl OutputRecord {
    fn exit_code(&self) -> u8 {
        match self.status {
            Status::Fail => EXIT_VIOLATION,
            Status::Pass | Status::Value => EXIT_PASS,
        }
    }
}

struct Rendered {
    record: OutputRecord,
    human: String,
    csv: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn inputs<const N: usize>(pairs: [(&str, Value); N]) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn pass_fail(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Shortest round-trip decimal, switching to exponent form for very small or large magnitudes.
fn num(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&x).expect("finite float")
    } else {
        x.to_string()
    }
}

fn csv_rows(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

fn chain_csv(records: &[crate::verify::GapRecord]) -> String {
    csv_rows(
        "name,x,lhs_spec,rhs_spec,lhs,rhs,gap",
        records.iter().map(|r| {
            format!(
                "{},{},{},{},{},{},{}",
                r.name,
                num(r.x),
                r.lhs_spec,
                r.rhs_spec,
                num(r.lhs),
                num(r.rhs),
                num(r.gap)
            )
        }),
    )
}

fn execute(command: &Command) -> Result<Rendered> {
    match *command {
        Command::Eval { mean, p, a, b, .. } => {
            let spec = PowerTypeSpec::new(mean, p)?;
            let v = power_type_eval(spec, a, b)?;
            Ok(Rendered {
                record: OutputRecord {
                    command: "eval".into(),
                    inputs: inputs([
                        ("mean", to_value(&mean)),
                        ("p", json!(p)),
                        ("a", json!(a)),
                        ("b", json!(b)),
                    ]),
                    results: to_value(&v),
                    status: Status::Value,
                },
                human: format!("{spec}({}, {}) = {}\n", num(a), num(b), num(v.value)),
                csv: csv_rows(
                    "mean,p,a,b,value",
                    [format!(
                        "{mean},{},{},{},{}",
                        num(p),
                        num(a),
                        num(b),
                        num(v.value)
                    )],
                ),
            })
        }
        Command::Series { mean, p, order, .. } => {
            let jet = match p {
                None => mean_series(mean, order)?,
                Some(p) => power_type_series(PowerTypeSpec::new(mean, p)?, order)?,
            };
            let label = PowerTypeSpec::new(mean, p.unwrap_or(1.0))?;
            let coeffs = jet.coeffs().to_vec();
            let listed: Vec<String> = coeffs.iter().map(|&c| num(c)).collect();
            Ok(Rendered {
                record: OutputRecord {
                    command: "series".into(),
                    inputs: inputs([
                        ("mean", to_value(&mean)),
                        ("p", json!(p.unwrap_or(1.0))),
                        ("order", json!(order)),
                    ]),
                    results: json!({ "coefficients": coeffs }),
                    status: Status::Value,
                },
                human: format!("{label}(1 + t, 1) = [{}]\n", listed.join(", ")),
                csv: csv_rows(
                    "k,coefficient",
                    coeffs
                        .iter()
                        .enumerate()
                        .map(|(k, &c)| format!("{k},{}", num(c))),
                ),
            })
        }
        Command::Sharp {
            family,
            reference,
            direction,
            ..
        } => {
            let pair = ComparisonPair::new(family, reference, direction);
            let report = critical_exponent(&pair)?;
            let restated = restate_by_rescaling(&pair, report.p_star).ok();
            let mut human = format!(
                "{}\n  p* = {} ({})\n  c2(p) = {} p {} {}\n",
                report.label,
                num(report.p_star),
                format_order(report.p_star),
                num(report.c2_slope),
                if report.c2_intercept < 0.0 { "-" } else { "+" },
                num(report.c2_intercept.abs()),
            );
            if let Some(e) = &report.endpoint_check {
                human.push_str(&format!("  endpoint gap at p*: {}\n", num(e.at_star)));
            }
            if let Some(r) = &restated {
                human.push_str(&format!(
                    "  restated: {} with p* = {}\n",
                    r.pair.label(),
                    format_order(r.p_star)
                ));
            }
            human.push_str(&format!("  {}\n", report.verdict()));
            let mut results = to_value(&report);
            results["verdict"] = json!(report.verdict());
            results["restated"] = to_value(&restated);
            Ok(Rendered {
                record: OutputRecord {
                    command: "sharp".into(),
                    inputs: inputs([
                        ("family", to_value(&family)),
                        ("reference", to_value(&reference)),
                        ("direction", to_value(&direction)),
                    ]),
                    results,
                    status: Status::Value,
                },
                human,
                csv: csv_rows(
                    "p,c2",
                    report
                        .c2_samples
                        .iter()
                        .map(|&(p, c)| format!("{},{}", num(p), num(c))),
                ),
            })
        }
        Command::Chain {
            ref name, samples, ..
        } => {
            let spec = ChainSpec::builtin(name)?;
            let report = verify_chain(&spec, &Grid::blended(samples)?)?;
            let mut human = format!("{spec}\n");
            for link in &report.links {
                human.push_str(&format!(
                    "  {} < {}: min gap {} at x = {}\n",
                    link.lhs,
                    link.rhs,
                    num(link.min_gap),
                    num(link.argmin_x)
                ));
            }
            human.push_str(&format!(
                "{} violations over {} points\n",
                report.violations.len(),
                report.grid.points
            ));
            Ok(Rendered {
                record: OutputRecord {
                    command: "chain".into(),
                    inputs: inputs([("name", json!(name)), ("samples", json!(samples))]),
                    results: to_value(&report),
                    status: pass_fail(report.passed()),
                },
                human,
                csv: chain_csv(&report.records),
            })
        }
        Command::Mono {
            mean,
            pmin,
            pmax,
            steps,
            a,
            b,
            ..
        } => {
            if steps < 2 || !(pmin < pmax) {
                return Err(Error::Domain(
                    "need pmin < pmax and at least 2 steps".into(),
                ));
            }
            let ps: Vec<f64> = (0..steps)
                .map(|i| pmin + (pmax - pmin) * i as f64 / (steps - 1) as f64)
                .collect();
            let report = verify_monotonicity_in_p(mean, &ps, &[(a, b)])?;
            let human = format!(
                "{mean}_p({}, {}) over {} orders in [{}, {}]: min step gap {}, {} violations\n",
                num(a),
                num(b),
                report.p_grid.len(),
                num(pmin),
                num(pmax),
                num(report.min_step_gap),
                report.violations.len()
            );
            let values = ps
                .iter()
                .map(|&p| {
                    Ok(format!(
                        "{},{}",
                        num(p),
                        num(power_type_eval(PowerTypeSpec::new(mean, p)?, a, b)?.value)
                    ))
                })
                .collect::<Result<Vec<String>>>()?;
            Ok(Rendered {
                record: OutputRecord {
                    command: "mono".into(),
                    inputs: inputs([
                        ("mean", to_value(&mean)),
                        ("pmin", json!(pmin)),
                        ("pmax", json!(pmax)),
                        ("steps", json!(steps)),
                        ("a", json!(a)),
                        ("b", json!(b)),
                    ]),
                    results: to_value(&report),
                    status: pass_fail(report.passed()),
                },
                human,
                csv: csv_rows("p,value", values),
            })
        }
        Command::Conjecture { p, samples, .. } => {
            let grid = scan_grid(samples)?;
            let scan = conjecture_scan(p, &grid)?;
            let (lesser, greater) = conjecture_pair().sides(p)?;
            let records =
                verify_chain(&ChainSpec::new("conjecture", vec![lesser, greater])?, &grid)?.records;
            let mut human = format!(
                "{}: min gap {} at x = {}, {} violations over {} points\n",
                scan.label,
                num(scan.min_gap),
                num(scan.argmin_x),
                scan.violations.len(),
                scan.points
            );
            if let Some(v) = scan.violations.last() {
                human.push_str(&format!(
                    "  largest violating x = {} (gap {})\n",
                    num(v.x),
                    num(v.rel_gap)
                ));
            }
            Ok(Rendered {
                record: OutputRecord {
                    command: "conjecture".into(),
                    inputs: inputs([("p", json!(p)), ("samples", json!(samples))]),
                    results: to_value(&scan),
                    status: pass_fail(scan.passed()),
                },
                human,
                csv: chain_csv(&records),
            })
        }
        Command::Witness {
            which, x, samples, ..
        } => {
            let w = Witness::from_index(which)?;
            match x {
                Some(x) => {
                    let v = witness_f(w, x)?;
                    Ok(Rendered {
                        record: OutputRecord {
                            command: "witness".into(),
                            inputs: inputs([("which", json!(which)), ("x", json!(x))]),
                            results: json!({ "value": v }),
                            status: Status::Value,
                        },
                        human: format!("{w}({}) = {}\n", num(x), num(v)),
                        csv: csv_rows("x,value", [format!("{},{}", num(x), num(v))]),
                    })
                }
                None => {
                    let grid = Grid::uniform(samples);
                    let report = witness_profile(w, &grid)?;
                    let rows = grid
                        .points()
                        .iter()
                        .map(|&x| Ok(format!("{},{}", num(x), num(witness_f(w, x)?))))
                        .collect::<Result<Vec<String>>>()?;
                    Ok(Rendered {
                        human: format!(
                            "{w} on {} points: min {}, near 1: {}, {} non-positive, {} non-decreasing steps\n",
                            report.points,
                            num(report.min_value),
                            num(report.value_near_one),
                            report.non_positive.len(),
                            report.non_decreasing.len()
                        ),
                        record: OutputRecord {
                            command: "witness".into(),
                            inputs: inputs([("which", json!(which)), ("samples", json!(samples))]),
                            status: pass_fail(report.passed()),
                            results: to_value(&report),
                        },
                        csv: csv_rows("x,value", rows),
                    })
                }
            }
        }
    }
}

fn format_of(command: &Command) -> Format {
    match command {
        Command::Eval { format, .. }
        | Command::Series { format, .. }
        | Command::Sharp { format, .. }
        | Command::Chain { format, .. }
        | Command::Mono { format, .. }
        | Command::Conjecture { format, .. }
        | Command::Witness { format, .. } => format.format,
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let rendered = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = match format_of(&cli.command) {
        Format::Human => rendered.human,
        Format::Csv => rendered.csv,
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(&rendered.record).expect("plain data serializes");
            s.push('\n');
            s
        }
    };
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_USAGE;
    }
    rendered.record.exit_code()
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}
