mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use degform_core::arith::todd_number;
use degform_core::criteria::{self, MapHypothesis};
use degform_core::sweep::{self, SweepConfig};
use degform_core::symfun::Partition;
use degform_core::variety::{self, CompleteIntersection};
use degform_core::Error;
use num_bigint::BigInt;
use serde_json::Value;

use render::{num, nums, object, Envelope};

#[derive(Debug, Parser)]
#[command(
    name = "degform",
    version,
    about = "Degree formulas and incompressibility of complete intersections"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, clap::Args)]
struct VarietyArgs {
    /// Dimension n of the ambient projective space P^n.
    #[arg(long)]
    ambient: u32,
    /// Comma-separated degrees of the defining hypersurfaces.
    #[arg(long, value_delimiter = ',')]
    degrees: Vec<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Arithmetic genus by the residue and the characteristic-number routes.
    Chi {
        #[command(flatten)]
        variety: VarietyArgs,
    },
    /// The Todd number tau_d.
    Tau { d: u32 },
    /// The characteristic number c_alpha.
    Charnum {
        #[command(flatten)]
        variety: VarietyArgs,
        /// Comma-separated parts of alpha, in any order.
        #[arg(long)]
        partition: String,
    },
    /// Full incompressibility report.
    Report {
        #[command(flatten)]
        variety: VarietyArgs,
        /// Index of the variety; defaults to the product of the degrees.
        #[arg(long)]
        nx: Option<BigInt>,
    },
    /// Checks the degree-formula congruence for a hypothetical rational map Y -> X.
    Degform {
        #[arg(long, allow_negative_numbers = true)]
        chi_y: BigInt,
        #[arg(long)]
        dim_y: u32,
        #[arg(long, allow_negative_numbers = true)]
        chi_x: BigInt,
        /// Degree of the map, 0 for non-dominant maps.
        #[arg(long)]
        deg_f: BigInt,
        #[arg(long)]
        nx: BigInt,
    },
    /// Runs the exhaustive invariant checks and prints a pass/fail table.
    Sweep {
        #[arg(long, default_value_t = SweepConfig::default().max_dim)]
        max_dim: u32,
        #[arg(long, default_value_t = SweepConfig::default().max_degree)]
        max_degree: u32,
        #[arg(long, default_value_t = SweepConfig::default().max_m)]
        max_m: u32,
    },
}

enum Failure {
    Core(Error),
    Sweep(Envelope),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn variety_inputs(v: &VarietyArgs) -> Vec<(&'static str, Value)> {
    vec![("ambient", num(v.ambient)), ("degrees", nums(&v.degrees))]
}

fn build(v: &VarietyArgs, nx: Option<BigInt>) -> Result<CompleteIntersection, Error> {
    CompleteIntersection::new(v.ambient, v.degrees.clone(), nx)
}

fn verdict_str(holds: bool) -> Value {
    Value::String(if holds { "holds" } else { "violated" }.into())
}

fn run(command: Command) -> Result<Envelope, Failure> {
    match command {
        Command::Chi { variety: v } => {
            let x = build(&v, None)?;
            let residue = variety::euler_char_residue(&x)?;
            let charnumbers = variety::euler_char_via_charnumbers(&x)?;
            let agree = residue == charnumbers;
            if !agree {
                return Err(Error::InternalInconsistency(format!(
                    "chi routes disagree for {x}: residue {residue}, characteristic numbers {charnumbers}"
                ))
                .into());
            }
            Ok(Envelope {
                command: "chi",
                inputs: object(variety_inputs(&v)),
                results: object(vec![
                    ("chi", num(&residue)),
                    ("chi_residue", num(&residue)),
                    ("chi_charnumbers", num(&charnumbers)),
                    ("routes_agree", Value::Bool(agree)),
                ]),
                verdicts: object(vec![]),
            })
        }
        Command::Tau { d } => Ok(Envelope {
            command: "tau",
            inputs: object(vec![("d", num(d))]),
            results: object(vec![("tau", num(todd_number(d)))]),
            verdicts: object(vec![]),
        }),
        Command::Charnum { variety: v, partition } => {
            let alpha: Partition = partition.parse()?;
            let x = build(&v, None)?;
            let via_powersums = variety::char_number(&x, &alpha)?;
            let via_chern = variety::char_number_via_chern_classes(&x, &alpha)?;
            if via_powersums != via_chern {
                return Err(Error::InternalInconsistency(format!(
                    "c_{alpha} routes disagree for {x}: {via_powersums} vs {via_chern}"
                ))
                .into());
            }
            let mut inputs = variety_inputs(&v);
            inputs.push(("partition", Value::String(alpha.to_string())));
            Ok(Envelope {
                command: "charnum",
                inputs: object(inputs),
                results: object(vec![("c_alpha", num(&via_powersums))]),
                verdicts: object(vec![]),
            })
        }
        Command::Report { variety: v, nx } => {
            let mut inputs = variety_inputs(&v);
            inputs.push(("nx", nx.as_ref().map_or(Value::Null, num)));
            let x = build(&v, nx)?;
            let report = criteria::build_report(&x)?;
            let mut verdicts: Vec<(&str, Value)> = report
                .verdicts
                .iter()
                .map(|o| (o.criterion.as_str(), Value::String(o.verdict.as_str().into())))
                .collect();
            verdicts.push(("overall", Value::String(report.overall.as_str().into())));
            let verdicts = object(verdicts);
            Ok(Envelope {
                command: "report",
                inputs: object(inputs),
                results: serde_json::to_value(&report).expect("report is serializable"),
                verdicts,
            })
        }
        Command::Degform {
            chi_y,
            dim_y,
            chi_x,
            deg_f,
            nx,
        } => {
            let h = MapHypothesis::new(chi_y, dim_y, chi_x, nx, deg_f)?;
            let tau = todd_number(h.dim_y - 1);
            let lhs = &h.chi_y * &tau;
            let rhs = &h.deg_f * &h.chi_x * &tau;
            Ok(Envelope {
                command: "degform",
                inputs: object(vec![
                    ("chi_y", num(&h.chi_y)),
                    ("dim_y", num(h.dim_y)),
                    ("chi_x", num(&h.chi_x)),
                    ("deg_f", num(&h.deg_f)),
                    ("nx", num(&h.n_x)),
                ]),
                results: object(vec![
                    ("tau_dim_y_minus_1", num(&tau)),
                    ("lhs", num(&lhs)),
                    ("rhs", num(&rhs)),
                ]),
                verdicts: object(vec![("congruence", verdict_str(criteria::dfr_congruence_holds(&h)))]),
            })
        }
        Command::Sweep {
            max_dim,
            max_degree,
            max_m,
        } => {
            if max_dim == 0 || max_degree == 0 {
                return Err(Error::InvalidOperand("sweep bounds must be positive".into()).into());
            }
            let rows = sweep::run(&SweepConfig {
                max_dim,
                max_degree,
                max_m,
            })?;
            let all_passed = rows.iter().all(|r| r.passed());
            let envelope = Envelope {
                command: "sweep",
                inputs: object(vec![
                    ("max_dim", num(max_dim)),
                    ("max_degree", num(max_degree)),
                    ("max_m", num(max_m)),
                ]),
                results: Value::Array(
                    rows.iter()
                        .map(|r| {
                            object(vec![
                                ("id", Value::String(r.id.clone())),
                                ("check", Value::String(r.name.clone())),
                                ("cases", num(r.cases)),
                                ("failures", num(r.failures)),
                                ("example", r.example.clone().map_or(Value::Null, Value::String)),
                            ])
                        })
                        .collect(),
                ),
                verdicts: object(
                    rows.iter()
                        .map(|r| {
                            (
                                r.id.as_str(),
                                Value::String(if r.passed() { "pass" } else { "fail" }.into()),
                            )
                        })
                        .chain([("all_passed", Value::Bool(all_passed))])
                        .collect(),
                ),
            };
            if all_passed {
                Ok(envelope)
            } else {
                Err(Failure::Sweep(envelope))
            }
        }
    }
}

fn emit(envelope: &Envelope, format: Format) {
    match format {
        Format::Text => print!("{}", envelope.to_text()),
        Format::Json => println!("{}", envelope.to_json()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(envelope) => {
            emit(&envelope, cli.format);
            ExitCode::SUCCESS
        }
        Err(Failure::Sweep(envelope)) => {
            emit(&envelope, cli.format);
            eprintln!("error: sweep found invariant failures");
            ExitCode::from(3)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 3 } else { 2 })
        }
    }
}
