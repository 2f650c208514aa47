use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use supercat::error::Error;
use supercat::instance::{builtin, AnyInstance, Instance, LoadOptions};
use supercat::report::Report;
use supercat::scalar::Scalar;
use supercat::suite;

#[derive(Parser)]
#[command(
    name = "supercat",
    version,
    about = "Verify super fusion categories, their algebras and orbifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Tolerance for float instances (must be positive).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Force exact Gaussian-rational arithmetic.
    #[arg(long, global = true)]
    exact: bool,
    /// Write the result as JSON to this path.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for the randomized expression sweep.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Pentagon, hexagons, unit and dual checks.
    Validate { instance: String },
    /// Superalgebra axioms and the standing assumption on V.
    AlgebraCheck { instance: String },
    /// Split a module into its twisted sectors.
    Decompose {
        instance: String,
        #[arg(long)]
        module: String,
    },
    /// Twist of every declared and free module.
    Sectors { instance: String },
    /// Simple counts and the equivalence with the equivariantization.
    Equivariantize { instance: String },
    /// Every check there is, one line each.
    PaperSuite { instance: String },
    /// Multiplication table of the shipped simples.
    FusionTable {
        instance: String,
        #[arg(long, value_enum)]
        category: Table,
    },
    /// Print (or write with --output) a built-in instance as a file.
    Export { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Repv,
    Equivariant,
}

/// What a command produced: text for stdout, JSON for `--output`, and
/// whether every check passed.
struct Outcome {
    text: String,
    json: Value,
    passed: bool,
    failures: Vec<Value>,
}

impl Outcome {
    fn reports(reports: Vec<Report>) -> Outcome {
        let text = reports
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("\n\n");
        let failures = reports
            .iter()
            .flat_map(|r| r.failures())
            .map(|c| serde_json::to_value(c).expect("check serializes"))
            .collect::<Vec<_>>();
        let worst = reports
            .iter()
            .filter_map(|r| r.worst())
            .filter(|c| !c.pass)
            .max_by(|a, b| a.residual.total_cmp(&b.residual))
            .map(|c| {
                format!(
                    "\nworst: {} residual={:e} [{}]",
                    c.name, c.residual, c.anchor
                )
            });
        Outcome {
            text: text + &worst.unwrap_or_default(),
            json: json!({ "reports": reports }),
            passed: failures.is_empty(),
            failures,
        }
    }

    fn table(text: String, json: Value) -> Outcome {
        Outcome {
            text,
            json,
            passed: true,
            failures: vec![],
        }
    }
}

/// Checks that failed numerically exit with 1; bad input exits with 2.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Format(_)
            | Error::UnknownName(_)
            | Error::Syntax(_)
            | Error::Type(_)
            | Error::Formula(_)
            | Error::MissingEntry(_)
            | Error::UnboundSymbol(_)
            | Error::BindingMismatch { .. }
            | Error::ShapeMismatch(_)
            | Error::NotClosed(_)
            | Error::NotAutomorphism(_)
            | Error::NotBicharacter(_)
            | Error::ParityNotHomomorphism(_)
            | Error::RankAmbiguous(_)
    )
}

fn rows_text(rows: &[(String, String, Vec<(String, usize)>)]) -> String {
    rows.iter()
        .map(|(a, b, terms)| {
            let rhs = if terms.is_empty() {
                "0".to_string()
            } else {
                terms
                    .iter()
                    .map(|(n, k)| {
                        if *k == 1 {
                            n.clone()
                        } else {
                            format!("{k} {n}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            format!("{a} * {b} = {rhs}")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn rows_json(rows: &[(String, String, Vec<(String, usize)>)]) -> Value {
    rows.iter()
        .map(|(a, b, terms)| {
            json!({
                "left": a,
                "right": b,
                "terms": terms.iter().map(|(n, k)| json!({"simple": n, "mult": k})).collect::<Vec<_>>(),
            })
        })
        .collect()
}

fn run<S: Scalar>(
    inst: &Instance<S>,
    cmd: &Command,
    seed: u64,
) -> supercat::error::Result<Outcome> {
    Ok(match cmd {
        Command::Validate { .. } => Outcome::reports(vec![suite::validate(inst)?]),
        Command::AlgebraCheck { .. } => Outcome::reports(vec![suite::algebra_check(inst)?]),
        Command::PaperSuite { .. } => Outcome::reports(suite::paper_suite(inst, seed)?),
        Command::Equivariantize { .. } => {
            let rep = inst.rep()?;
            let objects = inst.object_set(&rep)?;
            Outcome::reports(vec![suite::equivariantization(&rep, &objects)?])
        }
        Command::Decompose { module, .. } => {
            let rep = inst.rep()?;
            let m = inst.module(&rep, module)?;
            let (dec, report) = rep.decompose_twisted(&m)?;
            let mut text = format!("{:<8} {:>4}  twist\n", "sector", "dim");
            let mut rows = Vec::new();
            for s in &dec.sectors {
                let name = &rep.alg.group.names[s.g];
                let twist = rep
                    .twist_of(&s.module)?
                    .map(|t| rep.alg.group.names[t].clone());
                text += &format!(
                    "{:<8} {:>4}  {}\n",
                    name,
                    s.module.dim(),
                    twist.as_deref().unwrap_or("-")
                );
                rows.push(json!({"sector": name, "dim": s.module.dim(), "twist": twist}));
            }
            let mut out = Outcome::reports(vec![report]);
            out.text = format!(
                "{}: {} (dim {})\n{text}\n{}",
                inst.doc.name,
                m.name,
                m.dim(),
                out.text
            );
            out.json = json!({"module": m.name, "dim": m.dim(), "sectors": rows, "reports": out.json["reports"]});
            out
        }
        Command::Sectors { .. } => {
            let rows = suite::sectors(inst)?;
            let mut text = format!("{:<16} {:>4}  twist\n", "module", "dim");
            for (n, d, g) in &rows {
                text += &format!("{:<16} {:>4}  {}\n", n, d, g.as_deref().unwrap_or("mixed"));
            }
            let json = rows
                .iter()
                .map(|(n, d, g)| json!({"module": n, "dim": d, "twist": g}))
                .collect();
            Outcome::table(text.trim_end().to_string(), json)
        }
        Command::FusionTable { category, .. } => {
            let rep = inst.rep()?;
            let objects = inst.object_set(&rep)?;
            match category {
                Table::Repv => {
                    let rows = suite::repv_fusion(&rep, &objects)?;
                    Outcome::table(rows_text(&rows), rows_json(&rows))
                }
                Table::Equivariant => {
                    let (names, rows) = suite::equivariant_fusion(&rep, &objects)?;
                    let text = format!("simples: {}\n{}", names.join(", "), rows_text(&rows));
                    Outcome::table(text, json!({"simples": names, "table": rows_json(&rows)}))
                }
            }
        }
        Command::Export { .. } => unreachable!("handled before loading"),
    })
}

/// Like `println!`, but a closed pipe (`| head`) is not a crash.
fn print_out(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let input_error = |msg: String| {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    };

    if let Command::Export { name } = &cli.command {
        let doc = match builtin(name) {
            Ok(d) => d,
            Err(e) => return input_error(e.to_string()),
        };
        let text = doc.to_json();
        return match &cli.output {
            Some(p) => match std::fs::write(p, text + "\n") {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => input_error(format!("{}: {e}", p.display())),
            },
            None => {
                print_out(&text);
                ExitCode::SUCCESS
            }
        };
    }

    let source = match &cli.command {
        Command::Validate { instance }
        | Command::AlgebraCheck { instance }
        | Command::Decompose { instance, .. }
        | Command::Sectors { instance }
        | Command::Equivariantize { instance }
        | Command::PaperSuite { instance }
        | Command::FusionTable { instance, .. } => instance.clone(),
        Command::Export { .. } => unreachable!(),
    };
    let opts = LoadOptions {
        exact: cli.exact,
        tol: cli.tol,
    };
    let inst = match AnyInstance::open(&source, opts) {
        Ok(i) => i,
        Err(e) => return input_error(e.to_string()),
    };
    let result = match &inst {
        AnyInstance::Exact(i) => run(i, &cli.command, cli.seed),
        AnyInstance::Float(i) => run(i, &cli.command, cli.seed),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) if is_input_error(&e) => return input_error(e.to_string()),
        Err(e) => {
            // a structural check failed before a report could be assembled
            let failure = json!({"error": e.to_string()});
            eprintln!("{}", json!({"failures": [failure]}));
            if let Some(p) = &cli.output {
                let doc =
                    json!({"instance": inst.doc().name, "passed": false, "failures": [failure]});
                let _ = std::fs::write(p, serde_json::to_string_pretty(&doc).unwrap());
            }
            return ExitCode::from(1);
        }
    };

    print_out(&outcome.text);
    if let Some(p) = &cli.output {
        let doc = json!({
            "instance": inst.doc().name,
            "passed": outcome.passed,
            "result": outcome.json,
            "failures": outcome.failures,
        });
        if let Err(e) = std::fs::write(p, serde_json::to_string_pretty(&doc).unwrap() + "\n") {
            return input_error(format!("{}: {e}", p.display()));
        }
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("{}", json!({ "failures": outcome.failures }));
        ExitCode::from(1)
    }
}
