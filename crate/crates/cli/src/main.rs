use std::path::{Path, PathBuf};
use std::process::ExitCode;

use braided_weyl::calculus::{OperatorKind, WeylAlgebra};
use braided_weyl::hecke::{limit_hbar0, limit_q1};
use braided_weyl::poisson::parse_poly;
use braided_weyl::radial::radial_apply;
use braided_weyl::verify::{self, Context, Suite};
use braided_weyl::{bundled, RelationTable, Result};
use clap::{ArgGroup, Parser, Subcommand};

/// Normal ordering, derivative actions and radial parts in braided Weyl algebras.
#[derive(Parser)]
#[command(name = "nc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of an expression.
    Normalize {
        /// Bundled table id or path to a table JSON file.
        table: String,
        expr: String,
    },
    /// Apply an operator to a polynomial in the coordinates.
    Act {
        table: String,
        /// An expression in the generators, or one of laplacian, dalembertian, Q, Delta0..Delta3.
        op: String,
        expr: String,
    },
    /// Apply the radial part of the Laplacian to f(lambda, mu).
    Radial { f: String },
    /// Print a table with q = 1 or h = 0 substituted.
    #[command(group(ArgGroup::new("which").required(true).args(["q1", "hbar0"])))]
    Limit {
        table: String,
        #[arg(long)]
        q1: bool,
        #[arg(long)]
        hbar0: bool,
        /// Print JSON instead of rules.
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite: all, tables, prop6, eigen, derham, ch, pi, radial, poisson, confluence.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
        /// Directory of <id>.json tables to check instead of the bundled ones.
        #[arg(long)]
        tables: Option<PathBuf>,
    },
}

fn load_table(spec: &str) -> Result<RelationTable> {
    if bundled::TABLE_IDS.contains(&spec) {
        return bundled::table(spec);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(braided_weyl::Error::Table(format!(
            "'{spec}' is neither a bundled table ({}) nor a file",
            bundled::TABLE_IDS.join(", ")
        )));
    }
    let src = std::fs::read_to_string(path).map_err(|e| braided_weyl::Error::Table(format!("{spec}: {e}")))?;
    RelationTable::from_json(&src)
}

fn render_table(t: &RelationTable) -> String {
    let mut out = String::new();
    for r in t.rules() {
        out.push_str(&t.render_rule(r.lhs.0, r.lhs.1));
        out.push('\n');
    }
    for (&l, c) in t.counits() {
        out.push_str(&format!("{}(1) = {c}\n", t.alphabet().name(l)));
    }
    out
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Normalize { table, expr } => {
            let w = WeylAlgebra::new(load_table(&table)?);
            let e = w.parse(&expr)?;
            println!("{}", w.render(&w.normal_form(&e)?));
        }
        Command::Act { table, op, expr } => {
            let w = WeylAlgebra::new(load_table(&table)?);
            let op = match op.parse::<OperatorKind>() {
                Ok(kind) => w.build_operator(kind)?,
                Err(_) => w.parse(&op)?,
            };
            let f = w.parse(&expr)?;
            println!("{}", w.render(&w.apply_operator(&op, &f)?));
        }
        Command::Radial { f } => {
            let p = parse_poly::<2>(&f, &["lambda", "mu"])?;
            println!("{}", radial_apply(&p)?);
        }
        Command::Limit { table, q1, hbar0: _, json } => {
            let t = load_table(&table)?;
            let t = if q1 { limit_q1(&t)? } else { limit_hbar0(&t)? };
            if json {
                print!("{}", t.to_json());
            } else {
                print!("{}", render_table(&t));
            }
        }
        Command::Verify { suite, json, tables } => {
            let suites = if suite == "all" { vec![] } else { vec![suite.parse::<Suite>()?] };
            let ctx = match tables {
                Some(dir) => Context::with_overrides(&dir)?,
                None => Context::bundled()?,
            };
            let checks = verify::run(&ctx, &suites);
            if json {
                println!("{}", verify::to_json(&checks));
            } else {
                for c in &checks {
                    println!("{c}");
                }
            }
            if let Some(bad) = checks.iter().find(|c| !c.passed()) {
                if json {
                    eprintln!("{bad}");
                }
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
