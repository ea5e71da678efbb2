use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cobforge_cli::commands::{self, Table};
use cobforge_cli::{parse_list, write_text, CliResult, Report};

/// Milnor numbers, coprimality certificates, generator plans and polytope
/// truncations for unitary cobordism.
#[derive(Parser)]
#[command(name = "cobforge", version)]
struct Cli {
    /// Also write the report as JSON to this file.
    #[arg(long, global = true, value_name = "FILE")]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    /// s_n(D_{k,n})
    D,
    /// s_{k,n}
    S,
    /// L_{k,n}
    #[value(alias = "l")]
    L,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form Milnor numbers for one (n, k).
    Milnor {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Print only one of the three sequences.
        #[arg(long, value_enum, ignore_case = true)]
        table: Option<TableArg>,
        /// Cross-check s_n(D_{k,n}) by Segre-class integration.
        #[arg(long)]
        oracle: bool,
    },
    /// gcd of s_{0,n}, ..., s_{n-2,n}.
    GcdCheck {
        #[arg(long)]
        n: u32,
    },
    /// A k with L_{k,n} nonzero mod p.
    Witness {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u64,
    },
    /// Counts of modifications B_k reaching Milnor number 1.
    Plan {
        #[arg(long)]
        n: u32,
        /// Write the plan document here.
        #[arg(long, value_name = "FILE")]
        plan_out: Option<PathBuf>,
    },
    /// Simple-polytope operations. SOURCE is a JSON file, simplex:N or product:D1,D2,...
    #[command(subcommand)]
    Polytope(PolytopeCommand),
    /// Re-run every table and sweep.
    Reproduce {
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Subcommand)]
enum PolytopeCommand {
    CutVertex {
        #[arg(long, value_name = "SOURCE")]
        input: String,
        #[arg(long)]
        vertex: usize,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    CutFace {
        #[arg(long, value_name = "SOURCE")]
        input: String,
        /// Comma-separated defining facets.
        #[arg(long)]
        facets: String,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    Iso {
        #[arg(long, value_name = "SOURCE")]
        left: String,
        #[arg(long, value_name = "SOURCE")]
        right: String,
    },
    Hvec {
        #[arg(long, value_name = "SOURCE")]
        input: String,
        /// Count faces even in high dimension.
        #[arg(long)]
        allow_large: bool,
    },
    ApplyPlan {
        #[arg(long, value_name = "FILE")]
        plan: PathBuf,
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
        /// Track long plans and count faces in high dimension.
        #[arg(long)]
        allow_large: bool,
    },
    Rigidity {
        #[arg(long)]
        n: u32,
    },
}

fn run(command: Command) -> CliResult<Report> {
    match command {
        Command::Milnor {
            n,
            k,
            table,
            oracle,
        } => {
            let table = table.map(|t| match t {
                TableArg::D => Table::D,
                TableArg::S => Table::S,
                TableArg::L => Table::L,
            });
            commands::milnor(n, k, table, oracle)
        }
        Command::GcdCheck { n } => commands::gcd_check(n),
        Command::Witness { n, p } => commands::witness(n, p),
        Command::Plan { n, plan_out } => commands::plan(n, plan_out.as_deref()),
        Command::Polytope(cmd) => match cmd {
            PolytopeCommand::CutVertex {
                input,
                vertex,
                output,
            } => commands::cut_vertex(&input, vertex, output.as_deref()),
            PolytopeCommand::CutFace {
                input,
                facets,
                output,
            } => commands::cut_face(&input, &parse_list(&facets)?, output.as_deref()),
            PolytopeCommand::Iso { left, right } => commands::iso(&left, &right),
            PolytopeCommand::Hvec { input, allow_large } => commands::hvec(&input, allow_large),
            PolytopeCommand::ApplyPlan {
                plan,
                output,
                allow_large,
            } => commands::apply(&plan, output.as_deref(), allow_large),
            PolytopeCommand::Rigidity { n } => commands::rigidity(n),
        },
        Command::Reproduce { inject_fault } => commands::reproduce(inject_fault),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(cli.command).and_then(|report| {
        if let Some(path) = &cli.json {
            write_text(path, &report.to_json())?;
        }
        Ok(report)
    });
    match report {
        Ok(report) => {
            print!("{}", report.render_text());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
