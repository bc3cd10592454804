// SPDX-License-Identifier: Apache-2.0

use std::fs::{self, File};
use std::io::{self, BufRead, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use smtkit::emit::{save_script, EmitOptions};
use smtkit::problems::{find_colorings, pigeonhole, ColoringProblem, GraphSpec};
use smtkit::solver::{check, check_file, Session, SolverConfig};
use smtkit::CheckStatus;

#[derive(Parser)]
#[command(
    name = "smtkit",
    version,
    about = "Build, emit and check SMT-LIB problems"
)]
struct Cli {
    /// Shipped solver configuration.
    #[arg(long, global = true, value_enum)]
    solver: Option<SolverKind>,
    /// Full solver command line, e.g. "z3 -smt2 -in". Overrides --solver.
    #[arg(long, global = true)]
    solver_cmd: Option<String>,
    /// Per-reply timeout in seconds.
    #[arg(long, global = true)]
    timeout: Option<u64>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverKind {
    Z3,
    Cvc5,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check an SMT-LIB file and print its status.
    Check { file: PathBuf },
    /// Pigeonhole problem with n + 1 pigeons and n holes.
    Pigeonhole {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Write the script here instead of checking it.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Enumerate colorings of a graph file.
    Color {
        graph: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        colors: u32,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        find: u32,
    },
    /// Forward each input line to the solver and print the raw reply.
    /// `:q` quits.
    Repl,
}

fn config(cli: &Cli) -> Result<SolverConfig, String> {
    let mut cfg = match (&cli.solver_cmd, cli.solver) {
        (Some(line), _) => SolverConfig::from_command_line(line).map_err(|e| e.to_string())?,
        (None, Some(SolverKind::Z3)) => SolverConfig::z3(),
        (None, Some(SolverKind::Cvc5)) => SolverConfig::cvc5(),
        (None, None) => SolverConfig::default_solver(),
    };
    if let Some(secs) = cli.timeout {
        cfg = cfg.with_timeout(Duration::from_secs(secs));
    }
    Ok(cfg)
}

fn status_code(status: CheckStatus) -> ExitCode {
    println!("{status}");
    match status {
        CheckStatus::Unknown => ExitCode::from(2),
        _ => ExitCode::SUCCESS,
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let cfg = config(cli)?;
    match &cli.command {
        Cmd::Check { file } => Ok(status_code(
            check_file(file, &cfg).map_err(|e| e.to_string())?,
        )),
        Cmd::Pigeonhole { n, emit } => {
            let ts = pigeonhole(*n as usize).map_err(|e| e.to_string())?;
            match emit {
                Some(path) => {
                    let file =
                        File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
                    save_script(&ts, &EmitOptions::default(), BufWriter::new(file))
                        .map_err(|e| e.to_string())?;
                    Ok(ExitCode::SUCCESS)
                }
                None => Ok(status_code(
                    check(&ts, &cfg).map_err(|e| e.to_string())?.status,
                )),
            }
        }
        Cmd::Color {
            graph,
            colors,
            find,
        } => {
            let text =
                fs::read_to_string(graph).map_err(|e| format!("{}: {e}", graph.display()))?;
            let spec: GraphSpec = text
                .parse()
                .map_err(|e| format!("{}: {e}", graph.display()))?;
            let problem = ColoringProblem::new(&spec, *colors).map_err(|e| e.to_string())?;
            let mut session = Session::open(&cfg).map_err(|e| e.to_string())?;
            let found = find_colorings(&mut session, &problem, *find as usize, |coloring| {
                let pairs: Vec<String> = coloring
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("{}={c}", i + 1))
                    .collect();
                println!("{}", pairs.join(" "));
            })
            .map_err(|e| e.to_string())?;
            session.close();
            println!("{} coloring(s)", found.len());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Repl => {
            let mut session = Session::open(&cfg).map_err(|e| e.to_string())?;
            for line in io::stdin().lock().lines() {
                let line = line.map_err(|e| e.to_string())?;
                let line = line.trim();
                if line == ":q" {
                    break;
                }
                if line.is_empty() {
                    continue;
                }
                let reply = session.raw_send(line).map_err(|e| e.to_string())?;
                if !reply.is_empty() {
                    println!("{reply}");
                }
            }
            session.close();
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    // exit code 2 is reserved for `unknown`, so usage errors exit with 1
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("smtkit: {msg}");
            ExitCode::FAILURE
        }
    }
}
