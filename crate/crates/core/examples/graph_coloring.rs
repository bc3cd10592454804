// SPDX-License-Identifier: Apache-2.0

// Enumerate colorings of a small graph by blocking each one found.

use smtkit::oracle::enumerate_models;
use smtkit::problems::{find_colorings, ColoringProblem, GraphSpec};
use smtkit::{Session, SolverConfig};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a square with one diagonal
    let graph: GraphSpec = "4\n1 2\n2 3\n3 4\n4 1\n1 3\n".parse()?;
    let colors = 3;
    let problem = ColoringProblem::new(&graph, colors)?;

    let expected = enumerate_models(&problem.constraints(), &problem.domains(colors))?.len();
    println!("oracle: {expected} coloring(s)");

    let cfg = SolverConfig::default_solver();
    if !cfg.is_available() {
        println!("no solver `{}` on PATH, skipping", cfg.command);
        return Ok(());
    }
    let mut session = Session::open(&cfg)?;
    let found = find_colorings(&mut session, &problem, 100, |c| {
        let line: Vec<String> = c.iter().map(ToString::to_string).collect();
        println!("{}", line.join(" "));
    })?;
    println!("solver: {} coloring(s)", found.len());
    Ok(())
}
