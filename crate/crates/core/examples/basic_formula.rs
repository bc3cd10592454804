// SPDX-License-Identifier: Apache-2.0

// Build a propositional formula, print its script and check it.

use smtkit::{check, mk_var, ops, script_for, EmitOptions, SolverConfig, Sort};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = mk_var("x", Sort::Bool)?;
    let y = mk_var("y", Sort::Bool)?;
    let nx = ops::not(&x)?;
    let f = ops::or(&[nx.clone(), ops::and(&[nx, y])?])?;

    print!(
        "{}",
        script_for(std::slice::from_ref(&f), &EmitOptions::bare())?
    );

    let cfg = SolverConfig::default_solver();
    if !cfg.is_available() {
        println!("no solver `{}` on PATH, skipping the check", cfg.command);
        return Ok(());
    }
    let outcome = check(&[f], &cfg)?;
    println!("{}", outcome.status);
    if let Some(model) = outcome.model {
        print!("{model}");
    }
    Ok(())
}
