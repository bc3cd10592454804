// SPDX-License-Identifier: Apache-2.0

// An uninterpreted function f: Int -> Bool pinned at two points.

use smtkit::oracle::evaluate;
use smtkit::{apply_ufunc, check, declare_ufunc, ops, SolverConfig, Sort, Term};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = declare_ufunc("f", &[Sort::Int], Sort::Bool)?;
    let at_minus_one = apply_ufunc(&f, &[Term::int(-1)])?;
    let at_one = apply_ufunc(&f, &[Term::int(1)])?;
    let constraints = [ops::not(&at_minus_one)?, at_one.clone()];

    let cfg = SolverConfig::default_solver();
    if !cfg.is_available() {
        println!("no solver `{}` on PATH, skipping", cfg.command);
        return Ok(());
    }
    let outcome = check(&constraints, &cfg)?;
    println!("{}", outcome.status);
    let model = outcome.model.expect("sat comes with a model");
    println!("f(-1) = {}", evaluate(&at_minus_one, &model)?);
    println!("f(1) = {}", evaluate(&at_one, &model)?);
    Ok(())
}
