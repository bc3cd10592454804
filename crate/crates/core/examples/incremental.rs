// SPDX-License-Identifier: Apache-2.0

// Scoped assertions with push and pop in one solver session.

use smtkit::{mk_var, ops, Session, SolverConfig, Sort, Term};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SolverConfig::default_solver();
    if !cfg.is_available() {
        println!("no solver `{}` on PATH, skipping", cfg.command);
        return Ok(());
    }
    let x = mk_var("x", Sort::Int)?;
    let mut s = Session::open(&cfg)?;
    s.assert_terms(&[ops::gt(&x, &Term::int(10))?])?;
    println!("x > 10: {}", s.check()?.status);

    s.push(1)?;
    s.assert_terms(&[ops::lt(&x, &Term::int(5))?])?;
    println!("and x < 5: {}", s.check()?.status);
    s.pop(1)?;

    let outcome = s.check()?;
    println!("after pop: {}", outcome.status);
    if let Some(m) = outcome.model {
        println!("x = {}", m.get("x").expect("x in model"));
    }
    println!("{:?}", s.pop(1).unwrap_err().to_string());
    Ok(())
}
