// SPDX-License-Identifier: Apache-2.0

// Constant folding at construction time and the rewrite pass.

use smtkit::{mk_app_unfolded, mk_var, ops, simplify, OpKind, Sort, Term};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Int and Real operands mix; the result is an exact rational
    let folded = ops::add(&Term::int(1), &Term::real(5, 2))?;
    println!("1 + 5/2 = {folded} : {}", folded.sort());

    let x = mk_var("x", Sort::Bool)?;
    let y = mk_var("y", Sort::Bool)?;
    let z = mk_var("z", Sort::Bool)?;
    let inner = mk_app_unfolded(OpKind::And, &[y.clone(), Term::bool(true), z])?;
    let t = mk_app_unfolded(
        OpKind::And,
        &[ops::not(&ops::not(&x)?)?, inner, Term::bool(true)],
    )?;
    println!("{t}\n  => {}", simplify(&t));

    let absorbed = mk_app_unfolded(OpKind::Or, &[x, Term::bool(true), y])?;
    println!("{absorbed}\n  => {}", simplify(&absorbed));

    let q = mk_app_unfolded(OpKind::IDiv, &[Term::int(7), Term::int(0)])?;
    println!(
        "{q}\n  => {} (division by zero stays symbolic)",
        simplify(&q)
    );
    Ok(())
}
