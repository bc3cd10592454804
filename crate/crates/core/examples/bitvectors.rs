// SPDX-License-Identifier: Apache-2.0

// Bitvector arithmetic: local folding next to the solver's answer.

use smtkit::{fold_const, mk_var, ops, ConstVal, OpKind, Session, SolverConfig, Sort, Term};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = ConstVal::bv(0xf0, 8);
    let b = ConstVal::bv(0x21, 8);
    for op in [
        OpKind::BvAdd,
        OpKind::BvMul,
        OpKind::BvUDiv,
        OpKind::BvURem,
        OpKind::BvUlt,
    ] {
        println!(
            "{op} {a} {b} = {}",
            fold_const(op, &[a.clone(), b.clone()])?
        );
    }
    let wide = fold_const(OpKind::Concat, &[a.clone(), b.clone()])?;
    println!("concat = {wide}");
    println!(
        "extract 11..4 = {}",
        fold_const(OpKind::Extract { hi: 11, lo: 4 }, &[wide])?
    );

    let cfg = SolverConfig::default_solver();
    if !cfg.is_available() {
        println!("no solver `{}` on PATH, skipping", cfg.command);
        return Ok(());
    }
    // solve x * 3 = 0x21 over 8 bits
    let x = mk_var("x", Sort::BitVec(8))?;
    let three = Term::bv(3, 8)?;
    let mut s = Session::open(&cfg)?;
    s.assert_terms(&[ops::eq(
        &ops::apply(OpKind::BvMul, &[&x, &three])?,
        &Term::bv(0x21, 8)?,
    )?])?;
    println!("{}", s.check()?.status);
    let v = s.get_values(&[x])?;
    println!("x = {}", v[0]);
    Ok(())
}
