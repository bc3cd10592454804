// SPDX-License-Identifier: Apache-2.0

// Reading solver replies without running a solver.

use smtkit::reader::{parse_check_sat, parse_model_text};
use smtkit::{declare_ufunc, mk_var, Declarations, Signature, Sort};

const REPLY: &str = r#"(
  (define-fun x () Int (- 3))
  (define-fun r () Real (/ 7.0 2.0))
  (define-fun b () (_ BitVec 8) #x2a)
  (define-fun f ((x!0 Int)) Bool (ite (= x!0 1) true false))
)"#;

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{}", parse_check_sat("sat")?);

    let mut decls = Declarations::new();
    for (name, sort) in [("x", Sort::Int), ("r", Sort::Real), ("b", Sort::BitVec(8))] {
        decls.collect(&mk_var(name, sort)?)?;
    }
    let f = declare_ufunc("f", &[Sort::Int], Sort::Bool)?;
    decls.insert(f.name(), Signature::from(&f))?;

    let model = parse_model_text(REPLY, &decls)?;
    print!("{model}");
    Ok(())
}
