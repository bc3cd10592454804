// SPDX-License-Identifier: Apache-2.0

// Truth tables and finite enumeration, no solver needed.

use smtkit::oracle::{brute_force_sat, enumerate_models, DomainSpec};
use smtkit::{mk_var, ops, Sort, Term};

pub fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = mk_var("p", Sort::Bool)?;
    let q = mk_var("q", Sort::Bool)?;
    let f = ops::and(&[ops::xor(&[p.clone(), q.clone()])?, ops::implies(&p, &q)?])?;
    let outcome = brute_force_sat(&[f])?;
    println!("{}", outcome.status);
    print!("{}", outcome.model.unwrap_or_default());

    let a = mk_var("a", Sort::Int)?;
    let b = mk_var("b", Sort::Int)?;
    let sum_is_4 = ops::eq(&ops::add(&a, &b)?, &Term::int(4))?;
    let a_lt_b = ops::lt(&a, &b)?;
    let domains = DomainSpec::int_range(["a", "b"], 0, 4);
    for m in enumerate_models(&[sum_is_4, a_lt_b], &domains)? {
        println!("a={} b={}", m.get("a").unwrap(), m.get("b").unwrap());
    }
    Ok(())
}
