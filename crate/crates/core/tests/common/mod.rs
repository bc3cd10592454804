// SPDX-License-Identifier: Apache-2.0

// Seeded random term generators and truth-table helpers shared by the
// integration tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use smtkit::oracle::evaluate;
use smtkit::{
    mk_app, mk_app_unfolded, mk_var, ConstVal, Declarations, Model, OpKind, SolverConfig, Sort,
    Term,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Z3 when installed, `None` otherwise.
pub fn z3() -> Option<SolverConfig> {
    let cfg = SolverConfig::z3();
    cfg.is_available().then_some(cfg)
}

pub fn bool_vars(n: usize) -> Vec<Term> {
    (0..n)
        .map(|i| mk_var(&format!("v{i}"), Sort::Bool).unwrap())
        .collect()
}

/// A random propositional formula over `vars` of depth at most `depth`.
///
/// Built without construction-time folding so that nested and/or chains,
/// double negations and constant operands survive for the simplifier.
pub fn random_formula(rng: &mut impl Rng, vars: &[Term], depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.1) {
            Term::bool(rng.gen())
        } else {
            vars.choose(rng).unwrap().clone()
        };
    }
    let sub = |rng: &mut _| random_formula(rng, vars, depth - 1);
    let (op, n) = match rng.gen_range(0..9) {
        0 => (OpKind::Not, 1),
        1 => (OpKind::And, rng.gen_range(2..=3)),
        2 => (OpKind::Or, rng.gen_range(2..=3)),
        3 => (OpKind::Xor, 2),
        4 => (OpKind::Implies, 2),
        5 => (OpKind::Iff, 2),
        6 => (OpKind::Ite, 3),
        7 => (OpKind::Distinct, 2),
        _ => (OpKind::Not, 1),
    };
    let args: Vec<Term> = (0..n).map(|_| sub(rng)).collect();
    mk_app_unfolded(op, &args).unwrap()
}

/// Free constant names of `ts` in first-occurrence order.
pub fn free_names(ts: &[Term]) -> Vec<(String, Sort)> {
    let mut decls = Declarations::new();
    for t in ts {
        decls.collect(t).unwrap();
    }
    decls
        .iter()
        .map(|(n, sig)| (n.to_owned(), sig.result))
        .collect()
}

/// Every Boolean assignment to `names`, first name most significant.
pub fn assignments(names: &[String]) -> impl Iterator<Item = Model> + '_ {
    let n = names.len();
    (0u64..1 << n).map(move |bits| {
        Model::with_consts(
            names
                .iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), ConstVal::Bool(bits >> (n - 1 - i) & 1 == 1))),
        )
    })
}

pub fn truth_table(t: &Term, names: &[String]) -> Vec<bool> {
    assignments(names)
        .map(|m| evaluate(t, &m).unwrap().as_bool().unwrap())
        .collect()
}

const WIDTH: u32 = 8;

/// A random well-sorted term of `sort` mixing Int, Real, Bool and 8-bit
/// vectors of width 4 and 8. Built with [`mk_app`], so constant subterms are folded.
pub fn random_typed(rng: &mut impl Rng, sort: Sort, depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng, sort);
    }
    let d = depth - 1;
    let int = Sort::Int;
    let real = Sort::Real;
    let bv = Sort::BitVec(WIDTH);
    let (op, arg_sorts): (OpKind, Vec<Sort>) = match sort {
        Sort::Bool => match rng.gen_range(0..8) {
            0 => (OpKind::Not, vec![Sort::Bool]),
            1 => (OpKind::And, vec![Sort::Bool; 2]),
            2 => (OpKind::Or, vec![Sort::Bool; 3]),
            3 => (OpKind::Ite, vec![Sort::Bool; 3]),
            4 => (OpKind::Lt, vec![int, real]),
            5 => (OpKind::Ge, vec![real, real]),
            6 => (OpKind::Eq, vec![bv, bv]),
            _ => (OpKind::BvSlt, vec![bv, bv]),
        },
        Sort::Int => match rng.gen_range(0..6) {
            0 => (OpKind::Add, vec![int; 3]),
            1 => (OpKind::Sub, vec![int; 2]),
            2 => (OpKind::Mul, vec![int; 2]),
            3 => (OpKind::IDiv, vec![int; 2]),
            4 => (OpKind::Mod, vec![int; 2]),
            _ => (OpKind::Neg, vec![int]),
        },
        Sort::Real => match rng.gen_range(0..5) {
            0 => (OpKind::Add, vec![real, int]),
            1 => (OpKind::Mul, vec![real; 2]),
            2 => (OpKind::RDiv, vec![real, real]),
            3 => (OpKind::ToReal, vec![int]),
            _ => (OpKind::Neg, vec![real]),
        },
        Sort::BitVec(w) => match rng.gen_range(0..6) {
            0 => (OpKind::BvAdd, vec![sort; 2]),
            1 => (OpKind::BvMul, vec![sort; 2]),
            2 => (OpKind::BvXor, vec![sort; 2]),
            3 => (OpKind::BvNot, vec![sort]),
            4 => (OpKind::BvUDiv, vec![sort; 2]),
            _ => {
                let lo = rng.gen_range(0..=4);
                let a = random_typed(rng, Sort::BitVec(4), d);
                let b = random_typed(rng, sort, d);
                let wide = mk_app(OpKind::Concat, &[a, b]).unwrap();
                return mk_app(OpKind::Extract { hi: lo + w - 1, lo }, &[wide]).unwrap();
            }
        },
    };
    let args: Vec<Term> = arg_sorts
        .into_iter()
        .map(|s| random_typed(rng, s, d))
        .collect();
    mk_app(op, &args).unwrap()
}

fn leaf(rng: &mut impl Rng, sort: Sort) -> Term {
    let names = ["a", "b", "c"];
    if rng.gen_bool(0.5) {
        let base = names.choose(rng).unwrap();
        let prefix = match sort {
            Sort::Bool => "p",
            Sort::Int => "i",
            Sort::Real => "r",
            Sort::BitVec(w) => return mk_var(&format!("w{w}{base}"), sort).unwrap(),
        };
        return mk_var(&format!("{prefix}{base}"), sort).unwrap();
    }
    match sort {
        Sort::Bool => Term::bool(rng.gen()),
        Sort::Int => Term::int(rng.gen_range(-20..=20)),
        Sort::Real => Term::real(rng.gen_range(-20..=20), rng.gen_range(1..=6)),
        Sort::BitVec(w) => Term::bv(rng.gen_range(0..1u64 << w), w).unwrap(),
    }
}
