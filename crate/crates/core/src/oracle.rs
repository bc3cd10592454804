// SPDX-License-Identifier: Apache-2.0

//! Ground evaluation and exhaustive search, used as the test oracle for the
//! solver-facing code.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::emit::Declarations;
use crate::model::Model;
use crate::reader::CheckStatus;
use crate::simplify::{fold_const, FoldError};
use crate::solver::CheckOutcome;
use crate::sort::Sort;
use crate::term::{ConstVal, Node, OpKind, Term};

pub const MAX_BRUTE_FORCE_VARS: usize = 20;
pub const MAX_SEARCH_SPACE: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("no value for `{0}`")]
    UnboundName(String),
    #[error("evaluation divides by zero in `{0}`")]
    EvalDomainError(OpKind),
    #[error("{0} is outside propositional logic")]
    UnsupportedTheory(String),
    #[error("{0} variables exceed the brute-force limit of {MAX_BRUTE_FORCE_VARS}")]
    TooManyVariables(usize),
    #[error("search space of {0} assignments exceeds {MAX_SEARCH_SPACE}")]
    SearchSpaceTooLarge(u128),
    #[error("bad domain for `{name}`: {reason}")]
    BadDomain { name: String, reason: String },
    #[error("ill-sorted value in `{0}`")]
    IllSorted(String),
}

/// Evaluates a ground term under `m`, with the semantics of
/// [`fold_const`]. Only the selected branch of an `ite` is evaluated.
pub fn evaluate(t: &Term, m: &Model) -> Result<ConstVal, OracleError> {
    match t.node() {
        Node::Const(c) => Ok(c.clone()),
        Node::Var(name) => m
            .get(name)
            .cloned()
            .ok_or_else(|| OracleError::UnboundName(name.clone())),
        Node::App(OpKind::Ite, args) => {
            let cond = evaluate(&args[0], m)?
                .as_bool()
                .ok_or_else(|| OracleError::IllSorted("ite".to_owned()))?;
            evaluate(&args[if cond { 1 } else { 2 }], m)
        }
        Node::App(op, args) => {
            let vals = args
                .iter()
                .map(|a| evaluate(a, m))
                .collect::<Result<Vec<_>, _>>()?;
            fold_const(*op, &vals).map_err(|e| match e {
                FoldError::Domain(op) => OracleError::EvalDomainError(op),
                FoldError::IllSorted(op) => OracleError::IllSorted(op.to_string()),
            })
        }
        Node::UApp(decl, args) => {
            let vals = args
                .iter()
                .map(|a| evaluate(a, m))
                .collect::<Result<Vec<_>, _>>()?;
            let interp = m
                .func(decl.name())
                .ok_or_else(|| OracleError::UnboundName(decl.name().to_owned()))?;
            Ok(interp.apply(&vals).clone())
        }
    }
}

/// Evaluates a Bool term.
pub fn holds(t: &Term, m: &Model) -> Result<bool, OracleError> {
    evaluate(t, m)?
        .as_bool()
        .ok_or_else(|| OracleError::IllSorted(t.to_string()))
}

fn check_propositional(t: &Term) -> Result<(), OracleError> {
    use OpKind::*;
    if t.sort() != Sort::Bool {
        return Err(OracleError::UnsupportedTheory(format!(
            "{} term {t}",
            t.sort()
        )));
    }
    match t.node() {
        Node::Var(_) | Node::Const(_) => Ok(()),
        Node::App(Not | And | Or | Xor | Implies | Iff | Ite | Eq | Distinct, args) => {
            args.iter().try_for_each(check_propositional)
        }
        _ => Err(OracleError::UnsupportedTheory(t.to_string())),
    }
}

fn free_vars(ts: &[Term]) -> Result<BTreeMap<String, Sort>, OracleError> {
    let mut decls = Declarations::new();
    for t in ts {
        decls
            .collect(t)
            .map_err(|e| OracleError::IllSorted(e.to_string()))?;
    }
    let mut vars = BTreeMap::new();
    for (name, sig) in decls.iter() {
        if !sig.args.is_empty() {
            return Err(OracleError::UnsupportedTheory(format!(
                "uninterpreted function `{name}`"
            )));
        }
        vars.insert(name.to_owned(), sig.result);
    }
    Ok(vars)
}

/// Exhaustive truth-table search over the Bool variables of `ts`.
///
/// Variables are ordered by name and assignments enumerated
/// lexicographically with `false` before `true`; the first satisfying
/// assignment is returned.
pub fn brute_force_sat(ts: &[Term]) -> Result<CheckOutcome, OracleError> {
    ts.iter().try_for_each(check_propositional)?;
    let vars: Vec<String> = free_vars(ts)?.into_keys().collect();
    if vars.len() > MAX_BRUTE_FORCE_VARS {
        return Err(OracleError::TooManyVariables(vars.len()));
    }
    let n = vars.len();
    for bits in 0u64..(1u64 << n) {
        // first variable is the most significant position
        let model = Model::with_consts(
            vars.iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), ConstVal::Bool(bits >> (n - 1 - i) & 1 == 1))),
        );
        if all_hold(ts, &model)? {
            return Ok(CheckOutcome::sat(model));
        }
    }
    Ok(CheckOutcome::status(CheckStatus::Unsat))
}

fn all_hold(ts: &[Term], m: &Model) -> Result<bool, OracleError> {
    for t in ts {
        if !holds(t, m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finite candidate values per variable, in enumeration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DomainSpec {
    entries: Vec<(String, Vec<ConstVal>)>,
}

impl DomainSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: impl Into<String>, values: Vec<ConstVal>) -> Self {
        self.insert(name, values);
        self
    }

    /// Adds or replaces the domain of `name`.
    pub fn insert(&mut self, name: impl Into<String>, values: Vec<ConstVal>) {
        let name = name.into();
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(entry) => entry.1 = values,
            None => self.entries.push((name, values)),
        }
    }

    /// The integers `lo..=hi` for each name.
    pub fn int_range<'a>(names: impl IntoIterator<Item = &'a str>, lo: i64, hi: i64) -> Self {
        let values: Vec<ConstVal> = (lo..=hi).map(ConstVal::int).collect();
        let mut spec = DomainSpec::new();
        for n in names {
            spec.insert(n, values.clone());
        }
        spec
    }

    pub fn get(&self, name: &str) -> Option<&[ConstVal]> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[ConstVal])> {
        self.entries.iter().map(|(n, v)| (n.as_str(), v.as_slice()))
    }
}

/// Every assignment over `domains` under which all of `ts` hold, in
/// lexicographic order over the domain order.
pub fn enumerate_models(ts: &[Term], domains: &DomainSpec) -> Result<Vec<Model>, OracleError> {
    let vars = free_vars(ts)?;
    if let Some(missing) = vars.keys().find(|v| domains.get(v).is_none()) {
        return Err(OracleError::UnboundName(missing.clone()));
    }
    let mut size: u128 = 1;
    for (name, values) in domains.iter() {
        if values.is_empty() {
            return Err(OracleError::BadDomain {
                name: name.to_owned(),
                reason: "empty".to_owned(),
            });
        }
        if let Some(sort) = vars.get(name) {
            if let Some(v) = values.iter().find(|v| v.sort() != *sort) {
                return Err(OracleError::BadDomain {
                    name: name.to_owned(),
                    reason: format!("value {v} is not of sort {sort}"),
                });
            }
        }
        size = size.saturating_mul(values.len() as u128);
        if size > MAX_SEARCH_SPACE {
            return Err(OracleError::SearchSpaceTooLarge(size));
        }
    }

    let entries: Vec<(&str, &[ConstVal])> = domains.iter().collect();
    let mut index = vec![0usize; entries.len()];
    let mut found = Vec::new();
    loop {
        let model = Model::with_consts(
            entries
                .iter()
                .zip(&index)
                .map(|((n, vals), &i)| (*n, vals[i].clone())),
        );
        if all_hold(ts, &model)? {
            found.push(model);
        }
        // odometer increment, last entry fastest
        let mut pos = entries.len();
        loop {
            if pos == 0 {
                return Ok(found);
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < entries[pos].1.len() {
                break;
            }
            index[pos] = 0;
        }
    }
}
