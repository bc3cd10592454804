// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fmt;

use crate::sexpr::ReadError;
use crate::sort::Sort;
use crate::term::ConstVal;

/// A finite interpretation of an uninterpreted function: guarded point
/// cases tried in order, then a default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuncInterp {
    pub params: Vec<(String, Sort)>,
    pub cases: Vec<(Vec<ConstVal>, ConstVal)>,
    pub default: ConstVal,
}

impl FuncInterp {
    pub fn constant(params: Vec<(String, Sort)>, default: ConstVal) -> Self {
        FuncInterp {
            params,
            cases: Vec::new(),
            default,
        }
    }

    pub fn apply(&self, args: &[ConstVal]) -> &ConstVal {
        self.cases
            .iter()
            .find(|(point, _)| point.as_slice() == args)
            .map_or(&self.default, |(_, v)| v)
    }
}

/// A model entry that could not be decoded. Other entries are unaffected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelIssue {
    pub name: String,
    pub error: ReadError,
}

/// A satisfying assignment: constant values and function interpretations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Model {
    pub consts: BTreeMap<String, ConstVal>,
    pub funcs: BTreeMap<String, FuncInterp>,
    pub issues: Vec<ModelIssue>,
}

impl Model {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_consts<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, ConstVal)>,
        S: Into<String>,
    {
        Model {
            consts: entries.into_iter().map(|(k, v)| (k.into(), v)).collect(),
            ..Model::default()
        }
    }

    pub fn get(&self, name: &str) -> Option<&ConstVal> {
        self.consts.get(name)
    }

    pub fn func(&self, name: &str) -> Option<&FuncInterp> {
        self.funcs.get(name)
    }

    pub fn insert(&mut self, name: impl Into<String>, value: ConstVal) {
        self.consts.insert(name.into(), value);
    }

    pub fn is_empty(&self) -> bool {
        self.consts.is_empty() && self.funcs.is_empty()
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, v) in &self.consts {
            writeln!(f, "{name} = {v}")?;
        }
        for (name, interp) in &self.funcs {
            for (args, v) in &interp.cases {
                let args: Vec<String> = args.iter().map(ToString::to_string).collect();
                writeln!(f, "{name}({}) = {v}", args.join(", "))?;
            }
            writeln!(f, "{name}(_) = {}", interp.default)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_matching_case_wins() {
        let f = FuncInterp {
            params: vec![("a".into(), Sort::Int)],
            cases: vec![
                (vec![ConstVal::int(1)], ConstVal::Bool(true)),
                (vec![ConstVal::int(1)], ConstVal::Bool(false)),
            ],
            default: ConstVal::Bool(false),
        };
        assert_eq!(f.apply(&[ConstVal::int(1)]), &ConstVal::Bool(true));
        assert_eq!(f.apply(&[ConstVal::int(-1)]), &ConstVal::Bool(false));
    }
}
