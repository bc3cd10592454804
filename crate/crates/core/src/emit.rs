// SPDX-License-Identifier: Apache-2.0

//! SMT-LIB 2.6 concrete syntax for sorts, terms and commands.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::io;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::sort::Sort;
use crate::term::{ConstVal, Node, Term, UFuncDecl};

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("`{name}` declared as {first} and as {second}")]
    SortConflict {
        name: String,
        first: String,
        second: String,
    },
    #[error("asserted term has sort {0}, expected Bool")]
    NonBoolAssert(Sort),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Argument and result sorts of a declared symbol. Constants have no
/// arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    pub args: Vec<Sort>,
    pub result: Sort,
}

impl Signature {
    pub fn constant(sort: Sort) -> Self {
        Signature {
            args: Vec::new(),
            result: sort,
        }
    }
}

impl From<&UFuncDecl> for Signature {
    fn from(d: &UFuncDecl) -> Self {
        Signature {
            args: d.arg_sorts().to_vec(),
            result: d.result_sort(),
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('(')?;
        for (i, s) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_char(' ')?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ") {}", self.result)
    }
}

/// Declared symbols in declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Declarations {
    order: Vec<String>,
    sigs: HashMap<String, Signature>,
}

impl Declarations {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&Signature> {
        self.sigs.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.sigs.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Returns `Ok(true)` when `name` is new, `Ok(false)` when it is already
    /// declared with the same signature.
    pub fn insert(&mut self, name: &str, sig: Signature) -> Result<bool, EmitError> {
        match self.sigs.get(name) {
            Some(prev) if *prev == sig => Ok(false),
            Some(prev) => Err(EmitError::SortConflict {
                name: name.to_owned(),
                first: prev.to_string(),
                second: sig.to_string(),
            }),
            None => {
                self.order.push(name.to_owned());
                self.sigs.insert(name.to_owned(), sig);
                Ok(true)
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Signature)> {
        self.order.iter().map(|n| (n.as_str(), &self.sigs[n]))
    }

    pub fn to_commands(&self) -> Vec<Command> {
        self.iter()
            .map(|(name, sig)| Command::DeclareFun {
                name: name.to_owned(),
                args: sig.args.clone(),
                result: sig.result,
            })
            .collect()
    }

    /// Records every free variable and uninterpreted function of `t`,
    /// leftmost-innermost first.
    pub fn collect(&mut self, t: &Term) -> Result<(), EmitError> {
        match t.node() {
            Node::Var(name) => {
                self.insert(name, Signature::constant(t.sort()))?;
            }
            Node::Const(_) => {}
            Node::App(_, args) => {
                for a in args {
                    self.collect(a)?;
                }
            }
            Node::UApp(decl, args) => {
                for a in args {
                    self.collect(a)?;
                }
                self.insert(decl.name(), decl.into())?;
            }
        }
        Ok(())
    }
}

/// SMT-LIB commands this crate emits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    SetOption {
        key: String,
        value: String,
    },
    SetLogic(String),
    DeclareFun {
        name: String,
        args: Vec<Sort>,
        result: Sort,
    },
    Assert(Term),
    CheckSat,
    GetModel,
    GetValue(Vec<Term>),
    Push(u32),
    Pop(u32),
    Exit,
    /// Passed through verbatim.
    Raw(String),
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::SetOption { key, value } => write!(f, "(set-option :{key} {value})"),
            Command::SetLogic(l) => write!(f, "(set-logic {l})"),
            Command::DeclareFun { name, args, result } => {
                let sig = Signature {
                    args: args.clone(),
                    result: *result,
                };
                write!(f, "(declare-fun {name} {sig})")
            }
            Command::Assert(t) => write!(f, "(assert {t})"),
            Command::CheckSat => f.write_str("(check-sat)"),
            Command::GetModel => f.write_str("(get-model)"),
            Command::GetValue(ts) => {
                f.write_str("(get-value (")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_char(' ')?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str("))")
            }
            Command::Push(n) => write!(f, "(push {n})"),
            Command::Pop(n) => write!(f, "(pop {n})"),
            Command::Exit => f.write_str("(exit)"),
            Command::Raw(text) => f.write_str(text),
        }
    }
}

pub fn emit_sort(s: Sort) -> String {
    s.to_string()
}

pub fn emit_term(t: &Term) -> String {
    t.to_string()
}

fn is_power_of_ten(d: &BigInt) -> bool {
    let ten = BigInt::from(10);
    let mut d = d.clone();
    while !d.is_one() {
        if (&d % &ten).is_zero() {
            d /= &ten;
        } else {
            return false;
        }
    }
    true
}

/// Nonnegative decimal literal for `num / 10^k`.
fn write_decimal(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    let digits = r.denom().to_string().len() - 1;
    let s = r.numer().abs().to_string();
    if digits == 0 {
        return write!(f, "{s}.0");
    }
    let padded = format!("{s:0>width$}", width = digits + 1);
    let (int, frac) = padded.split_at(padded.len() - digits);
    write!(f, "{int}.{frac}")
}

fn write_real(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    let neg = r.is_negative();
    if neg {
        f.write_str("(- ")?;
    }
    if is_power_of_ten(r.denom()) {
        write_decimal(f, r)?;
    } else {
        write!(f, "(/ {}.0 {}.0)", r.numer().abs(), r.denom())?;
    }
    if neg {
        f.write_char(')')?;
    }
    Ok(())
}

/// Renders a constant as an SMT-LIB literal.
impl fmt::Display for ConstVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstVal::Bool(b) => write!(f, "{b}"),
            ConstVal::Int(i) if i.is_negative() => write!(f, "(- {})", i.abs()),
            ConstVal::Int(i) => write!(f, "{i}"),
            ConstVal::Real(r) => write_real(f, r),
            ConstVal::BitVec { value, width } if width % 4 == 0 => {
                write!(
                    f,
                    "#x{:0>w$}",
                    value.to_str_radix(16),
                    w = (*width / 4) as usize
                )
            }
            ConstVal::BitVec { value, width } => {
                write!(f, "#b{:0>w$}", value.to_str_radix(2), w = *width as usize)
            }
        }
    }
}

/// Renders the term in fully parenthesized prefix form.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Var(name) => f.write_str(name),
            Node::Const(c) => write!(f, "{c}"),
            Node::App(op, args) => {
                write!(f, "({op}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_char(')')
            }
            Node::UApp(decl, args) => {
                write!(f, "({}", decl.name())?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_char(')')
            }
        }
    }
}

/// One `DeclareFun` per distinct symbol across `ts`, in first-occurrence
/// order.
pub fn collect_decls(ts: &[Term]) -> Result<Vec<Command>, EmitError> {
    let mut decls = Declarations::new();
    for t in ts {
        decls.collect(t)?;
    }
    Ok(decls.to_commands())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmitOptions {
    /// Emit `(set-logic ...)` when set.
    pub logic: Option<String>,
    /// Emit `(set-option :produce-models true)`.
    pub models: bool,
}

impl Default for EmitOptions {
    fn default() -> Self {
        EmitOptions {
            logic: None,
            models: true,
        }
    }
}

impl EmitOptions {
    /// No option lines at all.
    pub fn bare() -> Self {
        EmitOptions {
            logic: None,
            models: false,
        }
    }
}

/// The command sequence behind [`script_for`].
pub fn script_commands(ts: &[Term], options: &EmitOptions) -> Result<Vec<Command>, EmitError> {
    if let Some(bad) = ts.iter().find(|t| !t.sort().is_bool()) {
        return Err(EmitError::NonBoolAssert(bad.sort()));
    }
    let mut cmds = Vec::new();
    // produce-models may only be set before set-logic
    if options.models {
        cmds.push(Command::SetOption {
            key: "produce-models".to_owned(),
            value: "true".to_owned(),
        });
    }
    if let Some(logic) = &options.logic {
        cmds.push(Command::SetLogic(logic.clone()));
    }
    cmds.extend(collect_decls(ts)?);
    cmds.extend(ts.iter().cloned().map(Command::Assert));
    Ok(cmds)
}

/// Declarations and one assertion per term, one command per line. No
/// `check-sat` is appended.
pub fn script_for(ts: &[Term], options: &EmitOptions) -> Result<String, EmitError> {
    let mut out = String::new();
    for c in script_commands(ts, options)? {
        let _ = writeln!(out, "{c}");
    }
    Ok(out)
}

/// Writes [`script_for`] followed by `(check-sat)`.
pub fn save_script<W: io::Write>(
    ts: &[Term],
    options: &EmitOptions,
    mut sink: W,
) -> Result<(), EmitError> {
    let mut text = script_for(ts, options)?;
    text.push_str("(check-sat)\n");
    sink.write_all(text.as_bytes())?;
    sink.flush()?;
    Ok(())
}
