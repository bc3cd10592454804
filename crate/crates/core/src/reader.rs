// SPDX-License-Identifier: Apache-2.0

//! Interpretation of solver replies (statuses, models, `get-value` results)
//! and of SMT-LIB scripts in the subset this crate emits.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Num, Zero};

use crate::emit::{Command, Declarations, Signature};
use crate::model::{FuncInterp, Model, ModelIssue};
use crate::sexpr::{parse_all, parse_one, symbol_name, unquote_string, ReadError, SExpr};
use crate::sort::Sort;
use crate::term::{declare_ufunc, mk_app, mk_const, mk_var, ConstVal, OpKind, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Sat,
    Unsat,
    Unknown,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Sat => "sat",
            CheckStatus::Unsat => "unsat",
            CheckStatus::Unknown => "unknown",
        }
    }
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The message of an `(error "...")` reply, if `e` is one.
pub fn error_message(e: &SExpr) -> Option<String> {
    match e.list()? {
        [head, msg] if head.is_atom("error") => {
            let text = msg.atom()?;
            Some(unquote_string(text).unwrap_or_else(|| text.to_owned()))
        }
        _ => None,
    }
}

/// Interprets a `check-sat` reply. An `(error "m")` reply becomes
/// [`ReadError::SolverError`].
pub fn parse_check_sat(text: &str) -> Result<CheckStatus, ReadError> {
    let unrecognized = || ReadError::UnrecognizedResponse(text.trim().to_owned());
    let e = parse_one(text).map_err(|_| unrecognized())?;
    match e.atom() {
        Some("sat") => Ok(CheckStatus::Sat),
        Some("unsat") => Ok(CheckStatus::Unsat),
        Some("unknown") => Ok(CheckStatus::Unknown),
        _ => Err(error_message(&e).map_or_else(unrecognized, ReadError::SolverError)),
    }
}

/// Checks a `success` acknowledgement.
pub fn parse_success(text: &str) -> Result<(), ReadError> {
    let e = parse_one(text).map_err(|_| ReadError::UnrecognizedResponse(text.trim().to_owned()))?;
    if e.is_atom("success") {
        return Ok(());
    }
    Err(error_message(&e).map_or_else(
        || ReadError::UnrecognizedResponse(text.trim().to_owned()),
        ReadError::SolverError,
    ))
}

pub fn parse_sort(e: &SExpr) -> Result<Sort, ReadError> {
    let bad = || ReadError::UnsupportedValueForm(format!("sort {e}"));
    match e {
        SExpr::Atom(a) => match a.as_str() {
            "Bool" => Ok(Sort::Bool),
            "Int" => Ok(Sort::Int),
            "Real" => Ok(Sort::Real),
            _ => Err(bad()),
        },
        SExpr::List(items) => match items.as_slice() {
            [u, bv, w] if u.is_atom("_") && bv.is_atom("BitVec") => w
                .atom()
                .and_then(|w| w.parse::<u32>().ok())
                .and_then(Sort::bitvec)
                .ok_or_else(bad),
            _ => Err(bad()),
        },
    }
}

fn is_numeral(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (int, frac) = s.split_once('.')?;
    if !is_numeral(int) || !is_numeral(frac) {
        return None;
    }
    let num = BigInt::from_str_radix(&format!("{int}{frac}"), 10).ok()?;
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    Some(BigRational::new(num, den))
}

/// Exact value of a real literal: numerals, decimals, `(- r)` and `(/ r r)`.
fn real_literal(e: &SExpr) -> Option<BigRational> {
    match e {
        SExpr::Atom(a) if is_numeral(a) => BigInt::from_str_radix(a, 10)
            .ok()
            .map(BigRational::from_integer),
        SExpr::Atom(a) => parse_decimal(a),
        SExpr::List(items) => match items.as_slice() {
            [minus, x] if minus.is_atom("-") => real_literal(x).map(|r| -r),
            [slash, p, q] if slash.is_atom("/") => {
                let q = real_literal(q)?;
                (!q.is_zero()).then(|| real_literal(p).map(|p| p / q))?
            }
            _ => None,
        },
    }
}

fn int_literal(e: &SExpr) -> Option<BigInt> {
    match e {
        SExpr::Atom(a) if is_numeral(a) => BigInt::from_str_radix(a, 10).ok(),
        SExpr::List(items) => match items.as_slice() {
            [minus, x] if minus.is_atom("-") => int_literal(x).map(|i| -i),
            _ => None,
        },
        _ => None,
    }
}

/// `#x..`, `#b..` or `(_ bvN w)`.
fn bv_literal(e: &SExpr) -> Option<ConstVal> {
    match e {
        SExpr::Atom(a) => {
            let (digits, radix, bits) = if let Some(h) = a.strip_prefix("#x") {
                (h, 16, 4)
            } else {
                (a.strip_prefix("#b")?, 2, 1)
            };
            if digits.is_empty() {
                return None;
            }
            let value = BigUint::from_str_radix(digits, radix).ok()?;
            let width = u32::try_from(digits.len()).ok()? * bits;
            Some(ConstVal::BitVec { value, width })
        }
        SExpr::List(items) => match items.as_slice() {
            [u, v, w] if u.is_atom("_") => {
                let digits = v.atom()?.strip_prefix("bv")?;
                if !is_numeral(digits) {
                    return None;
                }
                let value = BigUint::from_str_radix(digits, 10).ok()?;
                let width = w.atom()?.parse::<u32>().ok()?;
                let c = ConstVal::BitVec { value, width };
                c.validate().ok().map(|_| c)
            }
            _ => None,
        },
    }
}

/// Reads a value of the given sort.
pub fn parse_value(e: &SExpr, sort: Sort) -> Result<ConstVal, ReadError> {
    let bad = || ReadError::UnsupportedValueForm(format!("{e} as {sort}"));
    match sort {
        Sort::Bool => match e.atom() {
            Some("true") => Ok(ConstVal::Bool(true)),
            Some("false") => Ok(ConstVal::Bool(false)),
            _ => Err(bad()),
        },
        Sort::Int => int_literal(e).map(ConstVal::Int).ok_or_else(bad),
        Sort::Real => real_literal(e).map(ConstVal::Real).ok_or_else(bad),
        Sort::BitVec(w) => match bv_literal(e) {
            Some(c @ ConstVal::BitVec { width, .. }) if width == w => Ok(c),
            _ => Err(bad()),
        },
    }
}

/// Reads a `get-value` reply, `((t1 v1) (t2 v2) ...)`, given the sorts of
/// the requested terms in order.
pub fn parse_values(e: &SExpr, sorts: &[Sort]) -> Result<Vec<ConstVal>, ReadError> {
    if let Some(msg) = error_message(e) {
        return Err(ReadError::SolverError(msg));
    }
    let pairs = e
        .list()
        .ok_or_else(|| ReadError::UnrecognizedResponse(e.to_string()))?;
    if pairs.len() != sorts.len() {
        return Err(ReadError::UnrecognizedResponse(format!(
            "expected {} values, got {}",
            sorts.len(),
            pairs.len()
        )));
    }
    pairs
        .iter()
        .zip(sorts)
        .map(|(pair, sort)| match pair.list() {
            Some([_, v]) => parse_value(v, *sort),
            _ => Err(ReadError::UnrecognizedResponse(pair.to_string())),
        })
        .collect()
}

/// Matches a guard of the form `(= p c)`, `(= c p)` or a conjunction of
/// those, filling in one value per parameter.
fn decode_guard(
    guard: &SExpr,
    params: &[(String, Sort)],
    point: &mut [Option<ConstVal>],
) -> Result<(), ReadError> {
    let bad = || ReadError::UnsupportedValueForm(format!("guard {guard}"));
    let items = guard.list().ok_or_else(bad)?;
    match items {
        [head, rest @ ..] if head.is_atom("and") => {
            rest.iter().try_for_each(|g| decode_guard(g, params, point))
        }
        [head, a, b] if head.is_atom("=") => {
            let find = |e: &SExpr| {
                e.atom()
                    .and_then(|s| params.iter().position(|(p, _)| p == symbol_name(s)))
            };
            let (idx, value) = match (find(a), find(b)) {
                (Some(i), None) => (i, b),
                (None, Some(i)) => (i, a),
                _ => return Err(bad()),
            };
            let v = parse_value(value, params[idx].1)?;
            match &point[idx] {
                Some(prev) if *prev != v => Err(bad()),
                _ => {
                    point[idx] = Some(v);
                    Ok(())
                }
            }
        }
        _ => Err(bad()),
    }
}

fn decode_interp(
    params: Vec<(String, Sort)>,
    result: Sort,
    mut body: &SExpr,
) -> Result<FuncInterp, ReadError> {
    let mut cases = Vec::new();
    loop {
        match body.list() {
            Some([head, guard, then, rest]) if head.is_atom("ite") => {
                let mut point = vec![None; params.len()];
                decode_guard(guard, &params, &mut point)?;
                let point = point
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| {
                        ReadError::UnsupportedValueForm(format!("partial guard {guard}"))
                    })?;
                cases.push((point, parse_value(then, result)?));
                body = rest;
            }
            _ => {
                let default = parse_value(body, result)?;
                return Ok(FuncInterp {
                    params,
                    cases,
                    default,
                });
            }
        }
    }
}

enum Entry {
    Const(ConstVal),
    Func(FuncInterp),
}

fn decode_define_fun(items: &[SExpr]) -> Result<(String, Entry), ReadError> {
    let malformed = || ReadError::MalformedModel(SExpr::List(items.to_vec()).to_string());
    let [_, name, params, sort, body] = items else {
        return Err(malformed());
    };
    let name = symbol_name(name.atom().ok_or_else(malformed)?).to_owned();
    let sort = parse_sort(sort)?;
    let params = params
        .list()
        .ok_or_else(malformed)?
        .iter()
        .map(|p| match p.list() {
            Some([n, s]) => Ok((
                symbol_name(n.atom().ok_or_else(malformed)?).to_owned(),
                parse_sort(s)?,
            )),
            _ => Err(malformed()),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let entry = if params.is_empty() {
        Entry::Const(parse_value(body, sort)?)
    } else {
        Entry::Func(decode_interp(params, sort, body)?)
    };
    Ok((name, entry))
}

/// Reads a `get-model` reply.
///
/// Solver-internal symbols (containing `!`) that are not in `decls` are
/// skipped. An entry that cannot be decoded is recorded in
/// [`Model::issues`] without affecting the others.
pub fn parse_model(e: &SExpr, decls: &Declarations) -> Result<Model, ReadError> {
    if let Some(msg) = error_message(e) {
        return Err(ReadError::SolverError(msg));
    }
    let mut entries = e
        .list()
        .ok_or_else(|| ReadError::MalformedModel(e.to_string()))?;
    if entries.first().is_some_and(|h| h.is_atom("model")) {
        entries = &entries[1..];
    }
    let mut model = Model::new();
    for entry in entries {
        let items = match entry.list() {
            Some(items) if entry.head() == Some("define-fun") => items,
            _ => {
                model.issues.push(ModelIssue {
                    name: entry.head().unwrap_or_default().to_owned(),
                    error: ReadError::MalformedModel(entry.to_string()),
                });
                continue;
            }
        };
        let raw_name = items.get(1).and_then(SExpr::atom).map(symbol_name);
        if let Some(n) = raw_name {
            if n.contains('!') && !decls.contains(n) {
                continue;
            }
        }
        match decode_define_fun(items) {
            Ok((name, Entry::Const(v))) => {
                model.consts.insert(name, v);
            }
            Ok((name, Entry::Func(f))) => {
                model.funcs.insert(name, f);
            }
            Err(error) => model.issues.push(ModelIssue {
                name: raw_name.unwrap_or_default().to_owned(),
                error,
            }),
        }
    }
    Ok(model)
}

pub fn parse_model_text(text: &str, decls: &Declarations) -> Result<Model, ReadError> {
    parse_model(&parse_one(text)?, decls)
}

fn index_arg(e: &SExpr) -> Result<u32, ReadError> {
    e.atom()
        .and_then(|a| a.parse().ok())
        .ok_or_else(|| ReadError::BadTerm(format!("bad index {e}")))
}

fn indexed_op(items: &[SExpr]) -> Result<OpKind, ReadError> {
    let bad = || ReadError::BadTerm(SExpr::List(items.to_vec()).to_string());
    match items {
        [u, name, hi, lo] if u.is_atom("_") && name.is_atom("extract") => Ok(OpKind::Extract {
            hi: index_arg(hi)?,
            lo: index_arg(lo)?,
        }),
        [u, name, k] if u.is_atom("_") && name.is_atom("zero_extend") => {
            Ok(OpKind::ZeroExtend(index_arg(k)?))
        }
        [u, name, k] if u.is_atom("_") && name.is_atom("sign_extend") => {
            Ok(OpKind::SignExtend(index_arg(k)?))
        }
        _ => Err(bad()),
    }
}

fn op_by_name(name: &str, arity: usize) -> Option<OpKind> {
    use OpKind::*;
    Some(match name {
        "not" => Not,
        "and" => And,
        "or" => Or,
        "xor" => Xor,
        "=>" => Implies,
        "=" => Eq,
        "ite" => Ite,
        "distinct" => Distinct,
        "-" if arity == 1 => Neg,
        "-" => Sub,
        "+" => Add,
        "*" => Mul,
        "div" => IDiv,
        "mod" => Mod,
        "abs" => Abs,
        "/" => RDiv,
        "<" => Lt,
        "<=" => Le,
        ">" => Gt,
        ">=" => Ge,
        "to_real" => ToReal,
        "to_int" => ToInt,
        "concat" => Concat,
        "bvnot" => BvNot,
        "bvand" => BvAnd,
        "bvor" => BvOr,
        "bvxor" => BvXor,
        "bvneg" => BvNeg,
        "bvadd" => BvAdd,
        "bvsub" => BvSub,
        "bvmul" => BvMul,
        "bvudiv" => BvUDiv,
        "bvurem" => BvURem,
        "bvshl" => BvShl,
        "bvlshr" => BvLShr,
        "bvashr" => BvAShr,
        "bvult" => BvUlt,
        "bvule" => BvUle,
        "bvugt" => BvUgt,
        "bvuge" => BvUge,
        "bvslt" => BvSlt,
        "bvsle" => BvSle,
        "bvsgt" => BvSgt,
        "bvsge" => BvSge,
        _ => return None,
    })
}

/// Parses a term of the supported theories, resolving symbols against
/// `decls`. Constant subterms are folded exactly as [`mk_app`] does.
pub fn parse_term(e: &SExpr, decls: &Declarations) -> Result<Term, ReadError> {
    let term_err = |err: crate::term::TermError| ReadError::BadTerm(err.to_string());
    match e {
        SExpr::Atom(a) => {
            if let Some(b) = match a.as_str() {
                "true" => Some(true),
                "false" => Some(false),
                _ => None,
            } {
                return Ok(Term::bool(b));
            }
            if is_numeral(a) {
                return mk_const(ConstVal::Int(int_literal(e).expect("numeral"))).map_err(term_err);
            }
            if let Some(r) = parse_decimal(a) {
                return mk_const(ConstVal::Real(r)).map_err(term_err);
            }
            if let Some(c) = bv_literal(e) {
                return mk_const(c).map_err(term_err);
            }
            let name = symbol_name(a);
            match decls.get(name) {
                Some(sig) if sig.args.is_empty() => mk_var(name, sig.result).map_err(term_err),
                Some(_) => Err(ReadError::BadTerm(format!(
                    "function `{name}` used as a constant"
                ))),
                None => Err(ReadError::UnknownSymbol(name.to_owned())),
            }
        }
        SExpr::List(items) => {
            let (head, args) = items
                .split_first()
                .ok_or_else(|| ReadError::BadTerm("()".to_owned()))?;
            if head.is_atom("_") {
                return bv_literal(e)
                    .ok_or_else(|| ReadError::BadTerm(e.to_string()))
                    .and_then(|c| mk_const(c).map_err(term_err));
            }
            let args = args
                .iter()
                .map(|a| parse_term(a, decls))
                .collect::<Result<Vec<_>, _>>()?;
            match head {
                SExpr::List(index) => mk_app(indexed_op(index)?, &args).map_err(term_err),
                SExpr::Atom(h) => {
                    if let Some(op) = op_by_name(h, args.len()) {
                        return mk_app(op, &args).map_err(term_err);
                    }
                    let name = symbol_name(h);
                    let sig = decls
                        .get(name)
                        .ok_or_else(|| ReadError::UnknownSymbol(name.to_owned()))?;
                    let decl = declare_ufunc(name, &sig.args, sig.result).map_err(term_err)?;
                    decl.apply(&args).map_err(term_err)
                }
            }
        }
    }
}

fn count_arg(e: Option<&SExpr>) -> Result<u32, ReadError> {
    match e {
        None => Ok(1),
        Some(e) => index_arg(e),
    }
}

/// Parses one command. Declarations are recorded in `decls` so later terms
/// can refer to them. Commands outside the emitted subset become
/// [`Command::Raw`].
pub fn parse_command(e: &SExpr, decls: &mut Declarations) -> Result<Command, ReadError> {
    let bad = || ReadError::BadTerm(format!("malformed command {e}"));
    let items = e.list().ok_or_else(bad)?;
    let emit_err = |err: crate::emit::EmitError| ReadError::BadTerm(err.to_string());
    Ok(match (e.head().ok_or_else(bad)?, &items[1..]) {
        ("set-option", [k, v]) => Command::SetOption {
            key: k
                .atom()
                .and_then(|k| k.strip_prefix(':'))
                .ok_or_else(bad)?
                .to_owned(),
            value: v.to_string(),
        },
        ("set-logic", [l]) => Command::SetLogic(l.atom().ok_or_else(bad)?.to_owned()),
        ("declare-fun", [name, args, result]) => {
            let name = symbol_name(name.atom().ok_or_else(bad)?).to_owned();
            let args = args
                .list()
                .ok_or_else(bad)?
                .iter()
                .map(parse_sort)
                .collect::<Result<Vec<_>, _>>()?;
            let result = parse_sort(result)?;
            decls
                .insert(
                    &name,
                    Signature {
                        args: args.clone(),
                        result,
                    },
                )
                .map_err(emit_err)?;
            Command::DeclareFun { name, args, result }
        }
        ("declare-const", [name, sort]) => {
            let name = symbol_name(name.atom().ok_or_else(bad)?).to_owned();
            let result = parse_sort(sort)?;
            decls
                .insert(&name, Signature::constant(result))
                .map_err(emit_err)?;
            Command::DeclareFun {
                name,
                args: Vec::new(),
                result,
            }
        }
        ("assert", [t]) => Command::Assert(parse_term(t, decls)?),
        ("check-sat", []) => Command::CheckSat,
        ("get-model", []) => Command::GetModel,
        ("get-value", [ts]) => Command::GetValue(
            ts.list()
                .ok_or_else(bad)?
                .iter()
                .map(|t| parse_term(t, decls))
                .collect::<Result<_, _>>()?,
        ),
        ("push", n) if n.len() <= 1 => Command::Push(count_arg(n.first())?),
        ("pop", n) if n.len() <= 1 => Command::Pop(count_arg(n.first())?),
        ("exit", []) => Command::Exit,
        _ => Command::Raw(e.to_string()),
    })
}

/// Parses a whole script into commands.
pub fn parse_script(text: &str) -> Result<Vec<Command>, ReadError> {
    let mut decls = Declarations::new();
    parse_all(text)?
        .iter()
        .map(|e| parse_command(e, &mut decls))
        .collect()
}
