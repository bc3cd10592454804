// SPDX-License-Identifier: Apache-2.0

//! Immutable, sort-checked SMT terms.
//!
//! Every constructor in this module validates its input against the operator
//! signature table, so an ill-sorted [`Term`] cannot be built. Terms are
//! reference counted and cheap to clone; subterms may be shared freely
//! between formulae and threads.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use thiserror::Error;

use crate::simplify::fold_const;
use crate::sort::Sort;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("`{0}` is not a valid symbol")]
    InvalidSymbol(String),
    #[error("`{0}` is a reserved SMT-LIB word")]
    ReservedSymbol(String),
    #[error("array variables need at least one dimension")]
    EmptyDims,
    #[error("unsupported array shape {0:?}: expected rank 1 or 2 with every extent >= 1")]
    InvalidDims(Vec<usize>),
    #[error("bitvector sorts must have width >= 1")]
    ZeroWidth,
    #[error("value {value} does not fit in {width} bits")]
    BitWidthOverflow { value: BigUint, width: u32 },
    #[error("sort mismatch in `{op}`: {detail}")]
    SortMismatch { op: String, detail: String },
    #[error("`{op}` expects {expected} argument(s), got {found}")]
    ArityError {
        op: String,
        expected: String,
        found: usize,
    },
    #[error("extract [{hi}:{lo}] out of range for width {width}")]
    ExtractOutOfRange { hi: u32, lo: u32, width: u32 },
}

pub type Result<T, E = TermError> = std::result::Result<T, E>;

/// A constant value of one of the supported sorts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstVal {
    Bool(bool),
    Int(BigInt),
    /// Always held in lowest terms with a positive denominator.
    Real(BigRational),
    /// Unsigned value; [`mk_const`] rejects values that do not fit in `width`.
    BitVec {
        value: BigUint,
        width: u32,
    },
}

impl ConstVal {
    pub fn int(v: i64) -> ConstVal {
        ConstVal::Int(BigInt::from(v))
    }

    /// # Panics
    /// If `den` is zero.
    pub fn real(num: i64, den: i64) -> ConstVal {
        ConstVal::Real(BigRational::new(num.into(), den.into()))
    }

    pub fn bv(value: u64, width: u32) -> ConstVal {
        ConstVal::BitVec {
            value: BigUint::from(value),
            width,
        }
    }

    pub fn sort(&self) -> Sort {
        match self {
            ConstVal::Bool(_) => Sort::Bool,
            ConstVal::Int(_) => Sort::Int,
            ConstVal::Real(_) => Sort::Real,
            ConstVal::BitVec { width, .. } => Sort::BitVec(*width),
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            ConstVal::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            ConstVal::Int(i) => Some(i),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_int().and_then(|i| i64::try_from(i).ok())
    }

    pub fn as_real(&self) -> Option<&BigRational> {
        match self {
            ConstVal::Real(r) => Some(r),
            _ => None,
        }
    }

    /// Checks that a bitvector value is nonzero-width and fits its width.
    pub fn validate(&self) -> Result<()> {
        match self {
            ConstVal::BitVec { width: 0, .. } => Err(TermError::ZeroWidth),
            ConstVal::BitVec { value, width } if value.bits() > u64::from(*width) => {
                Err(TermError::BitWidthOverflow {
                    value: value.clone(),
                    width: *width,
                })
            }
            _ => Ok(()),
        }
    }

    /// Int to Real conversion; the identity on every other kind.
    pub(crate) fn promoted(self) -> ConstVal {
        match self {
            ConstVal::Int(i) => ConstVal::Real(BigRational::from_integer(i)),
            other => other,
        }
    }
}

impl From<bool> for ConstVal {
    fn from(b: bool) -> Self {
        ConstVal::Bool(b)
    }
}

impl From<i64> for ConstVal {
    fn from(v: i64) -> Self {
        ConstVal::int(v)
    }
}

impl From<BigInt> for ConstVal {
    fn from(v: BigInt) -> Self {
        ConstVal::Int(v)
    }
}

impl From<BigRational> for ConstVal {
    fn from(v: BigRational) -> Self {
        ConstVal::Real(v)
    }
}

/// Operator tags of the signature table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    // Core
    Not,
    And,
    Or,
    Xor,
    Implies,
    /// Boolean equivalence, printed as `=`.
    Iff,
    Ite,
    Distinct,
    Eq,
    // Ints / Reals
    Neg,
    Add,
    Sub,
    Mul,
    IDiv,
    Mod,
    Abs,
    RDiv,
    Lt,
    Le,
    Gt,
    Ge,
    ToReal,
    ToInt,
    // FixedSizeBitVectors
    Concat,
    Extract {
        hi: u32,
        lo: u32,
    },
    BvNot,
    BvAnd,
    BvOr,
    BvXor,
    BvNeg,
    BvAdd,
    BvSub,
    BvMul,
    BvUDiv,
    BvURem,
    BvShl,
    BvLShr,
    BvAShr,
    BvUlt,
    BvUle,
    BvUgt,
    BvUge,
    BvSlt,
    BvSle,
    BvSgt,
    BvSge,
    ZeroExtend(u32),
    SignExtend(u32),
}

impl OpKind {
    /// SMT-LIB function symbol, without indices.
    pub fn smt_name(self) -> &'static str {
        use OpKind::*;
        match self {
            Not => "not",
            And => "and",
            Or => "or",
            Xor => "xor",
            Implies => "=>",
            Iff | Eq => "=",
            Ite => "ite",
            Distinct => "distinct",
            Neg | Sub => "-",
            Add => "+",
            Mul => "*",
            IDiv => "div",
            Mod => "mod",
            Abs => "abs",
            RDiv => "/",
            Lt => "<",
            Le => "<=",
            Gt => ">",
            Ge => ">=",
            ToReal => "to_real",
            ToInt => "to_int",
            Concat => "concat",
            Extract { .. } => "extract",
            BvNot => "bvnot",
            BvAnd => "bvand",
            BvOr => "bvor",
            BvXor => "bvxor",
            BvNeg => "bvneg",
            BvAdd => "bvadd",
            BvSub => "bvsub",
            BvMul => "bvmul",
            BvUDiv => "bvudiv",
            BvURem => "bvurem",
            BvShl => "bvshl",
            BvLShr => "bvlshr",
            BvAShr => "bvashr",
            BvUlt => "bvult",
            BvUle => "bvule",
            BvUgt => "bvugt",
            BvUge => "bvuge",
            BvSlt => "bvslt",
            BvSle => "bvsle",
            BvSgt => "bvsgt",
            BvSge => "bvsge",
            ZeroExtend(_) => "zero_extend",
            SignExtend(_) => "sign_extend",
        }
    }

    /// Operators whose mixed Int/Real operands are promoted to Real.
    fn promotes(self) -> bool {
        use OpKind::*;
        matches!(
            self,
            Add | Sub | Mul | RDiv | Lt | Le | Gt | Ge | Eq | Distinct | Ite
        )
    }

    /// Result sort of applying `self` to operands of the given sorts, with no
    /// promotion. This is the signature table.
    pub fn result_sort(self, args: &[Sort]) -> Result<Sort> {
        use OpKind::*;
        let name = self.to_string();
        let arity = |expected: &str, ok: bool| -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(TermError::ArityError {
                    op: name.clone(),
                    expected: expected.to_owned(),
                    found: args.len(),
                })
            }
        };
        let mismatch = |detail: String| TermError::SortMismatch {
            op: name.clone(),
            detail,
        };
        let all = |want: Sort| -> Result<()> {
            match args.iter().find(|s| **s != want) {
                Some(bad) => Err(mismatch(format!("expected {want}, found {bad}"))),
                None => Ok(()),
            }
        };
        let uniform = || -> Result<Sort> {
            let first = args[0];
            all(first)?;
            Ok(first)
        };
        let numeric = || -> Result<Sort> {
            let s = uniform()?;
            if s.is_numeric() {
                Ok(s)
            } else {
                Err(mismatch(format!("expected Int or Real, found {s}")))
            }
        };
        let bitvec = || -> Result<u32> {
            let s = uniform()?;
            s.bv_width()
                .ok_or_else(|| mismatch(format!("expected a bitvector, found {s}")))
        };
        let widen = |w: u32, k: u32| -> Result<Sort> {
            w.checked_add(k)
                .map(Sort::BitVec)
                .ok_or_else(|| mismatch("bitvector width overflow".to_owned()))
        };

        match self {
            Not => {
                arity("1", args.len() == 1)?;
                all(Sort::Bool)?;
                Ok(Sort::Bool)
            }
            And | Or | Xor => {
                arity(">= 2", args.len() >= 2)?;
                all(Sort::Bool)?;
                Ok(Sort::Bool)
            }
            Implies | Iff => {
                arity("2", args.len() == 2)?;
                all(Sort::Bool)?;
                Ok(Sort::Bool)
            }
            Ite => {
                arity("3", args.len() == 3)?;
                if args[0] != Sort::Bool {
                    return Err(mismatch(format!(
                        "condition must be Bool, found {}",
                        args[0]
                    )));
                }
                if args[1] != args[2] {
                    return Err(mismatch(format!(
                        "branches differ: {} vs {}",
                        args[1], args[2]
                    )));
                }
                Ok(args[1])
            }
            Distinct => {
                arity(">= 1", !args.is_empty())?;
                uniform()?;
                Ok(Sort::Bool)
            }
            Eq => {
                arity("2", args.len() == 2)?;
                uniform()?;
                Ok(Sort::Bool)
            }
            Neg => {
                arity("1", args.len() == 1)?;
                numeric()
            }
            Add | Mul => {
                arity(">= 2", args.len() >= 2)?;
                numeric()
            }
            Sub => {
                arity("2", args.len() == 2)?;
                numeric()
            }
            IDiv | Mod => {
                arity("2", args.len() == 2)?;
                all(Sort::Int)?;
                Ok(Sort::Int)
            }
            Abs => {
                arity("1", args.len() == 1)?;
                all(Sort::Int)?;
                Ok(Sort::Int)
            }
            RDiv => {
                arity("2", args.len() == 2)?;
                all(Sort::Real)?;
                Ok(Sort::Real)
            }
            Lt | Le | Gt | Ge => {
                arity("2", args.len() == 2)?;
                numeric()?;
                Ok(Sort::Bool)
            }
            ToReal => {
                arity("1", args.len() == 1)?;
                all(Sort::Int)?;
                Ok(Sort::Real)
            }
            ToInt => {
                arity("1", args.len() == 1)?;
                all(Sort::Real)?;
                Ok(Sort::Int)
            }
            Concat => {
                arity("2", args.len() == 2)?;
                let mut total = 0u32;
                for s in args {
                    let w = s
                        .bv_width()
                        .ok_or_else(|| mismatch(format!("expected a bitvector, found {s}")))?;
                    total = total
                        .checked_add(w)
                        .ok_or_else(|| mismatch("bitvector width overflow".to_owned()))?;
                }
                Ok(Sort::BitVec(total))
            }
            Extract { hi, lo } => {
                arity("1", args.len() == 1)?;
                let w = bitvec()?;
                if lo > hi || hi >= w {
                    return Err(TermError::ExtractOutOfRange { hi, lo, width: w });
                }
                Ok(Sort::BitVec(hi - lo + 1))
            }
            BvNot | BvNeg => {
                arity("1", args.len() == 1)?;
                bitvec().map(Sort::BitVec)
            }
            BvAnd | BvOr | BvXor | BvAdd | BvSub | BvMul | BvUDiv | BvURem | BvShl | BvLShr
            | BvAShr => {
                arity("2", args.len() == 2)?;
                bitvec().map(Sort::BitVec)
            }
            BvUlt | BvUle | BvUgt | BvUge | BvSlt | BvSle | BvSgt | BvSge => {
                arity("2", args.len() == 2)?;
                bitvec()?;
                Ok(Sort::Bool)
            }
            ZeroExtend(k) | SignExtend(k) => {
                arity("1", args.len() == 1)?;
                let w = bitvec()?;
                widen(w, k)
            }
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpKind::Extract { hi, lo } => write!(f, "(_ extract {hi} {lo})"),
            OpKind::ZeroExtend(k) => write!(f, "(_ zero_extend {k})"),
            OpKind::SignExtend(k) => write!(f, "(_ sign_extend {k})"),
            op => f.write_str(op.smt_name()),
        }
    }
}

/// Signature of an uninterpreted function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UFuncDecl {
    name: String,
    arg_sorts: Vec<Sort>,
    result_sort: Sort,
}

impl UFuncDecl {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arg_sorts(&self) -> &[Sort] {
        &self.arg_sorts
    }

    pub fn result_sort(&self) -> Sort {
        self.result_sort
    }

    /// Shorthand for [`apply_ufunc`].
    pub fn apply(&self, args: &[Term]) -> Result<Term> {
        apply_ufunc(self, args)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Var(String),
    Const(ConstVal),
    App(OpKind, Vec<Term>),
    UApp(UFuncDecl, Vec<Term>),
}

#[derive(PartialEq, Eq, Hash)]
struct TermData {
    node: Node,
    sort: Sort,
}

/// An immutable SMT term together with its sort.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term(Arc<TermData>);

impl Term {
    fn new(node: Node, sort: Sort) -> Term {
        Term(Arc::new(TermData { node, sort }))
    }

    pub fn sort(&self) -> Sort {
        self.0.sort
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    /// Children of an operator or function application; empty for leaves.
    pub fn children(&self) -> &[Term] {
        match self.node() {
            Node::App(_, args) | Node::UApp(_, args) => args,
            _ => &[],
        }
    }

    pub fn as_const(&self) -> Option<&ConstVal> {
        match self.node() {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_var(&self) -> Option<&str> {
        match self.node() {
            Node::Var(name) => Some(name),
            _ => None,
        }
    }

    pub fn op(&self) -> Option<OpKind> {
        match self.node() {
            Node::App(op, _) => Some(*op),
            _ => None,
        }
    }

    pub fn bool(b: bool) -> Term {
        Term::new(Node::Const(ConstVal::Bool(b)), Sort::Bool)
    }

    pub fn int(v: i64) -> Term {
        Term::new(Node::Const(ConstVal::int(v)), Sort::Int)
    }

    /// # Panics
    /// If `den` is zero.
    pub fn real(num: i64, den: i64) -> Term {
        Term::new(Node::Const(ConstVal::real(num, den)), Sort::Real)
    }

    pub fn bv(value: u64, width: u32) -> Result<Term> {
        mk_const(ConstVal::bv(value, width))
    }

    /// Number of nodes, counting shared subterms once per occurrence.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(Term::size).sum::<usize>()
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

const RESERVED: &[&str] = &[
    // reserved words
    "!",
    "_",
    "as",
    "BINARY",
    "DECIMAL",
    "exists",
    "forall",
    "HEXADECIMAL",
    "let",
    "match",
    "NUMERAL",
    "par",
    "STRING",
    // command names
    "assert",
    "check-sat",
    "check-sat-assuming",
    "declare-const",
    "declare-datatype",
    "declare-datatypes",
    "declare-fun",
    "declare-sort",
    "define-fun",
    "define-fun-rec",
    "define-funs-rec",
    "define-sort",
    "echo",
    "exit",
    "get-assertions",
    "get-assignment",
    "get-info",
    "get-model",
    "get-option",
    "get-proof",
    "get-unsat-assumptions",
    "get-unsat-core",
    "get-value",
    "pop",
    "push",
    "reset",
    "reset-assertions",
    "set-info",
    "set-logic",
    "set-option",
    // predefined theory symbols
    "true",
    "false",
    "not",
    "and",
    "or",
    "xor",
    "ite",
    "distinct",
    "div",
    "mod",
    "abs",
    "to_real",
    "to_int",
    "is_int",
    "concat",
    "extract",
    "repeat",
    "zero_extend",
    "sign_extend",
    "rotate_left",
    "rotate_right",
    "bvnot",
    "bvand",
    "bvor",
    "bvxor",
    "bvnand",
    "bvnor",
    "bvxnor",
    "bvcomp",
    "bvneg",
    "bvadd",
    "bvsub",
    "bvmul",
    "bvudiv",
    "bvurem",
    "bvsdiv",
    "bvsrem",
    "bvsmod",
    "bvshl",
    "bvlshr",
    "bvashr",
    "bvult",
    "bvule",
    "bvugt",
    "bvuge",
    "bvslt",
    "bvsle",
    "bvsgt",
    "bvsge",
    "Bool",
    "Int",
    "Real",
    "BitVec",
    "model",
];

/// Checks a variable or function name against `[A-Za-z_][A-Za-z0-9_.!]*` and
/// the reserved-word list.
pub fn check_symbol(name: &str) -> Result<()> {
    let mut chars = name.chars();
    let head_ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    let tail_ok = chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '!'));
    if !head_ok || !tail_ok {
        return Err(TermError::InvalidSymbol(name.to_owned()));
    }
    if RESERVED.contains(&name) {
        return Err(TermError::ReservedSymbol(name.to_owned()));
    }
    Ok(())
}

fn check_sort(sort: Sort) -> Result<()> {
    match sort {
        Sort::BitVec(0) => Err(TermError::ZeroWidth),
        _ => Ok(()),
    }
}

pub fn mk_var(name: &str, sort: Sort) -> Result<Term> {
    check_symbol(name)?;
    check_sort(sort)?;
    Ok(Term::new(Node::Var(name.to_owned()), sort))
}

/// A rank-1 or rank-2 array of variables, stored row-major.
///
/// Indexing through this type is 0-based; the generated variable names are
/// 1-based (`base_1`, `base_1_1`, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermArray {
    dims: Vec<usize>,
    items: Vec<Term>,
}

impl TermArray {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn as_slice(&self) -> &[Term] {
        &self.items
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Term> {
        self.items.iter()
    }

    pub fn into_vec(self) -> Vec<Term> {
        self.items
    }

    /// Element `i` of a rank-1 array, or element `i` in row-major order.
    pub fn at(&self, i: usize) -> &Term {
        &self.items[i]
    }

    /// # Panics
    /// If the array is not rank 2 or the index is out of bounds.
    pub fn at2(&self, i: usize, j: usize) -> &Term {
        assert_eq!(
            self.dims.len(),
            2,
            "at2 on a rank-{} array",
            self.dims.len()
        );
        assert!(i < self.dims[0] && j < self.dims[1]);
        &self.items[i * self.dims[1] + j]
    }

    pub fn rows(&self) -> usize {
        self.dims[0]
    }

    pub fn cols(&self) -> usize {
        self.dims.get(1).copied().unwrap_or(1)
    }

    pub fn row(&self, i: usize) -> Vec<Term> {
        let c = self.cols();
        self.items[i * c..(i + 1) * c].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Term> {
        let c = self.cols();
        (0..self.rows())
            .map(|i| self.items[i * c + j].clone())
            .collect()
    }
}

impl<'a> IntoIterator for &'a TermArray {
    type Item = &'a Term;
    type IntoIter = std::slice::Iter<'a, Term>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

pub fn mk_var_array(base: &str, dims: &[usize], sort: Sort) -> Result<TermArray> {
    if dims.is_empty() {
        return Err(TermError::EmptyDims);
    }
    if dims.len() > 2 || dims.contains(&0) {
        return Err(TermError::InvalidDims(dims.to_vec()));
    }
    check_symbol(base)?;
    let items = match *dims {
        [n] => (1..=n)
            .map(|i| mk_var(&format!("{base}_{i}"), sort))
            .collect::<Result<Vec<_>>>()?,
        [m, n] => (1..=m)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .map(|(i, j)| mk_var(&format!("{base}_{i}_{j}"), sort))
            .collect::<Result<Vec<_>>>()?,
        _ => unreachable!(),
    };
    Ok(TermArray {
        dims: dims.to_vec(),
        items,
    })
}

pub fn mk_const(value: ConstVal) -> Result<Term> {
    value.validate()?;
    let sort = value.sort();
    Ok(Term::new(Node::Const(value), sort))
}

fn promote_operands(op: OpKind, args: &[Term]) -> Result<Vec<Term>> {
    let operands = if op == OpKind::Ite && args.len() == 3 {
        &args[1..]
    } else {
        args
    };
    let wanted = match op {
        OpKind::RDiv => true,
        _ if op.promotes() => {
            operands.iter().any(|a| a.sort() == Sort::Real)
                && operands.iter().any(|a| a.sort() == Sort::Int)
        }
        _ => false,
    };
    if !wanted {
        return Ok(args.to_vec());
    }
    let skip = args.len() - operands.len();
    args.iter()
        .enumerate()
        .map(|(i, a)| {
            if i >= skip && a.sort() == Sort::Int {
                mk_app(OpKind::ToReal, std::slice::from_ref(a))
            } else {
                Ok(a.clone())
            }
        })
        .collect()
}

/// Sort-checks and builds an application without the all-constant folding
/// step performed by [`mk_app`]. Int/Real promotion still applies.
pub fn mk_app_unfolded(op: OpKind, args: &[Term]) -> Result<Term> {
    if args.is_empty() {
        return Err(TermError::ArityError {
            op: op.to_string(),
            expected: ">= 1".to_owned(),
            found: 0,
        });
    }
    let args = promote_operands(op, args)?;
    let sorts: Vec<Sort> = args.iter().map(Term::sort).collect();
    let sort = op.result_sort(&sorts)?;
    let op = match op {
        OpKind::Eq if sorts[0] == Sort::Bool => OpKind::Iff,
        OpKind::Distinct if args.len() == 1 => return Ok(Term::bool(true)),
        op => op,
    };
    Ok(Term::new(Node::App(op, args), sort))
}

/// Sort-checks and builds an operator application.
///
/// Mixed Int/Real operands are promoted by wrapping the Int side in
/// `to_real`. `eq` over Bool operands is stored as `iff`. An application
/// whose operands are all constants is folded to a constant unless the
/// evaluation divides by zero.
pub fn mk_app(op: OpKind, args: &[Term]) -> Result<Term> {
    let t = mk_app_unfolded(op, args)?;
    if let Node::App(op, children) = t.node() {
        if let Some(values) = children
            .iter()
            .map(|c| c.as_const().cloned())
            .collect::<Option<Vec<_>>>()
        {
            if let Ok(v) = fold_const(*op, &values) {
                return mk_const(v);
            }
        }
    }
    Ok(t)
}

/// Pairwise distinctness; a single operand yields the constant `true`.
pub fn mk_distinct(args: &[Term]) -> Result<Term> {
    mk_app(OpKind::Distinct, args)
}

pub fn declare_ufunc(name: &str, arg_sorts: &[Sort], result_sort: Sort) -> Result<UFuncDecl> {
    check_symbol(name)?;
    if arg_sorts.is_empty() {
        return Err(TermError::ArityError {
            op: name.to_owned(),
            expected: ">= 1".to_owned(),
            found: 0,
        });
    }
    for s in arg_sorts.iter().chain(std::iter::once(&result_sort)) {
        check_sort(*s)?;
    }
    Ok(UFuncDecl {
        name: name.to_owned(),
        arg_sorts: arg_sorts.to_vec(),
        result_sort,
    })
}

/// Applies an uninterpreted function. Argument sorts must match exactly; no
/// promotion is applied.
pub fn apply_ufunc(decl: &UFuncDecl, args: &[Term]) -> Result<Term> {
    if args.len() != decl.arg_sorts.len() {
        return Err(TermError::ArityError {
            op: decl.name.clone(),
            expected: decl.arg_sorts.len().to_string(),
            found: args.len(),
        });
    }
    for (i, (a, want)) in args.iter().zip(&decl.arg_sorts).enumerate() {
        if a.sort() != *want {
            return Err(TermError::SortMismatch {
                op: decl.name.clone(),
                detail: format!("argument {i}: expected {want}, found {}", a.sort()),
            });
        }
    }
    Ok(Term::new(
        Node::UApp(decl.clone(), args.to_vec()),
        decl.result_sort,
    ))
}

/// Named constructors over [`mk_app`].
pub mod ops {
    use super::*;

    pub fn not(a: &Term) -> Result<Term> {
        mk_app(OpKind::Not, std::slice::from_ref(a))
    }

    pub fn and(args: &[Term]) -> Result<Term> {
        mk_app(OpKind::And, args)
    }

    pub fn or(args: &[Term]) -> Result<Term> {
        mk_app(OpKind::Or, args)
    }

    pub fn xor(args: &[Term]) -> Result<Term> {
        mk_app(OpKind::Xor, args)
    }

    pub fn implies(a: &Term, b: &Term) -> Result<Term> {
        mk_app(OpKind::Implies, &[a.clone(), b.clone()])
    }

    pub fn iff(a: &Term, b: &Term) -> Result<Term> {
        mk_app(OpKind::Iff, &[a.clone(), b.clone()])
    }

    pub fn ite(c: &Term, t: &Term, e: &Term) -> Result<Term> {
        mk_app(OpKind::Ite, &[c.clone(), t.clone(), e.clone()])
    }

    pub fn eq(a: &Term, b: &Term) -> Result<Term> {
        mk_app(OpKind::Eq, &[a.clone(), b.clone()])
    }

    /// `not (= a b)`.
    pub fn ne(a: &Term, b: &Term) -> Result<Term> {
        not(&eq(a, b)?)
    }

    pub fn neg(a: &Term) -> Result<Term> {
        mk_app(OpKind::Neg, std::slice::from_ref(a))
    }

    pub fn add(a: &Term, b: &Term) -> Result<Term> {
        mk_app(OpKind::Add, &[a.clone(), b.clone()])
    }

    pub fn sub(a: &Term, b: &Term) -> Result<Term> {
        mk_app(OpKind::Sub, &[a.clone(), b.clone()])
    }

    pub fn mul(a: &Term, b: &Term) -> Result<Term> {
        mk_app(OpKind::Mul, &[a.clone(), b.clone()])
    }

    /// Sum of one or more terms. A single term is returned unchanged.
    pub fn sum(args: &[Term]) -> Result<Term> {
        match args {
            [] => Err(TermError::ArityError {
                op: "+".to_owned(),
                expected: ">= 1".to_owned(),
                found: 0,
            }),
            [one] if one.sort().is_numeric() => Ok(one.clone()),
            [one] => Err(TermError::SortMismatch {
                op: "+".to_owned(),
                detail: format!("expected Int or Real, found {}", one.sort()),
            }),
            _ => mk_app(OpKind::Add, args),
        }
    }

    /// Product of one or more terms. A single term is returned unchanged.
    pub fn prod(args: &[Term]) -> Result<Term> {
        match args {
            [_] => sum(args),
            _ => mk_app(OpKind::Mul, args),
        }
    }

    pub fn lt(a: &Term, b: &Term) -> Result<Term> {
        mk_app(OpKind::Lt, &[a.clone(), b.clone()])
    }

    pub fn le(a: &Term, b: &Term) -> Result<Term> {
        mk_app(OpKind::Le, &[a.clone(), b.clone()])
    }

    pub fn gt(a: &Term, b: &Term) -> Result<Term> {
        mk_app(OpKind::Gt, &[a.clone(), b.clone()])
    }

    pub fn ge(a: &Term, b: &Term) -> Result<Term> {
        mk_app(OpKind::Ge, &[a.clone(), b.clone()])
    }

    pub fn extract(a: &Term, hi: u32, lo: u32) -> Result<Term> {
        mk_app(OpKind::Extract { hi, lo }, std::slice::from_ref(a))
    }

    pub fn concat(a: &Term, b: &Term) -> Result<Term> {
        mk_app(OpKind::Concat, &[a.clone(), b.clone()])
    }

    /// Applies any unary or binary operator.
    pub fn apply(op: OpKind, args: &[&Term]) -> Result<Term> {
        let args: Vec<Term> = args.iter().map(|t| (*t).clone()).collect();
        mk_app(op, &args)
    }

    /// `ite(c, 1, 0)`: a Bool as an Int.
    pub fn bool_to_int(c: &Term) -> Result<Term> {
        ite(c, &Term::int(1), &Term::int(0))
    }
}
