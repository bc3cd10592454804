// SPDX-License-Identifier: Apache-2.0

//! Semantics-preserving rewriting and exact constant evaluation.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::term::{mk_app_unfolded, mk_const, ConstVal, Node, OpKind, Term, UFuncDecl};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoldError {
    /// Division by zero in `/`, `div` or `mod`. The application has no fixed
    /// value and must stay symbolic.
    #[error("`{0}` by zero has no fixed value")]
    Domain(OpKind),
    #[error("operands of `{0}` are not well sorted")]
    IllSorted(OpKind),
}

fn bv_mask(width: u32) -> BigUint {
    (BigUint::one() << width) - 1u32
}

fn bv_signed(value: &BigUint, width: u32) -> BigInt {
    let v = BigInt::from(value.clone());
    if value.bit(u64::from(width) - 1) {
        v - (BigInt::one() << width)
    } else {
        v
    }
}

fn bv_wrap(value: BigInt, width: u32) -> ConstVal {
    let modulus = BigInt::one() << width;
    let v = value.mod_floor(&modulus);
    ConstVal::BitVec {
        value: v.to_biguint().expect("mod_floor is nonnegative"),
        width,
    }
}

/// Euclidean division: the remainder is always in `[0, |d|)`.
fn euclid_div_mod(n: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
    let r = n.mod_floor(&d.abs());
    let q = (n - &r) / d;
    (q, r)
}

enum Nums {
    Ints(Vec<BigInt>),
    Reals(Vec<BigRational>),
}

fn numbers(op: OpKind, args: &[ConstVal]) -> Result<Nums, FoldError> {
    if let Some(ints) = args
        .iter()
        .map(|a| a.as_int().cloned())
        .collect::<Option<Vec<_>>>()
    {
        return Ok(Nums::Ints(ints));
    }
    args.iter()
        .map(|a| match a.clone().promoted() {
            ConstVal::Real(r) => Ok(r),
            _ => Err(FoldError::IllSorted(op)),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Nums::Reals)
}

fn bools(op: OpKind, args: &[ConstVal]) -> Result<Vec<bool>, FoldError> {
    args.iter()
        .map(|a| a.as_bool().ok_or(FoldError::IllSorted(op)))
        .collect()
}

fn bitvecs(op: OpKind, args: &[ConstVal]) -> Result<(Vec<&BigUint>, u32), FoldError> {
    let mut width = None;
    let mut out = Vec::with_capacity(args.len());
    for a in args {
        match a {
            ConstVal::BitVec { value, width: w } => {
                if op != OpKind::Concat && width.is_some_and(|prev| prev != *w) {
                    return Err(FoldError::IllSorted(op));
                }
                width.get_or_insert(*w);
                out.push(value);
            }
            _ => return Err(FoldError::IllSorted(op)),
        }
    }
    Ok((out, width.ok_or(FoldError::IllSorted(op))?))
}

fn same_kind(op: OpKind, args: &[ConstVal]) -> Result<Vec<ConstVal>, FoldError> {
    let any_real = args.iter().any(|a| matches!(a, ConstVal::Real(_)));
    let vals: Vec<ConstVal> = if any_real {
        args.iter().cloned().map(ConstVal::promoted).collect()
    } else {
        args.to_vec()
    };
    if vals.windows(2).any(|w| w[0].sort() != w[1].sort()) {
        return Err(FoldError::IllSorted(op));
    }
    Ok(vals)
}

/// Evaluates `op` over constant operands exactly.
///
/// Rationals are exact, bitvector arithmetic is modulo `2^width`, and `div` /
/// `mod` follow the Euclidean convention. Mixed Int/Real operands are
/// promoted to Real first.
pub fn fold_const(op: OpKind, args: &[ConstVal]) -> Result<ConstVal, FoldError> {
    use OpKind::*;
    let ill = FoldError::IllSorted(op);
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(FoldError::IllSorted(op))
        }
    };
    match op {
        Not => {
            arity(1)?;
            Ok(ConstVal::Bool(!bools(op, args)?[0]))
        }
        And => Ok(ConstVal::Bool(bools(op, args)?.into_iter().all(|b| b))),
        Or => Ok(ConstVal::Bool(bools(op, args)?.into_iter().any(|b| b))),
        Xor => Ok(ConstVal::Bool(
            bools(op, args)?.into_iter().fold(false, |acc, b| acc ^ b),
        )),
        Implies => {
            arity(2)?;
            let b = bools(op, args)?;
            Ok(ConstVal::Bool(!b[0] || b[1]))
        }
        Iff => {
            arity(2)?;
            let b = bools(op, args)?;
            Ok(ConstVal::Bool(b[0] == b[1]))
        }
        Ite => {
            arity(3)?;
            let c = args[0].as_bool().ok_or(ill)?;
            let branches = same_kind(op, &args[1..])?;
            Ok(branches[if c { 0 } else { 1 }].clone())
        }
        Eq => {
            arity(2)?;
            let v = same_kind(op, args)?;
            Ok(ConstVal::Bool(v[0] == v[1]))
        }
        Distinct => {
            let v = same_kind(op, args)?;
            let all_distinct = v
                .iter()
                .enumerate()
                .all(|(i, a)| v[i + 1..].iter().all(|b| a != b));
            Ok(ConstVal::Bool(all_distinct))
        }
        Neg | Abs | ToReal | ToInt => {
            arity(1)?;
            match (op, &args[0]) {
                (Neg, ConstVal::Int(i)) => Ok(ConstVal::Int(-i)),
                (Neg, ConstVal::Real(r)) => Ok(ConstVal::Real(-r)),
                (Abs, ConstVal::Int(i)) => Ok(ConstVal::Int(i.abs())),
                (ToReal, ConstVal::Int(i)) => {
                    Ok(ConstVal::Real(BigRational::from_integer(i.clone())))
                }
                (ToInt, ConstVal::Real(r)) => Ok(ConstVal::Int(r.floor().to_integer())),
                _ => Err(ill),
            }
        }
        Add | Mul => match numbers(op, args)? {
            Nums::Ints(v) => Ok(ConstVal::Int(if op == Add {
                v.into_iter().sum()
            } else {
                v.into_iter().product()
            })),
            Nums::Reals(v) => Ok(ConstVal::Real(if op == Add {
                v.into_iter().sum()
            } else {
                v.into_iter().product()
            })),
        },
        Sub => {
            arity(2)?;
            match numbers(op, args)? {
                Nums::Ints(v) => Ok(ConstVal::Int(&v[0] - &v[1])),
                Nums::Reals(v) => Ok(ConstVal::Real(&v[0] - &v[1])),
            }
        }
        RDiv => {
            arity(2)?;
            let v = match numbers(op, args)? {
                Nums::Ints(v) => v.into_iter().map(BigRational::from_integer).collect(),
                Nums::Reals(v) => v,
            };
            if v[1].is_zero() {
                return Err(FoldError::Domain(op));
            }
            Ok(ConstVal::Real(&v[0] / &v[1]))
        }
        IDiv | Mod => {
            arity(2)?;
            let (n, d) = match (&args[0], &args[1]) {
                (ConstVal::Int(n), ConstVal::Int(d)) => (n, d),
                _ => return Err(ill),
            };
            if d.is_zero() {
                return Err(FoldError::Domain(op));
            }
            let (q, r) = euclid_div_mod(n, d);
            Ok(ConstVal::Int(if op == IDiv { q } else { r }))
        }
        Lt | Le | Gt | Ge => {
            arity(2)?;
            let ord = match numbers(op, args)? {
                Nums::Ints(v) => v[0].cmp(&v[1]),
                Nums::Reals(v) => v[0].cmp(&v[1]),
            };
            Ok(ConstVal::Bool(match op {
                Lt => ord.is_lt(),
                Le => ord.is_le(),
                Gt => ord.is_gt(),
                _ => ord.is_ge(),
            }))
        }
        Concat => {
            arity(2)?;
            let (v, _) = bitvecs(op, args)?;
            let low_width = args[1].sort().bv_width().ok_or(ill.clone())?;
            let high_width = args[0].sort().bv_width().ok_or(ill)?;
            Ok(ConstVal::BitVec {
                value: (v[0] << low_width) | v[1],
                width: high_width + low_width,
            })
        }
        Extract { hi, lo } => {
            arity(1)?;
            let (v, w) = bitvecs(op, args)?;
            if lo > hi || hi >= w {
                return Err(ill);
            }
            let width = hi - lo + 1;
            Ok(ConstVal::BitVec {
                value: (v[0] >> lo) & bv_mask(width),
                width,
            })
        }
        ZeroExtend(k) => {
            arity(1)?;
            let (v, w) = bitvecs(op, args)?;
            Ok(ConstVal::BitVec {
                value: v[0].clone(),
                width: w + k,
            })
        }
        SignExtend(k) => {
            arity(1)?;
            let (v, w) = bitvecs(op, args)?;
            Ok(bv_wrap(bv_signed(v[0], w), w + k))
        }
        BvNot => {
            arity(1)?;
            let (v, w) = bitvecs(op, args)?;
            Ok(ConstVal::BitVec {
                value: v[0] ^ bv_mask(w),
                width: w,
            })
        }
        BvNeg => {
            arity(1)?;
            let (v, w) = bitvecs(op, args)?;
            Ok(bv_wrap(-BigInt::from(v[0].clone()), w))
        }
        BvAnd | BvOr | BvXor | BvAdd | BvSub | BvMul | BvUDiv | BvURem | BvShl | BvLShr
        | BvAShr => {
            arity(2)?;
            let (v, w) = bitvecs(op, args)?;
            let (a, b) = (v[0], v[1]);
            let shift = b.to_u32().filter(|s| *s < w);
            let value = match op {
                BvAnd => a & b,
                BvOr => a | b,
                BvXor => a ^ b,
                BvAdd => (a + b) & bv_mask(w),
                BvSub => {
                    return Ok(bv_wrap(
                        BigInt::from(a.clone()) - BigInt::from(b.clone()),
                        w,
                    ))
                }
                BvMul => (a * b) & bv_mask(w),
                // division by zero is total on bitvectors
                BvUDiv if b.is_zero() => bv_mask(w),
                BvUDiv => a / b,
                BvURem if b.is_zero() => a.clone(),
                BvURem => a % b,
                BvShl => shift.map_or_else(BigUint::zero, |s| (a << s) & bv_mask(w)),
                BvLShr => shift.map_or_else(BigUint::zero, |s| a >> s),
                _ => {
                    let signed = bv_signed(a, w);
                    let s = shift.unwrap_or(w);
                    let shifted = if s >= w {
                        if signed.sign() == Sign::Minus {
                            -BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    } else {
                        signed >> s
                    };
                    return Ok(bv_wrap(shifted, w));
                }
            };
            Ok(ConstVal::BitVec { value, width: w })
        }
        BvUlt | BvUle | BvUgt | BvUge | BvSlt | BvSle | BvSgt | BvSge => {
            arity(2)?;
            let (v, w) = bitvecs(op, args)?;
            let ord = match op {
                BvUlt | BvUle | BvUgt | BvUge => v[0].cmp(v[1]),
                _ => bv_signed(v[0], w).cmp(&bv_signed(v[1], w)),
            };
            Ok(ConstVal::Bool(match op {
                BvUlt | BvSlt => ord.is_lt(),
                BvUle | BvSle => ord.is_le(),
                BvUgt | BvSgt => ord.is_gt(),
                _ => ord.is_ge(),
            }))
        }
    }
}

/// Rewrites `t` to a fixpoint of:
///
/// * `not(not(e))` to `e`;
/// * splicing `and` children of `and` (and `or` of `or`) into the parent,
///   keeping operand order;
/// * folding applications whose operands are all constants;
/// * `and` with a `false` operand to `false`, `or` with `true` to `true`,
///   and dropping neutral constants from both.
///
/// Division by zero is never folded. The result has the same sort and the
/// same value as `t` under every model.
pub fn simplify(t: &Term) -> Term {
    match t.node() {
        Node::Var(_) | Node::Const(_) => t.clone(),
        Node::UApp(decl, args) => rebuild_uapp(decl, args.iter().map(simplify).collect()),
        Node::App(op, args) => {
            let args: Vec<Term> = args.iter().map(simplify).collect();
            rewrite(*op, args)
        }
    }
}

fn rebuild_uapp(decl: &UFuncDecl, args: Vec<Term>) -> Term {
    decl.apply(&args)
        .expect("simplification preserves argument sorts")
}

/// Applies the local rules to an application whose children are already
/// simplified.
fn rewrite(op: OpKind, args: Vec<Term>) -> Term {
    match op {
        OpKind::Not => {
            if let Some(OpKind::Not) = args[0].op() {
                return args[0].children()[0].clone();
            }
        }
        OpKind::And | OpKind::Or => {
            let neutral = op == OpKind::And;
            let mut flat = Vec::with_capacity(args.len());
            for a in args {
                match a.as_const().and_then(ConstVal::as_bool) {
                    Some(b) if b == neutral => continue,
                    Some(_) => return Term::bool(!neutral),
                    None => {}
                }
                if a.op() == Some(op) {
                    flat.extend(a.children().iter().cloned());
                } else {
                    flat.push(a);
                }
            }
            return match flat.len() {
                0 => Term::bool(neutral),
                1 => flat.pop().unwrap(),
                _ => build(op, &flat),
            };
        }
        _ => {}
    }
    let folded = args
        .iter()
        .map(|a| a.as_const().cloned())
        .collect::<Option<Vec<_>>>()
        .and_then(|vals| fold_const(op, &vals).ok());
    match folded {
        Some(v) => mk_const(v).expect("folded constants are in range"),
        None => build(op, &args),
    }
}

fn build(op: OpKind, args: &[Term]) -> Term {
    mk_app_unfolded(op, args).expect("simplification preserves operand sorts")
}
