// SPDX-License-Identifier: Apache-2.0

//! Build sort-checked SMT formulae, print them as SMT-LIB 2.6, run them
//! through any SMT-LIB solver over pipes, and read the models back.
//!
//! ```
//! use smtkit::{mk_var, ops, script_for, EmitOptions, Sort};
//!
//! let x = mk_var("x", Sort::Bool).unwrap();
//! let y = mk_var("y", Sort::Bool).unwrap();
//! let nx = ops::not(&x).unwrap();
//! let f = ops::or(&[nx.clone(), ops::and(&[nx, y]).unwrap()]).unwrap();
//! let script = script_for(&[f], &EmitOptions::bare()).unwrap();
//! assert_eq!(
//!     script,
//!     "(declare-fun x () Bool)\n(declare-fun y () Bool)\n(assert (or (not x) (and (not x) y)))\n"
//! );
//! ```

pub mod emit;
pub mod model;
pub mod oracle;
pub mod problems;
pub mod reader;
pub mod sexpr;
pub mod simplify;
pub mod solver;
pub mod sort;
pub mod term;

pub use emit::{
    collect_decls, emit_sort, emit_term, save_script, script_for, Command, Declarations, EmitError,
    EmitOptions, Signature,
};
pub use model::{FuncInterp, Model};
pub use oracle::{brute_force_sat, enumerate_models, evaluate, DomainSpec, OracleError};
pub use reader::{parse_check_sat, parse_model, CheckStatus};
pub use sexpr::{parse_sexpr, tokenize, ReadError, SExpr};
pub use simplify::{fold_const, simplify, FoldError};
pub use solver::{
    check, check_file, open_session, CheckOutcome, DriverError, Session, SolverConfig,
};
pub use sort::Sort;
pub use term::{
    apply_ufunc, declare_ufunc, mk_app, mk_app_unfolded, mk_const, mk_distinct, mk_var,
    mk_var_array, ops, ConstVal, Node, OpKind, Term, TermArray, TermError, UFuncDecl,
};
