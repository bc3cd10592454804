// SPDX-License-Identifier: Apache-2.0

//! Benchmark problem builders: pigeonhole and graph coloring.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::oracle::DomainSpec;
use crate::reader::CheckStatus;
use crate::sexpr::ReadError;
use crate::solver::{DriverError, Session};
use crate::sort::Sort;
use crate::term::{mk_var_array, ops, ConstVal, Result as TermResult, Term, TermArray, TermError};

/// Constraints placing `n + 1` pigeons into `n` holes over an integer
/// matrix `P`: every cell in `{0, 1}`, every row sum at least 1 and every
/// column sum at most 1. Always unsatisfiable.
pub fn pigeonhole(n: usize) -> TermResult<Vec<Term>> {
    if n == 0 {
        return Err(TermError::InvalidDims(vec![1, 0]));
    }
    let p = mk_var_array("P", &[n + 1, n], Sort::Int)?;
    pigeonhole_constraints(&p)
}

fn pigeonhole_constraints(p: &TermArray) -> TermResult<Vec<Term>> {
    let one = Term::int(1);
    let zero = Term::int(0);
    let mut ts = Vec::new();
    for i in 0..p.rows() {
        ts.push(ops::ge(&ops::sum(&p.row(i))?, &one)?);
    }
    for j in 0..p.cols() {
        ts.push(ops::le(&ops::sum(&p.col(j))?, &one)?);
    }
    for cell in p {
        ts.push(ops::ge(cell, &zero)?);
    }
    for cell in p {
        ts.push(ops::le(cell, &one)?);
    }
    Ok(ts)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("edge ({0}, {1}) is invalid for {2} node(s)")]
    BadEdge(usize, usize, usize),
    #[error("graph needs at least one node")]
    NoNodes,
}

/// An undirected graph on nodes `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphSpec {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoNodes);
        }
        if let Some(&(i, j)) = edges
            .iter()
            .find(|&&(i, j)| i == j || !(1..=n).contains(&i) || !(1..=n).contains(&j))
        {
            return Err(GraphError::BadEdge(i, j, n));
        }
        Ok(GraphSpec { n, edges })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let edges = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        Self::new(n, edges)
    }

    pub fn nodes(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Graph file format: the node count on the first line, then one `i j`
/// edge per line. `#` starts a comment; blank lines are ignored.
impl FromStr for GraphSpec {
    type Err = GraphError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut n = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>().map_err(|_| GraphError::Syntax {
                    line,
                    reason: format!("`{s}` is not a nonnegative integer"),
                })
            };
            match (n, fields.as_slice()) {
                (None, [count]) => n = Some(num(count)?),
                (None, _) => {
                    return Err(GraphError::Syntax {
                        line,
                        reason: "expected the node count".to_owned(),
                    })
                }
                (Some(_), [i, j]) => edges.push((num(i)?, num(j)?)),
                (Some(_), _) => {
                    return Err(GraphError::Syntax {
                        line,
                        reason: "expected `i j`".to_owned(),
                    })
                }
            }
        }
        GraphSpec::new(n.ok_or(GraphError::NoNodes)?, edges)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (i, j) in &self.edges {
            writeln!(f, "{i} {j}")?;
        }
        Ok(())
    }
}

/// Color variables `node_1 ..= node_n` with domain and edge constraints.
#[derive(Debug, Clone)]
pub struct ColoringProblem {
    pub nodes: TermArray,
    /// `1 <= node_i <= colors` for every node.
    pub limits: Vec<Term>,
    /// `node_i != node_j` for every edge.
    pub conflicts: Vec<Term>,
}

impl ColoringProblem {
    pub fn new(graph: &GraphSpec, colors: u32) -> TermResult<Self> {
        let nodes = mk_var_array("node", &[graph.nodes()], Sort::Int)?;
        let lo = Term::int(1);
        let hi = Term::int(i64::from(colors));
        let limits = nodes
            .iter()
            .map(|v| ops::and(&[ops::ge(v, &lo)?, ops::le(v, &hi)?]))
            .collect::<TermResult<Vec<_>>>()?;
        let conflicts = graph
            .edges()
            .iter()
            .map(|&(i, j)| ops::ne(nodes.at(i - 1), nodes.at(j - 1)))
            .collect::<TermResult<Vec<_>>>()?;
        Ok(ColoringProblem {
            nodes,
            limits,
            conflicts,
        })
    }

    pub fn constraints(&self) -> Vec<Term> {
        self.limits.iter().chain(&self.conflicts).cloned().collect()
    }

    /// The oracle domain `1..=colors` for every node.
    pub fn domains(&self, colors: u32) -> DomainSpec {
        DomainSpec::int_range(
            self.nodes.iter().map(|t| t.as_var().expect("variable")),
            1,
            i64::from(colors),
        )
    }

    /// `not (and (= node_1 c_1) ... )` for a found coloring.
    pub fn exclusion(&self, coloring: &[ConstVal]) -> TermResult<Term> {
        let eqs = self
            .nodes
            .iter()
            .zip(coloring)
            .map(|(v, c)| ops::eq(v, &Term::int(c.as_i64().unwrap_or_default())))
            .collect::<TermResult<Vec<_>>>()?;
        let all = match eqs.as_slice() {
            [single] => single.clone(),
            _ => ops::and(&eqs)?,
        };
        ops::not(&all)
    }
}

/// Finds up to `max` distinct colorings in an open session, excluding each
/// one before searching for the next. Stops early on `unsat`.
///
/// Each coloring is passed to `on_found` as it is discovered.
pub fn find_colorings(
    session: &mut Session,
    problem: &ColoringProblem,
    max: usize,
    mut on_found: impl FnMut(&[ConstVal]),
) -> Result<Vec<Vec<ConstVal>>, DriverError> {
    session.assert_terms(&problem.limits)?;
    session.assert_terms(&problem.conflicts)?;
    let mut found = Vec::new();
    while found.len() < max {
        let outcome = session.check()?;
        if outcome.status != CheckStatus::Sat {
            break;
        }
        let model = outcome.model.ok_or_else(|| {
            outcome
                .error
                .unwrap_or_else(|| ReadError::MalformedModel("no model".to_owned()))
        })?;
        let coloring = problem
            .nodes
            .iter()
            .map(|v| {
                let name = v.as_var().expect("variable");
                model
                    .get(name)
                    .cloned()
                    .ok_or_else(|| ReadError::MalformedModel(format!("no value for {name}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        on_found(&coloring);
        session.assert_terms(&[problem.exclusion(&coloring)?])?;
        found.push(coloring);
    }
    Ok(found)
}
