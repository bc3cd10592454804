// SPDX-License-Identifier: Apache-2.0

use std::fmt;

/// The type of a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Bool,
    Int,
    Real,
    /// Fixed-size bitvector. The width is at least 1; use [`Sort::bitvec`]
    /// to construct one with the width checked.
    BitVec(u32),
}

impl Sort {
    /// Returns `None` for a zero width.
    pub fn bitvec(width: u32) -> Option<Sort> {
        (width >= 1).then_some(Sort::BitVec(width))
    }

    pub fn is_bool(self) -> bool {
        self == Sort::Bool
    }

    pub fn is_numeric(self) -> bool {
        matches!(self, Sort::Int | Sort::Real)
    }

    pub fn bv_width(self) -> Option<u32> {
        match self {
            Sort::BitVec(w) => Some(w),
            _ => None,
        }
    }
}

/// Renders the SMT-LIB spelling of the sort.
impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Bool => f.write_str("Bool"),
            Sort::Int => f.write_str("Int"),
            Sort::Real => f.write_str("Real"),
            Sort::BitVec(w) => write!(f, "(_ BitVec {w})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_width_rejected() {
        assert_eq!(Sort::bitvec(0), None);
        assert_eq!(Sort::bitvec(8), Some(Sort::BitVec(8)));
    }

    #[test]
    fn display() {
        assert_eq!(Sort::Bool.to_string(), "Bool");
        assert_eq!(Sort::BitVec(1).to_string(), "(_ BitVec 1)");
    }
}
