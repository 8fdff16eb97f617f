//! Canonicalized (in)dependence statements.
//!
//! A statement stores a polarity and three mutually disjoint node sets
//! `(X, Y, Z)` with `X` and `Y` non-empty. The two sides are kept ordered so
//! that the lexicographically smaller set comes first; this quotients the
//! state space by symmetry, so the closure engine never has to fire an
//! explicit symmetry rule.

use alloc::format;
use core::fmt;

use crate::graph::VarSet;
use crate::sep::QueryError;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Polarity {
    Dependence,
    Independence,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Statement {
    polarity: Polarity,
    x: VarSet,
    y: VarSet,
    z: VarSet,
}

impl Statement {
    /// Builds a canonical statement; rejects empty sides and overlaps.
    pub fn new(polarity: Polarity, x: VarSet, y: VarSet, z: VarSet) -> Result<Self, QueryError> {
        if x.is_empty() {
            return Err(QueryError::EmptySide { side: "X" });
        }
        if y.is_empty() {
            return Err(QueryError::EmptySide { side: "Y" });
        }
        for (s, t) in [(&x, &y), (&x, &z), (&y, &z)] {
            if let Some(v) = s.iter().find(|&v| t.contains(v)) {
                return Err(QueryError::Overlap {
                    node: format!("#{}", v.index()),
                });
            }
        }
        let (x, y) = if y < x { (y, x) } else { (x, y) };
        Ok(Statement { polarity, x, y, z })
    }

    pub fn dependence(x: VarSet, y: VarSet, z: VarSet) -> Result<Self, QueryError> {
        Statement::new(Polarity::Dependence, x, y, z)
    }

    pub fn independence(x: VarSet, y: VarSet, z: VarSet) -> Result<Self, QueryError> {
        Statement::new(Polarity::Independence, x, y, z)
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn x(&self) -> &VarSet {
        &self.x
    }

    pub fn y(&self) -> &VarSet {
        &self.y
    }

    pub fn z(&self) -> &VarSet {
        &self.z
    }

    /// The two sides as an (ordered-canonically) pair.
    pub fn sides(&self) -> (&VarSet, &VarSet) {
        (&self.x, &self.y)
    }

    /// Every node mentioned by the statement.
    pub fn mentioned(&self) -> VarSet {
        self.x.union(&self.y).union(&self.z)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.polarity {
            Polarity::Dependence => "!_||_",
            Polarity::Independence => "_||_",
        };
        let side = |s: &VarSet| {
            s.iter()
                .map(|v| format!("#{}", v.index()))
                .collect::<alloc::vec::Vec<_>>()
                .join(",")
        };
        write!(f, "{} {} {}", side(&self.x), op, side(&self.y))?;
        if !self.z.is_empty() {
            write!(f, " | {}", side(&self.z))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, set};
    use crate::graph::VarSet;

    #[test]
    fn sides_are_ordered_canonically() {
        let p1 = fixtures::p1();
        let ab = set(&p1, &["A", "B"]);
        let c = set(&p1, &["C"]);
        let s1 = Statement::dependence(c.clone(), ab.clone(), VarSet::empty()).unwrap();
        let s2 = Statement::dependence(ab.clone(), c.clone(), VarSet::empty()).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.x(), &ab);
        assert_eq!(s1.y(), &c);
    }

    #[test]
    fn rejects_overlap_and_empty() {
        let p1 = fixtures::p1();
        let a = set(&p1, &["A"]);
        let ab = set(&p1, &["A", "B"]);
        assert!(matches!(
            Statement::dependence(a.clone(), ab, VarSet::empty()),
            Err(QueryError::Overlap { .. })
        ));
        assert!(matches!(
            Statement::dependence(VarSet::empty(), a.clone(), VarSet::empty()),
            Err(QueryError::EmptySide { side: "X" })
        ));
        assert!(matches!(
            Statement::dependence(a.clone(), a.clone(), set(&p1, &["C"])),
            Err(QueryError::Overlap { .. })
        ));
    }
}
