//! Root sequences: strictly decreasing integer tuples indexing supernatural
//! generators and regularity data. Conceptually extended by +inf on the left
//! and -inf on the right, which is how the termwise order treats unequal
//! lengths.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootSequence(Vec<i64>);

impl RootSequence {
    pub fn new(roots: Vec<i64>) -> Result<Self> {
        for w in roots.windows(2) {
            if w[0] <= w[1] {
                return Err(Error::Invalid(format!(
                    "root sequence must be strictly decreasing, got {} before {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(RootSequence(roots))
    }

    pub fn empty() -> Self {
        RootSequence(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// 0-based access; index len() and beyond reads as None (-inf).
    pub fn get(&self, i: usize) -> Option<i64> {
        self.0.get(i).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied()
    }

    /// All roots shifted down by `a` (the table twist γ(d) -> γ(d+a) moves
    /// roots z -> z - a).
    pub fn shifted(&self, a: i64) -> RootSequence {
        RootSequence(self.0.iter().map(|z| z - a).collect())
    }

    /// Termwise comparison with -inf padding. None when incomparable.
    pub fn cmp_termwise(&self, other: &RootSequence) -> Option<Ordering> {
        let n = self.len().max(other.len());
        let mut seen_lt = false;
        let mut seen_gt = false;
        for i in 0..n {
            match (self.get(i), other.get(i)) {
                (Some(a), Some(b)) => match a.cmp(&b) {
                    Ordering::Less => seen_lt = true,
                    Ordering::Greater => seen_gt = true,
                    Ordering::Equal => {}
                },
                (Some(_), None) => seen_gt = true,
                (None, Some(_)) => seen_lt = true,
                (None, None) => {}
            }
            if seen_lt && seen_gt {
                return None;
            }
        }
        Some(match (seen_lt, seen_gt) {
            (false, false) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (true, true) => unreachable!(),
        })
    }

    /// Strict termwise decrease from `self` to `next`.
    pub fn strictly_above(&self, next: &RootSequence) -> bool {
        self.cmp_termwise(next) == Some(Ordering::Greater)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(RootSequence::empty());
        }
        let roots = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad root {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        RootSequence::new(roots)
    }
}

impl fmt::Display for RootSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, z) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{z}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_decreasing() {
        assert!(RootSequence::new(vec![0, 0]).is_err());
        assert!(RootSequence::new(vec![-2, 3]).is_err());
        assert!(RootSequence::new(vec![3, -2]).is_ok());
    }

    #[test]
    fn termwise_order_with_padding() {
        let a = RootSequence::new(vec![0, -2]).unwrap();
        let b = RootSequence::new(vec![0, -3]).unwrap();
        let c = RootSequence::new(vec![1, -3]).unwrap();
        let short = RootSequence::new(vec![0]).unwrap();
        assert!(a.strictly_above(&b));
        assert!(!b.strictly_above(&a));
        assert_eq!(a.cmp_termwise(&c), None); // 0 < 1 but -2 > -3
        assert!(a.strictly_above(&RootSequence::empty()));
        // shorter sequence pads with -inf: (0) < (0,-2)
        assert!(a.strictly_above(&short));
        assert_eq!(a.cmp_termwise(&a), Some(Ordering::Equal));
    }

    #[test]
    fn parse_display() {
        let z = RootSequence::parse("3,-2").unwrap();
        assert_eq!(z.to_string(), "(3,-2)");
        assert_eq!(RootSequence::parse("").unwrap(), RootSequence::empty());
        assert!(RootSequence::parse("1,2").is_err());
    }
}
