use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition, parts weakly decreasing and positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("parts {parts:?} are not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Part i (zero-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition {
            parts: (1..=first)
                .map(|k| self.parts.iter().filter(|&&x| x >= k).count() as u32)
                .collect(),
        }
    }

    /// Multiplicity of the part value i.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&x| x == i).count() as u32
    }

    /// Componentwise containment after zero padding.
    pub fn contains(&self, beta: &Partition) -> bool {
        beta.len() <= self.len() && (0..beta.len()).all(|i| beta.part(i) <= self.part(i))
    }

    /// All partitions contained in this one.
    pub fn subpartitions(&self) -> Vec<Partition> {
        fn rec(alpha: &Partition, i: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition { parts: cur.clone() });
            if i == alpha.len() {
                return;
            }
            for v in 1..=cap.min(alpha.part(i)) {
                cur.push(v);
                rec(alpha, i + 1, v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, 0, u32::MAX, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of n, in lexicographically decreasing order of parts.
    pub fn all_of(n: u32) -> Vec<Partition> {
        fn rec(left: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for v in (1..=cap.min(left)).rev() {
                cur.push(v);
                rec(left - v, v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_is_involution() {
        for n in 0..10 {
            for lam in Partition::all_of(n) {
                assert_eq!(lam.conjugate().conjugate(), lam);
                assert_eq!(lam.conjugate().size(), n);
            }
        }
        let l = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(l.conjugate(), Partition::new(vec![2, 1, 1]).unwrap());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| Partition::all_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn subpartitions_are_contained() {
        let a = Partition::new(vec![2, 1]).unwrap();
        let subs = a.subpartitions();
        assert_eq!(subs.len(), 5); // (), (1), (2), (1,1), (2,1)
        assert!(subs.iter().all(|b| a.contains(b)));
        assert!(Partition::new(vec![1, 2]).is_err());
    }
}
