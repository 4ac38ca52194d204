use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::FpMatrix;
use super::partition::Partition;
use super::poly::{charpoly, factor_poly, FpPoly, IrreducibleSieve};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// The isomorphism type of F_p^m as a module over F_p[t] with t acting by a
/// matrix: for each monic irreducible f, the partition mu(f) of the f-primary part.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleType {
    p: u32,
    assignments: BTreeMap<FpPoly, Partition>,
}

impl fmt::Debug for ModuleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ModuleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .assignments
            .iter()
            .map(|(poly, mu)| format!("{poly} -> {mu}"))
            .collect();
        write!(f, "{{{}}}", s.join(", "))
    }
}

impl ModuleType {
    pub fn new(p: u32, assignments: BTreeMap<FpPoly, Partition>) -> Result<Self> {
        for (f, mu) in &assignments {
            if f.p() != p || !f.is_monic() || f.degree() == 0 {
                return Err(Error::invalid(format!("{f} is not a monic non-constant polynomial over F_{p}")));
            }
            if mu.is_empty() {
                return Err(Error::invalid("empty partitions are not stored"));
            }
        }
        Ok(ModuleType { p, assignments })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn assignments(&self) -> &BTreeMap<FpPoly, Partition> {
        &self.assignments
    }

    /// Sum of deg(f) |mu(f)|.
    pub fn dimension(&self) -> usize {
        self.assignments
            .iter()
            .map(|(f, mu)| f.degree() * mu.size() as usize)
            .sum()
    }

    /// True when the polynomial t carries no partition, i.e. the matrix is invertible.
    pub fn is_invertible(&self) -> bool {
        !self.assignments.contains_key(&FpPoly::t(self.p))
    }

    /// Block-diagonal matrix with a companion block of f^k for each part k of mu(f).
    pub fn representative(&self) -> FpMatrix {
        let mut blocks = Vec::new();
        for (f, mu) in &self.assignments {
            for &k in mu.parts() {
                blocks.push(f.pow(k).companion());
            }
        }
        FpMatrix::block_diag(self.p, &blocks)
    }
}

/// Nullities of f(g)^k for k = 0, 1, ..., until they stabilise.
pub fn nullity_sequence(g: &FpMatrix, f: &FpPoly) -> Vec<usize> {
    let h = f.eval_matrix(g);
    let mut seq = vec![0usize];
    let mut pw = FpMatrix::identity(g.p(), g.rows());
    loop {
        pw = pw.mul_unchecked(&h);
        let nl = pw.nullity();
        if nl == *seq.last().unwrap() {
            break;
        }
        seq.push(nl);
    }
    seq
}

/// Classifies g as an F_p[t]-module. The conjugate of mu(f) has k-th part
/// (nullity f(g)^k - nullity f(g)^(k-1)) / deg f.
pub fn module_type(g: &FpMatrix, sieve: &IrreducibleSieve) -> Result<ModuleType> {
    if !g.is_square() {
        return Err(Error::invalid("module type of a non-square matrix"));
    }
    let p = g.p();
    if g.rows() == 0 {
        return Ok(ModuleType {
            p,
            assignments: BTreeMap::new(),
        });
    }
    let cp = charpoly(g)?;
    let factors = factor_poly(&cp, sieve)?;
    let mut assignments = BTreeMap::new();
    for (f, mult) in factors {
        let deg = f.degree();
        let seq = nullity_sequence(g, &f);
        if *seq.last().unwrap() != deg * mult as usize {
            return Err(Error::Internal(format!(
                "generalised eigenspace of {f} has dimension {} but multiplicity is {mult}",
                seq.last().unwrap()
            )));
        }
        let conj: Vec<u32> = seq
            .windows(2)
            .map(|w| {
                let diff = w[1] - w[0];
                debug_assert_eq!(diff % deg, 0);
                (diff / deg) as u32
            })
            .collect();
        let conj = Partition::new(conj)
            .map_err(|e| Error::Internal(format!("nullity jumps not decreasing: {e}")))?;
        assignments.insert(f, conj.conjugate());
    }
    Ok(ModuleType { p, assignments })
}

/// Some(c) iff g = c I.
pub fn scalar_of(g: &FpMatrix) -> Option<u32> {
    if !g.is_square() {
        return None;
    }
    let n = g.rows();
    if n == 0 {
        return Some(1);
    }
    let c = g.get(0, 0);
    for i in 0..n {
        for j in 0..n {
            if g.get(i, j) != if i == j { c } else { 0 } {
                return None;
            }
        }
    }
    Some(c)
}

/// Whether gW = W.
pub fn is_invariant(g: &FpMatrix, w: &Subspace) -> Result<bool> {
    Ok(&w.image(g)? == w)
}
