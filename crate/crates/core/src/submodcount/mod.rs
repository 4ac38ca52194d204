//! Submodule counts for F_p<g>-modules, centralizer orders, and the bounds on
//! the number of submodules of a non-scalar module.

mod bounds;
mod brute;

pub use bounds::{bound_checks, layer_bound_check, BoundKind, BoundReport};
pub use brute::{brute_centralizer_order, brute_invariant_subspaces};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fplinalg::{module_type, FpMatrix, IrreducibleSieve, ModuleType, Partition};
use crate::qcomb::gauss;

/// A module of type alpha' over a DVR with residue field of order q, and a
/// submodule type beta'. Both partitions are stored unconjugated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypePair {
    pub q: u64,
    pub alpha: Partition,
    pub beta: Partition,
}

impl TypePair {
    pub fn new(q: u64, alpha: Partition, beta: Partition) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid(format!("residue field order {q} is too small")));
        }
        if !alpha.contains(&beta) {
            return Err(Error::invalid(format!("{beta} is not contained in {alpha}")));
        }
        Ok(TypePair { q, alpha, beta })
    }
}

/// S(alpha', beta', q) = prod_i [alpha_i - beta_{i+1}, beta_i - beta_{i+1}]_q q^(beta_{i+1}(alpha_i - beta_i)).
pub fn count_by_type(tp: &TypePair) -> Result<BigInt> {
    if !tp.alpha.contains(&tp.beta) {
        return Err(Error::invalid(format!("{} is not contained in {}", tp.beta, tp.alpha)));
    }
    let mut out = BigInt::one();
    let q = BigInt::from(tp.q);
    for i in 0..tp.beta.len() {
        let a = i64::from(tp.alpha.part(i));
        let b = i64::from(tp.beta.part(i));
        let b1 = i64::from(tp.beta.part(i + 1));
        out *= gauss(a - b1, b - b1, tp.q)?;
        out *= q.pow((b1 * (a - b)) as u32);
    }
    Ok(out)
}

/// Number of submodules of the f-primary module of type mu over q = p^deg f.
fn primary_total(q: u64, mu: &Partition) -> Result<BigInt> {
    let alpha = mu.conjugate();
    let mut total = BigInt::zero();
    for beta in alpha.subpartitions() {
        total += count_by_type(&TypePair {
            q,
            alpha: alpha.clone(),
            beta,
        })?;
    }
    Ok(total)
}

fn residue_order(p: u32, deg: usize) -> Result<u64> {
    u64::from(p)
        .checked_pow(deg as u32)
        .ok_or_else(|| Error::invalid("residue field too large"))
}

/// Total number of submodules of a module of the given type.
pub fn total_submodules(mu: &ModuleType) -> Result<BigInt> {
    let mut out = BigInt::one();
    for (f, part) in mu.assignments() {
        out *= primary_total(residue_order(mu.p(), f.degree())?, part)?;
    }
    Ok(out)
}

/// Number of g-invariant subspaces, via the module type of g.
pub fn fixed_subspace_count(g: &FpMatrix) -> Result<BigInt> {
    let sieve = IrreducibleSieve::new(g.p(), g.rows() / 2)?;
    fixed_subspace_count_with(g, &sieve)
}

/// As [`fixed_subspace_count`], reusing a sieve that reaches half the dimension.
pub fn fixed_subspace_count_with(g: &FpMatrix, sieve: &IrreducibleSieve) -> Result<BigInt> {
    total_submodules(&module_type(g, sieve)?)
}

/// Order of the centralizer in GL of a matrix of type mu. Per primary
/// component with partition lambda and residue field of order q it is
/// q^(sum lambda'_i^2 - sum m_i(m_i+1)/2) prod_i prod_{k<=m_i} (q^k - 1),
/// m_i being the multiplicity of i in lambda.
pub fn centralizer_order(mu: &ModuleType) -> Result<BigInt> {
    if !mu.is_invertible() {
        return Err(Error::invalid("centralizer orders are for invertible types"));
    }
    let mut out = BigInt::one();
    for (f, lam) in mu.assignments() {
        let q = residue_order(mu.p(), f.degree())?;
        let qb = BigInt::from(q);
        let conj = lam.conjugate();
        let mut e: i64 = conj.parts().iter().map(|&x| i64::from(x) * i64::from(x)).sum();
        let mut prod = BigInt::one();
        let max = lam.part(0);
        for i in 1..=max {
            let m = lam.multiplicity(i);
            e -= i64::from(m) * i64::from(m + 1) / 2;
            for k in 1..=m {
                prod *= qb.pow(k) - 1u32;
            }
        }
        out *= qb.pow(e as u32) * prod;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fplinalg::{all_gl, FpPoly};
    use std::collections::BTreeMap;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }
    fn m(p: u32, rows: &[&[i64]]) -> FpMatrix {
        FpMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }
    fn poly(p: u32, c: &[i64]) -> FpPoly {
        FpPoly::new(p, c.to_vec()).unwrap()
    }
    fn mt(p: u32, items: &[(&[i64], &[u32])]) -> ModuleType {
        let map: BTreeMap<_, _> = items.iter().map(|(f, l)| (poly(p, f), part(l))).collect();
        ModuleType::new(p, map).unwrap()
    }

    #[test]
    fn count_examples() {
        let tp = TypePair::new(2, part(&[2]), part(&[1])).unwrap();
        assert_eq!(count_by_type(&tp).unwrap(), BigInt::from(3));
        let tp = TypePair::new(3, part(&[1, 1]), part(&[1, 1])).unwrap();
        assert_eq!(count_by_type(&tp).unwrap(), BigInt::one());
        let s: BigInt = [part(&[]), part(&[1]), part(&[1, 1])]
            .into_iter()
            .map(|b| count_by_type(&TypePair::new(3, part(&[1, 1]), b).unwrap()).unwrap())
            .sum();
        assert_eq!(s, BigInt::from(3));
        assert!(TypePair::new(2, part(&[1]), part(&[2])).is_err());
        let bad = TypePair { q: 2, alpha: part(&[1]), beta: part(&[1, 1]) };
        assert!(count_by_type(&bad).is_err());
    }

    #[test]
    fn total_examples() {
        assert_eq!(total_submodules(&mt(2, &[(&[1, 1], &[1, 1, 1])])).unwrap(), BigInt::from(16));
        assert_eq!(total_submodules(&mt(2, &[(&[1, 1, 1], &[1])])).unwrap(), BigInt::from(2));
        assert_eq!(total_submodules(&mt(2, &[(&[1, 1], &[2])])).unwrap(), BigInt::from(3));
    }

    #[test]
    fn fixed_examples() {
        assert_eq!(fixed_subspace_count(&FpMatrix::identity(2, 4)).unwrap(), BigInt::from(67));
        let c = poly(2, &[1, 1, 1]).companion();
        assert_eq!(fixed_subspace_count(&c).unwrap(), BigInt::from(2));
        let g = FpMatrix::block_diag(2, &[c, FpMatrix::identity(2, 1)]);
        assert_eq!(fixed_subspace_count(&g).unwrap(), BigInt::from(4));
    }

    #[test]
    fn centralizer_examples() {
        let sieve = IrreducibleSieve::new(2, 2).unwrap();
        let order = |g: &FpMatrix| centralizer_order(&module_type(g, &sieve).unwrap()).unwrap();
        assert_eq!(order(&FpMatrix::identity(2, 2)), BigInt::from(6));
        assert_eq!(order(&m(2, &[&[1, 1], &[0, 1]])), BigInt::from(2));
        assert_eq!(order(&poly(2, &[1, 1, 1]).companion()), BigInt::from(3));
        assert!(centralizer_order(&mt(2, &[(&[0, 1], &[1])])).is_err());
    }

    #[test]
    fn centralizer_matches_commutant() {
        for (d, p) in [(2usize, 2u32), (2, 3), (3, 2), (3, 3)] {
            let sieve = IrreducibleSieve::new(p, d).unwrap();
            let gl = all_gl(d, p);
            let mut seen = std::collections::BTreeSet::new();
            for g in &gl {
                let t = module_type(g, &sieve).unwrap();
                if seen.insert(t.clone()) {
                    let formula = centralizer_order(&t).unwrap();
                    assert_eq!(formula, BigInt::from(brute_centralizer_order(g, &gl).unwrap()), "{t}");
                }
            }
        }
    }

    #[test]
    fn fixed_matches_brute_for_gl3_2() {
        let budget = crate::Budget::default();
        for g in all_gl(3, 2) {
            let f = fixed_subspace_count(&g).unwrap();
            assert_eq!(f, BigInt::from(brute_invariant_subspaces(&g, &budget).unwrap()));
        }
    }
}
