use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fplinalg::{is_prime, FpMatrix, FpPoly, IrreducibleSieve, ModuleType, Partition};
use crate::submodcount::centralizer_order;

/// prod_{i<d} (p^d - p^i).
pub fn gl_order(d: usize, p: u32) -> BigInt {
    let p = BigInt::from(p);
    let pd = p.pow(d as u32);
    (0..d as u32).map(|i| &pd - p.pow(i)).product()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjClass {
    pub rep: FpMatrix,
    pub mtype: ModuleType,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub size: BigInt,
}

fn check_params(d: usize, p: u32) -> Result<()> {
    if !is_prime(u64::from(p)) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if d == 0 {
        return Err(Error::invalid("d must be positive"));
    }
    Ok(())
}

/// All module types of dimension d without the factor t, one per class of GL(d,p).
pub fn invertible_module_types(d: usize, p: u32, budget: &Budget) -> Result<Vec<ModuleType>> {
    check_params(d, p)?;
    let sieve = IrreducibleSieve::new(p, d)?;
    let t = FpPoly::t(p);
    let polys: Vec<FpPoly> = sieve.up_to(d).filter(|f| **f != t).cloned().collect();
    let mut out = Vec::new();
    let mut cur = BTreeMap::new();
    rec(&polys, 0, d, &mut cur, &mut out, p, budget.max_classes)?;
    Ok(out)
}

fn rec(
    polys: &[FpPoly],
    i: usize,
    remaining: usize,
    cur: &mut BTreeMap<FpPoly, Partition>,
    out: &mut Vec<ModuleType>,
    p: u32,
    cap: u64,
) -> Result<()> {
    if remaining == 0 {
        if out.len() as u64 >= cap {
            return Err(Error::limit("conjugacy classes", format!("more than {cap}"), cap));
        }
        out.push(ModuleType::new(p, cur.clone())?);
        return Ok(());
    }
    if i == polys.len() {
        return Ok(());
    }
    let f = &polys[i];
    rec(polys, i + 1, remaining, cur, out, p, cap)?;
    let deg = f.degree();
    for k in 1..=remaining / deg {
        for mu in Partition::all_of(k as u32) {
            cur.insert(f.clone(), mu);
            rec(polys, i + 1, remaining - deg * k, cur, out, p, cap)?;
        }
        cur.remove(f);
    }
    Ok(())
}

/// Conjugacy classes of GL(d,p) with block-companion representatives.
pub fn conjugacy_classes(d: usize, p: u32, budget: &Budget) -> Result<Vec<ConjClass>> {
    let order = gl_order(d, p);
    let mut total = BigInt::zero();
    let mut out = Vec::new();
    for mtype in invertible_module_types(d, p, budget)? {
        let c = centralizer_order(&mtype)?;
        let (size, rem) = order.div_rem(&c);
        if !rem.is_zero() {
            return Err(Error::Internal(format!("centralizer order {c} of {mtype} does not divide |GL|")));
        }
        total += &size;
        out.push(ConjClass {
            rep: mtype.representative(),
            mtype,
            size,
        });
    }
    if total != order {
        return Err(Error::Internal(format!("class sizes sum to {total}, expected {order}")));
    }
    Ok(out)
}

/// Generators of GL(d,p): the adjacent elementary transvections and diag(w,1,..,1)
/// for a primitive root w.
pub fn gl_generators(d: usize, p: u32) -> Vec<FpMatrix> {
    let mut gens = Vec::new();
    if p > 2 {
        let w = primitive_root(p);
        let mut m = FpMatrix::identity(p, d);
        m.set(0, 0, w);
        gens.push(m);
    }
    for i in 0..d.saturating_sub(1) {
        let mut a = FpMatrix::identity(p, d);
        a.set(i, i + 1, 1);
        gens.push(a);
        let mut b = FpMatrix::identity(p, d);
        b.set(i + 1, i, 1);
        gens.push(b);
    }
    if gens.is_empty() {
        gens.push(FpMatrix::identity(p, d));
    }
    gens
}

fn primitive_root(p: u32) -> u32 {
    let n = p - 1;
    let mut factors = Vec::new();
    let mut m = n;
    let mut f = 2;
    while f * f <= m {
        if m.is_multiple_of(f) {
            factors.push(f);
            while m.is_multiple_of(f) {
                m /= f;
            }
        }
        f += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&q| crate::fplinalg::matrix::pow_mod(g, n / q, p) != 1)
        })
        .unwrap_or(1)
}

/// Independent oracle: partitions GL(d,p) into conjugacy classes by closing
/// each element under conjugation by generators. Returns the sorted class sizes.
pub fn brute_class_sizes(d: usize, p: u32) -> Vec<u64> {
    let all = crate::fplinalg::all_gl(d, p);
    let index: std::collections::HashMap<Vec<u32>, usize> =
        all.iter().enumerate().map(|(i, m)| (m.data().to_vec(), i)).collect();
    let gens: Vec<(FpMatrix, FpMatrix)> = gl_generators(d, p)
        .into_iter()
        .map(|g| {
            let gi = g.inverse().expect("generator invertible");
            (g, gi)
        })
        .collect();
    let mut seen = vec![false; all.len()];
    let mut sizes = Vec::new();
    for start in 0..all.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut size = 0u64;
        while let Some(i) = stack.pop() {
            size += 1;
            for (g, gi) in &gens {
                let c = gi.mul_unchecked(&all[i]).mul_unchecked(g);
                let j = index[c.data()];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 2), BigInt::from(6));
        assert_eq!(gl_order(3, 2), BigInt::from(168));
        assert_eq!(gl_order(2, 3), BigInt::from(48));
        assert_eq!(gl_order(1, 5), BigInt::from(4));
    }

    #[test]
    fn class_examples() {
        let b = Budget::default();
        let mut sizes: Vec<BigInt> = conjugacy_classes(2, 2, &b).unwrap().into_iter().map(|c| c.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)]);
        assert_eq!(conjugacy_classes(3, 2, &b).unwrap().len(), 6);
        assert_eq!(conjugacy_classes(2, 3, &b).unwrap().len(), 8);
    }

    #[test]
    fn classes_match_brute_partition() {
        let b = Budget::default();
        for (d, p) in [(2, 2), (3, 2), (2, 3), (3, 3), (2, 5)] {
            let mut ours: Vec<u64> = conjugacy_classes(d, p, &b)
                .unwrap()
                .iter()
                .map(|c| u64::try_from(&c.size).unwrap())
                .collect();
            ours.sort_unstable();
            assert_eq!(ours, brute_class_sizes(d, p), "d={d} p={p}");
        }
    }

    #[test]
    fn generators_generate() {
        for (d, p) in [(2usize, 2u32), (2, 3), (3, 2), (2, 5), (3, 3)] {
            let gens = gl_generators(d, p);
            let mut seen = std::collections::HashSet::new();
            let id = FpMatrix::identity(p, d);
            seen.insert(id.clone());
            let mut stack = vec![id];
            while let Some(m) = stack.pop() {
                for g in &gens {
                    let x = m.mul_unchecked(g);
                    if seen.insert(x.clone()) {
                        stack.push(x);
                    }
                }
            }
            assert_eq!(BigInt::from(seen.len()), gl_order(d, p), "d={d} p={p}");
        }
    }
}
