use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::classes::{conjugacy_classes, gl_generators, gl_order};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fplinalg::{rref_in_place, FpMatrix, IrreducibleSieve, Subspace, SubspaceIndexer};
use crate::freelie::LayerModule;
use crate::qcomb::galois;
use crate::submodcount::fixed_subspace_count_with;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusParams {
    pub p: u32,
    pub d: usize,
    pub n: usize,
}

impl CensusParams {
    pub fn new(d: usize, n: usize, p: u32) -> Result<Self> {
        if d < 2 || n < 1 {
            return Err(Error::invalid(format!("census needs d >= 2 and n >= 1, got d={d} n={n}")));
        }
        if !crate::fplinalg::is_prime(u64::from(p)) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(CensusParams { p, d, n })
    }

    pub fn layer(&self) -> Result<LayerModule> {
        LayerModule::new(self.d, self.n, self.p)
    }
}

/// Cauchy-Frobenius count of GL(d,p)-orbits on subspaces of the layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfCensus {
    pub params: CensusParams,
    pub layer_dim: usize,
    pub classes: usize,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub gl_order: BigInt,
    /// |C_{d,n}|, all subspaces of the layer.
    #[serde(with = "crate::serde_util::bigint_str")]
    pub c_count: BigInt,
    /// Sum over GL of the number of fixed subspaces.
    #[serde(with = "crate::serde_util::bigint_str")]
    pub fixed_sum: BigInt,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub orbit_count: BigInt,
}

pub fn orbit_count(params: CensusParams, budget: &Budget) -> Result<CfCensus> {
    let layer = params.layer()?;
    let m = layer.dim();
    let classes = conjugacy_classes(params.d, params.p, budget)?;
    let sieve = IrreducibleSieve::new(params.p, (m / 2).max(1))?;
    let terms: Vec<BigInt> = classes
        .par_iter()
        .map(|c| -> Result<BigInt> {
            let g = layer.rho(&c.rep)?;
            Ok(&c.size * fixed_subspace_count_with(&g, &sieve)?)
        })
        .collect::<Result<_>>()?;
    let fixed_sum: BigInt = terms.iter().sum();
    let order = gl_order(params.d, params.p);
    let (orbits, rem) = fixed_sum.div_rem(&order);
    if !rem.is_zero() {
        return Err(Error::Internal(format!(
            "Cauchy-Frobenius sum {fixed_sum} not divisible by |GL| = {order}"
        )));
    }
    Ok(CfCensus {
        params,
        layer_dim: m,
        classes: classes.len(),
        gl_order: order,
        c_count: galois(m as i64, u64::from(params.p))?,
        fixed_sum,
        orbit_count: orbits,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInfo {
    /// Smallest subspace of the orbit in the indexer order.
    pub rep: Subspace,
    pub size: u64,
    pub stabilizer: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitCensus {
    pub params: CensusParams,
    pub layer_dim: usize,
    pub gl_order: u64,
    pub total_subspaces: u64,
    pub orbit_count: u64,
    pub regular_count: u64,
    /// Stabilizer order -> number of orbits.
    pub stabilizer_orders: BTreeMap<u64, u64>,
    #[serde(skip)]
    pub orbits: Vec<OrbitInfo>,
}

/// Partitions all subspaces of the layer into orbits by closing under the
/// images of generators of GL(d,p).
pub fn explicit_orbit_census(params: CensusParams, budget: &Budget) -> Result<ExplicitCensus> {
    let layer = params.layer()?;
    let m = layer.dim();
    let p = params.p;
    let order = gl_order(params.d, p)
        .to_u64()
        .ok_or_else(|| Error::limit("explicit census", "|GL| above 2^64", u64::MAX))?;
    let gens: Vec<FpMatrix> = gl_generators(params.d, p)
        .iter()
        .map(|g| layer.rho(g))
        .collect::<Result<_>>()?;
    let total = galois(m as i64, u64::from(p))?;
    let ops = &total * BigInt::from(gens.len());
    if ops > BigInt::from(budget.max_census_ops) || total > BigInt::from(budget.max_subspaces) {
        return Err(Error::limit(
            format!("explicit orbit census of {m}-dim layer over F_{p}"),
            format!("{total} subspaces x {} generators", gens.len()),
            format!("{} ops, {} subspaces", budget.max_census_ops, budget.max_subspaces),
        ));
    }
    let idx = SubspaceIndexer::new(p, m)?;
    let total = idx.total();
    let mut seen = vec![0u64; (total as usize).div_ceil(64)];
    let mut orbits = Vec::new();
    let mut stack = Vec::new();
    let (mut basis, mut image) = (Vec::new(), Vec::new());
    for start in 0..total {
        if seen[(start / 64) as usize] >> (start % 64) & 1 == 1 {
            continue;
        }
        seen[(start / 64) as usize] |= 1 << (start % 64);
        stack.push(start);
        let mut size = 0u64;
        while let Some(s) = stack.pop() {
            size += 1;
            let k = idx.unrank_into(s, &mut basis);
            for g in &gens {
                image.clear();
                for r in 0..k {
                    let row = &basis[r * m..(r + 1) * m];
                    for i in 0..m {
                        let gr = g.row(i);
                        let mut acc = 0u64;
                        for (a, b) in gr.iter().zip(row) {
                            acc += u64::from(*a) * u64::from(*b);
                        }
                        image.push((acc % u64::from(p)) as u32);
                    }
                }
                rref_in_place(&mut image, m, p);
                let t = idx.rank_rref(&image);
                let (w, b) = ((t / 64) as usize, t % 64);
                if seen[w] >> b & 1 == 0 {
                    seen[w] |= 1 << b;
                    stack.push(t);
                }
            }
        }
        if order % size != 0 {
            return Err(Error::Internal(format!("orbit of size {size} does not divide |GL| = {order}")));
        }
        orbits.push(OrbitInfo {
            rep: idx.unrank(start),
            size,
            stabilizer: order / size,
        });
    }
    let covered: u64 = orbits.iter().map(|o| o.size).sum();
    if covered != total {
        return Err(Error::Internal(format!("orbits cover {covered} of {total} subspaces")));
    }
    let mut stabilizer_orders = BTreeMap::new();
    for o in &orbits {
        *stabilizer_orders.entry(o.stabilizer).or_insert(0) += 1;
    }
    Ok(ExplicitCensus {
        params,
        layer_dim: m,
        gl_order: order,
        total_subspaces: total,
        orbit_count: orbits.len() as u64,
        regular_count: orbits.iter().filter(|o| o.stabilizer == 1).count() as u64,
        stabilizer_orders,
        orbits,
    })
}

/// Number of g in GL(d,p) with rho(g) W = W, by scanning the group.
pub fn stabilizer_order(params: CensusParams, w: &Subspace) -> Result<u64> {
    let layer = params.layer()?;
    let mut n = 0;
    for g in crate::fplinalg::all_gl(params.d, params.p) {
        if w.image(&layer.rho(&g)?)? == *w {
            n += 1;
        }
    }
    Ok(n)
}
