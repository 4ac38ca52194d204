use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::quotient::QuotientGroup;
use super::subgroup::{log_p, lower_p_series, normal_subgroups, LowerPSeries, Subgroup};
use crate::budget::Budget;
use crate::error::Result;
use crate::qcomb::gauss;

/// Per-bucket data: the number of normal subgroups with a given u-vector and
/// the componentwise minima of the layer dimensions of U_2 = U^p[U,U] and
/// U^p[U,H].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bucket {
    pub count: u64,
    pub v_min: Vec<usize>,
    pub w_min: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalCensus {
    pub p: u32,
    /// h_i = dim H_i/H_{i+1}.
    pub h: Vec<usize>,
    pub total: u64,
    #[serde(with = "uvec_map")]
    pub buckets: BTreeMap<Vec<usize>, Bucket>,
}

/// u-vectors serialize as "(u1,u2,...)" keys.
mod uvec_map {
    use super::Bucket;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<Vec<usize>, Bucket>, s: S) -> Result<S::Ok, S::Error> {
        let out: BTreeMap<String, &Bucket> = m.iter().map(|(k, v)| (super::format_uvec(k), v)).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Vec<usize>, Bucket>, D::Error> {
        let raw: BTreeMap<String, Bucket> = BTreeMap::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                let inner = k.trim_start_matches('(').trim_end_matches(')');
                let u = inner
                    .split(',')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.trim().parse::<usize>().map_err(D::Error::custom))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((u, v))
            })
            .collect()
    }
}

pub fn format_uvec(u: &[usize]) -> String {
    let s: Vec<String> = u.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(","))
}

/// dim((U cap H_i)H_{i+1}/H_{i+1}) for each i.
pub fn layer_profile(u: &Subgroup, series: &LowerPSeries, p: u32) -> Vec<usize> {
    series
        .terms
        .windows(2)
        .map(|w| log_p(u.intersection_order(&w[0]) / u.intersection_order(&w[1]), p))
        .collect()
}

/// U^p[U,U] (own = true) or U^p[U,H].
fn verbal(h: &QuotientGroup, u: &Subgroup, own: bool) -> Subgroup {
    let p = u64::from(h.p());
    let partners: Vec<u32> = if own { u.gens().to_vec() } else { h.generators() };
    let mut seeds = Vec::new();
    for &x in u.elements() {
        seeds.push(h.pow(x, p));
        for &t in &partners {
            seeds.push(h.comm(x, t));
        }
    }
    seeds.sort_unstable();
    seeds.dedup();
    Subgroup::trivial(h).normal_closure(h, &seeds)
}

/// Buckets every normal subgroup of H by its u-vector.
pub fn normal_subgroup_census(h: &QuotientGroup, budget: &Budget) -> Result<NormalCensus> {
    let p = h.p();
    let series = lower_p_series(h);
    let normals = normal_subgroups(h, budget)?;
    let mut buckets: BTreeMap<Vec<usize>, Bucket> = BTreeMap::new();
    for u in &normals {
        let uv = layer_profile(u, &series, p);
        let v = layer_profile(&verbal(h, u, true), &series, p);
        let w = layer_profile(&verbal(h, u, false), &series, p);
        let b = buckets.entry(uv).or_insert_with(|| Bucket {
            count: 0,
            v_min: v.clone(),
            w_min: w.clone(),
        });
        b.count += 1;
        for (a, x) in b.v_min.iter_mut().zip(&v) {
            *a = (*a).min(*x);
        }
        for (a, x) in b.w_min.iter_mut().zip(&w) {
            *a = (*a).min(*x);
        }
    }
    Ok(NormalCensus {
        p,
        h: series.dims.clone(),
        total: normals.len() as u64,
        buckets,
    })
}

/// [h_1, u_1]_p prod_{i>=2} [h_i - w_i, u_i - w_i]_p p^((sum_{j<i} u_j - v_j)(h_i - u_i)).
pub fn numnorms_bound(h: &[usize], u: &[usize], v: &[usize], w: &[usize], p: u32) -> Result<BigInt> {
    let q = u64::from(p);
    let mut out = gauss(h[0] as i64, u[0] as i64, q)?;
    let mut acc: i64 = 0;
    for i in 1..h.len() {
        acc += u[i - 1] as i64 - v[i - 1] as i64;
        let (hi, ui, wi) = (h[i] as i64, u[i] as i64, w[i] as i64);
        out *= gauss(hi - wi, ui - wi, q)?;
        let e = acc * (hi - ui);
        if e < 0 {
            return Err(crate::error::Error::invalid("v exceeds u in the bound"));
        }
        out *= BigInt::from(q).pow(e as u32);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumnormsRow {
    pub u: Vec<usize>,
    pub count: u64,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub bound_trivial: BigInt,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub bound_tight: BigInt,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumnormsReport {
    pub rows: Vec<NumnormsRow>,
    pub all_hold: bool,
    /// The vectors derived from the growth of commutators need lower
    /// p-length at least 3 and d >= 3; they never apply to this model.
    pub growth_vectors_applicable: bool,
}

/// Checks |S(H,u)| against the bound with v = w = 0 and with the observed
/// minima of each bucket.
pub fn check_numnorms(c: &NormalCensus) -> Result<NumnormsReport> {
    let zero = vec![0usize; c.h.len()];
    let mut rows = Vec::new();
    for (u, b) in &c.buckets {
        let bound_trivial = numnorms_bound(&c.h, u, &zero, &zero, c.p)?;
        let bound_tight = numnorms_bound(&c.h, u, &b.v_min, &b.w_min, c.p)?;
        let cnt = BigInt::from(b.count);
        let holds = cnt <= bound_trivial && cnt <= bound_tight;
        rows.push(NumnormsRow {
            u: u.clone(),
            count: b.count,
            bound_trivial,
            bound_tight,
            holds,
        });
    }
    Ok(NumnormsReport {
        all_hold: rows.iter().all(|r| r.holds),
        rows,
        growth_vectors_applicable: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::Class2Group;

    #[test]
    fn census_of_g22() {
        let b = Budget::default();
        let g = Class2Group::new(2, 2, &b).unwrap();
        let h = QuotientGroup::whole(&g).unwrap();
        let c = normal_subgroup_census(&h, &b).unwrap();
        assert_eq!(c.h, vec![2, 3]);
        assert_eq!(c.buckets[&vec![0, 0]].count, 1);
        assert_eq!(c.buckets[&vec![2, 3]].count, 1);
        // Every subspace of the central G_2 is normal.
        let central: u64 = (0..=3).map(|k| c.buckets.get(&vec![0, k]).map_or(0, |b| b.count)).sum();
        assert_eq!(central, 16);
        let r = check_numnorms(&c).unwrap();
        assert!(r.all_hold);
        let triv = r.rows.iter().find(|r| r.u == vec![0, 0]).unwrap();
        assert_eq!((triv.count, triv.bound_trivial.clone()), (1, BigInt::from(1)));
        let json = serde_json::to_string(&c).unwrap();
        let back: NormalCensus = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
