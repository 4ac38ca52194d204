use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::orbits::{explicit_orbit_census, CensusParams};
use crate::budget::Budget;
use crate::error::Result;
use crate::fplinalg::all_gl;
use crate::pgroup::{
    brute_aut_order, find_isomorphism, fingerprint, induced_isomorphism, normalizer_order, Class2Group,
    QuotientGroup,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionRow {
    pub kernel_dim: usize,
    pub group_order: usize,
    pub orbit_size: u64,
    pub stabilizer: u64,
    /// |N_GL(L)| on the second layer of G.
    pub normalizer: u64,
    /// |A(H)|, the Frattini matrices of all automorphisms found by brute force.
    pub a_order: u64,
    pub regular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub d: usize,
    pub p: u32,
    pub orbit_count: u64,
    pub isomorphism_classes: u64,
    /// Pairs of representatives whose fingerprints agree and needed a full search.
    pub searched_pairs: u64,
    pub pairwise_non_isomorphic: bool,
    /// Every L in an orbit gives a quotient isomorphic to the representative's.
    pub orbit_isomorphisms: bool,
    /// Regular orbit exactly when A(H) = 1 (and |A(H)| equals the stabilizer).
    pub regular_matches: bool,
    pub rows: Vec<BijectionRow>,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.pairwise_non_isomorphic
            && self.orbit_isomorphisms
            && self.regular_matches
            && self.isomorphism_classes == self.orbit_count
    }
}

/// Quotients G/L of the class-2 group over orbit representatives at n = 2.
pub fn bijection_check(d: usize, p: u32, budget: &Budget) -> Result<BijectionReport> {
    let params = CensusParams::new(d, 2, p)?;
    let census = explicit_orbit_census(params, budget)?;
    let layer = params.layer()?;
    let g = Class2Group::new(d, p, budget)?;
    let gl = all_gl(d, p);
    let mut quotients = Vec::new();
    let mut rows = Vec::new();
    let mut orbit_isomorphisms = true;
    let mut regular_matches = true;
    for o in &census.orbits {
        let h = QuotientGroup::new(&g, &o.rep)?;
        for m in &gl {
            let target = QuotientGroup::new(&g, &o.rep.image(&layer.rho(m)?)?)?;
            if induced_isomorphism(&h, m, &target)?.is_none() {
                orbit_isomorphisms = false;
            }
        }
        let brute = brute_aut_order(&h, budget)?;
        let a_order = brute.a_group.len() as u64;
        let normalizer = normalizer_order(&o.rep, &layer)?;
        let regular = o.stabilizer == 1;
        if regular != (a_order == 1) || a_order != o.stabilizer || normalizer != o.stabilizer {
            regular_matches = false;
        }
        rows.push(BijectionRow {
            kernel_dim: o.rep.dim(),
            group_order: h.order(),
            orbit_size: o.size,
            stabilizer: o.stabilizer,
            normalizer,
            a_order,
            regular,
        });
        quotients.push(h);
    }
    let mut by_print: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, h) in quotients.iter().enumerate() {
        let f = serde_json::to_string(&fingerprint(h, budget)?).expect("fingerprint serializes");
        by_print.entry(f).or_default().push(i);
    }
    let mut searched_pairs = 0;
    let mut classes = 0u64;
    let mut pairwise = true;
    for members in by_print.values() {
        // Greedy split of a fingerprint bucket into isomorphism classes.
        let mut reps: Vec<usize> = Vec::new();
        for &i in members {
            let mut found = false;
            for &j in &reps {
                searched_pairs += 1;
                if find_isomorphism(&quotients[i], &quotients[j], budget)?.is_some() {
                    found = true;
                    pairwise = false;
                    break;
                }
            }
            if !found {
                reps.push(i);
            }
        }
        classes += reps.len() as u64;
    }
    Ok(BijectionReport {
        d,
        p,
        orbit_count: census.orbit_count,
        isomorphism_classes: classes,
        searched_pairs,
        pairwise_non_isomorphic: pairwise,
        orbit_isomorphisms,
        regular_matches,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bijection_at_2_2() {
        let r = bijection_check(2, 2, &Budget::default()).unwrap();
        assert!(r.holds(), "{r:?}");
    }
}
