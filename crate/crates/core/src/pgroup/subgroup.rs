use std::collections::HashMap;

use crate::budget::Budget;
use crate::error::{Error, Result};

use super::quotient::QuotientGroup;

/// A subgroup of a quotient group, as a membership bitset plus generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    bits: Vec<u64>,
    elements: Vec<u32>,
    gens: Vec<u32>,
}

impl Subgroup {
    pub fn trivial(h: &QuotientGroup) -> Self {
        let mut bits = vec![0u64; h.order().div_ceil(64)];
        bits[0] |= 1;
        Subgroup {
            bits,
            elements: vec![0],
            gens: Vec::new(),
        }
    }

    pub fn whole(h: &QuotientGroup) -> Self {
        Self::generated(h, &h.generators())
    }

    pub fn contains(&self, a: u32) -> bool {
        self.bits[a as usize / 64] >> (a % 64) & 1 == 1
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }
    pub fn gens(&self) -> &[u32] {
        &self.gens
    }
    pub fn key(&self) -> &[u64] {
        &self.bits
    }

    fn insert(&mut self, a: u32) -> bool {
        let (w, b) = (a as usize / 64, a % 64);
        if self.bits[w] >> b & 1 == 1 {
            return false;
        }
        self.bits[w] |= 1 << b;
        self.elements.push(a);
        true
    }

    /// <S, x>.
    pub fn extended(&self, h: &QuotientGroup, xs: &[u32]) -> Subgroup {
        let mut out = self.clone();
        let new: Vec<u32> = xs.iter().copied().filter(|&x| !self.contains(x)).collect();
        if new.is_empty() {
            return out;
        }
        out.gens.extend(&new);
        // Right-multiply everything by every generator until closed.
        let gens = out.gens.clone();
        let mut i = 0;
        while i < out.elements.len() {
            let a = out.elements[i];
            // Old elements are already closed under the old generators.
            let use_gens: &[u32] = if i < self.elements.len() { &new } else { &gens };
            for &g in use_gens {
                let y = h.mul(a, g);
                out.insert(y);
            }
            i += 1;
        }
        out
    }

    pub fn generated(h: &QuotientGroup, gens: &[u32]) -> Subgroup {
        Subgroup::trivial(h).extended(h, gens)
    }

    /// Smallest normal subgroup containing S and xs.
    pub fn normal_closure(&self, h: &QuotientGroup, xs: &[u32]) -> Subgroup {
        let hg = h.generators();
        let mut cur = self.extended(h, xs);
        loop {
            let mut add = Vec::new();
            for &s in cur.gens() {
                for &t in &hg {
                    let c = h.conj(s, t);
                    if !cur.contains(c) && !add.contains(&c) {
                        add.push(c);
                    }
                }
            }
            if add.is_empty() {
                return cur;
            }
            cur = cur.extended(h, &add);
        }
    }

    pub fn is_normal(&self, h: &QuotientGroup) -> bool {
        let hg = h.generators();
        self.gens
            .iter()
            .all(|&s| hg.iter().all(|&t| self.contains(h.conj(s, t))))
    }

    pub fn intersection_order(&self, o: &Subgroup) -> usize {
        self.bits
            .iter()
            .zip(&o.bits)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subgroup_of(&self, o: &Subgroup) -> bool {
        self.bits.iter().zip(&o.bits).all(|(a, b)| a & !b == 0)
    }
}

/// log_p of a power of p.
pub fn log_p(n: usize, p: u32) -> usize {
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        debug_assert_eq!(m % p as usize, 0);
        m /= p as usize;
        k += 1;
    }
    k
}

/// The lower p-series H = H_1 > H_2 > ... > H_{n+1} = 1, each term computed
/// as the normal closure of p-th powers of H_i and commutators [H_i, H].
#[derive(Debug, Clone)]
pub struct LowerPSeries {
    pub terms: Vec<Subgroup>,
    /// dims[i] = dim H_{i+1}/H_{i+2}.
    pub dims: Vec<usize>,
}

impl LowerPSeries {
    pub fn length(&self) -> usize {
        self.dims.len()
    }
}

pub fn lower_p_series(h: &QuotientGroup) -> LowerPSeries {
    let p = h.p();
    let hg = h.generators();
    let mut terms = vec![Subgroup::whole(h)];
    loop {
        let cur = terms.last().unwrap();
        if cur.order() == 1 {
            break;
        }
        let mut seeds = Vec::new();
        for &x in cur.elements() {
            seeds.push(h.pow(x, u64::from(p)));
            for &t in &hg {
                seeds.push(h.comm(x, t));
            }
        }
        seeds.sort_unstable();
        seeds.dedup();
        let next = Subgroup::trivial(h).normal_closure(h, &seeds);
        terms.push(next);
    }
    let dims = terms
        .windows(2)
        .map(|w| log_p(w[0].order() / w[1].order(), p))
        .collect();
    LowerPSeries { terms, dims }
}

/// All subgroups, by breadth-first extension; an oracle for small groups.
pub fn all_subgroups(h: &QuotientGroup, budget: &Budget) -> Result<Vec<Subgroup>> {
    if h.order() as u64 > budget.max_subgroup_order {
        return Err(Error::limit("subgroup enumeration", h.order(), budget.max_subgroup_order));
    }
    enumerate_closed(h, |s, x| s.extended(h, &[x]))
}

/// All normal subgroups, by breadth-first normal closure.
pub fn normal_subgroups(h: &QuotientGroup, budget: &Budget) -> Result<Vec<Subgroup>> {
    if h.order() as u64 > budget.max_subgroup_order {
        return Err(Error::limit("normal subgroup enumeration", h.order(), budget.max_subgroup_order));
    }
    enumerate_closed(h, |s, x| s.normal_closure(h, &[x]))
}

fn enumerate_closed(
    h: &QuotientGroup,
    step: impl Fn(&Subgroup, u32) -> Subgroup,
) -> Result<Vec<Subgroup>> {
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    let start = Subgroup::trivial(h);
    seen.insert(start.key().to_vec(), 0);
    let mut list = vec![start];
    let mut i = 0;
    while i < list.len() {
        let s = list[i].clone();
        // <S, y> only depends on the coset yS.
        let mut done = vec![false; h.order()];
        for x in 0..h.order() as u32 {
            if done[x as usize] || s.contains(x) {
                continue;
            }
            for &e in s.elements() {
                done[h.mul(x, e) as usize] = true;
            }
            let t = step(&s, x);
            if !seen.contains_key(t.key()) {
                seen.insert(t.key().to_vec(), list.len());
                list.push(t);
            }
        }
        i += 1;
    }
    list.sort_by_key(|s| s.order());
    Ok(list)
}
