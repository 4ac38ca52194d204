use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::group::{Class2Element, Class2Group};
use super::numnorms::{format_uvec, normal_subgroup_census};
use super::quotient::QuotientGroup;
use super::subgroup::{lower_p_series, Subgroup};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fplinalg::{all_gl, FpMatrix, Subspace};
use crate::freelie::LayerModule;

/// A homomorphism G/L -> target given by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hom {
    pub images: Vec<u32>,
    /// Induced map on Frattini quotients; column i is the image of y_i.
    pub frattini: FpMatrix,
    /// Invertible Frattini map between groups of equal order.
    pub is_automorphism: bool,
}

/// Value of the normal-form word x of G at the given images.
pub fn eval_word(target: &QuotientGroup, images: &[u32], x: &Class2Element) -> u32 {
    let g = target.group();
    let mut acc = target.identity();
    for (i, &v) in x.e.iter().enumerate() {
        acc = target.mul(acc, target.pow(images[i], u64::from(v)));
    }
    for (k, &(i, j)) in g.pairs().iter().enumerate() {
        if x.c[k] != 0 {
            let c = target.comm(images[j], images[i]);
            acc = target.mul(acc, target.pow(c, u64::from(x.c[k])));
        }
    }
    acc
}

/// Every tuple of the target defines a homomorphism from G; it factors
/// through G/L iff each basis element of L maps to the identity.
pub fn hom_from_images(
    source_kernel: &Subspace,
    target: &QuotientGroup,
    images: &[u32],
) -> Result<Option<Hom>> {
    let g = target.group();
    if images.len() != g.d() {
        return Err(Error::invalid(format!("need {} images, got {}", g.d(), images.len())));
    }
    if images.iter().any(|&a| a as usize >= target.order()) {
        return Err(Error::invalid("image index out of range"));
    }
    if source_kernel.p() != g.p() || source_kernel.ambient_dim() != g.d2() {
        return Err(Error::invalid("kernel does not live in the second layer of G"));
    }
    let kills = source_kernel
        .basis()
        .to_rows()
        .iter()
        .all(|z| eval_word(target, images, &g.from_layer_coords(z)) == target.identity());
    if !kills {
        return Ok(None);
    }
    Ok(Some(make_hom(target, images, source_kernel.dim() == target.kernel().dim())))
}

fn make_hom(target: &QuotientGroup, images: &[u32], same_order: bool) -> Hom {
    let d = target.d();
    let mut m = FpMatrix::zeros(target.p(), d, d);
    for (i, &a) in images.iter().enumerate() {
        for (k, v) in target.frattini(a).into_iter().enumerate() {
            m.set(k, i, v);
        }
    }
    let inv = m.is_invertible();
    Hom {
        images: images.to_vec(),
        frattini: m,
        is_automorphism: inv && same_order,
    }
}

/// The endomorphism of H with the given generator images, if there is one.
pub fn endo_from_images(h: &QuotientGroup, images: &[u32]) -> Result<Option<Hom>> {
    hom_from_images(h.kernel(), h, images)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutDecomposition {
    #[serde(with = "crate::serde_util::bigint_str")]
    pub aut_order: BigInt,
    /// |K(G)/B(L)|, the automorphisms acting trivially on the Frattini quotient.
    #[serde(with = "crate::serde_util::bigint_str")]
    pub k_order: BigInt,
    /// |A(H)| = |N_GL(L)|.
    #[serde(with = "crate::serde_util::bigint_str")]
    pub a_group_order: BigInt,
    /// |B(L)| = |L|^d.
    #[serde(with = "crate::serde_util::bigint_str")]
    pub b_order: BigInt,
}

/// |{g in GL(d,p) : rho(g) L = L}| on the second layer.
pub fn normalizer_order(l: &Subspace, layer: &LayerModule) -> Result<u64> {
    if layer.n() != 2 || l.ambient_dim() != layer.dim() {
        return Err(Error::invalid("L must be a subspace of the second layer"));
    }
    let mut n = 0;
    for g in all_gl(layer.d(), layer.p()) {
        if l.image(&layer.rho(&g)?)? == *l {
            n += 1;
        }
    }
    Ok(n)
}

/// |Aut(G/L)| = |N_GL(L)| p^(d d_2) / p^(d dim L).
pub fn aut_order_with(h: &QuotientGroup, normalizer: u64) -> AutDecomposition {
    let g = h.group();
    let p = BigInt::from(g.p());
    let d = g.d() as u32;
    let k_g = p.pow(d * g.d2() as u32);
    let b = p.pow(d * h.kernel().dim() as u32);
    let k = &k_g / &b;
    let a = BigInt::from(normalizer);
    AutDecomposition {
        aut_order: &a * &k,
        k_order: k,
        a_group_order: a,
        b_order: b,
    }
}

pub fn aut_order(h: &QuotientGroup) -> Result<AutDecomposition> {
    let layer = LayerModule::new(h.d(), 2, h.p())?;
    Ok(aut_order_with(h, normalizer_order(h.kernel(), &layer)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteAut {
    pub tuples: u64,
    pub endomorphisms: u64,
    pub aut_order: u64,
    /// Automorphisms inducing the identity on the Frattini quotient.
    pub k_order: u64,
    /// The distinct induced Frattini matrices, i.e. A(H).
    pub a_group: Vec<FpMatrix>,
}

fn tuple_count(order: usize, d: usize, budget: &Budget) -> Result<u64> {
    let n = (order as u64)
        .checked_pow(d as u32)
        .filter(|&n| n <= budget.max_aut_tuples)
        .ok_or_else(|| {
            Error::limit("generator-tuple scan", format!("{order}^{d}"), budget.max_aut_tuples)
        })?;
    Ok(n)
}

fn tuple_at(mut idx: u64, order: usize, d: usize, out: &mut [u32]) {
    for slot in out.iter_mut().take(d).rev() {
        *slot = (idx % order as u64) as u32;
        idx /= order as u64;
    }
}

/// Scans every d-tuple of H.
pub fn brute_aut_order(h: &QuotientGroup, budget: &Budget) -> Result<BruteAut> {
    let d = h.d();
    let n = tuple_count(h.order(), d, budget)?;
    let mut images = vec![0u32; d];
    let (mut endos, mut auts, mut k) = (0u64, 0u64, 0u64);
    let mut a_group = BTreeSet::new();
    let id = FpMatrix::identity(h.p(), d);
    for t in 0..n {
        tuple_at(t, h.order(), d, &mut images);
        if let Some(hom) = endo_from_images(h, &images)? {
            endos += 1;
            if hom.is_automorphism {
                auts += 1;
                if hom.frattini == id {
                    k += 1;
                }
                a_group.insert(hom.frattini);
            }
        }
    }
    Ok(BruteAut {
        tuples: n,
        endomorphisms: endos,
        aut_order: auts,
        k_order: k,
        a_group: a_group.into_iter().collect(),
    })
}

/// Images of the generators under y_i -> prod_k y_k^(g_ki), in the target.
pub fn lifted_images(g: &FpMatrix, target: &QuotientGroup) -> Result<Vec<u32>> {
    let grp = target.group();
    if g.rows() != grp.d() || !g.is_square() || g.p() != grp.p() {
        return Err(Error::invalid("matrix does not act on the Frattini quotient"));
    }
    Ok((0..grp.d())
        .map(|i| {
            let mut acc = grp.identity();
            for k in 0..grp.d() {
                acc = grp.mul(&acc, &grp.pow(&grp.generator(k), u64::from(g.get(k, i))));
            }
            target.project(&acc)
        })
        .collect())
}

/// The isomorphism G/L -> G/L' induced by lifting g, when g maps L onto L'.
pub fn induced_isomorphism(h: &QuotientGroup, g: &FpMatrix, target: &QuotientGroup) -> Result<Option<Hom>> {
    let images = lifted_images(g, target)?;
    Ok(hom_from_images(h.kernel(), target, &images)?.filter(|m| m.is_automorphism))
}

/// Invariants of the isomorphism type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    pub layer_dims: Vec<usize>,
    pub center_order: usize,
    pub derived_order: usize,
    /// Number of x with x^p = 1.
    pub omega: usize,
    /// Size of the image of the p-th power map.
    pub power_image: usize,
    /// Element orders and how often they occur.
    pub element_orders: BTreeMap<u64, u64>,
    /// Normal subgroups bucketed by u-vector, when the group is small enough.
    pub normal_buckets: Option<BTreeMap<String, u64>>,
}

pub fn fingerprint(h: &QuotientGroup, budget: &Budget) -> Result<Fingerprint> {
    let p = u64::from(h.p());
    let gens = h.generators();
    let n = h.order() as u32;
    let center_order = (0..n)
        .filter(|&a| gens.iter().all(|&t| h.mul(a, t) == h.mul(t, a)))
        .count();
    let mut comms = Vec::new();
    for &a in &gens {
        for &b in &gens {
            comms.push(h.comm(a, b));
        }
    }
    let derived_order = Subgroup::trivial(h).normal_closure(h, &comms).order();
    let mut omega = 0;
    let mut powers = BTreeSet::new();
    let mut element_orders = BTreeMap::new();
    for a in 0..n {
        let ap = h.pow(a, p);
        if ap == 0 {
            omega += 1;
        }
        powers.insert(ap);
        let mut o = 1u64;
        let mut x = a;
        while x != 0 {
            x = h.pow(x, p);
            o *= p;
        }
        *element_orders.entry(o).or_insert(0) += 1;
    }
    let normal_buckets = if h.order() as u64 <= budget.max_subgroup_order {
        let c = normal_subgroup_census(h, budget)?;
        Some(c.buckets.iter().map(|(u, b)| (format_uvec(u), b.count)).collect())
    } else {
        None
    };
    Ok(Fingerprint {
        order: h.order(),
        layer_dims: lower_p_series(h).dims,
        center_order,
        derived_order,
        omega,
        power_image: powers.len(),
        element_orders,
        normal_buckets,
    })
}

/// Exhaustive search for an isomorphism h1 -> h2: a tuple of h2 with
/// invertible Frattini matrix on which the relations of h1 vanish.
pub fn find_isomorphism(h1: &QuotientGroup, h2: &QuotientGroup, budget: &Budget) -> Result<Option<Hom>> {
    if h1.group() != h2.group() {
        return Err(Error::invalid("both groups must be quotients of the same G"));
    }
    if h1.order() != h2.order() {
        return Ok(None);
    }
    let d = h1.d();
    let n = tuple_count(h2.order(), d, budget)?;
    let mut images = vec![0u32; d];
    for t in 0..n {
        tuple_at(t, h2.order(), d, &mut images);
        if let Some(hom) = hom_from_images(h1.kernel(), h2, &images)? {
            if hom.is_automorphism {
                return Ok(Some(hom));
            }
        }
    }
    Ok(None)
}

/// Fingerprints first, then exhaustive search.
pub fn are_isomorphic(h1: &QuotientGroup, h2: &QuotientGroup, budget: &Budget) -> Result<bool> {
    if fingerprint(h1, budget)? != fingerprint(h2, budget)? {
        return Ok(false);
    }
    Ok(find_isomorphism(h1, h2, budget)?.is_some())
}

/// The maps induced on layers of G: x -> x^p from G/G_2 to G_2 and
/// x -> [x, y_j], both in layer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerMaps {
    /// Columns are the p-th powers of the generators.
    pub pow: FpMatrix,
    pub pow_is_linear: bool,
    pub pow_rank: usize,
    /// Frattini vectors (r, s) with pow(r + s) != pow(r) + pow(s).
    pub pow_witness: Option<(Vec<u32>, Vec<u32>)>,
    pub fcom: Vec<FpMatrix>,
    pub fcom_linear: bool,
}

fn vectors(p: u32, d: usize) -> Vec<Vec<u32>> {
    (0..(p as u64).pow(d as u32))
        .map(|mut x| {
            let mut v = vec![0u32; d];
            for s in v.iter_mut().rev() {
                *s = (x % u64::from(p)) as u32;
                x /= u64::from(p);
            }
            v
        })
        .collect()
}

pub fn layer_maps(g: &Class2Group) -> LayerMaps {
    let (p, d, m) = (g.p(), g.d(), g.d2());
    let section = |r: &[u32]| Class2Element {
        e: r.to_vec(),
        c: vec![0; g.pairs().len()],
    };
    let coords = |x: &Class2Element| g.layer_coords(x).expect("value lies in G_2");
    let powf = |r: &[u32]| coords(&g.pow(&section(r), u64::from(p)));
    let comf = |r: &[u32], j: usize| coords(&g.comm(&section(r), &g.generator(j)));
    let to_matrix = |cols: Vec<Vec<u32>>| {
        let mut mat = FpMatrix::zeros(p, m, d);
        for (i, c) in cols.iter().enumerate() {
            for (k, &v) in c.iter().enumerate() {
                mat.set(k, i, v);
            }
        }
        mat
    };
    let unit = |i: usize| {
        let mut v = vec![0u32; d];
        v[i] = 1;
        v
    };
    let pow = to_matrix((0..d).map(|i| powf(&unit(i))).collect());
    let fcom: Vec<FpMatrix> = (0..d)
        .map(|j| to_matrix((0..d).map(|i| comf(&unit(i), j)).collect()))
        .collect();
    let add = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().zip(b).map(|(x, y)| (x + y) % p).collect() };
    let vs = vectors(p, d);
    let mut pow_witness = None;
    let mut fcom_linear = true;
    for r in &vs {
        for s in &vs {
            let rs = add(r, s);
            if pow_witness.is_none() && powf(&rs) != add(&powf(r), &powf(s)) {
                pow_witness = Some((r.clone(), s.clone()));
            }
            for j in 0..d {
                if comf(&rs, j) != add(&comf(r, j), &comf(s, j)) {
                    fcom_linear = false;
                }
            }
        }
    }
    LayerMaps {
        pow_rank: pow.rank(),
        pow,
        pow_is_linear: pow_witness.is_none(),
        pow_witness,
        fcom,
        fcom_linear,
    }
}
