//! The acceptance criteria as runnable checks.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::census::{
    bijection_check, census_report, explicit_orbit_census, orbit_count, regular_lower_bound, verify_est2,
    CensusParams, ExplicitMode,
};
use crate::error::{Error, Result};
use crate::fplinalg::{all_gl, brute_subspace_counts, random_gl, scalar_of, FpMatrix, IrreducibleSieve, Subspace};
use crate::freelie::{
    com_matrix, expand, lyndon_words, lyndon_words_by_filter, standard_bracketing, witt_dim, GrowthContext,
    LayerModule,
};
use crate::pgroup::{
    aut_order, brute_aut_order, check_numnorms, normal_subgroup_census, Class2Group, QuotientGroup,
};
use crate::qcomb::{galois, galois_bounds_check, gauss, theta_constants, wilf_coef_check, Verdict};
use crate::submodcount::{bound_checks, brute_invariant_subspaces, fixed_subspace_count_with, layer_bound_check, BoundKind};

/// Groups of criteria runnable on their own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Qcomb,
    Freelie,
    Submod,
    Pgroup,
    Census,
    All,
}

impl Suite {
    pub fn criteria(self) -> Vec<u8> {
        match self {
            Suite::Qcomb => vec![1, 2],
            Suite::Freelie => vec![3, 4],
            Suite::Submod => vec![5, 6],
            Suite::Pgroup => vec![8, 10],
            Suite::Census => vec![7, 9, 11, 12],
            Suite::All => (1..=12).collect(),
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "qcomb" => Suite::Qcomb,
            "freelie" => Suite::Freelie,
            "submod" => Suite::Submod,
            "pgroup" => Suite::Pgroup,
            "census" => Suite::Census,
            "all" => Suite::All,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
    pub limit_secs: u64,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {:>2} {:<22} {:>9.3}s / {}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms as f64 / 1000.0,
            self.limit_secs,
            self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub criteria: Vec<CriterionReport>,
    pub passed: bool,
}

pub const CRITERIA: [(u8, &str, u64); 12] = [
    (1, "q-combinatorics", 10),
    (2, "wilf-bounds", 5),
    (3, "free-lie", 60),
    (4, "growth", 120),
    (5, "submodule-formula", 600),
    (6, "fixed-space-bounds", 120),
    (7, "census-agreement", 300),
    (8, "automorphisms", 300),
    (9, "bijection", 600),
    (10, "normal-subgroups", 300),
    (11, "orbit-estimate", 600),
    (12, "regular-proportion", 900),
];

/// Runs one criterion, timing it against its limit.
pub fn run_criterion(id: u8, budget: &Budget) -> Result<CriterionReport> {
    let &(_, name, limit) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| Error::invalid(format!("no criterion {id}")))?;
    let start = Instant::now();
    let out = match id {
        1 => c1(),
        2 => c2(budget),
        3 => c3(),
        4 => c4(budget),
        5 => c5(budget),
        6 => c6(budget),
        7 => c7(budget),
        8 => c8(budget),
        9 => c9(budget),
        10 => c10(budget),
        11 => c11(budget),
        _ => c12(budget),
    };
    let elapsed = start.elapsed();
    let (ok, mut detail) = match out {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    let in_time = elapsed <= Duration::from_secs(limit);
    if !in_time {
        detail.push_str(" [over time limit]");
    }
    Ok(CriterionReport {
        id,
        name: name.to_string(),
        passed: ok && in_time,
        detail,
        elapsed_ms: elapsed.as_millis() as u64,
        limit_secs: limit,
    })
}

pub fn run_suite(suite: Suite, budget: &Budget, mut progress: impl FnMut(&CriterionReport)) -> Result<SuiteReport> {
    let mut criteria = Vec::new();
    for id in suite.criteria() {
        let r = run_criterion(id, budget)?;
        progress(&r);
        criteria.push(r);
    }
    let passed = criteria.iter().all(|c| c.passed);
    Ok(SuiteReport { criteria, passed })
}

type Outcome = Result<(bool, String)>;

fn fail(msg: String) -> Outcome {
    Ok((false, msg))
}

fn c1() -> Outcome {
    let mut checked = 0;
    for q in [2u32, 3] {
        for n in 0..=5usize {
            let brute = brute_subspace_counts(q, n);
            for (k, &c) in brute.iter().enumerate() {
                if gauss(n as i64, k as i64, u64::from(q))? != BigInt::from(c) {
                    return fail(format!("gauss({n},{k},{q}) disagrees with enumeration ({c})"));
                }
                checked += 1;
            }
        }
    }
    let g33 = galois(3, 3)?;
    let g42 = galois(4, 2)?;
    let ok = g33 == BigInt::from(28) && g42 == BigInt::from(67);
    Ok((ok, format!("{checked} coefficients match enumeration; G_3(3)={g33}, G_4(2)={g42}")))
}

fn c2(budget: &Budget) -> Outcome {
    let mut checks = 0;
    for q in [2u64, 3, 5] {
        let k = theta_constants(q, &budget.tol)?;
        for n in 0..=12i64 {
            for j in 0..=n {
                if wilf_coef_check(n, j, &k)? != Verdict::Holds {
                    return fail(format!("coefficient bound not certified at n={n} k={j} q={q}"));
                }
                checks += 1;
            }
            if n >= 1 {
                let r = galois_bounds_check(n, &k)?;
                if !r.all_hold() {
                    return fail(format!("Galois-number bounds not certified at n={n} q={q}: {r:?}"));
                }
                checks += 1;
            }
        }
    }
    let k = theta_constants(2, &budget.tol)?;
    let two = BigRational::from_integer(2.into());
    let three = BigRational::from_integer(3.into());
    let c_ok = k.c.lo > two && k.c.hi < BigRational::new(9.into(), 4.into());
    let d_ok = k.d.lo > three && k.d.hi < BigRational::new(7.into(), 2.into());
    Ok((
        c_ok && d_ok,
        format!("{checks} certified bounds; C(2) in [{:.9}, {:.9}], D(2) in [{:.9}, {:.9}]",
            k.c.lo.to_f64().unwrap_or(f64::NAN), k.c.hi.to_f64().unwrap_or(f64::NAN),
            k.d.lo.to_f64().unwrap_or(f64::NAN), k.d.hi.to_f64().unwrap_or(f64::NAN)),
    ))
}

fn c3() -> Outcome {
    for d in 1..=4u8 {
        for n in 1..=8usize {
            let w = lyndon_words(d, n);
            if w.len() as u64 != witt_dim(u64::from(d), n as u64) || w != lyndon_words_by_filter(d, n) {
                return fail(format!("Lyndon words of length {n} on {d} letters disagree with Witt"));
            }
        }
    }
    let mut tri = 0;
    for d in 1..=3u8 {
        for n in 1..=6usize {
            for w in lyndon_words(d, n) {
                let f = expand(&standard_bracketing(&w)?, 5);
                if f.least_term() != Some((&w, 1)) {
                    return fail(format!("expansion of b[{w}] is not unitriangular"));
                }
                tri += 1;
            }
        }
    }
    let mut maps = 0;
    for p in [2u32, 3] {
        for d in 2..=3u8 {
            for j in 1..=d {
                let m1 = com_matrix(j, 1, d, p)?;
                let ker = Subspace::canonicalize(&m1.kernel());
                let xj: Vec<u32> = (1..=d).map(|i| u32::from(i == j)).collect();
                if ker.dim() != 1 || !ker.contains_vector(&xj) {
                    return fail(format!("kernel of com_{j},1 is not spanned by x_{j} (d={d}, p={p})"));
                }
                for n in 2..=5 {
                    let m = com_matrix(j, n, d, p)?;
                    if m.rank() != m.cols() {
                        return fail(format!("com_{j},{n} not injective (d={d}, p={p})"));
                    }
                    maps += 1;
                }
            }
        }
    }
    Ok((true, format!("Witt counts d<=4 n<=8; {tri} unitriangular expansions; {maps} injective com maps")))
}

fn random_subspace(rng: &mut ChaCha8Rng, p: u32, m: usize, range: std::ops::Range<usize>) -> Result<Subspace> {
    let k = rng.gen_range(0..=range.len());
    let rows: Vec<Vec<i64>> = (0..k)
        .map(|_| {
            let mut v = vec![0i64; m];
            for i in range.clone() {
                v[i] = rng.gen_range(0..i64::from(p));
            }
            v
        })
        .collect();
    Subspace::span(p, m, &rows)
}

fn c4(budget: &Budget) -> Outcome {
    let per = budget.samples.max(200);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut configs = 0;
    let mut total = 0;
    for d in 3..=4usize {
        for n in 1..=4usize {
            for p in [2u32, 3] {
                let ctx = GrowthContext::new(d, n, p)?;
                let m = ctx.source().dim();
                for s in 0..per {
                    // Alternate full-support samples with samples inside one block.
                    let range = if s % 2 == 0 {
                        0..m
                    } else {
                        let b = (s as usize / 2) % ctx.source().blocks().len();
                        let off = ctx.source().offsets()[b];
                        off..off + ctx.source().block_dim(b)
                    };
                    let w = random_subspace(&mut rng, p, m, range)?;
                    let g = ctx.growth(&w)?;
                    if !g.grows() {
                        return fail(format!("dim(W + com W) = {} < 3/2 dim W = {} at d={d} n={n} p={p}",
                            g.dim_w_plus_com, g.dim_w));
                    }
                    total += 1;
                }
                configs += 1;
            }
        }
    }
    Ok((true, format!("{total} subspaces over {configs} configurations, {per} each, no failures")))
}

/// The matrices exercised by the submodule check: all of GL(m,2) for m <= 4
/// and random samples for the larger cases.
fn submodule_matrices(budget: &Budget) -> Vec<FpMatrix> {
    let mut out = Vec::new();
    for m in 1..=4 {
        out.extend(all_gl(m, 2));
    }
    let per = budget.samples.max(500);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ 0x5b);
    for (m, p) in [(5usize, 2u32), (3, 3), (4, 3)] {
        for _ in 0..per {
            out.push(random_gl(m, p, &mut rng));
        }
    }
    out
}

fn sieves() -> Result<Vec<IrreducibleSieve>> {
    Ok(vec![IrreducibleSieve::new(2, 5)?, IrreducibleSieve::new(3, 4)?])
}

fn sieve_for(s: &[IrreducibleSieve], p: u32) -> &IrreducibleSieve {
    if p == 2 {
        &s[0]
    } else {
        &s[1]
    }
}

fn c5(budget: &Budget) -> Outcome {
    let s = sieves()?;
    let mats = submodule_matrices(budget);
    for g in &mats {
        let f = fixed_subspace_count_with(g, sieve_for(&s, g.p()))?;
        let b = brute_invariant_subspaces(g, budget)?;
        if f != BigInt::from(b) {
            return fail(format!("formula {f} vs enumeration {b} for {g:?}"));
        }
    }
    Ok((true, format!("{} matrices, zero mismatches", mats.len())))
}

fn c6(budget: &Budget) -> Outcome {
    let s = sieves()?;
    let k2 = theta_constants(2, &budget.tol)?;
    let k3 = theta_constants(3, &budget.tol)?;
    let mut upper = 0;
    for g in submodule_matrices(budget) {
        if scalar_of(&g).is_some() {
            continue;
        }
        let k = if g.p() == 2 { &k2 } else { &k3 };
        let r = bound_checks(&g, BoundKind::Upper, k, sieve_for(&s, g.p()))?;
        if r.verdict != Verdict::Holds {
            return fail(format!("upper bound {:?} for {g:?}", r.verdict));
        }
        upper += 1;
    }
    let mut stronger = 0;
    for (d, p) in [(2usize, 2u32), (2, 3), (3, 2)] {
        let layer = LayerModule::new(d, 2, p)?;
        let k = if p == 2 { &k2 } else { &k3 };
        let sieve = IrreducibleSieve::new(p, layer.dim())?;
        for g in all_gl(d, p) {
            if scalar_of(&g) == Some(1) {
                continue;
            }
            let r = layer_bound_check(&g, &layer, k, &sieve)?;
            if r.verdict != Verdict::Holds {
                return fail(format!("second-layer bound {:?} at d={d} p={p} for {g:?}", r.verdict));
            }
            stronger += 1;
        }
    }
    Ok((true, format!("upper bound for {upper} non-scalar matrices; second-layer bound for {stronger} elements")))
}

fn c7(budget: &Budget) -> Outcome {
    let mut parts = Vec::new();
    for (d, n, p) in [(2, 2, 2), (2, 2, 3), (3, 2, 2), (2, 3, 2)] {
        let params = CensusParams::new(d, n, p)?;
        let cf = orbit_count(params, budget)?;
        let ex = explicit_orbit_census(params, budget)?;
        let sizes: u64 = ex.stabilizer_orders.iter().map(|(s, k)| k * (ex.gl_order / s)).sum();
        if cf.orbit_count != BigInt::from(ex.orbit_count) || BigInt::from(sizes) != cf.c_count {
            return fail(format!(
                "({d},{n},{p}): CF {} orbits, explicit {}, orbit sizes sum {sizes} vs {}",
                cf.orbit_count, ex.orbit_count, cf.c_count
            ));
        }
        parts.push(format!("({d},{n},{p}) {} orbits / {} subspaces", ex.orbit_count, sizes));
    }
    Ok((true, parts.join("; ")))
}

fn c8(budget: &Budget) -> Outcome {
    let g = Class2Group::new(2, 2, budget)?;
    let whole = QuotientGroup::whole(&g)?;
    let f = aut_order(&whole)?;
    let b = brute_aut_order(&whole, budget)?;
    if f.aut_order != BigInt::from(384) || f.k_order != BigInt::from(64) || b.aut_order != 384 || b.k_order != 64 {
        return fail(format!(
            "Aut(G): formula {} (K {}), brute force {} (K {})",
            f.aut_order, f.k_order, b.aut_order, b.k_order
        ));
    }
    let mut checked = 0;
    for (d, p) in [(2usize, 2u32), (2, 3)] {
        let g = Class2Group::new(d, p, budget)?;
        let enumerate = crate::fplinalg::enumerate_subspaces(p, g.d2(), None, budget)?;
        for l in enumerate {
            let h = QuotientGroup::new(&g, &l)?;
            let f = aut_order(&h)?;
            let b = brute_aut_order(&h, budget)?;
            if f.aut_order != BigInt::from(b.aut_order) || f.k_order != BigInt::from(b.k_order) {
                return fail(format!("d={d} p={p} L={l:?}: formula {} brute {}", f.aut_order, b.aut_order));
            }
            checked += 1;
        }
    }
    Ok((true, format!("|Aut(G(2,2))| = 384, |K| = 64 both ways; formula = brute force for {checked} kernels")))
}

fn c9(budget: &Budget) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (d, p) in [(2usize, 2u32), (2, 3)] {
        let r = bijection_check(d, p, budget)?;
        ok &= r.holds();
        let regular = r.rows.iter().filter(|x| x.regular).count();
        parts.push(format!(
            "({d},{p}): {} orbits, {} isomorphism classes, {regular} regular = A(H) trivial: {}",
            r.orbit_count, r.isomorphism_classes, r.regular_matches
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn c10(budget: &Budget) -> Outcome {
    let mut parts = Vec::new();
    for (d, p) in [(2usize, 2u32), (2, 3)] {
        let g = Class2Group::new(d, p, budget)?;
        let h = QuotientGroup::whole(&g)?;
        let census = normal_subgroup_census(&h, budget)?;
        let rep = check_numnorms(&census)?;
        let top = vec![d, g.d2()];
        let exact = rep.rows.iter().filter(|r| r.u.iter().all(|&x| x == 0) || r.u == top).all(|r| {
            r.count == 1 && r.bound_trivial.is_one()
        });
        let found = rep.rows.iter().filter(|r| r.u.iter().all(|&x| x == 0) || r.u == top).count();
        if !rep.all_hold || !exact || found != 2 {
            return fail(format!("({d},{p}): bounds hold {}, trivial buckets exact {exact}", rep.all_hold));
        }
        parts.push(format!("({d},{p}): {} normal subgroups in {} buckets", census.total, rep.rows.len()));
    }
    Ok((true, parts.join("; ")))
}

fn c11(budget: &Budget) -> Outcome {
    let mut parts = Vec::new();
    for p in [2u32, 3] {
        let params = CensusParams::new(3, 3, p)?;
        let cf = orbit_count(params, budget)?;
        let r = verify_est2(&cf, &regular_lower_bound(&cf), budget)?;
        if !(r.applicable && r.lower_holds && r.upper == Verdict::Holds) {
            return fail(format!("(3,3,{p}): {r:?}"));
        }
        parts.push(format!(
            "(3,3,{p}) dim {}: ratio {:.6} in [1, 1 + Kp^x ~ {:.3e}]{}",
            cf.layer_dim,
            r.ratio.to_f64().unwrap_or(f64::NAN),
            r.kpx.approx() + 1.0,
            if r.part_b_informative { "" } else { "; part (b) uninformative since Kp^x >= 1" }
        ));
    }
    Ok((true, parts.join("; ")))
}

fn c12(budget: &Budget) -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    let mut flags = Vec::new();
    for d in 2..=4usize {
        let mode = if d <= 3 { ExplicitMode::Always } else { ExplicitMode::Never };
        let mut seq = Vec::new();
        for p in [2u32, 3, 5] {
            let r = census_report(CensusParams::new(d, 2, p)?, mode, budget)?;
            ok &= r.r_exact == (d <= 3) && r.r_lower <= BigRational::one() && r.r_lower >= BigRational::zero();
            seq.push(r.r_lower.to_f64().unwrap_or(f64::NAN));
        }
        let monotone = seq.windows(2).all(|w| w[0] < w[1]);
        if d >= 3 && !monotone {
            flags.push(format!("d={d} not increasing in p"));
        }
        if d == 4 && !monotone {
            ok = false;
        }
        let kind = if d <= 3 { "exact" } else { "lower bound" };
        lines.push(format!("d={d} {kind} r(2,3,5) = {:.4}, {:.4}, {:.4}", seq[0], seq[1], seq[2]));
    }
    if !flags.is_empty() {
        lines.push(format!("NON-MONOTONE: {}", flags.join(", ")));
    }
    Ok((ok, lines.join("; ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_cover_all_criteria() {
        let mut ids: Vec<u8> = [Suite::Qcomb, Suite::Freelie, Suite::Submod, Suite::Pgroup, Suite::Census]
            .iter()
            .flat_map(|s| s.criteria())
            .collect();
        ids.sort_unstable();
        assert_eq!(ids, Suite::All.criteria());
        assert_eq!(Suite::parse("census"), Some(Suite::Census));
        assert!(Suite::parse("bogus").is_none());
    }

    #[test]
    fn quick_criteria_pass() {
        let b = Budget::default();
        for id in [1, 3, 7, 10] {
            let r = run_criterion(id, &b).unwrap();
            assert!(r.passed, "{r}");
        }
    }
}
