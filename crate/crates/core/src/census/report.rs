use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::orbits::{explicit_orbit_census, orbit_count, CensusParams, CfCensus, ExplicitCensus};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::freelie::layer_ranks;
use crate::qcomb::{theorem_bounds, theta_constants, Enclosure, Verdict};
use crate::serde_util::{opt_bigint_str, rational_str};

/// max(0, 2|C|/|GL| - |orbits|), a lower bound for the number of regular orbits,
/// since every non-regular orbit has at most |GL|/2 points.
pub fn regular_lower_bound(cf: &CfCensus) -> BigRational {
    let v = BigRational::new(BigInt::from(2) * &cf.c_count, cf.gl_order.clone())
        - BigRational::from_integer(cf.orbit_count.clone());
    if v.is_negative() {
        BigRational::zero()
    } else {
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Est2Report {
    pub params: CensusParams,
    /// Whether (n = 2, d >= 10) or (n >= 3, d >= 3).
    pub applicable: bool,
    /// |orbits| |GL| / |C|, exactly.
    #[serde(with = "rational_str")]
    pub ratio: BigRational,
    pub lower_holds: bool,
    #[serde(with = "rational_str")]
    pub x: BigRational,
    pub kpx: Enclosure,
    pub upper: Verdict,
    /// Part (b) only says something when K p^x < 1.
    pub part_b_informative: bool,
    /// Upper bound for |orbits|/|regular orbits| from the available regular count.
    #[serde(with = "crate::serde_util::opt_rational_str")]
    pub part_b_left: Option<BigRational>,
    pub part_b: Option<Verdict>,
}

impl Est2Report {
    /// Both parts hold wherever they are informative.
    pub fn ok(&self) -> bool {
        self.lower_holds && self.upper.holds() && self.part_b.is_none_or(Verdict::holds)
    }
}

/// Evaluates both inequalities. `regular` is the exact count of regular orbits
/// or a lower bound for it.
pub fn verify_est2(cf: &CfCensus, regular: &BigRational, budget: &Budget) -> Result<Est2Report> {
    let params = cf.params;
    let ranks = layer_ranks(params.d as u64, params.n)?;
    let consts = theta_constants(u64::from(params.p), &budget.tol)?;
    let tb = theorem_bounds(&ranks.cumulative, u64::from(params.p), &consts)?;
    let (Some(kpx), Some(x)) = (tb.kpx, tb.x) else {
        return Err(Error::invalid("the estimate needs n >= 2"));
    };
    let ratio = BigRational::new(&cf.orbit_count * &cf.gl_order, cf.c_count.clone());
    let one = BigRational::one();
    let upper = Enclosure::exact(ratio.clone()).le(&kpx.add_rat(&one));
    let part_b_informative = kpx.hi < one;
    let orbits = BigRational::from_integer(cf.orbit_count.clone());
    let part_b_left = (regular.is_positive()).then(|| &orbits / regular);
    let part_b = match (&part_b_left, part_b_informative) {
        (Some(left), true) => {
            let rhs = Enclosure::new(
                (&one + &kpx.lo) / (&one - &kpx.lo),
                (&one + &kpx.hi) / (&one - &kpx.hi),
            );
            Some(Enclosure::exact(left.clone()).le(&rhs))
        }
        _ => None,
    };
    Ok(Est2Report {
        params,
        applicable: tb.est2_applicable,
        lower_holds: ratio >= one,
        ratio,
        x,
        kpx,
        upper,
        part_b_informative,
        part_b_left,
        part_b,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub params: CensusParams,
    pub layer_dim: usize,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub gl_order: BigInt,
    /// Number of subspaces of the layer.
    #[serde(with = "crate::serde_util::bigint_str")]
    pub c_count: BigInt,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub orbit_count: BigInt,
    /// Orbits with trivial stabilizer, when enumerated.
    #[serde(with = "opt_bigint_str")]
    pub regular_count: Option<BigInt>,
    #[serde(with = "rational_str")]
    pub regular_lower: BigRational,
    /// Orbits of proper subspaces; only at n = 2.
    #[serde(with = "opt_bigint_str")]
    pub b_count: Option<BigInt>,
    /// Lower bound for the proportion of regular orbits (exact when enumerated).
    #[serde(with = "rational_str")]
    pub r_lower: BigRational,
    pub r_exact: bool,
    pub est2: Option<Est2Report>,
    pub explicit: Option<ExplicitCensus>,
}

/// How to obtain the regular-orbit count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExplicitMode {
    Never,
    Always,
    /// Enumerate when the budget allows it.
    Auto,
}

pub fn census_report(params: CensusParams, mode: ExplicitMode, budget: &Budget) -> Result<CensusReport> {
    let cf = orbit_count(params, budget)?;
    let explicit = match mode {
        ExplicitMode::Never => None,
        ExplicitMode::Always => Some(explicit_orbit_census(params, budget)?),
        ExplicitMode::Auto => match explicit_orbit_census(params, budget) {
            Ok(e) => Some(e),
            Err(Error::ResourceLimit { .. }) => None,
            Err(e) => return Err(e),
        },
    };
    if let Some(e) = &explicit {
        if BigInt::from(e.orbit_count) != cf.orbit_count {
            return Err(Error::Internal(format!(
                "explicit census found {} orbits, Cauchy-Frobenius {}",
                e.orbit_count, cf.orbit_count
            )));
        }
    }
    let regular_lower = regular_lower_bound(&cf);
    let regular_count = explicit.as_ref().map(|e| BigInt::from(e.regular_count));
    if let Some(r) = &regular_count {
        if BigRational::from_integer(r.clone()) < regular_lower {
            return Err(Error::Internal("regular orbit count below its lower bound".into()));
        }
    }
    let regular = regular_count
        .clone()
        .map(BigRational::from_integer)
        .unwrap_or_else(|| regular_lower.clone());
    let r_lower = &regular / BigRational::from_integer(cf.orbit_count.clone());
    let est2 = if params.n >= 2 {
        Some(verify_est2(&cf, &regular, budget)?)
    } else {
        None
    };
    Ok(CensusReport {
        params,
        layer_dim: cf.layer_dim,
        gl_order: cf.gl_order.clone(),
        c_count: cf.c_count.clone(),
        orbit_count: cf.orbit_count.clone(),
        b_count: (params.n == 2).then(|| &cf.orbit_count - 1),
        regular_count,
        regular_lower,
        r_lower,
        r_exact: explicit.is_some(),
        est2,
        explicit,
    })
}

/// The n = 2 report.
pub fn proportion_report(d: usize, p: u32, budget: &Budget) -> Result<CensusReport> {
    census_report(CensusParams::new(d, 2, p)?, ExplicitMode::Auto, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_g22() {
        let r = proportion_report(2, 2, &Budget::default()).unwrap();
        assert!(r.r_exact);
        assert_eq!(r.c_count, BigInt::from(16));
        assert_eq!(r.b_count, Some(&r.orbit_count - 1));
        let e = r.explicit.as_ref().unwrap();
        let sum: u64 = e.stabilizer_orders.iter().map(|(s, k)| k * (e.gl_order / s)).sum();
        assert_eq!(sum, 16);
        assert!(BigRational::from_integer(r.regular_count.clone().unwrap()) >= r.regular_lower);
        assert!(r.est2.as_ref().unwrap().lower_holds);
        assert!(!r.est2.unwrap().applicable);
    }

    #[test]
    fn degenerate_bound_is_clamped() {
        let cf = orbit_count(CensusParams::new(2, 1, 2).unwrap(), &Budget::default()).unwrap();
        assert_eq!(regular_lower_bound(&cf), BigRational::zero());
    }

    #[test]
    fn json_shape() {
        let r = census_report(CensusParams::new(2, 2, 3).unwrap(), ExplicitMode::Always, &Budget::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert!(v["orbit_count"].is_string());
        assert!(v["r_lower"].as_str().unwrap().contains('/') || v["r_lower"] == "0");
        let back: CensusReport = serde_json::from_value(v).unwrap();
        assert_eq!(back.orbit_count, r.orbit_count);
    }
}
