use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::fixed_subspace_count_with;
use crate::error::{Error, Result};
use crate::fplinalg::{scalar_of, FpMatrix, IrreducibleSieve};
use crate::freelie::LayerModule;
use crate::qcomb::enclosure::{log_enclosure, rat};
use crate::qcomb::{galois, BoundConstants, Enclosure, QuarterPower, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// log_p S_M <= (m^2 - 2m + 2)/4 + 2 eps for any non-scalar action.
    Upper,
    /// log_p S_M <= (m-4)^2/4 + C on an extension of V^V by V.
    Stronger,
}

impl BoundKind {
    /// (power of C(p)D(p), four times the exponent of p).
    fn shape(self, m: i64) -> (u32, i64) {
        match self {
            BoundKind::Upper => (2, m * m - 2 * m + 2),
            BoundKind::Stronger if m <= 45 => (1, (m - 4) * (m - 4) + 8 * m - 16),
            BoundKind::Stronger => (5, (m - 4) * (m - 4) + 16),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub p: u64,
    pub m: usize,
    /// Some(c) when g acts on M as c times the identity.
    pub scalar: Option<u32>,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub s_m: BigInt,
    pub log_p_s_m: Enclosure,
    /// Enclosure of the right-hand side; absent in the scalar case.
    pub bound: Option<Enclosure>,
    pub verdict: Verdict,
    pub satisfied: bool,
}

/// Evaluates the bound for g acting on M by the given matrix. In the scalar
/// case the report checks S_M against the Galois number instead.
pub fn bound_checks(
    action: &FpMatrix,
    kind: BoundKind,
    consts: &BoundConstants,
    sieve: &IrreducibleSieve,
) -> Result<BoundReport> {
    let p = u64::from(action.p());
    if consts.q != p {
        return Err(Error::invalid(format!("constants are for q = {}, matrix is over F_{p}", consts.q)));
    }
    let m = action.rows();
    let s_m = fixed_subspace_count_with(action, sieve)?;
    let log_p_s_m = log_enclosure(&Enclosure::from_int(s_m.clone()), p, 64);
    if let Some(c) = scalar_of(action) {
        let ok = s_m == galois(m as i64, p)?;
        return Ok(BoundReport {
            kind,
            p,
            m,
            scalar: Some(c),
            s_m,
            log_p_s_m,
            bound: None,
            verdict: if ok { Verdict::Holds } else { Verdict::Fails },
            satisfied: ok,
        });
    }
    let (k, exp4) = kind.shape(m as i64);
    let cd = consts.cd_power(k, k).round_outward(128);
    let verdict = if QuarterPower::new(cd.lo.clone(), p, exp4).cmp_int(&s_m).is_ge() {
        Verdict::Holds
    } else if QuarterPower::new(cd.hi.clone(), p, exp4).cmp_int(&s_m).is_lt() {
        Verdict::Fails
    } else {
        Verdict::Undecided
    };
    let k_rat = BigRational::from_integer(BigInt::from(k));
    let bound = consts.epsilon.scale(&k_rat).add_rat(&rat(exp4, 4));
    Ok(BoundReport {
        kind,
        p,
        m,
        scalar: None,
        s_m,
        log_p_s_m,
        bound: Some(bound),
        verdict,
        satisfied: verdict.holds(),
    })
}

/// Bound check for g on a lower-p layer: the stronger bound applies to the
/// second layer, the general one elsewhere.
pub fn layer_bound_check(
    g: &FpMatrix,
    layer: &LayerModule,
    consts: &BoundConstants,
    sieve: &IrreducibleSieve,
) -> Result<BoundReport> {
    let kind = if layer.n() == 2 { BoundKind::Stronger } else { BoundKind::Upper };
    if kind == BoundKind::Stronger && scalar_of(g) == Some(1) {
        return Err(Error::invalid("the second-layer bound needs g different from the identity"));
    }
    bound_checks(&layer.rho(g)?, kind, consts, sieve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fplinalg::all_gl;
    use crate::qcomb::theta_constants;

    #[test]
    fn scalar_case() {
        let k = theta_constants(3, &crate::qcomb::default_tol()).unwrap();
        let s = IrreducibleSieve::new(3, 2).unwrap();
        let r = bound_checks(&FpMatrix::scalar(3, 2, 2), BoundKind::Upper, &k, &s).unwrap();
        assert_eq!(r.scalar, Some(2));
        assert_eq!(r.s_m, BigInt::from(6));
        assert!(r.satisfied && r.bound.is_none());
    }

    #[test]
    fn jordan_block() {
        let k = BoundConstants::default();
        let s = IrreducibleSieve::new(2, 2).unwrap();
        let g = FpMatrix::from_rows(2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let r = bound_checks(&g, BoundKind::Upper, &k, &s).unwrap();
        assert_eq!(r.s_m, BigInt::from(3));
        assert_eq!(r.verdict, Verdict::Holds);
        let b = r.bound.unwrap();
        assert!(r.log_p_s_m.hi < b.lo);
    }

    #[test]
    fn stronger_on_small_layer() {
        let k = BoundConstants::default();
        let s = IrreducibleSieve::new(2, 2).unwrap();
        let layer = LayerModule::new(2, 2, 2).unwrap();
        let mut n = 0;
        for g in all_gl(2, 2) {
            if scalar_of(&g) == Some(1) {
                assert!(layer_bound_check(&g, &layer, &k, &s).is_err());
                continue;
            }
            let r = layer_bound_check(&g, &layer, &k, &s).unwrap();
            assert_eq!((r.kind, r.m), (BoundKind::Stronger, 3));
            assert!(r.satisfied);
            n += 1;
        }
        assert_eq!(n, 5);
    }
}
