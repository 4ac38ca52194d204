use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::enclosure::{int_pow_rat, pow_enclosure, rat, rat_int, Enclosure, Verdict};
use super::quarter::QuarterPower;
use super::theta::{theta_c, BoundConstants};
use super::{galois, gauss};
use crate::error::{Error, Result};
use crate::serde_util::rational_str;

/// Precisions tried, in order, by certified comparisons.
const BIT_LADDER: [u32; 6] = [64, 160, 400, 1000, 2500, 6000];

/// Runs `f` at increasing precision until it returns a decided verdict.
pub fn certify(mut f: impl FnMut(u32) -> Verdict) -> Verdict {
    for bits in BIT_LADDER {
        let v = f(bits);
        if v != Verdict::Undecided {
            return v;
        }
    }
    Verdict::Undecided
}

/// The expression `C(p)^c_pow * D(p)^d_pow * p^exp`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdPower {
    pub c_pow: u32,
    pub d_pow: u32,
    pub p: u64,
    #[serde(with = "rational_str")]
    pub exp: BigRational,
}

impl CdPower {
    pub fn enclosure(&self, k: &BoundConstants, bits: u32) -> Enclosure {
        assert_eq!(k.q, self.p, "constants computed for a different base");
        k.cd_power(self.c_pow, self.d_pow)
            .mul(&pow_enclosure(self.p, &self.exp, bits))
    }
}

// ---------------------------------------------------------------------------
// Wilf-type estimates

/// Checks `gauss(n,k,q) <= D(q) q^(k(n-k))`.
pub fn wilf_coef_check(n: i64, k: i64, consts: &BoundConstants) -> Result<Verdict> {
    let q = consts.q;
    let g = BigRational::from_integer(gauss(n, k, q)?);
    let base = int_pow_rat(q, k * (n - k));
    Ok(if g <= consts.d.lo.clone() * &base {
        Verdict::Holds
    } else if g > consts.d.hi.clone() * &base {
        Verdict::Fails
    } else {
        Verdict::Undecided
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisBoundReport {
    pub n: i64,
    pub q: u64,
    #[serde(with = "crate::serde_util::bigint_str")]
    pub galois: BigInt,
    /// None when the lower bound's left factor is not positive.
    pub lower: Option<Verdict>,
    /// `galois <= S_n(q) D(q)`.
    pub middle: Verdict,
    /// `galois <= C(q) D(q) q^(n^2/4)`.
    pub upper: Verdict,
}

impl GaloisBoundReport {
    pub fn all_hold(&self) -> bool {
        self.lower.is_none_or(Verdict::holds) && self.middle.holds() && self.upper.holds()
    }
}

/// Checks the two-sided estimate on the Galois number.
pub fn galois_bounds_check(n: i64, consts: &BoundConstants) -> Result<GaloisBoundReport> {
    let q = consts.q;
    let g = galois(n, q)?;
    let gr = BigRational::from_integer(g.clone());

    let sn: BigInt = (0..=n).map(|k| BigInt::from(q).pow((k * (n - k)) as u32)).sum();
    let sn = BigRational::from_integer(sn);
    let middle = if gr <= &sn * &consts.d.lo {
        Verdict::Holds
    } else if gr > &sn * &consts.d.hi {
        Verdict::Fails
    } else {
        Verdict::Undecided
    };

    let cd_lo = &consts.c.lo * &consts.d.lo;
    let cd_hi = &consts.c.hi * &consts.d.hi;
    let upper = if QuarterPower::new(cd_lo, q, n * n).cmp_rational(&gr) != Ordering::Less {
        Verdict::Holds
    } else if QuarterPower::new(cd_hi, q, n * n).cmp_rational(&gr) == Ordering::Less {
        Verdict::Fails
    } else {
        Verdict::Undecided
    };

    // Left factor 2 - (9/2) q^((1-n)/2) > 0  iff  16 q^(n-1) > 81.
    let positive = BigInt::from(16) * BigInt::from(q).pow((n - 1).max(0) as u32) > BigInt::from(81)
        && n >= 1;
    let lower = positive.then(|| {
        certify(|bits| {
            // D (2 q^((n^2-1)/4) - (9/2) q^((n-1)^2/4))
            let p1 = pow_enclosure(q, &rat(n * n - 1, 4), bits);
            let p2 = pow_enclosure(q, &rat((n - 1) * (n - 1), 4), bits);
            let inner = p1.scale(&rat_int(2)).sub(&p2.scale(&rat(9, 2)));
            let lb = consts.d.mul(&inner);
            lb.le_rat(&gr)
        })
    });
    Ok(GaloisBoundReport {
        n,
        q,
        galois: g,
        lower,
        middle,
        upper,
    })
}

// ---------------------------------------------------------------------------
// Sums of q^(quadratic)

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyBound {
    /// Enclosure of the finite sum; degenerate when every exponent is integral.
    pub exact_sum: Enclosure,
    pub exact: bool,
    /// Enclosure of C(q^a) q^(f(y)).
    pub bound: Enclosure,
    /// Maximizer of f on [t, u].
    #[serde(with = "rational_str")]
    pub y: BigRational,
    pub holds: Verdict,
}

fn eval_quadratic(a: &BigRational, b: &BigRational, c: &BigRational, x: &BigRational) -> BigRational {
    -(a * x * x) + b * x + c
}

/// Encloses `q^x` for rational x.
fn qpow(q: u64, x: &BigRational, bits: u32) -> Enclosure {
    pow_enclosure(q, x, bits)
}

/// Sum of q^(f(r)) over integers t <= r <= u for f(x) = -a x^2 + b x + c,
/// together with the theta bound C(q^a) q^(max f).
pub fn polybound(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    t: i64,
    u: i64,
    q: u64,
    tol: &BigRational,
) -> Result<PolyBound> {
    if !a.is_positive() {
        return Err(Error::invalid("polybound needs a > 0"));
    }
    if t > u {
        return Err(Error::invalid(format!("empty range t={t} > u={u}")));
    }
    if q < 2 {
        return Err(Error::invalid(format!("q must be at least 2, got {q}")));
    }
    let vertex = b / (a * rat_int(2));
    let y = if vertex < rat_int(t) {
        rat_int(t)
    } else if vertex > rat_int(u) {
        rat_int(u)
    } else {
        vertex
    };
    let fy = eval_quadratic(a, b, c, &y);
    let exps: Vec<BigRational> = (t..=u)
        .map(|r| eval_quadratic(a, b, c, &rat_int(r)))
        .collect();
    let exact = exps.iter().all(|e| e.is_integer());

    // C(q^a): q^a is enclosed, and C decreases in its argument.
    let sum_at = |bits: u32| -> Enclosure {
        exps.iter()
            .map(|e| qpow(q, e, bits))
            .fold(Enclosure::from_int(0), |acc, x| acc.add(&x))
    };
    let bound_at = |bits: u32| -> Result<Enclosure> {
        let s = qpow(q, a, bits);
        if s.lo <= BigRational::one() {
            return Err(Error::invalid("q^a too close to 1 to enclose C(q^a)"));
        }
        let c_enc = Enclosure::new(theta_c(&s.hi, tol)?.lo, theta_c(&s.lo, tol)?.hi);
        Ok(c_enc.mul(&qpow(q, &fy, bits)))
    };

    let mut last = None;
    let mut verdict = Verdict::Undecided;
    for bits in BIT_LADDER {
        let s = sum_at(bits);
        let bd = bound_at(bits)?;
        verdict = s.le(&bd);
        last = Some((s, bd));
        if verdict != Verdict::Undecided {
            break;
        }
    }
    let (exact_sum, bound) = last.expect("ladder is non-empty");
    Ok(PolyBound {
        exact_sum,
        exact,
        bound,
        y,
        holds: verdict,
    })
}

// ---------------------------------------------------------------------------
// Sums of squares of compositions

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadBound {
    pub bound1: i64,
    #[serde(with = "rational_str")]
    pub bound2: BigRational,
}

/// The two bounds on sums of squares of a composition of n into s parts.
pub fn quadbound(n: i64, s: i64, eps: &BigRational) -> Result<QuadBound> {
    if n < 1 || s < 1 {
        return Err(Error::invalid("quadbound needs n >= 1 and s >= 1"));
    }
    if s > n {
        return Err(Error::invalid(format!("s = {s} exceeds n = {n}")));
    }
    if eps.is_negative() {
        return Err(Error::invalid("eps must be non-negative"));
    }
    let bound1 = (n - s + 1).pow(2) + (s - 1);
    let bound2 = rat_int((n - 1).pow(2) + 1) + eps * rat_int(2);
    Ok(QuadBound { bound1, bound2 })
}

/// All compositions of n into exactly s positive parts.
pub fn compositions(n: i64, s: i64) -> Vec<Vec<i64>> {
    fn rec(left: i64, parts: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for first in 1..=(left - (parts - 1)) {
            cur.push(first);
            rec(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 0 && s >= 0 {
        rec(n, s, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadBoundCheck {
    pub n: i64,
    pub s: i64,
    pub max_sum_sq: i64,
    pub bound1: i64,
    pub attained: bool,
    /// None when the second bound's hypotheses fail.
    pub second_holds: Option<bool>,
}

/// Exhaustively checks both bounds over all compositions of n into s parts.
pub fn quadbound_exhaustive(n: i64, s: i64, eps: &BigRational) -> Result<QuadBoundCheck> {
    let qb = quadbound(n, s, eps)?;
    let comps = compositions(n, s);
    let max_sum_sq = comps
        .iter()
        .map(|c| c.iter().map(|a| a * a).sum::<i64>())
        .max()
        .unwrap_or(0);
    let hyp = rat_int(n) >= eps + rat_int(1) && s >= 2;
    let second_holds = hyp.then(|| {
        comps.iter().all(|c| {
            let sq: i64 = c.iter().map(|a| a * a).sum();
            rat_int(sq) + eps * rat_int(s) <= qb.bound2
        })
    });
    Ok(QuadBoundCheck {
        n,
        s,
        max_sum_sq,
        bound1: qb.bound1,
        attained: max_sum_sq == qb.bound1,
        second_holds,
    })
}

// ---------------------------------------------------------------------------
// Nested sums of p-powers

/// x + y sqrt(p) with rational x, y.
#[derive(Debug, Clone, PartialEq, Eq)]
struct QuadSurd {
    x: BigRational,
    y: BigRational,
}

impl QuadSurd {
    fn zero() -> Self {
        QuadSurd {
            x: BigRational::zero(),
            y: BigRational::zero(),
        }
    }
    fn one() -> Self {
        QuadSurd {
            x: BigRational::one(),
            y: BigRational::zero(),
        }
    }
    fn add_assign(&mut self, o: &QuadSurd) {
        self.x += &o.x;
        self.y += &o.y;
    }
    /// Multiplies by p^(e2/2).
    fn mul_half_power(&self, p: u64, e2: i64) -> QuadSurd {
        if e2.rem_euclid(2) == 0 {
            let s = int_pow_rat(p, e2 / 2);
            QuadSurd {
                x: &self.x * &s,
                y: &self.y * &s,
            }
        } else {
            // sqrt(p) (x + y sqrt(p)) = p y + x sqrt(p)
            let s = int_pow_rat(p, (e2 - 1).div_euclid(2));
            QuadSurd {
                x: &self.y * rat_int(p) * &s,
                y: &self.x * &s,
            }
        }
    }
    fn enclosure(&self, p: u64, bits: u32) -> Enclosure {
        let sq = pow_enclosure(p, &rat(1, 2), bits);
        sq.scale(&self.y).add_rat(&self.x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussProds {
    pub i: usize,
    pub u_i: u64,
    pub exact: Enclosure,
    /// Present for i <= n - 2.
    pub bound: Option<Enclosure>,
    /// Exponent of p in the bound (without the C(p) factor).
    #[serde(with = "crate::serde_util::opt_rational_str")]
    pub bound_exp: Option<BigRational>,
    /// Whether (n >= 3, d >= 6) or (n >= 10, d >= 5).
    pub hypotheses: bool,
    pub holds: Option<Verdict>,
}

/// Evaluates the nested sum A_i(u_i) over the layer ranks `cum` = (d_1, ..., d_n)
/// and the closed-form bound for it.
pub fn gaussprods_a(
    i: usize,
    u_i: u64,
    cum: &[u64],
    p: u64,
    consts: &BoundConstants,
) -> Result<GaussProds> {
    let n = cum.len();
    if n < 2 || i < 1 || i > n - 1 {
        return Err(Error::invalid(format!("index i = {i} outside 1..={}", n.saturating_sub(1))));
    }
    if u_i > cum[i - 1] {
        return Err(Error::invalid(format!("u_i = {u_i} exceeds d_i = {}", cum[i - 1])));
    }
    if consts.q != p {
        return Err(Error::invalid("constants were computed for a different prime"));
    }
    let dr = |j: usize| cum[j - 1] as i64;
    let range = |j: usize| -> (i64, i64) {
        if j == n {
            (2, dr(n))
        } else if j == n - 1 {
            (1, dr(n - 1))
        } else {
            (0, dr(j))
        }
    };
    // 2 * exponent of one factor: (d_{j+1} - u_{j+1}) (2 u_{j+1} - u_j)
    let e2 = |j: usize, uj: i64, uj1: i64| (dr(j + 1) - uj1) * (2 * uj1 - uj);

    // next[u_{j+1}] = A_{j+1}(u_{j+1}); A_n = 1.
    let (lo_n, hi_n) = range(n);
    let mut next: BTreeMap<i64, QuadSurd> = (lo_n..=hi_n).map(|u| (u, QuadSurd::one())).collect();
    let mut j = n - 1;
    loop {
        let us: Vec<i64> = if j == i {
            vec![u_i as i64]
        } else {
            let (lo, hi) = range(j);
            (lo..=hi).collect()
        };
        let mut cur = BTreeMap::new();
        for &uj in &us {
            let mut acc = QuadSurd::zero();
            for (&uj1, val) in &next {
                acc.add_assign(&val.mul_half_power(p, e2(j, uj, uj1)));
            }
            cur.insert(uj, acc);
        }
        next = cur;
        if j == i {
            break;
        }
        j -= 1;
    }
    let value = next.remove(&(u_i as i64)).expect("u_i present");

    let d = dr(1);
    let hypotheses = (n >= 3 && d >= 6) || (n >= 10 && d >= 5);
    let (bound, bound_exp, holds, exact) = if i + 2 <= n {
        let dn = rat_int(dr(n));
        let exp = rat(-15, 16) + &dn * &dn / rat_int(4) + rat_int(dr(n - 1)) - &dn / rat_int(4)
            - rat_int(u_i as i64) * rat_int(dr(i + 1) - 1) / rat_int(2);
        let cp = CdPower {
            c_pow: (n - i) as u32,
            d_pow: 0,
            p,
            exp: exp.clone(),
        };
        let mut last = None;
        let mut verdict = Verdict::Undecided;
        for bits in BIT_LADDER {
            let ex = value.enclosure(p, bits);
            let bd = cp.enclosure(consts, bits);
            verdict = ex.le(&bd);
            last = Some((ex, bd));
            if verdict != Verdict::Undecided {
                break;
            }
        }
        let (ex, bd) = last.unwrap();
        (Some(bd), Some(exp), Some(verdict), ex)
    } else {
        (None, None, None, value.enclosure(p, 128))
    };
    Ok(GaussProds {
        i,
        u_i,
        exact,
        bound,
        bound_exp,
        hypotheses,
        holds,
    })
}

// ---------------------------------------------------------------------------
// Right-hand sides of the two main estimates

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremBounds {
    pub d: u64,
    pub n: usize,
    pub p: u64,
    /// Whether (n >= 3, d >= 6) or (n >= 10, d >= 5).
    pub est1_applicable: bool,
    /// C^(n-1) D^(n-2) p^(d_{n-1} - d_n/4 + d^2); None for n < 2.
    pub est1_term: Option<CdPower>,
    pub est1_rhs: Option<Enclosure>,
    /// Same with the exponent increased by 1/4.
    pub est1_rhs_alt: Option<Enclosure>,
    /// Whether (n = 2, d >= 10) or (n >= 3, d >= 3).
    pub est2_applicable: bool,
    pub k: Option<CdPower>,
    pub k_enc: Option<Enclosure>,
    #[serde(with = "crate::serde_util::opt_rational_str")]
    pub x: Option<BigRational>,
    /// Enclosure of K p^x.
    pub kpx: Option<Enclosure>,
}

/// Evaluates the two main right-hand sides for the layer ranks `cum` = (d_1..d_n).
pub fn theorem_bounds(cum: &[u64], p: u64, consts: &BoundConstants) -> Result<TheoremBounds> {
    let n = cum.len();
    if n < 1 {
        return Err(Error::invalid("need at least one layer rank"));
    }
    if consts.q != p {
        return Err(Error::invalid("constants were computed for a different prime"));
    }
    let d = cum[0];
    let bits = 128;
    let di = d as i64;
    let dn = rat_int(cum[n - 1] as i64);

    let est1_applicable = (n >= 3 && d >= 6) || (n >= 10 && d >= 5);
    let (est1_term, est1_rhs, est1_rhs_alt) = if n >= 2 {
        let exp = rat_int(cum[n - 2] as i64) - &dn / rat_int(4) + rat_int(di * di);
        let term = CdPower {
            c_pow: (n - 1) as u32,
            d_pow: (n - 2) as u32,
            p,
            exp: exp.clone(),
        };
        let alt = CdPower {
            exp: exp + rat(1, 4),
            ..term.clone()
        };
        let rhs = term.enclosure(consts, bits).add_rat(&rat_int(1));
        let rhs_alt = alt.enclosure(consts, bits).add_rat(&rat_int(1));
        (Some(term), Some(rhs), Some(rhs_alt))
    } else {
        (None, None, None)
    };

    let est2_applicable = (n == 2 && d >= 10) || (n >= 3 && d >= 3);
    let (k, x) = match n {
        1 => (None, None),
        2 => (
            Some(CdPower {
                c_pow: 5,
                d_pow: 4,
                p,
                exp: rat(17, 4),
            }),
            Some(rat_int(-di)),
        ),
        _ => (
            Some(CdPower {
                c_pow: 2,
                d_pow: 1,
                p,
                exp: rat(3, 4),
            }),
            Some(rat_int(di * di) - &dn / rat_int(2)),
        ),
    };
    let k_enc = k.as_ref().map(|k| k.enclosure(consts, bits));
    let kpx = match (&k, &x) {
        (Some(k), Some(x)) => Some(
            CdPower {
                exp: &k.exp + x,
                ..k.clone()
            }
            .enclosure(consts, bits),
        ),
        _ => None,
    };
    Ok(TheoremBounds {
        d,
        n,
        p,
        est1_applicable,
        est1_term,
        est1_rhs,
        est1_rhs_alt,
        est2_applicable,
        k,
        k_enc,
        x,
        kpx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcomb::theta::{default_tol, theta_constants};

    fn k2() -> BoundConstants {
        theta_constants(2, &default_tol()).unwrap()
    }

    #[test]
    fn polybound_examples() {
        let tol = default_tol();
        let pb = polybound(&rat_int(1), &rat_int(0), &rat_int(0), -1, 1, 2, &tol).unwrap();
        assert_eq!(pb.exact_sum, Enclosure::from_int(2));
        assert!(pb.exact);
        assert!(pb.holds.holds());
        assert!(pb.bound.lo > rat_int(2) && pb.bound.hi < rat(213, 100));

        let pb = polybound(&rat_int(3), &rat_int(5), &rat_int(0), 0, 0, 7, &tol).unwrap();
        assert_eq!(pb.exact_sum, Enclosure::from_int(1));

        let pb = polybound(&rat_int(1), &rat_int(4), &rat_int(0), 0, 4, 2, &tol).unwrap();
        assert_eq!(pb.exact_sum, Enclosure::from_int(34));
        assert!(pb.holds.holds());
        assert_eq!(pb.y, rat_int(2));
    }

    #[test]
    fn polybound_fractional_exponents() {
        let tol = default_tol();
        let pb = polybound(&rat(1, 2), &rat(1, 3), &rat(1, 4), -3, 5, 3, &tol).unwrap();
        assert!(!pb.exact);
        assert!(pb.holds.holds());
        assert!(polybound(&rat_int(0), &rat_int(1), &rat_int(0), 0, 1, 2, &tol).is_err());
    }

    #[test]
    fn quadbound_examples() {
        let qb = quadbound(5, 2, &rat_int(0)).unwrap();
        assert_eq!(qb.bound1, 17);
        assert_eq!(4 * 4 + 1, 17);
        assert!(3 * 3 + 2 * 2 <= qb.bound1);
        let chk = quadbound_exhaustive(6, 3, &rat_int(1)).unwrap();
        assert_eq!(chk.second_holds, Some(true));
        assert!(quadbound_exhaustive(6, 3, &rat_int(1)).unwrap().max_sum_sq + 3 <= 27);
        assert!(quadbound(3, 4, &rat_int(0)).is_err());
    }

    #[test]
    fn compositions_count() {
        // C(n-1, s-1)
        assert_eq!(compositions(6, 3).len(), 10);
        assert_eq!(compositions(12, 1).len(), 1);
        assert_eq!(compositions(4, 4), vec![vec![1, 1, 1, 1]]);
    }

    #[test]
    fn gaussprods_last_index_is_direct_sum() {
        // d = 6: d_1 = 6, d_2 = 21, d_3 = 91.
        let cum = [6u64, 21, 91];
        let gp = gaussprods_a(2, 0, &cum, 2, &k2()).unwrap();
        let direct: BigRational = (2..=91i64).map(|u| int_pow_rat(2, -(u - 91) * u)).sum();
        assert_eq!(gp.exact, Enclosure::exact(direct));
        assert!(gp.bound.is_none());
    }

    #[test]
    fn gaussprods_single_term() {
        // d_n = 2 forces u_n = 2; term p^(-(2-2)(...)) = 1.
        let cum = [2u64, 2];
        let gp = gaussprods_a(1, 1, &cum, 3, &theta_constants(3, &default_tol()).unwrap()).unwrap();
        assert_eq!(gp.exact, Enclosure::from_int(1));
    }

    #[test]
    fn gaussprods_bound_holds_in_range() {
        let cum = [6u64, 21, 91];
        for u in [0u64, 1, 3, 6] {
            let gp = gaussprods_a(1, u, &cum, 2, &k2()).unwrap();
            assert!(gp.hypotheses);
            assert_eq!(gp.holds, Some(Verdict::Holds), "u_1 = {u}");
        }
    }

    #[test]
    fn theorem_bound_examples() {
        // d = 10: d_1 = 10, d_2 = 55.
        let tb = theorem_bounds(&[10, 55], 2, &k2()).unwrap();
        assert_eq!(tb.x, Some(rat_int(-10)));
        assert_eq!(tb.k.as_ref().unwrap().exp, rat(17, 4));
        assert_eq!((tb.k.as_ref().unwrap().c_pow, tb.k.as_ref().unwrap().d_pow), (5, 4));
        assert!(tb.est2_applicable);

        let tb = theorem_bounds(&[3, 6, 14], 2, &k2()).unwrap();
        assert_eq!(tb.x, Some(rat_int(2)));

        let k5 = theta_constants(5, &default_tol()).unwrap();
        let tb = theorem_bounds(&[6, 21, 91], 5, &k5).unwrap();
        assert!(tb.est1_applicable);
        let term = tb.est1_term.unwrap();
        assert_eq!(term.exp, rat_int(21) - rat(91, 4) + rat_int(36));
        let rhs = tb.est1_rhs.unwrap();
        assert!(rhs.lo > rat_int(1));
        let alt = tb.est1_rhs_alt.unwrap();
        assert!(alt.lo > rhs.hi);
    }

    #[test]
    fn wilf_examples() {
        let k = k2();
        assert_eq!(wilf_coef_check(4, 2, &k).unwrap(), Verdict::Holds);
        let r = galois_bounds_check(6, &k).unwrap();
        assert!(r.all_hold());
        assert!(galois_bounds_check(1, &k).unwrap().lower.is_none());
    }
}
