//! Certified rational enclosures of real numbers.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::serde_util::rational_str;

/// A closed interval `[lo, hi]` known to contain some real number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enclosure {
    #[serde(with = "rational_str")]
    pub lo: BigRational,
    #[serde(with = "rational_str")]
    pub hi: BigRational,
}

/// Outcome of a certified comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}

impl Enclosure {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Enclosure { lo, hi }
    }

    pub fn exact(v: BigRational) -> Self {
        Enclosure {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Self::exact(BigRational::from_integer(v.into()))
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn add(&self, o: &Enclosure) -> Enclosure {
        Enclosure::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Enclosure) -> Enclosure {
        Enclosure::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure::new(-&self.hi, -&self.lo)
    }

    pub fn add_rat(&self, r: &BigRational) -> Enclosure {
        Enclosure::new(&self.lo + r, &self.hi + r)
    }

    /// Scales by a rational (either sign).
    pub fn scale(&self, r: &BigRational) -> Enclosure {
        let a = &self.lo * r;
        let b = &self.hi * r;
        if a <= b {
            Enclosure::new(a, b)
        } else {
            Enclosure::new(b, a)
        }
    }

    /// General interval product.
    pub fn mul(&self, o: &Enclosure) -> Enclosure {
        if !self.lo.is_negative() && !o.lo.is_negative() {
            return Enclosure::new(&self.lo * &o.lo, &self.hi * &o.hi);
        }
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Enclosure::new(lo, hi)
    }

    pub fn pow(&self, k: u32) -> Enclosure {
        let mut acc = Enclosure::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reciprocal of a strictly positive enclosure.
    pub fn recip(&self) -> Enclosure {
        assert!(self.lo.is_positive(), "reciprocal of a non-positive enclosure");
        Enclosure::new(self.hi.recip(), self.lo.recip())
    }

    /// Widens outward to dyadic endpoints with `bits` fractional bits.
    pub fn round_outward(&self, bits: u32) -> Enclosure {
        Enclosure::new(floor_dyadic(&self.lo, bits), ceil_dyadic(&self.hi, bits))
    }

    /// `self <= o`, certified where possible.
    pub fn le(&self, o: &Enclosure) -> Verdict {
        if self.hi <= o.lo {
            Verdict::Holds
        } else if self.lo > o.hi {
            Verdict::Fails
        } else {
            Verdict::Undecided
        }
    }

    pub fn le_rat(&self, r: &BigRational) -> Verdict {
        self.le(&Enclosure::exact(r.clone()))
    }

    /// Midpoint as an f64, for display only.
    pub fn approx(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        rat_to_f64(&mid)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12}, {:.12}]", rat_to_f64(&self.lo), rat_to_f64(&self.hi))
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn rat_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn floor_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scaled = x * BigRational::from_integer(BigInt::one() << bits);
    BigRational::new(scaled.floor().to_integer(), BigInt::one() << bits)
}

pub fn ceil_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scaled = x * BigRational::from_integer(BigInt::one() << bits);
    BigRational::new(scaled.ceil().to_integer(), BigInt::one() << bits)
}

/// Lossy conversion used for human-readable output.
pub fn rat_to_f64(x: &BigRational) -> f64 {
    let n = x.numer();
    let d = x.denom();
    if n.is_zero() {
        return 0.0;
    }
    // Shift both to ~60 significant bits before dividing.
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let nf = big_to_f64(&(n.abs() >> shift_n as usize));
    let df = big_to_f64(&(d >> shift_d as usize));
    let v = nf / df * 2f64.powi((shift_n - shift_d) as i32);
    if n.sign() == Sign::Minus {
        -v
    } else {
        v
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_string().parse::<f64>().unwrap_or(f64::INFINITY)
}

/// Encloses `base^(num/den)` for an integer `base >= 1` to within about `2^-bits` relative width.
pub fn pow_enclosure(base: u64, exp: &BigRational, bits: u32) -> Enclosure {
    assert!(base >= 1);
    let num = exp.numer().clone();
    let den = exp.denom().clone();
    let den_u: u32 = u32::try_from(&den).expect("exponent denominator too large");
    let mag = num.magnitude().clone();
    let mag_u: u32 = u32::try_from(&mag).expect("exponent numerator too large");
    let b = BigUint::from(base).pow(mag_u);
    let pos = if den_u == 1 {
        Enclosure::exact(BigRational::from_integer(BigInt::from(b)))
    } else {
        // floor((b * 2^(den*bits))^(1/den)) = r  =>  r/2^bits <= b^(1/den) < (r+1)/2^bits
        let scaled = b << (den_u as usize * bits as usize);
        let r = scaled.nth_root(den_u);
        let exact = r.pow(den_u) == scaled;
        let two_bits = BigInt::one() << bits;
        let lo = BigRational::new(BigInt::from(r.clone()), two_bits.clone());
        let hi = if exact {
            lo.clone()
        } else {
            BigRational::new(BigInt::from(r + 1u32), two_bits)
        };
        Enclosure::new(lo, hi)
    };
    if num.is_negative() {
        pos.recip()
    } else {
        pos
    }
}

/// Encloses `log_q(x)` for `x >= 1` given as an enclosure, with `bits` fractional bits.
pub fn log_enclosure(x: &Enclosure, q: u64, bits: u32) -> Enclosure {
    assert!(q >= 2);
    assert!(x.lo >= BigRational::one(), "log_enclosure expects x >= 1");
    let lo = log_bits(&x.lo, q, bits, false);
    let hi = log_bits(&x.hi, q, bits, true);
    Enclosure::new(lo, hi)
}

// Binary digit extraction by repeated squaring on fixed-point integers
// (y = Y / 2^W). Directed rounding keeps the working value on one side of
// the truth, so the result is a one-sided bound.
fn log_bits(x: &BigRational, q: u64, bits: u32, upper: bool) -> BigRational {
    let w = (bits + 32) as usize;
    let div_round = |a: BigInt, b: &BigInt| -> BigInt {
        let (qt, r) = a.div_mod_floor(b);
        if upper && !r.is_zero() {
            qt + 1
        } else {
            qt
        }
    };
    let qi = BigInt::from(q);
    let q_fixed = &qi << w;
    let one_w = BigInt::one() << w;
    let mut y = div_round(x.numer() << w, x.denom());
    let mut int_part = BigInt::zero();
    while y >= q_fixed {
        y = div_round(y, &qi);
        int_part += 1;
    }
    let mut frac = BigInt::zero();
    for _ in 0..bits {
        y = div_round(&y * &y, &one_w);
        frac <<= 1;
        if y >= q_fixed {
            y = div_round(y, &qi);
            frac += 1;
        }
    }
    let denom = BigInt::one() << bits;
    let mut v = BigRational::from_integer(int_part) + BigRational::new(frac, denom.clone());
    if upper {
        // Remaining digits are at most 2^-bits in total.
        v += BigRational::new(BigInt::one(), denom);
    }
    v
}

/// `x^k` for a rational and any integer `k`.
pub fn rat_pow(x: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

/// `q^k` as an exact rational for any integer `k`.
pub fn int_pow_rat(q: u64, k: i64) -> BigRational {
    rat_pow(&rat_int(q), k)
}

/// Ceiling of a rational as an integer.
pub fn ceil_int(x: &BigRational) -> BigInt {
    let (qt, r) = x.numer().div_mod_floor(x.denom());
    if r.is_zero() {
        qt
    } else {
        qt + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two_enclosure() {
        let e = pow_enclosure(2, &rat(1, 2), 40);
        let lo2 = &e.lo * &e.lo;
        let hi2 = &e.hi * &e.hi;
        assert!(lo2 <= rat_int(2) && rat_int(2) <= hi2);
        assert!(e.width() <= rat(1, 1 << 39));
    }

    #[test]
    fn negative_and_integral_exponents() {
        assert_eq!(pow_enclosure(3, &rat(2, 1), 10), Enclosure::from_int(9));
        let e = pow_enclosure(4, &rat(-1, 2), 10);
        assert_eq!(e, Enclosure::exact(rat(1, 2)));
    }

    #[test]
    fn log_of_power_is_enclosed() {
        let x = Enclosure::from_int(8);
        let l = log_enclosure(&x, 2, 30);
        assert!(l.contains(&rat_int(3)));
        let l = log_enclosure(&Enclosure::from_int(10), 10, 20);
        assert!(l.contains(&rat_int(1)));
        let l = log_enclosure(&Enclosure::from_int(3), 2, 30);
        // log2(3) = 1.58496250072...
        assert!(l.lo < rat(158496251, 100000000) && l.hi > rat(158496250, 100000000));
    }

    #[test]
    fn outward_rounding_contains() {
        let e = Enclosure::exact(rat(1, 3));
        let r = e.round_outward(8);
        assert!(r.contains(&rat(1, 3)));
        assert!(r.width() <= rat(1, 128));
    }
}
