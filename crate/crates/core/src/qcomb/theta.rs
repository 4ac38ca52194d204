//! The constants C(q) = sum over all integers r of q^(-r^2) and
//! D(q) = prod_{j >= 1} (1 - q^(-j))^(-1), enclosed to a requested width.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::enclosure::{log_enclosure, rat_int, Enclosure};
use crate::error::{Error, Result};
use crate::serde_util::rational_str;

/// Number of fractional bits needed so that `2^-bits <= tol / 4`.
fn bits_for(tol: &BigRational) -> u32 {
    let quarter = tol / BigRational::from_integer(4.into());
    let mut bits = 0u32;
    let mut v = BigRational::one();
    while v > quarter {
        v /= BigRational::from_integer(2.into());
        bits += 1;
    }
    bits
}

/// Encloses C(s) for any rational `s > 1`.
pub fn theta_c(s: &BigRational, tol: &BigRational) -> Result<Enclosure> {
    if s <= &BigRational::one() {
        return Err(Error::invalid(format!("theta base must exceed 1, got {s}")));
    }
    if !tol.is_positive() {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let half_tol = tol / BigRational::from_integer(2.into());
    let inv = s.recip();
    let mut partial = BigRational::one();
    let mut r: u64 = 0;
    loop {
        r += 1;
        // s^(-r^2)
        let term = num_traits::pow(inv.clone(), (r * r) as usize);
        partial += &term * BigRational::from_integer(2.into());
        // sum_{k > r} s^(-k^2) <= s^(-(r+1)^2) / (1 - s^(-(2r+3)))
        let next = num_traits::pow(inv.clone(), ((r + 1) * (r + 1)) as usize);
        let ratio = num_traits::pow(inv.clone(), (2 * r + 3) as usize);
        let tail = next / (BigRational::one() - ratio);
        let tail2 = tail * BigRational::from_integer(2.into());
        if tail2 <= half_tol {
            let enc = Enclosure::new(partial.clone(), partial + tail2);
            return Ok(enc.round_outward(bits_for(tol)));
        }
    }
}

/// Encloses D(q) for a rational `q > 1`.
pub fn d_product(q: &BigRational, tol: &BigRational) -> Result<Enclosure> {
    if q <= &BigRational::one() {
        return Err(Error::invalid(format!("product base must exceed 1, got {q}")));
    }
    if !tol.is_positive() {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let half_tol = tol / BigRational::from_integer(2.into());
    let bits = bits_for(tol) + 16;
    let inv = q.recip();
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    // Lower bound on the partial product, kept small by rounding down.
    let mut partial = one.clone();
    let mut qj = one.clone();
    let mut j: u64 = 0;
    loop {
        j += 1;
        qj *= &inv;
        partial = super::enclosure::floor_dyadic(&(&partial / (&one - &qj)), bits);
        // log of the remaining factors is at most sum_{k > j} 2 q^(-k) = 2 q^(-j) / (q - 1),
        // valid once q^(-(j+1)) <= 1/2.
        if qj.clone() * &inv > one.clone() / &two {
            continue;
        }
        let tau = &two * &qj / (q - &one);
        if tau >= one {
            continue;
        }
        // Partial product rounding lost at most j * 2^-bits relative; absorb it.
        let slack = BigRational::new(BigInt::from(j + 1), BigInt::one() << bits);
        let upper_partial = &partial * (&one + &slack);
        let hi = &upper_partial / (&one - &tau);
        if &hi - &partial <= half_tol {
            let enc = Enclosure::new(partial, hi);
            return Ok(enc.round_outward(bits_for(tol)));
        }
    }
}

/// Enclosures of C(q), D(q) and epsilon = log_q(C(q) D(q)) for an integer q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundConstants {
    pub q: u64,
    pub c: Enclosure,
    pub d: Enclosure,
    /// Enclosure of log_q(C(q) D(q)).
    pub epsilon: Enclosure,
    #[serde(with = "rational_str")]
    pub tol: BigRational,
}

impl BoundConstants {
    pub fn c_lo(&self) -> &BigRational {
        &self.c.lo
    }
    pub fn c_hi(&self) -> &BigRational {
        &self.c.hi
    }
    pub fn d_lo(&self) -> &BigRational {
        &self.d.lo
    }
    pub fn d_hi(&self) -> &BigRational {
        &self.d.hi
    }
    pub fn epsilon_hi(&self) -> &BigRational {
        &self.epsilon.hi
    }

    /// Enclosure of C(q)^a D(q)^b.
    pub fn cd_power(&self, a: u32, b: u32) -> Enclosure {
        self.c.pow(a).mul(&self.d.pow(b))
    }
}

/// Enclosures of C(q) and D(q) of width at most `tol`, plus epsilon.
pub fn theta_constants(q: u64, tol: &BigRational) -> Result<BoundConstants> {
    if q < 2 {
        return Err(Error::invalid(format!("q must be at least 2, got {q}")));
    }
    let qr = rat_int(q);
    let c = theta_c(&qr, tol)?;
    let d = d_product(&qr, tol)?;
    let cd = c.mul(&d);
    let epsilon = log_enclosure(&cd, q, bits_for(tol) + 4);
    Ok(BoundConstants {
        q,
        c,
        d,
        epsilon,
        tol: tol.clone(),
    })
}

/// Default truncation tolerance, 10^-12.
pub fn default_tol() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

impl Default for BoundConstants {
    fn default() -> Self {
        theta_constants(2, &default_tol()).expect("q = 2 is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcomb::enclosure::rat;

    #[test]
    fn c2_and_d2_in_stated_ranges() {
        let k = theta_constants(2, &default_tol()).unwrap();
        assert!(k.c.lo > rat_int(2) && k.c.hi < rat(9, 4));
        assert!(k.d.lo > rat_int(3) && k.d.hi < rat(7, 2));
        assert!(k.c.width() <= default_tol());
        assert!(k.d.width() <= default_tol());
    }

    #[test]
    fn known_digits() {
        // C(2) = 2.128936827211877..., D(2) = 3.462746619455...
        let k = theta_constants(2, &default_tol()).unwrap();
        assert!((k.c.approx() - 2.128936827211877).abs() < 1e-11);
        assert!((k.d.approx() - 3.462746619455).abs() < 1e-11);
    }

    #[test]
    fn large_q_near_one() {
        let k = theta_constants(101, &default_tol()).unwrap();
        let near = rat(102, 100);
        assert!(k.c.hi < near && k.d.hi < near);
        assert!(k.c.lo > rat_int(1) && k.d.lo > rat_int(1));
    }

    #[test]
    fn loose_tolerance_still_within_width() {
        for q in [2u64, 3, 5, 7] {
            let tol = rat(1, 1000);
            let k = theta_constants(q, &tol).unwrap();
            assert!(k.c.width() <= tol && k.d.width() <= tol);
        }
    }

    #[test]
    fn rational_base_theta() {
        // C(s) decreases in s.
        let tol = rat(1, 1_000_000);
        let a = theta_c(&rat(3, 2), &tol).unwrap();
        let b = theta_c(&rat(2, 1), &tol).unwrap();
        assert!(a.lo > b.hi);
        assert!(theta_c(&rat(1, 1), &tol).is_err());
    }
}
