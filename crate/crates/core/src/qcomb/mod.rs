//! Exact q-combinatorics and certified evaluation of the numerical bounds.

mod bounds;
pub mod enclosure;
mod quarter;
mod theta;

pub use bounds::*;
pub use enclosure::{Enclosure, Verdict};
pub use quarter::QuarterPower;
pub use theta::{d_product, default_tol, theta_c, theta_constants, BoundConstants};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        Err(Error::invalid(format!("q must be at least 2, got {q}")))
    } else {
        Ok(())
    }
}

/// Gaussian coefficient: the number of `k`-dimensional subspaces of an
/// `n`-dimensional space over a field with `q` elements. Zero when `k` is out of range.
pub fn gauss(n: i64, k: i64, q: u64) -> Result<BigInt> {
    check_q(q)?;
    if n < 0 {
        return Err(Error::invalid(format!("n must be non-negative, got {n}")));
    }
    if k < 0 || k > n {
        return Ok(BigInt::zero());
    }
    let k = k.min(n - k) as u32;
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= q.pow(n as u32 - i) - 1u32;
        den *= q.pow(i + 1) - 1u32;
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// Galois number: the total number of subspaces of an `n`-dimensional space over F_q.
pub fn galois(n: i64, q: u64) -> Result<BigInt> {
    check_q(q)?;
    let mut total = BigInt::zero();
    for k in 0..=n {
        total += gauss(n, k, q)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss(2, 1, 2).unwrap(), BigInt::from(3));
        assert_eq!(gauss(5, 0, 3).unwrap(), BigInt::from(1));
        assert_eq!(gauss(4, 2, 2).unwrap(), BigInt::from(35));
        assert_eq!(gauss(3, 4, 2).unwrap(), BigInt::from(0));
        assert_eq!(gauss(3, -1, 2).unwrap(), BigInt::from(0));
        assert!(gauss(3, 1, 1).is_err());
    }

    #[test]
    fn galois_examples() {
        assert_eq!(galois(0, 2).unwrap(), BigInt::from(1));
        assert_eq!(galois(2, 2).unwrap(), BigInt::from(5));
        assert_eq!(galois(3, 3).unwrap(), BigInt::from(28));
        assert_eq!(galois(4, 2).unwrap(), BigInt::from(67));
        assert!(galois(2, 0).is_err());
    }

    #[test]
    fn gauss_symmetry_and_pascal() {
        for q in [2u64, 3, 5] {
            for n in 0..=8i64 {
                for k in 0..=n {
                    assert_eq!(gauss(n, k, q).unwrap(), gauss(n, n - k, q).unwrap());
                    if n >= 1 && k >= 1 {
                        // q-Pascal: [n,k] = [n-1,k-1] + q^k [n-1,k]
                        let lhs = gauss(n, k, q).unwrap();
                        let rhs = gauss(n - 1, k - 1, q).unwrap()
                            + BigInt::from(q).pow(k as u32) * gauss(n - 1, k, q).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
