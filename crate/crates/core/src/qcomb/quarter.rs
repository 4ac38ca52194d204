use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::enclosure::{int_pow_rat, pow_enclosure, rat, Enclosure};
use crate::serde_util::rational_str;

/// The number `coeff * q^(exp4 / 4)` with a non-negative rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarterPower {
    #[serde(with = "rational_str")]
    pub coeff: BigRational,
    pub q: u64,
    pub exp4: i64,
}

impl QuarterPower {
    pub fn new(coeff: BigRational, q: u64, exp4: i64) -> Self {
        assert!(!coeff.is_negative(), "quarter powers carry non-negative coefficients");
        QuarterPower { coeff, q, exp4 }
    }

    /// The fourth power, which is always rational.
    pub fn fourth_power(&self) -> BigRational {
        num_traits::pow(self.coeff.clone(), 4) * int_pow_rat(self.q, self.exp4)
    }

    /// Exact comparison against a non-negative rational.
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        assert!(!x.is_negative());
        let x4 = num_traits::pow(x.clone(), 4);
        self.fourth_power().cmp(&x4)
    }

    pub fn cmp_int(&self, x: &BigInt) -> Ordering {
        self.cmp_rational(&BigRational::from_integer(x.clone()))
    }

    pub fn mul(&self, o: &QuarterPower) -> QuarterPower {
        assert_eq!(self.q, o.q);
        QuarterPower::new(&self.coeff * &o.coeff, self.q, self.exp4 + o.exp4)
    }

    pub fn enclosure(&self, bits: u32) -> Enclosure {
        if self.coeff.is_zero() {
            return Enclosure::from_int(0);
        }
        pow_enclosure(self.q, &rat(self.exp4, 4), bits).scale(&self.coeff)
    }
}
