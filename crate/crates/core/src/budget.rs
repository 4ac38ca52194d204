//! Resource caps for the enumeration oracles.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::serde_util::{parse_rational, rational_str};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    /// Largest Galois number a subspace enumeration may visit.
    pub max_subspaces: u64,
    /// Cap on subspace-times-generator steps in an explicit orbit census.
    pub max_census_ops: u64,
    /// Largest group order the class-2 model will build.
    pub max_group_order: u64,
    /// Cap on d-tuples scanned by the automorphism oracle.
    pub max_aut_tuples: u64,
    /// Largest group order for subgroup enumeration.
    pub max_subgroup_order: u64,
    /// Cap on conjugacy classes enumerated for a census.
    pub max_classes: u64,
    /// Random samples per configuration in sampled checks.
    pub samples: u64,
    /// Truncation tolerance for the constants C and D.
    #[serde(with = "rational_str")]
    pub tol: BigRational,
    /// Seed for sampled checks.
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_subspaces: 10_000_000,
            max_census_ops: 100_000_000,
            max_group_order: 1 << 20,
            max_aut_tuples: 1_000_000,
            max_subgroup_order: 1 << 10,
            max_classes: 100_000,
            samples: 500,
            tol: crate::qcomb::default_tol(),
            seed: 0x5eed,
        }
    }
}

impl Budget {
    pub const ENV_VAR: &'static str = "PGC_BUDGET";

    pub fn small() -> Self {
        Budget {
            max_subspaces: 100_000,
            max_census_ops: 1_000_000,
            max_group_order: 1 << 12,
            max_aut_tuples: 100_000,
            max_subgroup_order: 256,
            max_classes: 10_000,
            samples: 50,
            ..Budget::default()
        }
    }

    pub fn large() -> Self {
        Budget {
            max_subspaces: 1_000_000_000,
            max_census_ops: 10_000_000_000,
            max_group_order: 1 << 24,
            max_aut_tuples: 100_000_000,
            max_subgroup_order: 1 << 14,
            max_classes: 10_000_000,
            samples: 2000,
            ..Budget::default()
        }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "small" => Some(Self::small()),
            "default" => Some(Self::default()),
            "large" => Some(Self::large()),
            _ => None,
        }
    }

    /// Parses a preset name, or comma-separated `key=value` overrides applied to
    /// a preset (`small,samples=10`) or to the default.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut b = Budget::default();
        for (idx, item) in spec.split(',').map(str::trim).filter(|s| !s.is_empty()).enumerate() {
            match item.split_once('=') {
                None if idx == 0 => {
                    b = Self::preset(item)
                        .ok_or_else(|| Error::invalid(format!("unknown budget preset {item:?}")))?;
                }
                None => return Err(Error::invalid(format!("expected key=value, got {item:?}"))),
                Some((k, v)) => b.set(k.trim(), v.trim())?,
            }
        }
        Ok(b)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let int = || -> Result<u64> {
            value
                .replace('_', "")
                .parse::<u64>()
                .map_err(|_| Error::invalid(format!("budget key {key} expects an integer, got {value:?}")))
        };
        match key {
            "max_subspaces" => self.max_subspaces = int()?,
            "max_census_ops" => self.max_census_ops = int()?,
            "max_group_order" => self.max_group_order = int()?,
            "max_aut_tuples" => self.max_aut_tuples = int()?,
            "max_subgroup_order" => self.max_subgroup_order = int()?,
            "max_classes" => self.max_classes = int()?,
            "samples" => self.samples = int()?,
            "seed" => self.seed = int()?,
            "tol" => {
                let t = parse_rational(value)
                    .ok_or_else(|| Error::invalid(format!("bad tolerance {value:?}")))?;
                if t <= BigRational::from_integer(0.into()) {
                    return Err(Error::invalid("tolerance must be positive"));
                }
                self.tol = t;
            }
            _ => return Err(Error::invalid(format!("unknown budget key {key:?}"))),
        }
        Ok(())
    }

    /// The default budget, overridden by the environment variable when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV_VAR) {
            Ok(s) if !s.trim().is_empty() => Self::parse(&s),
            _ => Ok(Self::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_presets_and_overrides() {
        assert_eq!(Budget::parse("default").unwrap(), Budget::default());
        let b = Budget::parse("small,samples=7").unwrap();
        assert_eq!(b.samples, 7);
        assert_eq!(b.max_subspaces, Budget::small().max_subspaces);
        let b = Budget::parse("tol=1e-6").unwrap();
        assert_eq!(b.tol, BigRational::new(1.into(), 1_000_000.into()));
        assert!(Budget::parse("bogus").is_err());
        assert!(Budget::parse("samples=x").is_err());
        assert!(Budget::parse("nokey=1").is_err());
    }

    #[test]
    fn serde_round_trip() {
        let b = Budget::small();
        let s = serde_json::to_string(&b).unwrap();
        let back: Budget = serde_json::from_str(&s).unwrap();
        assert_eq!(b, back);
    }
}
