use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::ncpoly::{expand, NcPoly};
use super::word::{lyndon_words, standard_bracketing, Word};
use crate::error::{Error, Result};

pub fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            n /= f;
            if n.is_multiple_of(f) {
                return 0;
            }
            result = -result;
        }
        f += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the degree-n component of the free Lie algebra on d generators.
pub fn witt_dim(d: u64, n: u64) -> u64 {
    let mut total: i128 = 0;
    for j in 1..=n {
        if n.is_multiple_of(j) {
            total += mobius(n / j) as i128 * (d as i128).pow(j as u32);
        }
    }
    (total / n as i128) as u64
}

/// Witt dimensions w_1..w_n and their partial sums d_1..d_n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerRanks {
    pub d: u64,
    pub witt: Vec<u64>,
    pub cumulative: Vec<u64>,
}

impl LayerRanks {
    /// d_i for 1-based i.
    pub fn d_at(&self, i: usize) -> u64 {
        self.cumulative[i - 1]
    }

    pub fn w_at(&self, i: usize) -> u64 {
        self.witt[i - 1]
    }
}

pub fn layer_ranks(d: u64, n: usize) -> Result<LayerRanks> {
    if d < 1 || n < 1 {
        return Err(Error::invalid("layer ranks need d >= 1 and n >= 1"));
    }
    let witt: Vec<u64> = (1..=n as u64).map(|i| witt_dim(d, i)).collect();
    let cumulative = witt
        .iter()
        .scan(0u64, |acc, &w| {
            *acc += w;
            Some(*acc)
        })
        .collect();
    Ok(LayerRanks { d, witt, cumulative })
}

/// The bracketed Lyndon basis of the degree-n Lie component over F_p.
#[derive(Debug, Clone)]
pub struct LieBasis {
    d: u8,
    degree: usize,
    p: u32,
    words: Vec<Word>,
    expansions: Vec<NcPoly>,
    index: HashMap<Word, usize>,
}

impl LieBasis {
    pub fn new(d: u8, degree: usize, p: u32) -> Result<Self> {
        crate::fplinalg::matrix::check_prime(p)?;
        if d == 0 || degree == 0 {
            return Err(Error::invalid("Lie basis needs d >= 1 and degree >= 1"));
        }
        let words = lyndon_words(d, degree);
        let expansions = words
            .iter()
            .map(|w| expand(&standard_bracketing(w).expect("Lyndon"), p))
            .collect();
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(LieBasis {
            d,
            degree,
            p,
            words,
            expansions,
            index,
        })
    }

    pub fn d(&self) -> u8 {
        self.d
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.words.len()
    }
    pub fn words(&self) -> &[Word] {
        &self.words
    }
    pub fn expansions(&self) -> &[NcPoly] {
        &self.expansions
    }

    /// Coordinates in the bracketed Lyndon basis, by repeatedly cancelling the
    /// least word. None when f is not a Lie element (or has other degrees).
    pub fn to_lyndon_coords(&self, f: &NcPoly) -> Option<Vec<u32>> {
        let mut coords = vec![0u32; self.dim()];
        let mut rest = f.clone();
        while let Some((w, c)) = rest.least_term() {
            if w.len() != self.degree {
                return None;
            }
            let &i = self.index.get(w)?;
            coords[i] = (coords[i] + c) % self.p;
            let neg = self.p - c;
            rest.add_scaled(&self.expansions[i], neg);
        }
        Some(coords)
    }

    /// Inverse of `to_lyndon_coords`.
    pub fn from_coords(&self, c: &[u32]) -> NcPoly {
        let mut f = NcPoly::zero(self.p);
        for (i, &x) in c.iter().enumerate() {
            f.add_scaled(&self.expansions[i], x);
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fplinalg::FpMatrix;

    #[test]
    fn rank_examples() {
        let r = layer_ranks(2, 3).unwrap();
        assert_eq!(r.witt, vec![2, 1, 2]);
        assert_eq!(r.cumulative, vec![2, 3, 5]);
        let r = layer_ranks(3, 3).unwrap();
        assert_eq!(r.w_at(2), 3);
        assert_eq!(r.d_at(2), 6);
        assert_eq!(r.d_at(3), 14);
        assert_eq!(layer_ranks(2, 1).unwrap().d_at(1), 2);
    }

    #[test]
    fn witt_matches_lyndon_counts() {
        for d in 1..=4u8 {
            for n in 1..=8 {
                assert_eq!(witt_dim(d as u64, n as u64) as usize, lyndon_words(d, n).len());
            }
        }
    }

    #[test]
    fn triangular_with_unit_leading_term() {
        for p in [2u32, 3, 5] {
            for d in 1..=3u8 {
                for n in 1..=6 {
                    let b = LieBasis::new(d, n, p).unwrap();
                    for (w, e) in b.words().iter().zip(b.expansions()) {
                        assert_eq!(e.least_term(), Some((w, 1)));
                    }
                }
            }
        }
    }

    #[test]
    fn expansions_are_independent() {
        for p in [2u32, 3] {
            for n in 1..=5 {
                let b = LieBasis::new(3, n, p).unwrap();
                // Dense matrix over all words of length n.
                let total = 3usize.pow(n as u32);
                let mut rows = Vec::new();
                for e in b.expansions() {
                    let mut r = vec![0i64; total];
                    for (w, &c) in e.terms() {
                        let idx = w.letters().iter().fold(0usize, |a, &l| a * 3 + (l as usize - 1));
                        r[idx] = c as i64;
                    }
                    rows.push(r);
                }
                let m = FpMatrix::from_rows_with_cols(p, total, &rows).unwrap();
                assert_eq!(m.rank(), b.dim());
            }
        }
    }

    #[test]
    fn coords_examples() {
        let b = LieBasis::new(2, 2, 3).unwrap();
        let x12 = NcPoly::monomial(3, Word::new(vec![1, 2]).unwrap(), 1);
        assert_eq!(b.to_lyndon_coords(&x12), None);
        assert_eq!(b.to_lyndon_coords(&NcPoly::zero(3)), Some(vec![0]));
        let b = LieBasis::new(3, 4, 5).unwrap();
        for (i, e) in b.expansions().iter().enumerate() {
            let c = b.to_lyndon_coords(e).unwrap();
            assert!(c.iter().enumerate().all(|(j, &x)| x == u32::from(i == j)));
        }
    }
}
