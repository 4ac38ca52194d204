use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::{BracketTree, Word};
use crate::fplinalg::FpMatrix;

/// A noncommutative polynomial over F_p with nonzero coefficients only.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NcPoly {
    p: u32,
    terms: BTreeMap<Word, u32>,
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self
            .terms
            .iter()
            .map(|(w, &c)| if c == 1 { w.to_string() } else { format!("{c}*{w}") })
            .collect();
        write!(f, "{}", s.join(" + "))
    }
}

impl NcPoly {
    pub fn zero(p: u32) -> Self {
        NcPoly {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(p: u32, w: Word, c: u32) -> Self {
        let mut s = Self::zero(p);
        s.add_term(w, c);
        s
    }

    pub fn letter(p: u32, j: u8) -> Self {
        Self::monomial(p, Word::letter(j), 1)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<Word, u32> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> u32 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: u32) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % self.p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, o: &NcPoly, c: u32) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        for (w, &v) in &o.terms {
            let t = (v as u64 * c as u64 % self.p as u64) as u32;
            self.add_term(w.clone(), t);
        }
    }

    pub fn add(&self, o: &NcPoly) -> NcPoly {
        let mut s = self.clone();
        s.add_scaled(o, 1);
        s
    }

    pub fn sub(&self, o: &NcPoly) -> NcPoly {
        let mut s = self.clone();
        s.add_scaled(o, self.p - 1);
        s
    }

    pub fn scale(&self, c: u32) -> NcPoly {
        let mut s = NcPoly::zero(self.p);
        s.add_scaled(self, c);
        s
    }

    pub fn mul(&self, o: &NcPoly) -> NcPoly {
        let mut s = NcPoly::zero(self.p);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &o.terms {
                let c = (ca as u64 * cb as u64 % self.p as u64) as u32;
                s.add_term(a.concat(b), c);
            }
        }
        s
    }

    /// [f, g] = fg - gf.
    pub fn bracket(&self, o: &NcPoly) -> NcPoly {
        self.mul(o).sub(&o.mul(self))
    }

    /// The homogeneous component of the given degree.
    pub fn degree_part(&self, n: usize) -> NcPoly {
        NcPoly {
            p: self.p,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == n)
                .map(|(w, &c)| (w.clone(), c))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(Word::len);
        match lens.next() {
            None => true,
            Some(l) => lens.all(|x| x == l),
        }
    }

    /// Least word (lexicographic within degree) and its coefficient.
    pub fn least_term(&self) -> Option<(&Word, u32)> {
        self.terms.iter().next().map(|(w, &c)| (w, c))
    }

    /// The algebra substitution x_j -> sum_k g[k][j] x_k.
    pub fn substitute(&self, g: &FpMatrix) -> NcPoly {
        let d = g.rows();
        let images: Vec<Vec<(u8, u32)>> = (0..d)
            .map(|j| {
                (0..d)
                    .filter_map(|k| {
                        let c = g.get(k, j);
                        (c != 0).then_some((k as u8 + 1, c))
                    })
                    .collect()
            })
            .collect();
        let p = self.p as u64;
        let mut out = NcPoly::zero(self.p);
        for (w, &c) in &self.terms {
            // Expand the product of linear forms letter by letter.
            let mut partial: Vec<(Vec<u8>, u64)> = vec![(Vec::new(), c as u64)];
            for &l in w.letters() {
                let img = &images[l as usize - 1];
                let mut next = Vec::with_capacity(partial.len() * img.len());
                for (pre, pc) in &partial {
                    for &(k, kc) in img {
                        let mut v = pre.clone();
                        v.push(k);
                        next.push((v, pc * kc as u64 % p));
                    }
                }
                partial = next;
            }
            for (v, pc) in partial {
                out.add_term(Word::from_vec(v), pc as u32);
            }
        }
        out
    }
}

/// Expansion of a bracketing under [f, g] = fg - gf.
pub fn expand(t: &BracketTree, p: u32) -> NcPoly {
    match t {
        BracketTree::Leaf(l) => NcPoly::letter(p, *l),
        BracketTree::Node(a, b) => expand(a, p).bracket(&expand(b, p)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::word::standard_bracketing;

    fn w(v: &[u8]) -> Word {
        Word::new(v.to_vec()).unwrap()
    }

    #[test]
    fn expand_examples() {
        let b12 = expand(&standard_bracketing(&w(&[1, 2])).unwrap(), 2);
        assert_eq!(b12.coeff(&w(&[1, 2])), 1);
        assert_eq!(b12.coeff(&w(&[2, 1])), 1);
        assert_eq!(b12.terms().len(), 2);
        let b12 = expand(&standard_bracketing(&w(&[1, 2])).unwrap(), 3);
        assert_eq!(b12.coeff(&w(&[2, 1])), 2);
        let b112 = expand(&standard_bracketing(&w(&[1, 1, 2])).unwrap(), 3);
        assert_eq!(b112.coeff(&w(&[1, 1, 2])), 1);
        assert_eq!(b112.coeff(&w(&[1, 2, 1])), 1); // -2 = 1 mod 3
        assert_eq!(b112.coeff(&w(&[2, 1, 1])), 1);
        assert_eq!(b112.terms().len(), 3);
    }

    #[test]
    fn cancellation_drops_terms() {
        let mut f = NcPoly::letter(3, 1);
        f.add_term(w(&[1]), 2);
        assert!(f.is_zero());
        let g = NcPoly::letter(5, 2);
        assert!(g.sub(&g).is_zero());
    }

    #[test]
    fn substitution_is_multiplicative() {
        let g = FpMatrix::from_rows(3, &[vec![1, 2], vec![1, 0]]).unwrap();
        let a = NcPoly::letter(3, 1).add(&NcPoly::letter(3, 2).scale(2));
        let b = NcPoly::monomial(3, w(&[2, 1]), 1);
        assert_eq!(a.mul(&b).substitute(&g), a.substitute(&g).mul(&b.substitute(&g)));
    }
}
