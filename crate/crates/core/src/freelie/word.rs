use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonempty word in the letters x_1, ..., x_d, stored as 1-based indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u8>);

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            write!(f, "x{l}")?;
        }
        Ok(())
    }
}

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.is_empty() || letters.contains(&0) {
            return Err(Error::invalid("words are nonempty with letters numbered from 1"));
        }
        Ok(Word(letters))
    }

    pub(crate) fn from_vec(letters: Vec<u8>) -> Self {
        debug_assert!(!letters.is_empty());
        Word(letters)
    }

    pub fn letter(j: u8) -> Self {
        Word(vec![j])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    /// Strictly smaller than each of its proper nonempty suffixes.
    pub fn is_lyndon(&self) -> bool {
        is_lyndon(&self.0)
    }
}

pub(crate) fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// All Lyndon words of length n over d letters, in lexicographic order (Duval).
pub fn lyndon_words(d: u8, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if d == 0 || n == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![1];
    loop {
        if w.len() == n {
            out.push(Word(w.clone()));
        }
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&d) {
            w.pop();
        }
        match w.last_mut() {
            Some(l) => *l += 1,
            None => break,
        }
    }
    out
}

/// Oracle: filter all d^n words by the suffix condition.
pub fn lyndon_words_by_filter(d: u8, n: usize) -> Vec<Word> {
    let total = (d as u64).pow(n as u32);
    let mut out: Vec<Word> = (0..total)
        .map(|mut x| {
            let mut v = vec![0u8; n];
            for slot in v.iter_mut().rev() {
                *slot = (x % d as u64) as u8 + 1;
                x /= d as u64;
            }
            v
        })
        .filter(|v| is_lyndon(v))
        .map(Word)
        .collect();
    out.sort();
    out
}

/// A bracketing of letters.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BracketTree {
    Leaf(u8),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl fmt::Debug for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Leaf(l) => write!(f, "x{l}"),
            BracketTree::Node(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

impl BracketTree {
    pub fn node(a: BracketTree, b: BracketTree) -> Self {
        BracketTree::Node(Box::new(a), Box::new(b))
    }

    /// The leaf sequence.
    pub fn foliage(&self) -> Word {
        fn rec(t: &BracketTree, out: &mut Vec<u8>) {
            match t {
                BracketTree::Leaf(l) => out.push(*l),
                BracketTree::Node(a, b) => {
                    rec(a, out);
                    rec(b, out);
                }
            }
        }
        let mut v = Vec::new();
        rec(self, &mut v);
        Word(v)
    }
}

/// Right standard bracketing: split at the longest proper Lyndon suffix.
pub fn standard_bracketing(w: &Word) -> Result<BracketTree> {
    if !w.is_lyndon() {
        return Err(Error::invalid(format!("{w} is not a Lyndon word")));
    }
    Ok(bracket_rec(&w.0))
}

fn bracket_rec(w: &[u8]) -> BracketTree {
    if w.len() == 1 {
        return BracketTree::Leaf(w[0]);
    }
    let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("last letter is Lyndon");
    BracketTree::node(bracket_rec(&w[..split]), bracket_rec(&w[split..]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u8]) -> Word {
        Word::new(v.to_vec()).unwrap()
    }

    #[test]
    fn lyndon_examples() {
        assert_eq!(lyndon_words(2, 1), vec![w(&[1]), w(&[2])]);
        assert_eq!(lyndon_words(2, 2), vec![w(&[1, 2])]);
        assert_eq!(lyndon_words(2, 3), vec![w(&[1, 1, 2]), w(&[1, 2, 2])]);
    }

    #[test]
    fn duval_matches_filter() {
        for d in 1..=4u8 {
            for n in 1..=6 {
                assert_eq!(lyndon_words(d, n), lyndon_words_by_filter(d, n), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn bracketing_examples() {
        let t = standard_bracketing(&w(&[1, 2])).unwrap();
        assert_eq!(t.to_string(), "[x1, x2]");
        let t = standard_bracketing(&w(&[1, 1, 2])).unwrap();
        assert_eq!(t.to_string(), "[x1, [x1, x2]]");
        let t = standard_bracketing(&w(&[1, 2, 2])).unwrap();
        assert_eq!(t.to_string(), "[[x1, x2], x2]");
        assert!(standard_bracketing(&w(&[2, 1])).is_err());
        for word in lyndon_words(3, 5) {
            assert_eq!(standard_bracketing(&word).unwrap().foliage(), word);
        }
    }
}
