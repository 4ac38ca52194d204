use std::cmp::Ordering;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::matrix::{check_prime, rref_in_place, FpMatrix};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// A subspace of F_p^m, stored by its reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    basis: FpMatrix,
}

impl Subspace {
    /// Canonical form of the row span of `spanning`.
    pub fn canonicalize(spanning: &FpMatrix) -> Subspace {
        Subspace {
            basis: spanning.rref().0,
        }
    }

    /// Builds the span of integer vectors.
    pub fn span(p: u32, m: usize, vectors: &[Vec<i64>]) -> Result<Subspace> {
        check_prime(p)?;
        if vectors.iter().any(|v| v.len() != m) {
            return Err(Error::invalid(format!("vectors must have length {m}")));
        }
        let mat = FpMatrix::from_rows_with_cols(p, m, vectors)?;
        Ok(Self::canonicalize(&mat))
    }

    /// Wraps rows already in reduced row-echelon form.
    pub fn from_rref_data(p: u32, m: usize, data: Vec<u32>) -> Subspace {
        let rows = if m == 0 { 0 } else { data.len() / m };
        Subspace {
            basis: FpMatrix::from_data(p, rows, m, data),
        }
    }

    pub fn zero(p: u32, m: usize) -> Subspace {
        Subspace {
            basis: FpMatrix::zeros(p, 0, m),
        }
    }

    pub fn full(p: u32, m: usize) -> Subspace {
        Subspace {
            basis: FpMatrix::identity(p, m),
        }
    }

    pub fn p(&self) -> u32 {
        self.basis.p()
    }
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| self.basis.row(i).iter().position(|&x| x != 0).unwrap())
            .collect()
    }

    fn check_compatible(&self, o: &Subspace) -> Result<()> {
        if self.p() != o.p() || self.ambient_dim() != o.ambient_dim() {
            return Err(Error::invalid("subspaces live in different spaces"));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        let mut data = self.basis.data().to_vec();
        data.extend_from_slice(v);
        rref_in_place(&mut data, self.ambient_dim(), self.p()).len() == self.dim()
    }

    pub fn contains(&self, o: &Subspace) -> bool {
        self.sum(o).is_ok_and(|s| s.dim() == self.dim())
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.check_compatible(o)?;
        Ok(Self::canonicalize(&self.basis.vstack(&o.basis)))
    }

    pub fn intersection(&self, o: &Subspace) -> Result<Subspace> {
        self.check_compatible(o)?;
        // Zassenhaus: rows [a | a] and [b | 0]; rows with zero left half give the intersection.
        let m = self.ambient_dim();
        let p = self.p();
        let mut data = Vec::with_capacity((self.dim() + o.dim()) * 2 * m);
        for i in 0..self.dim() {
            data.extend_from_slice(self.basis.row(i));
            data.extend_from_slice(self.basis.row(i));
        }
        for i in 0..o.dim() {
            data.extend_from_slice(o.basis.row(i));
            data.extend(std::iter::repeat_n(0, m));
        }
        let piv = rref_in_place(&mut data, 2 * m, p);
        let mut out = Vec::new();
        for (r, &c) in piv.iter().enumerate() {
            if c >= m {
                out.extend_from_slice(&data[r * 2 * m + m..(r + 1) * 2 * m]);
            }
        }
        let mut sub = out;
        rref_in_place(&mut sub, m, p);
        Ok(Self::from_rref_data(p, m, sub))
    }

    /// The image g(W) under the column action of a square matrix.
    pub fn image(&self, g: &FpMatrix) -> Result<Subspace> {
        if !g.is_square() || g.rows() != self.ambient_dim() || g.p() != self.p() {
            return Err(Error::invalid(format!(
                "cannot apply a {}x{} matrix to a subspace of F_{}^{}",
                g.rows(),
                g.cols(),
                self.p(),
                self.ambient_dim()
            )));
        }
        // Rows B g^T are the images of the basis vectors.
        Ok(Self::canonicalize(&self.basis.mul_unchecked(&g.transpose())))
    }

    /// Linear image under an arbitrary matrix (rows of the result live in F_p^{g.rows()}).
    pub fn map(&self, g: &FpMatrix) -> Result<Subspace> {
        if g.cols() != self.ambient_dim() || g.p() != self.p() {
            return Err(Error::invalid("dimension mismatch in linear map"));
        }
        Ok(Self::canonicalize(&self.basis.mul_unchecked(&g.transpose())))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by dimension, then pivot columns, then basis entries.
impl Ord for Subspace {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.p(), self.ambient_dim(), self.dim())
            .cmp(&(o.p(), o.ambient_dim(), o.dim()))
            .then_with(|| self.pivots().cmp(&o.pivots()))
            .then_with(|| self.basis.data().cmp(o.basis.data()))
    }
}

// ---------------------------------------------------------------------------
// Dense ranking of all subspaces

#[derive(Debug, Clone)]
struct Block {
    dim: usize,
    pivots: Vec<usize>,
    offset: u64,
    count: u64,
    /// (row, column) of each free entry, row-major.
    free: Vec<(usize, usize)>,
}

/// A bijection between the subspaces of F_p^m and 0..galois(m, p), compatible
/// with the ordering by (dimension, pivots, entries).
#[derive(Debug, Clone)]
pub struct SubspaceIndexer {
    p: u32,
    m: usize,
    blocks: Vec<Block>,
    by_mask: Vec<u32>,
    total: u64,
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..m {
            if m - c < k - cur.len() {
                break;
            }
            cur.push(c);
            rec(c + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

impl SubspaceIndexer {
    pub fn new(p: u32, m: usize) -> Result<Self> {
        check_prime(p)?;
        if m > 24 {
            return Err(Error::invalid(format!("ambient dimension {m} too large to index")));
        }
        let mut blocks = Vec::new();
        let mut by_mask = vec![u32::MAX; 1 << m];
        let mut offset: u64 = 0;
        for k in 0..=m {
            for pivots in combinations(m, k) {
                let mut free = Vec::new();
                for (r, &pc) in pivots.iter().enumerate() {
                    for c in pc + 1..m {
                        if !pivots.contains(&c) {
                            free.push((r, c));
                        }
                    }
                }
                let count = (p as u64)
                    .checked_pow(free.len() as u32)
                    .ok_or_else(|| Error::limit("subspace index", "more than 2^64", u64::MAX))?;
                let mask = pivots.iter().fold(0usize, |a, &c| a | (1 << c));
                by_mask[mask] = blocks.len() as u32;
                blocks.push(Block {
                    dim: k,
                    pivots,
                    offset,
                    count,
                    free,
                });
                offset = offset
                    .checked_add(count)
                    .ok_or_else(|| Error::limit("subspace index", "more than 2^64", u64::MAX))?;
            }
        }
        Ok(SubspaceIndexer {
            p,
            m,
            blocks,
            by_mask,
            total: offset,
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> usize {
        self.m
    }

    /// Index range of the subspaces of dimension k.
    pub fn dim_range(&self, k: usize) -> std::ops::Range<u64> {
        let mut lo = None;
        let mut hi = 0;
        for b in self.blocks.iter().filter(|b| b.dim == k) {
            lo.get_or_insert(b.offset);
            hi = b.offset + b.count;
        }
        lo.unwrap_or(0)..hi.max(lo.unwrap_or(0))
    }

    /// Rank of a basis already in reduced row-echelon form (row-major, m wide).
    pub fn rank_rref(&self, data: &[u32]) -> u64 {
        let m = self.m;
        let k = if m == 0 { 0 } else { data.len() / m };
        let mut mask = 0usize;
        for r in 0..k {
            let row = &data[r * m..(r + 1) * m];
            let c = row.iter().position(|&x| x != 0).expect("rref row is nonzero");
            mask |= 1 << c;
        }
        let b = &self.blocks[self.by_mask[mask] as usize];
        let mut idx: u64 = 0;
        let p = self.p as u64;
        for &(r, c) in &b.free {
            idx = idx * p + data[r * m + c] as u64;
        }
        b.offset + idx
    }

    pub fn rank(&self, w: &Subspace) -> u64 {
        assert_eq!((w.p(), w.ambient_dim()), (self.p, self.m));
        self.rank_rref(w.basis().data())
    }

    /// Writes the rref rows of subspace `idx` into `out` and returns its dimension.
    pub fn unrank_into(&self, idx: u64, out: &mut Vec<u32>) -> usize {
        assert!(idx < self.total);
        let bi = self.blocks.partition_point(|b| b.offset + b.count <= idx);
        let b = &self.blocks[bi];
        let m = self.m;
        out.clear();
        out.resize(b.dim * m, 0);
        for (r, &c) in b.pivots.iter().enumerate() {
            out[r * m + c] = 1;
        }
        let mut rest = idx - b.offset;
        let p = self.p as u64;
        for &(r, c) in b.free.iter().rev() {
            out[r * m + c] = (rest % p) as u32;
            rest /= p;
        }
        b.dim
    }

    pub fn unrank(&self, idx: u64) -> Subspace {
        let mut data = Vec::new();
        self.unrank_into(idx, &mut data);
        Subspace::from_rref_data(self.p, self.m, data)
    }
}

/// Every subspace of F_p^m (optionally only those of one dimension), each once,
/// ordered by dimension, pivot columns and basis entries.
pub fn enumerate_subspaces(
    p: u32,
    m: usize,
    dim_filter: Option<usize>,
    budget: &Budget,
) -> Result<impl Iterator<Item = Subspace>> {
    let idx = SubspaceIndexer::new(p, m)?;
    let range = match dim_filter {
        Some(k) if k > m => 0..0,
        Some(k) => idx.dim_range(k),
        None => 0..idx.total(),
    };
    let count = range.end - range.start;
    if count > budget.max_subspaces {
        return Err(Error::limit(
            format!("enumerating subspaces of F_{p}^{m}"),
            count,
            budget.max_subspaces,
        ));
    }
    Ok(range.map(move |i| idx.unrank(i)))
}

/// Independent oracle: grows subspaces one vector at a time and deduplicates
/// canonical forms. Returns the number of subspaces of each dimension.
pub fn brute_subspace_counts(p: u32, m: usize) -> Vec<u64> {
    let vectors: Vec<Vec<u32>> = (0..(p as u64).pow(m as u32))
        .map(|mut x| {
            let mut v = vec![0u32; m];
            for slot in v.iter_mut().rev() {
                *slot = (x % p as u64) as u32;
                x /= p as u64;
            }
            v
        })
        .collect();
    let mut layer: HashSet<Vec<u32>> = HashSet::new();
    layer.insert(Vec::new());
    let mut counts = vec![1u64];
    for _ in 0..m {
        let mut next = HashSet::new();
        for w in &layer {
            for v in &vectors {
                let mut data = w.clone();
                data.extend_from_slice(v);
                let before = w.len() / m;
                if rref_in_place(&mut data, m, p).len() > before {
                    next.insert(data);
                }
            }
        }
        counts.push(next.len() as u64);
        layer = next;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcomb::{galois, gauss};
    use num_bigint::BigInt;

    #[test]
    fn canonicalize_examples() {
        let z = Subspace::span(2, 3, &[vec![0, 0, 0]]).unwrap();
        assert_eq!(z, Subspace::zero(2, 3));
        let f = Subspace::span(2, 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(f, Subspace::full(2, 3));
        let w = Subspace::span(2, 3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(w.dim(), 2);
        assert!(Subspace::span(4, 1, &[vec![1]]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let b = Budget::default();
        assert_eq!(enumerate_subspaces(2, 2, None, &b).unwrap().count(), 5);
        assert_eq!(enumerate_subspaces(3, 1, None, &b).unwrap().count(), 2);
        assert_eq!(enumerate_subspaces(2, 4, Some(2), &b).unwrap().count(), 35);
        let tiny = Budget {
            max_subspaces: 10,
            ..Budget::default()
        };
        assert!(matches!(
            enumerate_subspaces(2, 4, None, &tiny),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn rank_unrank_round_trip_and_order() {
        for (p, m) in [(2u32, 4usize), (3, 3), (5, 2)] {
            let idx = SubspaceIndexer::new(p, m).unwrap();
            assert_eq!(BigInt::from(idx.total()), galois(m as i64, p as u64).unwrap());
            let all: Vec<Subspace> = (0..idx.total()).map(|i| idx.unrank(i)).collect();
            for (i, w) in all.iter().enumerate() {
                assert_eq!(idx.rank(w), i as u64);
                assert_eq!(&Subspace::canonicalize(w.basis()), w);
            }
            assert!(all.windows(2).all(|x| x[0] < x[1]));
        }
    }

    #[test]
    fn brute_counts_match_gauss() {
        for (p, m) in [(2u32, 4usize), (3, 3)] {
            let counts = brute_subspace_counts(p, m);
            for (k, c) in counts.iter().enumerate() {
                assert_eq!(BigInt::from(*c), gauss(m as i64, k as i64, p as u64).unwrap());
            }
        }
    }

    #[test]
    fn intersection_and_sum_dimensions() {
        let a = Subspace::span(3, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let b = Subspace::span(3, 4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        let i = a.intersection(&b).unwrap();
        assert_eq!(i, Subspace::span(3, 4, &[vec![0, 1, 0, 0]]).unwrap());
        assert_eq!(a.sum(&b).unwrap().dim(), 3);
    }
}
