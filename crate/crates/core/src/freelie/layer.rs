use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::basis::{layer_ranks, LieBasis};
use super::ncpoly::NcPoly;
use super::word::Word;
use crate::error::{Error, Result};
use crate::fplinalg::FpMatrix;

/// One summand of a graded coordinate space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Block {
    /// The degree-k Lie component, bracketed Lyndon basis.
    Lie(usize),
    /// The characteristic-2 module spanned by x_i + x_i^2 and the degree-2 Lie elements.
    E,
}

/// Coordinates on a direct sum of blocks inside the free associative algebra.
#[derive(Debug, Clone)]
pub struct GradedCoords {
    d: u8,
    p: u32,
    blocks: Vec<Block>,
    offsets: Vec<usize>,
    dim: usize,
    lie: BTreeMap<usize, LieBasis>,
    basis: Vec<NcPoly>,
    labels: Vec<String>,
}

impl GradedCoords {
    pub fn new(d: u8, p: u32, blocks: Vec<Block>) -> Result<Self> {
        if blocks.contains(&Block::E) && p != 2 {
            return Err(Error::invalid("the E block exists only for p = 2"));
        }
        let mut lie = BTreeMap::new();
        for b in &blocks {
            let degs: &[usize] = match b {
                Block::Lie(k) => std::slice::from_ref(k),
                Block::E => &[1, 2],
            };
            for &k in degs {
                if let std::collections::btree_map::Entry::Vacant(e) = lie.entry(k) {
                    e.insert(LieBasis::new(d, k, p)?);
                }
            }
        }
        let mut offsets = Vec::new();
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        for b in &blocks {
            offsets.push(basis.len());
            match b {
                Block::Lie(k) => {
                    let lb = &lie[k];
                    basis.extend(lb.expansions().iter().cloned());
                    labels.extend(lb.words().iter().map(|w| format!("b[{w}]")));
                }
                Block::E => {
                    for i in 1..=d {
                        let mut v = NcPoly::letter(p, i);
                        v.add_term(Word::from_vec(vec![i, i]), 1);
                        basis.push(v);
                        labels.push(format!("v{i}"));
                    }
                    let lb = &lie[&2];
                    basis.extend(lb.expansions().iter().cloned());
                    labels.extend(lb.words().iter().map(|w| format!("b[{w}]")));
                }
            }
        }
        let dim = basis.len();
        Ok(GradedCoords {
            d,
            p,
            blocks,
            offsets,
            dim,
            lie,
            basis,
            labels,
        })
    }

    pub fn d(&self) -> u8 {
        self.d
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }
    pub fn basis(&self) -> &[NcPoly] {
        &self.basis
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn block_dim(&self, i: usize) -> usize {
        let end = self.offsets.get(i + 1).copied().unwrap_or(self.dim);
        end - self.offsets[i]
    }

    pub fn from_coords(&self, c: &[u32]) -> NcPoly {
        let mut f = NcPoly::zero(self.p);
        for (i, &x) in c.iter().enumerate() {
            f.add_scaled(&self.basis[i], x);
        }
        f
    }

    /// Coordinates of f, or None if f is not in the span of the blocks.
    pub fn to_coords(&self, f: &NcPoly) -> Option<Vec<u32>> {
        let covered: Vec<usize> = self
            .blocks
            .iter()
            .flat_map(|b| match b {
                Block::Lie(k) => vec![*k],
                Block::E => vec![1, 2],
            })
            .collect();
        if f.terms().keys().any(|w| !covered.contains(&w.len())) {
            return None;
        }
        let mut out = vec![0u32; self.dim];
        for (bi, b) in self.blocks.iter().enumerate() {
            let off = self.offsets[bi];
            match b {
                Block::Lie(k) => {
                    let c = self.lie[k].to_lyndon_coords(&f.degree_part(*k))?;
                    out[off..off + c.len()].copy_from_slice(&c);
                }
                Block::E => {
                    let mut rest = f.degree_part(2);
                    for i in 1..=self.d {
                        let c = f.coeff(&Word::letter(i));
                        out[off + i as usize - 1] = c;
                        rest.add_term(Word::from_vec(vec![i, i]), self.p - c);
                    }
                    let c = self.lie[&2].to_lyndon_coords(&rest)?;
                    let o2 = off + self.d as usize;
                    out[o2..o2 + c.len()].copy_from_slice(&c);
                }
            }
        }
        Some(out)
    }
}

/// Blocks of the layer embedding U_n.
pub fn layer_blocks(n: usize, p: u32) -> Vec<Block> {
    if p == 2 && n >= 2 {
        std::iter::once(Block::E).chain((3..=n).map(Block::Lie)).collect()
    } else {
        (1..=n).map(Block::Lie).collect()
    }
}

/// The layer F_n/F_{n+1} as a GL(d, p)-module, realised inside the free
/// associative algebra; rho(g) is the matrix of the substitution
/// x_j -> sum_k g[k][j] x_k in the layer basis.
#[derive(Debug, Clone)]
pub struct LayerModule {
    d: usize,
    n: usize,
    coords: GradedCoords,
}

impl LayerModule {
    pub fn new(d: usize, n: usize, p: u32) -> Result<Self> {
        if d < 2 || n < 1 {
            return Err(Error::invalid("layer modules need d >= 2 and n >= 1"));
        }
        if d > 16 {
            return Err(Error::invalid("at most 16 generators are supported"));
        }
        let coords = GradedCoords::new(d as u8, p, layer_blocks(n, p))?;
        let expected = layer_ranks(d as u64, n)?.d_at(n) as usize;
        if coords.dim() != expected {
            return Err(Error::Internal(format!(
                "layer basis has {} elements, expected {expected}",
                coords.dim()
            )));
        }
        Ok(LayerModule { d, n, coords })
    }

    pub fn d(&self) -> usize {
        self.d
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> u32 {
        self.coords.p()
    }
    pub fn dim(&self) -> usize {
        self.coords.dim()
    }
    pub fn coords(&self) -> &GradedCoords {
        &self.coords
    }

    pub fn rho(&self, g: &FpMatrix) -> Result<FpMatrix> {
        if !g.is_square() || g.rows() != self.d || g.p() != self.p() {
            return Err(Error::invalid(format!(
                "expected a {}x{} matrix over F_{}",
                self.d,
                self.d,
                self.p()
            )));
        }
        let m = self.dim();
        let mut out = FpMatrix::zeros(self.p(), m, m);
        for (j, b) in self.coords.basis().iter().enumerate() {
            let img = b.substitute(g);
            let c = self.coords.to_coords(&img).ok_or_else(|| {
                Error::Internal(format!("image of basis element {j} left the layer"))
            })?;
            for (i, &x) in c.iter().enumerate() {
                out.set(i, j, x);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fplinalg::{random_gl, Subspace};
    use rand::SeedableRng;

    fn m(p: u32, rows: &[&[i64]]) -> FpMatrix {
        FpMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn layer_examples() {
        let l = LayerModule::new(2, 2, 3).unwrap();
        assert_eq!(l.dim(), 3);
        assert_eq!(l.rho(&FpMatrix::identity(3, 2)).unwrap(), FpMatrix::identity(3, 3));
        assert_eq!(LayerModule::new(3, 2, 5).unwrap().dim(), 6);
        assert_eq!(LayerModule::new(3, 3, 2).unwrap().dim(), 14);
    }

    #[test]
    fn e_block_quadratic_entry() {
        // g = [[1,1],[0,1]]: x1 -> x1, x2 -> x1 + x2, so v2 -> v1 + v2 + b[x1x2].
        let l = LayerModule::new(2, 2, 2).unwrap();
        let r = l.rho(&m(2, &[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(r.column(0), vec![1, 0, 0]);
        assert_eq!(r.column(1), vec![1, 1, 1]);
        assert_eq!(r.column(2), vec![0, 0, 1]);
    }

    #[test]
    fn rho_is_a_homomorphism() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for (d, n, p) in [(2, 2, 2), (2, 2, 3), (3, 2, 2), (2, 3, 3), (3, 3, 2)] {
            let l = LayerModule::new(d, n, p).unwrap();
            assert_eq!(l.rho(&FpMatrix::identity(p, d)).unwrap(), FpMatrix::identity(p, l.dim()));
            for _ in 0..40 {
                let g = random_gl(d, p, &mut rng);
                let h = random_gl(d, p, &mut rng);
                let lhs = l.rho(&g.mul(&h).unwrap()).unwrap();
                let rhs = l.rho(&g).unwrap().mul(&l.rho(&h).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn e_block_structure() {
        for d in 2..=4u8 {
            let c = GradedCoords::new(d, 2, vec![Block::E]).unwrap();
            let dd = d as usize;
            let e = Subspace::full(2, c.dim());
            // E meets the degree-2 component exactly in the Lie span: the vectors
            // with zero v-coordinates.
            let lam2: Vec<Vec<i64>> = (dd..c.dim())
                .map(|i| (0..c.dim()).map(|j| i64::from(i == j)).collect())
                .collect();
            let lam2 = Subspace::span(2, c.dim(), &lam2).unwrap();
            assert!(e.contains(&lam2));
            for i in 0..c.dim() {
                let poly = c.basis()[i].clone();
                let deg2_only = poly.degree_part(1).is_zero();
                assert_eq!(deg2_only, i >= dd);
            }
            // The projection to degree 1 is onto: v_i has linear part x_i.
            for i in 1..=d {
                assert_eq!(c.basis()[i as usize - 1].coeff(&Word::letter(i)), 1);
            }
            // x_i alone is not in E.
            assert!(c.to_coords(&NcPoly::letter(2, 1)).is_none());
        }
    }
}
