use serde::{Deserialize, Serialize};

use super::basis::LieBasis;
use super::layer::{layer_blocks, Block, GradedCoords};
use super::ncpoly::NcPoly;
use crate::error::{Error, Result};
use crate::fplinalg::{rref_in_place, FpMatrix, Subspace};

/// Matrix of f -> [f, x_j] from the degree-n Lie basis to the degree-(n+1) one.
/// Columns are images.
pub fn com_matrix(j: u8, n: usize, d: u8, p: u32) -> Result<FpMatrix> {
    if j == 0 || j > d {
        return Err(Error::invalid(format!("letter index {j} outside 1..={d}")));
    }
    let src = LieBasis::new(d, n, p)?;
    let dst = LieBasis::new(d, n + 1, p)?;
    let xj = NcPoly::letter(p, j);
    let mut out = FpMatrix::zeros(p, dst.dim(), src.dim());
    for (c, b) in src.expansions().iter().enumerate() {
        let img = b.bracket(&xj);
        let v = dst
            .to_lyndon_coords(&img)
            .ok_or_else(|| Error::Internal("bracket left the Lie span".into()))?;
        for (r, &x) in v.iter().enumerate() {
            out.set(r, c, x);
        }
    }
    Ok(out)
}

/// Dimensions reported by a growth check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Growth {
    pub dim_w: usize,
    pub dim_com: usize,
    pub dim_w_plus_com: usize,
}

impl Growth {
    /// 2·dim(W + com W) >= 3·dim W.
    pub fn grows(&self) -> bool {
        2 * self.dim_w_plus_com >= 3 * self.dim_w
    }
    pub fn com_grows(&self) -> bool {
        2 * self.dim_com >= 3 * self.dim_w
    }
}

/// Precomputed commutator maps from U_n into the next layer's ambient space.
#[derive(Debug, Clone)]
pub struct GrowthContext {
    d: usize,
    n: usize,
    p: u32,
    source: GradedCoords,
    ambient: GradedCoords,
    /// com_j as ambient_dim x source_dim matrices, one per letter.
    maps: Vec<FpMatrix>,
}

impl GrowthContext {
    pub fn new(d: usize, n: usize, p: u32) -> Result<Self> {
        if d < 2 || n < 1 || d > 16 {
            return Err(Error::invalid("growth checks need 2 <= d <= 16 and n >= 1"));
        }
        let source = GradedCoords::new(d as u8, p, layer_blocks(n, p))?;
        let amb_blocks: Vec<Block> = if p == 2 && n >= 2 {
            layer_blocks(n + 1, p)
        } else {
            (1..=n + 1).map(Block::Lie).collect()
        };
        let ambient = GradedCoords::new(d as u8, p, amb_blocks)?;
        let mut maps = Vec::with_capacity(d);
        for j in 1..=d as u8 {
            let xj = NcPoly::letter(p, j);
            let mut m = FpMatrix::zeros(p, ambient.dim(), source.dim());
            for (c, b) in source.basis().iter().enumerate() {
                let v = ambient
                    .to_coords(&b.bracket(&xj))
                    .ok_or_else(|| Error::Internal("commutator left the ambient space".into()))?;
                for (r, &x) in v.iter().enumerate() {
                    m.set(r, c, x);
                }
            }
            maps.push(m);
        }
        Ok(GrowthContext {
            d,
            n,
            p,
            source,
            ambient,
            maps,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn source(&self) -> &GradedCoords {
        &self.source
    }
    pub fn ambient(&self) -> &GradedCoords {
        &self.ambient
    }
    pub fn maps(&self) -> &[FpMatrix] {
        &self.maps
    }

    /// Dimensions of W, com(W) and W + com(W) for W given in U_n coordinates.
    pub fn growth(&self, w: &Subspace) -> Result<Growth> {
        let m = self.source.dim();
        if w.ambient_dim() != m || w.p() != self.p {
            return Err(Error::invalid(format!(
                "subspace must live in F_{}^{m}",
                self.p
            )));
        }
        let am = self.ambient.dim();
        let rows = w.basis().to_rows();
        let mut com_data: Vec<u32> = Vec::with_capacity(rows.len() * self.d * am);
        for r in &rows {
            for c in &self.maps {
                com_data.extend(c.apply(r));
            }
        }
        let mut all = com_data.clone();
        let dim_com = rref_in_place(&mut com_data, am, self.p).len();
        for r in &rows {
            all.extend(r.iter().copied());
            all.extend(std::iter::repeat_n(0, am - m));
        }
        let dim_w_plus_com = rref_in_place(&mut all, am, self.p).len();
        Ok(Growth {
            dim_w: w.dim(),
            dim_com,
            dim_w_plus_com,
        })
    }

    /// Embed a polynomial of U_n as source coordinates, if it lies there.
    pub fn coords_of(&self, f: &NcPoly) -> Result<Vec<u32>> {
        self.source
            .to_coords(f)
            .ok_or_else(|| Error::invalid("polynomial lies outside U_n"))
    }
}

/// Dimensions of W and W + com(W); the shorthand used by the CLI.
pub fn com_dim_growth(w: &Subspace, d: usize, n: usize) -> Result<(usize, usize)> {
    let g = GrowthContext::new(d, n, w.p())?.growth(w)?;
    Ok((g.dim_w, g.dim_w_plus_com))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn injectivity() {
        for p in [2u32, 3, 5] {
            for d in 2..=3u8 {
                for j in 1..=d {
                    let m1 = com_matrix(j, 1, d, p).unwrap();
                    assert_eq!(m1.rank(), d as usize - 1);
                    let k = m1.kernel();
                    assert_eq!(k.rows(), 1);
                    let expect: Vec<u32> = (1..=d).map(|i| u32::from(i == j)).collect();
                    let s = Subspace::canonicalize(&k);
                    assert!(s.contains_vector(&expect));
                    for n in 2..=5 {
                        if d == 3 && n == 5 && p == 5 {
                            continue;
                        }
                        let m = com_matrix(j, n, d, p).unwrap();
                        assert_eq!(m.rank(), m.cols(), "d={d} n={n} j={j} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn examples() {
        let zero = Subspace::zero(2, 3);
        assert_eq!(com_dim_growth(&zero, 3, 1).unwrap(), (0, 0));
        // b[x1x2] inside E for d=3, p=2: E coordinates are v1,v2,v3,b12,b13,b23.
        let g = GrowthContext::new(3, 2, 2).unwrap();
        let w = Subspace::span(2, 6, &[vec![0, 0, 0, 1, 0, 0]]).unwrap();
        let r = g.growth(&w).unwrap();
        assert!(r.dim_w_plus_com >= 2);
        // 2-dim subspaces of the degree-2 Lie part, d=3, p=3.
        let g = GrowthContext::new(3, 2, 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let rows: Vec<Vec<i64>> = (0..2)
                .map(|_| {
                    let mut v = vec![0i64; 6];
                    for x in v.iter_mut().skip(3) {
                        *x = rng.gen_range(0..3);
                    }
                    v
                })
                .collect();
            let w = Subspace::span(3, 6, &rows).unwrap();
            if w.dim() == 2 {
                assert!(g.growth(&w).unwrap().dim_w_plus_com >= 3);
            }
        }
    }

    #[test]
    fn com_of_e_lands_in_lie_span() {
        let g = GrowthContext::new(3, 2, 2).unwrap();
        assert_eq!(g.ambient().dim(), 6 + 8);
        let m = &g.maps()[0];
        assert_eq!(m.rows(), 14);
        // [v1, x2] = b[x1x2] + [x1,[x1,x2]]: one E coordinate, one degree-3 coordinate.
        let col = m.column(1);
        assert_eq!(col.iter().filter(|&&x| x != 0).count(), 2);
        assert_eq!(col[3], 1);
    }
}
