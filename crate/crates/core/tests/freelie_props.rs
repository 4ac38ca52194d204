use pgc_core::fplinalg::{random_gl, FpMatrix, Subspace};
use pgc_core::freelie::{
    expand, layer_ranks, lyndon_words, standard_bracketing, Block, GrowthContext, LayerModule,
    LieBasis,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_subspace(rng: &mut ChaCha8Rng, p: u32, m: usize, support: std::ops::Range<usize>) -> Subspace {
    let k = rng.gen_range(0..=support.len().min(12));
    let rows: Vec<Vec<i64>> = (0..k)
        .map(|_| {
            let mut v = vec![0i64; m];
            for i in support.clone() {
                v[i] = rng.gen_range(0..p as i64);
            }
            v
        })
        .collect();
    Subspace::span(p, m, &rows).unwrap()
}

#[test]
fn lyndon_counts_match_witt() {
    for d in 1..=4u8 {
        for n in 1..=8 {
            let w = lyndon_words(d, n);
            if d >= 2 {
                assert_eq!(w.len() as u64, layer_ranks(d as u64, n).unwrap().w_at(n));
            }
            for x in &w {
                assert_eq!(standard_bracketing(x).unwrap().foliage(), *x);
            }
        }
    }
}

#[test]
fn triangularity() {
    for d in 2..=3u8 {
        for n in 1..=6 {
            for w in lyndon_words(d, n) {
                let f = expand(&standard_bracketing(&w).unwrap(), 5);
                let (lw, c) = f.least_term().unwrap();
                assert_eq!((lw, c), (&w, 1));
            }
        }
    }
}

#[test]
fn rho_multiplicative_on_many_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (d, n, p) in [(2, 2, 2), (2, 2, 3), (3, 2, 2), (2, 3, 3), (3, 3, 2)] {
        let l = LayerModule::new(d, n, p).unwrap();
        assert_eq!(l.dim() as u64, layer_ranks(d as u64, n).unwrap().d_at(n));
        assert_eq!(l.rho(&FpMatrix::identity(p, d)).unwrap(), FpMatrix::identity(p, l.dim()));
        for _ in 0..200 {
            let g = random_gl(d, p, &mut rng);
            let h = random_gl(d, p, &mut rng);
            let lhs = l.rho(&g.mul(&h).unwrap()).unwrap();
            let rhs = l.rho(&g).unwrap().mul(&l.rho(&h).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "d={d} n={n} p={p}");
        }
    }
}

#[test]
fn e_block_action_formula() {
    // g.v_i = sum_j g_ji v_j + sum_{j<k} g_ji g_ki b[x_j x_k]
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let d = 3;
    let l = LayerModule::new(d, 2, 2).unwrap();
    for _ in 0..50 {
        let g = random_gl(d, 2, &mut rng);
        let r = l.rho(&g).unwrap();
        for i in 0..d {
            let col = r.column(i);
            for j in 0..d {
                assert_eq!(col[j], g.get(j, i));
            }
            let mut idx = d;
            for j in 0..d {
                for k in j + 1..d {
                    assert_eq!(col[idx], g.get(j, i) * g.get(k, i) % 2);
                    idx += 1;
                }
            }
        }
    }
}

#[test]
fn growth_on_random_subspaces() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for d in 3..=4 {
        for p in [2u32, 3] {
            for n in 1..=4 {
                if d == 4 && n == 4 && p == 3 {
                    continue;
                }
                let ctx = GrowthContext::new(d, n, p).unwrap();
                let src = ctx.source();
                let m = src.dim();
                for _ in 0..30 {
                    let w = random_subspace(&mut rng, p, m, 0..m);
                    assert!(ctx.growth(&w).unwrap().grows(), "d={d} n={n} p={p}");
                }
                // Subspaces inside single blocks.
                for (bi, b) in src.blocks().iter().enumerate() {
                    let off = src.offsets()[bi];
                    let range = off..off + src.block_dim(bi);
                    for _ in 0..10 {
                        let w = random_subspace(&mut rng, p, m, range.clone());
                        let g = ctx.growth(&w).unwrap();
                        assert!(g.grows());
                        if let Block::Lie(k) = b {
                            if *k >= 2 {
                                assert!(g.com_grows(), "com growth d={d} k={k} p={p}");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn lie_coords_reject_non_lie() {
    let b = LieBasis::new(2, 2, 3).unwrap();
    let f = pgc_core::freelie::NcPoly::monomial(3, pgc_core::freelie::Word::new(vec![1, 2]).unwrap(), 1);
    assert!(b.to_lyndon_coords(&f).is_none());
}
