use std::collections::BTreeMap;

use num_bigint::BigInt;
use pgc_core::fplinalg::{all_gl, module_type, random_gl, scalar_of, FpMatrix, FpPoly, IrreducibleSieve, ModuleType, Partition};
use pgc_core::qcomb::{theta_constants, Verdict};
use pgc_core::submodcount::{
    bound_checks, brute_invariant_subspaces, centralizer_order, count_by_type,
    fixed_subspace_count_with, BoundKind, TypePair,
};
use pgc_core::Budget;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn exhaustive_small_gl2() {
    let budget = Budget::default();
    let k = theta_constants(2, &budget.tol).unwrap();
    for m in 1..=4 {
        let sieve = IrreducibleSieve::new(2, m).unwrap();
        for g in all_gl(m, 2) {
            let f = fixed_subspace_count_with(&g, &sieve).unwrap();
            assert_eq!(f, BigInt::from(brute_invariant_subspaces(&g, &budget).unwrap()));
            if scalar_of(&g).is_none() {
                let r = bound_checks(&g, BoundKind::Upper, &k, &sieve).unwrap();
                assert_eq!(r.verdict, Verdict::Holds);
            }
        }
    }
}

#[test]
fn sampled_oracle() {
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (m, p, n) in [(5usize, 2u32, 150), (3, 3, 150), (4, 3, 80), (2, 5, 150)] {
        let sieve = IrreducibleSieve::new(p, m).unwrap();
        for _ in 0..n {
            let g = random_gl(m, p, &mut rng);
            let f = fixed_subspace_count_with(&g, &sieve).unwrap();
            assert_eq!(f, BigInt::from(brute_invariant_subspaces(&g, &budget).unwrap()));
        }
    }
}

fn unipotent_model(p: u32, alpha: &Partition) -> FpMatrix {
    let f = FpPoly::new(p, vec![-1, 1]).unwrap();
    let map: BTreeMap<_, _> = [(f, alpha.conjugate())].into_iter().collect();
    ModuleType::new(p, map).unwrap().representative()
}

#[test]
fn inductive_identity() {
    let budget = Budget::default();
    for q in [2u32, 3] {
        for n in 1..=5 {
            for alpha in Partition::all_of(n) {
                let total: BigInt = alpha
                    .subpartitions()
                    .into_iter()
                    .map(|beta| {
                        let s = count_by_type(&TypePair::new(q as u64, alpha.clone(), beta).unwrap()).unwrap();
                        assert!(s > BigInt::from(0));
                        s
                    })
                    .sum();
                let g = unipotent_model(q, &alpha);
                assert_eq!(total, BigInt::from(brute_invariant_subspaces(&g, &budget).unwrap()), "{alpha} q={q}");
            }
        }
    }
}

#[test]
fn class_equation() {
    for (d, p) in [(2usize, 2u32), (2, 3), (3, 2), (3, 3)] {
        let sieve = IrreducibleSieve::new(p, d).unwrap();
        let gl = all_gl(d, p);
        let mut sizes: BTreeMap<ModuleType, u64> = BTreeMap::new();
        for g in &gl {
            *sizes.entry(module_type(g, &sieve).unwrap()).or_default() += 1;
        }
        let n = BigInt::from(gl.len());
        let mut sum = BigInt::from(0);
        for (t, size) in &sizes {
            let c = centralizer_order(t).unwrap();
            assert_eq!(&n / &c, BigInt::from(*size));
            sum += &n / c;
        }
        assert_eq!(sum, n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn conjugation_invariance(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5]), m in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_gl(m, p, &mut rng);
        let h = random_gl(m, p, &mut rng);
        let c = h.mul(&g).unwrap().mul(&h.inverse().unwrap()).unwrap();
        let sieve = IrreducibleSieve::new(p, m).unwrap();
        prop_assert_eq!(fixed_subspace_count_with(&g, &sieve).unwrap(), fixed_subspace_count_with(&c, &sieve).unwrap());
    }
}
