use num_bigint::BigInt;
use num_rational::BigRational;
use pgc_core::fplinalg::brute_subspace_counts;
use pgc_core::qcomb::{galois, galois_bounds_check, gauss, theta_constants, wilf_coef_check, Verdict};
use proptest::prelude::*;

#[test]
fn gauss_matches_enumeration() {
    for q in [2u32, 3, 5] {
        for n in 0..=if q == 5 { 3 } else { 5 } {
            let counts = brute_subspace_counts(q, n);
            let mut total = BigInt::from(0);
            for (k, &c) in counts.iter().enumerate() {
                assert_eq!(gauss(n as i64, k as i64, u64::from(q)).unwrap(), BigInt::from(c));
                total += c;
            }
            assert_eq!(galois(n as i64, u64::from(q)).unwrap(), total);
        }
    }
}

#[test]
fn wilf_bounds_up_to_twelve() {
    let tol = pgc_core::qcomb::default_tol();
    for q in [2u64, 3, 5, 7] {
        let k = theta_constants(q, &tol).unwrap();
        for n in 1..=12 {
            for j in 0..=n {
                assert_eq!(wilf_coef_check(n, j, &k).unwrap(), Verdict::Holds, "n={n} k={j} q={q}");
            }
            assert!(galois_bounds_check(n, &k).unwrap().all_hold(), "n={n} q={q}");
        }
    }
}

#[test]
fn constants_decrease_in_q() {
    let tol = pgc_core::qcomb::default_tol();
    let ks: Vec<_> = [2u64, 3, 5, 7, 11].iter().map(|&q| theta_constants(q, &tol).unwrap()).collect();
    for w in ks.windows(2) {
        assert!(w[1].c.hi < w[0].c.lo && w[1].d.hi < w[0].d.lo);
    }
    let one = BigRational::from_integer(1.into());
    assert!(ks.iter().all(|k| k.c.lo > one && k.d.lo > one));
}

proptest! {
    #[test]
    fn q_pascal(n in 1i64..14, k in 1i64..14, q in prop::sample::select(vec![2u64, 3, 4, 5, 7])) {
        prop_assume!(k <= n);
        let lhs = gauss(n, k, q).unwrap();
        let rhs = gauss(n - 1, k - 1, q).unwrap() + BigInt::from(q).pow(k as u32) * gauss(n - 1, k, q).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(gauss(n, k, q).unwrap(), gauss(n, n - k, q).unwrap());
    }

    #[test]
    fn galois_is_sum(n in 0i64..16, q in prop::sample::select(vec![2u64, 3, 5])) {
        let s: BigInt = (0..=n).map(|k| gauss(n, k, q).unwrap()).sum();
        prop_assert_eq!(galois(n, q).unwrap(), s);
    }
}
