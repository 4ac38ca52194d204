use num_bigint::BigInt;
use pgc_core::census::gl_order;
use pgc_core::fplinalg::{enumerate_subspaces, Subspace};
use pgc_core::freelie::layer_ranks;
use pgc_core::pgroup::{
    all_subgroups, aut_order, brute_aut_order, check_numnorms, hom_from_images, lower_p_series,
    normal_subgroup_census, Class2Element, Class2Group, QuotientGroup,
};
use pgc_core::Budget;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_element(g: &Class2Group, rng: &mut ChaCha8Rng) -> Class2Element {
    let p = g.p();
    let e = (0..g.d()).map(|_| rng.gen_range(0..p * p)).collect();
    let c = (0..g.pairs().len()).map(|_| rng.gen_range(0..p)).collect();
    g.element(e, c).unwrap()
}

#[test]
fn associativity_exhaustive_g23() {
    let g = Class2Group::new(2, 3, &Budget::default()).unwrap();
    let els: Vec<Class2Element> = g.elements().collect();
    for x in &els {
        for y in &els {
            let xy = g.mul(x, y);
            for z in &els {
                assert_eq!(g.mul(&xy, z), g.mul(x, &g.mul(y, z)));
            }
        }
    }
}

#[test]
fn orders_match_layer_ranks() {
    for (d, p) in [(2usize, 2u32), (2, 3), (3, 2), (3, 3), (4, 2), (2, 5)] {
        let g = Class2Group::new(d, p, &Budget::default()).unwrap();
        let d2 = layer_ranks(d as u64, 2).unwrap().d_at(2) as usize;
        assert_eq!(g.d2(), d2);
        assert_eq!(BigInt::from(g.order()), BigInt::from(p).pow((d + d2) as u32));
    }
}

#[test]
fn frattini_properties() {
    for (d, p) in [(2usize, 2u32), (2, 3), (3, 2), (3, 3)] {
        let g = Class2Group::new(d, p, &Budget::default()).unwrap();
        let gens = g.generators();
        let second: Vec<Class2Element> = (0..g.d2())
            .map(|i| {
                let mut z = vec![0u32; g.d2()];
                z[i] = 1;
                g.from_layer_coords(&z)
            })
            .collect();
        for x in &gens {
            // G_1^p <= G_2 and [G_1, G_1] <= G_2.
            assert!(g.layer_coords(&g.pow(x, u64::from(p))).is_some());
            for y in &gens {
                assert!(g.layer_coords(&g.comm(x, y)).is_some());
            }
            // [G_2, G_1] = 1: the second layer is central.
            for z in &second {
                assert!(g.is_identity(&g.comm(z, x)));
            }
        }
        for z in &second {
            // G_2^p = 1 and G_2 abelian.
            assert!(g.is_identity(&g.pow(z, u64::from(p))));
            for w in &second {
                assert!(g.is_identity(&g.comm(z, w)));
            }
        }
    }
}

#[test]
fn second_layer_is_frattini_kernel() {
    for (d, p) in [(2usize, 2u32), (2, 3), (3, 2)] {
        let g = Class2Group::new(d, p, &Budget::default()).unwrap();
        let h = QuotientGroup::whole(&g).unwrap();
        let s = lower_p_series(&h);
        assert_eq!(s.dims, vec![d, g.d2()]);
        for idx in 0..h.order() as u32 {
            let in_h2 = s.terms[1].contains(idx);
            assert_eq!(in_h2, h.frattini(idx).iter().all(|&v| v == 0));
        }
    }
}

#[test]
fn every_tuple_is_an_endomorphism() {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let g = Class2Group::new(3, 3, &b).unwrap();
    let h = QuotientGroup::whole(&g).unwrap();
    let zero = Subspace::zero(3, g.d2());
    for _ in 0..200 {
        let images: Vec<u32> = (0..3).map(|_| rng.gen_range(0..h.order() as u32)).collect();
        assert!(hom_from_images(&zero, &h, &images).unwrap().is_some());
    }
    let g22 = Class2Group::new(2, 2, &b).unwrap();
    let whole = QuotientGroup::whole(&g22).unwrap();
    let brute = brute_aut_order(&whole, &b).unwrap();
    assert_eq!(brute.endomorphisms, 32 * 32);
    assert_eq!(BigInt::from(brute.aut_order), gl_order(2, 2) * BigInt::from(8).pow(2));
}

#[test]
fn aut_formula_matches_brute_force_for_every_kernel() {
    let b = Budget::default();
    for (d, p) in [(2usize, 2u32), (2, 3)] {
        let g = Class2Group::new(d, p, &b).unwrap();
        for l in enumerate_subspaces(p, g.d2(), None, &b).unwrap() {
            let h = QuotientGroup::new(&g, &l).unwrap();
            let f = aut_order(&h).unwrap();
            let br = brute_aut_order(&h, &b).unwrap();
            assert_eq!(f.aut_order, BigInt::from(br.aut_order), "d={d} p={p} L={l:?}");
            assert_eq!(f.k_order, BigInt::from(br.k_order));
            assert_eq!(f.a_group_order, BigInt::from(br.a_group.len()));
        }
    }
}

#[test]
fn numnorms_bound_on_g() {
    let b = Budget::default();
    for (d, p) in [(2usize, 2u32), (2, 3)] {
        let g = Class2Group::new(d, p, &b).unwrap();
        let h = QuotientGroup::whole(&g).unwrap();
        let c = normal_subgroup_census(&h, &b).unwrap();
        let normal_by_lattice = all_subgroups(&h, &b)
            .unwrap()
            .iter()
            .filter(|s| s.is_normal(&h))
            .count();
        assert_eq!(c.total as usize, normal_by_lattice);
        let r = check_numnorms(&c).unwrap();
        assert!(r.all_hold);
        for row in &r.rows {
            assert!(BigInt::from(row.count) <= row.bound_tight);
            assert!(row.bound_tight <= row.bound_trivial);
        }
    }
}

proptest! {
    #[test]
    fn group_laws_g33(seed in any::<u64>()) {
        let g = Class2Group::new(3, 3, &Budget::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&g, &mut rng);
        let y = random_element(&g, &mut rng);
        prop_assert!(g.is_identity(&g.mul(&x, &g.inv(&x))));
        prop_assert!(g.is_identity(&g.pow(&x, 9)));
        // (xy)^p x^-p y^-p lies in the second layer.
        let q = g.mul(&g.mul(&g.pow(&g.mul(&x, &y), 3), &g.inv(&g.pow(&x, 3))), &g.inv(&g.pow(&y, 3)));
        prop_assert!(g.layer_coords(&q).is_some());
        prop_assert_eq!(g.element_at(g.index_of(&x)), x);
    }
}
