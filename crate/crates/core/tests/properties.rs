mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use truncwitt::lattice::{euclid_factorize, torus_reduce};
use truncwitt::rings::{Elem, Ring};
use truncwitt::truncation::{cardinality_formula, sq_set, TruncationSet};
use truncwitt::witt::WittVector;
use truncwitt::zrank;

use common::{random_set, random_vector};

fn rings() -> Vec<Ring> {
    vec![
        Ring::integers(),
        Ring::integers_mod(4).unwrap(),
        Ring::finite_field(2, 1).unwrap(),
        Ring::finite_field(3, 2).unwrap(),
    ]
}

/// A seeded random set with at most `max` points and three vectors on it.
fn triple(seed: u64, ring: &Ring, max: usize) -> (TruncationSet, WittVector, WittVector, WittVector) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let set = random_set(&mut r, max);
    let x = random_vector(&mut r, &set, ring);
    let y = random_vector(&mut r, &set, ring);
    let z = random_vector(&mut r, &set, ring);
    (set, x, y, z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), which in 0usize..4) {
        let ring = &rings()[which];
        let (set, x, y, z) = triple(seed, ring, 8);
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().add(&z).unwrap(), x.add(&y.add(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(
            x.mul(&y.add(&z).unwrap()).unwrap(),
            x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(x.add(&WittVector::zero(&set, ring)).unwrap(), x.clone());
        prop_assert_eq!(x.mul(&WittVector::one(&set, ring)).unwrap(), x.clone());
        prop_assert!(x.add(&x.neg()).unwrap().is_zero());
        prop_assert_eq!(x.mul_int(3), x.add(&x).unwrap().add(&x).unwrap());
        prop_assert_eq!(x.mul_int(-2), x.neg().add(&x.neg()).unwrap());
    }

    #[test]
    fn restriction_is_a_ring_map(seed in any::<u64>(), which in 0usize..4) {
        let ring = &rings()[which];
        let (set, x, y, _) = triple(seed, ring, 12);
        // restrict to the divisors of one point
        let top = set.points().last().unwrap().clone();
        let small = truncwitt::truncation::closure(&[top]).unwrap();
        let r = |v: &WittVector| v.restrict(&small).unwrap();
        prop_assert_eq!(r(&x.add(&y).unwrap()), r(&x).add(&r(&y)).unwrap());
        prop_assert_eq!(r(&x.mul(&y).unwrap()), r(&x).mul(&r(&y)).unwrap());
        prop_assert_eq!(r(&WittVector::one(&set, ring)), WittVector::one(&small, ring));
    }

    #[test]
    fn reduction_mod_four_is_functorial(seed in any::<u64>()) {
        let z = Ring::integers();
        let z4 = Ring::integers_mod(4).unwrap();
        let (_, x, y, _) = triple(seed, &z, 10);
        let reduce = |v: &WittVector| {
            v.map_ring(&z4, |e| match e {
                Elem::Int(n) => z4.embed_int(n),
                _ => unreachable!(),
            })
            .unwrap()
        };
        prop_assert_eq!(reduce(&x.add(&y).unwrap()), reduce(&x).add(&reduce(&y)).unwrap());
        prop_assert_eq!(reduce(&x.mul(&y).unwrap()), reduce(&x).mul(&reduce(&y)).unwrap());
        prop_assert_eq!(reduce(&x.frobenius(0, 2).unwrap()), reduce(&x).frobenius(0, 2).unwrap());
    }

    #[test]
    fn ghost_inverse_round_trip(seed in any::<u64>()) {
        let z = Ring::integers();
        let (set, x, _, _) = triple(seed, &z, 12);
        let back = WittVector::ghost_inverse(&set, &z, &x.ghost()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), which in 0usize..4) {
        let ring = &rings()[which];
        let (_, x, _, _) = triple(seed, ring, 12);
        prop_assert_eq!(WittVector::from_json(&x.to_json()).unwrap(), x.clone());
        let set_json = serde_json::to_string(x.set()).unwrap();
        prop_assert_eq!(&serde_json::from_str::<TruncationSet>(&set_json).unwrap(), x.set());
    }

    #[test]
    fn frobenius_composes(seed in any::<u64>(), r in 1u64..4, s in 1u64..4) {
        let z = Ring::integers();
        let (set, x, _, _) = triple(seed, &z, 12);
        let axis = (seed % set.dim() as u64) as usize;
        let two_step = x.frobenius(axis, r).unwrap().frobenius(axis, s).unwrap();
        prop_assert_eq!(two_step, x.frobenius(axis, r * s).unwrap());
    }

    #[test]
    fn sq_cardinality(a in prop::collection::vec(1u64..7, 1..4), q in 1u64..5, mask in 0u32..8) {
        let axes: Vec<usize> = (0..a.len()).filter(|i| mask >> i & 1 == 1).collect();
        let set = sq_set(&a, q, &axes).unwrap();
        prop_assert!(set.is_division_closed());
        prop_assert_eq!(num_bigint::BigUint::from(set.len()), cardinality_formula(&a, q, &axes).unwrap());
    }

    #[test]
    fn euclid_identities(s1 in 1u64..1_000_000_000, s2 in 1u64..1_000_000_000, a in 1u64..1_000_000_000) {
        let f = euclid_factorize(s1, s2, a).unwrap();
        prop_assert!(f.verified);
        prop_assert!(f.checks().iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn torus(s in prop::collection::vec(1u64..1_000_000_000_000, 1..8)) {
        let r = torus_reduce(&s).unwrap();
        let image = r.m.apply(&s.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        prop_assert_eq!(&image[0], &BigInt::from(r.g));
        prop_assert!(image[1..].iter().all(|x| *x == BigInt::from(0)));
    }

    #[test]
    fn vertex_series_oracle(a in prop::collection::vec(1u64..6, 1..4), mask in 0u32..8, cutoff in 1u64..21) {
        let axes: Vec<usize> = (0..a.len()).filter(|i| mask >> i & 1 == 1).collect();
        prop_assert_eq!(
            zrank::tc_vertex_series(&a, &axes, cutoff).unwrap(),
            zrank::tc_vertex_series_oracle(&a, &axes, cutoff).unwrap()
        );
    }
}
