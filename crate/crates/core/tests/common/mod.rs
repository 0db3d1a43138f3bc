#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use truncwitt::rings::{Elem, Ring, RingDescriptor};
use truncwitt::truncation::{closure, Point, TruncationSet};
use truncwitt::witt::WittVector;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pt(c: &[u64]) -> Point {
    Point::new(c.to_vec()).unwrap()
}

/// A random truncation set of dimension `1..=3` with at most `max_points`
/// points, as the closure of a few random generators.
pub fn random_set(rng: &mut impl Rng, max_points: usize) -> TruncationSet {
    loop {
        let n = rng.gen_range(1..=3);
        let bound = match n {
            1 => 24,
            2 => 8,
            _ => 4,
        };
        let gens: Vec<Point> = (0..rng.gen_range(1..=3))
            .map(|_| Point::new((0..n).map(|_| rng.gen_range(1..=bound)).collect()).unwrap())
            .collect();
        let set = closure(&gens).unwrap();
        if set.len() <= max_points {
            return set;
        }
    }
}

pub fn random_elem(rng: &mut impl Rng, ring: &Ring) -> Elem {
    if let Some(all) = ring.elements() {
        return all.choose(rng).unwrap().clone();
    }
    let n = rng.gen_range(-9i64..=9);
    if matches!(ring.descriptor(), RingDescriptor::Rationals) {
        let d = rng.gen_range(1i64..=6);
        return Elem::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)));
    }
    ring.embed_i64(n)
}

pub fn random_vector(rng: &mut impl Rng, set: &TruncationSet, ring: &Ring) -> WittVector {
    WittVector::from_fn(set, ring, |_| random_elem(rng, ring))
}

/// Every vector of `W_S(R)` for a finite ring `R`.
pub fn all_vectors(set: &TruncationSet, ring: &Ring) -> Vec<WittVector> {
    let elems = ring.elements().expect("finite ring");
    let points: Vec<Point> = set.points().cloned().collect();
    let total = elems.len().pow(points.len() as u32);
    (0..total)
        .map(|mut code| {
            let comps: Vec<(Point, Elem)> = points
                .iter()
                .map(|p| {
                    let e = elems[code % elems.len()].clone();
                    code /= elems.len();
                    (p.clone(), e)
                })
                .collect();
            WittVector::from_components(set, ring, comps).unwrap()
        })
        .collect()
}

/// Truncation sets with at most `max_points` points: one-dimensional ones
/// inside `{1..12}` and closures of one or two points of `{1..4}^2`.
pub fn small_sets(max_points: usize) -> Vec<TruncationSet> {
    let mut out: Vec<TruncationSet> = Vec::new();
    let mut push = |s: TruncationSet| {
        if s.len() <= max_points && !out.contains(&s) {
            out.push(s);
        }
    };
    for a in 1..=12u64 {
        for b in a..=12u64 {
            push(closure(&[pt(&[a]), pt(&[b])]).unwrap());
        }
    }
    let grid: Vec<Point> = (1..=4).flat_map(|i| (1..=4).map(move |j| pt(&[i, j]))).collect();
    for (i, g) in grid.iter().enumerate() {
        for h in &grid[i..] {
            push(closure(&[g.clone(), h.clone()]).unwrap());
        }
    }
    out
}
