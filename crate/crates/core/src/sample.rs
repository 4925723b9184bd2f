//! Seeded generators for random points, duals and pair sets.
//!
//! Values are drawn from small lattices (radii in twelfths, coordinates in
//! quarters) so that coincidences such as shared spokes, root points and
//! equal distances occur often enough to exercise the edge cases.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dual::DualElement;
use crate::monotone::{Pair, PairSet};
use crate::rational::{self, Rational};
use crate::spaces::{Point, SpaceHandle};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Number of spokes the sampler draws from.
pub const SAMPLE_SPOKES: u64 = 4;

pub fn random_point(space: &SpaceHandle, rng: &mut SampleRng) -> Point {
    match space {
        SpaceHandle::SpokeTree => {
            let spoke = rng.gen_range(1..=SAMPLE_SPOKES);
            let k = rng.gen_range(0..=12);
            Point::spoke(spoke, rational::rat(k, 12)).expect("radius in range")
        }
        SpaceHandle::Euclidean { dim } => {
            Point::Euclid((0..*dim).map(|_| rational::rat(rng.gen_range(-8..=8), 4)).collect())
        }
    }
}

pub fn random_points(space: &SpaceHandle, rng: &mut SampleRng, n: usize) -> Vec<Point> {
    (0..n).map(|_| random_point(space, rng)).collect()
}

/// `λ = k/12`, `k ∈ 0..=12`.
pub fn random_lambda(rng: &mut SampleRng) -> Rational {
    rational::rat(rng.gen_range(0..=12), 12)
}

/// Rational in `[-2, 2]` with denominator 4.
pub fn random_coefficient(rng: &mut SampleRng) -> Rational {
    rational::rat(rng.gen_range(-8..=8), 4)
}

/// A dual element with 1 to `max_terms` terms whose endpoints come from
/// `pool` when given, otherwise from fresh random points.
pub fn random_dual(space: &SpaceHandle, rng: &mut SampleRng, pool: Option<&[Point]>, max_terms: usize) -> DualElement {
    let n = rng.gen_range(1..=max_terms.max(1));
    let pick = |rng: &mut SampleRng| match pool {
        Some(p) if !p.is_empty() => p.choose(rng).expect("nonempty").clone(),
        _ => random_point(space, rng),
    };
    let mut out = DualElement::zero();
    for _ in 0..n {
        let alpha = random_coefficient(rng);
        let t = rational::rat(rng.gen_range(1..=4), 2);
        let tail = pick(rng);
        let head = pick(rng);
        out = out.plus(&DualElement::term(alpha, t, tail, head));
    }
    out
}

/// A random pair set of at most `max_len` distinct pairs drawn over a small
/// point pool, so pairs frequently share points.
pub fn random_pair_set(space: &SpaceHandle, rng: &mut SampleRng, max_len: usize) -> PairSet {
    let pool = random_points(space, rng, 4);
    let len = rng.gen_range(0..=max_len);
    let mut set = PairSet::empty(*space);
    let mut attempts = 0;
    while set.len() < len && attempts < 10 * max_len + 10 {
        attempts += 1;
        let point = pool.choose(rng).expect("nonempty pool").clone();
        let dual = random_dual(space, rng, Some(&pool), 2);
        set.insert(Pair::new(point, dual)).expect("sampled points are valid");
    }
    set
}

/// A uniformly random subset of `g`, order inherited.
pub fn random_subset(g: &PairSet, rng: &mut SampleRng) -> PairSet {
    let mask: Vec<bool> = (0..g.len()).map(|_| rng.gen_bool(0.5)).collect();
    g.filtered(|p| mask[g.index_of(p).expect("member")])
}

/// Extends a random subset greedily so that the result is monotone.
pub fn random_monotone_subset(space: &SpaceHandle, g: &PairSet, rng: &mut SampleRng) -> PairSet {
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.shuffle(rng);
    let keep = rng.gen_range(0..=g.len());
    let mut out = PairSet::empty(*space);
    for &i in order.iter().take(keep) {
        let p = g.get(i).expect("index in range");
        if crate::monotone::mu_related_to_set(space, p, &out).expect("same space") {
            out.insert(p.clone()).expect("valid pair");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let s = SpaceHandle::SpokeTree;
        let a = random_pair_set(&s, &mut rng(42), 8);
        let b = random_pair_set(&s, &mut rng(42), 8);
        assert_eq!(a, b);
    }

    #[test]
    fn samples_are_valid() {
        let mut r = rng(1);
        for space in [SpaceHandle::SpokeTree, SpaceHandle::euclidean(3)] {
            for _ in 0..50 {
                let p = random_point(&space, &mut r);
                space.check(&p).unwrap();
                let d = random_dual(&space, &mut r, None, 3);
                d.check(&space).unwrap();
            }
            let g = random_pair_set(&space, &mut r, 10);
            assert!(g.len() <= 10);
            let m = random_monotone_subset(&space, &g, &mut r);
            assert!(crate::monotone::is_monotone(&space, &m).unwrap().passed);
        }
    }
}
