//! Seeded sampling of configurations and random coloured graphs.
//!
//! Every random choice in the crate goes through a [`ChaCha8Rng`] seeded
//! from a `u64`. Parallel or repeated trials derive their seeds from a root
//! seed by adding the trial index ([`trial_seed`]).

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Fp, MODULUS};
use crate::framework::Configuration;
use crate::graph::ColouredGraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of trial `index` under root seed `root`.
pub fn trial_seed(root: u64, index: usize) -> u64 {
    root.wrapping_add(index as u64)
}

/// Coordinates uniform in `1..q`.
pub fn fp_configuration<R: Rng>(n: usize, d: usize, rng: &mut R) -> Configuration<Fp> {
    let coords = (0..n * d).map(|_| Fp::new(rng.random_range(1..MODULUS))).collect();
    Configuration::new(d, coords).expect("d >= 1")
}

/// Coordinates uniform in `[-1, 1)`.
pub fn float_configuration<R: Rng>(n: usize, d: usize, rng: &mut R) -> Configuration<f64> {
    let coords = (0..n * d).map(|_| rng.random_range(-1.0..1.0)).collect();
    Configuration::new(d, coords).expect("d >= 1")
}

/// A uniformly random simple graph on `n` vertices with `m` edges and `k`
/// non-empty classes. Each class gets one distinct edge first; every other
/// edge is uncoloured with probability 1/2, otherwise uniform over `1..=k`.
///
/// Returns `None` when `m` exceeds `binom(n, 2)` or is smaller than `k`.
pub fn random_coloured_graph<R: Rng>(n: usize, k: usize, m: usize, rng: &mut R) -> Option<ColouredGraph> {
    let mut all: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    if m > all.len() || m < k || n == 0 {
        return None;
    }
    all.shuffle(rng);
    all.truncate(m);
    let triples = all.iter().enumerate().map(|(i, &(a, b))| {
        let colour = if i < k {
            i + 1
        } else if k == 0 || rng.random_bool(0.5) {
            0
        } else {
            rng.random_range(1..=k)
        };
        (a, b, colour)
    });
    let triples: Vec<_> = triples.collect();
    Some(ColouredGraph::new(n, k, triples).expect("valid by construction"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_sampling_is_reproducible() {
        let a = fp_configuration(5, 2, &mut rng(7));
        let b = fp_configuration(5, 2, &mut rng(7));
        assert_eq!(a, b);
        assert!(a.coords().iter().all(|x| !x.is_zero()));
        let g = random_coloured_graph(6, 2, 9, &mut rng(3)).unwrap();
        assert_eq!(g, random_coloured_graph(6, 2, 9, &mut rng(3)).unwrap());
        assert_eq!(g.m(), 9);
        assert_eq!(g.k(), 2);
        assert!(random_coloured_graph(3, 0, 4, &mut rng(0)).is_none());
        assert!(random_coloured_graph(4, 3, 2, &mut rng(0)).is_none());
    }
}
