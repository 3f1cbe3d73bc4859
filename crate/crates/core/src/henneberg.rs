//! Random isostatic one-class graphs built by Henneberg moves.
//!
//! Start from `K4` with a non-empty class 1. An H1 move adds a vertex of
//! degree two; an H2 move deletes an edge `{i, j}` and adds a vertex joined
//! to `i`, `j` and a third vertex. New edges get class 1 with probability
//! 1/4. When H2 deletes a class 1 edge, at least one of the new edges at
//! `i` and `j` is class 1; when it deletes an uncoloured edge, all three new
//! edges are uncoloured.

use alloc::vec::Vec;

use rand::seq::IndexedRandom;
use rand::Rng;
use thiserror::Error;

use crate::graph::ColouredGraph;
use crate::planar::check_k1;
use crate::sample::rng;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HennebergError {
    #[error("target must have at least 4 vertices, got {0}")]
    TooSmall(usize),
    #[error("generated graph failed the isostatic check (seed {0})")]
    NotIsostatic(u64),
}

const COLOUR_PROBABILITY: f64 = 0.25;

fn colour<R: Rng>(rng: &mut R) -> usize {
    usize::from(rng.random_bool(COLOUR_PROBABILITY))
}

pub fn henneberg_k1_sample(target_n: usize, seed: u64) -> Result<ColouredGraph, HennebergError> {
    if target_n < 4 {
        return Err(HennebergError::TooSmall(target_n));
    }
    let mut r = rng(seed);
    let mut edges: Vec<(usize, usize, usize)> =
        (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b, 0))).collect();
    for e in edges.iter_mut() {
        e.2 = colour(&mut r);
    }
    if edges.iter().all(|e| e.2 == 0) {
        let i = r.random_range(0..edges.len());
        edges[i].2 = 1;
    }
    for v in 4..target_n {
        let old: Vec<usize> = (0..v).collect();
        if r.random_bool(0.5) {
            let ends: Vec<usize> = old.choose_multiple(&mut r, 2).copied().collect();
            for a in ends {
                edges.push((a, v, colour(&mut r)));
            }
        } else {
            let (i, j, c) = edges.swap_remove(r.random_range(0..edges.len()));
            let others: Vec<usize> = old.iter().copied().filter(|&w| w != i && w != j).collect();
            let w = *others.choose(&mut r).expect("at least four vertices");
            if c == 0 {
                edges.extend([(i, v, 0), (j, v, 0), (w, v, 0)]);
            } else {
                let mut ci = colour(&mut r);
                let mut cj = colour(&mut r);
                if ci == 0 && cj == 0 {
                    if r.random_bool(0.5) {
                        ci = 1;
                    } else {
                        cj = 1;
                    }
                }
                edges.extend([(i, v, ci), (j, v, cj), (w, v, colour(&mut r))]);
            }
        }
    }
    let g = ColouredGraph::new(target_n, 1, edges).expect("moves keep the graph simple and class 1 non-empty");
    match check_k1(&g) {
        Ok(report) if report.isostatic => Ok(g),
        _ => Err(HennebergError::NotIsostatic(seed)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generic::{decide_generic_coordinated_rigidity, OracleParams};

    #[test]
    fn base_and_one_move() {
        let g = henneberg_k1_sample(4, 0).unwrap();
        assert_eq!((g.n(), g.m()), (4, 6));
        let g = henneberg_k1_sample(5, 1).unwrap();
        assert_eq!((g.n(), g.m()), (5, 8));
        assert!(decide_generic_coordinated_rigidity(&g, &OracleParams::planar(1)).unwrap().isostatic);
        assert_eq!(henneberg_k1_sample(3, 0), Err(HennebergError::TooSmall(3)));
    }

    #[test]
    fn samples_are_isostatic_and_reproducible() {
        for seed in 0..40 {
            let n = 4 + (seed as usize % 9);
            let g = henneberg_k1_sample(n, seed).unwrap();
            assert_eq!(g, henneberg_k1_sample(n, seed).unwrap());
            assert_eq!(g.m(), 2 * n - 2);
            assert!(decide_generic_coordinated_rigidity(&g, &OracleParams::planar(seed)).unwrap().isostatic);
        }
    }
}
