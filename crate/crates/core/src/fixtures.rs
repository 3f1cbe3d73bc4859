//! Small named coloured graphs used throughout the tests, the CLI examples
//! and the acceptance suite.
//!
//! Vertices are 0-based. Class 1 edges are the ones drawn dashed, class 2
//! dotted.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{ColouredGraph, Edge};

fn build(n: usize, k: usize, triples: &[(usize, usize, usize)]) -> ColouredGraph {
    ColouredGraph::new(n, k, triples.iter().copied()).expect("fixture is valid")
}

pub fn triangle() -> ColouredGraph {
    build(3, 0, &[(0, 1, 0), (1, 2, 0), (0, 2, 0)])
}

pub fn k4() -> ColouredGraph {
    build(4, 0, &[(0, 1, 0), (0, 2, 0), (0, 3, 0), (1, 2, 0), (1, 3, 0), (2, 3, 0)])
}

/// `K4` on the unit square with class 1 = `{1,3}, {2,3}`.
pub fn equivalent_square() -> ColouredGraph {
    build(4, 1, &[(0, 1, 0), (0, 2, 0), (0, 3, 0), (1, 2, 0), (1, 3, 1), (2, 3, 1)])
}

/// Unit-square placement `p` (with `r = 0`) of [`equivalent_square`].
pub fn equivalent_square_p() -> Vec<Vec<f64>> {
    vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]
}

/// The equivalent, non-congruent placement: vertex 3 moves, `s` absorbs the
/// change of the class 1 lengths. Values are rounded to six digits.
pub fn equivalent_square_q() -> (Vec<Vec<f64>>, f64) {
    (vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.64767, 0.761921]], 0.574773)
}

/// Rectangle `0-1-2-3` with diagonal `{0,2}`; class 1 = `{0,1}, {2,3}`.
/// Generically one non-trivial infinitesimal motion.
pub fn flexible_quad() -> ColouredGraph {
    build(4, 1, &[(0, 1, 1), (1, 2, 0), (2, 3, 1), (0, 3, 0), (0, 2, 0)])
}

/// [`flexible_quad`] plus the class 1 diagonal `{1,3}`: isostatic.
pub fn rigid_quad() -> ColouredGraph {
    build(4, 1, &[(0, 1, 1), (0, 2, 0), (0, 3, 0), (1, 2, 0), (1, 3, 1), (2, 3, 1)])
}

/// Drawing coordinates shared by the two quads.
pub fn quad_coords() -> Vec<Vec<f64>> {
    vec![vec![0.0, 0.0], vec![1.7, 0.0], vec![1.7, 1.0], vec![0.0, 1.0]]
}

/// Two edge-disjoint `K4` circuits on `{0,1,2,3}` and `{1,4,5,6}` joined
/// by the bridge `{0,4}`; `n = 7`, `m = 13`, two classes of three edges.
pub fn twin_circuits() -> ColouredGraph {
    build(
        7,
        2,
        &[
            (0, 1, 1),
            (1, 4, 1),
            (2, 3, 1),
            (0, 4, 2),
            (4, 6, 2),
            (5, 6, 2),
            (1, 2, 0),
            (1, 3, 0),
            (0, 3, 0),
            (0, 2, 0),
            (4, 5, 0),
            (1, 5, 0),
            (1, 6, 0),
        ],
    )
}

/// The rainbow pair whose removal leaves a Laman graph.
pub const TWIN_CIRCUITS_REDUNDANT_PAIR: [Edge; 2] = [Edge { u: 2, v: 3 }, Edge { u: 4, v: 6 }];
/// A rainbow pair inside one circuit: removing it leaves a flexible graph.
pub const TWIN_CIRCUITS_FLEXIBLE_PAIR: [Edge; 2] = [Edge { u: 1, v: 4 }, Edge { u: 5, v: 6 }];

pub fn twin_circuits_coords() -> Vec<Vec<f64>> {
    vec![
        vec![0.7, 2.3],
        vec![1.9, 0.0],
        vec![1.0, 0.9],
        vec![0.0, 0.8],
        vec![2.0, 2.0],
        vec![2.5, 1.2],
        vec![3.6, 1.0],
    ]
}

/// Two `K4` blocks `{0..3}` and `{4..7}`, each with one class 1 edge, joined
/// by the three class 2 edges `{0,4}, {1,5}, {2,6}`, all of them bridges.
pub fn bridged_k4_pair() -> ColouredGraph {
    build(
        8,
        2,
        &[
            (0, 4, 2),
            (1, 5, 2),
            (2, 6, 2),
            (2, 3, 1),
            (6, 7, 1),
            (0, 1, 0),
            (1, 2, 0),
            (0, 2, 0),
            (0, 3, 0),
            (1, 3, 0),
            (4, 5, 0),
            (5, 6, 0),
            (4, 6, 0),
            (4, 7, 0),
            (5, 7, 0),
        ],
    )
}

pub fn bridged_k4_pair_coords() -> Vec<Vec<f64>> {
    vec![
        vec![-0.5, 0.0],
        vec![-2.0, 1.0],
        vec![-2.0, -1.0],
        vec![-1.3, 0.0],
        vec![0.5, 0.0],
        vec![2.0, 1.0],
        vec![2.0, -1.0],
        vec![1.3, 0.0],
    ]
}

/// A dependent uncoloured core on `0..6` (10 edges) and a hub vertex 6
/// joined by class 1 edges `{2,6}, {4,6}` and the class 2 edge `{0,6}`.
pub fn hub_over_dependent_core() -> ColouredGraph {
    build(
        7,
        2,
        &[
            (0, 6, 2),
            (2, 6, 1),
            (4, 6, 1),
            (0, 5, 0),
            (3, 5, 0),
            (4, 5, 0),
            (0, 4, 0),
            (3, 4, 0),
            (1, 3, 0),
            (2, 3, 0),
            (0, 2, 0),
            (1, 2, 0),
            (0, 1, 0),
        ],
    )
}

pub fn hub_over_dependent_core_coords() -> Vec<Vec<f64>> {
    vec![
        vec![0.0, 1.2],
        vec![-2.0, 0.0],
        vec![-0.75, -0.2],
        vec![0.0, -1.25],
        vec![0.75, -0.2],
        vec![2.0, 0.0],
        vec![0.0, 0.2],
    ]
}
