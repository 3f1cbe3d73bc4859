//! Coloured graphs: simple graphs whose edges carry a coordination class.
//!
//! Vertices are `0..n`. Edges are stored in canonical (lexicographic) order,
//! and every algorithm in the crate refers to edges by their index in that
//! order. Colour `0` marks uncoloured edges (rigid bars); colours `1..=k` are
//! the coordination classes, each of which must be non-empty.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// An undirected edge `{u, v}` with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds the edge `{a, b}` in normal form. Panics on a loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "loop at vertex {a}");
        Edge { u: a.min(b), v: a.max(b) }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

impl From<(usize, usize)> for Edge {
    fn from((a, b): (usize, usize)) -> Self {
        Edge::new(a, b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph needs at least one vertex")]
    NoVertices,
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("colour {colour} of edge {edge} outside 0..={k}")]
    ColourOutOfRange { edge: Edge, colour: usize, k: usize },
    #[error("colour class {0} is empty")]
    EmptyClass(usize),
}

/// A simple graph with a colouring `c: E -> {0, ..., k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColouredGraph {
    n: usize,
    k: usize,
    edges: Vec<Edge>,
    colours: Vec<usize>,
}

impl ColouredGraph {
    /// Validates and canonicalizes `(u, v, colour)` triples.
    pub fn new(
        n: usize,
        k: usize,
        triples: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut tagged = Vec::new();
        for (a, b, colour) in triples {
            if a == b {
                return Err(GraphError::Loop(a));
            }
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            let edge = Edge::new(a, b);
            if colour > k {
                return Err(GraphError::ColourOutOfRange { edge, colour, k });
            }
            tagged.push((edge, colour));
        }
        tagged.sort_unstable();
        for w in tagged.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(GraphError::DuplicateEdge(w[0].0));
            }
        }
        let mut seen = alloc::vec![false; k + 1];
        for &(_, c) in &tagged {
            seen[c] = true;
        }
        if let Some(empty) = (1..=k).find(|&i| !seen[i]) {
            return Err(GraphError::EmptyClass(empty));
        }
        let (edges, colours) = tagged.into_iter().unzip();
        Ok(ColouredGraph { n, k, edges, colours })
    }

    /// An uncoloured graph (`k = 0`).
    pub fn uncoloured(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        Self::new(n, 0, edges.into_iter().map(|(a, b)| (a, b, 0)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of coordination classes.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    pub fn colours(&self) -> &[usize] {
        &self.colours
    }

    pub fn colour(&self, index: usize) -> usize {
        self.colours[index]
    }

    /// `(u, v, colour)` triples in canonical order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges.iter().zip(&self.colours).map(|(e, &c)| (e.u, e.v, c))
    }

    /// Index of `edge` in canonical order.
    pub fn index_of(&self, edge: Edge) -> Option<usize> {
        self.edges.binary_search(&edge).ok()
    }

    /// Edge indices of the class `E_i` (`E_0` = uncoloured).
    pub fn class(&self, i: usize) -> Vec<usize> {
        (0..self.m()).filter(|&e| self.colours[e] == i).collect()
    }

    /// Sizes `|E_0|, ..., |E_k|`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = alloc::vec![0; self.k + 1];
        for &c in &self.colours {
            sizes[c] += 1;
        }
        sizes
    }

    pub fn degree(&self, x: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(x)).count()
    }

    /// Vertices without incident edges.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        let mut touched = alloc::vec![false; self.n];
        for e in &self.edges {
            touched[e.u] = true;
            touched[e.v] = true;
        }
        (0..self.n).filter(|&x| !touched[x]).collect()
    }

    /// Keeps the edges whose colour lies in `keep`, on the same vertex set.
    ///
    /// Retained non-zero classes are renumbered `1..=k'` in increasing order,
    /// so `keep = [0]` gives `G_0` and `keep = [0, i]` gives `G_i` with its
    /// class relabelled `1`.
    pub fn subgraph_by_colours(&self, keep: &[usize]) -> ColouredGraph {
        let mut relabel = alloc::vec![None; self.k + 1];
        let mut next = 1;
        for c in 0..=self.k {
            if keep.contains(&c) {
                relabel[c] = Some(if c == 0 { 0 } else { next });
                if c != 0 {
                    next += 1;
                }
            }
        }
        let mut edges = Vec::new();
        let mut colours = Vec::new();
        for (e, &c) in self.edges.iter().zip(&self.colours) {
            if let Some(nc) = relabel[c] {
                edges.push(*e);
                colours.push(nc);
            }
        }
        ColouredGraph { n: self.n, k: next - 1, edges, colours }
    }

    /// `G_0`: the uncoloured edges.
    pub fn uncoloured_part(&self) -> ColouredGraph {
        self.subgraph_by_colours(&[0])
    }

    /// Removes the edges with the given indices, keeping colours. Classes
    /// that become empty keep their index, so the result may violate the
    /// non-empty class invariant; it is meant for rank computations.
    pub fn without_edges(&self, removed: &[usize]) -> ColouredGraph {
        let mut edges = Vec::with_capacity(self.m());
        let mut colours = Vec::with_capacity(self.m());
        for i in 0..self.m() {
            if !removed.contains(&i) {
                edges.push(self.edges[i]);
                colours.push(self.colours[i]);
            }
        }
        ColouredGraph { n: self.n, k: self.k, edges, colours }
    }

    /// Same graph with a new colouring (validated).
    pub fn recoloured(&self, k: usize, colours: &[usize]) -> Result<ColouredGraph, GraphError> {
        assert_eq!(colours.len(), self.m());
        ColouredGraph::new(
            self.n,
            k,
            self.edges.iter().zip(colours).map(|(e, &c)| (e.u, e.v, c)),
        )
    }

    /// Adds an edge, keeping canonical order. Fails like [`ColouredGraph::new`].
    pub fn with_edge(&self, a: usize, b: usize, colour: usize) -> Result<ColouredGraph, GraphError> {
        ColouredGraph::new(self.n, self.k, self.triples().chain([(a, b, colour)]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn canonical_order_and_counts() {
        let g = ColouredGraph::new(3, 0, [(1, 2, 0), (2, 0, 0), (0, 1, 0)]).unwrap();
        assert_eq!(g.edges(), &[Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2)]);
        assert_eq!(g.m(), 3);
        assert_eq!(g.class_sizes(), vec![3]);
    }

    #[test]
    fn rejects_invalid_input() {
        assert_eq!(ColouredGraph::new(3, 0, [(1, 1, 0)]), Err(GraphError::Loop(1)));
        assert_eq!(
            ColouredGraph::new(3, 0, [(0, 1, 0), (1, 0, 0)]),
            Err(GraphError::DuplicateEdge(Edge::new(0, 1)))
        );
        assert!(matches!(
            ColouredGraph::new(3, 1, [(0, 1, 2)]),
            Err(GraphError::ColourOutOfRange { colour: 2, .. })
        ));
        assert_eq!(
            ColouredGraph::new(3, 2, [(0, 1, 1), (1, 2, 1), (0, 2, 0)]),
            Err(GraphError::EmptyClass(2))
        );
        assert!(matches!(
            ColouredGraph::new(3, 0, [(0, 3, 0)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert_eq!(ColouredGraph::new(0, 0, []), Err(GraphError::NoVertices));
    }

    #[test]
    fn subgraphs_by_colour() {
        let g = ColouredGraph::new(4, 2, [(0, 1, 1), (1, 2, 2), (2, 3, 0), (0, 3, 2)]).unwrap();
        let all = g.subgraph_by_colours(&[0, 1, 2]);
        assert_eq!(all, g);
        let g0 = g.uncoloured_part();
        assert_eq!(g0.m(), 1);
        assert_eq!(g0.k(), 0);
        let g2 = g.subgraph_by_colours(&[0, 2]);
        assert_eq!(g2.k(), 1);
        assert_eq!(g2.m(), 3);
        assert_eq!(g2.class(1), vec![0, 1]);
        assert_eq!(g2.n(), 4);
    }

    #[test]
    fn isolated_vertices_are_allowed() {
        let g = ColouredGraph::uncoloured(4, [(0, 1)]).unwrap();
        assert_eq!(g.isolated_vertices(), vec![2, 3]);
    }
}
