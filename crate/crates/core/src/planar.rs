//! Deterministic deciders in the plane.
//!
//! The coordinated rigidity matroid in the plane is the union of the
//! `(2,3)` count matroid with the partition matroid `N_c` in which each
//! colour class has capacity one and uncoloured edges are loops. A graph is
//! generically rigid iff this union has rank `2n - 3 + k`.
//!
//! [`check_k1`] and [`check_k2`] characterize the isostatic graphs for one
//! and two classes by counts and circuits alone. [`union_rank_d2`] handles
//! any `k` through matroid-union augmentation, and [`decide_d2`] picks
//! between them.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{ColouredGraph, Edge};
use crate::pebble::{
    classify_laman_plus, fundamental_circuit, is_sparse, redundant_edges_d2, scan, LamanClass, PebbleError,
    SparsityParams,
};
use crate::rigid_rank;
use crate::verdict::{Certificate, Decision, Method, Ranks, RigidityVerdict, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PlanarError {
    #[error("decider needs k = {expected}, graph has k = {found}")]
    ClassCount { expected: usize, found: usize },
    #[error(transparent)]
    Pebble(#[from] PebbleError),
}

/// Number of distinct non-zero colours among `edges`.
pub fn transversal_rank(g: &ColouredGraph, edges: &[usize]) -> usize {
    let mut seen = alloc::vec![false; g.k() + 1];
    let mut count = 0;
    for &e in edges {
        let c = g.colour(e);
        if c > 0 && !seen[c] {
            seen[c] = true;
            count += 1;
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionRankReport {
    pub union_rank: usize,
    /// `(2,3)`-sparse part, sorted edge indices.
    pub rigidity: Vec<usize>,
    /// Part with pairwise distinct non-zero colours, sorted edge indices.
    pub transversal: Vec<usize>,
    /// `2n - 3 + k - union_rank`.
    pub deficiency: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    Free,
    Rigidity,
    Transversal,
}

struct Union<'a> {
    g: &'a ColouredGraph,
    part: Vec<Part>,
    /// Holder of each colour in the transversal part.
    holder: Vec<Option<usize>>,
}

enum Step {
    /// The element can join this part as it is.
    Sink(Part),
    /// Elements of other parts it could replace.
    Exchange(Vec<usize>),
}

impl Union<'_> {
    fn members(&self, p: Part) -> Vec<usize> {
        (0..self.part.len()).filter(|&i| self.part[i] == p).collect()
    }

    fn step(&self, y: usize) -> Step {
        let mut next = Vec::new();
        if self.part[y] != Part::Rigidity {
            let basis = self.members(Part::Rigidity);
            match fundamental_circuit(self.g, &basis, y) {
                Err(PebbleError::Independent(_)) => return Step::Sink(Part::Rigidity),
                Ok(c) => next.extend(c.circuit.into_iter().filter(|&z| z != y)),
                Err(e) => unreachable!("rigidity part is sparse: {e}"),
            }
        }
        let c = self.g.colour(y);
        if self.part[y] != Part::Transversal && c > 0 {
            match self.holder[c] {
                None => return Step::Sink(Part::Transversal),
                Some(z) => next.push(z),
            }
        }
        next.sort_unstable();
        next.dedup();
        Step::Exchange(next)
    }

    fn place(&mut self, y: usize, p: Part) {
        if self.part[y] == Part::Transversal {
            self.holder[self.g.colour(y)] = None;
        }
        if p == Part::Transversal {
            self.holder[self.g.colour(y)] = Some(y);
        }
        self.part[y] = p;
    }

    /// Breadth-first search for a shortest exchange path from `x`; applies it
    /// and reports whether `x` was absorbed.
    fn augment(&mut self, x: usize) -> bool {
        let m = self.part.len();
        let mut parent = alloc::vec![None; m];
        let mut seen = alloc::vec![false; m];
        let mut queue = VecDeque::from([x]);
        seen[x] = true;
        while let Some(y) = queue.pop_front() {
            match self.step(y) {
                Step::Sink(p) => {
                    // y joins p; each predecessor takes the place of its successor.
                    let mut cur = y;
                    let mut target = p;
                    loop {
                        let old = self.part[cur];
                        self.place(cur, target);
                        match parent[cur] {
                            Some(prev) => {
                                target = old;
                                cur = prev;
                            }
                            None => return true,
                        }
                    }
                }
                Step::Exchange(next) => {
                    for z in next {
                        if !seen[z] {
                            seen[z] = true;
                            parent[z] = Some(y);
                            queue.push_back(z);
                        }
                    }
                }
            }
        }
        false
    }
}

/// Rank of `E` in the union of the `(2,3)` count matroid and `N_c`, with a
/// witnessing partition.
pub fn union_rank_d2(g: &ColouredGraph) -> UnionRankReport {
    let mut u = Union { g, part: alloc::vec![Part::Free; g.m()], holder: alloc::vec![None; g.k() + 1] };
    for x in 0..g.m() {
        u.augment(x);
    }
    let rigidity = u.members(Part::Rigidity);
    let transversal = u.members(Part::Transversal);
    let union_rank = rigidity.len() + transversal.len();
    UnionRankReport { union_rank, rigidity, transversal, deficiency: rigid_rank(g.n(), 2) + g.k() - union_rank }
}

/// Outcome of [`check_k1`] or [`check_k2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsostaticReport {
    pub isostatic: bool,
    /// Redundant rainbow tuple when isostatic.
    pub certificate: Option<Vec<usize>>,
    /// Every failing condition, in checking order.
    pub witnesses: Vec<Witness>,
}

fn edges_of(g: &ColouredGraph, idx: &[usize]) -> Vec<Edge> {
    idx.iter().map(|&i| g.edge(i)).collect()
}

/// One class: isostatic iff `G` is Laman+1 and its unique circuit contains
/// an edge of `E_1`. The certificate is the first such edge.
pub fn check_k1(g: &ColouredGraph) -> Result<IsostaticReport, PlanarError> {
    if g.k() != 1 {
        return Err(PlanarError::ClassCount { expected: 1, found: g.k() });
    }
    if classify_laman_plus(g)? != LamanClass::LamanPlus(1) {
        return Ok(IsostaticReport { isostatic: false, certificate: None, witnesses: alloc::vec![Witness::NotLamanPlusK] });
    }
    let circuit = &scan(g, SparsityParams::LAMAN).circuits[0].circuit;
    Ok(match circuit.iter().find(|&&e| g.colour(e) == 1) {
        Some(&e) => IsostaticReport { isostatic: true, certificate: Some(alloc::vec![e]), witnesses: Vec::new() },
        None => IsostaticReport {
            isostatic: false,
            certificate: None,
            witnesses: alloc::vec![Witness::ClassAllBridges { class: 1, bridges: edges_of(g, &g.class(1)) }],
        },
    })
}

/// Independence in the one-class coordinated matroid: `G_0` is
/// `(2,3)`-sparse and `G` has at most one `(2,3)`-circuit.
pub fn independent_k1(g: &ColouredGraph) -> Result<bool, PlanarError> {
    if g.k() != 1 {
        return Err(PlanarError::ClassCount { expected: 1, found: g.k() });
    }
    let scan = scan(g, SparsityParams::LAMAN);
    Ok(is_sparse(&g.uncoloured_part(), SparsityParams::LAMAN) && scan.circuits.len() <= 1)
}

/// Two classes: isostatic iff `G` is Laman+2, neither class consists of
/// bridges only, `G_0` is `(2,3)`-sparse and `G_1`, `G_2` are
/// `(2,2)`-sparse. All conditions are evaluated.
pub fn check_k2(g: &ColouredGraph) -> Result<IsostaticReport, PlanarError> {
    if g.k() != 2 {
        return Err(PlanarError::ClassCount { expected: 2, found: g.k() });
    }
    let mut witnesses = Vec::new();
    if classify_laman_plus(g)? != LamanClass::LamanPlus(2) {
        witnesses.push(Witness::NotLamanPlusK);
    }
    let redundant = redundant_edges_d2(g);
    for class in 1..=2 {
        let members = g.class(class);
        if members.iter().all(|e| redundant.binary_search(e).is_err()) {
            witnesses.push(Witness::ClassAllBridges { class, bridges: edges_of(g, &members) });
        }
    }
    let g0 = g.uncoloured_part();
    if let Some(c) = scan(&g0, SparsityParams::LAMAN).circuits.first() {
        witnesses.push(Witness::G0NotSparse { circuit: edges_of(&g0, &c.circuit) });
    }
    for class in 1..=2 {
        if !is_sparse(&g.subgraph_by_colours(&[0, class]), SparsityParams::TWO_TWO) {
            witnesses.push(Witness::GiNot22Sparse(class));
        }
    }
    let isostatic = witnesses.is_empty();
    let certificate = if isostatic { rainbow_pair_k2(g)?.map(|(a, b)| alloc::vec![a, b]) } else { None };
    Ok(IsostaticReport { isostatic, certificate, witnesses })
}

/// For `e ∈ E_1` in canonical order: if `G - e` is Laman+1, the first `E_2`
/// edge of its circuit completes a redundant rainbow pair.
pub fn rainbow_pair_k2(g: &ColouredGraph) -> Result<Option<(usize, usize)>, PlanarError> {
    if g.k() != 2 {
        return Err(PlanarError::ClassCount { expected: 2, found: g.k() });
    }
    if classify_laman_plus(g)? != LamanClass::LamanPlus(2) {
        return Ok(None);
    }
    for e in g.class(1) {
        let h = g.without_edges(&[e]);
        if classify_laman_plus(&h)? != LamanClass::LamanPlus(1) {
            continue;
        }
        let circuit = &scan(&h, SparsityParams::LAMAN).circuits[0].circuit;
        if let Some(&f) = circuit.iter().find(|&&f| h.colour(f) == 2) {
            let f = g.index_of(h.edge(f)).expect("h is a subgraph");
            return Ok(Some((e, f)));
        }
    }
    Ok(None)
}

/// Generic rigidity in the plane. One or two classes with at most
/// `2n - 3 + k` edges go through [`check_k1`] or [`check_k2`]; everything
/// else through [`union_rank_d2`].
pub fn decide_d2(g: &ColouredGraph) -> Result<RigidityVerdict, PlanarError> {
    let (n, k, m) = (g.n(), g.k(), g.m());
    let count = rigid_rank(n, 2) + k;
    let report = match k {
        1 if m <= count && n >= 2 => Some((Method::K1Laman, check_k1(g)?)),
        2 if m <= count && n >= 2 => Some((Method::K2Laman, check_k2(g)?)),
        _ => None,
    };
    let laman = crate::pebble::laman_rank(g);
    if let Some((method, report)) = report {
        let decision = if report.isostatic { Decision::Rigid } else { Decision::Flexible };
        return Ok(RigidityVerdict {
            decision,
            isostatic: report.isostatic,
            method,
            d: 2,
            k,
            seed: None,
            trial_seeds: Vec::new(),
            certificate: report.certificate.map(|t| Certificate::RainbowTuple(edges_of(g, &t))),
            witnesses: report.witnesses,
            ranks: Ranks { laman: Some(laman), ..Ranks::default() },
        });
    }
    let report = union_rank_d2(g);
    let rigid = report.deficiency == 0;
    let certificate = if rigid {
        let mut tuple = report.transversal.clone();
        tuple.sort_by_key(|&e| g.colour(e));
        Certificate::RainbowTuple(edges_of(g, &tuple))
    } else {
        Certificate::Partition { rigidity: edges_of(g, &report.rigidity), transversal: edges_of(g, &report.transversal) }
    };
    Ok(RigidityVerdict {
        decision: if rigid { Decision::Rigid } else { Decision::Flexible },
        isostatic: rigid && m == count,
        method: Method::MatroidUnion,
        d: 2,
        k,
        seed: None,
        trial_seeds: Vec::new(),
        certificate: Some(certificate),
        witnesses: if rigid { Vec::new() } else { alloc::vec![Witness::Deficiency(report.deficiency)] },
        ranks: Ranks { laman: Some(laman), union: Some(report.union_rank), ..Ranks::default() },
    })
}
