//! Decisions and the certificates that back them.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Fp;
use crate::graph::Edge;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Rigid,
    Flexible,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Rigid => "rigid",
            Decision::Flexible => "flexible",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Monte-Carlo ranks and an exhaustive rainbow-tuple search.
    Numeric,
    K1Laman,
    K2Laman,
    MatroidUnion,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Numeric => "numeric",
            Method::K1Laman => "k1-laman",
            Method::K2Laman => "k2-laman",
            Method::MatroidUnion => "matroid-union",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// One edge per colour class, in class order, redundant as a set.
    RainbowTuple(Vec<Edge>),
    /// A non-trivial kernel vector `(p', r')` of `R⁺(p)` over `F_q`.
    Flex(Vec<Fp>),
    /// A maximum union-independent set split into its two parts.
    Partition { rigidity: Vec<Edge>, transversal: Vec<Edge> },
}

/// Why a graph was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    NotLamanPlusK,
    ClassAllBridges { class: usize, bridges: Vec<Edge> },
    G0NotSparse { circuit: Vec<Edge> },
    GiNot22Sparse(usize),
    Deficiency(usize),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NotLamanPlusK => f.write_str("not-laman-plus-k"),
            Witness::ClassAllBridges { class, .. } => write!(f, "class-all-bridges: {class}"),
            Witness::G0NotSparse { .. } => f.write_str("G0-not-sparse"),
            Witness::GiNot22Sparse(i) => write!(f, "Gi-not-22-sparse: {i}"),
            Witness::Deficiency(t) => write!(f, "deficiency: {t}"),
        }
    }
}

impl Witness {
    pub fn identifier(&self) -> String {
        alloc::format!("{self}")
    }
}

/// Ranks observed while deciding; absent entries were not computed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ranks {
    /// `rank R(p)`, best over trials.
    pub rigidity: Option<usize>,
    /// `rank R⁺(p)`, best over trials.
    pub coordinated: Option<usize>,
    /// Dimension of the trivial motions at the sampled configuration.
    pub trivial: Option<usize>,
    /// `dn + k - trivial`, the rank of a rigid coordinated framework.
    pub target: Option<usize>,
    pub laman: Option<usize>,
    pub union: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityVerdict {
    pub decision: Decision,
    /// Rigid with independent rows of `R⁺(p)`.
    pub isostatic: bool,
    pub method: Method,
    pub d: usize,
    pub k: usize,
    /// Root seed of the randomized checks, if any ran.
    pub seed: Option<u64>,
    /// Seeds of the configurations behind `ranks`.
    pub trial_seeds: Vec<u64>,
    pub certificate: Option<Certificate>,
    pub witnesses: Vec<Witness>,
    pub ranks: Ranks,
}

impl RigidityVerdict {
    pub fn is_rigid(&self) -> bool {
        self.decision == Decision::Rigid
    }
}
