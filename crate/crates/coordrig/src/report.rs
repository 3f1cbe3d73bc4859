//! JSON payloads printed by the command-line tool.

use coordrig_core::graph::Edge;
use coordrig_core::verdict::{Certificate, Ranks, Witness};
use coordrig_core::{ColouredGraph, RigidityVerdict};
use serde::Serialize;

/// `[u, v, colour]`, as in the graph format.
pub type EdgeTriple = [usize; 3];

fn triple(g: &ColouredGraph, e: Edge) -> EdgeTriple {
    let c = g.index_of(e).map_or(0, |i| g.colour(i));
    [e.u, e.v, c]
}

fn triples(g: &ColouredGraph, edges: &[Edge]) -> Vec<EdgeTriple> {
    edges.iter().map(|&e| triple(g, e)).collect()
}

#[derive(Debug, Serialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum CertificateJson {
    RainbowTuple(Vec<EdgeTriple>),
    /// Entries of a kernel vector over `F_q`, `q = 2^61 - 1`.
    Flex { modulus: u64, vector: Vec<u64> },
    Partition { rigidity: Vec<EdgeTriple>, transversal: Vec<EdgeTriple> },
}

#[derive(Debug, Serialize, PartialEq)]
pub struct WitnessJson {
    pub id: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<EdgeTriple>,
}

#[derive(Debug, Serialize, PartialEq)]
pub struct RanksJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rigidity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coordinated: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub laman: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub union: Option<usize>,
}

impl From<&Ranks> for RanksJson {
    fn from(r: &Ranks) -> Self {
        RanksJson {
            rigidity: r.rigidity,
            coordinated: r.coordinated,
            trivial: r.trivial,
            target: r.target,
            laman: r.laman,
            union: r.union,
        }
    }
}

#[derive(Debug, Serialize, PartialEq)]
pub struct VerdictJson {
    pub decision: &'static str,
    pub isostatic: bool,
    pub method: &'static str,
    pub d: usize,
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub seed: Option<u64>,
    pub trial_seeds: Vec<u64>,
    pub certificate: Option<CertificateJson>,
    /// First failing condition.
    pub witness: Option<String>,
    pub witnesses: Vec<WitnessJson>,
    pub ranks: RanksJson,
}

pub fn verdict_json(g: &ColouredGraph, v: &RigidityVerdict) -> VerdictJson {
    let certificate = v.certificate.as_ref().map(|c| match c {
        Certificate::RainbowTuple(t) => CertificateJson::RainbowTuple(triples(g, t)),
        Certificate::Flex(x) => CertificateJson::Flex {
            modulus: coordrig_core::field::MODULUS,
            vector: x.iter().map(|f| f.value()).collect(),
        },
        Certificate::Partition { rigidity, transversal } => CertificateJson::Partition {
            rigidity: triples(g, rigidity),
            transversal: triples(g, transversal),
        },
    });
    let witnesses = v
        .witnesses
        .iter()
        .map(|w| WitnessJson {
            id: w.identifier(),
            edges: match w {
                Witness::ClassAllBridges { bridges, .. } => triples(g, bridges),
                Witness::G0NotSparse { circuit } => triples(g, circuit),
                _ => Vec::new(),
            },
        })
        .collect();
    VerdictJson {
        decision: v.decision.as_str(),
        isostatic: v.isostatic,
        method: v.method.as_str(),
        d: v.d,
        k: v.k,
        n: g.n(),
        m: g.m(),
        seed: v.seed,
        trial_seeds: v.trial_seeds.clone(),
        certificate,
        witness: v.witnesses.first().map(Witness::identifier),
        witnesses,
        ranks: (&v.ranks).into(),
    }
}

/// Motion space at a configuration.
#[derive(Debug, Serialize)]
pub struct MotionsJson {
    pub d: usize,
    pub nullity: usize,
    pub trivial_dim: usize,
    pub nontrivial_dim: usize,
    pub infinitesimally_rigid: bool,
    /// Vectors `(p', r')` of length `dn + k`, vertex-major.
    pub basis: Vec<Vec<f64>>,
    pub flex: Option<Vec<f64>>,
    pub coords: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
}

/// Equilibrium stresses at a configuration.
#[derive(Debug, Serialize)]
pub struct StressesJson {
    pub d: usize,
    pub dimension: usize,
    pub independent: bool,
    /// Edges in canonical order; basis vectors are indexed the same way.
    pub edges: Vec<EdgeTriple>,
    pub basis: Vec<Vec<f64>>,
    pub coords: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Serialize)]
pub struct RankJson {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    pub trial_seeds: Vec<u64>,
    pub generic_rank: usize,
    pub coordinated_rank: usize,
    pub trivial_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub laman_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub union_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<u64>>>,
}
