//! Generic ranks by random evaluation over `F_q`, and the decider based on
//! rainbow redundant tuples.
//!
//! Trial `t` under root seed `s` samples its configuration from
//! [`trial_seed`]`(s, t)`. Ranks are maxima over trials, so they never
//! exceed the generic rank and only grow with more trials.

use alloc::vec::Vec;

use thiserror::Error;

use crate::field::Fp;
use crate::framework::{
    coordinated_matrix, equilibrium_stresses, infinitesimal_motions, rigidity_matrix, trivial_dimension,
    Configuration,
};
use crate::graph::ColouredGraph;
use crate::matrix::{Backend, Matrix};
use crate::rigid_rank;
use crate::sample::{fp_configuration, rng, trial_seed};
use crate::svd::Svd;
use crate::verdict::{Certificate, Decision, Method, Ranks, RigidityVerdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleParams {
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
}

impl OracleParams {
    pub const DEFAULT_TRIALS: usize = 3;

    pub fn new(d: usize, trials: usize, seed: u64) -> Result<Self, GenericError> {
        if d == 0 || trials == 0 {
            return Err(GenericError::InvalidParams { d, trials });
        }
        Ok(OracleParams { d, trials, seed })
    }

    pub fn planar(seed: u64) -> Self {
        OracleParams { d: 2, trials: Self::DEFAULT_TRIALS, seed }
    }

    pub fn trial_seeds(&self) -> Vec<u64> {
        (0..self.trials).map(|t| trial_seed(self.seed, t)).collect()
    }
}

impl Default for OracleParams {
    fn default() -> Self {
        OracleParams::planar(0)
    }
}

/// Extra attempts with fresh seeds when the two rigidity tests disagree.
pub const RETRIES: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenericError {
    #[error("need d >= 1 and trials >= 1, got d = {d}, trials = {trials}")]
    InvalidParams { d: usize, trials: usize },
    #[error("rank tests disagree under every retry; root seeds {0:?}")]
    Inconsistent(Vec<u64>),
    #[error("rank {rank} of the coordinated matrix exceeds the bound {bound} (seed {seed})")]
    BoundViolated { rank: usize, bound: usize, seed: u64 },
}

/// Rigidity matrices of `g` at the trial configurations of `params`.
struct Oracle {
    seeds: Vec<u64>,
    configs: Vec<Configuration<Fp>>,
    matrices: Vec<Matrix<Fp>>,
    full: usize,
}

impl Oracle {
    fn new(g: &ColouredGraph, params: &OracleParams) -> Oracle {
        let seeds = params.trial_seeds();
        let configs: Vec<_> = seeds.iter().map(|&s| fp_configuration(g.n(), params.d, &mut rng(s))).collect();
        let matrices: Vec<_> = configs
            .iter()
            .map(|p| rigidity_matrix(g, p).expect("sized to g").matrix().clone())
            .collect();
        let full = matrices.iter().map(Fp::rank).max().unwrap_or(0);
        Oracle { seeds, configs, matrices, full }
    }

    fn rank_without(&self, removed: &[usize]) -> usize {
        self.matrices
            .iter()
            .map(|r| Fp::rank(&r.select_rows((0..r.rows()).filter(|i| !removed.contains(i)))))
            .max()
            .unwrap_or(0)
    }

    fn redundant(&self, set: &[usize]) -> bool {
        self.rank_without(set) == self.full
    }

    /// Depth-first search over `E_1 x ... x E_k` in canonical order. Bridges
    /// are dropped up front, and a prefix that is not redundant is never
    /// extended since subsets of redundant sets are redundant.
    fn rainbow_tuple(&self, g: &ColouredGraph) -> Option<Vec<usize>> {
        let candidates: Vec<Vec<usize>> =
            (1..=g.k()).map(|i| g.class(i).into_iter().filter(|&e| self.redundant(&[e])).collect()).collect();
        if candidates.iter().any(Vec::is_empty) {
            return None;
        }
        let mut prefix = Vec::with_capacity(g.k());
        self.extend(&candidates, &mut prefix).then_some(prefix)
    }

    fn extend(&self, candidates: &[Vec<usize>], prefix: &mut Vec<usize>) -> bool {
        let Some(class) = candidates.get(prefix.len()) else {
            return true;
        };
        for &e in class {
            prefix.push(e);
            if (prefix.len() == 1 || self.redundant(prefix)) && self.extend(candidates, prefix) {
                return true;
            }
            prefix.pop();
        }
        false
    }
}

/// Best rank of `R(p)` over the trial configurations.
pub fn generic_rank(g: &ColouredGraph, params: &OracleParams) -> usize {
    Oracle::new(g, params).full
}

/// Whether removing the edges `set` keeps the generic rank. Both ranks use
/// the same configurations.
pub fn is_redundant_set(g: &ColouredGraph, set: &[usize], params: &OracleParams) -> bool {
    Oracle::new(g, params).redundant(set)
}

/// The first redundant rainbow tuple in lexicographic canonical order, as
/// edge indices `(e_1, ..., e_k)` with `e_i ∈ E_i`.
pub fn find_rainbow_redundant_tuple(g: &ColouredGraph, params: &OracleParams) -> Option<Vec<usize>> {
    Oracle::new(g, params).rainbow_tuple(g)
}

struct Trial {
    rigidity: usize,
    coordinated: usize,
    trivial: usize,
}

fn decide_once(g: &ColouredGraph, params: &OracleParams) -> Result<Option<RigidityVerdict>, GenericError> {
    let (n, d, k, m) = (g.n(), params.d, g.k(), g.m());
    let oracle = Oracle::new(g, params);
    let mut trials = Vec::with_capacity(params.trials);
    for (t, p) in oracle.configs.iter().enumerate() {
        let coordinated = coordinated_matrix(g, p).expect("sized to g").rank();
        if n >= d {
            let bound = m.min(rigid_rank(n, d) + k);
            if coordinated > bound {
                return Err(GenericError::BoundViolated { rank: coordinated, bound, seed: oracle.seeds[t] });
            }
        }
        let rigidity = Fp::rank(&oracle.matrices[t]);
        trials.push(Trial { rigidity, coordinated, trivial: trivial_dimension(p) });
    }
    let bar_rigid = trials.iter().any(|t| t.rigidity + t.trivial == d * n);
    let direct = trials.iter().any(|t| t.coordinated + t.trivial == d * n + k);
    let tuple = if bar_rigid { oracle.rainbow_tuple(g) } else { None };
    if direct != tuple.is_some() {
        return Ok(None);
    }

    let best = (0..trials.len()).max_by_key(|&t| (trials[t].coordinated, usize::MAX - t)).unwrap_or(0);
    let trial = &trials[best];
    let target = d * n + k - trial.trivial;
    let ranks = Ranks {
        rigidity: Some(oracle.full),
        coordinated: Some(trial.coordinated),
        trivial: Some(trial.trivial),
        target: Some(target),
        ..Ranks::default()
    };
    let verdict = match tuple {
        Some(tuple) => RigidityVerdict {
            decision: Decision::Rigid,
            isostatic: m == target,
            certificate: Some(Certificate::RainbowTuple(tuple.iter().map(|&e| g.edge(e)).collect())),
            witnesses: Vec::new(),
            method: Method::Numeric,
            d,
            k,
            seed: Some(params.seed),
            trial_seeds: oracle.seeds,
            ranks,
        },
        None => {
            let flex = infinitesimal_motions(g, &oracle.configs[best]).ok().and_then(|s| s.flex);
            RigidityVerdict {
                decision: Decision::Flexible,
                isostatic: false,
                certificate: flex.map(Certificate::Flex),
                witnesses: alloc::vec![Witness::Deficiency(target - trial.coordinated)],
                method: Method::Numeric,
                d,
                k,
                seed: Some(params.seed),
                trial_seeds: oracle.seeds,
                ranks,
            }
        }
    };
    Ok(Some(verdict))
}

/// Rigid iff the bar framework is generically rigid and a rainbow tuple is
/// redundant, cross-checked against `rank R⁺(p) = dn + k - trivial` at the
/// same configurations. On disagreement the check reruns with root seed
/// `seed + attempt * trials`.
pub fn decide_generic_coordinated_rigidity(
    g: &ColouredGraph,
    params: &OracleParams,
) -> Result<RigidityVerdict, GenericError> {
    let mut roots = Vec::new();
    for attempt in 0..=RETRIES {
        let root = params.seed.wrapping_add((attempt * params.trials) as u64);
        roots.push(root);
        if let Some(v) = decide_once(g, &OracleParams { seed: root, ..*params })? {
            return Ok(v);
        }
    }
    Err(GenericError::Inconsistent(roots))
}

/// Threshold for zero and non-zero stress entries after scaling to unit
/// max-norm.
pub const STRESS_TOLERANCE: f64 = 1e-8;

/// Equilibrium stresses `ω_1, ..., ω_k` with `ω_i(e_i) = 1` and
/// `ω_i(e_j) = 0` for `j ≠ i`, each scaled to max-norm 1. `None` if some
/// `ω_i` does not exist at `p`.
pub fn stress_certificate(g: &ColouredGraph, tuple: &[usize], p: &Configuration<f64>) -> Option<Vec<Vec<f64>>> {
    let basis = equilibrium_stresses(g, p).ok()?;
    let mut a = Matrix::zeros(tuple.len(), basis.len());
    for (row, &e) in tuple.iter().enumerate() {
        for (col, w) in basis.iter().enumerate() {
            a[(row, col)] = w[e];
        }
    }
    let svd = Svd::new(&a);
    let mut stresses = Vec::with_capacity(tuple.len());
    for i in 0..tuple.len() {
        let unit: Vec<f64> = (0..tuple.len()).map(|j| if j == i { 1.0 } else { 0.0 }).collect();
        let c = svd.solve(&unit, None);
        let mut omega = alloc::vec![0.0; g.m()];
        for (w, &ci) in basis.iter().zip(&c) {
            for (o, x) in omega.iter_mut().zip(w) {
                *o += ci * x;
            }
        }
        let scale = omega.iter().fold(0.0f64, |s, x| s.max(x.abs()));
        if scale == 0.0 {
            return None;
        }
        omega.iter_mut().for_each(|x| *x /= scale);
        let ok = tuple.iter().enumerate().all(|(j, &e)| {
            if j == i {
                omega[e].abs() > STRESS_TOLERANCE
            } else {
                omega[e].abs() < STRESS_TOLERANCE
            }
        });
        if !ok {
            return None;
        }
        stresses.push(omega);
    }
    Some(stresses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::Edge;
    use crate::pebble::laman_rank;
    use crate::sample::{float_configuration, random_coloured_graph};
    use alloc::vec;
    use proptest::prelude::*;

    fn idx(g: &ColouredGraph, a: usize, b: usize) -> usize {
        g.index_of(Edge::new(a, b)).unwrap()
    }

    #[test]
    fn ranks_of_small_graphs() {
        let planar = OracleParams::planar(1);
        assert_eq!(generic_rank(&fixtures::k4(), &planar), 5);
        assert_eq!(generic_rank(&fixtures::k4(), &OracleParams::new(3, 3, 1).unwrap()), 6);
        assert_eq!(generic_rank(&fixtures::twin_circuits(), &planar), 11);
        assert_eq!(generic_rank(&fixtures::triangle(), &planar), 3);
        assert!(OracleParams::new(2, 0, 0).is_err());
        assert!(OracleParams::new(0, 1, 0).is_err());
    }

    #[test]
    fn rank_is_monotone_in_trials() {
        let g = fixtures::bridged_k4_pair();
        let one = generic_rank(&g, &OracleParams::new(2, 1, 9).unwrap());
        let three = generic_rank(&g, &OracleParams::new(2, 3, 9).unwrap());
        assert!(one <= three);
        assert_eq!(three, 13);
    }

    #[test]
    fn redundant_sets() {
        let p = OracleParams::planar(2);
        let k4 = fixtures::k4();
        assert!((0..6).all(|e| is_redundant_set(&k4, &[e], &p)));
        assert!(!is_redundant_set(&k4, &[0, 5], &p));
        let tri = fixtures::triangle();
        assert!((0..3).all(|e| !is_redundant_set(&tri, &[e], &p)));
        let g = fixtures::twin_circuits();
        let [f1, f2] = fixtures::TWIN_CIRCUITS_FLEXIBLE_PAIR;
        assert!(!is_redundant_set(&g, &[idx(&g, f1.u, f1.v), idx(&g, f2.u, f2.v)], &p));
        let [e1, e2] = fixtures::TWIN_CIRCUITS_REDUNDANT_PAIR;
        assert!(is_redundant_set(&g, &[idx(&g, e1.u, e1.v), idx(&g, e2.u, e2.v)], &p));
    }

    #[test]
    fn rainbow_tuples() {
        let p = OracleParams::planar(3);
        let g = fixtures::rigid_quad();
        assert_eq!(find_rainbow_redundant_tuple(&g, &p), Some(vec![idx(&g, 0, 1)]));
        assert_eq!(find_rainbow_redundant_tuple(&fixtures::bridged_k4_pair(), &p), None);
        assert_eq!(find_rainbow_redundant_tuple(&fixtures::k4(), &p), Some(vec![]));
    }

    #[test]
    fn rainbow_search_is_first_in_lexicographic_order() {
        let p = OracleParams::planar(4);
        let g = fixtures::twin_circuits();
        let first = g
            .class(1)
            .into_iter()
            .flat_map(|a| g.class(2).into_iter().map(move |b| vec![a, b]))
            .find(|t| is_redundant_set(&g, t, &p));
        assert_eq!(find_rainbow_redundant_tuple(&g, &p), first);
    }

    #[test]
    fn decisions_on_fixtures() {
        let p = OracleParams::planar(5);
        let v = decide_generic_coordinated_rigidity(&fixtures::rigid_quad(), &p).unwrap();
        assert_eq!(v.decision, Decision::Rigid);
        assert!(v.isostatic);
        assert_eq!(v.ranks.coordinated, Some(6));
        assert_eq!(v.certificate, Some(Certificate::RainbowTuple(vec![Edge::new(0, 1)])));
        let v = decide_generic_coordinated_rigidity(&fixtures::flexible_quad(), &p).unwrap();
        assert_eq!(v.decision, Decision::Flexible);
        assert!(matches!(v.certificate, Some(Certificate::Flex(_))));
        for g in [fixtures::bridged_k4_pair(), fixtures::hub_over_dependent_core()] {
            let v = decide_generic_coordinated_rigidity(&g, &p).unwrap();
            assert_eq!(v.decision, Decision::Flexible);
            assert_eq!(v.witnesses, vec![Witness::Deficiency(1)]);
        }
        let v = decide_generic_coordinated_rigidity(&fixtures::twin_circuits(), &p).unwrap();
        assert!(v.isostatic);
        assert_eq!(v.trial_seeds, vec![5, 6, 7]);
    }

    #[test]
    fn flex_certificate_is_a_nontrivial_motion() {
        let g = fixtures::flexible_quad();
        let p = OracleParams::planar(8);
        let v = decide_generic_coordinated_rigidity(&g, &p).unwrap();
        let Some(Certificate::Flex(flex)) = v.certificate else { panic!("flex expected") };
        let q = fp_configuration(4, 2, &mut rng(v.trial_seeds[0]));
        let r = coordinated_matrix(&g, &q).unwrap();
        assert!(r.matrix().mul_vec(&flex).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn small_vertex_sets() {
        // n < d: a single edge in space is rigid.
        let g = ColouredGraph::uncoloured(2, [(0, 1)]).unwrap();
        let v = decide_generic_coordinated_rigidity(&g, &OracleParams::new(3, 3, 0).unwrap()).unwrap();
        assert!(v.isostatic);
        assert_eq!(v.ranks.trivial, Some(5));
        let lone = ColouredGraph::uncoloured(1, []).unwrap();
        assert!(decide_generic_coordinated_rigidity(&lone, &OracleParams::planar(0)).unwrap().is_rigid());
    }

    #[test]
    fn stress_certificates() {
        let g = fixtures::twin_circuits();
        let p = float_configuration(7, 2, &mut rng(6));
        let tuple = vec![idx(&g, 2, 3), idx(&g, 4, 6)];
        let omegas = stress_certificate(&g, &tuple, &p).unwrap();
        assert_eq!(omegas.len(), 2);
        let r = rigidity_matrix(&g, &p).unwrap();
        for w in &omegas {
            assert!(crate::matrix::norm(&r.matrix().tmul_vec(w)) < 1e-9);
        }
        // Both flexible-pair edges sit in one circuit: no stress isolates them.
        let flexible = vec![idx(&g, 1, 4), idx(&g, 5, 6)];
        assert!(stress_certificate(&g, &flexible, &p).is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn planar_rank_matches_pebble_rank(n in 2usize..=8, density in 0.0f64..1.0, seed in any::<u64>()) {
            let max = n * (n - 1) / 2;
            let m = ((max as f64) * density) as usize;
            let g = random_coloured_graph(n, 0, m, &mut rng(seed)).unwrap();
            prop_assert_eq!(generic_rank(&g, &OracleParams::planar(seed)), laman_rank(&g));
        }

        #[test]
        fn verdicts_respect_counts(n in 3usize..=7, k in 0usize..=3, extra in 0usize..=3, seed in any::<u64>()) {
            let m = (2 * n + k + extra).saturating_sub(4).clamp(k.max(1), n * (n - 1) / 2);
            let g = random_coloured_graph(n, k, m, &mut rng(seed)).unwrap();
            let v = decide_generic_coordinated_rigidity(&g, &OracleParams::planar(seed)).unwrap();
            if v.is_rigid() {
                prop_assert_eq!(v.ranks.coordinated, Some(2 * n + k - 3));
                let Some(Certificate::RainbowTuple(t)) = &v.certificate else {
                    return Err(TestCaseError::fail("rigid verdict without tuple"));
                };
                let tuple: Vec<usize> = t.iter().map(|e| g.index_of(*e).unwrap()).collect();
                for (i, &e) in tuple.iter().enumerate() {
                    prop_assert_eq!(g.colour(e), i + 1);
                }
                let p = float_configuration(n, 2, &mut rng(seed ^ 1));
                prop_assert!(stress_certificate(&g, &tuple, &p).is_some());
            }
            if v.isostatic {
                prop_assert_eq!(g.m(), 2 * n - 3 + k);
            }
        }
    }
}
