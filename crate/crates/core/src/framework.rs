//! Rigidity matrices, infinitesimal motions, equilibrium stresses and loads.
//!
//! For a coloured graph on `n` vertices placed at `p` in dimension `d`, the
//! row of edge `{i, j}` in `R(p)` holds `p(i) - p(j)` in the columns of `i`
//! and `p(j) - p(i)` in the columns of `j`. The coordinated matrix
//! `R⁺(p) = (R(p), 𝟙(c))` appends one indicator column per colour class.
//! Its kernel consists of the pairs `(p', r')` with `R(p) p' + 𝟙(c) r' = 0`;
//! the offsets `r` of a placement never enter it.
//!
//! Generic code runs over any [`Backend`]: exact [`Fp`](crate::Fp) for
//! generic-rank questions, `f64` for user coordinates. Loads, projections
//! and equivalence residuals are `f64` only.

use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::{ColouredGraph, Edge};
use crate::matrix::{dot, norm, Backend, Matrix, Scalar};
use crate::svd::Svd;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("{len} coordinates do not split into points of dimension {d}")]
    RaggedCoordinates { len: usize, d: usize },
    #[error("configuration has {found} points, graph has {expected} vertices")]
    PointCount { expected: usize, found: usize },
    #[error("configurations have dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("offset vector has length {found}, expected k = {expected}")]
    OffsetLength { expected: usize, found: usize },
    #[error("load vector has length {found}, expected {expected}")]
    LoadLength { expected: usize, found: usize },
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("edges with coincident endpoints: {0:?}")]
    CoincidentEndpoints(Vec<Edge>),
    #[error("colour class {class} outside 1..={k}")]
    ClassOutOfRange { class: usize, k: usize },
    #[error("not an equilibrium load: net force {force:e}, net torque {torque:e}")]
    NotEquilibrium { force: f64, torque: f64 },
}

/// Points `p(0), ..., p(n-1)` in dimension `d`, stored flat.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration<T> {
    d: usize,
    coords: Vec<T>,
}

impl<T: Scalar> Configuration<T> {
    pub fn new(d: usize, coords: Vec<T>) -> Result<Self, LinalgError> {
        if d == 0 {
            return Err(LinalgError::ZeroDimension);
        }
        if !coords.len().is_multiple_of(d) {
            return Err(LinalgError::RaggedCoordinates { len: coords.len(), d });
        }
        Ok(Configuration { d, coords })
    }

    pub fn from_points(d: usize, points: &[Vec<T>]) -> Result<Self, LinalgError> {
        let mut coords = Vec::with_capacity(points.len() * d);
        for p in points {
            if p.len() != d {
                return Err(LinalgError::DimensionMismatch(d, p.len()));
            }
            coords.extend_from_slice(p);
        }
        Self::new(d, coords)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.coords.len() / self.d
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    fn check_against(&self, g: &ColouredGraph) -> Result<(), LinalgError> {
        if self.n() != g.n() {
            return Err(LinalgError::PointCount { expected: g.n(), found: self.n() });
        }
        Ok(())
    }

    /// `p(j) - p(i)` for the edge `{i, j}`.
    fn difference(&self, e: Edge) -> Vec<T> {
        self.point(e.v).iter().zip(self.point(e.u)).map(|(&a, &b)| a - b).collect()
    }
}

impl Configuration<f64> {
    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|x| x.is_finite())
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let diff: Vec<f64> = self.point(i).iter().zip(self.point(j)).map(|(a, b)| a - b).collect();
        norm(&diff)
    }
}

/// A configuration together with class offsets `r ∈ ℝ^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Placement {
    pub config: Configuration<f64>,
    pub r: Vec<f64>,
}

impl Placement {
    pub fn new(config: Configuration<f64>, r: Vec<f64>) -> Self {
        Placement { config, r }
    }

    /// `R⁺(p)`; the offsets do not enter.
    pub fn coordinated_matrix(&self, g: &ColouredGraph) -> Result<CoordinatedMatrix<f64>, LinalgError> {
        coordinated_matrix(g, &self.config)
    }
}

/// `R⁺(p)` with its shape data. Rows follow the canonical edge order; the
/// first `dn` columns are kinematic (vertex-major), the last `k` are the
/// class indicators.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinatedMatrix<T> {
    matrix: Matrix<T>,
    d: usize,
    n: usize,
    k: usize,
    degenerate_edges: Vec<usize>,
}

impl<T: Scalar> CoordinatedMatrix<T> {
    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    /// `R(p)`, the kinematic block.
    pub fn kinematic(&self) -> Matrix<T> {
        self.matrix.leading_columns(self.d * self.n)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of indicator columns.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Edges whose endpoints coincide (all-zero kinematic rows).
    pub fn degenerate_edges(&self) -> &[usize] {
        &self.degenerate_edges
    }
}

impl<T: Backend> CoordinatedMatrix<T> {
    pub fn rank(&self) -> usize {
        T::rank(&self.matrix)
    }
}

fn build<T: Scalar>(
    g: &ColouredGraph,
    p: &Configuration<T>,
    indicators: bool,
) -> Result<CoordinatedMatrix<T>, LinalgError> {
    p.check_against(g)?;
    let (d, n) = (p.d(), g.n());
    let k = if indicators { g.k() } else { 0 };
    let mut matrix = Matrix::zeros(g.m(), d * n + k);
    let mut degenerate_edges = Vec::new();
    for (row, &e) in g.edges().iter().enumerate() {
        let diff = p.difference(e);
        if diff.iter().all(|&x| x == T::ZERO) {
            degenerate_edges.push(row);
        }
        for (a, &x) in diff.iter().enumerate() {
            matrix[(row, e.u * d + a)] = -x;
            matrix[(row, e.v * d + a)] = x;
        }
        let c = g.colour(row);
        if indicators && c > 0 {
            matrix[(row, d * n + c - 1)] = T::ONE;
        }
    }
    Ok(CoordinatedMatrix { matrix, d, n, k, degenerate_edges })
}

/// `R(p)`, the `m x dn` rigidity matrix of the underlying bar framework.
pub fn rigidity_matrix<T: Scalar>(
    g: &ColouredGraph,
    p: &Configuration<T>,
) -> Result<CoordinatedMatrix<T>, LinalgError> {
    build(g, p, false)
}

/// `R⁺(p) = (R(p), 𝟙(c))`, `m x (dn + k)`.
pub fn coordinated_matrix<T: Scalar>(
    g: &ColouredGraph,
    p: &Configuration<T>,
) -> Result<CoordinatedMatrix<T>, LinalgError> {
    build(g, p, true)
}

/// Velocity fields of the `d` translations and `binom(d, 2)` rotations at
/// `p`, padded with `extra` zero columns (`r' = 0`). One generator per row.
pub fn trivial_generators<T: Scalar>(p: &Configuration<T>, extra: usize) -> Matrix<T> {
    let (d, n) = (p.d(), p.n());
    let mut rows = Vec::new();
    for a in 0..d {
        let mut row = alloc::vec![T::ZERO; d * n + extra];
        for i in 0..n {
            row[i * d + a] = T::ONE;
        }
        rows.push(row);
    }
    for a in 0..d {
        for b in a + 1..d {
            let mut row = alloc::vec![T::ZERO; d * n + extra];
            for i in 0..n {
                let x = p.point(i);
                row[i * d + a] = -x[b];
                row[i * d + b] = x[a];
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(0, d * n + extra);
    }
    Matrix::from_rows(&rows)
}

/// Dimension of the trivial motions at `p`, computed rather than assumed.
pub fn trivial_dimension<T: Backend>(p: &Configuration<T>) -> usize {
    T::rank(&trivial_generators(p, 0))
}

/// Kernel of `R⁺(p)` split into trivial and non-trivial parts.
#[derive(Clone, Debug, PartialEq)]
pub struct MotionSpace<T> {
    /// Basis of `M⁺(p)`; each vector is `(p', r')` of length `dn + k`.
    pub basis: Vec<Vec<T>>,
    pub trivial_dim: usize,
    pub nontrivial_dim: usize,
    /// A kernel vector outside the trivial span, when one exists.
    pub flex: Option<Vec<T>>,
}

impl<T> MotionSpace<T> {
    pub fn nullity(&self) -> usize {
        self.basis.len()
    }

    pub fn is_infinitesimally_rigid(&self) -> bool {
        self.nontrivial_dim == 0
    }
}

/// `M⁺(p)` with the trivial motions counted at `p`. Fails on edges with
/// coincident endpoints.
pub fn infinitesimal_motions<T: Backend>(
    g: &ColouredGraph,
    p: &Configuration<T>,
) -> Result<MotionSpace<T>, LinalgError> {
    infinitesimal_motions_with(g, p, None)
}

/// [`infinitesimal_motions`] with an explicit singular-value cutoff.
pub fn infinitesimal_motions_with<T: Backend>(
    g: &ColouredGraph,
    p: &Configuration<T>,
    tol: Option<f64>,
) -> Result<MotionSpace<T>, LinalgError> {
    let rp = coordinated_matrix(g, p)?;
    if !rp.degenerate_edges.is_empty() {
        let edges = rp.degenerate_edges.iter().map(|&i| g.edge(i)).collect();
        return Err(LinalgError::CoincidentEndpoints(edges));
    }
    let basis = T::kernel_with(rp.matrix(), tol);
    let trivial = trivial_generators(p, g.k());
    let trivial_dim = T::rank_with(&trivial, tol);
    let nontrivial_dim = basis.len().saturating_sub(trivial_dim);
    let flex = (nontrivial_dim > 0)
        .then(|| {
            basis
                .iter()
                .find(|v| T::rank_with(&trivial.stack(&Matrix::from_rows(&[(*v).clone()])), tol) > trivial_dim)
                .cloned()
        })
        .flatten();
    Ok(MotionSpace { basis, trivial_dim, nontrivial_dim, flex })
}

/// Basis of the equilibrium stresses `S(p)`: the left kernel of `R(p)`.
pub fn equilibrium_stresses<T: Backend>(
    g: &ColouredGraph,
    p: &Configuration<T>,
) -> Result<Vec<Vec<T>>, LinalgError> {
    equilibrium_stresses_with(g, p, None)
}

/// [`equilibrium_stresses`] with an explicit singular-value cutoff.
pub fn equilibrium_stresses_with<T: Backend>(
    g: &ColouredGraph,
    p: &Configuration<T>,
    tol: Option<f64>,
) -> Result<Vec<Vec<T>>, LinalgError> {
    let r = rigidity_matrix(g, p)?;
    Ok(T::kernel_with(&r.matrix().transpose(), tol))
}

/// The edge load `f_e`: `p(i) - p(j)` at `i`, `p(j) - p(i)` at `j`. It is
/// resolved by the unit stress on `e`.
pub fn edge_load<T: Scalar>(p: &Configuration<T>, e: Edge) -> Vec<T> {
    let d = p.d();
    let mut f = alloc::vec![T::ZERO; d * p.n()];
    for (a, x) in p.difference(e).into_iter().enumerate() {
        f[e.u * d + a] = -x;
        f[e.v * d + a] = x;
    }
    f
}

/// `f_i = Σ_{e ∈ E_i} f_e`.
pub fn colour_class_load<T: Scalar>(
    g: &ColouredGraph,
    p: &Configuration<T>,
    class: usize,
) -> Result<Vec<T>, LinalgError> {
    p.check_against(g)?;
    if class == 0 || class > g.k() {
        return Err(LinalgError::ClassOutOfRange { class, k: g.k() });
    }
    let mut total = alloc::vec![T::ZERO; p.d() * p.n()];
    for e in g.class(class) {
        for (t, x) in total.iter_mut().zip(edge_load(p, g.edge(e))) {
            *t = *t + x;
        }
    }
    Ok(total)
}

/// Net force and net torque magnitudes of a load (max-norm over components).
pub fn load_imbalance(p: &Configuration<f64>, f: &[f64]) -> (f64, f64) {
    let d = p.d();
    let mut force: f64 = 0.0;
    for a in 0..d {
        let s: f64 = (0..p.n()).map(|i| f[i * d + a]).sum();
        force = force.max(s.abs());
    }
    let mut torque: f64 = 0.0;
    for a in 0..d {
        for b in a + 1..d {
            let s: f64 = (0..p.n())
                .map(|i| f[i * d + a] * p.point(i)[b] - f[i * d + b] * p.point(i)[a])
                .sum();
            torque = torque.max(s.abs());
        }
    }
    (force, torque)
}

/// Relative tolerance for load balance and resolution residuals.
pub const LOAD_TOLERANCE: f64 = 1e-9;

fn load_scale(p: &Configuration<f64>, f: &[f64]) -> f64 {
    let fmax = f.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let pmax = p.coords().iter().fold(1.0f64, |m, x| m.max(x.abs()));
    fmax.max(1.0) * pmax * p.n().max(1) as f64
}

#[derive(Clone, Debug, PartialEq)]
pub enum Resolution {
    /// Minimum-norm stress `ρ` with `Σ_j ρ(ij) (p(j) - p(i)) = -f(i)`.
    Resolved(Vec<f64>),
    /// `f` is outside the span of the edge loads.
    Unresolvable { residual: f64 },
}

/// Resolves an equilibrium load by a stress, choosing the minimum-norm
/// resolution. Every other resolution differs from it by an equilibrium
/// stress.
pub fn resolve_load(
    g: &ColouredGraph,
    p: &Configuration<f64>,
    f: &[f64],
) -> Result<Resolution, LinalgError> {
    p.check_against(g)?;
    let dn = p.d() * p.n();
    if f.len() != dn {
        return Err(LinalgError::LoadLength { expected: dn, found: f.len() });
    }
    if !p.is_finite() || f.iter().any(|x| !x.is_finite()) {
        return Err(LinalgError::NonFinite);
    }
    let scale = load_scale(p, f);
    let (force, torque) = load_imbalance(p, f);
    if force > LOAD_TOLERANCE * scale || torque > LOAD_TOLERANCE * scale {
        return Err(LinalgError::NotEquilibrium { force, torque });
    }
    let rt = rigidity_matrix(g, p)?.matrix().transpose();
    let rho = Svd::new(&rt).solve(f, None);
    let back = rt.mul_vec(&rho);
    let residual = back.iter().zip(f).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(if residual <= LOAD_TOLERANCE * scale {
        Resolution::Resolved(rho)
    } else {
        Resolution::Unresolvable { residual }
    })
}

/// Gram matrix of the projections of the class indicator columns onto
/// `S(p)`, with its numerical rank.
#[derive(Clone, Debug, PartialEq)]
pub struct GramReport {
    pub matrix: Matrix<f64>,
    pub rank: usize,
    pub nonsingular: bool,
}

/// Singular-value cutoff for the projected indicator columns. The columns
/// are 0/1 vectors and the stress basis is orthonormal, so the projections
/// have singular values in `[0, sqrt(m)]`.
pub const GRAM_TOLERANCE: f64 = 1e-8;

/// The coordinated framework is infinitesimally rigid iff the returned
/// Gram matrix is nonsingular (and the bar framework is rigid).
pub fn coordination_gram(g: &ColouredGraph, p: &Configuration<f64>) -> Result<GramReport, LinalgError> {
    let stresses = equilibrium_stresses(g, p)?;
    let k = g.k();
    // W^T C: coordinates of each projected indicator in the stress basis.
    let mut projected = Matrix::zeros(stresses.len(), k);
    for (s, w) in stresses.iter().enumerate() {
        for (e, &c) in g.colours().iter().enumerate() {
            if c > 0 {
                projected[(s, c - 1)] += w[e];
            }
        }
    }
    let mut gram = Matrix::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            gram[(a, b)] = dot(&projected.column(a), &projected.column(b));
        }
    }
    let rank = Svd::new(&projected).rank(Some(GRAM_TOLERANCE));
    Ok(GramReport { matrix: gram, rank, nonsingular: rank == k })
}

/// Per-edge residuals `(|p(j) - p(i)| + r(c)) - (|q(j) - q(i)| + s(c))`,
/// with `r(0) = s(0) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub residuals: Vec<f64>,
}

pub fn check_equivalent(
    g: &ColouredGraph,
    a: &Placement,
    b: &Placement,
    tol: f64,
) -> Result<EquivalenceReport, LinalgError> {
    a.config.check_against(g)?;
    b.config.check_against(g)?;
    if a.config.d() != b.config.d() {
        return Err(LinalgError::DimensionMismatch(a.config.d(), b.config.d()));
    }
    for pl in [a, b] {
        if pl.r.len() != g.k() {
            return Err(LinalgError::OffsetLength { expected: g.k(), found: pl.r.len() });
        }
    }
    let offset = |pl: &Placement, c: usize| if c == 0 { 0.0 } else { pl.r[c - 1] };
    let residuals: Vec<f64> = g
        .edges()
        .iter()
        .zip(g.colours())
        .map(|(e, &c)| {
            (a.config.distance(e.u, e.v) + offset(a, c)) - (b.config.distance(e.u, e.v) + offset(b, c))
        })
        .collect();
    let equivalent = residuals.iter().all(|x| x.abs() <= tol);
    Ok(EquivalenceReport { equivalent, residuals })
}
