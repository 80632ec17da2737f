//! Centrality-constrained stress minimization by block coordinate descent.
//!
//! Each outer iteration visits the nodes in index order. For node i the
//! non-convex part of its block cost, Σ_j δ_ij ‖x_i − x_j‖, is replaced by its
//! linearization at the current position x_i^{r−1}. What remains is an
//! isotropic quadratic,
//!
//! ```text
//! ((N − 1 + λ d_ii) / 2) ‖x_i‖² − x_iᵀ Σ_{j≠i} ((1 + λ a_ij) x_j + δ_ij g_j)
//! ```
//!
//! with g_j a subgradient of ‖x_i − x_j‖ at x_i^{r−1}. Its minimizer over the
//! ball ‖x_i‖ ≤ f_i is the unconstrained minimizer scaled back onto the ball.
//! The surrogate touches the true block cost at x_i^{r−1} and lies above it
//! everywhere, so no block update can increase the penalized objective.
//!
//! Blocks j < i already hold their sweep-r values when block i is visited
//! (Gauss–Seidel). After the last sweep the embedding is centered once.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::centrality::RadiusVector;
use crate::dissimilarity::DissimilarityMatrix;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// N × p coordinates stored row-major; row i is x_iᵀ.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    n: usize,
    dim: usize,
    coords: Vec<f64>,
}

impl Embedding {
    pub fn zeros(n: usize, dim: usize) -> Self {
        Embedding {
            n,
            dim,
            coords: vec![0.0; n * dim],
        }
    }

    pub fn from_row_major(n: usize, dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("embedding dimension must be at least 1"));
        }
        if coords.len() != n * dim {
            return Err(Error::invalid(format!(
                "{} coordinates do not form a {n} × {dim} embedding",
                coords.len()
            )));
        }
        Ok(Embedding { n, dim, coords })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map_or(1, Vec::len);
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid("embedding rows have unequal lengths"));
        }
        Self::from_row_major(rows.len(), dim, rows.concat())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coords
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        norm_diff(self.row(i), self.row(j))
    }

    /// Column means.
    pub fn centroid(&self) -> Vec<f64> {
        let mut mean = vec![0.0; self.dim];
        for row in self.rows() {
            for (m, &x) in mean.iter_mut().zip(row) {
                *m += x;
            }
        }
        let n = self.n.max(1) as f64;
        mean.iter_mut().for_each(|m| *m /= n);
        mean
    }

    /// ‖self − other‖_F.
    pub fn frobenius_distance(&self, other: &Embedding) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|x| x.is_finite())
    }
}

fn norm(x: &[f64]) -> f64 {
    let fast = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if fast.is_finite() {
        return fast;
    }
    // Squares overflowed; rescale by the largest magnitude.
    let big = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !big.is_finite() {
        return big;
    }
    big * x.iter().map(|v| (v / big) * (v / big)).sum::<f64>().sqrt()
}

fn norm_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

// ---------------------------------------------------------------------------
// Configuration and trace
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Embedding dimension p.
    pub dim: usize,
    /// Smoothness weight λ ≥ 0; zero disables the penalty.
    pub lambda: f64,
    /// Stop once ‖X^r − X^{r−1}‖_F ≤ epsilon. `None` picks
    /// 1e−4 · sqrt(N p) · max_i f_i, relative to the coordinate bound.
    pub epsilon: Option<f64>,
    pub max_outer_iters: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            dim: 2,
            lambda: 0.0,
            epsilon: None,
            max_outer_iters: 1000,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::invalid("embedding dimension p must be at least 1"));
        }
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(Error::invalid("lambda must be nonnegative"));
        }
        if let Some(eps) = self.epsilon {
            if !(eps.is_finite() && eps > 0.0) {
                return Err(Error::invalid("epsilon must be positive"));
            }
        }
        if self.max_outer_iters == 0 {
            return Err(Error::invalid("max_outer_iters must be at least 1"));
        }
        Ok(())
    }

    /// The stopping tolerance for `n` nodes under the given radial bounds.
    /// Iterates scale linearly with δ and the radii, so the default does too.
    pub fn effective_epsilon(&self, n: usize, radii: &RadiusVector) -> f64 {
        self.epsilon.unwrap_or_else(|| {
            let bound = radii.values.iter().copied().fold(0.0, f64::max);
            let scale = if bound > 0.0 { bound } else { 1.0 };
            1e-4 * ((n * self.dim) as f64).sqrt() * scale
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    pub stress: f64,
    pub objective: f64,
    pub frob_step: f64,
    /// Wall time since the solve started.
    pub seconds: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// Frobenius step fell to epsilon.
    Converged,
    MaxIterations,
    /// A single node; nothing to optimize.
    Trivial,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverTrace {
    pub initial_stress: f64,
    pub initial_objective: f64,
    pub epsilon: f64,
    pub records: Vec<IterationRecord>,
    pub termination: Termination,
}

impl SolverTrace {
    pub fn iterations(&self) -> usize {
        self.records.len()
    }

    pub fn final_stress(&self) -> f64 {
        self.records
            .last()
            .map_or(self.initial_stress, |r| r.stress)
    }

    pub fn final_objective(&self) -> f64 {
        self.records
            .last()
            .map_or(self.initial_objective, |r| r.objective)
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    /// Centered result.
    pub embedding: Embedding,
    /// Last iterate before centering; satisfies the radial bounds.
    pub uncentered: Embedding,
    pub trace: SolverTrace,
}

// ---------------------------------------------------------------------------
// Objectives
// ---------------------------------------------------------------------------

fn check_dims(x: &Embedding, delta: &DissimilarityMatrix) {
    assert_eq!(
        x.len(),
        delta.len(),
        "embedding and dissimilarity sizes differ"
    );
}

/// Raw stress (1/2) Σ_i Σ_j (‖x_i − x_j‖ − δ_ij)².
pub fn stress(x: &Embedding, delta: &DissimilarityMatrix) -> f64 {
    check_dims(x, delta);
    let n = x.len();
    let mut total = 0.0;
    for i in 0..n {
        let xi = x.row(i);
        let di = delta.row(i);
        let mut row = 0.0;
        for j in (i + 1)..n {
            let r = norm_diff(xi, x.row(j)) - di[j];
            row += r * r;
        }
        total += row;
    }
    total
}

/// h(X) = (1/2) Σ_i Σ_j a_ij ‖x_i − x_j‖², which equals Tr(XᵀLX).
pub fn smoothness(x: &Embedding, g: &Graph) -> f64 {
    g.edges()
        .iter()
        .map(|e| {
            let d = norm_diff(x.row(e.u), x.row(e.v));
            e.weight * d * d
        })
        .sum()
}

/// stress + (λ/2) Σ_i Σ_j a_ij ‖x_i − x_j‖².
pub fn penalized_objective(
    x: &Embedding,
    delta: &DissimilarityMatrix,
    g: &Graph,
    lambda: f64,
) -> f64 {
    let s = stress(x, delta);
    if lambda == 0.0 {
        s
    } else {
        s + lambda * smoothness(x, g)
    }
}

// ---------------------------------------------------------------------------
// Block operations
// ---------------------------------------------------------------------------

/// Subgradient of ‖x_i − x_j‖ with respect to x_i. Zero at coincidence.
pub fn subgradient_norm_diff(xi: &[f64], xj: &[f64]) -> Vec<f64> {
    let d = norm_diff(xi, xj);
    if d > 0.0 {
        xi.iter().zip(xj).map(|(a, b)| (a - b) / d).collect()
    } else {
        vec![0.0; xi.len()]
    }
}

/// Unconstrained minimizer of the block-i surrogate. Rows j ≠ i of `x` are
/// taken as the freshest values of the other blocks; `anchor` is x_i^{r−1},
/// the linearization point.
pub fn block_unconstrained_minimizer(
    i: usize,
    x: &Embedding,
    anchor: &[f64],
    delta: &DissimilarityMatrix,
    g: &Graph,
    lambda: f64,
) -> Result<Vec<f64>> {
    check_dims(x, delta);
    if x.len() < 2 {
        return Err(Error::invalid(
            "block update needs at least two nodes; a single node sits at the origin",
        ));
    }
    let mut out = vec![0.0; x.dim()];
    block_target(i, x, anchor, delta, g, lambda, &mut out);
    Ok(out)
}

fn block_target(
    i: usize,
    x: &Embedding,
    anchor: &[f64],
    delta: &DissimilarityMatrix,
    g: &Graph,
    lambda: f64,
    out: &mut [f64],
) {
    let n = x.len();
    let p = x.dim();
    let di = delta.row(i);
    out.iter_mut().for_each(|o| *o = 0.0);
    for j in (0..n).filter(|&j| j != i) {
        let xj = x.row(j);
        let dist = norm_diff(anchor, xj);
        let scale = if dist > 0.0 { di[j] / dist } else { 0.0 };
        for k in 0..p {
            out[k] += xj[k] + scale * (anchor[k] - xj[k]);
        }
    }
    let mut denom = (n - 1) as f64;
    if lambda != 0.0 {
        for &(j, w) in g.neighbors(i) {
            let xj = x.row(j);
            for k in 0..p {
                out[k] += lambda * w * xj[k];
            }
            denom += lambda * w;
        }
    }
    out.iter_mut().for_each(|o| *o /= denom);
}

/// Euclidean projection onto the ball of the given radius about the origin.
pub fn project_to_ball(x: &[f64], radius: f64) -> Vec<f64> {
    let mut out = x.to_vec();
    project_in_place(&mut out, radius);
    out
}

fn project_in_place(x: &mut [f64], radius: f64) {
    let len = norm(x);
    if len > radius {
        if radius == 0.0 {
            x.iter_mut().for_each(|v| *v = 0.0);
        } else {
            x.iter_mut().for_each(|v| *v = *v * radius / len);
        }
    }
}

/// What an observer sees after each block update.
pub struct BlockUpdate<'a> {
    pub iteration: usize,
    pub node: usize,
    pub before: &'a [f64],
    pub after: &'a [f64],
    /// All coordinates, row `node` already replaced.
    pub coords: &'a Embedding,
}

struct Problem<'a> {
    g: &'a Graph,
    delta: &'a DissimilarityMatrix,
    radii: &'a RadiusVector,
    lambda: f64,
}

impl Problem<'_> {
    fn check(&self, x: &Embedding) -> Result<()> {
        let n = self.g.node_count();
        if self.delta.len() != n || self.radii.len() != n || x.len() != n {
            return Err(Error::invalid(format!(
                "size mismatch: graph {n}, dissimilarity {}, radii {}, embedding {}",
                self.delta.len(),
                self.radii.len(),
                x.len()
            )));
        }
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(Error::invalid("lambda must be nonnegative"));
        }
        Ok(())
    }

    fn sweep_in_place<F>(&self, x: &mut Embedding, iteration: usize, observer: &mut F)
    where
        F: FnMut(&BlockUpdate<'_>),
    {
        let p = x.dim();
        let mut anchor = vec![0.0; p];
        let mut target = vec![0.0; p];
        for i in 0..x.len() {
            anchor.copy_from_slice(x.row(i));
            block_target(i, x, &anchor, self.delta, self.g, self.lambda, &mut target);
            project_in_place(&mut target, self.radii.values[i]);
            x.row_mut(i).copy_from_slice(&target);
            observer(&BlockUpdate {
                iteration,
                node: i,
                before: &anchor,
                after: &target,
                coords: x,
            });
        }
    }
}

/// One Gauss–Seidel pass over all blocks, returning X^r given X^{r−1}.
pub fn bcd_sweep(
    x: &Embedding,
    delta: &DissimilarityMatrix,
    radii: &RadiusVector,
    g: &Graph,
    lambda: f64,
) -> Result<Embedding> {
    let problem = Problem {
        g,
        delta,
        radii,
        lambda,
    };
    problem.check(x)?;
    if x.len() < 2 {
        return Err(Error::invalid("a sweep needs at least two nodes"));
    }
    let mut next = x.clone();
    problem.sweep_in_place(&mut next, 1, &mut |_| {});
    Ok(next)
}

/// (I − 𝟙𝟙ᵀ/N) X.
pub fn center(x: &Embedding) -> Embedding {
    let mean = x.centroid();
    let mut out = x.clone();
    for i in 0..out.len() {
        for (v, m) in out.row_mut(i).iter_mut().zip(&mean) {
            *v -= m;
        }
    }
    out
}

/// Random feasible start: x_i uniform in the ball of radius f_i.
pub fn initialize(radii: &RadiusVector, dim: usize, seed: u64) -> Embedding {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = radii.len();
    let mut x = Embedding::zeros(n, dim);
    let mut dir = vec![0.0; dim];
    for i in 0..n {
        loop {
            dir.iter_mut()
                .for_each(|d| *d = rng.sample::<f64, _>(StandardNormal));
            if norm(&dir) > 1e-12 {
                break;
            }
        }
        let u: f64 = rng.random();
        let r = radii.values[i] * u.powf(1.0 / dim as f64) / norm(&dir);
        for (dst, d) in x.row_mut(i).iter_mut().zip(&dir) {
            *dst = d * r;
        }
    }
    x
}

/// Runs the solver from the seeded random start.
pub fn solve(
    g: &Graph,
    delta: &DissimilarityMatrix,
    radii: &RadiusVector,
    cfg: &SolverConfig,
) -> Result<Solution> {
    cfg.validate()?;
    let init = initialize(radii, cfg.dim, cfg.seed);
    solve_observed(g, delta, radii, cfg, init, |_| {})
}

/// Runs the solver from `init`, calling `observer` after every block update.
pub fn solve_observed<F>(
    g: &Graph,
    delta: &DissimilarityMatrix,
    radii: &RadiusVector,
    cfg: &SolverConfig,
    init: Embedding,
    mut observer: F,
) -> Result<Solution>
where
    F: FnMut(&BlockUpdate<'_>),
{
    cfg.validate()?;
    let problem = Problem {
        g,
        delta,
        radii,
        lambda: cfg.lambda,
    };
    problem.check(&init)?;
    if init.dim() != cfg.dim {
        return Err(Error::invalid(format!(
            "initial embedding has dimension {}, config asks for {}",
            init.dim(),
            cfg.dim
        )));
    }
    if let Some(i) = (0..init.len()).find(|&i| norm(init.row(i)) > radii.values[i] + 1e-9) {
        return Err(Error::invalid(format!(
            "initial position of node {i} lies outside its radius"
        )));
    }

    let n = init.len();
    let epsilon = cfg.effective_epsilon(n, radii);
    let initial_stress = stress(&init, delta);
    let initial_objective = initial_stress + cfg.lambda * smoothness(&init, g);

    if n < 2 {
        let x = Embedding::zeros(n, cfg.dim);
        return Ok(Solution {
            embedding: x.clone(),
            uncentered: x,
            trace: SolverTrace {
                initial_stress,
                initial_objective,
                epsilon,
                records: Vec::new(),
                termination: Termination::Trivial,
            },
        });
    }

    let start = Instant::now();
    let mut x = init;
    let mut prev = x.clone();
    let mut records = Vec::new();
    let mut termination = Termination::MaxIterations;
    for iteration in 1..=cfg.max_outer_iters {
        prev.coords.copy_from_slice(&x.coords);
        problem.sweep_in_place(&mut x, iteration, &mut observer);
        if !x.is_finite() {
            return Err(Error::NonFinite { iteration });
        }
        let frob_step = x.frobenius_distance(&prev);
        let s = stress(&x, delta);
        let objective = if cfg.lambda == 0.0 {
            s
        } else {
            s + cfg.lambda * smoothness(&x, g)
        };
        if !objective.is_finite() {
            return Err(Error::NonFinite { iteration });
        }
        records.push(IterationRecord {
            iteration,
            stress: s,
            objective,
            frob_step,
            seconds: start.elapsed().as_secs_f64(),
        });
        log::debug!("iter {iteration}: stress {s:.6e} step {frob_step:.3e}");
        if frob_step <= epsilon {
            termination = Termination::Converged;
            break;
        }
    }

    Ok(Solution {
        embedding: center(&x),
        uncentered: x,
        trace: SolverTrace {
            initial_stress,
            initial_objective,
            epsilon,
            records,
            termination,
        },
    })
}
