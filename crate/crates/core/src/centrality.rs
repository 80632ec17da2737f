//! Node centralities and their mapping to radial bounds.

use std::collections::{BinaryHeap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{single_source_distances, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CentralityKind {
    Betweenness,
    Closeness,
    Degree,
}

impl fmt::Display for CentralityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CentralityKind::Betweenness => "betweenness",
            CentralityKind::Closeness => "closeness",
            CentralityKind::Degree => "degree",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CentralityVector {
    pub kind: CentralityKind,
    pub values: Vec<f64>,
}

impl CentralityVector {
    pub fn new(kind: CentralityKind, values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|c| !(c.is_finite() && **c >= 0.0)) {
            return Err(Error::invalid(format!(
                "centrality values must be finite and nonnegative, got {bad}"
            )));
        }
        Ok(CentralityVector { kind, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Per-node radial bound ‖x_i‖ ≤ f_i, in embedding units.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiusVector {
    pub values: Vec<f64>,
}

impl RadiusVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|r| !(r.is_finite() && **r >= 0.0)) {
            return Err(Error::invalid(format!(
                "radii must be finite and nonnegative, got {bad}"
            )));
        }
        Ok(RadiusVector { values })
    }

    /// Same bound for every node.
    pub fn uniform(n: usize, radius: f64) -> Result<Self> {
        Self::new(vec![radius; n])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn compute(g: &Graph, kind: CentralityKind) -> Result<CentralityVector> {
    match kind {
        CentralityKind::Betweenness => betweenness(g),
        CentralityKind::Closeness => closeness(g),
        CentralityKind::Degree => Ok(degree_centrality(g)),
    }
}

fn require_connected(g: &Graph, what: &str) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected(format!(
            "{what} centrality needs a connected graph; use the largest connected component"
        )));
    }
    Ok(())
}

/// Shortest-path betweenness, Brandes' dependency accumulation.
///
/// c_i = Σ over unordered pairs {j, k} with i ∉ {j, k} of σ_jk(i) / σ_jk,
/// where σ_jk counts j–k geodesics and σ_jk(i) those passing through i.
pub fn betweenness(g: &Graph) -> Result<CentralityVector> {
    require_connected(g, "betweenness")?;
    let n = g.node_count();
    let uniform = g.uniform_weight().is_some() || g.edge_count() == 0;
    let mut scores = vec![0.0; n];
    let mut dag = ShortestPathDag::new(n);
    let mut delta = vec![0.0; n];
    for s in 0..n {
        if uniform {
            dag.bfs(g, s);
        } else {
            dag.dijkstra(g, s);
        }
        delta.iter_mut().for_each(|d| *d = 0.0);
        for &w in dag.order.iter().rev() {
            let coeff = (1.0 + delta[w]) / dag.sigma[w];
            for &v in &dag.pred[w] {
                delta[v] += dag.sigma[v] * coeff;
            }
            if w != s {
                scores[w] += delta[w];
            }
        }
    }
    // Every unordered pair was visited once from each endpoint.
    for c in &mut scores {
        *c /= 2.0;
    }
    CentralityVector::new(CentralityKind::Betweenness, scores)
}

/// Single-source shortest-path DAG with geodesic counts, reused across sources.
struct ShortestPathDag {
    order: Vec<usize>,
    pred: Vec<Vec<usize>>,
    sigma: Vec<f64>,
    dist: Vec<f64>,
}

impl ShortestPathDag {
    fn new(n: usize) -> Self {
        ShortestPathDag {
            order: Vec::with_capacity(n),
            pred: vec![Vec::new(); n],
            sigma: vec![0.0; n],
            dist: vec![f64::INFINITY; n],
        }
    }

    fn reset(&mut self, s: usize) {
        self.order.clear();
        self.pred.iter_mut().for_each(Vec::clear);
        self.sigma.iter_mut().for_each(|x| *x = 0.0);
        self.dist.iter_mut().for_each(|x| *x = f64::INFINITY);
        self.sigma[s] = 1.0;
        self.dist[s] = 0.0;
    }

    fn bfs(&mut self, g: &Graph, s: usize) {
        self.reset(s);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            self.order.push(v);
            let next = self.dist[v] + 1.0;
            for &(w, _) in g.neighbors(v) {
                if self.dist[w].is_infinite() {
                    self.dist[w] = next;
                    queue.push_back(w);
                }
                if self.dist[w] == next {
                    self.sigma[w] += self.sigma[v];
                    self.pred[w].push(v);
                }
            }
        }
    }

    fn dijkstra(&mut self, g: &Graph, s: usize) {
        #[derive(PartialEq)]
        struct Item(f64, usize);
        impl Eq for Item {}
        impl PartialOrd for Item {
            fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
                Some(self.cmp(o))
            }
        }
        impl Ord for Item {
            fn cmp(&self, o: &Self) -> std::cmp::Ordering {
                o.0.total_cmp(&self.0).then_with(|| o.1.cmp(&self.1))
            }
        }

        self.reset(s);
        let mut settled = vec![false; g.node_count()];
        let mut heap = BinaryHeap::from([Item(0.0, s)]);
        while let Some(Item(d, v)) = heap.pop() {
            if settled[v] || d > self.dist[v] {
                continue;
            }
            settled[v] = true;
            self.order.push(v);
            for &(w, weight) in g.neighbors(v) {
                let candidate = d + weight;
                if candidate < self.dist[w] {
                    self.dist[w] = candidate;
                    self.sigma[w] = self.sigma[v];
                    self.pred[w].clear();
                    self.pred[w].push(v);
                    heap.push(Item(candidate, w));
                } else if candidate == self.dist[w] && !settled[w] {
                    self.sigma[w] += self.sigma[v];
                    self.pred[w].push(v);
                }
            }
        }
    }
}

/// c_i = 1 / Σ_j d_ij.
pub fn closeness(g: &Graph) -> Result<CentralityVector> {
    require_connected(g, "closeness")?;
    if g.node_count() < 2 {
        return Err(Error::invalid(
            "closeness centrality needs at least two nodes",
        ));
    }
    let values = (0..g.node_count())
        .map(|i| 1.0 / single_source_distances(g, i).iter().sum::<f64>())
        .collect();
    CentralityVector::new(CentralityKind::Closeness, values)
}

/// Weighted degree d_ii.
pub fn degree_centrality(g: &Graph) -> CentralityVector {
    CentralityVector {
        kind: CentralityKind::Degree,
        values: (0..g.node_count()).map(|i| g.degree(i)).collect(),
    }
}

/// Affine decreasing map from centrality to radius:
/// f_i = (diam / 2) · (1 − (c_i − min c) / (max c − min c)).
///
/// The most central node lands at radius 0, the least central at diam / 2.
pub fn radius_transform(c: &CentralityVector, diam: f64) -> Result<RadiusVector> {
    if !(diam.is_finite() && diam > 0.0) {
        return Err(Error::invalid(format!(
            "diameter must be positive and finite, got {diam}"
        )));
    }
    if c.is_empty() {
        return Err(Error::invalid("empty centrality vector"));
    }
    let (lo, hi) = (c.min(), c.max());
    if hi <= lo {
        return Err(Error::invalid(
            "centrality is constant across nodes, so it cannot order radii; \
             pass an explicit uniform radius instead",
        ));
    }
    let half = diam / 2.0;
    let span = hi - lo;
    RadiusVector::new(
        c.values
            .iter()
            .map(|&ci| half * (1.0 - (ci - lo) / span))
            .collect(),
    )
}
