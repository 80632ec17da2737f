//! Undirected weighted graphs, edge-list ingestion and geodesic distances.
//!
//! Nodes are always dense indices `0..N`. Whatever identifiers the input file
//! used are kept as labels so outputs can be mapped back.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};
use std::io::BufRead;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// Immutable undirected graph without self-loops or parallel edges.
#[derive(Clone, Debug)]
pub struct Graph {
    adjacency: Vec<Vec<(usize, f64)>>,
    edges: Vec<Edge>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph on `node_count` nodes. Rejects self-loops, duplicate
    /// edges (in either orientation), out-of-range endpoints and weights that
    /// are not strictly positive and finite.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if node_count == 0 {
            return Err(Error::invalid("graph must have at least one node"));
        }
        let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); node_count];
        let mut list = Vec::new();
        for (u, v, w) in edges {
            if u >= node_count || v >= node_count {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) references a node outside 0..{node_count}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop on node {u}")));
            }
            check_weight(w)?;
            if adjacency[u].iter().any(|&(x, _)| x == v) {
                return Err(Error::invalid(format!("duplicate edge ({u}, {v})")));
            }
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
            list.push(Edge {
                u: u.min(v),
                v: u.max(v),
                weight: w,
            });
        }
        for nbrs in &mut adjacency {
            nbrs.sort_by_key(|&(j, _)| j);
        }
        Ok(Graph {
            adjacency,
            edges: list,
            labels: None,
        })
    }

    /// Unit-weight convenience constructor.
    pub fn unweighted<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges(node_count, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.node_count() {
            return Err(Error::invalid(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.node_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order, each stored with `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `i` with edge weights, sorted by neighbor index.
    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adjacency[i]
    }

    /// Weighted degree d_ii = Σ_j a_ij.
    pub fn degree(&self, i: usize) -> f64 {
        self.adjacency[i].iter().map(|&(_, w)| w).sum()
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        self.adjacency[i]
            .binary_search_by_key(&j, |&(k, _)| k)
            .ok()
            .map(|pos| self.adjacency[i][pos].1)
    }

    /// Sum of weighted degrees, Σ_i d_ii. Also known as the graph volume.
    pub fn volume(&self) -> f64 {
        (0..self.node_count()).map(|i| self.degree(i)).sum()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Original identifier of node `i`, or its index when unlabeled.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => i.to_string(),
        }
    }

    /// The common weight if every edge carries the same one.
    pub fn uniform_weight(&self) -> Option<f64> {
        let first = self.edges.first()?.weight;
        self.edges
            .iter()
            .all(|e| e.weight == first)
            .then_some(first)
    }

    /// Component id per node; ids are assigned in order of each component's
    /// smallest node index.
    pub fn component_ids(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &self.adjacency[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.component_ids().iter().all(|&c| c == 0)
    }

    /// Subgraph induced by `nodes` (which must be strictly increasing),
    /// re-indexed in that order. Labels are carried over.
    fn induced(&self, nodes: &[usize]) -> Graph {
        let mut old_to_new = vec![usize::MAX; self.node_count()];
        for (new, &old) in nodes.iter().enumerate() {
            old_to_new[old] = new;
        }
        let edges = self.edges.iter().filter_map(|e| {
            let (a, b) = (old_to_new[e.u], old_to_new[e.v]);
            (a != usize::MAX && b != usize::MAX).then_some((a, b, e.weight))
        });
        let mut g = Graph::from_edges(nodes.len(), edges)
            .expect("induced subgraph of a valid graph is valid");
        g.labels = self
            .labels
            .as_ref()
            .map(|labels| nodes.iter().map(|&i| labels[i].clone()).collect());
        g
    }
}

fn check_weight(w: f64) -> Result<()> {
    if !(w.is_finite() && w > 0.0) {
        return Err(Error::invalid(format!(
            "edge weight must be positive and finite, got {w}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Edge-list ingestion
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeListFormat {
    /// Whitespace separated `u v [w]`, `#` comments (SNAP style).
    SnapTsv,
    /// Comma separated `u,v[,w]`. A first line with no numeric field is a header.
    Csv,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
    pub header_skipped: bool,
}

#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub report: LoadReport,
}

/// Parses an edge list. Node identifiers are arbitrary tokens, re-indexed
/// densely in order of first appearance. Duplicate edges keep the first
/// weight; self-loops are dropped. Both are counted in the report.
pub fn load_edge_list<R: BufRead>(reader: R, format: EdgeListFormat) -> Result<LoadedGraph> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut report = LoadReport::default();
    let mut first_data_line = true;

    let mut intern = |tok: &str, labels: &mut Vec<String>| -> usize {
        match ids.entry(tok.to_string()) {
            Entry::Occupied(e) => *e.get(),
            Entry::Vacant(e) => {
                labels.push(tok.to_string());
                *e.insert(labels.len() - 1)
            }
        }
    };

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| match e.kind() {
            std::io::ErrorKind::InvalidData => Error::Parse {
                line: lineno,
                message: "input is not valid UTF-8".into(),
            },
            _ => Error::Io(e),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = match format {
            EdgeListFormat::SnapTsv => trimmed.split_whitespace().collect(),
            EdgeListFormat::Csv => trimmed.split(',').map(str::trim).collect(),
        };
        if format == EdgeListFormat::Csv && first_data_line {
            first_data_line = false;
            if fields.iter().all(|f| f.parse::<f64>().is_err()) {
                report.header_skipped = true;
                continue;
            }
        }
        first_data_line = false;
        if !(2..=3).contains(&fields.len()) {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected 2 or 3 fields, found {}", fields.len()),
            });
        }
        if fields[..2].iter().any(|f| f.is_empty()) {
            return Err(Error::Parse {
                line: lineno,
                message: "empty node identifier".into(),
            });
        }
        let weight = match fields.get(2) {
            Some(raw) => raw.parse::<f64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("weight {raw:?} is not a number"),
            })?,
            None => 1.0,
        };
        check_weight(weight).map_err(|_| {
            Error::invalid(format!(
                "line {lineno}: edge weight must be positive and finite, got {weight}"
            ))
        })?;
        let u = intern(fields[0], &mut labels);
        let v = intern(fields[1], &mut labels);
        if u == v {
            report.self_loops_dropped += 1;
            continue;
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            report.duplicates_collapsed += 1;
            continue;
        }
        edges.push((u, v, weight));
    }

    if labels.is_empty() {
        return Err(Error::invalid("edge list contains no edges"));
    }
    if report.self_loops_dropped > 0 {
        log::warn!("dropped {} self-loop(s)", report.self_loops_dropped);
    }
    if report.duplicates_collapsed > 0 {
        log::warn!(
            "collapsed {} duplicate edge(s), keeping the first weight",
            report.duplicates_collapsed
        );
    }
    let graph = Graph::from_edges(labels.len(), edges)?.with_labels(labels)?;
    Ok(LoadedGraph { graph, report })
}

// ---------------------------------------------------------------------------
// Components
// ---------------------------------------------------------------------------

/// Correspondence between a subgraph's dense indices and its parent graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentMap {
    pub new_to_old: Vec<usize>,
    pub old_to_new: Vec<Option<usize>>,
}

/// Induced subgraph on the largest connected component. Ties go to the
/// component containing the smallest node index. Node order is preserved.
pub fn largest_connected_component(g: &Graph) -> (Graph, ComponentMap) {
    let comp = g.component_ids();
    let count = comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0usize; count];
    for &c in &comp {
        sizes[c] += 1;
    }
    // Component ids are ordered by smallest member, so the first maximum wins ties.
    let mut best = 0;
    for (c, &s) in sizes.iter().enumerate() {
        if s > sizes[best] {
            best = c;
        }
    }
    let nodes: Vec<usize> = (0..g.node_count()).filter(|&i| comp[i] == best).collect();
    let mut old_to_new = vec![None; g.node_count()];
    for (new, &old) in nodes.iter().enumerate() {
        old_to_new[old] = Some(new);
    }
    (
        g.induced(&nodes),
        ComponentMap {
            new_to_old: nodes,
            old_to_new,
        },
    )
}

// ---------------------------------------------------------------------------
// Shortest paths
// ---------------------------------------------------------------------------

/// Dense all-pairs geodesic distances. Disconnected pairs hold `f64::INFINITY`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    values: Vec<f64>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    pub fn all_finite(&self) -> bool {
        self.values.iter().all(|d| d.is_finite())
    }

    pub(crate) fn into_values(self) -> Vec<f64> {
        self.values
    }
}

#[derive(Clone, Copy, PartialEq)]
struct HeapEntry {
    dist: f64,
    node: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on distance, then node index for determinism.
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Geodesic distances from `source`. Uses BFS when all weights are equal.
pub fn single_source_distances(g: &Graph, source: usize) -> Vec<f64> {
    match g.uniform_weight() {
        Some(w) => bfs_hops(g, source)
            .into_iter()
            .map(|h| h.map_or(f64::INFINITY, |h| h as f64 * w))
            .collect(),
        None if g.edge_count() == 0 => {
            let mut d = vec![f64::INFINITY; g.node_count()];
            d[source] = 0.0;
            d
        }
        None => dijkstra(g, source),
    }
}

fn bfs_hops(g: &Graph, source: usize) -> Vec<Option<usize>> {
    let mut hops = vec![None; g.node_count()];
    hops[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let next = hops[v].unwrap() + 1;
        for &(w, _) in g.neighbors(v) {
            if hops[w].is_none() {
                hops[w] = Some(next);
                queue.push_back(w);
            }
        }
    }
    hops
}

fn dijkstra(g: &Graph, source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; g.node_count()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(HeapEntry {
        dist: 0.0,
        node: source,
    });
    while let Some(HeapEntry { dist: d, node: v }) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &(w, weight) in g.neighbors(v) {
            let candidate = d + weight;
            if candidate < dist[w] {
                dist[w] = candidate;
                heap.push(HeapEntry {
                    dist: candidate,
                    node: w,
                });
            }
        }
    }
    dist
}

/// All-pairs shortest paths, one BFS/Dijkstra per source in index order.
pub fn shortest_paths(g: &Graph) -> DistanceMatrix {
    let n = g.node_count();
    let mut values = Vec::with_capacity(n * n);
    for s in 0..n {
        values.extend(single_source_distances(g, s));
    }
    // Dijkstra sums can differ in the last bit depending on direction.
    for i in 0..n {
        for j in (i + 1)..n {
            let d = values[i * n + j].min(values[j * n + i]);
            values[i * n + j] = d;
            values[j * n + i] = d;
        }
    }
    DistanceMatrix { n, values }
}

/// Largest geodesic distance. Fails on disconnected graphs.
pub fn diameter(g: &Graph) -> Result<f64> {
    let d = shortest_paths(g);
    if !d.all_finite() {
        return Err(Error::Disconnected(
            "diameter is undefined; extract the largest connected component first".into(),
        ));
    }
    Ok(d.values.iter().copied().fold(0.0, f64::max))
}

/// Combinatorial Laplacian L = D − A as a dense matrix.
pub fn laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut l = DMatrix::zeros(n, n);
    for e in g.edges() {
        l[(e.u, e.v)] -= e.weight;
        l[(e.v, e.u)] -= e.weight;
        l[(e.u, e.u)] += e.weight;
        l[(e.v, e.v)] += e.weight;
    }
    l
}
