#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};
use std::path::PathBuf;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use radmds::graph::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

/// Random spanning tree plus independent extra edges. Node order is shuffled
/// so low indices are not systematically central.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, extra: f64, weighted: bool) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    let mut push = |u: usize, v: usize, rng: &mut ChaCha8Rng| {
        let key = (u.min(v), u.max(v));
        if u != v && seen.insert(key) {
            let w = if weighted {
                rng.random_range(0.5..3.0)
            } else {
                1.0
            };
            edges.push((perm[u], perm[v], w));
        }
    };
    for i in 1..n {
        let j = rng.random_range(0..i);
        push(i, j, rng);
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < extra {
                push(u, v, rng);
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Betweenness by listing every geodesic explicitly, in exact arithmetic.
/// Unit-weight graphs only.
pub fn brute_force_betweenness(g: &Graph) -> Vec<Ratio<i64>> {
    let n = g.node_count();
    let dist: Vec<Vec<usize>> = (0..n).map(|s| bfs(g, s)).collect();
    let mut score = vec![Ratio::from_integer(0); n];
    for j in 0..n {
        for k in (j + 1)..n {
            let mut paths = Vec::new();
            let mut stack = vec![j];
            walk(g, &dist, k, &mut stack, &mut paths);
            let total = paths.len() as i64;
            let mut through = vec![0i64; n];
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    through[v] += 1;
                }
            }
            for v in 0..n {
                if through[v] > 0 {
                    score[v] += Ratio::new(through[v], total);
                }
            }
        }
    }
    score
}

fn bfs(g: &Graph, s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; g.node_count()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for &(w, _) in g.neighbors(v) {
            if d[w] == usize::MAX {
                d[w] = d[v] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

/// Extend `stack` along edges that move one hop closer to `target`.
fn walk(
    g: &Graph,
    dist: &[Vec<usize>],
    target: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let v = *stack.last().unwrap();
    if v == target {
        out.push(stack.clone());
        return;
    }
    for &(w, _) in g.neighbors(v) {
        if dist[target][w] + 1 == dist[target][v] {
            stack.push(w);
            walk(g, dist, target, stack, out);
            stack.pop();
        }
    }
}

/// Effective resistance between `a` and `b`: ground `b`, inject unit current
/// at `a`, solve the reduced Laplacian system by Gaussian elimination with
/// partial pivoting, read the potential at `a`.
pub fn effective_resistance(g: &Graph, a: usize, b: usize) -> f64 {
    if a == b {
        return 0.0;
    }
    let n = g.node_count();
    let keep: Vec<usize> = (0..n).filter(|&v| v != b).collect();
    let pos = |v: usize| keep.iter().position(|&k| k == v).unwrap();
    let m = keep.len();
    let mut mat = vec![vec![0.0; m + 1]; m];
    for e in g.edges() {
        for (x, y) in [(e.u, e.v), (e.v, e.u)] {
            if x != b {
                let r = pos(x);
                mat[r][r] += e.weight;
                if y != b {
                    mat[r][pos(y)] -= e.weight;
                }
            }
        }
    }
    mat[pos(a)][m] = 1.0;
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&i, &j| mat[i][col].abs().total_cmp(&mat[j][col].abs()))
            .unwrap();
        mat.swap(col, piv);
        for row in (col + 1)..m {
            let f = mat[row][col] / mat[col][col];
            if f != 0.0 {
                for k in col..=m {
                    mat[row][k] -= f * mat[col][k];
                }
            }
        }
    }
    let mut x = vec![0.0; m];
    for row in (0..m).rev() {
        let s: f64 = ((row + 1)..m).map(|k| mat[row][k] * x[k]).sum();
        x[row] = (mat[row][m] - s) / mat[row][row];
    }
    x[pos(a)]
}

/// Change in the penalized objective when row `i` moves from `before` to
/// `after`, everything else fixed. Written in factored form so that small
/// moves give small, accurately computed differences.
pub fn block_objective_change(
    coords: &radmds::Embedding,
    i: usize,
    before: &[f64],
    after: &[f64],
    delta: &radmds::DissimilarityMatrix,
    g: &Graph,
    lambda: f64,
) -> f64 {
    let dist = |a: &[f64], b: &[f64]| -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    };
    let mut change = 0.0;
    for j in (0..coords.len()).filter(|&j| j != i) {
        let xj = coords.row(j);
        let (da, db) = (dist(after, xj), dist(before, xj));
        // Both ordered pairs (i, j) and (j, i) carry the term, times 1/2.
        change += (da - db) * (da + db - 2.0 * delta.get(i, j));
    }
    if lambda != 0.0 {
        for &(j, w) in g.neighbors(i) {
            let xj = coords.row(j);
            let dot: f64 = after
                .iter()
                .zip(before)
                .zip(xj)
                .map(|((a, b), x)| (a - b) * (a + b - 2.0 * x))
                .sum();
            change += lambda * w * dot;
        }
    }
    change
}
