//! Target dissimilarities δ_ij: geodesic distances or commute-time distances.
//!
//! The commute-time distance is δ_ij = sqrt(V_G · (l⁺_ii + l⁺_jj − 2 l⁺_ij)),
//! with L⁺ the Moore–Penrose pseudoinverse of the Laplacian and V_G the graph
//! volume. Equivalently δ_ij² = V_G · r_eff(i, j), the effective resistance
//! between i and j scaled by the volume.

use std::fmt;
use std::io::{Read, Write};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::{laplacian, DistanceMatrix, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DissimilarityKind {
    /// Euclidean commute-time distance, volume scaled.
    Ectd,
    ShortestPath,
}

impl fmt::Display for DissimilarityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DissimilarityKind::Ectd => "ectd",
            DissimilarityKind::ShortestPath => "shortest-path",
        })
    }
}

/// Dense symmetric matrix of finite nonnegative dissimilarities, zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DissimilarityMatrix {
    n: usize,
    values: Vec<f64>,
}

impl DissimilarityMatrix {
    /// Validates and wraps a row-major `n × n` buffer.
    pub fn from_row_major(n: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::invalid(format!(
                "expected {} entries for a {n}×{n} matrix, got {}",
                n * n,
                values.len()
            )));
        }
        for i in 0..n {
            if values[i * n + i] != 0.0 {
                return Err(Error::invalid(format!("nonzero diagonal at {i}")));
            }
            for j in (i + 1)..n {
                let (a, b) = (values[i * n + j], values[j * n + i]);
                if !(a.is_finite() && a >= 0.0) {
                    return Err(Error::invalid(format!(
                        "dissimilarity ({i}, {j}) must be finite and nonnegative, got {a}"
                    )));
                }
                if a != b {
                    return Err(Error::invalid(format!(
                        "dissimilarity is not symmetric at ({i}, {j}): {a} vs {b}"
                    )));
                }
            }
        }
        Ok(DissimilarityMatrix { n, values })
    }

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

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

/// Uses geodesic distances verbatim. Fails if any pair is disconnected.
pub fn from_shortest_paths(d: DistanceMatrix) -> Result<DissimilarityMatrix> {
    if !d.all_finite() {
        return Err(Error::Disconnected(
            "shortest-path dissimilarities need a connected graph; \
             extract the largest connected component first"
                .into(),
        ));
    }
    let n = d.len();
    DissimilarityMatrix::from_row_major(n, d.into_values())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PseudoinverseMethod {
    /// L⁺ = (L + 𝟙𝟙ᵀ/N)⁻¹ − 𝟙𝟙ᵀ/N via Cholesky.
    RankOneDeflation,
    /// Spectral: L⁺ = Σ_{λ_k > tol} v_k v_kᵀ / λ_k.
    Eigen,
}

#[derive(Clone, Copy, Debug)]
pub struct EctdOptions {
    /// Refuse graphs larger than this; the computation is dense O(N³).
    pub max_nodes: usize,
    pub method: PseudoinverseMethod,
}

impl Default for EctdOptions {
    fn default() -> Self {
        EctdOptions {
            max_nodes: 6000,
            method: PseudoinverseMethod::RankOneDeflation,
        }
    }
}

/// Moore–Penrose pseudoinverse of the Laplacian of a connected graph.
pub fn laplacian_pseudoinverse(g: &Graph, method: PseudoinverseMethod) -> Result<DMatrix<f64>> {
    if !g.is_connected() {
        return Err(Error::Disconnected(
            "commute-time distances need a connected graph; \
             extract the largest connected component first"
                .into(),
        ));
    }
    let n = g.node_count();
    let inv_n = 1.0 / n as f64;
    let mut l = laplacian(g);
    match method {
        PseudoinverseMethod::RankOneDeflation => {
            l.add_scalar_mut(inv_n);
            let chol = l
                .cholesky()
                .ok_or_else(|| Error::Numeric("L + 11ᵀ/N is not positive definite".into()))?;
            let mut pinv = chol.inverse();
            pinv.add_scalar_mut(-inv_n);
            Ok(pinv)
        }
        PseudoinverseMethod::Eigen => {
            let eig = SymmetricEigen::try_new(l, f64::EPSILON, 0).ok_or_else(|| {
                Error::Numeric("Laplacian eigendecomposition did not converge".into())
            })?;
            let top = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
            let tol = top * n as f64 * f64::EPSILON * 10.0;
            let mut pinv = DMatrix::zeros(n, n);
            for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
                if lambda > tol {
                    let v = eig.eigenvectors.column(k);
                    pinv.ger(1.0 / lambda, &v, &v, 1.0);
                }
            }
            Ok(pinv)
        }
    }
}

pub fn ectd(g: &Graph) -> Result<DissimilarityMatrix> {
    ectd_with(g, &EctdOptions::default())
}

pub fn ectd_with(g: &Graph, opts: &EctdOptions) -> Result<DissimilarityMatrix> {
    let n = g.node_count();
    if n > opts.max_nodes {
        return Err(Error::invalid(format!(
            "graph has {n} nodes, above the dense commute-time limit of {}; \
             raise the limit or use shortest-path dissimilarities",
            opts.max_nodes
        )));
    }
    let pinv = laplacian_pseudoinverse(g, opts.method)?;
    let volume = g.volume();
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            // Round-off can push tiny resistances slightly negative.
            let r = (pinv[(i, i)] + pinv[(j, j)] - 2.0 * pinv[(i, j)]).max(0.0);
            let d = (volume * r).sqrt();
            if !d.is_finite() {
                return Err(Error::Numeric(format!(
                    "non-finite commute-time distance between {i} and {j}"
                )));
            }
            values[i * n + j] = d;
            values[j * n + i] = d;
        }
    }
    DissimilarityMatrix::from_row_major(n, values)
}

// ---------------------------------------------------------------------------
// Binary cache: 8-byte magic, u64 N, then N² little-endian f64 row-major.
// ---------------------------------------------------------------------------

pub const CACHE_MAGIC: [u8; 8] = *b"RMDSDLT1";

pub fn write_cache<W: Write>(mut w: W, delta: &DissimilarityMatrix) -> Result<()> {
    w.write_all(&CACHE_MAGIC)?;
    w.write_all(&(delta.n as u64).to_le_bytes())?;
    let mut buf = Vec::with_capacity(delta.values.len() * 8);
    for v in &delta.values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf)?;
    w.flush()?;
    Ok(())
}

pub fn read_cache<R: Read>(mut r: R) -> Result<DissimilarityMatrix> {
    let mut header = [0u8; 16];
    r.read_exact(&mut header)?;
    if header[..8] != CACHE_MAGIC {
        return Err(Error::invalid("not a dissimilarity cache file (bad magic)"));
    }
    let n = u64::from_le_bytes(header[8..].try_into().unwrap()) as usize;
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.len() != n * n * 8 {
        return Err(Error::invalid(format!(
            "cache holds {} bytes of data, expected {} for N = {n}",
            bytes.len(),
            n * n * 8
        )));
    }
    let values = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    DissimilarityMatrix::from_row_major(n, values)
}
