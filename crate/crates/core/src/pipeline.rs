//! Glue from a graph to solver inputs: centralities, radii and dissimilarities.

use crate::centrality::{self, CentralityKind, CentralityVector, RadiusVector};
use crate::dissimilarity::{self, DissimilarityKind, DissimilarityMatrix, EctdOptions};
use crate::error::{Error, Result};
use crate::graph::{shortest_paths, Graph};

#[derive(Clone, Debug)]
pub struct Radii {
    pub centrality: CentralityVector,
    pub radii: RadiusVector,
    pub diameter: f64,
}

/// Centralities and their radial bounds. With `uniform_radius` set, every
/// node gets that bound instead of the centrality transform.
pub fn radii(g: &Graph, kind: CentralityKind, uniform_radius: Option<f64>) -> Result<Radii> {
    let dist = shortest_paths(g);
    if !dist.all_finite() {
        return Err(Error::Disconnected(
            "the embedding needs a connected graph; use the largest connected component".into(),
        ));
    }
    let diameter = (0..dist.len())
        .flat_map(|i| dist.row(i).iter().copied())
        .fold(0.0, f64::max);
    let centrality = centrality::compute(g, kind)?;
    let radii = match uniform_radius {
        Some(r) => RadiusVector::uniform(g.node_count(), r)?,
        None => centrality::radius_transform(&centrality, diameter)?,
    };
    Ok(Radii {
        centrality,
        radii,
        diameter,
    })
}

pub fn dissimilarities(
    g: &Graph,
    kind: DissimilarityKind,
    ectd: &EctdOptions,
) -> Result<DissimilarityMatrix> {
    match kind {
        DissimilarityKind::Ectd => dissimilarity::ectd_with(g, ectd),
        DissimilarityKind::ShortestPath => dissimilarity::from_shortest_paths(shortest_paths(g)),
    }
}
