//! Runs the solver over a range of smoothness weights on an edge-list file
//! and prints iteration counts, stress and h(X).
//!
//! cargo run --release -p radmds --example lambda_sweep -- data/tube_proxy.tsv

use std::fs::File;
use std::io::BufReader;

use radmds::dissimilarity::EctdOptions;
use radmds::graph::{largest_connected_component, load_edge_list};
use radmds::solver::{self, smoothness, SolverConfig};
use radmds::{pipeline, CentralityKind, DissimilarityKind, EdgeListFormat};

fn main() -> radmds::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "data/tube_proxy.tsv".into());
    let kind = match args.next().as_deref() {
        Some("sp") => DissimilarityKind::ShortestPath,
        _ => DissimilarityKind::Ectd,
    };
    let seed: u64 = args.next().map_or(0, |s| s.parse().unwrap());
    let loaded = load_edge_list(BufReader::new(File::open(&path)?), EdgeListFormat::SnapTsv)?;
    let (g, _) = largest_connected_component(&loaded.graph);
    let radii = pipeline::radii(&g, CentralityKind::Betweenness, None)?;
    let delta = pipeline::dissimilarities(&g, kind, &EctdOptions::default())?;
    println!(
        "N = {}, diameter = {}, {kind}",
        g.node_count(),
        radii.diameter
    );
    println!("lambda,iters,termination,final_stress,h");
    for lambda in [0.0, 1.0, 100.0, 10_000.0] {
        let cfg = SolverConfig {
            lambda,
            seed,
            ..Default::default()
        };
        let sol = solver::solve(&g, &delta, &radii.radii, &cfg)?;
        println!(
            "{lambda},{},{:?},{:.6e},{:.6e}",
            sol.trace.iterations(),
            sol.trace.termination,
            sol.trace.final_stress(),
            smoothness(&sol.embedding, &g)
        );
    }
    Ok(())
}
