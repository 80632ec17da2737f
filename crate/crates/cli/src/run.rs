use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use radmds::dissimilarity::{self, EctdOptions};
use radmds::export;
use radmds::graph::{largest_connected_component, load_edge_list};
use radmds::pipeline::{self, Radii};
use radmds::render::{self, RenderSpec};
use radmds::solver::{self, Solution};
use radmds::{DissimilarityKind, DissimilarityMatrix, Error, Graph, SolverConfig, Termination};

use crate::args::{CentralityArgs, EmbedArgs, InputArgs, OutputArgs, SolveArgs, SweepArgs};
use crate::error::Failure;
use crate::manifest::{RunManifest, RunResult, SCHEMA_VERSION};

fn io_at(path: &Path) -> impl FnOnce(std::io::Error) -> Failure + '_ {
    move |source| Failure::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_file<F>(path: &Path, body: F) -> Result<(), Failure>
where
    F: FnOnce(&mut BufWriter<File>) -> radmds::Result<()>,
{
    let file = File::create(path).map_err(io_at(path))?;
    let mut w = BufWriter::new(file);
    body(&mut w).map_err(|e| match e {
        Error::Io(source) => Failure::Io {
            path: path.to_path_buf(),
            source,
        },
        other => other.into(),
    })?;
    w.flush().map_err(io_at(path))
}

fn default_out_dir() -> PathBuf {
    let stamp = chrono::Utc::now().format("%Y%m%dT%H%M%SZ");
    let base = PathBuf::from("runs").join(format!("run-{stamp}"));
    let mut dir = base.clone();
    let mut k = 2;
    while dir.exists() {
        dir = PathBuf::from(format!("{}-{k}", base.display()));
        k += 1;
    }
    dir
}

fn create_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(io_at(dir))
}

// ---------------------------------------------------------------------------
// Inputs
// ---------------------------------------------------------------------------

struct Prepared {
    graph: Graph,
    radii: Radii,
}

fn load_graph(input: &Path, m: &RunManifest) -> Result<Graph, Failure> {
    let file = File::open(input).map_err(io_at(input))?;
    let loaded = load_edge_list(BufReader::new(file), m.format.into()).map_err(|e| match e {
        Error::Io(source) => Failure::Io {
            path: input.to_path_buf(),
            source,
        },
        Error::Parse { line, message } => {
            Failure::Usage(format!("{}: line {line}: {message}", input.display()))
        }
        other => other.into(),
    })?;
    let mut g = loaded.graph;
    if m.largest_component {
        let before = g.node_count();
        g = largest_connected_component(&g).0;
        log::info!("largest component: {} of {before} nodes", g.node_count());
    }
    if !g.is_connected() {
        let parts = g.component_ids().into_iter().max().map_or(0, |c| c + 1);
        return Err(Error::Disconnected(format!(
            "{parts} components; re-run with --largest-component to use the largest one"
        ))
        .into());
    }
    Ok(g)
}

fn prepare(m: &RunManifest) -> Result<Prepared, Failure> {
    let graph = load_graph(&m.input, m)?;
    let radii = pipeline::radii(&graph, m.centrality.into(), m.uniform_radius)?;
    Ok(Prepared { graph, radii })
}

fn dissimilarities(m: &RunManifest, g: &Graph) -> Result<DissimilarityMatrix, Failure> {
    if let Some(path) = &m.delta_cache {
        if path.exists() {
            let file = File::open(path).map_err(io_at(path))?;
            let delta = dissimilarity::read_cache(BufReader::new(file))?;
            if delta.len() != g.node_count() {
                return Err(Failure::Usage(format!(
                    "{}: cached matrix is for {} nodes, the graph has {}",
                    path.display(),
                    delta.len(),
                    g.node_count()
                )));
            }
            log::info!("read dissimilarities from {}", path.display());
            return Ok(delta);
        }
    }
    let delta = pipeline::dissimilarities(g, m.dissimilarity.into(), &EctdOptions::default())?;
    if let Some(path) = &m.delta_cache {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            create_dir(parent)?;
        }
        write_file(path, |w| dissimilarity::write_cache(w, &delta))?;
    }
    Ok(delta)
}

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

fn solver_config(m: &RunManifest) -> SolverConfig {
    SolverConfig {
        dim: m.p,
        lambda: m.lambda,
        epsilon: m.epsilon,
        max_outer_iters: m.max_iters,
        seed: m.seed,
    }
}

fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::Converged => "converged",
        Termination::MaxIterations => "max-iterations",
        Termination::Trivial => "trivial",
    }
}

/// Solve and write every artifact of one run into `m.out`.
fn embed_into(
    m: &mut RunManifest,
    prep: &Prepared,
    delta: &DissimilarityMatrix,
) -> Result<Solution, Failure> {
    let cfg = solver_config(m);
    cfg.validate()?;
    let g = &prep.graph;
    let sol = solver::solve(g, delta, &prep.radii.radii, &cfg)?;

    let out = m.out.clone();
    create_dir(&out)?;
    let (c, f) = (&prep.radii.centrality, &prep.radii.radii);
    write_file(&out.join("embedding.csv"), |w| {
        export::write_embedding_csv(w, &sol.embedding, g, c, f)
    })?;
    write_file(&out.join("trace.csv"), |w| {
        export::write_trace_csv(w, &sol.trace, m.record_timings)
    })?;
    write_file(&out.join("centrality.csv"), |w| {
        export::write_centrality_csv(w, c, f)
    })?;
    write_file(&out.join("node_map.csv"), |w| {
        export::write_node_map_csv(w, g)
    })?;
    if m.p == 2 {
        let spec = RenderSpec {
            draw_edges: !m.no_edges,
            guide_radii: if m.guides {
                render::quartile_guides(f)
            } else {
                Vec::new()
            },
            ..Default::default()
        };
        let svg = render::render_svg(&sol.embedding, g, c, &spec)?;
        let path = out.join("embedding.svg");
        fs::write(&path, svg).map_err(io_at(&path))?;
    } else {
        log::warn!("p = {}: no SVG written (drawings need p = 2)", m.p);
    }

    m.result = Some(RunResult {
        nodes: g.node_count(),
        edges: g.edge_count(),
        ectd_volume_scaled: DissimilarityKind::from(m.dissimilarity) == DissimilarityKind::Ectd,
        epsilon_used: sol.trace.epsilon,
        iterations: sol.trace.iterations(),
        termination: termination_name(sol.trace.termination).into(),
        final_stress: sol.trace.final_stress(),
        final_objective: sol.trace.final_objective(),
    });
    let path = out.join("manifest.json");
    fs::write(&path, m.to_json()).map_err(io_at(&path))?;
    Ok(sol)
}

fn resolve_input(path: &Path) -> Result<PathBuf, Failure> {
    fs::canonicalize(path).map_err(io_at(path))
}

fn manifest_from(
    input: &InputArgs,
    solve: &SolveArgs,
    lambda: f64,
    output: &OutputArgs,
) -> Result<RunManifest, Failure> {
    Ok(RunManifest {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").into(),
        input: resolve_input(&input.input)?,
        format: input.format,
        largest_component: input.largest_component,
        centrality: input.centrality,
        uniform_radius: input.uniform_radius,
        dissimilarity: solve.dissimilarity,
        p: solve.p,
        lambda,
        epsilon: solve.epsilon,
        max_iters: solve.max_iters,
        seed: solve.seed,
        delta_cache: solve.delta_cache.clone(),
        out: output.out.clone().unwrap_or_else(default_out_dir),
        no_edges: output.no_edges,
        guides: output.guides,
        record_timings: output.record_timings,
        result: None,
    })
}

fn run_manifest(mut m: RunManifest) -> Result<(), Failure> {
    solver_config(&m).validate()?;
    let prep = prepare(&m)?;
    let delta = dissimilarities(&m, &prep.graph)?;
    let sol = embed_into(&mut m, &prep, &delta)?;
    println!(
        "final stress {} after {} iterations ({}); artifacts in {}",
        sol.trace.final_stress(),
        sol.trace.iterations(),
        termination_name(sol.trace.termination),
        m.out.display()
    );
    Ok(())
}

pub fn embed(args: EmbedArgs) -> Result<(), Failure> {
    run_manifest(manifest_from(
        &args.input,
        &args.solve,
        args.lambda,
        &args.output,
    )?)
}

pub fn replay(manifest: &Path, out: Option<PathBuf>) -> Result<(), Failure> {
    let mut m = RunManifest::load(manifest)?;
    m.result = None;
    if let Some(out) = out {
        m.out = out;
    }
    run_manifest(m)
}

pub fn centrality(args: CentralityArgs) -> Result<(), Failure> {
    let output = OutputArgs {
        out: args.out,
        no_edges: false,
        guides: false,
        record_timings: false,
    };
    let solve = SolveArgs {
        dissimilarity: crate::args::Dissimilarity::ShortestPath,
        p: 2,
        epsilon: None,
        max_iters: 1,
        seed: 0,
        delta_cache: None,
    };
    let m = manifest_from(&args.input, &solve, 0.0, &output)?;
    let prep = prepare(&m)?;
    create_dir(&m.out)?;
    let (c, f) = (&prep.radii.centrality, &prep.radii.radii);
    write_file(&m.out.join("centrality.csv"), |w| {
        export::write_centrality_csv(w, c, f)
    })?;
    write_file(&m.out.join("node_map.csv"), |w| {
        export::write_node_map_csv(w, &prep.graph)
    })?;
    let top = (0..c.len())
        .max_by(|&a, &b| c.values[a].total_cmp(&c.values[b]).then(b.cmp(&a)))
        .unwrap_or(0);
    println!(
        "{} centrality for {} nodes (max {} at node {}); written to {}",
        c.kind,
        c.len(),
        c.values[top],
        prep.graph.label(top),
        m.out.display()
    );
    Ok(())
}

pub fn lambda_sweep(args: SweepArgs) -> Result<(), Failure> {
    if args.lambdas.is_empty() {
        return Err(Failure::Usage("--lambdas needs at least one value".into()));
    }
    let mut lambdas = args.lambdas.clone();
    lambdas.sort_by(f64::total_cmp);
    lambdas.dedup();
    let base = manifest_from(&args.input, &args.solve, lambdas[0], &args.output)?;
    for &lambda in &lambdas {
        solver_config(&RunManifest {
            lambda,
            ..base.clone()
        })
        .validate()?;
    }
    let prep = prepare(&base)?;
    let delta = dissimilarities(&base, &prep.graph)?;

    let mut summary = String::from("lambda,iters,final_stress,final_penalty\n");
    for &lambda in &lambdas {
        let mut m = RunManifest {
            lambda,
            out: base.out.join(format!("lambda-{lambda}")),
            ..base.clone()
        };
        let sol = embed_into(&mut m, &prep, &delta)?;
        let h = solver::smoothness(&sol.embedding, &prep.graph);
        summary.push_str(&format!(
            "{lambda},{},{},{h}\n",
            sol.trace.iterations(),
            sol.trace.final_stress()
        ));
        println!(
            "lambda {lambda}: final stress {} after {} iterations, penalty {h}",
            sol.trace.final_stress(),
            sol.trace.iterations()
        );
    }
    let path = base.out.join("summary.csv");
    fs::write(&path, summary).map_err(io_at(&path))?;
    println!("summary in {}", path.display());
    Ok(())
}
