//! CSV writers for embeddings, traces, centralities and node mappings.
//!
//! Floats are written with Rust's shortest round-trip formatting, so output
//! bytes are a pure function of the values.

use std::io::Write;

use crate::centrality::{CentralityVector, RadiusVector};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::{Embedding, SolverTrace};

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `node,original_id,x1..xp,centrality,radius`
pub fn write_embedding_csv<W: Write>(
    mut w: W,
    x: &Embedding,
    g: &Graph,
    c: &CentralityVector,
    radii: &RadiusVector,
) -> Result<()> {
    let n = x.len();
    if g.node_count() != n || c.len() != n || radii.len() != n {
        return Err(Error::invalid(
            "embedding, graph, centrality and radii sizes differ",
        ));
    }
    let mut header = String::from("node,original_id");
    for k in 1..=x.dim() {
        header.push_str(&format!(",x{k}"));
    }
    header.push_str(",centrality,radius");
    writeln!(w, "{header}")?;
    for i in 0..n {
        let mut line = format!("{i},{}", field(&g.label(i)));
        for v in x.row(i) {
            line.push_str(&format!(",{v}"));
        }
        line.push_str(&format!(",{},{}", c.values[i], radii.values[i]));
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    Ok(())
}

/// `iter,stress,objective,frob_step,seconds`
///
/// Wall time is nondeterministic, so the `seconds` field is left empty unless
/// `include_timings` is set.
pub fn write_trace_csv<W: Write>(
    mut w: W,
    trace: &SolverTrace,
    include_timings: bool,
) -> Result<()> {
    writeln!(w, "iter,stress,objective,frob_step,seconds")?;
    for r in &trace.records {
        if include_timings {
            writeln!(
                w,
                "{},{},{},{},{}",
                r.iteration, r.stress, r.objective, r.frob_step, r.seconds
            )?;
        } else {
            writeln!(
                w,
                "{},{},{},{},",
                r.iteration, r.stress, r.objective, r.frob_step
            )?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `node,centrality,radius`
pub fn write_centrality_csv<W: Write>(
    mut w: W,
    c: &CentralityVector,
    radii: &RadiusVector,
) -> Result<()> {
    if c.len() != radii.len() {
        return Err(Error::invalid("centrality and radii sizes differ"));
    }
    writeln!(w, "node,centrality,radius")?;
    for (i, (ci, fi)) in c.values.iter().zip(&radii.values).enumerate() {
        writeln!(w, "{i},{ci},{fi}")?;
    }
    w.flush()?;
    Ok(())
}

/// `new_index,original_id` for every node of `g`.
pub fn write_node_map_csv<W: Write>(mut w: W, g: &Graph) -> Result<()> {
    writeln!(w, "new_index,original_id")?;
    for i in 0..g.node_count() {
        writeln!(w, "{i},{}", field(&g.label(i)))?;
    }
    w.flush()?;
    Ok(())
}
