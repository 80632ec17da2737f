//! SVG node-link drawings of two-dimensional embeddings.
//!
//! Nodes are colored on a red → yellow ramp by centrality (least central red,
//! most central yellow). The embedding's bounding square is fitted into the
//! viewport so both axes share one scale.

use std::fmt::Write as _;

use crate::centrality::{CentralityVector, RadiusVector};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::Embedding;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Colormap {
    /// Linear red (#FF0000) to yellow (#FFFF00).
    #[default]
    Heat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub draw_edges: bool,
    pub node_radius: f64,
    pub colormap: Colormap,
    pub margin: f64,
    /// Concentric guide circles about the embedding origin, in embedding units.
    pub guide_radii: Vec<f64>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 800,
            height: 800,
            draw_edges: true,
            node_radius: 4.0,
            colormap: Colormap::Heat,
            margin: 20.0,
            guide_radii: Vec::new(),
        }
    }
}

impl RenderSpec {
    fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::invalid("render width and height must be positive"));
        }
        if !(self.node_radius.is_finite() && self.node_radius > 0.0) {
            return Err(Error::invalid("node radius must be positive"));
        }
        if !(self.margin.is_finite() && self.margin >= 0.0) {
            return Err(Error::invalid("margin must be nonnegative"));
        }
        Ok(())
    }
}

/// Quartiles of the radial bounds, for use as guide circles.
pub fn quartile_guides(radii: &RadiusVector) -> Vec<f64> {
    let mut sorted = radii.values.clone();
    sorted.sort_by(f64::total_cmp);
    if sorted.is_empty() {
        return Vec::new();
    }
    let mut guides: Vec<f64> = [0.25, 0.5, 0.75, 1.0]
        .iter()
        .map(|q| sorted[((sorted.len() - 1) as f64 * q).round() as usize])
        .filter(|&r| r > 0.0)
        .collect();
    guides.dedup();
    guides
}

/// Hex color for centrality `c` on `[lo, hi]`.
pub fn heat_color(c: f64, lo: f64, hi: f64) -> String {
    let t = if hi > lo {
        ((c - lo) / (hi - lo)).clamp(0.0, 1.0)
    } else {
        0.0
    };
    format!("#FF{:02X}00", (255.0 * t).round() as u8)
}

struct Viewport {
    cx: f64,
    cy: f64,
    scale: f64,
    half_w: f64,
    half_h: f64,
}

impl Viewport {
    fn fit(x: &Embedding, spec: &RenderSpec) -> Self {
        let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
        for row in x.rows() {
            xmin = xmin.min(row[0]);
            xmax = xmax.max(row[0]);
            ymin = ymin.min(row[1]);
            ymax = ymax.max(row[1]);
        }
        let mut side = (xmax - xmin).max(ymax - ymin);
        if side.is_nan() || side <= 0.0 {
            side = 1.0;
        }
        let usable =
            (spec.width.min(spec.height) as f64 - 2.0 * (spec.margin + spec.node_radius)).max(1.0);
        Viewport {
            cx: (xmin + xmax) / 2.0,
            cy: (ymin + ymax) / 2.0,
            scale: usable / side,
            half_w: spec.width as f64 / 2.0,
            half_h: spec.height as f64 / 2.0,
        }
    }

    fn map(&self, px: f64, py: f64) -> (f64, f64) {
        (
            self.half_w + (px - self.cx) * self.scale,
            self.half_h - (py - self.cy) * self.scale,
        )
    }
}

fn check_input(x: &Embedding, c: &CentralityVector) -> Result<()> {
    if x.dim() != 2 {
        return Err(Error::invalid(format!(
            "unsupported dimension p = {}; SVG rendering needs p = 2",
            x.dim()
        )));
    }
    if !x.is_finite() {
        return Err(Error::invalid("embedding has non-finite coordinates"));
    }
    if c.len() != x.len() {
        return Err(Error::invalid(format!(
            "{} centrality values for {} nodes",
            c.len(),
            x.len()
        )));
    }
    Ok(())
}

/// Node-link drawing. Edges (if enabled) are drawn beneath the nodes.
pub fn render_svg(
    x: &Embedding,
    g: &Graph,
    c: &CentralityVector,
    spec: &RenderSpec,
) -> Result<String> {
    if g.node_count() != x.len() {
        return Err(Error::invalid("graph and embedding sizes differ"));
    }
    draw(x, spec.draw_edges.then_some(g), c, spec)
}

/// Nodes only, for graphs with thousands of nodes.
pub fn render_large(x: &Embedding, c: &CentralityVector, spec: &RenderSpec) -> Result<String> {
    draw(x, None, c, spec)
}

fn draw(
    x: &Embedding,
    edges: Option<&Graph>,
    c: &CentralityVector,
    spec: &RenderSpec,
) -> Result<String> {
    spec.validate()?;
    check_input(x, c)?;
    let vp = Viewport::fit(x, spec);
    let mut out = String::with_capacity(256 + 96 * x.len());
    // Writing into a String cannot fail.
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = spec.width,
        h = spec.height
    );
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="{}" height="{}" fill="#FFFFFF"/>"##,
        spec.width, spec.height
    );

    if !spec.guide_radii.is_empty() {
        let (ox, oy) = vp.map(0.0, 0.0);
        for r in &spec.guide_radii {
            let _ = writeln!(
                out,
                r##"<circle cx="{ox:.2}" cy="{oy:.2}" r="{:.2}" fill="none" stroke="#CCCCCC" stroke-dasharray="4 4"/>"##,
                r * vp.scale
            );
        }
    }

    if let Some(g) = edges {
        for e in g.edges() {
            let (x1, y1) = vp.map(x.row(e.u)[0], x.row(e.u)[1]);
            let (x2, y2) = vp.map(x.row(e.v)[0], x.row(e.v)[1]);
            let _ = writeln!(
                out,
                r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#999999" stroke-width="0.8"/>"##
            );
        }
    }

    let (lo, hi) = (c.min(), c.max());
    for (i, row) in x.rows().enumerate() {
        let (px, py) = vp.map(row[0], row[1]);
        let fill = match spec.colormap {
            Colormap::Heat => heat_color(c.values[i], lo, hi),
        };
        let _ = writeln!(
            out,
            r##"<circle cx="{px:.2}" cy="{py:.2}" r="{:.2}" fill="{fill}" stroke="#333333" stroke-width="0.5"/>"##,
            spec.node_radius
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
