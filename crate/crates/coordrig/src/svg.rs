//! SVG drawings of coloured graphs.
//!
//! Uncoloured edges are solid, class 1 dashed, class 2 dotted. Higher
//! classes cycle through further dash patterns, each with its own hue.

use std::fmt::Write;

use coordrig_core::framework::Configuration;
use coordrig_core::sample::rng;
use coordrig_core::ColouredGraph;
use rand::Rng;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const EXTRA_DASHES: [&str; 4] = ["12 4 2 4", "16 6", "2 2 8 2", "4 8"];

/// Stroke colour and dash pattern of a class.
pub fn edge_style(class: usize) -> (String, Option<&'static str>) {
    match class {
        0 => ("#000000".into(), None),
        1 => ("#000000".into(), Some("8 5")),
        2 => ("#000000".into(), Some("2 4")),
        c => {
            let hue = ((c - 3) as f64 * 137.508) % 360.0;
            (format!("hsl({hue:.1}, 70%, 40%)"), Some(EXTRA_DASHES[(c - 3) % EXTRA_DASHES.len()]))
        }
    }
}

fn graph_hash(g: &ColouredGraph) -> u64 {
    // FNV-1a over the edge triples.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for x in std::iter::once(g.n()).chain(g.triples().flat_map(|(u, v, c)| [u, v, c])) {
        for b in (x as u64).to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

/// Fruchterman-Reingold layout seeded from the graph.
pub fn spring_layout(g: &ColouredGraph) -> Vec<[f64; 2]> {
    let n = g.n();
    let mut r = rng(graph_hash(g));
    let mut pos: Vec<[f64; 2]> = (0..n).map(|_| [r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)]).collect();
    let k = (4.0 / n.max(1) as f64).sqrt();
    let iterations = 300;
    for it in 0..iterations {
        let mut disp = vec![[0.0f64; 2]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let dx = pos[i][0] - pos[j][0];
                    let dy = pos[i][1] - pos[j][1];
                    let dist = (dx * dx + dy * dy).sqrt().max(1e-6);
                    let f = k * k / dist;
                    disp[i][0] += dx / dist * f;
                    disp[i][1] += dy / dist * f;
                }
            }
        }
        for e in g.edges() {
            let dx = pos[e.u][0] - pos[e.v][0];
            let dy = pos[e.u][1] - pos[e.v][1];
            let dist = (dx * dx + dy * dy).sqrt().max(1e-6);
            let f = dist * dist / k;
            disp[e.u][0] -= dx / dist * f;
            disp[e.u][1] -= dy / dist * f;
            disp[e.v][0] += dx / dist * f;
            disp[e.v][1] += dy / dist * f;
        }
        let temp = 0.1 * (1.0 - it as f64 / iterations as f64);
        for i in 0..n {
            let len = (disp[i][0] * disp[i][0] + disp[i][1] * disp[i][1]).sqrt().max(1e-9);
            let step = len.min(temp);
            pos[i][0] += disp[i][0] / len * step;
            pos[i][1] += disp[i][1] / len * step;
        }
    }
    pos
}

/// Uses the first two coordinates of `coords` when given.
pub fn render(g: &ColouredGraph, coords: Option<&Configuration<f64>>) -> String {
    let raw: Vec<[f64; 2]> = match coords {
        Some(p) => (0..p.n())
            .map(|i| {
                let x = p.point(i);
                [x[0], x.get(1).copied().unwrap_or(0.0)]
            })
            .collect(),
        None => spring_layout(g),
    };
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for q in &raw {
        for a in 0..2 {
            lo[a] = lo[a].min(q[a]);
            hi[a] = hi[a].max(q[a]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    // SVG y grows downwards.
    let screen: Vec<[f64; 2]> =
        raw.iter().map(|q| [MARGIN + (q[0] - lo[0]) * scale, SIZE - MARGIN - (q[1] - lo[1]) * scale]).collect();

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##).unwrap();
    for (e, &c) in g.edges().iter().zip(g.colours()) {
        let (stroke, dash) = edge_style(c);
        let dash = dash.map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
        writeln!(
            out,
            r#"<line class="edge class-{c}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{stroke}" stroke-width="2"{dash}/>"#,
            screen[e.u][0], screen[e.u][1], screen[e.v][0], screen[e.v][1]
        )
        .unwrap();
    }
    for (i, q) in screen.iter().enumerate() {
        writeln!(out, r##"<circle cx="{:.2}" cy="{:.2}" r="5" fill="#000000"/>"##, q[0], q[1]).unwrap();
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">{i}</text>"#,
            q[0] + 7.0,
            q[1] - 7.0
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
