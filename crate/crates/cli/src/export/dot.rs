use std::fmt::Write;

use ionphot::{Netlist, NodeKind};

use super::table::sig9;

/// Graphviz digraph. Splitters show their ratio (or `?` when unsolved),
/// crossings the wavelength pair they exchange.
pub fn write_dot(netlist: &Netlist<f64>, name: &str) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "digraph {name} {{").unwrap();
    writeln!(w, "  rankdir=LR;").unwrap();
    writeln!(w, "  node [fontname=\"Helvetica\", fontsize=10];").unwrap();
    for node in &netlist.nodes {
        let (label, shape) = match &node.kind {
            NodeKind::Source { wavelength } => (format!("src {wavelength}"), "invhouse"),
            NodeKind::Splitter { ratio, .. } => (
                match ratio {
                    Some(r) => format!("Y r={}", sig9(*r)),
                    None => "Y r=?".to_string(),
                },
                "triangle",
            ),
            NodeKind::Crossing { pair } => (format!("X {}/{}", pair[0], pair[1]), "diamond"),
            NodeKind::Output { zone, wavelength } => (format!("{wavelength} @ {zone}"), "box"),
        };
        writeln!(w, "  n{} [label=\"{label}\", shape={shape}];", node.id.0).unwrap();
    }
    for e in &netlist.edges {
        write!(
            w,
            "  n{} -> n{} [tailport={}, headport={}",
            e.from.node.0,
            e.to.node.0,
            port(e.from.port, true),
            port(e.to.port, false)
        )
        .unwrap();
        if let Some(len) = e.length {
            write!(w, ", label=\"{}\"", sig9(len)).unwrap();
        }
        writeln!(w, "];").unwrap();
    }
    writeln!(w, "}}").unwrap();
    out
}

fn port(p: u8, out: bool) -> &'static str {
    match (out, p) {
        (true, 0) => "n",
        (true, _) => "s",
        (false, 0) => "nw",
        (false, _) => "sw",
    }
}
