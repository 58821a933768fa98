use crate::error::Result;
use crate::netlist::{Netlist, NodeId, NodeKind};
use crate::scalar::Scalar;
use crate::spec::{Wavelength, Zone};

/// Elements met on the route from a source to one output.
#[derive(Debug, Clone, PartialEq)]
pub struct PathProfile<S = f64> {
    pub wavelength: Wavelength,
    pub zone: Zone,
    pub output: NodeId,
    pub num_splitters: u32,
    pub num_crossings: u32,
    /// Sum of edge lengths, when any edge on the route has one.
    pub path_length: Option<S>,
}

/// Graph-derived element counts: totals and per-path maxima.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ElementCounts {
    pub total_splitters: usize,
    pub total_crossings: usize,
    pub max_splitters_per_path: u32,
    pub max_crossings_per_path: u32,
}

/// One profile per output, in node order. Rejects invalid netlists.
pub fn path_profiles<S: Scalar>(netlist: &Netlist<S>) -> Result<Vec<PathProfile<S>>> {
    netlist.ensure_valid()?;
    let topo = netlist.topology()?;
    let mut profiles = Vec::new();
    for out in netlist.outputs() {
        let NodeKind::Output { zone, wavelength } = out.kind else {
            unreachable!()
        };
        let mut profile = PathProfile {
            wavelength,
            zone,
            output: out.id,
            num_splitters: 0,
            num_crossings: 0,
            path_length: None,
        };
        let mut edge = topo.in_edge[out.id.index()][0];
        while let Some(e) = edge {
            let edge_ref = &netlist.edges[e];
            if let Some(len) = edge_ref.length {
                profile.path_length = Some(profile.path_length.unwrap_or_else(S::zero) + len);
            }
            let from = edge_ref.from;
            let i = from.node.index();
            edge = match netlist.nodes[i].kind {
                NodeKind::Source { .. } => None,
                NodeKind::Splitter { .. } => {
                    profile.num_splitters += 1;
                    topo.in_edge[i][0]
                }
                NodeKind::Crossing { .. } => {
                    profile.num_crossings += 1;
                    topo.in_edge[i][1 - from.port as usize]
                }
                NodeKind::Output { .. } => unreachable!("outputs have no outgoing edges"),
            };
        }
        profiles.push(profile);
    }
    Ok(profiles)
}

pub fn element_counts<S: Scalar>(netlist: &Netlist<S>) -> Result<ElementCounts> {
    let profiles = path_profiles(netlist)?;
    Ok(ElementCounts {
        total_splitters: netlist.splitter_count(),
        total_crossings: netlist.crossing_count(),
        max_splitters_per_path: profiles.iter().map(|p| p.num_splitters).max().unwrap_or(0),
        max_crossings_per_path: profiles.iter().map(|p| p.num_crossings).max().unwrap_or(0),
    })
}
