//! Element graph of sources, splitters, crossings and outputs.
//!
//! Ports are numbered left to right. A splitter has one input and two
//! outputs (0 = left, toward lower zone indices; 1 = right). A crossing has
//! two inputs and two outputs; the signal entering input 0 leaves on output 1
//! and vice versa, so each wavelength passes straight through.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spec::{Method, Wavelength, Zone};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Which output port receives the fraction `r` of a splitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum RatioConvention {
    /// `r` goes to port 0 (left, lower zones), `1 - r` to port 1.
    #[default]
    Left,
    /// `r` goes to port 1 (right), `1 - r` to port 0.
    Right,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum NodeKind<S> {
    Source {
        wavelength: Wavelength,
    },
    Splitter {
        ratio: Option<S>,
        convention: RatioConvention,
    },
    Crossing {
        /// Unordered, stored ascending.
        pair: [Wavelength; 2],
    },
    Output {
        zone: Zone,
        wavelength: Wavelength,
    },
}

impl<S> NodeKind<S> {
    pub fn name(&self) -> &'static str {
        match self {
            NodeKind::Source { .. } => "source",
            NodeKind::Splitter { .. } => "splitter",
            NodeKind::Crossing { .. } => "crossing",
            NodeKind::Output { .. } => "output",
        }
    }

    pub fn in_ports(&self) -> u8 {
        match self {
            NodeKind::Source { .. } => 0,
            NodeKind::Splitter { .. } | NodeKind::Output { .. } => 1,
            NodeKind::Crossing { .. } => 2,
        }
    }

    pub fn out_ports(&self) -> u8 {
        match self {
            NodeKind::Source { .. } => 1,
            NodeKind::Splitter { .. } | NodeKind::Crossing { .. } => 2,
            NodeKind::Output { .. } => 0,
        }
    }

    pub fn crossing(a: Wavelength, b: Wavelength) -> Self {
        NodeKind::Crossing {
            pair: [a.min(b), a.max(b)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node<S> {
    pub id: NodeId,
    pub kind: NodeKind<S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PortRef {
    pub node: NodeId,
    pub port: u8,
}

impl PortRef {
    pub fn new(node: NodeId, port: u8) -> Self {
        Self { node, port }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "S: Deserialize<'de>"))]
pub struct Edge<S> {
    pub from: PortRef,
    pub to: PortRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<S>,
}

/// How many outputs each (wavelength, zone) pair must receive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanEntry {
    pub wavelength: Wavelength,
    pub zone: Zone,
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DeliveryPlan {
    entries: Vec<PlanEntry>,
}

impl DeliveryPlan {
    /// Every wavelength to every zone once.
    pub fn uniform(m: u32, n: u32) -> Self {
        let mut plan = Self::default();
        for mu in 1..=m {
            for nu in 1..=n {
                plan.add(Wavelength(mu), Zone(nu), 1);
            }
        }
        plan
    }

    pub fn add(&mut self, wavelength: Wavelength, zone: Zone, count: u32) {
        if count == 0 {
            return;
        }
        match self
            .entries
            .binary_search_by_key(&(wavelength, zone), |e| (e.wavelength, e.zone))
        {
            Ok(i) => self.entries[i].count += count,
            Err(i) => self.entries.insert(
                i,
                PlanEntry {
                    wavelength,
                    zone,
                    count,
                },
            ),
        }
    }

    pub fn count(&self, wavelength: Wavelength, zone: Zone) -> u32 {
        self.entries
            .binary_search_by_key(&(wavelength, zone), |e| (e.wavelength, e.zone))
            .map(|i| self.entries[i].count)
            .unwrap_or(0)
    }

    pub fn entries(&self) -> &[PlanEntry] {
        &self.entries
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| u64::from(e.count)).sum()
    }

    pub fn zones_for(&self, wavelength: Wavelength) -> impl Iterator<Item = Zone> + '_ {
        self.entries
            .iter()
            .filter(move |e| e.wavelength == wavelength)
            .map(|e| e.zone)
    }
}

/// A delivery circuit for `m` wavelengths and `n` zones.
///
/// Node identifiers equal their index in [`Netlist::nodes`]; synthesizers
/// assign them in construction order so that two syntheses of the same spec
/// are identical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Netlist<S = f64> {
    pub m: u32,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    pub plan: DeliveryPlan,
    pub nodes: Vec<Node<S>>,
    pub edges: Vec<Edge<S>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    In,
    Out,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::In => "in",
            Direction::Out => "out",
        })
    }
}

/// One broken netlist invariant, with the offending identifiers.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NodeIdMismatch {
        index: usize,
        id: NodeId,
    },
    DanglingEdge {
        edge: usize,
        node: NodeId,
    },
    BadPort {
        edge: usize,
        node: NodeId,
        port: u8,
        direction: Direction,
    },
    Degree {
        node: NodeId,
        kind: &'static str,
        direction: Direction,
        expected: u8,
        found: usize,
    },
    PortConflict {
        node: NodeId,
        direction: Direction,
        port: u8,
        edges: usize,
    },
    Cycle {
        nodes: Vec<NodeId>,
    },
    SourceCount {
        wavelength: Wavelength,
        count: usize,
    },
    UnknownWavelength {
        node: NodeId,
        wavelength: Wavelength,
    },
    ZoneOutOfRange {
        node: NodeId,
        zone: Zone,
    },
    RatioOutOfRange {
        node: NodeId,
        ratio: f64,
    },
    SameWavelengthCrossing {
        node: NodeId,
        wavelength: Wavelength,
    },
    CrossingPair {
        node: NodeId,
        declared: [Wavelength; 2],
        arriving: [Wavelength; 2],
    },
    WavelengthContinuity {
        node: NodeId,
        expected: Wavelength,
        found: Wavelength,
    },
    PlanMismatch {
        wavelength: Wavelength,
        zone: Zone,
        planned: u32,
        found: u32,
    },
    NegativeLength {
        edge: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            NodeIdMismatch { index, id } => write!(f, "node at index {index} carries id {id}"),
            DanglingEdge { edge, node } => write!(f, "edge {edge} references missing node {node}"),
            BadPort {
                edge,
                node,
                port,
                direction,
            } => {
                write!(
                    f,
                    "edge {edge} uses nonexistent {direction} port {port} of node {node}"
                )
            }
            Degree {
                node,
                kind,
                direction,
                expected,
                found,
            } => write!(
                f,
                "{kind} {node} has {direction}-degree {found}, expected {expected}"
            ),
            PortConflict {
                node,
                direction,
                port,
                edges,
            } => {
                write!(
                    f,
                    "{direction} port {port} of node {node} has {edges} edges"
                )
            }
            Cycle { nodes } => write!(
                f,
                "cycle through {} node(s) starting at {}",
                nodes.len(),
                nodes[0]
            ),
            SourceCount { wavelength, count } => {
                write!(f, "wavelength {wavelength} has {count} sources, expected 1")
            }
            UnknownWavelength { node, wavelength } => {
                write!(
                    f,
                    "node {node} refers to wavelength {wavelength} outside 1..=m"
                )
            }
            ZoneOutOfRange { node, zone } => {
                write!(f, "output {node} targets zone {zone} outside 1..=n")
            }
            RatioOutOfRange { node, ratio } => {
                write!(f, "splitter {node} has ratio {ratio} outside (0, 1)")
            }
            SameWavelengthCrossing { node, wavelength } => {
                write!(
                    f,
                    "crossing {node} crosses wavelength {wavelength} with itself"
                )
            }
            CrossingPair {
                node,
                declared,
                arriving,
            } => write!(
                f,
                "crossing {node} declares ({}, {}) but carries ({}, {})",
                declared[0], declared[1], arriving[0], arriving[1]
            ),
            WavelengthContinuity {
                node,
                expected,
                found,
            } => write!(
                f,
                "output {node} expects {expected} but is fed from the {found} source"
            ),
            PlanMismatch {
                wavelength,
                zone,
                planned,
                found,
            } => write!(
                f,
                "{wavelength} at {zone}: planned {planned} output(s), found {found}"
            ),
            NegativeLength { edge } => write!(f, "edge {edge} has a negative or NaN length"),
        }
    }
}

/// Port-indexed adjacency plus a topological order; built only for netlists
/// whose ports are well formed.
#[derive(Debug, Clone)]
pub(crate) struct Topology {
    pub in_edge: Vec<[Option<usize>; 2]>,
    pub out_edge: Vec<[Option<usize>; 2]>,
    pub order: Vec<NodeId>,
}

impl<S: Scalar> Netlist<S> {
    pub fn node(&self, id: NodeId) -> &Node<S> {
        &self.nodes[id.index()]
    }

    pub fn splitters(&self) -> impl Iterator<Item = &Node<S>> {
        self.nodes
            .iter()
            .filter(|n| matches!(n.kind, NodeKind::Splitter { .. }))
    }

    pub fn crossings(&self) -> impl Iterator<Item = &Node<S>> {
        self.nodes
            .iter()
            .filter(|n| matches!(n.kind, NodeKind::Crossing { .. }))
    }

    pub fn outputs(&self) -> impl Iterator<Item = &Node<S>> {
        self.nodes
            .iter()
            .filter(|n| matches!(n.kind, NodeKind::Output { .. }))
    }

    pub fn source(&self, wavelength: Wavelength) -> Option<NodeId> {
        self.nodes.iter().find_map(|n| match n.kind {
            NodeKind::Source { wavelength: w } if w == wavelength => Some(n.id),
            _ => None,
        })
    }

    pub fn splitter_count(&self) -> usize {
        self.splitters().count()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings().count()
    }

    pub fn ratio(&self, id: NodeId) -> Option<S> {
        match self.node(id).kind {
            NodeKind::Splitter { ratio, .. } => ratio,
            _ => None,
        }
    }

    /// Sets one splitter's ratio; does nothing for other node kinds.
    pub fn set_ratio(&mut self, id: NodeId, value: S) {
        if let NodeKind::Splitter { ratio, .. } = &mut self.nodes[id.index()].kind {
            *ratio = Some(value);
        }
    }

    pub fn clear_ratios(&mut self) {
        for node in &mut self.nodes {
            if let NodeKind::Splitter { ratio, .. } = &mut node.kind {
                *ratio = None;
            }
        }
    }

    pub fn has_all_ratios(&self) -> bool {
        self.splitters()
            .all(|n| matches!(n.kind, NodeKind::Splitter { ratio: Some(_), .. }))
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_netlist(self)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidNetlist(violations))
        }
    }

    /// Adjacency and topological order. Fails on any structural violation.
    pub(crate) fn topology(&self) -> Result<Topology> {
        let (topo, violations) = self.structure();
        match topo {
            Some(t) if violations.is_empty() => Ok(t),
            _ => Err(Error::InvalidNetlist(violations)),
        }
    }

    fn structure(&self) -> (Option<Topology>, Vec<Violation>) {
        let mut v = Vec::new();
        let count = self.nodes.len();
        for (index, node) in self.nodes.iter().enumerate() {
            if node.id.index() != index {
                v.push(Violation::NodeIdMismatch { index, id: node.id });
            }
        }
        if !v.is_empty() {
            return (None, v);
        }

        let mut in_lists: Vec<[Vec<usize>; 2]> = vec![[Vec::new(), Vec::new()]; count];
        let mut out_lists: Vec<[Vec<usize>; 2]> = vec![[Vec::new(), Vec::new()]; count];
        for (e, edge) in self.edges.iter().enumerate() {
            let mut ok = true;
            for (end, dir) in [(edge.from, Direction::Out), (edge.to, Direction::In)] {
                if end.node.index() >= count {
                    v.push(Violation::DanglingEdge {
                        edge: e,
                        node: end.node,
                    });
                    ok = false;
                    continue;
                }
                let kind = &self.nodes[end.node.index()].kind;
                let ports = match dir {
                    Direction::In => kind.in_ports(),
                    Direction::Out => kind.out_ports(),
                };
                if end.port >= ports {
                    v.push(Violation::BadPort {
                        edge: e,
                        node: end.node,
                        port: end.port,
                        direction: dir,
                    });
                    ok = false;
                }
            }
            if let Some(len) = edge.length {
                if len.is_nan() || len < S::zero() {
                    v.push(Violation::NegativeLength { edge: e });
                }
            }
            if ok {
                out_lists[edge.from.node.index()][edge.from.port as usize].push(e);
                in_lists[edge.to.node.index()][edge.to.port as usize].push(e);
            }
        }

        let mut in_edge = vec![[None, None]; count];
        let mut out_edge = vec![[None, None]; count];
        for node in &self.nodes {
            let i = node.id.index();
            for (dir, lists, expected) in [
                (Direction::In, &in_lists[i], node.kind.in_ports()),
                (Direction::Out, &out_lists[i], node.kind.out_ports()),
            ] {
                let found: usize = lists.iter().map(Vec::len).sum();
                if found != expected as usize {
                    v.push(Violation::Degree {
                        node: node.id,
                        kind: node.kind.name(),
                        direction: dir,
                        expected,
                        found,
                    });
                    continue;
                }
                for port in 0..expected {
                    let edges = lists[port as usize].len();
                    if edges != 1 {
                        v.push(Violation::PortConflict {
                            node: node.id,
                            direction: dir,
                            port,
                            edges,
                        });
                    }
                }
            }
            for p in 0..2 {
                if in_lists[i][p].len() == 1 {
                    in_edge[i][p] = Some(in_lists[i][p][0]);
                }
                if out_lists[i][p].len() == 1 {
                    out_edge[i][p] = Some(out_lists[i][p][0]);
                }
            }
        }

        // Kahn's algorithm over all recorded edges.
        let mut indegree: Vec<usize> = in_lists
            .iter()
            .map(|list| list.iter().map(Vec::len).sum())
            .collect();
        let mut queue: VecDeque<usize> = (0..count).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(count);
        while let Some(i) = queue.pop_front() {
            order.push(NodeId(i as u32));
            for p in &out_lists[i] {
                for &e in p {
                    let j = self.edges[e].to.node.index();
                    indegree[j] -= 1;
                    if indegree[j] == 0 {
                        queue.push_back(j);
                    }
                }
            }
        }
        if order.len() != count {
            let nodes: Vec<NodeId> = (0..count)
                .filter(|&i| indegree[i] > 0)
                .map(|i| NodeId(i as u32))
                .collect();
            v.push(Violation::Cycle { nodes });
            return (None, v);
        }

        (
            Some(Topology {
                in_edge,
                out_edge,
                order,
            }),
            v,
        )
    }
}

/// Every violated netlist invariant; empty when the netlist is valid.
pub fn validate_netlist<S: Scalar>(netlist: &Netlist<S>) -> Vec<Violation> {
    let (topo, mut v) = netlist.structure();

    let m = netlist.m;
    let mut sources = vec![0usize; m as usize];
    let mut outputs: BTreeMap<(Wavelength, Zone), u32> = BTreeMap::new();
    for node in &netlist.nodes {
        match &node.kind {
            NodeKind::Source { wavelength } => {
                if wavelength.0 == 0 || wavelength.0 > m {
                    v.push(Violation::UnknownWavelength {
                        node: node.id,
                        wavelength: *wavelength,
                    });
                } else {
                    sources[wavelength.0 as usize - 1] += 1;
                }
            }
            NodeKind::Splitter { ratio: Some(r), .. } => {
                if !(*r > S::zero() && *r < S::one()) {
                    v.push(Violation::RatioOutOfRange {
                        node: node.id,
                        ratio: r.as_f64(),
                    });
                }
            }
            NodeKind::Splitter { ratio: None, .. } => {}
            NodeKind::Crossing { pair } => {
                for w in pair {
                    if w.0 == 0 || w.0 > m {
                        v.push(Violation::UnknownWavelength {
                            node: node.id,
                            wavelength: *w,
                        });
                    }
                }
                if pair[0] == pair[1] {
                    v.push(Violation::SameWavelengthCrossing {
                        node: node.id,
                        wavelength: pair[0],
                    });
                }
            }
            NodeKind::Output { zone, wavelength } => {
                if wavelength.0 == 0 || wavelength.0 > m {
                    v.push(Violation::UnknownWavelength {
                        node: node.id,
                        wavelength: *wavelength,
                    });
                }
                if zone.0 == 0 || zone.0 > netlist.n {
                    v.push(Violation::ZoneOutOfRange {
                        node: node.id,
                        zone: *zone,
                    });
                }
                *outputs.entry((*wavelength, *zone)).or_default() += 1;
            }
        }
    }
    for (i, &count) in sources.iter().enumerate() {
        if count != 1 {
            v.push(Violation::SourceCount {
                wavelength: Wavelength(i as u32 + 1),
                count,
            });
        }
    }

    let mut keys: Vec<(Wavelength, Zone)> = outputs.keys().copied().collect();
    keys.extend(
        netlist
            .plan
            .entries()
            .iter()
            .map(|e| (e.wavelength, e.zone)),
    );
    keys.sort();
    keys.dedup();
    for (wavelength, zone) in keys {
        let planned = netlist.plan.count(wavelength, zone);
        let found = outputs.get(&(wavelength, zone)).copied().unwrap_or(0);
        if planned != found {
            v.push(Violation::PlanMismatch {
                wavelength,
                zone,
                planned,
                found,
            });
        }
    }

    if let Some(topo) = topo {
        check_wavelength_flow(netlist, &topo, &mut v);
    }
    v
}

/// Labels every edge with the wavelength it carries and checks crossings and
/// outputs against those labels.
fn check_wavelength_flow<S: Scalar>(netlist: &Netlist<S>, topo: &Topology, v: &mut Vec<Violation>) {
    let mut label: Vec<Option<Wavelength>> = vec![None; netlist.edges.len()];
    let incoming = |label: &[Option<Wavelength>], node: usize, port: usize| {
        topo.in_edge[node][port].and_then(|e| label[e])
    };
    for &id in &topo.order {
        let i = id.index();
        let (out0, out1) = match &netlist.nodes[i].kind {
            NodeKind::Source { wavelength } => (Some(*wavelength), None),
            NodeKind::Splitter { .. } => {
                let w = incoming(&label, i, 0);
                (w, w)
            }
            NodeKind::Crossing { pair } => {
                let a = incoming(&label, i, 0);
                let b = incoming(&label, i, 1);
                if let (Some(a), Some(b)) = (a, b) {
                    let arriving = [a.min(b), a.max(b)];
                    if arriving != *pair {
                        v.push(Violation::CrossingPair {
                            node: id,
                            declared: *pair,
                            arriving,
                        });
                    }
                }
                (b, a)
            }
            NodeKind::Output { wavelength, .. } => {
                if let Some(found) = incoming(&label, i, 0) {
                    if found != *wavelength {
                        v.push(Violation::WavelengthContinuity {
                            node: id,
                            expected: *wavelength,
                            found,
                        });
                    }
                }
                (None, None)
            }
        };
        if let Some(e) = topo.out_edge[i][0] {
            label[e] = out0;
        }
        if let Some(e) = topo.out_edge[i][1] {
            label[e] = out1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(a: u32, ap: u8, b: u32, bp: u8) -> Edge<f64> {
        Edge {
            from: PortRef::new(NodeId(a), ap),
            to: PortRef::new(NodeId(b), bp),
            length: None,
        }
    }

    fn node(id: u32, kind: NodeKind<f64>) -> Node<f64> {
        Node {
            id: NodeId(id),
            kind,
        }
    }

    fn splitter() -> NodeKind<f64> {
        NodeKind::Splitter {
            ratio: None,
            convention: RatioConvention::Left,
        }
    }

    #[test]
    fn splitter_with_one_output_is_named() {
        // source -> splitter -(port 0 only)-> output
        let netlist = Netlist {
            m: 1,
            n: 1,
            method: None,
            plan: DeliveryPlan::uniform(1, 1),
            nodes: vec![
                node(
                    0,
                    NodeKind::Source {
                        wavelength: Wavelength(1),
                    },
                ),
                node(1, splitter()),
                node(
                    2,
                    NodeKind::Output {
                        zone: Zone(1),
                        wavelength: Wavelength(1),
                    },
                ),
            ],
            edges: vec![edge(0, 0, 1, 0), edge(1, 0, 2, 0)],
        };
        let v = netlist.validate();
        assert_eq!(
            v,
            vec![Violation::Degree {
                node: NodeId(1),
                kind: "splitter",
                direction: Direction::Out,
                expected: 2,
                found: 1
            }]
        );
    }

    #[test]
    fn output_fed_by_wrong_source() {
        // plan: λ1 at zones 1 and 2, λ2 at zone 1.
        let mut plan = DeliveryPlan::default();
        plan.add(Wavelength(1), Zone(1), 1);
        plan.add(Wavelength(1), Zone(2), 1);
        plan.add(Wavelength(2), Zone(1), 1);
        // λ1 goes straight to (z1, λ1); λ2 is split into (z1, λ2) and the
        // output labelled (z2, λ1).
        let netlist = Netlist {
            m: 2,
            n: 2,
            method: None,
            plan,
            nodes: vec![
                node(
                    0,
                    NodeKind::Source {
                        wavelength: Wavelength(1),
                    },
                ),
                node(
                    1,
                    NodeKind::Source {
                        wavelength: Wavelength(2),
                    },
                ),
                node(2, splitter()),
                node(
                    3,
                    NodeKind::Output {
                        zone: Zone(1),
                        wavelength: Wavelength(1),
                    },
                ),
                node(
                    4,
                    NodeKind::Output {
                        zone: Zone(1),
                        wavelength: Wavelength(2),
                    },
                ),
                node(
                    5,
                    NodeKind::Output {
                        zone: Zone(2),
                        wavelength: Wavelength(1),
                    },
                ),
            ],
            edges: vec![
                edge(0, 0, 3, 0),
                edge(1, 0, 2, 0),
                edge(2, 0, 4, 0),
                edge(2, 1, 5, 0),
            ],
        };
        assert_eq!(
            netlist.validate(),
            vec![Violation::WavelengthContinuity {
                node: NodeId(5),
                expected: Wavelength(1),
                found: Wavelength(2)
            }]
        );
    }

    #[test]
    fn cycles_are_reported() {
        let netlist = Netlist {
            m: 1,
            n: 1,
            method: None,
            plan: DeliveryPlan::uniform(1, 1),
            nodes: vec![
                node(
                    0,
                    NodeKind::Source {
                        wavelength: Wavelength(1),
                    },
                ),
                node(1, NodeKind::crossing(Wavelength(1), Wavelength(1))),
                node(
                    2,
                    NodeKind::Output {
                        zone: Zone(1),
                        wavelength: Wavelength(1),
                    },
                ),
            ],
            // crossing feeds itself on port 1
            edges: vec![edge(0, 0, 1, 0), edge(1, 1, 1, 1), edge(1, 0, 2, 0)],
        };
        let v = netlist.validate();
        assert!(v.iter().any(|x| matches!(x, Violation::Cycle { .. })));
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::SameWavelengthCrossing { .. })));
        assert!(netlist.topology().is_err());
    }

    #[test]
    fn plan_and_sources_are_checked() {
        let netlist: Netlist<f64> = Netlist {
            m: 2,
            n: 1,
            method: None,
            plan: DeliveryPlan::uniform(2, 1),
            nodes: vec![
                node(
                    0,
                    NodeKind::Source {
                        wavelength: Wavelength(1),
                    },
                ),
                node(
                    1,
                    NodeKind::Output {
                        zone: Zone(1),
                        wavelength: Wavelength(1),
                    },
                ),
            ],
            edges: vec![edge(0, 0, 1, 0)],
        };
        let v = netlist.validate();
        assert!(v.contains(&Violation::SourceCount {
            wavelength: Wavelength(2),
            count: 0
        }));
        assert!(v.contains(&Violation::PlanMismatch {
            wavelength: Wavelength(2),
            zone: Zone(1),
            planned: 1,
            found: 0
        }));
    }

    #[test]
    fn bad_ratio_and_port() {
        let mut netlist: Netlist<f64> = Netlist {
            m: 1,
            n: 2,
            method: None,
            plan: DeliveryPlan::uniform(1, 2),
            nodes: vec![
                node(
                    0,
                    NodeKind::Source {
                        wavelength: Wavelength(1),
                    },
                ),
                node(
                    1,
                    NodeKind::Splitter {
                        ratio: Some(1.5),
                        convention: RatioConvention::Left,
                    },
                ),
                node(
                    2,
                    NodeKind::Output {
                        zone: Zone(1),
                        wavelength: Wavelength(1),
                    },
                ),
                node(
                    3,
                    NodeKind::Output {
                        zone: Zone(2),
                        wavelength: Wavelength(1),
                    },
                ),
            ],
            edges: vec![edge(0, 0, 1, 0), edge(1, 0, 2, 0), edge(1, 1, 3, 0)],
        };
        assert_eq!(
            netlist.validate(),
            vec![Violation::RatioOutOfRange {
                node: NodeId(1),
                ratio: 1.5
            }]
        );
        netlist.set_ratio(NodeId(1), 0.5);
        assert!(netlist.validate().is_empty());
        netlist.edges[2].from.port = 3;
        assert!(netlist
            .validate()
            .iter()
            .any(|x| matches!(x, Violation::BadPort { edge: 2, .. })));
    }

    #[test]
    fn plan_accumulates_counts() {
        let mut plan = DeliveryPlan::default();
        plan.add(Wavelength(2), Zone(1), 1);
        plan.add(Wavelength(1), Zone(3), 2);
        plan.add(Wavelength(2), Zone(1), 1);
        plan.add(Wavelength(3), Zone(1), 0);
        assert_eq!(plan.count(Wavelength(2), Zone(1)), 2);
        assert_eq!(plan.total(), 4);
        assert_eq!(plan.entries()[0].wavelength, Wavelength(1));
        assert_eq!(DeliveryPlan::uniform(3, 4).total(), 12);
    }
}
