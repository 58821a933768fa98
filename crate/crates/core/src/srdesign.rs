//! Strontium-ion delivery chip: six lasers, two access sides.
//!
//! The per-zone lasers are split into two groups fed from opposite sides.
//! The most power-hungry one gets a side to itself, so its paths carry no
//! crossings; the rest are rearranged together on the other side. The two
//! photoionization lasers are only needed in one loading zone and are wired
//! straight to it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::loss::LossModel;
use crate::netlist::{DeliveryPlan, Edge, Netlist, Node, NodeId, NodeKind, PortRef};
use crate::powerflow::{propagate, solve_ratios, TransmissionReport};
use crate::scalar::Scalar;
use crate::spec::{check_at_least, check_index, CircuitSpec, Method, Wavelength, Zone};
use crate::synthesis::{synthesize, SynthOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Photoionization,
    CoolingDetection,
    Repump,
    Qubit,
    Quench,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Photoionization => "photoionization",
            Role::CoolingDetection => "cooling/detection",
            Role::Repump => "repump",
            Role::Qubit => "qubit",
            Role::Quench => "quench",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Top,
    Bottom,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Top => "top",
            Side::Bottom => "bottom",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavelengthRole {
    pub wavelength_nm: u32,
    pub role: Role,
    /// Needed in every zone, as opposed to the loading zone only.
    pub per_zone: bool,
    pub required_mw: f64,
    pub available_mw: f64,
    /// Filled in by [`assign_groups`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
}

impl WavelengthRole {
    pub fn new(
        wavelength_nm: u32,
        role: Role,
        per_zone: bool,
        required_mw: f64,
        available_mw: f64,
    ) -> Self {
        Self {
            wavelength_nm,
            role,
            per_zone,
            required_mw,
            available_mw,
            side: None,
        }
    }
}

pub fn strontium_roster() -> Vec<WavelengthRole> {
    vec![
        WavelengthRole::new(405, Role::Photoionization, false, 0.1, 10.0),
        WavelengthRole::new(461, Role::Photoionization, false, 0.1, 200.0),
        WavelengthRole::new(422, Role::CoolingDetection, true, 0.1, 50.0),
        WavelengthRole::new(1092, Role::Repump, true, 0.1, 50.0),
        WavelengthRole::new(674, Role::Qubit, true, 10.0, 300.0),
        WavelengthRole::new(1033, Role::Quench, true, 0.1, 50.0),
    ]
}

/// Per-zone lasers split over the two sides, plus the loading-only lasers.
#[derive(Debug, Clone, PartialEq)]
pub struct SideGroups {
    /// Alone on the top side.
    pub solo: Option<WavelengthRole>,
    /// Rearranged together on the bottom side, in roster order.
    pub shared: Vec<WavelengthRole>,
    /// Wired to the loading zone from the solo side.
    pub loading: Vec<WavelengthRole>,
}

impl SideGroups {
    pub fn solo_side(&self) -> Side {
        Side::Top
    }

    pub fn shared_side(&self) -> Side {
        Side::Bottom
    }
}

/// The per-zone laser with the highest requirement goes solo; ties go to
/// the shorter wavelength.
pub fn assign_groups(roster: &[WavelengthRole]) -> Result<SideGroups> {
    if roster.is_empty() {
        return Err(Error::EmptyRoster);
    }
    let solo_nm = roster
        .iter()
        .filter(|r| r.per_zone)
        .reduce(|best, r| {
            let higher = r.required_mw > best.required_mw;
            let tie_shorter =
                r.required_mw == best.required_mw && r.wavelength_nm < best.wavelength_nm;
            if higher || tie_shorter {
                r
            } else {
                best
            }
        })
        .map(|r| r.wavelength_nm);
    let mut groups = SideGroups {
        solo: None,
        shared: Vec::new(),
        loading: Vec::new(),
    };
    for r in roster {
        let mut r = r.clone();
        if !r.per_zone {
            r.side = Some(Side::Top);
            groups.loading.push(r);
        } else if Some(r.wavelength_nm) == solo_nm && groups.solo.is_none() {
            r.side = Some(Side::Top);
            groups.solo = Some(r);
        } else {
            r.side = Some(Side::Bottom);
            groups.shared.push(r);
        }
    }
    Ok(groups)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseStudyOptions<S> {
    pub loading_zone: u32,
    /// Outputs per zone for the solo laser.
    pub solo_multiplicity: u32,
    pub synth: SynthOptions<S>,
}

impl<S: Scalar> Default for CaseStudyOptions<S> {
    fn default() -> Self {
        Self {
            loading_zone: 1,
            solo_multiplicity: 1,
            synth: SynthOptions::default(),
        }
    }
}

/// Delivery figures for one laser of the composite chip.
#[derive(Debug, Clone, PartialEq)]
pub struct LaserLine<S> {
    pub wavelength_nm: u32,
    /// Index in the composite netlist.
    pub wavelength: Wavelength,
    pub role: Role,
    pub side: Side,
    pub outputs: usize,
    pub worst_zone: Zone,
    /// Fraction of the launched power reaching the weakest output.
    pub worst_transmission: S,
    pub delivered_mw: S,
    pub required_mw: S,
    pub sufficient: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseStudy<S> {
    pub groups: SideGroups,
    /// Composite circuit with solved ratios; wavelength `k` is roster entry `k−1`.
    pub netlist: Netlist<S>,
    pub report: TransmissionReport<S>,
    pub lines: Vec<LaserLine<S>>,
    /// The shared group's circuit on its own, as synthesized.
    pub shared_netlist: Option<Netlist<S>>,
    pub solo_netlist: Option<Netlist<S>>,
}

/// Copies `part` into `whole`, renaming wavelength `k` to `wavelengths[k−1]`
/// and every output zone through `zone`.
fn append<S: Scalar>(
    whole: &mut Netlist<S>,
    part: &Netlist<S>,
    wavelengths: &[Wavelength],
    zone: impl Fn(Zone) -> Zone,
) {
    let offset = whole.nodes.len() as u32;
    let w = |x: Wavelength| wavelengths[x.0 as usize - 1];
    for node in &part.nodes {
        let kind = match &node.kind {
            NodeKind::Source { wavelength } => NodeKind::Source {
                wavelength: w(*wavelength),
            },
            NodeKind::Splitter { ratio, convention } => NodeKind::Splitter {
                ratio: *ratio,
                convention: *convention,
            },
            NodeKind::Crossing { pair } => NodeKind::crossing(w(pair[0]), w(pair[1])),
            NodeKind::Output {
                zone: z,
                wavelength,
            } => NodeKind::Output {
                zone: zone(*z),
                wavelength: w(*wavelength),
            },
        };
        whole.nodes.push(Node {
            id: NodeId(node.id.0 + offset),
            kind,
        });
    }
    let shift = |p: PortRef| PortRef::new(NodeId(p.node.0 + offset), p.port);
    for e in &part.edges {
        whole.edges.push(Edge {
            from: shift(e.from),
            to: shift(e.to),
            length: e.length,
        });
    }
}

/// Builds the two-sided chip for `n` zones, solves its ratios and propagates
/// unit power from every laser.
pub fn synth_casestudy<S: Scalar>(
    roster: &[WavelengthRole],
    n: u32,
    method: Method,
    loss: &LossModel<S>,
    options: &CaseStudyOptions<S>,
) -> Result<CaseStudy<S>> {
    check_at_least("n", n, 1)?;
    check_index("loading zone", options.loading_zone, n)?;
    check_at_least("solo multiplicity", options.solo_multiplicity, 1)?;
    let groups = assign_groups(roster)?;
    let global = |nm: u32| {
        let k = roster
            .iter()
            .position(|r| r.wavelength_nm == nm)
            .expect("grouped from this roster");
        Wavelength(k as u32 + 1)
    };

    let mut whole = Netlist {
        m: roster.len() as u32,
        n,
        method: None,
        plan: DeliveryPlan::default(),
        nodes: Vec::new(),
        edges: Vec::new(),
    };

    let solo_netlist = match &groups.solo {
        Some(solo) => {
            let k = options.solo_multiplicity;
            let spec = CircuitSpec::new(1, n * k, method)?;
            let part = synthesize(&spec, &options.synth)?.netlist;
            let wl = global(solo.wavelength_nm);
            append(&mut whole, &part, &[wl], |z| Zone((z.0 - 1) / k + 1));
            for nu in 1..=n {
                whole.plan.add(wl, Zone(nu), k);
            }
            Some(part)
        }
        None => None,
    };

    let shared_netlist = if groups.shared.is_empty() {
        None
    } else {
        let spec = CircuitSpec::new(groups.shared.len() as u32, n, method)?;
        let part = synthesize(&spec, &options.synth)?.netlist;
        let map: Vec<Wavelength> = groups
            .shared
            .iter()
            .map(|r| global(r.wavelength_nm))
            .collect();
        append(&mut whole, &part, &map, |z| z);
        for &wl in &map {
            for nu in 1..=n {
                whole.plan.add(wl, Zone(nu), 1);
            }
        }
        Some(part)
    };

    for r in &groups.loading {
        let wl = global(r.wavelength_nm);
        let src = NodeId(whole.nodes.len() as u32);
        whole.nodes.push(Node {
            id: src,
            kind: NodeKind::Source { wavelength: wl },
        });
        let out = NodeId(whole.nodes.len() as u32);
        whole.nodes.push(Node {
            id: out,
            kind: NodeKind::Output {
                zone: Zone(options.loading_zone),
                wavelength: wl,
            },
        });
        whole.edges.push(Edge {
            from: PortRef::new(src, 0),
            to: PortRef::new(out, 0),
            length: None,
        });
        whole.plan.add(wl, Zone(options.loading_zone), 1);
    }

    let netlist = solve_ratios(&whole, loss)?;
    let report = propagate(&netlist, loss)?;
    let mut lines = Vec::new();
    for (k, r) in roster.iter().enumerate() {
        let wl = Wavelength(k as u32 + 1);
        let worst = report
            .worst_output(wl)
            .expect("every roster laser has an output");
        let side = groups
            .solo
            .iter()
            .chain(&groups.shared)
            .chain(&groups.loading)
            .find(|g| g.wavelength_nm == r.wavelength_nm)
            .and_then(|g| g.side)
            .expect("every roster laser is grouped");
        let delivered = worst.power * S::lit(r.available_mw);
        let required = S::lit(r.required_mw);
        lines.push(LaserLine {
            wavelength_nm: r.wavelength_nm,
            wavelength: wl,
            role: r.role,
            side,
            outputs: report.outputs_for(wl).count(),
            worst_zone: worst.zone,
            worst_transmission: worst.power,
            delivered_mw: delivered,
            required_mw: required,
            sufficient: delivered >= required,
        });
    }

    Ok(CaseStudy {
        groups,
        netlist,
        report,
        lines,
        shared_netlist,
        solo_netlist,
    })
}
