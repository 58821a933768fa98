//! Power propagation through a netlist and splitter-ratio solving.

use rand::Rng;

use crate::analysis::{blockwise_ratios, total_transmission, BubbleModel};
use crate::error::{Error, Result};
use crate::loss::LossModel;
use crate::netlist::{Netlist, NodeId, NodeKind, RatioConvention, Topology};
use crate::scalar::Scalar;
use crate::spec::{Method, Wavelength, Zone};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputPower<S> {
    pub wavelength: Wavelength,
    pub zone: Zone,
    pub node: NodeId,
    pub power: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionReport<S> {
    /// In node order.
    pub per_output: Vec<OutputPower<S>>,
    /// Power summed over the outputs of each wavelength; index `μ−1`.
    pub per_wavelength_total: Vec<S>,
    /// Mean over wavelengths of delivered over launched power.
    pub total_transmission: S,
}

impl<S: Scalar> TransmissionReport<S> {
    /// Summed power of all outputs for this wavelength in this zone.
    pub fn power(&self, wavelength: Wavelength, zone: Zone) -> S {
        self.per_output
            .iter()
            .filter(|o| o.wavelength == wavelength && o.zone == zone)
            .map(|o| o.power)
            .sum()
    }

    pub fn outputs_for(&self, wavelength: Wavelength) -> impl Iterator<Item = &OutputPower<S>> {
        self.per_output
            .iter()
            .filter(move |o| o.wavelength == wavelength)
    }

    /// Weakest single output of a wavelength.
    pub fn worst_output(&self, wavelength: Wavelength) -> Option<&OutputPower<S>> {
        self.outputs_for(wavelength)
            .min_by(|a, b| a.power.partial_cmp(&b.power).expect("powers are finite"))
    }

    /// `(max − min) / max` over the outputs of a wavelength.
    pub fn spread(&self, wavelength: Wavelength) -> S {
        let mut lo = S::infinity();
        let mut hi = S::zero();
        for o in self.outputs_for(wavelength) {
            lo = lo.min(o.power);
            hi = hi.max(o.power);
        }
        if hi == S::zero() {
            S::zero()
        } else {
            (hi - lo) / hi
        }
    }
}

/// Full propagation result: power on every edge and where it was lost.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerFlow<S> {
    /// Power launched into each edge at its tail.
    pub edge_power: Vec<S>,
    /// Loss inside each splitter and crossing; zero elsewhere.
    pub node_dissipation: Vec<S>,
    /// Propagation loss along each edge.
    pub edge_dissipation: Vec<S>,
    pub inputs: Vec<S>,
    pub report: TransmissionReport<S>,
}

impl<S: Scalar> PowerFlow<S> {
    pub fn total_input(&self) -> S {
        self.inputs.iter().copied().sum()
    }

    pub fn total_output(&self) -> S {
        self.report.per_output.iter().map(|o| o.power).sum()
    }

    pub fn total_dissipated(&self) -> S {
        self.node_dissipation.iter().copied().sum::<S>()
            + self.edge_dissipation.iter().copied().sum::<S>()
    }
}

fn edge_transmission<S: Scalar>(netlist: &Netlist<S>, loss: &LossModel<S>, e: usize) -> S {
    netlist.edges[e]
        .length
        .map_or_else(S::one, |len| loss.propagation(len))
}

fn split<S: Scalar>(ratio: S, convention: RatioConvention) -> (S, S) {
    match convention {
        RatioConvention::Left => (ratio, S::one() - ratio),
        RatioConvention::Right => (S::one() - ratio, ratio),
    }
}

/// Unit power into every source.
pub fn propagate<S: Scalar>(
    netlist: &Netlist<S>,
    loss: &LossModel<S>,
) -> Result<TransmissionReport<S>> {
    let inputs = vec![S::one(); netlist.m as usize];
    Ok(propagate_with_inputs(netlist, loss, &inputs)?.report)
}

/// Propagates `inputs[μ−1]` from each source. Every splitter must carry a
/// ratio.
pub fn propagate_with_inputs<S: Scalar>(
    netlist: &Netlist<S>,
    loss: &LossModel<S>,
    inputs: &[S],
) -> Result<PowerFlow<S>> {
    netlist.ensure_valid()?;
    if inputs.len() != netlist.m as usize {
        return Err(Error::InputCount {
            expected: netlist.m as usize,
            found: inputs.len(),
        });
    }
    let topo = netlist.topology()?;
    let edges = netlist.edges.len();
    let mut edge_power = vec![S::zero(); edges];
    let mut edge_dissipation = vec![S::zero(); edges];
    let mut node_dissipation = vec![S::zero(); netlist.nodes.len()];
    let mut per_output = Vec::new();

    let arriving = |edge_power: &[S], i: usize, port: usize| {
        let e = topo.in_edge[i][port].expect("validated netlist has every input connected");
        edge_power[e] * edge_transmission(netlist, loss, e)
    };

    for &id in &topo.order {
        let i = id.index();
        let launched: [S; 2] = match netlist.nodes[i].kind {
            NodeKind::Source { wavelength } => [inputs[wavelength.0 as usize - 1], S::zero()],
            NodeKind::Splitter { ratio, convention } => {
                let ratio = ratio.ok_or(Error::UnassignedRatio(id))?;
                let p = arriving(&edge_power, i, 0);
                let through = p * loss.eta_y();
                node_dissipation[i] = p - through;
                let (left, right) = split(ratio, convention);
                [through * left, through * right]
            }
            NodeKind::Crossing { pair } => {
                let eta = loss.crossing_transmission(pair[0], pair[1]);
                let a = arriving(&edge_power, i, 0);
                let b = arriving(&edge_power, i, 1);
                node_dissipation[i] = (a + b) * (S::one() - eta);
                [b * eta, a * eta]
            }
            NodeKind::Output { zone, wavelength } => {
                per_output.push(OutputPower {
                    wavelength,
                    zone,
                    node: id,
                    power: arriving(&edge_power, i, 0),
                });
                continue;
            }
        };
        for (edge, power) in topo.out_edge[i].into_iter().zip(launched) {
            if let Some(e) = edge {
                edge_power[e] = power;
                edge_dissipation[e] = power * (S::one() - edge_transmission(netlist, loss, e));
            }
        }
    }
    per_output.sort_by_key(|o| o.node);

    let mut per_wavelength_total = vec![S::zero(); netlist.m as usize];
    for o in &per_output {
        per_wavelength_total[o.wavelength.0 as usize - 1] += o.power;
    }
    let mut ratio_sum = S::zero();
    for (total, &input) in per_wavelength_total.iter().zip(inputs) {
        if input > S::zero() {
            ratio_sum += *total / input;
        }
    }
    let report = TransmissionReport {
        per_output,
        per_wavelength_total,
        total_transmission: ratio_sum / S::from_count(netlist.m.max(1) as usize),
    };
    Ok(PowerFlow {
        edge_power,
        node_dissipation,
        edge_dissipation,
        inputs: inputs.to_vec(),
        report,
    })
}

/// Chooses every splitter ratio so that all outputs of a wavelength receive
/// the same power.
///
/// Works leaf to root: an output needs one unit, an edge needs its head's
/// demand divided by its transmission, a crossing passes demand through
/// divided by its `η`, and a splitter needs `(D_left + D_right) / η_Y` with
/// ratio `D_left / (D_left + D_right)`. Existing ratios are overwritten, and
/// each splitter's convention is switched to name its weaker output.
pub fn solve_ratios<S: Scalar>(netlist: &Netlist<S>, loss: &LossModel<S>) -> Result<Netlist<S>> {
    netlist.ensure_valid()?;
    let topo = netlist.topology()?;
    let demand = demands(netlist, loss, &topo)?;
    let mut solved = netlist.clone();
    for node in &mut solved.nodes {
        if let NodeKind::Splitter { ratio, convention } = &mut node.kind {
            let i = node.id.index();
            let [dl, dr] =
                topo.out_edge[i].map(|e| demand[e.expect("validated splitter has two outputs")]);
            let sum = dl + dr;
            if !(dl > S::zero() && dr > S::zero() && sum.is_finite()) {
                return Err(Error::DegenerateSubtree(node.id));
            }
            // store the weaker branch so that 1 − r stays exact for the stronger one
            if dl <= dr {
                *ratio = Some(dl / sum);
                *convention = RatioConvention::Left;
            } else {
                *ratio = Some(dr / sum);
                *convention = RatioConvention::Right;
            }
        }
    }
    Ok(solved)
}

/// Demand at the tail of every edge, per unit delivered to each output.
fn demands<S: Scalar>(
    netlist: &Netlist<S>,
    loss: &LossModel<S>,
    topo: &Topology,
) -> Result<Vec<S>> {
    let mut demand = vec![S::zero(); netlist.edges.len()];
    for &id in topo.order.iter().rev() {
        let i = id.index();
        let out = |port: usize| {
            demand[topo.out_edge[i][port].expect("validated netlist has every output connected")]
        };
        let at_inputs: [S; 2] = match netlist.nodes[i].kind {
            NodeKind::Source { .. } => continue,
            NodeKind::Output { .. } => [S::one(), S::zero()],
            NodeKind::Splitter { .. } => [(out(0) + out(1)) / loss.eta_y(), S::zero()],
            NodeKind::Crossing { pair } => {
                let eta = loss.crossing_transmission(pair[0], pair[1]);
                [out(1) / eta, out(0) / eta]
            }
        };
        for (edge, d) in topo.in_edge[i].into_iter().zip(at_inputs) {
            if let Some(e) = edge {
                demand[e] = d / edge_transmission(netlist, loss, e);
            }
        }
    }
    Ok(demand)
}

/// Multiplies every ratio by `1 + amplitude·u`, `u` uniform in `[−1, 1]`,
/// then clamps into the open interval.
pub fn jitter_ratios<S: Scalar, R: Rng + ?Sized>(
    netlist: &Netlist<S>,
    amplitude: S,
    rng: &mut R,
) -> Result<Netlist<S>> {
    if !(amplitude >= S::zero() && amplitude < S::one()) {
        return Err(Error::InvalidRange(format!(
            "jitter amplitude {amplitude} outside [0, 1)"
        )));
    }
    let lo = S::epsilon();
    let hi = S::one() - S::epsilon();
    let mut out = netlist.clone();
    for node in &mut out.nodes {
        if let NodeKind::Splitter { ratio, .. } = &mut node.kind {
            let r = ratio.ok_or(Error::UnassignedRatio(node.id))?;
            let u = S::lit(rng.random_range(-1.0..=1.0));
            *ratio = Some((r * (S::one() + amplitude * u)).max(lo).min(hi));
        }
    }
    Ok(out)
}

/// The wavelength entering each splitter, in node order.
fn splitter_wavelengths<S: Scalar>(
    netlist: &Netlist<S>,
    topo: &Topology,
) -> Vec<(NodeId, Wavelength)> {
    let mut label: Vec<Option<Wavelength>> = vec![None; netlist.edges.len()];
    let mut found = Vec::new();
    for &id in &topo.order {
        let i = id.index();
        let incoming = |port: usize| topo.in_edge[i][port].and_then(|e| label[e]);
        let out = match netlist.nodes[i].kind {
            NodeKind::Source { wavelength } => [Some(wavelength), None],
            NodeKind::Splitter { .. } => {
                let w = incoming(0);
                if let Some(w) = w {
                    found.push((id, w));
                }
                [w, w]
            }
            NodeKind::Crossing { .. } => [incoming(1), incoming(0)],
            NodeKind::Output { .. } => continue,
        };
        for (edge, w) in topo.out_edge[i].into_iter().zip(out) {
            if let Some(e) = edge {
                label[e] = w;
            }
        }
    }
    found.sort_by_key(|&(id, _)| id);
    found
}

/// Sets the closed-form chain ratios `r_1..r_{n−1}` on a blockwise netlist,
/// taking each wavelength's splitters in creation order.
///
/// Only a rightward-built netlist has the single chain these ratios are
/// derived for; on other layouts the result is valid but not equalized.
pub fn assign_chain_ratios<S: Scalar>(
    netlist: &Netlist<S>,
    loss: &LossModel<S>,
) -> Result<Netlist<S>> {
    match netlist.method {
        Some(Method::BlockwiseDuplication) => {}
        Some(found) => {
            return Err(Error::MethodMismatch {
                expected: Method::BlockwiseDuplication,
                found,
            })
        }
        None => {
            return Err(Error::InvalidRange(
                "netlist carries no method label".into(),
            ))
        }
    }
    netlist.ensure_valid()?;
    let topo = netlist.topology()?;
    let mut out = netlist.clone();
    if netlist.n < 2 {
        return Ok(out);
    }
    let labels = splitter_wavelengths(netlist, &topo);
    for mu in 1..=netlist.m {
        let ratios = blockwise_ratios(mu, netlist.m, netlist.n, loss)?.ratios;
        let ids: Vec<NodeId> = labels
            .iter()
            .filter(|&&(_, w)| w == Wavelength(mu))
            .map(|&(id, _)| id)
            .collect();
        if ids.len() != ratios.len() {
            return Err(Error::InvalidRange(format!(
                "wavelength {mu} has {} splitters, chain needs {}",
                ids.len(),
                ratios.len()
            )));
        }
        for (id, r) in ids.into_iter().zip(ratios) {
            out.set_ratio(id, r);
        }
    }
    Ok(out)
}

/// Graph transmission of one netlist next to its method's closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodComparison<S> {
    pub method: Option<Method>,
    pub m: u32,
    pub n: u32,
    /// With every output of a wavelength equalized.
    pub t_graph: S,
    pub t_closed: Option<S>,
    pub abs_deviation: Option<S>,
    pub rel_deviation: Option<S>,
    /// `n` is a power of two, so `log2 n` equals the real tree depth.
    pub log2_exact: bool,
}

/// Solves ratios (when any are missing), propagates, and sets the result
/// beside the closed form for the netlist's method.
pub fn compare_methods<S: Scalar>(
    netlists: &[Netlist<S>],
    loss: &LossModel<S>,
    bubble: BubbleModel,
) -> Result<Vec<MethodComparison<S>>> {
    netlists
        .iter()
        .map(|netlist| {
            let report = if netlist.has_all_ratios() {
                propagate(netlist, loss)?
            } else {
                propagate(&solve_ratios(netlist, loss)?, loss)?
            };
            let t_graph = report.total_transmission;
            let t_closed = match netlist.method {
                Some(method) => Some(total_transmission(
                    netlist.m, netlist.n, method, loss, bubble,
                )?),
                None => None,
            };
            let abs_deviation = t_closed.map(|t| (t_graph - t).abs());
            let rel_deviation = t_closed.zip(abs_deviation).map(|(t, d)| d / t);
            Ok(MethodComparison {
                method: netlist.method,
                m: netlist.m,
                n: netlist.n,
                t_graph,
                t_closed,
                abs_deviation,
                rel_deviation,
                log2_exact: netlist.method == Some(Method::BubbleSort)
                    && netlist.n.is_power_of_two(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::CircuitSpec;
    use crate::synthesis::{synth_blockwise, synth_bubble, synth_bus, BlockwiseOrder};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn bubble(m: u32, n: u32) -> Netlist<f64> {
        synth_bubble(&CircuitSpec::new(m, n, Method::BubbleSort).unwrap())
            .unwrap()
            .netlist
    }

    #[test]
    fn unassigned_ratio_is_reported() {
        let net = bubble(2, 2);
        assert!(matches!(
            propagate(&net, &LossModel::lossless()),
            Err(Error::UnassignedRatio(_))
        ));
    }

    #[test]
    fn wrong_input_count() {
        let net = solve_ratios(&bubble(2, 2), &LossModel::lossless()).unwrap();
        assert!(matches!(
            propagate_with_inputs(&net, &LossModel::lossless(), &[1.0]),
            Err(Error::InputCount {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn two_by_two_by_hand() {
        // λ1 splits, its right copy crosses λ2's left copy
        let (x, y) = (0.9, 0.95);
        let loss = LossModel::new(x, y).unwrap();
        let net = solve_ratios(&bubble(2, 2), &loss).unwrap();
        let report = propagate(&net, &loss).unwrap();
        let each = y / (1.0 + 1.0 / x);
        for o in &report.per_output {
            assert!((o.power - each).abs() < 1e-15, "{o:?}");
        }
        assert!((report.total_transmission - 2.0 * each).abs() < 1e-15);
    }

    #[test]
    fn conservation() {
        let loss = LossModel::new(0.93, 0.97)
            .unwrap()
            .with_propagation(0.99, 1.0)
            .unwrap();
        for net in [
            bubble(3, 5),
            synth_blockwise(
                &CircuitSpec::new(3, 5, Method::BlockwiseDuplication).unwrap(),
                BlockwiseOrder::Alternating,
            )
            .unwrap()
            .netlist,
            synth_bus(
                &CircuitSpec::new(3, 5, Method::CrossingFreeBus).unwrap(),
                2.0,
            )
            .unwrap()
            .netlist,
        ] {
            let net = solve_ratios(&net, &loss).unwrap();
            let flow = propagate_with_inputs(&net, &loss, &[1.0, 2.0, 0.5]).unwrap();
            let balance = flow.total_input() - flow.total_output() - flow.total_dissipated();
            assert!(balance.abs() < 1e-12, "{balance}");
            for mu in 1..=3 {
                assert!(flow.report.spread(Wavelength(mu)) < 1e-12);
            }
        }
    }

    #[test]
    fn right_convention_mirrors() {
        let loss = LossModel::new(0.9, 0.95).unwrap();
        let mut net = bubble(2, 2);
        for node in &mut net.nodes {
            if let NodeKind::Splitter { convention, .. } = &mut node.kind {
                *convention = RatioConvention::Right;
            }
        }
        let left = propagate(&solve_ratios(&bubble(2, 2), &loss).unwrap(), &loss).unwrap();
        let right = propagate(&solve_ratios(&net, &loss).unwrap(), &loss).unwrap();
        for (a, b) in left.per_output.iter().zip(&right.per_output) {
            assert_eq!((a.wavelength, a.zone), (b.wavelength, b.zone));
            assert!((a.power - b.power).abs() < 1e-15);
        }
    }

    #[test]
    fn jitter_is_seeded_and_bounded() {
        let net = solve_ratios(&bubble(3, 4), &LossModel::lossless()).unwrap();
        let a = jitter_ratios(&net, 0.05, &mut StdRng::seed_from_u64(7)).unwrap();
        let b = jitter_ratios(&net, 0.05, &mut StdRng::seed_from_u64(7)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, net);
        for (x, y) in net.splitters().zip(a.splitters()) {
            let (rx, ry) = (net.ratio(x.id).unwrap(), a.ratio(y.id).unwrap());
            assert!((ry / rx - 1.0).abs() <= 0.05 + 1e-15);
        }
        assert!(jitter_ratios(&net, 1.5, &mut StdRng::seed_from_u64(7)).is_err());
        assert!(jitter_ratios(&bubble(2, 2), 0.1, &mut StdRng::seed_from_u64(7)).is_err());
    }

    #[test]
    fn chain_ratios_need_blockwise() {
        assert!(assign_chain_ratios(&bubble(2, 2), &LossModel::lossless()).is_err());
    }
}
