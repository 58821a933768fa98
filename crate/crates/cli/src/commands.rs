//! One function per subcommand. Each returns the files it would write, in a
//! fixed order, so output is byte-stable for a given config.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use ionphot::analysis::{table1_counts, total_transmission, transmission_surface, BubbleModel};
use ionphot::capacity::{
    capacity_curve, ion_capacity, limiting_budget, max_zones, max_zones_for_budget,
};
use ionphot::powerflow::{assign_chain_ratios, compare_methods, propagate, solve_ratios};
use ionphot::srdesign::{synth_casestudy, CaseStudyOptions};
use ionphot::synthesis::{element_counts, path_profiles, synth_blockwise};
use ionphot::{BlockwiseOrder, CircuitSpec, LossModel, Method, Netlist, NodeKind};

use crate::config::{Format, RunConfig};
use crate::export::{count, sig9, text_table, write_dot, write_graph, Csv};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

impl Artifact {
    fn new(name: &str, contents: String) -> Self {
        Self {
            name: name.to_string(),
            contents,
        }
    }
}

pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    artifacts
        .iter()
        .map(|a| {
            let path = dir.join(&a.name);
            fs::write(&path, &a.contents).with_context(|| format!("writing {}", path.display()))?;
            Ok(path)
        })
        .collect()
}

fn loss_line(loss: &LossModel<f64>, config: &RunConfig) -> String {
    let mut s = format!(
        "eta_x={} dB ({}) eta_y={} dB ({})",
        sig9(config.loss.eta_x_db),
        sig9(loss.eta_x()),
        sig9(config.loss.eta_y_db),
        sig9(loss.eta_y())
    );
    if config.loss.propagation_db_per_unit != 0.0 {
        s.push_str(&format!(
            " propagation={} dB/unit pitch={}",
            sig9(config.loss.propagation_db_per_unit),
            sig9(config.circuit.zone_pitch)
        ));
    }
    for o in &config.loss.crossing_override {
        s.push_str(&format!(
            " eta_x[{},{}]={} dB",
            o.pair[0],
            o.pair[1],
            sig9(o.eta_db)
        ));
    }
    s
}

fn netlist_exports(
    config: &RunConfig,
    stem: &str,
    netlist: &Netlist<f64>,
    out: &mut Vec<Artifact>,
) -> Result<()> {
    if config.output.wants(Format::Graph) {
        out.push(Artifact::new(
            &format!("{stem}.json"),
            write_graph(netlist)?,
        ));
    }
    if config.output.wants(Format::Digraph) {
        out.push(Artifact::new(
            &format!("{stem}.dot"),
            write_dot(netlist, stem),
        ));
    }
    Ok(())
}

fn opt(x: Option<f64>) -> String {
    x.map(sig9).unwrap_or_default()
}

pub fn synth(config: &RunConfig) -> Result<Vec<Artifact>> {
    let spec = config.circuit_spec()?;
    let loss = config.loss_model()?;
    let syn = ionphot::synthesize(&spec, &config.synth_options())?;
    let solved = solve_ratios(&syn.netlist, &loss)?;
    let report = propagate(&solved, &loss)?;
    let counts = element_counts(&solved)?;
    let closed = table1_counts(spec.m(), spec.n(), spec.method())?;

    let mut out = Vec::new();
    netlist_exports(config, "netlist", &solved, &mut out)?;
    if config.output.wants(Format::Table) {
        let mut s = String::new();
        writeln!(s, "method={} m={} n={}", spec.method(), spec.m(), spec.n())?;
        writeln!(
            s,
            "N_Y={} N_X={}",
            counts.total_splitters, counts.total_crossings
        )?;
        writeln!(
            s,
            "n_Y_max={} n_X_max={}",
            counts.max_splitters_per_path, counts.max_crossings_per_path
        )?;
        writeln!(
            s,
            "closed form: N_Y={} N_X={} n_Y_max={} n_X_max={}",
            count(closed.total_splitters),
            count(closed.total_crossings),
            count(closed.max_splitters),
            count(closed.max_crossings)
        )?;
        writeln!(s, "loss: {}", loss_line(&loss, config))?;
        writeln!(s, "T={}", sig9(report.total_transmission))?;
        writeln!(s)?;
        let rows: Vec<Vec<String>> = path_profiles(&solved)?
            .iter()
            .zip(&report.per_output)
            .map(|(p, o)| {
                vec![
                    p.wavelength.0.to_string(),
                    p.zone.0.to_string(),
                    p.num_splitters.to_string(),
                    p.num_crossings.to_string(),
                    sig9(p.path_length.unwrap_or(0.0)),
                    sig9(o.power),
                ]
            })
            .collect();
        s.push_str(&text_table(
            &[
                "wavelength",
                "zone",
                "splitters",
                "crossings",
                "length",
                "power",
            ],
            &rows,
        ));
        out.push(Artifact::new("summary.txt", s));
    }
    Ok(out)
}

pub fn analyze(config: &RunConfig) -> Result<Vec<Artifact>> {
    let (m, n) = (config.circuit.m, config.circuit.n);
    let loss = config.loss_model()?;
    let options = config.synth_options();
    let netlists: Vec<Netlist<f64>> = Method::ALL
        .iter()
        .map(|&method| Ok(ionphot::synthesize(&CircuitSpec::new(m, n, method)?, &options)?.netlist))
        .collect::<Result<_>>()?;
    let comparisons = compare_methods(&netlists, &loss, BubbleModel::PAPER)?;

    let mut csv = Csv::new(&[
        "method",
        "N_Y",
        "N_X",
        "n_Y_max",
        "n_X_max",
        "closed_N_Y",
        "closed_N_X",
        "closed_n_Y_max",
        "closed_n_X_max",
        "T_graph",
        "T_closed",
        "rel_deviation",
        "T_closed_exact",
    ]);
    let mut rows = Vec::new();
    for (net, cmp) in netlists.iter().zip(&comparisons) {
        let method = net.method.expect("synthesized netlists carry their method");
        let counts = element_counts(net)?;
        let closed = table1_counts(m, n, method)?;
        let exact = match method {
            Method::BubbleSort => Some(total_transmission(
                m,
                n,
                method,
                &loss,
                BubbleModel::GRAPH_EXACT,
            )?),
            Method::BlockwiseDuplication => None,
            Method::CrossingFreeBus => cmp.t_closed,
        };
        let cells = vec![
            method.short_name().to_string(),
            counts.total_splitters.to_string(),
            counts.total_crossings.to_string(),
            counts.max_splitters_per_path.to_string(),
            counts.max_crossings_per_path.to_string(),
            count(closed.total_splitters),
            count(closed.total_crossings),
            count(closed.max_splitters),
            count(closed.max_crossings),
            sig9(cmp.t_graph),
            opt(cmp.t_closed),
            opt(cmp.rel_deviation),
            opt(exact),
        ];
        csv.row(&cells);
        rows.push(cells);
    }

    // the rightward chain with closed-form ratios reproduces the blockwise per-zone outputs
    let chain_spec = CircuitSpec::new(m, n, Method::BlockwiseDuplication)?;
    let chain = synth_blockwise::<f64>(&chain_spec, BlockwiseOrder::Rightward)?.netlist;
    let chain_t = if n >= 2 {
        Some(propagate(&assign_chain_ratios(&chain, &loss)?, &loss)?)
    } else {
        None
    };

    let mut out = Vec::new();
    if config.output.wants(Format::Table) {
        out.push(Artifact::new("analyze.csv", csv.finish()));
        let mut s = String::new();
        writeln!(s, "m={m} n={n}")?;
        writeln!(s, "loss: {}", loss_line(&loss, config))?;
        writeln!(s)?;
        s.push_str(&text_table(
            &[
                "method",
                "N_Y",
                "N_X",
                "n_Y_max",
                "n_X_max",
                "closed_N_Y",
                "closed_N_X",
                "closed_n_Y_max",
                "closed_n_X_max",
                "T_graph",
                "T_closed",
                "rel_dev",
                "T_exact",
            ],
            &rows,
        ));
        if let Some(report) = chain_t {
            writeln!(s)?;
            writeln!(
                s,
                "blockwise chain with closed-form ratios, per-zone power:"
            )?;
            let rows: Vec<Vec<String>> = report
                .per_output
                .iter()
                .map(|o| {
                    vec![
                        o.wavelength.0.to_string(),
                        o.zone.0.to_string(),
                        sig9(o.power),
                    ]
                })
                .collect();
            s.push_str(&text_table(&["wavelength", "zone", "power"], &rows));
        }
        out.push(Artifact::new("analyze.txt", s));
    }
    Ok(out)
}

pub fn sweep(config: &RunConfig) -> Result<Vec<Artifact>> {
    let surface = transmission_surface(&config.sweep_spec())?;
    let mut grid = Csv::new(&["n", "eta_db", "T_bubble", "T_block"]);
    for p in &surface.points {
        grid.row(&[
            p.n.to_string(),
            sig9(p.eta_db),
            sig9(p.t_bubble),
            sig9(p.t_block),
        ]);
    }
    let mut contour = Csv::new(&["n", "eta_db"]);
    for c in &surface.contour {
        contour.row(&[c.n.to_string(), sig9(c.eta_db)]);
    }
    Ok(vec![
        Artifact::new("sweep.csv", grid.finish()),
        Artifact::new("contour.csv", contour.finish()),
    ])
}

pub fn capacity(config: &RunConfig) -> Result<Vec<Artifact>> {
    let loss = config.loss_model()?;
    let source = config.transmission_source();
    let cap = &config.capacity;
    let pair = [Method::BubbleSort, Method::BlockwiseDuplication];

    let mut header = vec!["n".to_string()];
    let mut columns = Vec::new();
    for &m in &cap.m_values {
        for method in pair {
            let name = if method == Method::BubbleSort {
                "bubble"
            } else {
                "block"
            };
            header.push(format!("{name}_m{m}"));
            columns.push(capacity_curve(m, method, &loss, cap.n_max, source)?);
        }
    }
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut curve = Csv::new(&header_refs);
    for i in 0..cap.n_max as usize {
        let mut cells = vec![(i + 1).to_string()];
        cells.extend(columns.iter().map(|c| sig9(c[i].required_ratio)));
        curve.row(&cells);
    }

    let budgets = config.budgets();
    let limiting = limiting_budget(&budgets).map(|b| b.wavelength_nm);
    let ions = cap.ions_per_zone[0]..=cap.ions_per_zone[1];
    let mut rows = Vec::new();
    for b in &budgets {
        let mut cells = vec![
            b.wavelength_nm.to_string(),
            sig9(b.required_mw),
            sig9(b.available_mw),
            sig9(b.ratio()),
            b.ideal_zones().to_string(),
        ];
        for method in Method::ALL {
            cells.push(max_zones_for_budget(b, cap.m, method, &loss, source)?.to_string());
        }
        cells.push(
            if Some(b.wavelength_nm) == limiting {
                "limiting"
            } else {
                ""
            }
            .to_string(),
        );
        rows.push(cells);
    }

    let mut s = String::new();
    writeln!(s, "loss: {}", loss_line(&loss, config))?;
    writeln!(s, "transmission: {:?}, m={}", source, cap.m)?;
    writeln!(s)?;
    let m = cap.m;
    let h = [
        "nm".to_string(),
        "required_mw".to_string(),
        "available_mw".to_string(),
        "ratio".to_string(),
        "ideal".to_string(),
        format!("bubble_m{m}"),
        format!("block_m{m}"),
        format!("bus_m{m}"),
        String::new(),
    ];
    let h: Vec<&str> = h.iter().map(String::as_str).collect();
    s.push_str(&text_table(&h, &rows));
    if let Some(b) = budgets.iter().find(|b| Some(b.wavelength_nm) == limiting) {
        let zones = b.ideal_zones();
        let r = ion_capacity(zones, ions.clone());
        writeln!(s)?;
        writeln!(
            s,
            "limiting wavelength: {} nm, ideal delivery {} zones, {}..={} ions",
            b.wavelength_nm,
            zones,
            r.start(),
            r.end()
        )?;
    }
    for &ratio in &cap.ratios {
        writeln!(s)?;
        writeln!(s, "ratio {}:", sig9(ratio))?;
        for method in Method::ALL {
            let zones = max_zones(ratio, m, method, &loss, source)?;
            let r = ion_capacity(zones, ions.clone());
            writeln!(
                s,
                "  {:<9} {} zones, {}..={} ions",
                method.short_name(),
                zones,
                r.start(),
                r.end()
            )?;
        }
    }

    Ok(vec![
        Artifact::new("capacity_curve.csv", curve.finish()),
        Artifact::new("capacity.txt", s),
    ])
}

pub fn casestudy(config: &RunConfig) -> Result<Vec<Artifact>> {
    let cs_cfg = &config.casestudy;
    let loss = config.loss_model()?;
    let roster = config.roster()?;
    let options = CaseStudyOptions {
        loading_zone: cs_cfg.loading_zone,
        solo_multiplicity: cs_cfg.solo_multiplicity,
        synth: config.synth_options(),
    };
    let cs = synth_casestudy(&roster, cs_cfg.n, cs_cfg.method, &loss, &options)?;

    let mut out = Vec::new();
    netlist_exports(config, "casestudy", &cs.netlist, &mut out)?;
    if config.output.wants(Format::Table) {
        let mut s = String::new();
        writeln!(
            s,
            "method={} n={} loading_zone={}",
            cs_cfg.method, cs_cfg.n, cs_cfg.loading_zone
        )?;
        writeln!(s, "loss: {}", loss_line(&loss, config))?;
        let nm = |r: &ionphot::srdesign::WavelengthRole| r.wavelength_nm.to_string();
        let g = &cs.groups;
        writeln!(
            s,
            "{} side: solo {} + loading {}",
            g.solo_side(),
            g.solo.as_ref().map(nm).unwrap_or_else(|| "-".into()),
            g.loading.iter().map(nm).collect::<Vec<_>>().join(" ")
        )?;
        writeln!(
            s,
            "{} side: {}",
            g.shared_side(),
            g.shared.iter().map(nm).collect::<Vec<_>>().join(" ")
        )?;
        let all = element_counts(&cs.netlist)?;
        writeln!(
            s,
            "composite: N_Y={} N_X={}",
            all.total_splitters, all.total_crossings
        )?;
        if let Some(shared) = &cs.shared_netlist {
            let c = element_counts(shared)?;
            let t = table1_counts(shared.m, shared.n, cs_cfg.method)?;
            writeln!(
                s,
                "shared group m={}: N_Y={} N_X={} n_X_max={} (closed form N_Y={} N_X={} n_X_max={})",
                shared.m,
                c.total_splitters,
                c.total_crossings,
                c.max_crossings_per_path,
                count(t.total_splitters),
                count(t.total_crossings),
                count(t.max_crossings)
            )?;
        }
        let profiles = path_profiles(&cs.netlist)?;
        writeln!(s)?;
        let rows: Vec<Vec<String>> = cs
            .lines
            .iter()
            .map(|l| {
                let crossings = profiles
                    .iter()
                    .filter(|p| p.wavelength == l.wavelength)
                    .map(|p| p.num_crossings)
                    .max()
                    .unwrap_or(0);
                vec![
                    l.wavelength_nm.to_string(),
                    l.role.to_string(),
                    l.side.to_string(),
                    l.outputs.to_string(),
                    crossings.to_string(),
                    l.worst_zone.0.to_string(),
                    sig9(l.worst_transmission),
                    sig9(l.delivered_mw),
                    sig9(l.required_mw),
                    if l.sufficient { "yes" } else { "no" }.to_string(),
                ]
            })
            .collect();
        s.push_str(&text_table(
            &[
                "nm",
                "role",
                "side",
                "outputs",
                "max_crossings",
                "worst_zone",
                "worst_T",
                "delivered_mw",
                "required_mw",
                "ok",
            ],
            &rows,
        ));
        out.push(Artifact::new("casestudy.txt", s));
    }
    Ok(out)
}

/// Splitter ratios of a netlist, for checks in tests.
pub fn ratios(netlist: &Netlist<f64>) -> Vec<Option<f64>> {
    netlist
        .nodes
        .iter()
        .filter_map(|n| match n.kind {
            NodeKind::Splitter { ratio, .. } => Some(ratio),
            _ => None,
        })
        .collect()
}
