use ionphot::analysis::{
    block_chain_outputs, bubble_path_crossings, table1_counts, total_t_block, total_t_bubble,
    total_t_bubble_with, total_t_bus, BubbleModel,
};
use ionphot::capacity::{max_zones, TransmissionSource};
use ionphot::letters::LetterOp;
use ionphot::powerflow::{assign_chain_ratios, propagate, solve_ratios};
use ionphot::synthesis::{
    element_counts, path_profiles, synth_blockwise, synth_bus, BlockwiseOrder,
};
use ionphot::{
    db_to_linear, synthesize, CircuitSpec, LossModel, Method, SynthOptions, Wavelength, Zone,
};

fn paper_loss() -> LossModel<f64> {
    LossModel::from_db(-0.22, -0.1).unwrap()
}

fn synth(m: u32, n: u32, method: Method) -> ionphot::Synthesis<f64> {
    synthesize(
        &CircuitSpec::new(m, n, method).unwrap(),
        &SynthOptions::default(),
    )
    .unwrap()
}

/// Replays the letters-game log with every letter tagged by the splits and
/// swaps it has been through.
fn replay_tags(initial: &[Wavelength], ops: &[LetterOp]) -> Vec<(Wavelength, u32, u32)> {
    let mut tags: Vec<(Wavelength, u32, u32)> = initial.iter().map(|&w| (w, 0, 0)).collect();
    for op in ops {
        match *op {
            LetterOp::Split(p) => {
                tags[p].1 += 1;
                let copy = tags[p];
                tags.insert(p + 1, copy);
            }
            LetterOp::Swap(p) => {
                tags[p].2 += 1;
                tags[p + 1].2 += 1;
                tags.swap(p, p + 1);
            }
        }
    }
    tags
}

#[test]
fn decibel_conversions() {
    assert!((db_to_linear(-0.22f64).unwrap() - 0.95060).abs() < 1e-5);
    assert!((db_to_linear(-0.1f64).unwrap() - 0.97724).abs() < 1e-5);
}

#[test]
fn bubble_counts_match_table() {
    for m in 1..=7 {
        for n in 1..=32 {
            let c = element_counts(&synth(m, n, Method::BubbleSort).netlist).unwrap();
            let t = table1_counts(m, n, Method::BubbleSort).unwrap();
            assert_eq!(c.total_splitters as f64, t.total_splitters, "m={m} n={n}");
            assert_eq!(c.total_crossings as f64, t.total_crossings, "m={m} n={n}");
            assert_eq!(
                f64::from(c.max_crossings_per_path),
                t.max_crossings,
                "m={m} n={n}"
            );
            assert_eq!(
                c.max_splitters_per_path,
                n.next_power_of_two().trailing_zeros(),
                "m={m} n={n}"
            );
        }
    }
}

#[test]
fn three_by_four_bubble() {
    let c = element_counts(&synth(3, 4, Method::BubbleSort).netlist).unwrap();
    assert_eq!((c.total_splitters, c.total_crossings), (9, 18));
}

#[test]
fn blockwise_counts() {
    for m in 1..=7u32 {
        for n in 2..=32u32 {
            let c = element_counts(&synth(m, n, Method::BlockwiseDuplication).netlist).unwrap();
            let t = table1_counts(m, n, Method::BlockwiseDuplication).unwrap();
            assert_eq!(c.total_splitters as f64, t.total_splitters);
            assert_eq!(
                f64::from(c.max_crossings_per_path),
                t.max_crossings,
                "m={m} n={n}"
            );
            assert_eq!(c.max_splitters_per_path, n.div_ceil(2), "m={m} n={n}");
            // each of the n−1 duplications sorts AABB.. into ABAB.. with m(m−1)/2 swaps
            assert_eq!(
                c.total_crossings as u32,
                m * (m - 1) / 2 * (n - 1),
                "m={m} n={n}"
            );
        }
    }
}

#[test]
fn bus_counts_and_lengths() {
    let syn = synth_bus::<f64>(
        &CircuitSpec::new(2, 3, Method::CrossingFreeBus).unwrap(),
        2.5,
    )
    .unwrap();
    let c = element_counts(&syn.netlist).unwrap();
    assert_eq!(
        (
            c.total_splitters,
            c.total_crossings,
            c.max_splitters_per_path
        ),
        (4, 0, 2)
    );
    let profiles = path_profiles(&syn.netlist).unwrap();
    for p in &profiles {
        let expected_taps = p.zone.0.min(2);
        assert_eq!(p.num_splitters, expected_taps);
        let expected_len = f64::from(p.zone.0 - 1) * 2.5;
        assert_eq!(p.path_length.unwrap_or(0.0), expected_len, "{p:?}");
    }
    let z3 = profiles.iter().find(|p| p.zone == Zone(3)).unwrap();
    assert_eq!(z3.path_length, Some(5.0));
}

#[test]
fn graph_paths_agree_with_replayed_log() {
    for method in [Method::BubbleSort, Method::BlockwiseDuplication] {
        for (m, n) in [(1, 5), (2, 3), (3, 4), (4, 7), (5, 8)] {
            let syn = synth(m, n, method);
            let tags = replay_tags(syn.sequence.initial_letters(), syn.sequence.ops());
            let profiles = path_profiles(&syn.netlist).unwrap();
            for (k, &(w, splits, swaps)) in tags.iter().enumerate() {
                let zone = Zone(k as u32 / m + 1);
                let p = profiles
                    .iter()
                    .find(|p| p.zone == zone && p.wavelength == w)
                    .unwrap();
                assert_eq!(
                    (p.num_splitters, p.num_crossings),
                    (splits, swaps),
                    "{method} m={m} n={n} k={k}"
                );
            }
        }
    }
}

#[test]
fn bubble_path_crossings_count_inversions() {
    for m in 1..=6 {
        for n in 1..=12 {
            let profiles = path_profiles(&synth(m, n, Method::BubbleSort).netlist).unwrap();
            for p in profiles {
                let expected = bubble_path_crossings(p.wavelength.0, p.zone.0, m, n).unwrap();
                assert_eq!(u64::from(p.num_crossings), expected, "m={m} n={n} {p:?}");
            }
        }
    }
}

#[test]
fn replay_reaches_target() {
    for method in [Method::BubbleSort, Method::BlockwiseDuplication] {
        for m in 1..=5 {
            for n in 1..=9 {
                let syn = synth(m, n, method);
                let target = ionphot::target_sequence(m, n).unwrap();
                assert_eq!(syn.sequence.replay().unwrap(), target.letters());
            }
        }
    }
}

#[test]
fn graph_bubble_equals_exact_closed_form() {
    let loss = paper_loss();
    for m in 1..=6 {
        for n in 1..=20 {
            let net = solve_ratios(&synth(m, n, Method::BubbleSort).netlist, &loss).unwrap();
            let graph = propagate(&net, &loss).unwrap().total_transmission;
            let closed = total_t_bubble_with(m, n, &loss, BubbleModel::GRAPH_EXACT).unwrap();
            assert!(
                (graph - closed).abs() < 1e-12,
                "m={m} n={n} {graph} {closed}"
            );
        }
    }
}

#[test]
fn bubble_closed_form_is_exact_for_two_wavelengths() {
    let loss = paper_loss();
    for m in 1..=2 {
        for n in [2, 4, 8, 16, 32] {
            let net = solve_ratios(&synth(m, n, Method::BubbleSort).netlist, &loss).unwrap();
            let graph = propagate(&net, &loss).unwrap().total_transmission;
            assert!((graph - total_t_bubble(m, n, &loss).unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn equalization_survives_extreme_fractions() {
    // some splitters here send almost nothing to one side
    let loss = LossModel::from_db(-0.8738, -0.4153).unwrap();
    let net = solve_ratios(&synth(7, 26, Method::BubbleSort).netlist, &loss).unwrap();
    let report = propagate(&net, &loss).unwrap();
    for mu in 1..=7 {
        assert!(
            report.spread(Wavelength(mu)) < 1e-13,
            "λ{mu}: {}",
            report.spread(Wavelength(mu))
        );
    }
}

#[test]
fn rightward_chain_matches_closed_form() {
    let loss = LossModel::from_db(-0.3, -0.15).unwrap();
    for m in 1..=5 {
        for n in 2..=12 {
            let spec = CircuitSpec::new(m, n, Method::BlockwiseDuplication).unwrap();
            let net = synth_blockwise::<f64>(&spec, BlockwiseOrder::Rightward)
                .unwrap()
                .netlist;
            let net = assign_chain_ratios(&net, &loss).unwrap();
            let report = propagate(&net, &loss).unwrap();
            for mu in 1..=m {
                let expected = block_chain_outputs(mu, m, n, &loss).unwrap();
                for nu in 1..=n {
                    let got = report.power(Wavelength(mu), Zone(nu));
                    assert!(
                        (got - expected[nu as usize - 1]).abs() < 1e-12,
                        "m={m} n={n} μ={mu} ν={nu}"
                    );
                }
            }
        }
    }
}

#[test]
fn graph_bus_equals_closed_form() {
    let loss = LossModel::<f64>::from_db(-0.22, -0.1)
        .unwrap()
        .with_propagation_db(-0.02, 3.0)
        .unwrap();
    for m in 1..=4 {
        for n in 1..=15 {
            let spec = CircuitSpec::new(m, n, Method::CrossingFreeBus).unwrap();
            let net = synth_bus(&spec, loss.zone_pitch()).unwrap().netlist;
            let t = propagate(&solve_ratios(&net, &loss).unwrap(), &loss)
                .unwrap()
                .total_transmission;
            assert!((t - total_t_bus(m, n, &loss).unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn paper_loss_values() {
    let loss = paper_loss();
    let cases: [(u32, f64, f64); 3] = [
        (2, 0.92817, 0.97682),
        (4, 0.83070, 0.86291),
        (100, 0.00945, 0.08126),
    ];
    for (n, bubble, block) in cases {
        assert!(
            (total_t_bubble(3, n, &loss).unwrap() - bubble).abs() < 1e-5,
            "n={n}"
        );
        assert!(
            (total_t_block(3, n, &loss).unwrap() - block).abs() < 1e-5,
            "n={n}"
        );
    }
}

#[test]
fn paper_loss_capacity() {
    let loss = paper_loss();
    let block = max_zones(
        500.0,
        3,
        Method::BlockwiseDuplication,
        &loss,
        TransmissionSource::ClosedForm,
    )
    .unwrap();
    assert_eq!(block, 69);
    let bubble = max_zones(
        500.0,
        3,
        Method::BubbleSort,
        &loss,
        TransmissionSource::ClosedForm,
    )
    .unwrap();
    assert_eq!(bubble, 47);
}
