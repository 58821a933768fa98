//! Photonic delivery circuits for multi-zone trapped-ion processors.
//!
//! `m` laser wavelengths enter on one side of a chip and must each reach
//! `n` zones, arriving in the zone order `(λ1 λ2 … λm)` repeated `n` times.
//! Circuits are built from Y-splitters and waveguide crossings. This crate
//! synthesizes such circuits three ways, counts their elements, propagates
//! power through them and estimates how many zones a laser power budget can
//! serve.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the bottom of this file fix the type to one of them.
//!
//! ```
//! use ionphot::{propagate, solve_ratios, synthesize, CircuitSpec, LossModel, Method, SynthOptions};
//!
//! let spec = CircuitSpec::new(3, 4, Method::BubbleSort)?;
//! let syn = synthesize::<f64>(&spec, &SynthOptions::default())?;
//! assert_eq!(syn.netlist.crossing_count(), 18);
//!
//! let loss = LossModel::from_db(-0.22, -0.1)?;
//! let solved = solve_ratios(&syn.netlist, &loss)?;
//! let report = propagate(&solved, &loss)?;
//! assert!(report.total_transmission < 1.0);
//! # Ok::<(), ionphot::Error>(())
//! ```

pub mod analysis;
pub mod capacity;
pub mod error;
pub mod letters;
pub mod loss;
pub mod netlist;
pub mod powerflow;
pub mod scalar;
pub mod spec;
pub mod srdesign;
pub mod synthesis;
pub mod units;

pub use analysis::{
    blockwise_ratios, bubble_crossing_count, bubble_split_fractions, t_block, t_bubble,
    table1_counts, total_t_block, total_t_bubble, total_t_bus, transmission_surface, BubbleModel,
    ClosedFormCounts,
};
pub use capacity::{capacity_curve, ion_capacity, max_zones, PowerBudget, TransmissionSource};
pub use error::{Error, Result};
pub use letters::{target_sequence, LetterOp, LetterSequence};
pub use loss::LossModel;
pub use netlist::{
    validate_netlist, DeliveryPlan, Edge, Netlist, Node, NodeId, NodeKind, PortRef, Violation,
};
pub use powerflow::{propagate, propagate_with_inputs, solve_ratios, TransmissionReport};
pub use scalar::Scalar;
pub use spec::{CircuitSpec, Method, Wavelength, Zone};
pub use srdesign::{strontium_roster, synth_casestudy, CaseStudy, WavelengthRole};
pub use synthesis::{synthesize, BlockwiseOrder, SynthOptions, Synthesis};
pub use units::{db_to_linear, linear_to_db};

pub type NetlistF64 = Netlist<f64>;
pub type NetlistF32 = Netlist<f32>;
pub type LossModelF64 = LossModel<f64>;
pub type LossModelF32 = LossModel<f32>;
pub type TransmissionReportF64 = TransmissionReport<f64>;
pub type TransmissionReportF32 = TransmissionReport<f32>;
pub type PowerBudgetF64 = PowerBudget<f64>;
