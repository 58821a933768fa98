//! Closed-form element counts and total power transmissions.
//!
//! These formulas are evaluated independently of any netlist; the
//! [`powerflow`](crate::powerflow) module computes the same quantities on
//! explicit graphs, and the two are compared in tests.

mod block;
mod bubble;
mod bus;
mod surface;

pub use block::{block_chain_outputs, blockwise_ratios, t_block, total_t_block, BlockRatios};
pub use bubble::{
    bubble_crossing_count, bubble_path_crossings, bubble_split_fractions,
    bubble_split_fractions_with, bubble_tree_depths, t_bubble, t_bubble_with, total_t_bubble,
    total_t_bubble_with, BubbleModel, CrossingExponent, SplitFractions, SplitterDepth,
};
pub use bus::total_t_bus;
pub use surface::{
    transmission_surface, ContourPoint, SurfacePoint, SweepAxis, SweepSpec, TransmissionSurface,
};

use crate::error::Result;
use crate::loss::LossModel;
use crate::scalar::Scalar;
use crate::spec::{check_at_least, Method};

/// Element counts from the closed forms. `max_splitters` is real valued
/// because the bubble tree depth is quoted as `log2 n`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClosedFormCounts {
    pub total_splitters: f64,
    pub max_splitters: f64,
    pub total_crossings: f64,
    pub max_crossings: f64,
}

pub fn table1_counts(m: u32, n: u32, method: Method) -> Result<ClosedFormCounts> {
    check_at_least("m", m, 1)?;
    check_at_least("n", n, 1)?;
    if n == 1 {
        return Ok(ClosedFormCounts::default());
    }
    let (mf, nf) = (f64::from(m), f64::from(n));
    let total_splitters = mf * (nf - 1.0);
    Ok(match method {
        Method::BubbleSort => ClosedFormCounts {
            total_splitters,
            max_splitters: nf.log2(),
            total_crossings: mf * (mf - 1.0) * nf * (nf - 1.0) / 4.0,
            max_crossings: (mf - 1.0) * (nf - 1.0),
        },
        Method::BlockwiseDuplication => ClosedFormCounts {
            total_splitters,
            max_splitters: nf / 2.0,
            total_crossings: mf * (mf - 1.0) * nf / 2.0,
            max_crossings: (mf - 1.0) * f64::from(n.div_ceil(2)),
        },
        Method::CrossingFreeBus => ClosedFormCounts {
            total_splitters,
            max_splitters: nf - 1.0,
            total_crossings: 0.0,
            max_crossings: 0.0,
        },
    })
}

/// Closed-form total transmission for any method, with the bubble formula
/// evaluated under the given model.
pub fn total_transmission<S: Scalar>(
    m: u32,
    n: u32,
    method: Method,
    loss: &LossModel<S>,
    bubble: BubbleModel,
) -> Result<S> {
    match method {
        Method::BubbleSort => total_t_bubble_with(m, n, loss, bubble),
        Method::BlockwiseDuplication => total_t_block(m, n, loss),
        Method::CrossingFreeBus => total_t_bus(m, n, loss),
    }
}
