//! Netlist construction for the three delivery strategies.
//!
//! Bubble sort and blockwise duplication are driven by the letters game:
//! each split becomes a splitter node and each swap a crossing node, so the
//! recorded [`LetterSequence`] replays to the target arrangement. The
//! crossing-free bus only splits; each wavelength runs past every zone in
//! order.

mod builder;
mod profile;

pub use profile::{element_counts, path_profiles, ElementCounts, PathProfile};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::letters::{target_letters, LetterSequence};
use crate::netlist::Netlist;
use crate::scalar::Scalar;
use crate::spec::{CircuitSpec, Method, Wavelength, Zone};
use builder::Builder;

/// Where blocks are added after the first duplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockwiseOrder {
    /// Leftmost and rightmost ends in turn, starting on the left.
    #[default]
    Alternating,
    /// Always duplicate the rightmost block, giving a single chain in which
    /// block `ν` is split off by the `ν`-th splitter of each wavelength.
    Rightward,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthOptions<S> {
    pub blockwise_order: BlockwiseOrder,
    /// Bus length between neighbouring zones (crossing-free bus only).
    pub zone_pitch: S,
}

impl<S: Scalar> Default for SynthOptions<S> {
    fn default() -> Self {
        Self {
            blockwise_order: BlockwiseOrder::default(),
            zone_pitch: S::one(),
        }
    }
}

/// A synthesized netlist together with the letters-game log that built it.
#[derive(Debug, Clone, PartialEq)]
pub struct Synthesis<S> {
    pub netlist: Netlist<S>,
    pub sequence: LetterSequence,
}

fn expect_method(spec: &CircuitSpec, expected: Method) -> Result<()> {
    if spec.method() == expected {
        Ok(())
    } else {
        Err(Error::MethodMismatch {
            expected,
            found: spec.method(),
        })
    }
}

fn block_layout(m: u32) -> impl Fn(usize) -> (Zone, Wavelength) {
    let m = m as usize;
    move |k| (Zone((k / m) as u32 + 1), Wavelength((k % m) as u32 + 1))
}

/// Dispatches on `spec.method()`.
pub fn synthesize<S: Scalar>(
    spec: &CircuitSpec,
    options: &SynthOptions<S>,
) -> Result<Synthesis<S>> {
    match spec.method() {
        Method::BubbleSort => synth_bubble(spec),
        Method::BlockwiseDuplication => synth_blockwise(spec, options.blockwise_order),
        Method::CrossingFreeBus => synth_bus(spec, options.zone_pitch),
    }
}

/// Splits every wavelength into `n` copies with a balanced binary tree, then
/// bubble-sorts `AA…BB…CC…` into `(ABC…)^n`.
///
/// Trees are left-heavy when `n` is not a power of two, so the depth is
/// `⌈log2 n⌉`. The swap stage repeatedly brings the leftmost out-of-place
/// letter into position.
pub fn synth_bubble<S: Scalar>(spec: &CircuitSpec) -> Result<Synthesis<S>> {
    expect_method(spec, Method::BubbleSort)?;
    let (m, n) = (spec.m(), spec.n());
    let mut b = Builder::new(m);
    for mu in 0..m as usize {
        split_tree(&mut b, mu * n as usize, n as usize)?;
    }
    sort_into(&mut b, 0, &target_letters(m, n))?;
    let (netlist, sequence) = b.finish(n, Method::BubbleSort, block_layout(m));
    Ok(Synthesis { netlist, sequence })
}

fn split_tree<S: Scalar>(b: &mut Builder<S>, position: usize, leaves: usize) -> Result<()> {
    if leaves <= 1 {
        return Ok(());
    }
    b.split(position)?;
    split_tree(b, position + 1, leaves / 2)?;
    split_tree(b, position, leaves - leaves / 2)
}

/// Leftmost-out-of-place bubble sort of the window starting at `start`.
fn sort_into<S: Scalar>(b: &mut Builder<S>, start: usize, target: &[Wavelength]) -> Result<()> {
    for (k, &want) in target.iter().enumerate() {
        if b.letters()[start + k] != want {
            b.bubble_into(start + k, want)?;
        }
    }
    Ok(())
}

/// Builds one `m`-letter block, duplicates it into two, then keeps
/// duplicating end blocks until there are `n`.
pub fn synth_blockwise<S: Scalar>(
    spec: &CircuitSpec,
    order: BlockwiseOrder,
) -> Result<Synthesis<S>> {
    expect_method(spec, Method::BlockwiseDuplication)?;
    let (m, n) = (spec.m(), spec.n());
    let mut b = Builder::new(m);
    if n >= 2 {
        duplicate_block(&mut b, 0, m)?;
        let mut blocks = 2;
        let mut left_next = order == BlockwiseOrder::Alternating;
        while blocks < n {
            let block = if left_next { 0 } else { blocks - 1 };
            duplicate_block(&mut b, block, m)?;
            blocks += 1;
            if order == BlockwiseOrder::Alternating {
                left_next = !left_next;
            }
        }
    }
    let (netlist, sequence) = b.finish(n, Method::BlockwiseDuplication, block_layout(m));
    Ok(Synthesis { netlist, sequence })
}

/// `ABC → AABBCC → ABCABC` on the block at index `block`.
fn duplicate_block<S: Scalar>(b: &mut Builder<S>, block: u32, m: u32) -> Result<()> {
    let start = (block * m) as usize;
    for i in (0..m as usize).rev() {
        b.split(start + i)?;
    }
    sort_into(b, start, &target_letters(m, 2))
}

/// One serial tap line per wavelength; zone `ν` sits `(ν−1)·zone_pitch`
/// down the bus and the last zone takes the residual.
pub fn synth_bus<S: Scalar>(spec: &CircuitSpec, zone_pitch: S) -> Result<Synthesis<S>> {
    expect_method(spec, Method::CrossingFreeBus)?;
    let (m, n) = (spec.m(), spec.n());
    let mut b = Builder::new(m);
    for mu in 0..m as usize {
        let base = mu * n as usize;
        for nu in 0..(n as usize).saturating_sub(1) {
            b.split(base + nu)?;
            b.extend(base + nu + 1, zone_pitch);
        }
    }
    let per = n as usize;
    let (netlist, sequence) = b.finish(n, Method::CrossingFreeBus, move |k| {
        (Zone((k % per) as u32 + 1), Wavelength((k / per) as u32 + 1))
    });
    Ok(Synthesis { netlist, sequence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::NodeKind;

    fn spec(m: u32, n: u32, method: Method) -> CircuitSpec {
        CircuitSpec::new(m, n, method).unwrap()
    }

    #[test]
    fn wrong_method_is_rejected() {
        let s = spec(2, 2, Method::BubbleSort);
        assert!(matches!(
            synth_blockwise::<f64>(&s, BlockwiseOrder::Alternating),
            Err(Error::MethodMismatch { .. })
        ));
        assert!(synth_bus::<f64>(&s, 1.0).is_err());
        assert!(synth_bubble::<f64>(&s.with_method(Method::CrossingFreeBus)).is_err());
    }

    #[test]
    fn two_by_two_bubble() {
        let syn = synth_bubble::<f64>(&spec(2, 2, Method::BubbleSort)).unwrap();
        assert_eq!(syn.netlist.splitter_count(), 2);
        assert_eq!(syn.netlist.crossing_count(), 1);
        assert!(syn.netlist.validate().is_empty());
        assert_eq!(syn.sequence.letters(), target_letters(2, 2));
    }

    #[test]
    fn single_wavelength_bubble_is_a_tree() {
        let syn = synth_bubble::<f64>(&spec(1, 8, Method::BubbleSort)).unwrap();
        assert_eq!(syn.netlist.splitter_count(), 7);
        assert_eq!(syn.netlist.crossing_count(), 0);
        assert!(syn.netlist.validate().is_empty());
    }

    #[test]
    fn one_by_one_bus_is_a_wire() {
        let syn = synth_bus::<f64>(&spec(1, 1, Method::CrossingFreeBus), 1.0).unwrap();
        assert_eq!(syn.netlist.nodes.len(), 2);
        assert_eq!(syn.netlist.edges.len(), 1);
        assert!(matches!(syn.netlist.nodes[1].kind, NodeKind::Output { .. }));
        assert!(syn.netlist.validate().is_empty());
    }

    #[test]
    fn blockwise_single_zone_is_empty() {
        let syn = synth_blockwise::<f64>(
            &spec(3, 1, Method::BlockwiseDuplication),
            BlockwiseOrder::Alternating,
        )
        .unwrap();
        assert_eq!(syn.netlist.splitter_count(), 0);
        assert_eq!(syn.netlist.crossing_count(), 0);
        assert!(syn.sequence.ops().is_empty());
    }

    #[test]
    fn identifiers_are_stable() {
        for method in Method::ALL {
            let s = spec(3, 5, method);
            let a = synthesize::<f64>(&s, &SynthOptions::default()).unwrap();
            let b = synthesize::<f64>(&s, &SynthOptions::default()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn generic_over_f32() {
        let syn = synth_bus::<f32>(&spec(2, 3, Method::CrossingFreeBus), 0.5).unwrap();
        assert!(syn.netlist.validate().is_empty());
    }
}
