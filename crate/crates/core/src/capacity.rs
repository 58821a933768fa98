//! How many zones one laser can feed.
//!
//! A zone is served when its outcoupler receives `required_mw`. With total
//! transmission `T(m, n)` shared evenly over `n` zones, a laser of
//! `available_mw` serves `n` zones whenever `available / required ≥ n / T`.

use std::ops::RangeInclusive;

use crate::analysis::{total_transmission, BubbleModel};
use crate::error::{Error, Result};
use crate::loss::LossModel;
use crate::powerflow::{propagate, solve_ratios};
use crate::scalar::Scalar;
use crate::spec::{CircuitSpec, Method};
use crate::synthesis::{synthesize, SynthOptions};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBudget<S = f64> {
    pub wavelength_nm: u32,
    /// Needed at one zone's outcoupler.
    pub required_mw: S,
    /// Output of a single laser.
    pub available_mw: S,
}

impl<S: Scalar> PowerBudget<S> {
    pub fn new(wavelength_nm: u32, required_mw: S, available_mw: S) -> Result<Self> {
        if !(required_mw > S::zero()
            && available_mw > S::zero()
            && required_mw.is_finite()
            && available_mw.is_finite())
        {
            return Err(Error::NonPositiveBudget {
                required_mw: required_mw.as_f64(),
                available_mw: available_mw.as_f64(),
            });
        }
        Ok(Self {
            wavelength_nm,
            required_mw,
            available_mw,
        })
    }

    pub fn ratio(&self) -> S {
        self.available_mw / self.required_mw
    }

    /// Zones served with lossless, perfectly even splitting.
    pub fn ideal_zones(&self) -> u32 {
        ideal_zones(self.ratio())
    }
}

/// Strontium laser budgets. The "more than 0.1 mW" requirements are taken as
/// exactly 0.1 mW.
pub fn strontium_budgets() -> Vec<PowerBudget<f64>> {
    [
        (405, 0.1, 10.0),
        (461, 0.1, 200.0),
        (422, 0.1, 50.0),
        (1092, 0.1, 50.0),
        (674, 10.0, 300.0),
        (1033, 0.1, 50.0),
    ]
    .into_iter()
    .map(|(nm, req, avail)| {
        PowerBudget::new(nm, req, avail).expect("built-in budgets are positive")
    })
    .collect()
}

/// The budget with the smallest ratio; ties go to the first listed.
pub fn limiting_budget<S: Scalar>(budgets: &[PowerBudget<S>]) -> Option<&PowerBudget<S>> {
    budgets
        .iter()
        .reduce(|best, b| if b.ratio() < best.ratio() { b } else { best })
}

/// Where `T(m, n)` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TransmissionSource {
    /// Closed forms; bubble uses the given model.
    #[default]
    ClosedForm,
    /// Synthesize, solve ratios and propagate.
    Graph,
}

/// `T(m, n)` for one method.
pub fn transmission<S: Scalar>(
    m: u32,
    n: u32,
    method: Method,
    loss: &LossModel<S>,
    source: TransmissionSource,
) -> Result<S> {
    match source {
        TransmissionSource::ClosedForm => {
            total_transmission(m, n, method, loss, BubbleModel::PAPER)
        }
        TransmissionSource::Graph => {
            let spec = CircuitSpec::new(m, n, method)?;
            let options = SynthOptions {
                zone_pitch: loss.zone_pitch(),
                ..SynthOptions::default()
            };
            let syn = synthesize(&spec, &options)?;
            let solved = solve_ratios(&syn.netlist, loss)?;
            Ok(propagate(&solved, loss)?.total_transmission)
        }
    }
}

/// Relative slack on `n/T ≤ ratio`, so that equality survives rounding.
fn slack<S: Scalar>() -> S {
    S::one() + S::lit(64.0) * S::epsilon()
}

fn ideal_zones<S: Scalar>(ratio: S) -> u32 {
    (ratio * slack()).floor().to_u32().unwrap_or(u32::MAX)
}

fn check_ratio<S: Scalar>(ratio: S) -> Result<()> {
    if ratio > S::zero() && ratio.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveBudget {
            required_mw: 1.0,
            available_mw: ratio.as_f64(),
        })
    }
}

/// Largest `n` with `n / T(m, n) ≤ ratio`, or 0 when one zone is already too
/// many. Scans upward and stops at the first failure, since `n/T` grows
/// with `n`.
pub fn max_zones<S: Scalar>(
    ratio: S,
    m: u32,
    method: Method,
    loss: &LossModel<S>,
    source: TransmissionSource,
) -> Result<u32> {
    check_ratio(ratio)?;
    let limit = ratio * slack();
    let mut n = 0;
    loop {
        let next = n + 1;
        let t = transmission(m, next, method, loss, source)?;
        if S::from_count(next as usize) / t > limit {
            return Ok(n);
        }
        n = next;
    }
}

pub fn max_zones_for_budget<S: Scalar>(
    budget: &PowerBudget<S>,
    m: u32,
    method: Method,
    loss: &LossModel<S>,
    source: TransmissionSource,
) -> Result<u32> {
    max_zones(budget.ratio(), m, method, loss, source)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityPoint<S> {
    pub n: u32,
    pub transmission: S,
    /// `n / T(m, n)`: the laser-to-outcoupler power ratio needed for `n` zones.
    pub required_ratio: S,
}

pub fn capacity_curve<S: Scalar>(
    m: u32,
    method: Method,
    loss: &LossModel<S>,
    n_max: u32,
    source: TransmissionSource,
) -> Result<Vec<CapacityPoint<S>>> {
    (1..=n_max)
        .map(|n| {
            let t = transmission(m, n, method, loss, source)?;
            Ok(CapacityPoint {
                n,
                transmission: t,
                required_ratio: S::from_count(n as usize) / t,
            })
        })
        .collect()
}

/// Total ions addressable when every zone holds a count in `ions_per_zone`.
pub fn ion_capacity(zones: u32, ions_per_zone: RangeInclusive<u32>) -> RangeInclusive<u64> {
    let z = u64::from(zones);
    z * u64::from(*ions_per_zone.start())..=z * u64::from(*ions_per_zone.end())
}
