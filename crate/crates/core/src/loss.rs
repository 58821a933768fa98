use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spec::Wavelength;
use crate::units::{db_to_linear, propagation_from_db_per_unit};

/// Element transmissions, stored linear.
///
/// `eta_x` applies to each through-path of a waveguide crossing and `eta_y`
/// to the total output of a splitter. Propagation loss is off unless
/// [`LossModel::with_propagation`] is used; it only matters for netlists
/// with edge lengths (the crossing-free bus).
#[derive(Debug, Clone, PartialEq)]
pub struct LossModel<S = f64> {
    eta_x: S,
    eta_y: S,
    propagation_per_unit: S,
    zone_pitch: S,
    crossing_overrides: BTreeMap<(u32, u32), S>,
}

fn check_transmission<S: Scalar>(t: S) -> Result<S> {
    if t > S::zero() && t <= S::one() {
        Ok(t)
    } else {
        Err(Error::TransmissionOutOfRange(t.as_f64()))
    }
}

impl<S: Scalar> LossModel<S> {
    pub fn new(eta_x: S, eta_y: S) -> Result<Self> {
        Ok(Self {
            eta_x: check_transmission(eta_x)?,
            eta_y: check_transmission(eta_y)?,
            propagation_per_unit: S::one(),
            zone_pitch: S::zero(),
            crossing_overrides: BTreeMap::new(),
        })
    }

    pub fn from_db(eta_x_db: S, eta_y_db: S) -> Result<Self> {
        Self::new(db_to_linear(eta_x_db)?, db_to_linear(eta_y_db)?)
    }

    pub fn lossless() -> Self {
        Self::new(S::one(), S::one()).expect("unity transmissions are valid")
    }

    /// Enables waveguide loss: `per_unit` is the linear transmission over one
    /// length unit, `zone_pitch` the bus length between adjacent zones.
    pub fn with_propagation(mut self, per_unit: S, zone_pitch: S) -> Result<Self> {
        self.propagation_per_unit = check_transmission(per_unit)?;
        if zone_pitch.is_nan() || zone_pitch < S::zero() {
            return Err(Error::InvalidRange(format!(
                "zone pitch must be nonnegative, got {zone_pitch}"
            )));
        }
        self.zone_pitch = zone_pitch;
        Ok(self)
    }

    pub fn with_propagation_db(self, db_per_unit: S, zone_pitch: S) -> Result<Self> {
        let per_unit = propagation_from_db_per_unit(db_per_unit)?;
        self.with_propagation(per_unit, zone_pitch)
    }

    /// Overrides the crossing transmission for one (unordered) wavelength pair.
    pub fn with_crossing_override(mut self, a: Wavelength, b: Wavelength, eta: S) -> Result<Self> {
        let key = (a.0.min(b.0), a.0.max(b.0));
        self.crossing_overrides
            .insert(key, check_transmission(eta)?);
        Ok(self)
    }

    pub fn eta_x(&self) -> S {
        self.eta_x
    }

    pub fn eta_y(&self) -> S {
        self.eta_y
    }

    pub fn propagation_per_unit(&self) -> S {
        self.propagation_per_unit
    }

    pub fn zone_pitch(&self) -> S {
        self.zone_pitch
    }

    pub fn has_propagation_loss(&self) -> bool {
        self.propagation_per_unit < S::one()
    }

    pub fn is_lossless(&self) -> bool {
        self.eta_x == S::one()
            && self.eta_y == S::one()
            && !self.has_propagation_loss()
            && self.crossing_overrides.values().all(|&v| v == S::one())
    }

    pub fn crossing_transmission(&self, a: Wavelength, b: Wavelength) -> S {
        let key = (a.0.min(b.0), a.0.max(b.0));
        self.crossing_overrides
            .get(&key)
            .copied()
            .unwrap_or(self.eta_x)
    }

    /// Transmission over a waveguide of the given length.
    pub fn propagation(&self, length: S) -> S {
        if self.has_propagation_loss() && length > S::zero() {
            self.propagation_per_unit.powf(length)
        } else {
            S::one()
        }
    }
}

impl<S: Scalar> Default for LossModel<S> {
    fn default() -> Self {
        Self::lossless()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        assert!(LossModel::new(0.0f64, 0.9).is_err());
        assert!(LossModel::new(0.9f64, 1.01).is_err());
        assert!(LossModel::<f64>::from_db(0.1, -0.1).is_err());
        assert!(LossModel::new(0.9f64, 0.9)
            .unwrap()
            .with_propagation(0.9, -1.0)
            .is_err());
    }

    #[test]
    fn overrides_are_unordered() {
        let l = LossModel::new(0.95f64, 0.98)
            .unwrap()
            .with_crossing_override(Wavelength(3), Wavelength(1), 0.9)
            .unwrap();
        assert_eq!(l.crossing_transmission(Wavelength(1), Wavelength(3)), 0.9);
        assert_eq!(l.crossing_transmission(Wavelength(3), Wavelength(1)), 0.9);
        assert_eq!(l.crossing_transmission(Wavelength(1), Wavelength(2)), 0.95);
    }

    #[test]
    fn propagation_defaults_off() {
        let l = LossModel::<f64>::lossless();
        assert!(l.is_lossless());
        assert_eq!(l.propagation(100.0), 1.0);
        let p = l.with_propagation(0.5, 2.0).unwrap();
        assert!((p.propagation(2.0) - 0.25).abs() < 1e-15);
        assert!(!p.is_lossless());
    }
}
