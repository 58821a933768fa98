//! Decibel/linear conversions for element transmissions.
//!
//! Everything inside the crate works on linear power transmissions; decibels
//! only show up at the I/O boundary.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `10^(loss_db / 10)`. Positive values (gain) are rejected.
pub fn db_to_linear<S: Scalar>(loss_db: S) -> Result<S> {
    if loss_db.is_nan() || loss_db > S::zero() {
        return Err(Error::PositiveDecibel(loss_db.as_f64()));
    }
    Ok(S::lit(10.0).powf(loss_db / S::lit(10.0)))
}

/// Inverse of [`db_to_linear`]; accepts transmissions in `(0, 1]`.
pub fn linear_to_db<S: Scalar>(transmission: S) -> Result<S> {
    if !(transmission > S::zero() && transmission <= S::one()) {
        return Err(Error::TransmissionOutOfRange(transmission.as_f64()));
    }
    Ok(S::lit(10.0) * transmission.log10())
}

/// Per-unit-length propagation transmission from a dB-per-unit figure.
pub fn propagation_from_db_per_unit<S: Scalar>(db_per_unit: S) -> Result<S> {
    db_to_linear(-db_per_unit.abs())
}
