use crate::error::Result;
use crate::loss::LossModel;
use crate::scalar::{powu, Scalar};
use crate::spec::check_at_least;

/// Equalized total transmission of the crossing-free bus.
///
/// Zone `ν` sits behind `min(ν, n−1)` taps and `(ν−1)` pitches of bus, so
/// its path gain is `g_ν = Y^{min(ν,n−1)} · P((ν−1)·pitch)`. Setting every
/// tap so all zones receive the same power gives `n / Σ 1/g_ν` per
/// wavelength, which is the same for every wavelength.
pub fn total_t_bus<S: Scalar>(m: u32, n: u32, loss: &LossModel<S>) -> Result<S> {
    check_at_least("m", m, 1)?;
    check_at_least("n", n, 1)?;
    let mut inverse_gain = S::zero();
    for nu in 1..=n {
        let taps = u64::from(nu.min(n - 1));
        let length = S::from_count(nu as usize - 1) * loss.zone_pitch();
        inverse_gain += S::one() / (powu(loss.eta_y(), taps) * loss.propagation(length));
    }
    Ok(S::from_count(n as usize) / inverse_gain)
}
