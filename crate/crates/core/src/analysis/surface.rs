use crate::error::{Error, Result};
use crate::loss::LossModel;
use crate::scalar::Scalar;
use crate::spec::check_at_least;

use super::{total_t_block, total_t_bubble_with, BubbleModel};

/// Which loss is swept; the other is held at `fixed_db`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    Splitter,
    Crossing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec<S> {
    pub m: u32,
    pub n_min: u32,
    pub n_max: u32,
    pub axis: SweepAxis,
    pub fixed_db: S,
    pub eta_db_min: S,
    pub eta_db_max: S,
    /// Grid points along the loss axis, endpoints included.
    pub steps: usize,
    pub bubble_model: BubbleModel,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint<S> {
    pub n: u32,
    pub eta_db: S,
    pub t_bubble: S,
    pub t_block: S,
}

/// A loss at which both methods transmit equally for this `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourPoint<S> {
    pub n: u32,
    pub eta_db: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionSurface<S> {
    pub points: Vec<SurfacePoint<S>>,
    pub contour: Vec<ContourPoint<S>>,
}

const CONTOUR_TOLERANCE_DB: f64 = 1e-6;

impl<S: Scalar> SweepSpec<S> {
    fn loss_at(&self, eta_db: S) -> Result<LossModel<S>> {
        match self.axis {
            SweepAxis::Splitter => LossModel::from_db(self.fixed_db, eta_db),
            SweepAxis::Crossing => LossModel::from_db(eta_db, self.fixed_db),
        }
    }

    fn eval(&self, n: u32, eta_db: S) -> Result<(S, S)> {
        let loss = self.loss_at(eta_db)?;
        Ok((
            total_t_bubble_with(self.m, n, &loss, self.bubble_model)?,
            total_t_block(self.m, n, &loss)?,
        ))
    }

    fn check(&self) -> Result<()> {
        check_at_least("m", self.m, 1)?;
        check_at_least("n_min", self.n_min, 1)?;
        if self.n_min > self.n_max {
            return Err(Error::InvalidRange(format!(
                "n range {}..={} is empty",
                self.n_min, self.n_max
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidRange(format!(
                "need at least 2 loss steps, got {}",
                self.steps
            )));
        }
        if self.eta_db_min.is_nan() || self.eta_db_max.is_nan() || self.eta_db_min > self.eta_db_max
        {
            return Err(Error::InvalidRange(format!(
                "loss range {}..={} dB is empty",
                self.eta_db_min, self.eta_db_max
            )));
        }
        Ok(())
    }
}

/// Evaluates both closed forms on the `n × loss` grid and locates every
/// sign change of `T_bubble − T_block` along the loss axis.
pub fn transmission_surface<S: Scalar>(spec: &SweepSpec<S>) -> Result<TransmissionSurface<S>> {
    spec.check()?;
    let step = (spec.eta_db_max - spec.eta_db_min) / S::from_count(spec.steps - 1);
    let grid: Vec<S> = (0..spec.steps)
        .map(|i| {
            if i + 1 == spec.steps {
                spec.eta_db_max
            } else {
                spec.eta_db_min + step * S::from_count(i)
            }
        })
        .collect();
    let mut points = Vec::with_capacity(grid.len() * (spec.n_max - spec.n_min + 1) as usize);
    let mut contour = Vec::new();
    for n in spec.n_min..=spec.n_max {
        let mut prev: Option<(S, S)> = None;
        for &eta_db in &grid {
            let (t_bubble, t_block) = spec.eval(n, eta_db)?;
            points.push(SurfacePoint {
                n,
                eta_db,
                t_bubble,
                t_block,
            });
            let diff = t_bubble - t_block;
            if diff == S::zero() {
                contour.push(ContourPoint { n, eta_db });
            } else if let Some((lo, d_lo)) = prev {
                if d_lo != S::zero() && (d_lo < S::zero()) != (diff < S::zero()) {
                    contour.push(ContourPoint {
                        n,
                        eta_db: bisect(spec, n, lo, eta_db, d_lo)?,
                    });
                }
            }
            prev = Some((eta_db, diff));
        }
    }
    Ok(TransmissionSurface { points, contour })
}

fn bisect<S: Scalar>(spec: &SweepSpec<S>, n: u32, mut lo: S, mut hi: S, mut d_lo: S) -> Result<S> {
    let tol = S::lit(CONTOUR_TOLERANCE_DB);
    let two = S::lit(2.0);
    while (hi - lo).abs() > tol {
        let mid = (lo + hi) / two;
        if mid == lo || mid == hi {
            break;
        }
        let (b, k) = spec.eval(n, mid)?;
        let d = b - k;
        if d == S::zero() {
            return Ok(mid);
        }
        if (d < S::zero()) == (d_lo < S::zero()) {
            lo = mid;
            d_lo = d;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / two)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(axis: SweepAxis) -> SweepSpec<f64> {
        SweepSpec {
            m: 3,
            n_min: 2,
            n_max: 12,
            axis,
            fixed_db: -0.1,
            eta_db_min: -1.0,
            eta_db_max: 0.0,
            steps: 21,
            bubble_model: BubbleModel::PAPER,
        }
    }

    #[test]
    fn grid_shape() {
        let s = transmission_surface(&spec(SweepAxis::Crossing)).unwrap();
        assert_eq!(s.points.len(), 11 * 21);
        assert_eq!(s.points.last().unwrap().eta_db, 0.0);
    }

    #[test]
    fn contour_points_are_roots() {
        let sp = spec(SweepAxis::Crossing);
        let s = transmission_surface(&sp).unwrap();
        assert!(!s.contour.is_empty());
        for c in &s.contour {
            let diff = |db: f64| {
                let (b, k) = sp.eval(c.n, db.min(0.0)).unwrap();
                b - k
            };
            assert!(
                diff(c.eta_db - 2e-6) * diff(c.eta_db + 2e-6) <= 0.0,
                "{c:?}"
            );
        }
    }

    #[test]
    fn bad_ranges_are_rejected() {
        let mut s = spec(SweepAxis::Splitter);
        s.n_min = 13;
        assert!(transmission_surface(&s).is_err());
        let mut s = spec(SweepAxis::Splitter);
        s.steps = 1;
        assert!(transmission_surface(&s).is_err());
        let mut s = spec(SweepAxis::Splitter);
        s.eta_db_max = 0.5;
        assert!(transmission_surface(&s).is_err());
    }
}
