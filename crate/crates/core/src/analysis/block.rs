use crate::error::Result;
use crate::loss::LossModel;
use crate::scalar::{powu, Scalar};
use crate::spec::{check_at_least, check_index, Wavelength};

/// Splitter ratios `r_1..r_{n−1}` along one wavelength's chain.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockRatios<S> {
    pub wavelength: Wavelength,
    pub ratios: Vec<S>,
}

/// `r_1 = X^{m−1}/(1+X^{m−1})`, `r_{n−1} = X^a/(X^a+X^b)` and, walking
/// back, `r_ν = Y X^a r_{ν+1} / (1 + Y X^a r_{ν+1})`, with `a = m−μ` and
/// `b = μ−1`.
pub fn blockwise_ratios<S: Scalar>(
    mu: u32,
    m: u32,
    n: u32,
    loss: &LossModel<S>,
) -> Result<BlockRatios<S>> {
    check_at_least("n", n, 2)?;
    check_index("μ", mu, m)?;
    let (x, y) = (loss.eta_x(), loss.eta_y());
    let xa = powu(x, u64::from(m - mu));
    let xb = powu(x, u64::from(mu - 1));
    let xm = powu(x, u64::from(m - 1));
    let mut ratios = vec![S::zero(); n as usize - 1];
    ratios[0] = xm / (S::one() + xm);
    if n >= 3 {
        let last = n as usize - 2;
        ratios[last] = xa / (xa + xb);
        for k in (1..last).rev() {
            let g = y * xa * ratios[k + 1];
            ratios[k] = g / (S::one() + g);
        }
    }
    Ok(BlockRatios {
        wavelength: Wavelength(mu),
        ratios,
    })
}

/// Power delivered to zones `1..n` by wavelength `μ`, for unit input.
///
/// The last zone is reached through `n−1` splitters, so its factor is
/// `Y^{n−1}`.
pub fn block_chain_outputs<S: Scalar>(
    mu: u32,
    m: u32,
    n: u32,
    loss: &LossModel<S>,
) -> Result<Vec<S>> {
    check_index("μ", mu, m)?;
    check_at_least("n", n, 1)?;
    if n == 1 {
        return Ok(vec![S::one()]);
    }
    let r = blockwise_ratios(mu, m, n, loss)?.ratios;
    let (x, y) = (loss.eta_x(), loss.eta_y());
    let (a, b) = (u64::from(m - mu), u64::from(mu - 1));
    let mut out = Vec::with_capacity(n as usize);
    let mut through = S::one();
    for nu in 1..n as u64 {
        let r_nu = r[nu as usize - 1];
        out.push(powu(y, nu) * powu(x, (nu - 1) * a + b) * r_nu * through);
        through *= S::one() - r_nu;
    }
    let last = u64::from(n - 1);
    out.push(powu(y, last) * powu(x, last * a) * through);
    Ok(out)
}

pub fn t_block<S: Scalar>(mu: u32, nu: u32, m: u32, n: u32, loss: &LossModel<S>) -> Result<S> {
    check_index("ν", nu, n)?;
    Ok(block_chain_outputs(mu, m, n, loss)?[nu as usize - 1])
}

/// `(1/m) Σ_μ 2(n−1) t_n^(μ)`, one for `n = 1`.
pub fn total_t_block<S: Scalar>(m: u32, n: u32, loss: &LossModel<S>) -> Result<S> {
    check_at_least("m", m, 1)?;
    check_at_least("n", n, 1)?;
    if n == 1 {
        return Ok(S::one());
    }
    let mut total = S::zero();
    for mu in 1..=m {
        total += t_block(mu, n, m, n, loss)?;
    }
    Ok(total * S::from_count(2 * (n as usize - 1)) / S::from_count(m as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lossy(x: f64, y: f64) -> LossModel<f64> {
        LossModel::new(x, y).unwrap()
    }

    #[test]
    fn lossless_first_split_is_half() {
        let r = blockwise_ratios(1, 3, 5, &LossModel::<f64>::lossless()).unwrap();
        assert_eq!(r.ratios[0], 0.5);
        assert_eq!(r.ratios[3], 0.5);
        assert!((r.ratios[2] - 1.0 / 3.0).abs() < 1e-15);
        assert!((r.ratios[1] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn rejects_single_zone_and_bad_index() {
        assert!(blockwise_ratios(1, 3, 1, &LossModel::<f64>::lossless()).is_err());
        assert!(blockwise_ratios(4, 3, 3, &LossModel::<f64>::lossless()).is_err());
    }

    #[test]
    fn two_zone_case_uses_only_first_ratio() {
        let loss = lossy(0.9, 0.95);
        let r = blockwise_ratios(2, 2, 2, &loss).unwrap().ratios;
        assert_eq!(r.len(), 1);
        assert!((r[0] - 0.9 / 1.9).abs() < 1e-15);
        let t = block_chain_outputs(2, 2, 2, &loss).unwrap();
        assert!((t[0] - 0.95 * 0.9 * r[0]).abs() < 1e-15);
        assert!((t[1] - 0.95 * (1.0 - r[0])).abs() < 1e-15);
    }

    #[test]
    fn single_zone_is_lossless() {
        assert_eq!(total_t_block(4, 1, &lossy(0.5, 0.5)).unwrap(), 1.0);
    }

    #[test]
    fn lossless_total_is_one() {
        // zone 1 takes half, the other four an eighth each
        let t = block_chain_outputs(1, 3, 5, &LossModel::<f64>::lossless()).unwrap();
        assert_eq!(t, vec![0.5, 0.125, 0.125, 0.125, 0.125]);
        let t = total_t_block(3, 5, &LossModel::<f64>::lossless()).unwrap();
        assert!((t - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chain_is_equal_from_second_zone_on() {
        let loss = lossy(0.95, 0.977);
        for mu in 1..=3 {
            let t = block_chain_outputs(mu, 3, 7, &loss).unwrap();
            for nu in 2..6 {
                assert!((t[nu] - t[nu - 1]).abs() < 1e-12, "μ={mu} ν={nu} {t:?}");
            }
        }
    }
}
