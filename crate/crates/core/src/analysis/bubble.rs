use crate::error::Result;
use crate::loss::LossModel;
use crate::scalar::{powu, Scalar};
use crate::spec::{check_index, Wavelength};

/// Exponent applied to `η_Y` on every bubble path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SplitterDepth {
    /// Real-valued `log2 n`, the usual approximation.
    #[default]
    Log2,
    /// Depth of each leaf of the synthesized balanced tree: `⌈log2 n⌉` or
    /// one less.
    Tree,
}

/// Number of crossings charged to the path of letter `μ` into block `ν`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CrossingExponent {
    /// `|(n−1)(μ−1) − (m−1)(ν−1)|`: how far the letter moves.
    #[default]
    Displacement,
    /// `(μ−1)(n−ν) + (m−μ)(ν−1)`: every letter the copy must pass, which is
    /// what a bubble-sorted netlist actually contains.
    Inversions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BubbleModel {
    pub splitter_depth: SplitterDepth,
    pub crossings: CrossingExponent,
}

impl BubbleModel {
    /// `η_Y^{log2 n}` with displacement exponents.
    pub const PAPER: Self = Self {
        splitter_depth: SplitterDepth::Log2,
        crossings: CrossingExponent::Displacement,
    };

    /// Exactly what propagation through a synthesized bubble netlist gives.
    pub const GRAPH_EXACT: Self = Self {
        splitter_depth: SplitterDepth::Tree,
        crossings: CrossingExponent::Inversions,
    };
}

/// Normalized power fractions just after the splitter tree, `ν = 1..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitFractions<S> {
    pub wavelength: Wavelength,
    pub fractions: Vec<S>,
}

fn check(mu: u32, nu: u32, m: u32, n: u32) -> Result<()> {
    check_index("μ", mu, m)?;
    check_index("ν", nu, n)
}

/// `|(n−1)(μ−1) − (m−1)(ν−1)|`.
pub fn bubble_crossing_count(mu: u32, nu: u32, m: u32, n: u32) -> Result<u64> {
    check(mu, nu, m, n)?;
    Ok(displacement(mu, nu, m, n))
}

/// `(μ−1)(n−ν) + (m−μ)(ν−1)`.
pub fn bubble_path_crossings(mu: u32, nu: u32, m: u32, n: u32) -> Result<u64> {
    check(mu, nu, m, n)?;
    Ok(inversions(mu, nu, m, n))
}

fn displacement(mu: u32, nu: u32, m: u32, n: u32) -> u64 {
    let a = i64::from(n - 1) * i64::from(mu - 1);
    let b = i64::from(m - 1) * i64::from(nu - 1);
    (a - b).unsigned_abs()
}

fn inversions(mu: u32, nu: u32, m: u32, n: u32) -> u64 {
    u64::from(mu - 1) * u64::from(n - nu) + u64::from(m - mu) * u64::from(nu - 1)
}

fn exponents(mu: u32, m: u32, n: u32, kind: CrossingExponent) -> Vec<u64> {
    (1..=n)
        .map(|nu| match kind {
            CrossingExponent::Displacement => displacement(mu, nu, m, n),
            CrossingExponent::Inversions => inversions(mu, nu, m, n),
        })
        .collect()
}

fn eta_pow_signed<S: Scalar>(eta: S, k: i64) -> S {
    if k >= 0 {
        powu(eta, k as u64)
    } else {
        S::one() / powu(eta, k.unsigned_abs())
    }
}

pub fn bubble_split_fractions<S: Scalar>(
    mu: u32,
    m: u32,
    n: u32,
    loss: &LossModel<S>,
) -> Result<SplitFractions<S>> {
    bubble_split_fractions_with(mu, m, n, loss, CrossingExponent::Displacement)
}

/// Solves `η_{ν+1} = η_ν · η_X^{c_ν} / η_X^{c_{ν+1}}` from `η_1 = 1`, then
/// normalizes so the fractions sum to one.
pub fn bubble_split_fractions_with<S: Scalar>(
    mu: u32,
    m: u32,
    n: u32,
    loss: &LossModel<S>,
    crossings: CrossingExponent,
) -> Result<SplitFractions<S>> {
    check(mu, 1, m, n)?;
    let c = exponents(mu, m, n, crossings);
    let mut fractions = Vec::with_capacity(n as usize);
    let mut eta = S::one();
    fractions.push(eta);
    for w in c.windows(2) {
        eta *= eta_pow_signed(loss.eta_x(), w[0] as i64 - w[1] as i64);
        fractions.push(eta);
    }
    let sum: S = fractions.iter().copied().sum();
    for f in &mut fractions {
        *f /= sum;
    }
    Ok(SplitFractions {
        wavelength: Wavelength(mu),
        fractions,
    })
}

/// Depth of leaf `ν` in the left-heavy balanced split tree; copy `ν` of
/// every wavelength ends up in zone `ν`.
pub fn bubble_tree_depths(n: u32) -> Vec<u32> {
    fn walk(leaves: u32, depth: u32, out: &mut Vec<u32>) {
        if leaves <= 1 {
            out.push(depth);
        } else {
            walk(leaves - leaves / 2, depth + 1, out);
            walk(leaves / 2, depth + 1, out);
        }
    }
    let mut out = Vec::with_capacity(n as usize);
    walk(n, 0, &mut out);
    out
}

fn splitter_factors<S: Scalar>(n: u32, loss: &LossModel<S>, depth: SplitterDepth) -> Vec<S> {
    match depth {
        SplitterDepth::Log2 => {
            vec![loss.eta_y().powf(S::from_count(n as usize).log2()); n as usize]
        }
        SplitterDepth::Tree => bubble_tree_depths(n)
            .into_iter()
            .map(|d| powu(loss.eta_y(), u64::from(d)))
            .collect(),
    }
}

/// Equalized per-output transmission of wavelength `μ`: `1 / Σ_ν 1/g_ν` with
/// path gain `g_ν = η_Y^{d_ν} · η_X^{c_ν}`. With a uniform depth this is
/// `η_Y^d · η_X^{c_ν} · η_ν^(μ)`.
fn equalized<S: Scalar>(mu: u32, m: u32, n: u32, loss: &LossModel<S>, model: BubbleModel) -> S {
    let c = exponents(mu, m, n, model.crossings);
    let depth = splitter_factors(n, loss, model.splitter_depth);
    let inverse: S = c
        .iter()
        .zip(&depth)
        .map(|(&c, &d)| S::one() / (d * powu(loss.eta_x(), c)))
        .sum();
    S::one() / inverse
}

pub fn t_bubble<S: Scalar>(mu: u32, nu: u32, m: u32, n: u32, loss: &LossModel<S>) -> Result<S> {
    t_bubble_with(mu, nu, m, n, loss, BubbleModel::PAPER)
}

/// `t_ν^(μ)`, the same for every `ν` once the tree is equalized.
pub fn t_bubble_with<S: Scalar>(
    mu: u32,
    nu: u32,
    m: u32,
    n: u32,
    loss: &LossModel<S>,
    model: BubbleModel,
) -> Result<S> {
    check(mu, nu, m, n)?;
    Ok(equalized(mu, m, n, loss, model))
}

pub fn total_t_bubble<S: Scalar>(m: u32, n: u32, loss: &LossModel<S>) -> Result<S> {
    total_t_bubble_with(m, n, loss, BubbleModel::PAPER)
}

/// `(1/m) Σ_μ Σ_ν t_ν^(μ)`.
pub fn total_t_bubble_with<S: Scalar>(
    m: u32,
    n: u32,
    loss: &LossModel<S>,
    model: BubbleModel,
) -> Result<S> {
    check(1, 1, m, n)?;
    let mut total = S::zero();
    for mu in 1..=m {
        total += equalized(mu, m, n, loss, model);
    }
    Ok(total * S::from_count(n as usize) / S::from_count(m as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lossy(x: f64, y: f64) -> LossModel<f64> {
        LossModel::new(x, y).unwrap()
    }

    #[test]
    fn displacement_examples() {
        assert_eq!(bubble_crossing_count(1, 1, 5, 9).unwrap(), 0);
        assert_eq!(bubble_crossing_count(3, 4, 3, 4).unwrap(), 0);
        assert_eq!(bubble_crossing_count(2, 1, 3, 4).unwrap(), 3);
        assert_eq!(bubble_crossing_count(3, 1, 3, 4).unwrap(), 6);
        assert!(bubble_crossing_count(4, 1, 3, 4).is_err());
        assert!(bubble_crossing_count(1, 0, 3, 4).is_err());
    }

    #[test]
    fn inversions_differ_only_inside() {
        // middle wavelength of m = 3, n = 4 passes 3 letters on every path
        let inv: Vec<u64> = (1..=4)
            .map(|nu| bubble_path_crossings(2, nu, 3, 4).unwrap())
            .collect();
        let disp: Vec<u64> = (1..=4)
            .map(|nu| bubble_crossing_count(2, nu, 3, 4).unwrap())
            .collect();
        assert_eq!(inv, vec![3, 3, 3, 3]);
        assert_eq!(disp, vec![3, 1, 1, 3]);
        for nu in 1..=4 {
            assert_eq!(
                bubble_path_crossings(1, nu, 3, 4).unwrap(),
                bubble_crossing_count(1, nu, 3, 4).unwrap()
            );
        }
    }

    #[test]
    fn lossless_fractions_are_uniform() {
        let f = bubble_split_fractions(2, 3, 5, &LossModel::<f64>::lossless()).unwrap();
        for x in f.fractions {
            assert!((x - 0.2f64).abs() < 1e-15);
        }
    }

    #[test]
    fn two_term_recurrence() {
        // exponents 0 then 1: fractions ∝ (1, 1/0.9)
        let f = bubble_split_fractions(1, 2, 2, &lossy(0.9, 1.0)).unwrap();
        assert!((f.fractions[0] - 0.47368).abs() < 1e-5);
        assert!((f.fractions[1] - 0.52632).abs() < 1e-5);
        let exact = 0.9 / 1.9;
        assert!((f.fractions[0] - exact).abs() < 1e-15);
    }

    #[test]
    fn recurrence_and_normalization_hold() {
        let loss = lossy(0.93, 0.97);
        for (m, n) in [(3, 4), (7, 13), (2, 32)] {
            for mu in 1..=m {
                let f = bubble_split_fractions(mu, m, n, &loss).unwrap().fractions;
                let sum: f64 = f.iter().sum();
                assert!((sum - 1.0).abs() < 1e-12);
                for nu in 1..n {
                    let lhs = f[nu as usize] / f[nu as usize - 1];
                    let cn = bubble_crossing_count(mu, nu, m, n).unwrap() as i32;
                    let cn1 = bubble_crossing_count(mu, nu + 1, m, n).unwrap() as i32;
                    let rhs = 0.93f64.powi(cn) / 0.93f64.powi(cn1);
                    assert!((lhs - rhs).abs() <= 1e-12 * rhs);
                }
            }
        }
    }

    #[test]
    fn outputs_are_equalized() {
        let loss = lossy(0.95, 0.977);
        for model in [BubbleModel::PAPER, BubbleModel::GRAPH_EXACT] {
            for mu in 1..=3 {
                let t: Vec<f64> = (1..=6)
                    .map(|nu| t_bubble_with(mu, nu, 3, 6, &loss, model).unwrap())
                    .collect();
                for x in &t {
                    assert!((x - t[0]).abs() <= 1e-12 * t[0]);
                }
            }
        }
    }

    #[test]
    fn collapses_without_crossing_loss() {
        let y = 0.96f64;
        let loss = lossy(1.0, y);
        for n in [1u32, 2, 3, 7, 16, 100] {
            let t = total_t_bubble(4, n, &loss).unwrap();
            assert!((t - y.powf(f64::from(n).log2())).abs() < 1e-12);
        }
        assert!((total_t_bubble(3, 9, &LossModel::<f64>::lossless()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn paper_form_matches_fractions() {
        let loss = lossy(0.93, 0.97);
        for mu in 1..=3 {
            let f = bubble_split_fractions(mu, 3, 6, &loss).unwrap().fractions;
            for nu in 1..=6 {
                let c = bubble_crossing_count(mu, nu, 3, 6).unwrap() as i32;
                let direct = 0.97f64.powf(6f64.log2()) * 0.93f64.powi(c) * f[nu as usize - 1];
                assert!((t_bubble(mu, nu, 3, 6, &loss).unwrap() - direct).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn tree_depths() {
        assert_eq!(bubble_tree_depths(1), vec![0]);
        assert_eq!(bubble_tree_depths(3), vec![2, 2, 1]);
        assert_eq!(bubble_tree_depths(5), vec![3, 3, 2, 2, 2]);
        assert_eq!(bubble_tree_depths(8), vec![3; 8]);
    }

    #[test]
    fn tree_depth_without_crossing_loss() {
        // three leaves at depths 2, 2, 1: 3 / (2/0.81 + 1/0.9)
        let loss = lossy(1.0, 0.9);
        let t = total_t_bubble_with(2, 3, &loss, BubbleModel::GRAPH_EXACT).unwrap();
        assert!((t - 3.0 / (2.0 / 0.81 + 1.0 / 0.9)).abs() < 1e-15);
        let t = total_t_bubble_with(2, 8, &loss, BubbleModel::GRAPH_EXACT).unwrap();
        assert!((t - 0.729).abs() < 1e-15);
    }

    #[test]
    fn works_in_f32() {
        let loss = LossModel::new(0.95f32, 0.977f32).unwrap();
        let t = total_t_bubble(3, 8, &loss).unwrap();
        let t64 = total_t_bubble(3, 8, &lossy(0.95f32 as f64, 0.977f32 as f64)).unwrap();
        assert!((f64::from(t) - t64).abs() < 1e-5);
    }
}
