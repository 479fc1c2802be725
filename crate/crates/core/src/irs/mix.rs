use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::measure::LazyIRS;
use super::sample::{check_trials, empirical, trial_rng, AtomSampler};
use super::subspace::Subspace;
use super::window::{tv_distance, WindowDistribution, WindowSubgroup};
use crate::error::{Error, Result};

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn check_odd(n_ai: usize) -> Result<()> {
    if n_ai.is_multiple_of(2) {
        return Err(Error::domain(format!("n_ai = {n_ai} must be odd")));
    }
    Ok(())
}

/// `λ(A_n)` for the majority set `A_n = {x : x_0 + ... + x_{n-1} > n/2}`.
pub fn majority_measure(n_ai: usize) -> Result<BigRational> {
    check_odd(n_ai)?;
    let n = n_ai as u64;
    let hits = (n / 2 + 1..=n).fold(BigInt::zero(), |acc, k| acc + binomial(n, k));
    Ok(BigRational::new(hits, BigInt::one() << n_ai))
}

/// `λ(A_n Δ T A_n)`: the two majorities differ exactly when the `n - 1`
/// shared coordinates tie and the two outer coordinates differ.
pub fn majority_asymmetry(n_ai: usize) -> Result<BigRational> {
    check_odd(n_ai)?;
    let h = (n_ai - 1) as u64;
    Ok(BigRational::new(
        binomial(h, h / 2),
        BigInt::one() << (h + 1),
    ))
}

/// Which cells `g` of `[0, cells)` satisfy `x ∈ g A_n`, i.e. the bits
/// `x_g, ..., x_{g+n-1}` have a majority of ones.
fn majority_cells(bits: &[bool], n_ai: usize, cells: usize) -> Vec<bool> {
    let mut ones = bits[..n_ai].iter().filter(|&&b| b).count();
    let mut out = Vec::with_capacity(cells);
    for g in 0..cells {
        if g > 0 {
            ones = ones + usize::from(bits[g + n_ai - 1]) - usize::from(bits[g - 1]);
        }
        out.push(2 * ones > n_ai);
    }
    out
}

/// `S ∩ X^{cells}` placed back in full window coordinates.
fn restrict(s: &Subspace, n: usize, cells: &[usize]) -> Vec<Vec<u32>> {
    let keep: Vec<usize> = cells.iter().flat_map(|&g| g * n..g * n + n).collect();
    s.intersect_coords(&keep)
        .rows()
        .iter()
        .map(|r| {
            let mut v = vec![0; s.ambient_dim()];
            for (&c, &a) in keep.iter().zip(r) {
                v[c] = a;
            }
            v
        })
        .collect()
}

struct Trial {
    subgroup: Subspace,
    split: bool,
    asymmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixReport {
    pub n_ai: usize,
    pub window: [i64; 2],
    pub trials: u64,
    pub seed: u64,
    pub tv: f64,
    pub tolerance: f64,
    /// Fraction of trials whose window met both `J_n` and `K_n`.
    pub split_fraction: f64,
    pub deviation_bound: f64,
    pub majority_measure: String,
    pub asymmetry_exact: f64,
    pub asymmetry_empirical: f64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct MixOutcome {
    pub empirical: WindowDistribution,
    pub target: WindowDistribution,
    pub report: MixReport,
}

/// Simulates `η = Ψ_*(ν × λ)` for `Γ = Z` on the window `[lo, hi]`, with
/// `ν = μ1 × μ2` and `λ` the Bernoulli(1/2) shift.
pub fn psi_mix(
    mu1: &LazyIRS,
    mu2: &LazyIRS,
    n_ai: usize,
    lo: i64,
    hi: i64,
    trials: u64,
    seed: u64,
) -> Result<MixOutcome> {
    check_odd(n_ai)?;
    check_trials(trials)?;
    let (n, p) = (mu1.ambient_rank(), mu1.modulus());
    if mu2.ambient_rank() != n || mu2.modulus() != p {
        return Err(Error::domain("the two measures live on different groups"));
    }
    let m1 = mu1.marginal(lo, hi)?;
    let m2 = mu2.marginal(lo, hi)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let target = WindowDistribution::mix(&[(half.clone(), m1.clone()), (half, m2.clone())])?;
    let (s1, s2) = (AtomSampler::new(&m1)?, AtomSampler::new(&m2)?);
    let cells = (hi - lo + 1) as usize;
    let width = cells.max(2) - 1 + n_ai;

    let outcomes: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let h1 = s1.draw(&mut rng);
            let h2 = s2.draw(&mut rng);
            let bits: Vec<bool> = (0..width).map(|_| rng.gen()).collect();
            let in_j = majority_cells(&bits, n_ai, cells.max(2));
            let j: Vec<usize> = (0..cells).filter(|&g| in_j[g]).collect();
            let k: Vec<usize> = (0..cells).filter(|&g| !in_j[g]).collect();
            let mut rows = restrict(h1, n, &j);
            rows.extend(restrict(h2, n, &k));
            Trial {
                subgroup: Subspace::span(p, n * cells, rows),
                split: !j.is_empty() && !k.is_empty(),
                asymmetric: in_j[0] != in_j[1],
            }
        })
        .collect();

    let draws: Vec<WindowSubgroup> = outcomes
        .iter()
        .map(|o| WindowSubgroup {
            lo,
            hi,
            n,
            space: o.subgroup.clone(),
        })
        .collect();
    let emp = empirical(n, p, lo, hi, &draws)?;
    let tv = tv_distance(&emp, &target)?.to_f64().unwrap_or(f64::NAN);
    let t = trials as f64;
    let tolerance = 3.0 * (target.len() as f64 / t).sqrt();
    let split_fraction = outcomes.iter().filter(|o| o.split).count() as f64 / t;
    let deviation_bound = 2.0 * split_fraction + tolerance;
    let report = MixReport {
        n_ai,
        window: [lo, hi],
        trials,
        seed,
        tv,
        tolerance,
        split_fraction,
        deviation_bound,
        majority_measure: majority_measure(n_ai)?.to_string(),
        asymmetry_exact: majority_asymmetry(n_ai)?.to_f64().unwrap_or(f64::NAN),
        asymmetry_empirical: outcomes.iter().filter(|o| o.asymmetric).count() as f64 / t,
        pass: tv <= deviation_bound,
    };
    Ok(MixOutcome {
        empirical: emp,
        target,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn brute(n: usize) -> (BigRational, BigRational) {
        let (mut inside, mut differ) = (0i64, 0i64);
        for x in 0u32..1 << (n + 1) {
            let bit = |i: usize| (x >> i) & 1 == 1;
            let maj = |s: usize| 2 * (s..s + n).filter(|&i| bit(i)).count() > n;
            inside += i64::from(maj(0));
            differ += i64::from(maj(0) != maj(1));
        }
        let total = 1i64 << (n + 1);
        (r(inside, total), r(differ, total))
    }

    #[test]
    fn majority_sets_match_enumeration() {
        for n in [1, 3, 5, 7, 9, 11] {
            let (measure, asym) = brute(n);
            assert_eq!(majority_measure(n).unwrap(), measure);
            assert_eq!(majority_measure(n).unwrap(), r(1, 2));
            assert_eq!(majority_asymmetry(n).unwrap(), asym);
        }
        assert!(majority_asymmetry(201).unwrap() < majority_asymmetry(51).unwrap());
        assert!(majority_measure(4).is_err());
    }

    #[test]
    fn sliding_majority() {
        let bits = [true, true, false, false, true, true];
        assert_eq!(majority_cells(&bits, 3, 4), vec![true, false, false, true]);
    }

    #[test]
    fn same_measure_splices_to_itself() {
        let mu = LazyIRS::mixture(vec![
            (r(1, 2), LazyIRS::full(1, 2)),
            (r(1, 2), LazyIRS::trivial(1, 2)),
        ])
        .unwrap()
        .block_average(2)
        .unwrap();
        let out = psi_mix(&mu, &mu, 11, 0, 1, 20_000, 3).unwrap();
        assert_eq!(out.target, mu.marginal(0, 1).unwrap());
        assert!(out.report.pass, "{:?}", out.report);
    }

    #[test]
    fn full_and_trivial_split_evenly() {
        let out = psi_mix(
            &LazyIRS::full(1, 2),
            &LazyIRS::trivial(1, 2),
            51,
            0,
            0,
            20_000,
            7,
        )
        .unwrap();
        assert_eq!(out.report.split_fraction, 0.0);
        assert!(out.report.tv <= out.report.tolerance);
        let again = psi_mix(
            &LazyIRS::full(1, 2),
            &LazyIRS::trivial(1, 2),
            51,
            0,
            0,
            20_000,
            7,
        )
        .unwrap();
        assert_eq!(again.report, out.report);
    }

    #[test]
    fn even_n_is_rejected() {
        assert!(psi_mix(
            &LazyIRS::full(1, 2),
            &LazyIRS::trivial(1, 2),
            10,
            0,
            0,
            10,
            1
        )
        .is_err());
    }
}
