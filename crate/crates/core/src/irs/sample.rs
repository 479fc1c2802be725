use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::measure::{block_pieces, LazyIRS};
use super::subspace::Subspace;
use super::window::{WindowDistribution, WindowSubgroup};
use crate::error::{Error, Result};

/// Most draws a single call may request.
pub const TRIAL_LIMIT: u64 = 10_000_000;

/// The generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub(crate) fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::domain("need at least one trial"));
    }
    if trials > TRIAL_LIMIT {
        return Err(Error::Budget {
            what: "trials",
            requested: trials.to_string(),
            limit: TRIAL_LIMIT.to_string(),
        });
    }
    Ok(())
}

/// Exact draws from a window distribution: every probability is written over
/// a common `u64` denominator and one uniform integer picks the atom.
#[derive(Clone, Debug)]
pub struct AtomSampler {
    atoms: Vec<Subspace>,
    cumulative: Vec<u64>,
    denominator: u64,
}

impl AtomSampler {
    pub fn new(d: &WindowDistribution) -> Result<Self> {
        let lcm = d
            .support()
            .values()
            .fold(BigInt::one(), |l, w| l.lcm(w.denom()));
        let denominator = lcm.to_u64().ok_or_else(|| Error::Budget {
            what: "common denominator",
            requested: lcm.to_string(),
            limit: u64::MAX.to_string(),
        })?;
        let mut atoms = Vec::new();
        let mut cumulative = Vec::new();
        let mut acc = 0u64;
        for (s, w) in d.support() {
            let scaled = w * BigRational::from_integer(lcm.clone());
            acc += scaled
                .to_integer()
                .to_u64()
                .expect("bounded by the denominator");
            atoms.push(s.clone());
            cumulative.push(acc);
        }
        debug_assert_eq!(acc, denominator);
        Ok(AtomSampler {
            atoms,
            cumulative,
            denominator,
        })
    }

    pub fn draw<R: Rng>(&self, rng: &mut R) -> &Subspace {
        let u = rng.gen_range(0..self.denominator);
        let i = self.cumulative.partition_point(|&c| c <= u);
        &self.atoms[i]
    }
}

/// Draws from the `μ_m` marginal on `[lo, hi]` by simulating the block
/// construction: a uniform shift, then an independent `P^{0,m-1}μ` subgroup
/// for each block, intersected with the window.
#[derive(Clone, Debug)]
pub struct BlockSampler {
    n: usize,
    m: usize,
    lo: i64,
    hi: i64,
    block: AtomSampler,
}

impl BlockSampler {
    pub fn new(mu: &LazyIRS, m: usize, lo: i64, hi: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("block length must be positive"));
        }
        if lo > hi {
            return Err(Error::domain(format!("empty window [{lo}, {hi}]")));
        }
        let block = AtomSampler::new(&mu.marginal(0, m as i64 - 1)?)?;
        Ok(BlockSampler {
            n: mu.ambient_rank(),
            m,
            lo,
            hi,
            block,
        })
    }

    pub fn draw<R: Rng>(&self, rng: &mut R) -> WindowSubgroup {
        let k = rng.gen_range(0..self.m);
        let pieces = block_pieces(self.m, k, self.lo, self.hi);
        let first = pieces[0].0;
        let blocks: Vec<&Subspace> = pieces.iter().map(|_| self.block.draw(rng)).collect();
        let union = Subspace::direct_sum(&blocks);
        let start = (self.lo - first) as usize * self.n;
        let len = (self.hi - self.lo + 1) as usize * self.n;
        let keep: Vec<usize> = (start..start + len).collect();
        WindowSubgroup {
            lo: self.lo,
            hi: self.hi,
            n: self.n,
            space: union.intersect_coords(&keep),
        }
    }
}

/// One draw from the `μ_m` marginal on `[lo, hi]`.
pub fn sample_window(
    mu: &LazyIRS,
    m: usize,
    lo: i64,
    hi: i64,
    seed: u64,
) -> Result<WindowSubgroup> {
    Ok(BlockSampler::new(mu, m, lo, hi)?.draw(&mut trial_rng(seed, 0)))
}

/// `trials` independent draws; draw `t` uses [`trial_rng`]`(seed, t)`.
pub fn sample_many(
    mu: &LazyIRS,
    m: usize,
    lo: i64,
    hi: i64,
    seed: u64,
    trials: u64,
) -> Result<Vec<WindowSubgroup>> {
    check_trials(trials)?;
    let sampler = BlockSampler::new(mu, m, lo, hi)?;
    Ok((0..trials)
        .into_par_iter()
        .map(|t| sampler.draw(&mut trial_rng(seed, t)))
        .collect())
}

/// The empirical law of equally weighted draws on one window.
pub fn empirical(
    n: usize,
    p: u32,
    lo: i64,
    hi: i64,
    draws: &[WindowSubgroup],
) -> Result<WindowDistribution> {
    if draws.is_empty() {
        return Err(Error::domain("no draws"));
    }
    let mut counts: BTreeMap<&Subspace, u64> = BTreeMap::new();
    for d in draws {
        if (d.lo, d.hi, d.n) != (lo, hi, n) {
            return Err(Error::domain("draw from a different window"));
        }
        *counts.entry(&d.space).or_default() += 1;
    }
    let total = BigInt::from(draws.len());
    WindowDistribution::from_atoms(
        n,
        p,
        lo,
        hi,
        counts
            .into_iter()
            .map(|(s, c)| (s.clone(), BigRational::new(BigInt::from(c), total.clone()))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::irs::{mu_m_marginal, tv_distance};
    use num_traits::ToPrimitive;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn mixture() -> LazyIRS {
        LazyIRS::mixture(vec![
            (r(1, 3), LazyIRS::full(1, 2)),
            (r(2, 3), LazyIRS::trivial(1, 2)),
        ])
        .unwrap()
    }

    #[test]
    fn point_mass_draws_are_constant() {
        let full = LazyIRS::full(1, 2);
        let draws = sample_many(&full, 3, -1, 2, 5, 200).unwrap();
        assert!(draws.iter().all(WindowSubgroup::is_full));
    }

    #[test]
    fn draws_are_reproducible() {
        let a = sample_window(&mixture(), 4, 0, 1, 11).unwrap();
        let b = sample_window(&mixture(), 4, 0, 1, 11).unwrap();
        assert_eq!(a, b);
        let many = sample_many(&mixture(), 4, 0, 1, 11, 1000).unwrap();
        assert_eq!(many, sample_many(&mixture(), 4, 0, 1, 11, 1000).unwrap());
        assert_eq!(many[0], a);
    }

    #[test]
    fn atom_sampler_frequencies() {
        let d = mixture().marginal(0, 0).unwrap();
        let s = AtomSampler::new(&d).unwrap();
        let mut rng = trial_rng(3, 0);
        let full = (0..30_000).filter(|_| s.draw(&mut rng).rank() == 1).count();
        assert!((full as f64 / 30_000.0 - 1.0 / 3.0).abs() < 0.02);
    }

    #[test]
    fn empirical_law_matches_exact() {
        let (m, lo, hi, trials) = (3, 0, 2, 50_000u64);
        let draws = sample_many(&mixture(), m, lo, hi, 7, trials).unwrap();
        let emp = empirical(1, 2, lo, hi, &draws).unwrap();
        let exact = mu_m_marginal(&mixture(), m, lo, hi).unwrap();
        let tv = tv_distance(&emp, &exact).unwrap().to_f64().unwrap();
        let tol = 3.0 * (exact.len() as f64 / trials as f64).sqrt();
        assert!(tv <= tol, "tv {tv} > {tol}");
    }

    #[test]
    fn rejects_bad_requests() {
        assert!(sample_many(&mixture(), 2, 0, 0, 1, 0).is_err());
        assert!(sample_many(&mixture(), 0, 0, 0, 1, 1).is_err());
        assert!(empirical(1, 2, 0, 0, &[]).is_err());
    }
}
