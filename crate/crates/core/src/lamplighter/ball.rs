use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;

use super::group::GroupElement;
use super::triple::SubgroupTriple;
use crate::error::{Error, Result};
use crate::modules::LaurentVector;

/// Every lamp configuration supported in `[lo, hi]`, in a fixed order.
pub fn window_vectors(n: usize, p: u32, lo: i64, hi: i64) -> Vec<LaurentVector> {
    let width = (hi - lo + 1).max(0) as usize;
    let total = (p as u64).pow((width * n) as u32);
    (0..total)
        .map(|mut code| {
            let lamps: Vec<Vec<u32>> = (0..width)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let c = (code % p as u64) as u32;
                            code /= p as u64;
                            c
                        })
                        .collect()
                })
                .collect();
            LaurentVector::from_lamps(lo, &lamps, n, p)
        })
        .collect()
}

/// The test set `{(w, t) : supp w ⊆ [-radius, radius], |t| <= shift_bound}`.
pub fn ball_elements(n: usize, p: u32, radius: i64, shift_bound: i64) -> Vec<GroupElement> {
    let vs = window_vectors(n, p, -radius, radius);
    (-shift_bound..=shift_bound)
        .flat_map(|t| vs.iter().map(move |v| GroupElement::new(v.clone(), t)))
        .collect()
}

/// Outcome of comparing a sequence with its proposed limit on a finite ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Convergence {
    /// Membership agrees with the limit for every index `m >= m0`, up to the horizon.
    Stabilized { m0: usize },
    /// `witness` is still classified differently at the last index checked.
    Failed {
        witness: GroupElement,
        in_limit: bool,
        index: usize,
    },
}

impl Convergence {
    pub fn m0(&self) -> Option<usize> {
        match self {
            Convergence::Stabilized { m0 } => Some(*m0),
            Convergence::Failed { .. } => None,
        }
    }
}

/// Checks that membership in `seq(m)`, `m = 1..=horizon`, settles to
/// membership in `limit` on the ball of the given radius and shift bound.
pub fn converges_on_ball<F>(
    seq: F,
    limit: &SubgroupTriple,
    support_radius: i64,
    shift_bound: i64,
    horizon: usize,
) -> Result<Convergence>
where
    F: Fn(usize) -> SubgroupTriple + Sync,
{
    if horizon == 0 {
        return Err(Error::domain("horizon must be at least 1"));
    }
    let oracles: Vec<_> = (1..=horizon)
        .into_par_iter()
        .map(|m| seq(m).oracle())
        .collect();
    let target = limit.oracle();
    let ball = ball_elements(
        limit.ambient_rank(),
        limit.modulus(),
        support_radius,
        shift_bound,
    );
    // last index at which each element is misclassified, 0 if never
    let last: Vec<usize> = ball
        .par_iter()
        .map(|g| {
            let want = target.contains(g);
            (1..=horizon)
                .rev()
                .find(|&m| oracles[m - 1].contains(g) != want)
                .unwrap_or(0)
        })
        .collect();
    let worst = last.iter().copied().max().unwrap_or(0);
    if worst < horizon {
        return Ok(Convergence::Stabilized { m0: worst + 1 });
    }
    let i = last.iter().position(|&l| l == worst).unwrap();
    Ok(Convergence::Failed {
        witness: ball[i].clone(),
        in_limit: target.contains(&ball[i]),
        index: horizon,
    })
}

/// Elements of the subgroup generated by `gens` found by breadth-first word
/// search through `{supp ⊆ [-(r + slack), r + slack], |t| <= shift + slack}`,
/// restricted to the ball of radius `r` and shift bound `shift`.
///
/// Everything returned is in the subgroup; with enough slack it is the whole
/// intersection with the ball.
pub fn word_closure(
    gens: &[GroupElement],
    n: usize,
    p: u32,
    radius: i64,
    shift_bound: i64,
    slack: i64,
) -> HashSet<GroupElement> {
    let mut steps: Vec<GroupElement> = gens.to_vec();
    steps.extend(gens.iter().map(GroupElement::inverse));
    let (big_r, big_s) = (radius + slack, shift_bound + slack);
    let inside = |g: &GroupElement, r: i64, s: i64| {
        g.s.abs() <= s && g.v.support().is_none_or(|(lo, hi)| lo >= -r && hi <= r)
    };
    let start = GroupElement::identity(n, p);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(g) = queue.pop_front() {
        for h in &steps {
            let next = g.multiply(h);
            if inside(&next, big_r, big_s) && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.into_iter()
        .filter(|g| inside(g, radius, shift_bound))
        .collect()
}
