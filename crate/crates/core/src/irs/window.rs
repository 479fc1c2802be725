use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Largest support a computed distribution may reach.
pub const SUPPORT_LIMIT: usize = 1_000_000;

/// A subgroup of `X^{[lo, hi]}`, the lamp configurations supported in the window.
///
/// Coordinate `(pos - lo)·n + i` is lamp component `i` at position `pos`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WindowSubgroup {
    pub lo: i64,
    pub hi: i64,
    pub n: usize,
    pub space: Subspace,
}

impl WindowSubgroup {
    pub fn cells(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_full(&self) -> bool {
        self.space.rank() == self.space.ambient_dim()
    }

    pub fn is_trivial(&self) -> bool {
        self.space.rank() == 0
    }
}

impl fmt::Display for WindowSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]{{{}}}",
            self.lo,
            self.hi,
            self.space.encode_rows().join(" ")
        )
    }
}

impl fmt::Debug for WindowSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An exact probability distribution on the subgroups of one window.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WindowDistribution {
    n: usize,
    p: u32,
    lo: i64,
    hi: i64,
    support: BTreeMap<Subspace, BigRational>,
}

fn window_dim(n: usize, lo: i64, hi: i64) -> usize {
    n * (hi - lo + 1) as usize
}

impl WindowDistribution {
    pub fn point(n: usize, p: u32, lo: i64, hi: i64, space: Subspace) -> Self {
        assert_eq!(space.ambient_dim(), window_dim(n, lo, hi));
        WindowDistribution {
            n,
            p,
            lo,
            hi,
            support: BTreeMap::from([(space, BigRational::one())]),
        }
    }

    /// Builds from weighted atoms, merging repeats. Weights must be
    /// nonnegative and sum to one.
    pub fn from_atoms(
        n: usize,
        p: u32,
        lo: i64,
        hi: i64,
        atoms: impl IntoIterator<Item = (Subspace, BigRational)>,
    ) -> Result<Self> {
        let dim = window_dim(n, lo, hi);
        let mut support = BTreeMap::new();
        for (s, w) in atoms {
            if s.ambient_dim() != dim || s.modulus() != p {
                return Err(Error::domain("atom does not live in the window"));
            }
            if w.is_negative() {
                return Err(Error::domain("negative probability"));
            }
            *support.entry(s).or_insert_with(BigRational::zero) += w;
        }
        support.retain(|_, w: &mut BigRational| !w.is_zero());
        let d = WindowDistribution {
            n,
            p,
            lo,
            hi,
            support,
        };
        if d.total() != BigRational::one() {
            return Err(Error::domain(format!("probabilities sum to {}", d.total())));
        }
        Ok(d)
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn support(&self) -> &BTreeMap<Subspace, BigRational> {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn total(&self) -> BigRational {
        self.support
            .values()
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn probability(&self, s: &Subspace) -> BigRational {
        self.support
            .get(s)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn atoms(&self) -> impl Iterator<Item = (WindowSubgroup, &BigRational)> + '_ {
        self.support.iter().map(move |(s, w)| {
            (
                WindowSubgroup {
                    lo: self.lo,
                    hi: self.hi,
                    n: self.n,
                    space: s.clone(),
                },
                w,
            )
        })
    }

    /// The same law moved by `delta` positions.
    pub fn translate(&self, delta: i64) -> Self {
        WindowDistribution {
            lo: self.lo + delta,
            hi: self.hi + delta,
            ..self.clone()
        }
    }

    /// Pushforward under `H ↦ H ∩ X^{[lo, hi]}`.
    pub fn project(&self, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi || lo < self.lo || hi > self.hi {
            return Err(Error::domain(format!(
                "[{lo}, {hi}] is not a subwindow of [{}, {}]",
                self.lo, self.hi
            )));
        }
        let start = (lo - self.lo) as usize * self.n;
        let keep: Vec<usize> = (start..start + window_dim(self.n, lo, hi)).collect();
        let mut support = BTreeMap::new();
        for (s, w) in &self.support {
            *support
                .entry(s.intersect_coords(&keep))
                .or_insert_with(BigRational::zero) += w;
        }
        Ok(WindowDistribution {
            n: self.n,
            p: self.p,
            lo,
            hi,
            support,
        })
    }

    /// Law of `H ⊕ K` for independent `H ~ self`, `K ~ right`, where `right`
    /// lives on the window immediately to the right.
    pub fn product(&self, right: &WindowDistribution) -> Result<Self> {
        if right.lo != self.hi + 1 || right.n != self.n || right.p != self.p {
            return Err(Error::domain("windows are not adjacent"));
        }
        let size = self.len().saturating_mul(right.len());
        if size > SUPPORT_LIMIT {
            return Err(Error::Budget {
                what: "window distribution support",
                requested: size.to_string(),
                limit: SUPPORT_LIMIT.to_string(),
            });
        }
        let mut support = BTreeMap::new();
        for (a, wa) in &self.support {
            for (b, wb) in &right.support {
                *support
                    .entry(Subspace::direct_sum(&[a, b]))
                    .or_insert_with(BigRational::zero) += wa * wb;
            }
        }
        Ok(WindowDistribution {
            n: self.n,
            p: self.p,
            lo: self.lo,
            hi: right.hi,
            support,
        })
    }

    /// `Σ w_i d_i` for distributions on the same window.
    pub fn mix(parts: &[(BigRational, WindowDistribution)]) -> Result<Self> {
        let Some((_, first)) = parts.first() else {
            return Err(Error::domain("empty mixture"));
        };
        let mut support: BTreeMap<Subspace, BigRational> = BTreeMap::new();
        for (w, d) in parts {
            if d.window() != first.window() || d.n != first.n || d.p != first.p {
                return Err(Error::domain(
                    "mixture components live on different windows",
                ));
            }
            for (s, x) in &d.support {
                *support.entry(s.clone()).or_insert_with(BigRational::zero) += w * x;
            }
        }
        support.retain(|_, w| !w.is_zero());
        Ok(WindowDistribution {
            support,
            ..first.clone()
        })
    }

    pub fn to_json(&self) -> DistributionJson {
        DistributionJson {
            schema: DISTRIBUTION_SCHEMA.into(),
            n: self.n,
            p: self.p,
            window: [self.lo, self.hi],
            support: self
                .support
                .iter()
                .map(|(s, w)| AtomJson {
                    basis: s.encode_rows(),
                    probability: w.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &DistributionJson) -> Result<Self> {
        if j.schema != DISTRIBUTION_SCHEMA {
            return Err(Error::domain(format!("unknown schema {:?}", j.schema)));
        }
        let [lo, hi] = j.window;
        if lo > hi {
            return Err(Error::domain("empty window"));
        }
        let dim = window_dim(j.n, lo, hi);
        let atoms =
            j.support
                .iter()
                .map(|a| {
                    let w: BigRational = a.probability.parse().map_err(|_| {
                        Error::domain(format!("bad probability {:?}", a.probability))
                    })?;
                    Ok((Subspace::decode_rows(j.p, dim, &a.basis)?, w))
                })
                .collect::<Result<Vec<_>>>()?;
        WindowDistribution::from_atoms(j.n, j.p, lo, hi, atoms)
    }
}

pub const DISTRIBUTION_SCHEMA: &str = "lamplighter.window-distribution/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomJson {
    pub basis: Vec<String>,
    pub probability: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionJson {
    pub schema: String,
    pub n: usize,
    pub p: u32,
    pub window: [i64; 2],
    pub support: Vec<AtomJson>,
}

/// `Σ_H |d1(H) − d2(H)|`.
pub fn tv_distance(d1: &WindowDistribution, d2: &WindowDistribution) -> Result<BigRational> {
    if d1.window() != d2.window() || d1.n != d2.n || d1.p != d2.p {
        return Err(Error::domain("distributions live on different windows"));
    }
    let mut total = BigRational::zero();
    for (s, w) in &d1.support {
        total += (w - d2.probability(s)).abs();
    }
    for (s, w) in &d2.support {
        if !d1.support.contains_key(s) {
            total += w;
        }
    }
    Ok(total)
}
