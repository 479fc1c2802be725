use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::subspace::Subspace;
use super::window::WindowDistribution;
use crate::error::{Error, Result};
use crate::modules::{exponent, CanonicalModule, LaurentVector, SubmoduleGens};

/// Longest window a marginal may be asked for.
pub const WINDOW_LIMIT: usize = 24;

/// A shift-invariant random subgroup of `A_{n,p}`, known through its
/// finite-window marginals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LazyIRS {
    n: usize,
    p: u32,
    kind: Kind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Full,
    Trivial,
    /// Uniform on `x^k U`, `0 <= k < e`.
    Orbit {
        u: SubmoduleGens,
        e: usize,
    },
    Mixture(Vec<(BigRational, LazyIRS)>),
    /// `μ_m` built from `base`.
    BlockAverage {
        base: Box<LazyIRS>,
        m: usize,
    },
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn check_window(lo: i64, hi: i64) -> Result<()> {
    if lo > hi {
        return Err(Error::domain(format!("empty window [{lo}, {hi}]")));
    }
    let len = (hi - lo + 1) as u64;
    if len > WINDOW_LIMIT as u64 {
        return Err(Error::Budget {
            what: "window length",
            requested: len.to_string(),
            limit: WINDOW_LIMIT.to_string(),
        });
    }
    Ok(())
}

/// `U ∩ X^{[lo, hi]}` in window coordinates.
///
/// Reduction modulo the canonical form is linear with kernel `U`, so the
/// intersection is the kernel of reduction restricted to the window.
pub fn window_intersection(c: &CanonicalModule, p: u32, lo: i64, hi: i64) -> Subspace {
    let n = c.ambient_rank();
    let cells = (hi - lo + 1) as usize;
    let d = n * cells;
    let residues: Vec<LaurentVector> = (0..d)
        .map(|idx| {
            let mut lamps = vec![vec![0; n]; cells];
            lamps[idx / n][idx % n] = 1;
            c.reduce(&LaurentVector::from_lamps(lo, &lamps, n, p))
        })
        .collect();
    let mut keys = BTreeMap::new();
    for r in &residues {
        for (i, f) in r.coords().iter().enumerate() {
            for (k, _) in f.terms() {
                let next = keys.len();
                keys.entry((i, k)).or_insert(next);
            }
        }
    }
    let width = keys.len();
    let rows = residues
        .iter()
        .enumerate()
        .map(|(idx, r)| {
            let mut row = vec![0; width + d];
            for (i, f) in r.coords().iter().enumerate() {
                for (k, a) in f.terms() {
                    row[keys[&(i, k)]] = a;
                }
            }
            row[width + idx] = 1;
            row
        })
        .collect();
    let kernel: Vec<usize> = (width..width + d).collect();
    Subspace::span(p, width + d, rows).intersect_coords(&kernel)
}

impl LazyIRS {
    /// The point mass at `A`.
    pub fn full(n: usize, p: u32) -> Self {
        LazyIRS {
            n,
            p,
            kind: Kind::Full,
        }
    }

    /// The point mass at `{0}`.
    pub fn trivial(n: usize, p: u32) -> Self {
        LazyIRS {
            n,
            p,
            kind: Kind::Trivial,
        }
    }

    /// The uniform measure on the shift orbit of a periodic subgroup.
    pub fn orbit(u: SubmoduleGens) -> Result<Self> {
        let e = exponent(&u, u.period())?;
        let u = u.with_period(e)?;
        Ok(LazyIRS {
            n: u.ambient_rank(),
            p: u.modulus(),
            kind: Kind::Orbit { u, e },
        })
    }

    /// `Σ w_i μ_i`; weights must be positive and sum to one.
    pub fn mixture(parts: Vec<(BigRational, LazyIRS)>) -> Result<Self> {
        let Some((_, first)) = parts.first() else {
            return Err(Error::domain("empty mixture"));
        };
        let (n, p) = (first.n, first.p);
        let mut total = BigRational::zero();
        for (w, mu) in &parts {
            if !w.is_positive() {
                return Err(Error::domain(format!("mixture weight {w} is not positive")));
            }
            if mu.n != n || mu.p != p {
                return Err(Error::domain("mixture components live on different groups"));
            }
            total += w;
        }
        if !total.is_one() {
            return Err(Error::domain(format!("mixture weights sum to {total}")));
        }
        Ok(LazyIRS {
            n,
            p,
            kind: Kind::Mixture(parts),
        })
    }

    /// The block average `μ_m` of `self`.
    pub fn block_average(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::domain("block length must be positive"));
        }
        check_window(0, m as i64 - 1)?;
        Ok(LazyIRS {
            n: self.n,
            p: self.p,
            kind: Kind::BlockAverage {
                base: Box::new(self.clone()),
                m,
            },
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn tag(&self) -> &'static str {
        match self.kind {
            Kind::Full | Kind::Trivial | Kind::Orbit { .. } => "point mass",
            Kind::Mixture(_) => "mixture",
            Kind::BlockAverage { .. } => "mu_m construction",
        }
    }

    /// Whether the measure is fixed by `μ ↦ μ_m` for every `m`.
    pub fn is_block_fixed(&self) -> bool {
        match &self.kind {
            Kind::Full | Kind::Trivial => true,
            Kind::Orbit { .. } | Kind::BlockAverage { .. } => false,
            Kind::Mixture(parts) => parts.len() == 1 && parts[0].1.is_block_fixed(),
        }
    }

    /// `P^{lo,hi}_* μ`.
    pub fn marginal(&self, lo: i64, hi: i64) -> Result<WindowDistribution> {
        check_window(lo, hi)?;
        let dim = self.n * (hi - lo + 1) as usize;
        let (n, p) = (self.n, self.p);
        match &self.kind {
            Kind::Full => Ok(WindowDistribution::point(
                n,
                p,
                lo,
                hi,
                Subspace::full(p, dim),
            )),
            Kind::Trivial => Ok(WindowDistribution::point(
                n,
                p,
                lo,
                hi,
                Subspace::zero(p, dim),
            )),
            Kind::Orbit { u, e } => {
                let w = ratio(1, *e as i64);
                let atoms = (0..*e)
                    .map(|k| {
                        let c = u.shift(k as i64).canonical(*e)?;
                        Ok((window_intersection(&c, p, lo, hi), w.clone()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                WindowDistribution::from_atoms(n, p, lo, hi, atoms)
            }
            Kind::Mixture(parts) => {
                let parts = parts
                    .iter()
                    .map(|(w, mu)| Ok((w.clone(), mu.marginal(lo, hi)?)))
                    .collect::<Result<Vec<_>>>()?;
                WindowDistribution::mix(&parts)
            }
            Kind::BlockAverage { base, m } => mu_m_marginal(base, *m, lo, hi),
        }
    }

    pub fn to_json(&self) -> IrsJson {
        IrsJson {
            schema: IRS_SCHEMA.into(),
            n: self.n,
            p: self.p,
            measure: self.measure_json(),
        }
    }

    fn measure_json(&self) -> MeasureJson {
        match &self.kind {
            Kind::Full => MeasureJson::Full,
            Kind::Trivial => MeasureJson::Trivial,
            Kind::Orbit { u, e } => MeasureJson::Orbit {
                period: *e,
                gens: u.gens().iter().map(ToString::to_string).collect(),
            },
            Kind::Mixture(parts) => MeasureJson::Mixture {
                parts: parts
                    .iter()
                    .map(|(w, mu)| WeightedJson {
                        weight: w.to_string(),
                        measure: mu.measure_json(),
                    })
                    .collect(),
            },
            Kind::BlockAverage { base, m } => MeasureJson::BlockAverage {
                m: *m,
                base: Box::new(base.measure_json()),
            },
        }
    }

    pub fn from_json(j: &IrsJson) -> Result<Self> {
        if j.schema != IRS_SCHEMA {
            return Err(Error::domain(format!("unknown schema {:?}", j.schema)));
        }
        Self::from_measure_json(j.n, j.p, &j.measure)
    }

    fn from_measure_json(n: usize, p: u32, m: &MeasureJson) -> Result<Self> {
        match m {
            MeasureJson::Full => Ok(Self::full(n, p)),
            MeasureJson::Trivial => Ok(Self::trivial(n, p)),
            MeasureJson::Orbit { period, gens } => {
                let gens = gens
                    .iter()
                    .map(|g| LaurentVector::parse(g, n, p))
                    .collect::<Result<Vec<_>>>()?;
                Self::orbit(SubmoduleGens::new(n, p, *period, gens)?)
            }
            MeasureJson::Mixture { parts } => Self::mixture(
                parts
                    .iter()
                    .map(|w| {
                        let weight: BigRational = w
                            .weight
                            .parse()
                            .map_err(|_| Error::domain(format!("bad weight {:?}", w.weight)))?;
                        Ok((weight, Self::from_measure_json(n, p, &w.measure)?))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            MeasureJson::BlockAverage { m, base } => {
                Self::from_measure_json(n, p, base)?.block_average(*m)
            }
        }
    }
}

pub const IRS_SCHEMA: &str = "lamplighter.irs/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrsJson {
    pub schema: String,
    pub n: usize,
    pub p: u32,
    pub measure: MeasureJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureJson {
    Full,
    Trivial,
    Orbit { period: usize, gens: Vec<String> },
    Mixture { parts: Vec<WeightedJson> },
    BlockAverage { m: usize, base: Box<MeasureJson> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedJson {
    pub weight: String,
    pub measure: MeasureJson,
}

/// Blocks `[qm - k, qm - k + m - 1]` meeting `[lo, hi]`, clipped to it.
pub(crate) fn block_pieces(m: usize, k: usize, lo: i64, hi: i64) -> Vec<(i64, i64, i64)> {
    let m = m as i64;
    let mut start = lo - (lo + k as i64).rem_euclid(m);
    let mut out = Vec::new();
    while start <= hi {
        out.push((start, lo.max(start), hi.min(start + m - 1)));
        start += m;
    }
    out
}

fn shift_term_from_block(
    block: &WindowDistribution,
    m: usize,
    k: usize,
    lo: i64,
    hi: i64,
) -> Result<WindowDistribution> {
    let mut acc: Option<WindowDistribution> = None;
    for (start, a, b) in block_pieces(m, k, lo, hi) {
        let piece = block.project(a - start, b - start)?.translate(start);
        acc = Some(match acc {
            None => piece,
            Some(d) => d.product(&piece)?,
        });
    }
    Ok(acc.expect("a nonempty window meets some block"))
}

/// Marginal on `[lo, hi]` of the `k`-th term `τ^k Φ_*((P^{0,m-1}_* μ)^Z)`.
pub fn shift_term_marginal(
    mu: &LazyIRS,
    m: usize,
    k: usize,
    lo: i64,
    hi: i64,
) -> Result<WindowDistribution> {
    if m == 0 || k >= m {
        return Err(Error::domain(format!(
            "need 0 <= k < m, got k = {k}, m = {m}"
        )));
    }
    check_window(lo, hi)?;
    let block = mu.marginal(0, m as i64 - 1)?;
    shift_term_from_block(&block, m, k, lo, hi)
}

/// Exact marginal of `μ_m` on `[lo, hi]`.
pub fn mu_m_marginal(mu: &LazyIRS, m: usize, lo: i64, hi: i64) -> Result<WindowDistribution> {
    if m == 0 {
        return Err(Error::domain("block length must be positive"));
    }
    check_window(lo, hi)?;
    let block = mu.marginal(0, m as i64 - 1)?;
    let w = ratio(1, m as i64);
    let terms = (0..m)
        .map(|k| Ok((w.clone(), shift_term_from_block(&block, m, k, lo, hi)?)))
        .collect::<Result<Vec<_>>>()?;
    WindowDistribution::mix(&terms)
}

/// Exact `TV(P^{0,j}μ_m, P^{0,j}μ)` against `2j/m` and `2(j+1)/m`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub m: usize,
    pub j: usize,
    pub tv: String,
    pub tv_float: f64,
    pub literal_bound: String,
    pub conservative_bound: String,
    pub literal_held: bool,
    pub pass: bool,
}

impl BoundReport {
    pub fn tv_exact(&self) -> BigRational {
        self.tv.parse().expect("stored as a rational")
    }
}

pub fn check_bound(mu: &LazyIRS, m: usize, j: usize) -> Result<BoundReport> {
    let hi = j as i64;
    let approx = mu_m_marginal(mu, m, 0, hi)?;
    let exact = mu.marginal(0, hi)?;
    let tv = super::tv_distance(&approx, &exact)?;
    let literal = ratio(2 * j as i64, m as i64);
    let conservative = ratio(2 * (j as i64 + 1), m as i64);
    Ok(BoundReport {
        m,
        j,
        tv_float: tv.to_f64().unwrap_or(f64::NAN),
        literal_held: tv <= literal,
        pass: tv <= conservative,
        tv: tv.to_string(),
        literal_bound: literal.to_string(),
        conservative_bound: conservative.to_string(),
    })
}
