//! Seeded random instances.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::LaurentPoly;
use crate::irs::LazyIRS;
use crate::lamplighter::{phi_encoding, GroupElement, QPoint, SubgroupTriple};
use crate::modules::{LaurentVector, SubmoduleGens};
use crate::Result;

pub fn laurent(rng: &mut ChaCha8Rng, p: u32, lo: i64, hi: i64) -> LaurentPoly {
    let terms: Vec<(i64, i64)> = (0..rng.gen_range(0..=3))
        .map(|_| (rng.gen_range(lo..=hi), rng.gen_range(0..p as i64)))
        .collect();
    LaurentPoly::from_terms(&terms, p)
}

pub fn vector(rng: &mut ChaCha8Rng, n: usize, p: u32, lo: i64, hi: i64) -> LaurentVector {
    let coords = (0..n).map(|_| laurent(rng, p, lo, hi)).collect();
    LaurentVector::new(coords, p).expect("coordinates share the modulus")
}

/// The span over `F_p[x^{±e}]` of up to `max_gens` random vectors.
pub fn submodule(
    rng: &mut ChaCha8Rng,
    n: usize,
    p: u32,
    e: usize,
    max_gens: usize,
) -> SubmoduleGens {
    let gens = (0..rng.gen_range(0..=max_gens))
        .map(|_| vector(rng, n, p, -2, 3))
        .collect();
    SubmoduleGens::new(n, p, e, gens).expect("valid modulus and period")
}

pub fn triple(rng: &mut ChaCha8Rng, n: usize, p: u32, max_s: u64) -> SubgroupTriple {
    let s = rng.gen_range(1..=max_s);
    let u = submodule(rng, n, p, s as usize, 2);
    let v = vector(rng, n, p, -2, 2);
    SubgroupTriple::new(s, u, v).expect("U has period s")
}

pub fn element(rng: &mut ChaCha8Rng, n: usize, p: u32) -> GroupElement {
    GroupElement::new(vector(rng, n, p, -3, 3), rng.gen_range(-4..=4))
}

/// A triple with `r_V > 0` and a target strictly below `Φ(V)` in `Q`.
pub fn approach_instance(
    rng: &mut ChaCha8Rng,
    p: u32,
    max_s: u64,
) -> Result<(SubgroupTriple, QPoint)> {
    loop {
        let s = rng.gen_range(1..=max_s);
        let divisors: Vec<u64> = (1..=s).filter(|d| s % d == 0).collect();
        let e = divisors[rng.gen_range(0..divisors.len())];
        let u = submodule(rng, 1, p, e as usize, 1);
        let v = SubgroupTriple::new(s, u.with_period(s as usize)?, vector(rng, 1, p, -1, 1))?;
        let here = phi_encoding(&v)?;
        let targets: Vec<QPoint> = (1..=here.t)
            .filter(|t| here.t % t == 0)
            .flat_map(|t| (0..here.r * (here.t / t)).map(move |r| QPoint { t, r }))
            .collect();
        if !targets.is_empty() {
            let target = targets[rng.gen_range(0..targets.len())];
            return Ok((v, target));
        }
    }
}

/// `w_1 δ_A + w_2 δ_0 + w_3 ν` with `ν` the orbit measure of a random
/// periodic subgroup of `F_2[x^{±1}]` and random positive weights.
pub fn three_atom_mixture(rng: &mut ChaCha8Rng) -> Result<LazyIRS> {
    let orbit = loop {
        let e = rng.gen_range(2..=3);
        let u = submodule(rng, 1, 2, e, 1);
        let mu = LazyIRS::orbit(u)?;
        let d = mu.marginal(0, 2)?;
        if d.len() > 1 {
            break mu;
        }
    };
    let w: Vec<i64> = (0..3).map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = w.iter().sum();
    let weight = |x: i64| BigRational::new(BigInt::from(x), BigInt::from(total));
    LazyIRS::mixture(vec![
        (weight(w[0]), LazyIRS::full(1, 2)),
        (weight(w[1]), LazyIRS::trivial(1, 2)),
        (weight(w[2]), orbit),
    ])
}
