//! Periodic subgroups with prescribed invariants, and sequences converging
//! to a given one.

use super::submodule::{exponent, join, r_value, SubmoduleGens};
use super::vector::LaurentVector;
use crate::algebra::{enumerate_irreducibles, first_irreducible_of_degree, LaurentPoly};
use crate::error::{Error, Result};

/// One-dimensional case with `0 < r < b`: `{ Σ_{i<r} f_i(x^b) x^i }`.
fn low_rank_piece(b: usize, r: usize, p: u32) -> SubmoduleGens {
    let gens = (0..r)
        .map(|i| LaurentVector::unit(1, 0, LaurentPoly::monomial(1, i as i64, p)))
        .collect();
    SubmoduleGens::new(1, p, b, gens).expect("valid generators")
}

/// One-dimensional case with `r = b`: the first canonical form of
/// codimension 0 or 1 in `F_p[y^{±1}]^b`, `y = x^b`, whose exponent is `b`.
fn full_rank_piece(b: usize, p: u32) -> Result<SubmoduleGens> {
    if b == 1 {
        return Ok(SubmoduleGens::full(1, p));
    }
    let zero = LaurentPoly::zero(p);
    let one = LaurentPoly::one(p);
    for j in 0..b {
        for c in 1..p {
            let diag = LaurentPoly::from_terms(&[(0, c as i64), (1, 1)], p);
            for above in 0..(p as u64).pow(j as u32) {
                let mut digits = above;
                let mut rows = Vec::with_capacity(b);
                for i in 0..b {
                    let mut row = vec![zero.clone(); b];
                    if i == j {
                        row[j] = diag.clone();
                    } else {
                        row[i] = one.clone();
                    }
                    if i < j {
                        // most significant digit first, so row 0 varies slowest
                        let place = (p as u64).pow((j - 1 - i) as u32);
                        row[j] = LaurentPoly::monomial((digits / place) as i64, 0, p);
                        digits %= place;
                    }
                    rows.push(join(&row, 1, b, p));
                }
                let u = SubmoduleGens::new(1, p, b, rows)?;
                if exponent(&u, b)? == b {
                    return Ok(u);
                }
            }
        }
    }
    Err(Error::Consistency(format!(
        "no codimension-one subgroup with exponent {b} found"
    )))
}

/// A subgroup `U ⊆ R^n` with `e(U) = b` and `rk_b(U) = r`.
///
/// Writes `r = q·b + s` and places `q` full-rank pieces and one piece of rank
/// `s` in separate coordinates.
pub fn construct_prescribed(n: usize, b: usize, r: usize, p: u32) -> Result<SubmoduleGens> {
    if n == 0 || b == 0 {
        return Err(Error::domain("n and b must be positive"));
    }
    if r == 0 || r > n * b {
        return Err(Error::domain(format!("r = {r} is outside (0, {}]", n * b)));
    }
    crate::algebra::check_modulus(p)?;
    let (q, s) = (r / b, r % b);
    let mut pieces = Vec::new();
    if q > 0 {
        let full = full_rank_piece(b, p)?;
        pieces.extend(std::iter::repeat_n(full, q));
    }
    if s > 0 {
        pieces.push(low_rank_piece(b, s, p));
    }
    let used = pieces.len();
    pieces.extend(std::iter::repeat_n(SubmoduleGens::zero(1, p), n - used));
    let mut it = pieces.into_iter();
    let first = it.next().unwrap();
    let u = it.fold(first, |acc, piece| acc.direct_sum(&piece));
    u.with_period(b)
}

/// `U_m = f_m U` for the first `count` monic irreducibles `f_m ≠ x`.
pub fn vanish_sequence(u: &SubmoduleGens, count: usize) -> Vec<SubmoduleGens> {
    enumerate_irreducibles(u.modulus(), count)
        .into_iter()
        .map(|f| u.scale_by(&LaurentPoly::from_poly(f)))
        .collect()
}

/// Terms whose exponent came out smaller than `e(U)·b` are skipped; this
/// caps how many may be skipped before giving up.
const MAX_SKIPPED: usize = 64;

/// Subgroups `U_m ⊋ U` with `e(U_m) = e(U)·b` and `r(U_m) = r_target` that
/// converge to `U`.
///
/// Works at period `e = e(U)`: the columns of the rescaled module that carry
/// no pivot of `U` span a free complement `F` of rank `r = r(U)` meeting `U`
/// trivially. A subgroup `U'` of `F` with `e(U') = b` and
/// `rk_b(U') = r·b − r_target` is built in `F`, and `U_m = U + f_m U'` where
/// `f_m` is the first irreducible of degree `m` in `y = x^e`.
pub fn approach_sequence(
    u: &SubmoduleGens,
    b: usize,
    r_target: usize,
    count: usize,
) -> Result<Vec<SubmoduleGens>> {
    let p = u.modulus();
    let n = u.ambient_rank();
    if b == 0 {
        return Err(Error::domain("b must be positive"));
    }
    let inv = r_value(u)?;
    let (e, r) = (inv.e, inv.r);
    if r == 0 {
        return Err(Error::domain("r(U) > 0 fails: U has full rank"));
    }
    if r_target >= r * b {
        return Err(Error::domain(format!(
            "r_target < r(U)·b fails: {r_target} >= {r}·{b}"
        )));
    }
    let canon = u.canonical(e)?;
    let free: Vec<usize> = (0..n * e).filter(|c| !canon.pivots().contains(c)).collect();
    debug_assert_eq!(free.len(), r);
    let inner = construct_prescribed(r, b, r * b - r_target, p)?;
    let base = canon.to_gens().gens_at(e * b);

    let mut out = Vec::with_capacity(count);
    let mut skipped = 0;
    let mut degree = 0;
    while out.len() < count {
        degree += 1;
        let f = LaurentPoly::from_poly(first_irreducible_of_degree(p, degree));
        let mut gens = base.clone();
        for g in inner.gens() {
            let mut cols = vec![LaurentPoly::zero(p); n * e];
            for (i, c) in g.coords().iter().enumerate() {
                cols[free[i]] = c * &f;
            }
            gens.push(join(&cols, n, e, p));
        }
        let um = SubmoduleGens::new(n, p, e * b, gens)?;
        let got = r_value(&um)?;
        if got.e == e * b && got.r == r_target {
            out.push(um.with_period(e * b)?);
        } else {
            skipped += 1;
            if skipped > MAX_SKIPPED {
                return Err(Error::Consistency(format!(
                    "too many terms with invariants {got:?}"
                )));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_laurent;
    use crate::modules::submodule::{rk_m, InvariantReport};

    fn all_vectors(n: usize, p: u32, lo: i64, hi: i64) -> Vec<LaurentVector> {
        let width = (hi - lo + 1) as usize;
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

    #[test]
    fn construct_examples() {
        let r = construct_prescribed(1, 1, 1, 2).unwrap();
        assert!(r.same_module(&SubmoduleGens::full(1, 2)));
        let even = construct_prescribed(1, 2, 1, 3).unwrap();
        let expected = SubmoduleGens::new(
            1,
            3,
            2,
            vec![LaurentVector::unit(1, 0, LaurentPoly::one(3))],
        )
        .unwrap();
        assert!(even.same_module(&expected));
        let u = construct_prescribed(2, 2, 3, 2).unwrap();
        assert_eq!(r_value(&u).unwrap(), InvariantReport { e: 2, rk: 3, r: 1 });
        assert!(matches!(
            construct_prescribed(2, 2, 5, 2),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            construct_prescribed(2, 2, 0, 2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn construct_round_trips() {
        for p in [2u32, 3] {
            for n in 1..=3 {
                for b in 1..=4 {
                    for r in 1..=n * b {
                        let u = construct_prescribed(n, b, r, p).unwrap();
                        assert_eq!(exponent(&u, b).unwrap(), b, "p={p} n={n} b={b} r={r}");
                        assert_eq!(rk_m(&u, b).unwrap(), r);
                    }
                }
            }
        }
    }

    #[test]
    fn vanish_examples() {
        assert!(vanish_sequence(&SubmoduleGens::zero(2, 3), 3)
            .iter()
            .all(|u| u.same_module(&SubmoduleGens::zero(2, 3))));
        let seq = vanish_sequence(&SubmoduleGens::full(1, 2), 2);
        for (u, f) in seq.iter().zip(["1+x", "1+x+x^2"]) {
            let g = LaurentVector::unit(1, 0, parse_laurent(f, 2).unwrap());
            assert!(u.same_module(&SubmoduleGens::new(1, 2, 1, vec![g]).unwrap()));
        }
    }

    #[test]
    fn vanish_keeps_invariants_and_tends_to_zero() {
        let u = construct_prescribed(2, 2, 3, 2).unwrap();
        let inv = r_value(&u).unwrap();
        let seq = vanish_sequence(&u, 10);
        for um in &seq {
            assert_eq!(r_value(um).unwrap(), inv);
        }
        let window = all_vectors(2, 2, -1, 1);
        let last_hit = window
            .iter()
            .filter(|w| !w.is_zero())
            .map(|w| {
                seq.iter()
                    .rposition(|um| um.contains(w))
                    .map_or(0, |i| i + 1)
            })
            .max()
            .unwrap();
        assert!(last_hit < seq.len());
    }

    #[test]
    fn approach_examples() {
        let zero = SubmoduleGens::zero(1, 2);
        let seq = approach_sequence(&zero, 2, 1, 3).unwrap();
        let even = SubmoduleGens::new(
            1,
            2,
            2,
            vec![LaurentVector::unit(1, 0, LaurentPoly::one(2))],
        )
        .unwrap();
        for (m, um) in seq.iter().enumerate() {
            let f = LaurentPoly::from_poly(first_irreducible_of_degree(2, m + 1));
            assert!(um.same_module(&even.scale_by(&f)));
            assert_eq!(r_value(um).unwrap(), InvariantReport { e: 2, rk: 1, r: 1 });
        }
        let seq = approach_sequence(&zero, 1, 0, 3).unwrap();
        for (m, um) in seq.iter().enumerate() {
            let f = LaurentPoly::from_poly(first_irreducible_of_degree(2, m + 1));
            assert!(um.same_module(&SubmoduleGens::full(1, 2).scale_by(&f)));
        }
        assert!(matches!(
            approach_sequence(&zero, 2, 2, 1),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            approach_sequence(&SubmoduleGens::full(1, 2), 2, 0, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn approach_invariants_and_convergence() {
        let cases = [
            (construct_prescribed(2, 2, 3, 2).unwrap(), 2, 1),
            (construct_prescribed(1, 2, 1, 3).unwrap(), 3, 2),
            (SubmoduleGens::zero(2, 2), 2, 3),
            (construct_prescribed(2, 1, 1, 2).unwrap(), 3, 0),
        ];
        for (u, b, target) in cases {
            let e = r_value(&u).unwrap().e;
            let seq = approach_sequence(&u, b, target, 8).unwrap();
            let window = all_vectors(u.ambient_rank(), u.modulus(), -1, 1);
            for um in &seq {
                let inv = r_value(um).unwrap();
                assert_eq!((inv.e, inv.r), (e * b, target));
                assert!(um.contains_module(&u));
                assert!(!u.contains_module(um));
            }
            for w in &window {
                if !u.contains(w) {
                    assert!(!seq.last().unwrap().contains(w), "{w} survives in {u:?}");
                }
            }
        }
    }
}
