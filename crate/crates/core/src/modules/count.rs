//! Submodules of finite codimension in `R^k`.

use num_bigint::BigUint;
use num_traits::{One, Pow};

use super::submodule::{join, SubmoduleGens};
use crate::algebra::hnf::hermite_rows;
use crate::algebra::irreducible::monic_of_degree;
use crate::algebra::{check_modulus, LaurentPoly, Poly};
use crate::error::{Error, Result};

/// Largest `p^{ak}` that [`enumerate_submodules`] will attempt.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

/// Number of submodules `M ⊆ R^k` with `dim_{F_p} R^k / M = a`.
pub fn count_submodules_formula(p: u32, k: usize, a: usize) -> BigUint {
    if a == 0 {
        return BigUint::one();
    }
    let base = BigUint::from(p);
    Pow::pow(&base, a * k) - Pow::pow(&base, (a - 1) * k)
}

/// Compositions of `a` into `k` nonnegative parts, lexicographically.
fn compositions(a: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if a == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=a {
        for mut rest in compositions(a - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All polynomials of degree below `d`, in enumeration order.
fn residues(p: u32, d: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(p)];
    for deg in 0..d {
        for lead in 1..p {
            out.extend(monic_of_degree(p, deg).map(|f| f.scale(lead)));
        }
    }
    out
}

/// Lists every submodule of `R^k` of `F_p`-codimension `a` by its canonical
/// Hermite form: upper triangular, diagonal monic with nonzero constant term
/// and degrees summing to `a`, entries above each pivot of lower degree.
pub fn enumerate_submodules(p: u32, k: usize, a: usize) -> Result<Vec<SubmoduleGens>> {
    check_modulus(p)?;
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    let requested = (p as u128).checked_pow((a * k) as u32);
    if requested.is_none_or(|r| r > ENUMERATION_LIMIT as u128) {
        return Err(Error::Budget {
            what: "submodule enumeration p^(ak)",
            requested: count_string(p, a * k),
            limit: ENUMERATION_LIMIT.to_string(),
        });
    }
    let mut out = Vec::new();
    for degs in compositions(a, k) {
        let diagonals: Vec<Vec<Poly>> = degs
            .iter()
            .map(|&d| {
                monic_of_degree(p, d)
                    .filter(|f| f.constant_term() != 0)
                    .collect()
            })
            .collect();
        // Per column j: choices for the pivot and for the j entries above it.
        let columns: Vec<Vec<Vec<Poly>>> = (0..k)
            .map(|j| {
                let res = residues(p, degs[j]);
                let mut cols = Vec::new();
                for piv in &diagonals[j] {
                    for above in product(&res, j) {
                        let mut col = above;
                        col.push(piv.clone());
                        cols.push(col);
                    }
                }
                cols
            })
            .collect();
        for choice in product_of(&columns) {
            let rows: Vec<Vec<LaurentPoly>> = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            if i <= j {
                                LaurentPoly::from_poly(choice[j][i].clone())
                            } else {
                                LaurentPoly::zero(p)
                            }
                        })
                        .collect()
                })
                .collect();
            let hnf = hermite_rows(rows.clone(), k);
            if hnf.rows != rows {
                return Err(Error::Consistency(
                    "enumerated matrix is not in canonical form".into(),
                ));
            }
            let gens = rows.iter().map(|r| join(r, k, 1, p)).collect();
            out.push(SubmoduleGens::new(k, p, 1, gens)?);
        }
    }
    Ok(out)
}

fn count_string(p: u32, exp: usize) -> String {
    format!("{}", Pow::pow(&BigUint::from(p), exp))
}

/// All length-`len` sequences over `items`.
fn product<T: Clone>(items: &[T], len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// Cartesian product picking one entry from each list.
fn product_of<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_laurent;
    use crate::modules::LaurentVector;
    use std::collections::HashSet;

    #[test]
    fn formula_examples() {
        assert_eq!(count_submodules_formula(2, 1, 1), BigUint::from(1u32));
        assert_eq!(count_submodules_formula(2, 2, 1), BigUint::from(3u32));
        assert_eq!(count_submodules_formula(7, 3, 0), BigUint::from(1u32));
        assert_eq!(
            count_submodules_formula(3, 10, 10),
            Pow::pow(&BigUint::from(3u32), 100u32) - Pow::pow(&BigUint::from(3u32), 90u32)
        );
    }

    fn principal(s: &str) -> SubmoduleGens {
        let f = parse_laurent(s, 2).unwrap();
        SubmoduleGens::new(1, 2, 1, vec![LaurentVector::unit(1, 0, f)]).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_submodules(2, 1, 1).unwrap(),
            vec![principal("1+x")]
        );
        assert_eq!(
            enumerate_submodules(2, 1, 2).unwrap(),
            vec![principal("1+x^2"), principal("1+x+x^2")]
        );
        assert_eq!(enumerate_submodules(2, 2, 1).unwrap().len(), 3);
        assert_eq!(
            enumerate_submodules(5, 3, 0).unwrap(),
            vec![SubmoduleGens::full(3, 5)]
        );
    }

    #[test]
    fn enumeration_matches_formula() {
        for p in [2u32, 3] {
            for k in 1..=2 {
                for a in 0..=2 {
                    let list = enumerate_submodules(p, k, a).unwrap();
                    assert_eq!(BigUint::from(list.len()), count_submodules_formula(p, k, a));
                    let forms: HashSet<_> = list.iter().map(|u| u.canonical(1).unwrap()).collect();
                    assert_eq!(forms.len(), list.len());
                    for c in &forms {
                        assert_eq!(c.codimension(), Some(a));
                    }
                }
            }
        }
    }

    /// Rank of a list of vectors over F_p by plain elimination.
    fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
        let mut rank = 0;
        let width = rows.first().map_or(0, Vec::len);
        for c in 0..width {
            let Some(r) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(p)) else {
                continue;
            };
            rows.swap(rank, r);
            let inv = (1..p).find(|&t| rows[rank][c] * t % p == 1).unwrap();
            let piv: Vec<u64> = rows[rank].iter().map(|&x| x * inv % p).collect();
            for row in rows.iter_mut() {
                let f = row[c] % p;
                for (x, y) in row.iter_mut().zip(&piv) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
            rows[rank] = piv;
            rank += 1;
        }
        rank
    }

    fn all_vectors(p: u64, len: usize) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u64>| (0..p).map(move |c| [v.clone(), vec![c]].concat()))
                .collect();
        }
        out
    }

    /// Quotients `R^k -> Q` with `dim Q = a`, counted as pairs (invertible
    /// action of x on F_p^a, images of the k basis vectors generating Q),
    /// divided by the choices of basis of Q.
    fn count_by_quotients(p: u64, k: usize, a: usize) -> u64 {
        if a == 0 {
            return 1;
        }
        let apply = |t: &[u64], v: &[u64]| -> Vec<u64> {
            (0..a)
                .map(|i| (0..a).map(|j| t[i * a + j] * v[j]).sum::<u64>() % p)
                .collect()
        };
        let mats: Vec<Vec<u64>> = all_vectors(p, a * a)
            .into_iter()
            .filter(|t| rank_mod_p(t.chunks(a).map(<[u64]>::to_vec).collect(), p) == a)
            .collect();
        let gl = mats.len() as u64;
        let mut hits = 0u64;
        for t in &mats {
            for tuple in all_vectors(p, a * k) {
                let mut span = Vec::new();
                for v in tuple.chunks(a) {
                    let mut w = v.to_vec();
                    for _ in 0..a {
                        span.push(w.clone());
                        w = apply(t, &w);
                    }
                }
                if rank_mod_p(span, p) == a {
                    hits += 1;
                }
            }
        }
        assert_eq!(hits % gl, 0);
        hits / gl
    }

    #[test]
    fn enumeration_matches_quotient_count() {
        for p in [2u32, 3] {
            for k in 1..=2 {
                for a in 0..=2 {
                    let n = enumerate_submodules(p, k, a).unwrap().len() as u64;
                    assert_eq!(n, count_by_quotients(p as u64, k, a), "p={p} k={k} a={a}");
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        match enumerate_submodules(2, 4, 5) {
            Err(Error::Budget { requested, .. }) => assert_eq!(requested, "1048576"),
            other => panic!("{other:?}"),
        }
    }
}
