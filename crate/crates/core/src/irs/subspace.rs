//! Subspaces of `F_p^d` in reduced row echelon form.

use crate::algebra::fp;
use crate::error::{Error, Result};

/// Largest number of subspaces [`enumerate_subspaces`] will list.
pub const SUBSPACE_LIMIT: u64 = 10_000;

/// A subspace of `F_p^dim`, stored by its reduced row echelon basis so that
/// equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subspace {
    p: u32,
    dim: usize,
    rows: Vec<Vec<u32>>,
}

/// Row-reduces `rows` visiting columns in `order`; returns the nonzero rows
/// and the column of each pivot.
fn rref_in_order(p: u32, mut rows: Vec<Vec<u32>>, order: &[usize]) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut rank = 0;
    let mut pivots = Vec::new();
    for &c in order {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = fp::inv(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = fp::mul(*x, inv, p);
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = fp::sub(*x, fp::mul(f, y, p), p);
                }
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

impl Subspace {
    pub fn span(p: u32, dim: usize, vectors: Vec<Vec<u32>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == dim));
        let order: Vec<usize> = (0..dim).collect();
        let (rows, _) = rref_in_order(p, vectors, &order);
        Subspace { p, dim, rows }
    }

    pub fn zero(p: u32, dim: usize) -> Self {
        Subspace {
            p,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn full(p: u32, dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| (0..dim).map(|j| u32::from(i == j)).collect())
            .collect();
        Subspace { p, dim, rows }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut all = self.rows.clone();
        all.push(v.to_vec());
        Subspace::span(self.p, self.dim, all).rank() == self.rank()
    }

    /// `S ∩ span{e_c : c ∈ keep}`, written in the coordinates `keep` (in that order).
    pub fn intersect_coords(&self, keep: &[usize]) -> Subspace {
        let mut inside = vec![false; self.dim];
        for &c in keep {
            inside[c] = true;
        }
        let mut order: Vec<usize> = (0..self.dim).filter(|&c| !inside[c]).collect();
        let outside = order.len();
        order.extend(keep.iter().copied());
        let (rows, pivots) = rref_in_order(self.p, self.rows.clone(), &order);
        let first_inside: Vec<usize> = order[outside..].to_vec();
        let basis = rows
            .iter()
            .zip(&pivots)
            .filter(|(_, c)| first_inside.contains(c))
            .map(|(r, _)| keep.iter().map(|&c| r[c]).collect())
            .collect();
        Subspace::span(self.p, keep.len(), basis)
    }

    /// Direct sum of subspaces of consecutive coordinate blocks.
    pub fn direct_sum(parts: &[&Subspace]) -> Subspace {
        let p = parts.first().map_or(2, |s| s.p);
        let dim: usize = parts.iter().map(|s| s.dim).sum();
        let mut rows = Vec::new();
        let mut offset = 0;
        for s in parts {
            for r in &s.rows {
                let mut v = vec![0; dim];
                v[offset..offset + s.dim].copy_from_slice(r);
                rows.push(v);
            }
            offset += s.dim;
        }
        // a direct sum of echelon bases in consecutive blocks is already reduced
        Subspace { p, dim, rows }
    }

    /// Rows as digit strings for `p <= 10`, comma separated otherwise.
    pub fn encode_rows(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| {
                if self.p <= 10 {
                    r.iter()
                        .map(|c| char::from_digit(*c, 10).unwrap())
                        .collect()
                } else {
                    r.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                }
            })
            .collect()
    }

    pub fn decode_rows(p: u32, dim: usize, rows: &[String]) -> Result<Subspace> {
        let parsed = rows
            .iter()
            .map(|s| {
                let v: Option<Vec<u32>> = if p <= 10 {
                    s.chars().map(|c| c.to_digit(10)).collect()
                } else {
                    s.split(',').map(|t| t.trim().parse().ok()).collect()
                };
                match v {
                    Some(v) if v.len() == dim && v.iter().all(|&c| c < p) => Ok(v),
                    _ => Err(Error::domain(format!("bad basis row {s:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let s = Subspace::span(p, dim, parsed.clone());
        if s.rows != parsed {
            return Err(Error::domain("basis rows are not in reduced echelon form"));
        }
        Ok(s)
    }
}

/// Number of `k`-dimensional subspaces of `F_p^d`.
pub fn gaussian_binomial(p: u64, d: u32, k: u32) -> u128 {
    if k > d {
        return 0;
    }
    let p = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= p.pow(d - i) - 1;
        den *= p.pow(i + 1) - 1;
    }
    num / den
}

/// Every subspace of `F_p^d`, by dimension and then by pivot pattern.
pub fn enumerate_subspaces(p: u32, d: usize) -> Result<Vec<Subspace>> {
    let total: u128 = (0..=d as u32)
        .map(|k| gaussian_binomial(p as u64, d as u32, k))
        .sum();
    if total > SUBSPACE_LIMIT as u128 {
        return Err(Error::Budget {
            what: "subspace enumeration",
            requested: total.to_string(),
            limit: SUBSPACE_LIMIT.to_string(),
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    for k in 0..=d {
        for pivots in combinations(d, k) {
            // free slots: (row, column) right of the row's pivot, not a pivot column
            let slots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &pc)| {
                    let pivots = &pivots;
                    (pc + 1..d)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (i, c))
                })
                .collect();
            let count = (p as u64).pow(slots.len() as u32);
            for mut code in 0..count {
                let mut rows = vec![vec![0u32; d]; k];
                for (i, &pc) in pivots.iter().enumerate() {
                    rows[i][pc] = 1;
                }
                for &(i, c) in &slots {
                    rows[i][c] = (code % p as u64) as u32;
                    code /= p as u64;
                }
                out.push(Subspace { p, dim: d, rows });
            }
        }
    }
    Ok(out)
}

fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..d {
        for rest in combinations(d, k - 1) {
            if rest.first().is_none_or(|&r| r > first) {
                let mut v = vec![first];
                v.extend(rest);
                out.push(v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_subspaces(2, 1).unwrap().len(), 2);
        assert_eq!(enumerate_subspaces(2, 2).unwrap().len(), 5);
        assert_eq!(enumerate_subspaces(3, 2).unwrap().len(), 6);
        assert!(matches!(
            enumerate_subspaces(2, 8),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn enumeration_is_canonical_and_complete() {
        for (p, dmax) in [(2u32, 6usize), (3, 4)] {
            for d in 0..=dmax {
                let all = enumerate_subspaces(p, d).unwrap();
                let set: HashSet<_> = all.iter().cloned().collect();
                assert_eq!(set.len(), all.len());
                for s in &all {
                    assert_eq!(&Subspace::span(p, d, s.rows.clone()), s);
                }
                let expected: u128 = (0..=d as u32)
                    .map(|k| gaussian_binomial(p as u64, d as u32, k))
                    .sum();
                assert_eq!(all.len() as u128, expected);
            }
        }
        // 1 + 3 + 1 lines/planes of F_2^2 by direct count of spanning sets
        let mut spans = HashSet::new();
        for a in 0..4u32 {
            for b in 0..4u32 {
                spans.insert(Subspace::span(
                    2,
                    2,
                    vec![vec![a & 1, a >> 1], vec![b & 1, b >> 1]],
                ));
            }
        }
        assert_eq!(spans.len(), 5);
    }

    #[test]
    fn intersections_with_coordinates() {
        let diag = Subspace::span(2, 2, vec![vec![1, 1]]);
        assert_eq!(diag.intersect_coords(&[0]), Subspace::zero(2, 1));
        let full = Subspace::full(3, 3);
        assert_eq!(full.intersect_coords(&[1, 2]), Subspace::full(3, 2));
        // span{(1,1,0), (0,1,1)} ∩ span{e0, e2} = span{(1,0,2)} over F_3
        let s = Subspace::span(3, 3, vec![vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(
            s.intersect_coords(&[0, 2]),
            Subspace::span(3, 2, vec![vec![1, 2]])
        );
    }

    #[test]
    fn intersection_matches_brute_force() {
        let all = enumerate_subspaces(2, 4).unwrap();
        let keep = [1usize, 2];
        for s in all.iter().step_by(7) {
            let got = s.intersect_coords(&keep);
            let mut members = Vec::new();
            for code in 0..16u32 {
                let v: Vec<u32> = (0..4).map(|i| (code >> i) & 1).collect();
                if v[0] == 0 && v[3] == 0 && s.contains(&v) {
                    members.push(vec![v[1], v[2]]);
                }
            }
            assert_eq!(got, Subspace::span(2, 2, members));
        }
    }

    #[test]
    fn row_encoding() {
        let s = Subspace::span(2, 3, vec![vec![1, 0, 1]]);
        assert_eq!(s.encode_rows(), vec!["101".to_string()]);
        assert_eq!(Subspace::decode_rows(2, 3, &s.encode_rows()).unwrap(), s);
        let t = Subspace::span(11, 2, vec![vec![1, 10]]);
        assert_eq!(t.encode_rows(), vec!["1,10".to_string()]);
        assert_eq!(Subspace::decode_rows(11, 2, &t.encode_rows()).unwrap(), t);
        assert!(Subspace::decode_rows(2, 3, &["011".into(), "100".into()]).is_err());
    }
}
