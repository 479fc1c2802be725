//! Row-style Hermite normal form over a Euclidean domain.

use std::fmt::Debug;

use super::laurent::LaurentPoly;
use super::poly::Poly;

/// The operations the echelon routine needs from a Euclidean domain with a
/// fixed system of unit-normal representatives and canonical residues.
pub trait EuclideanRing: Clone + Eq + Debug {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Euclidean size; `None` only for zero.
    fn euclid_size(&self) -> Option<usize>;
    /// `(q, r)` with `self = q*d + r` and `r` the canonical residue modulo `d`.
    fn div_rem(&self, d: &Self) -> (Self, Self);
    /// `(b, u)` with `self * u = b` for a unit `u` and `b` unit-normal.
    fn normalize(&self) -> (Self, Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
}

impl EuclideanRing for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.modulus())
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn euclid_size(&self) -> Option<usize> {
        self.degree()
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        Poly::div_rem(self, d)
    }
    fn normalize(&self) -> (Self, Self) {
        let p = self.modulus();
        if self.is_zero() {
            return (self.clone(), Poly::one(p));
        }
        let c = super::fp::inv(self.leading(), p);
        (self.scale(c), Poly::constant(c as i64, p))
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
}

impl EuclideanRing for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero(self.modulus())
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn euclid_size(&self) -> Option<usize> {
        self.span()
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        LaurentPoly::div_rem(self, d)
    }
    fn normalize(&self) -> (Self, Self) {
        LaurentPoly::normalize(self)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
}

/// Rows in Hermite normal form together with their pivot columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Echelon<R> {
    pub rows: Vec<Vec<R>>,
    pub pivots: Vec<usize>,
}

impl<R: EuclideanRing> Echelon<R> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Canonical representative of `v` modulo the row space.
    pub fn reduce(&self, v: &[R]) -> Vec<R> {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            let (q, _) = v[c].div_rem(&row[c]);
            if !q.is_zero() {
                sub_multiple(&mut v, &q, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[R]) -> bool {
        self.reduce(v).iter().all(EuclideanRing::is_zero)
    }
}

fn sub_multiple<R: EuclideanRing>(target: &mut [R], q: &R, row: &[R]) {
    for (t, r) in target.iter_mut().zip(row) {
        if !r.is_zero() {
            *t = t.sub_ref(&q.mul_ref(r));
        }
    }
}

/// Computes the Hermite normal form of the row space of `rows`.
///
/// Pivots are unit-normal, entries above each pivot are canonical residues
/// modulo it and zero rows are dropped. Two generating sets span the same
/// module exactly when their forms are equal.
pub fn hermite_rows<R: EuclideanRing>(rows: Vec<Vec<R>>, ncols: usize) -> Echelon<R> {
    let mut pending: Vec<Vec<R>> = rows
        .into_iter()
        .inspect(|r| assert_eq!(r.len(), ncols, "ragged matrix"))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut out: Vec<Vec<R>> = Vec::new();
    let mut pivots = Vec::new();

    for c in 0..ncols {
        if pending.is_empty() {
            break;
        }
        loop {
            let live: Vec<usize> = (0..pending.len())
                .filter(|&i| !pending[i][c].is_zero())
                .collect();
            if live.is_empty() {
                break;
            }
            let best = *live
                .iter()
                .min_by_key(|&&i| pending[i][c].euclid_size())
                .unwrap();
            if live.len() == 1 {
                let mut row = pending.swap_remove(best);
                let (_, u) = row[c].normalize();
                for x in row.iter_mut() {
                    *x = x.mul_ref(&u);
                }
                out.push(row);
                pivots.push(c);
                break;
            }
            let pivot_row = pending[best].clone();
            for &i in &live {
                if i == best {
                    continue;
                }
                let (q, _) = pending[i][c].div_rem(&pivot_row[c]);
                sub_multiple(&mut pending[i], &q, &pivot_row);
            }
            pending.retain(|r| r.iter().any(|x| !x.is_zero()));
        }
    }

    for (i, &c) in pivots.iter().enumerate() {
        let (head, tail) = out.split_at_mut(i);
        let row = &tail[0];
        for upper in head.iter_mut() {
            if upper[c].is_zero() {
                continue;
            }
            let (q, _) = upper[c].div_rem(&row[c]);
            if !q.is_zero() {
                sub_multiple(upper, &q, row);
            }
        }
    }

    Echelon { rows: out, pivots }
}
