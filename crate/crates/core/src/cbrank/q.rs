//! The poset `Q = N × N_0` with `(t', r') < (t, r)` iff `t' | t` and `t'r' < tr`.

use serde::Serialize;

use super::poset::{cb_levels, FinitePoset};
use crate::error::{Error, Result};
use crate::lamplighter::QPoint;

pub fn q_less(a: QPoint, b: QPoint) -> bool {
    b.t.is_multiple_of(a.t) && a.t * a.r < b.t * b.r
}

/// `{(t, r) : 1 <= t <= t_max, t·r <= product_max}`, a downward closed part of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QTruncation {
    pub t_max: u64,
    pub product_max: u64,
}

impl QTruncation {
    pub fn new(t_max: u64, product_max: u64) -> Result<Self> {
        if t_max == 0 || product_max == 0 {
            return Err(Error::domain("truncation bounds must be positive"));
        }
        Ok(QTruncation { t_max, product_max })
    }

    /// Elements ordered by `t`, then `r`.
    pub fn elements(&self) -> Vec<QPoint> {
        (1..=self.t_max)
            .flat_map(|t| (0..=self.product_max / t).map(move |r| QPoint { t, r }))
            .collect()
    }

    pub fn contains(&self, q: QPoint) -> bool {
        q.t >= 1 && q.t <= self.t_max && q.t * q.r <= self.product_max
    }

    pub fn poset(&self) -> Result<FinitePoset<QPoint>> {
        FinitePoset::new(self.elements(), |a, b| q_less(*a, *b))
    }

    /// Levels computed by derivative iteration.
    pub fn levels(&self) -> Vec<(QPoint, usize)> {
        let poset = FinitePoset::new_unchecked(self.elements(), |a, b| q_less(*a, *b));
        let levels = cb_levels(&poset);
        poset.elements().iter().copied().zip(levels).collect()
    }
}

/// Level of `(t, r)` in `Q`: `t·r` (which is `0` when `r = 0`).
pub fn q_level_closed_form(q: QPoint) -> u64 {
    q.t * q.r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateRow {
    pub product_max: u64,
    pub elements: usize,
    pub max_level: usize,
    /// Levels of `(2^k, 1)` for every `2^k <= product_max`.
    pub chain: Vec<(u64, usize)>,
    pub matches_closed_form: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub rows: Vec<CertificateRow>,
    /// Levels strictly increase along the chain and the maximum level grows with the bound.
    pub unbounded: bool,
}

/// Computes levels on `QTruncation(P, P)` for each bound `P` and checks that
/// they grow without bound along the chain `(2^k, 1)`.
pub fn rank_unbounded_certificate(product_max_list: &[u64]) -> Result<RankCertificate> {
    if product_max_list.is_empty() || product_max_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("bounds must be a nonempty increasing list"));
    }
    let mut rows = Vec::new();
    for &pm in product_max_list {
        let trunc = QTruncation::new(pm, pm)?;
        let levels = trunc.levels();
        let matches = levels
            .iter()
            .all(|&(q, l)| l as u64 == q_level_closed_form(q));
        let chain = (0..)
            .map(|k| 1u64 << k)
            .take_while(|&t| t <= pm)
            .map(|t| {
                let l = levels
                    .iter()
                    .find(|(q, _)| *q == QPoint { t, r: 1 })
                    .unwrap()
                    .1;
                (t, l)
            })
            .collect();
        rows.push(CertificateRow {
            product_max: pm,
            elements: levels.len(),
            max_level: levels.iter().map(|x| x.1).max().unwrap_or(0),
            chain,
            matches_closed_form: matches,
        });
    }
    let chain_increasing = rows
        .iter()
        .all(|r| r.chain.windows(2).all(|w| w[0].1 < w[1].1));
    let max_increasing = rows.windows(2).all(|w| w[0].max_level < w[1].max_level);
    let longest_chain_grows = rows
        .windows(2)
        .all(|w| w[1].chain.last().map(|c| c.1) >= w[0].chain.last().map(|c| c.1));
    Ok(RankCertificate {
        unbounded: chain_increasing && max_increasing && longest_chain_grows,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(t: u64, r: u64) -> QPoint {
        QPoint { t, r }
    }

    #[test]
    fn order_examples() {
        assert!(!q_less(q(3, 0), q(6, 0)));
        assert!(!q_less(q(1, 5), q(4, 0)));
        assert!(q_less(q(1, 1), q(2, 1)));
        assert!(!q_less(q(2, 1), q(3, 1)));
        assert!(q_less(q(1, 3), q(2, 2)));
        assert!(!q_less(q(2, 2), q(2, 2)));
    }

    #[test]
    fn order_is_strict_on_truncation() {
        let trunc = QTruncation::new(8, 12).unwrap();
        let el = trunc.elements();
        for &a in &el {
            assert!(!q_less(a, a));
            for &b in &el {
                for &c in &el {
                    if q_less(a, b) && q_less(b, c) {
                        assert!(q_less(a, c), "{a} {b} {c}");
                    }
                }
                if q_less(a, b) {
                    assert!(trunc.contains(a));
                }
            }
        }
        trunc.poset().unwrap();
    }

    #[test]
    fn levels_match_closed_form() {
        for (t, p) in [(6, 6), (8, 12), (5, 30), (12, 12)] {
            for (x, l) in QTruncation::new(t, p).unwrap().levels() {
                assert_eq!(l as u64, q_level_closed_form(x), "{x} in ({t}, {p})");
            }
        }
        assert_eq!(q_level_closed_form(q(5, 0)), 0);
        assert_eq!(q_level_closed_form(q(1, 1)), 1);
        let l = QTruncation::new(8, 12).unwrap().levels();
        assert_eq!(l.iter().find(|x| x.0 == q(4, 1)).unwrap().1, 4);
    }

    #[test]
    fn truncation_stability() {
        let small: Vec<_> = QTruncation::new(6, 10).unwrap().levels();
        let big = QTruncation::new(9, 20).unwrap().levels();
        for (x, l) in small {
            assert_eq!(big.iter().find(|y| y.0 == x).unwrap().1, l);
        }
    }

    #[test]
    fn certificate() {
        let c = rank_unbounded_certificate(&[2, 8, 32]).unwrap();
        assert!(c.unbounded);
        assert!(c.rows.iter().all(|r| r.matches_closed_form));
        assert_eq!(c.rows[0].chain, vec![(1, 1), (2, 2)]);
        assert_eq!(c.rows[1].chain.last(), Some(&(8, 8)));
        assert_eq!(c.rows[2].max_level, 32);
        assert!(rank_unbounded_certificate(&[4, 4]).is_err());
    }
}
