use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::algebra::parse::{format_vector, vector_at};
use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};

/// An element of `R^n`, `R = F_p[x, x^-1]`, i.e. a finitely supported
/// configuration of lamps with values in `(Z/pZ)^n`.
///
/// Coordinate `i` carries the polynomial `Σ_k ω_k[i] x^{-k}` where `ω_k` is
/// the lamp at position `k`, so multiplying by `x` moves every lamp one step
/// towards `-∞`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentVector {
    p: u32,
    coords: Vec<LaurentPoly>,
}

impl LaurentVector {
    pub fn new(coords: Vec<LaurentPoly>, p: u32) -> Result<Self> {
        if let Some(bad) = coords.iter().find(|c| c.modulus() != p) {
            return Err(Error::ModulusMismatch {
                left: p,
                right: bad.modulus(),
            });
        }
        Ok(LaurentVector { p, coords })
    }

    pub fn zero(n: usize, p: u32) -> Self {
        LaurentVector {
            p,
            coords: vec![LaurentPoly::zero(p); n],
        }
    }

    /// The vector with `f` in coordinate `i` and zero elsewhere.
    pub fn unit(n: usize, i: usize, f: LaurentPoly) -> Self {
        let p = f.modulus();
        let mut v = LaurentVector::zero(n, p);
        v.coords[i] = f;
        v
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[LaurentPoly] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<LaurentPoly> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(LaurentPoly::is_zero)
    }

    pub fn mul_x_pow(&self, k: i64) -> LaurentVector {
        self.map(|c| c.mul_x_pow(k))
    }

    pub fn scale(&self, f: &LaurentPoly) -> LaurentVector {
        self.map(|c| c * f)
    }

    pub fn scale_fp(&self, c: u32) -> LaurentVector {
        self.map(|x| x.scale(c))
    }

    fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> LaurentVector {
        LaurentVector {
            p: self.p,
            coords: self.coords.iter().map(f).collect(),
        }
    }

    /// The lamp at position `k`: coefficient of `x^{-k}` in every coordinate.
    pub fn lamp(&self, k: i64) -> Vec<u32> {
        self.coords.iter().map(|c| c.coeff(-k)).collect()
    }

    /// Builds a vector from lamp values at consecutive positions starting at `lo`.
    pub fn from_lamps(lo: i64, lamps: &[Vec<u32>], n: usize, p: u32) -> Self {
        let mut terms = vec![Vec::new(); n];
        for (off, lamp) in lamps.iter().enumerate() {
            for (i, &c) in lamp.iter().enumerate() {
                if c != 0 {
                    terms[i].push((-(lo + off as i64), c as i64));
                }
            }
        }
        LaurentVector {
            p,
            coords: terms
                .iter()
                .map(|t| LaurentPoly::from_terms(t, p))
                .collect(),
        }
    }

    /// Smallest and largest lit position, if any lamp is lit.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = self.coords.iter().filter_map(|c| c.max_exp()).max()?;
        let hi = self.coords.iter().filter_map(|c| c.min_exp()).min()?;
        Some((-lo, -hi))
    }

    pub fn parse(s: &str, n: usize, p: u32) -> Result<Self> {
        Self::parse_at(s, n, p, 1)
    }

    pub(crate) fn parse_at(s: &str, n: usize, p: u32, line: usize) -> Result<Self> {
        let coords = vector_at(s, p, line)?;
        if coords.len() != n {
            return Err(Error::parse(
                line,
                format!("expected {n} coordinates, found {}", coords.len()),
            ));
        }
        Ok(LaurentVector { p, coords })
    }

    fn check(&self, other: &LaurentVector) {
        assert_eq!(self.p, other.p, "modulus mismatch");
        assert_eq!(self.len(), other.len(), "length mismatch");
    }
}

impl Add for &LaurentVector {
    type Output = LaurentVector;
    fn add(self, rhs: &LaurentVector) -> LaurentVector {
        self.check(rhs);
        LaurentVector {
            p: self.p,
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &LaurentVector {
    type Output = LaurentVector;
    fn sub(self, rhs: &LaurentVector) -> LaurentVector {
        self.check(rhs);
        LaurentVector {
            p: self.p,
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &LaurentVector {
    type Output = LaurentVector;
    fn neg(self) -> LaurentVector {
        self.map(|c| -c)
    }
}

impl fmt::Display for LaurentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_vector(&self.coords))
    }
}

impl fmt::Debug for LaurentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vec[F{}]{}", self.p, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lamps_and_positions() {
        let p = 3;
        let v = LaurentVector::from_lamps(-1, &[vec![1, 0], vec![0, 0], vec![2, 1]], 2, p);
        assert_eq!(v.lamp(-1), vec![1, 0]);
        assert_eq!(v.lamp(1), vec![2, 1]);
        assert_eq!(v.support(), Some((-1, 1)));
        // x moves lamps towards -infinity
        assert_eq!(v.mul_x_pow(1).lamp(0), vec![2, 1]);
        assert_eq!(LaurentVector::zero(2, p).support(), None);
    }

    #[test]
    fn text_round_trip() {
        let v = LaurentVector::parse("[1+x, x^-2*(1+x^3)]", 2, 2).unwrap();
        assert_eq!(LaurentVector::parse(&v.to_string(), 2, 2).unwrap(), v);
        assert!(matches!(
            LaurentVector::parse_at("[1]", 2, 2, 4),
            Err(Error::Parse { line: 4, .. })
        ));
    }
}
