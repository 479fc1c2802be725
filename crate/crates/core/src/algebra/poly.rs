//! Dense univariate polynomials over F_p.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fp::{self, Fp};
use crate::error::{Error, Result};

/// A polynomial over F_p, coefficients in ascending degree order.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and has no degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(p: u32) -> Self {
        Poly { p, coeffs: vec![] }
    }

    pub fn one(p: u32) -> Self {
        Poly::constant(1, p)
    }

    /// The indeterminate `x`.
    pub fn x(p: u32) -> Self {
        Poly::monomial(1, 1, p)
    }

    pub fn constant(c: i64, p: u32) -> Self {
        Poly::from_coeffs(vec![c], p)
    }

    pub fn monomial(c: i64, k: usize, p: u32) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs, p)
    }

    /// Builds a polynomial from (possibly negative, unreduced) integer coefficients.
    pub fn from_coeffs(coeffs: Vec<i64>, p: u32) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.rem_euclid(p as i64) as u32)
            .collect();
        Poly::from_residues(coeffs, p)
    }

    /// Builds a polynomial from coefficients already reduced into `[0, p)`.
    pub(crate) fn from_residues(mut coeffs: Vec<u32>, p: u32) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < p));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { p, coeffs }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Fp {
        Fp::new(self.coeffs.get(k).copied().unwrap_or(0) as i64, self.p)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coeffs.first().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Number of trailing zero coefficients at the bottom, i.e. the largest `k`
    /// with `x^k | self`. Zero for the zero polynomial.
    pub fn low_degree(&self) -> usize {
        self.coeffs.iter().take_while(|&&c| c == 0).count()
    }

    pub fn scale(&self, c: u32) -> Poly {
        let c = c % self.p;
        if c == 0 {
            return Poly::zero(self.p);
        }
        Poly {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&a| fp::mul(a, c, self.p)).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(fp::inv(self.leading(), self.p))
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { p: self.p, coeffs }
    }

    /// Divides by `x^k`, which must divide `self`.
    pub(crate) fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(self.coeffs.iter().take(k).all(|&c| c == 0));
        Poly {
            p: self.p,
            coeffs: self
                .coeffs
                .get(k..)
                .map(<[u32]>::to_vec)
                .unwrap_or_default(),
        }
    }

    /// Substitutes `x -> x^s`.
    pub fn compose_power(&self, s: usize) -> Poly {
        assert!(s >= 1);
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * s + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[k * s] = c;
        }
        Poly { p: self.p, coeffs }
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        self.same_modulus(d);
        let dd = d.degree().expect("polynomial division by zero");
        let p = self.p;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(p), self.clone());
        }
        let lead_inv = fp::inv(d.leading(), p);
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let q = fp::mul(c, lead_inv, p);
            quot[k - dd] = q;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = fp::sub(rem[idx], fp::mul(q, dc, p), p);
            }
        }
        (Poly::from_residues(quot, p), Poly::from_residues(rem, p))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// `self^k mod m`.
    pub fn pow_mod(&self, mut k: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.p).rem(m);
        while k > 0 {
            if k & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            k >>= 1;
        }
        acc
    }

    /// Extended gcd: `(g, s, t)` with `g = s*a + t*b` and `g` monic (or zero).
    pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        a.same_modulus(b);
        let p = a.p;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(p), Poly::zero(p));
        let (mut t0, mut t1) = (Poly::zero(p), Poly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = fp::inv(r0.leading(), p);
        (r0.scale(c), s0.scale(c), t0.scale(c))
    }

    pub(crate) fn same_modulus(&self, other: &Poly) {
        assert_eq!(self.p, other.p, "polynomials over different fields");
    }

    /// Lexicographic key used for enumeration order: degree first, then the
    /// coefficients read from the top down.
    pub fn enumeration_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then_with(|| self.enumeration_cmp(other))
    }
}

/// Monic gcd of two polynomials; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.p != b.p {
        return Err(Error::ModulusMismatch {
            left: a.p,
            right: b.p,
        });
    }
    Ok(Poly::ext_gcd(a, b).0)
}

/// `1 + x^s + x^{2s} + ... + x^{(t-1)s}`.
pub fn phi(t: usize, s: usize, p: u32) -> Result<Poly> {
    if t == 0 || s == 0 {
        return Err(Error::domain(format!(
            "phi needs t >= 1 and s >= 1, got t={t}, s={s}"
        )));
    }
    let mut coeffs = vec![0u32; (t - 1) * s + 1];
    for k in 0..t {
        coeffs[k * s] = 1 % p;
    }
    Ok(Poly::from_residues(coeffs, p))
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.same_modulus(rhs);
        let p = self.p;
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (&self.coeffs, &rhs.coeffs)
        } else {
            (&rhs.coeffs, &self.coeffs)
        };
        let mut coeffs = long.clone();
        for (c, &s) in coeffs.iter_mut().zip(short.iter()) {
            *c = fp::add(*c, s, p);
        }
        Poly::from_residues(coeffs, p)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&c| fp::neg(c, self.p)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.same_modulus(rhs);
        let p = self.p;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(p);
        }
        let mut acc = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        let p64 = p as u64;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                // a, b < 2^16 so each product is < 2^32; reduce to stay bounded.
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p64;
            }
        }
        Poly::from_residues(acc.into_iter().map(|c| c as u32).collect(), p)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

pub(crate) fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: u32, k: i64) -> fmt::Result {
    if !first {
        f.write_str("+")?;
    }
    match (c, k) {
        (c, 0) => write!(f, "{c}"),
        (1, 1) => f.write_str("x"),
        (1, k) => write!(f, "x^{k}"),
        (c, 1) => write!(f, "{c}*x"),
        (c, k) => write!(f, "{c}*x^{k}"),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                write_term(f, first, c, k as i64)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[F{}]({})", self.p, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64], p: u32) -> Poly {
        Poly::from_coeffs(c.to_vec(), p)
    }

    #[test]
    fn canonical_trailing_zeros() {
        let a = poly(&[1, 0, 2, 0, 0], 3);
        assert_eq!(a.degree(), Some(2));
        assert_eq!(poly(&[0, 0], 5).degree(), None);
        assert_eq!(poly(&[3, 6], 3), Poly::zero(3));
    }

    #[test]
    fn gcd_examples() {
        let p = 2;
        let f = poly(&[1, 1, 1], p);
        assert_eq!(poly_gcd(&f, &Poly::zero(p)).unwrap(), f.monic());
        let g = poly(&[2, 0, 1], 3);
        assert_eq!(poly_gcd(&g.scale(2), &Poly::zero(3)).unwrap(), g);
        // x^2+1 = (x+1)^2 over F_2
        assert_eq!(
            poly_gcd(&poly(&[1, 0, 1], 2), &poly(&[1, 1], 2)).unwrap(),
            poly(&[1, 1], 2)
        );
        assert_eq!(
            poly_gcd(&Poly::x(2), &poly(&[1, 1], 2)).unwrap(),
            Poly::one(2)
        );
        assert_eq!(
            poly_gcd(&Poly::zero(5), &Poly::zero(5)).unwrap(),
            Poly::zero(5)
        );
        assert!(matches!(
            poly_gcd(&Poly::one(2), &Poly::one(3)),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(1, 4, 2).unwrap(), Poly::one(2));
        assert_eq!(phi(3, 1, 5).unwrap(), poly(&[1, 1, 1], 5));
        assert_eq!(phi(2, 2, 3).unwrap(), poly(&[1, 0, 1], 3));
        assert!(phi(0, 1, 2).is_err());
        assert!(phi(1, 0, 2).is_err());
    }

    #[test]
    fn phi_geometric_identity() {
        for p in [2u32, 3, 5] {
            for t in 1..=16 {
                for s in 1..=16 {
                    let lhs = &(&Poly::monomial(1, s, p) - &Poly::one(p)) * &phi(t, s, p).unwrap();
                    let rhs = &Poly::monomial(1, s * t, p) - &Poly::one(p);
                    assert_eq!(lhs, rhs, "t={t} s={s} p={p}");
                }
            }
        }
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = poly(&[1, 2, 0, 1], 5);
        let b = poly(&[3, 1, 1], 5);
        let (g, s, t) = Poly::ext_gcd(&a, &b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert!(g.is_monic());
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[1, 0, 1, 0, 0, 1], 2).to_string(), "1+x^2+x^5");
        assert_eq!(poly(&[0, 2, 1], 3).to_string(), "2*x+x^2");
        assert_eq!(Poly::zero(3).to_string(), "0");
    }

    #[test]
    fn pow_mod_matches_repeated_product() {
        let m = poly(&[1, 1, 0, 1], 2);
        let a = poly(&[0, 1], 2);
        let mut acc = Poly::one(2);
        for k in 0..20u64 {
            assert_eq!(a.pow_mod(k, &m), acc.rem(&m));
            acc = &acc * &a;
        }
    }
}
