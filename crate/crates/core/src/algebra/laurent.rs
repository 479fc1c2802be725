//! Laurent polynomials `F_p[x, x^-1]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fp;
use super::poly::{write_term, Poly};

/// `x^offset * body`, stored so that `body` has a nonzero constant term.
///
/// Every nonzero Laurent polynomial is `c * x^k * b` for a unique monic `b`
/// with `b(0) != 0`; the zero element has `offset == 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    offset: i64,
    body: Poly,
}

impl LaurentPoly {
    pub fn zero(p: u32) -> Self {
        LaurentPoly {
            offset: 0,
            body: Poly::zero(p),
        }
    }

    pub fn one(p: u32) -> Self {
        LaurentPoly::monomial(1, 0, p)
    }

    pub fn monomial(c: i64, k: i64, p: u32) -> Self {
        LaurentPoly::new(k, Poly::constant(c, p))
    }

    /// `x^offset * body` for an arbitrary polynomial `body`.
    pub fn new(offset: i64, body: Poly) -> Self {
        if body.is_zero() {
            return LaurentPoly { offset: 0, body };
        }
        let low = body.low_degree();
        LaurentPoly {
            offset: offset + low as i64,
            body: body.shift_down(low),
        }
    }

    pub fn from_poly(body: Poly) -> Self {
        LaurentPoly::new(0, body)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: &[(i64, i64)], p: u32) -> Self {
        if terms.is_empty() {
            return LaurentPoly::zero(p);
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![0i64; (hi - lo + 1) as usize];
        for &(k, c) in terms {
            coeffs[(k - lo) as usize] += c;
        }
        LaurentPoly::new(lo, Poly::from_coeffs(coeffs, p))
    }

    pub fn modulus(&self) -> u32 {
        self.body.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.body.degree().map(|d| self.offset + d as i64)
    }

    /// Width of the exponent range; the Euclidean size of the ring.
    pub fn span(&self) -> Option<usize> {
        self.body.degree()
    }

    pub fn coeff(&self, k: i64) -> u32 {
        if k < self.offset {
            return 0;
        }
        self.body
            .coeffs()
            .get((k - self.offset) as usize)
            .copied()
            .unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.body
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (self.offset + k as i64, c))
    }

    pub fn is_monomial(&self) -> bool {
        self.body.degree() == Some(0)
    }

    /// Multiplies by `x^k`.
    pub fn mul_x_pow(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            offset: self.offset + k,
            body: self.body.clone(),
        }
    }

    pub fn scale(&self, c: u32) -> LaurentPoly {
        LaurentPoly::new(self.offset, self.body.scale(c))
    }

    /// Substitutes `x -> x^s` for `s >= 1`.
    pub fn compose_power(&self, s: usize) -> LaurentPoly {
        LaurentPoly::new(self.offset * s as i64, self.body.compose_power(s))
    }

    /// Substitutes `x -> x^s` for any nonzero integer `s`.
    pub fn compose_signed_power(&self, s: i64) -> LaurentPoly {
        assert!(s != 0);
        let terms: Vec<(i64, i64)> = self.terms().map(|(k, c)| (k * s, c as i64)).collect();
        LaurentPoly::from_terms(&terms, self.modulus())
    }

    /// `1 + x^s + ... + x^{(k-1)s}` for any integer `s` and `k >= 0`.
    pub fn geometric(k: usize, s: i64, p: u32) -> LaurentPoly {
        let terms: Vec<(i64, i64)> = (0..k as i64).map(|i| (i * s, 1)).collect();
        LaurentPoly::from_terms(&terms, p)
    }

    /// The polynomial `x^offset * body` when `offset >= 0`.
    pub fn to_poly(&self) -> Option<Poly> {
        (self.offset >= 0).then(|| self.body.shift_up(self.offset as usize))
    }

    /// Unit normalisation: returns `(b, u)` with `self * u = b`, `b` a monic
    /// polynomial with nonzero constant term and `u = c * x^k` a unit.
    pub fn normalize(&self) -> (LaurentPoly, LaurentPoly) {
        let p = self.modulus();
        if self.is_zero() {
            return (self.clone(), LaurentPoly::one(p));
        }
        let c = fp::inv(self.body.leading(), p);
        (
            LaurentPoly::from_poly(self.body.scale(c)),
            LaurentPoly::monomial(c as i64, -self.offset, p),
        )
    }

    /// Division with canonical remainder.
    ///
    /// For `d` nonzero write `d = u * h` with `u` a unit and `h` monic with
    /// `h(0) != 0`. The remainder is the unique polynomial of degree below
    /// `deg h` congruent to `self` modulo `d`; `R/(h)` is `F_p[x]/(h)` because
    /// `x` is invertible modulo `h`.
    pub fn div_rem(&self, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!d.is_zero(), "Laurent division by zero");
        let p = self.modulus();
        let (h, u) = d.normalize();
        let hp = h.body.clone();
        if self.is_zero() {
            return (self.clone(), self.clone());
        }
        if hp.degree() == Some(0) {
            return (self * &u, LaurentPoly::zero(p));
        }
        let shift = power_of_x_mod(self.offset, &hp);
        let r = (&self.body.rem(&hp) * &shift).rem(&hp);
        let r = LaurentPoly::from_poly(r);
        let diff = self - &r;
        let q = exact_div_normal(&diff, &hp);
        // d * u = h, so self = q*h + r = (q*u)*d + r
        (&q * &u, r)
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }
}

/// `x^k mod h` for `h` with nonzero constant term and positive degree.
fn power_of_x_mod(k: i64, h: &Poly) -> Poly {
    let p = h.modulus();
    if k >= 0 {
        return Poly::x(p).pow_mod(k as u64, h);
    }
    // h = h0 + x*h1  =>  x^{-1} = -h1/h0 (mod h)
    let h0 = h.constant_term();
    let h1 = h.div_rem(&Poly::x(p)).0;
    let x_inv = (-&h1).scale(fp::inv(h0, p)).rem(h);
    x_inv.pow_mod(k.unsigned_abs(), h)
}

/// Exact quotient of `a` by a polynomial `h` with `h(0) != 0`.
fn exact_div_normal(a: &LaurentPoly, h: &Poly) -> LaurentPoly {
    if a.is_zero() {
        return a.clone();
    }
    let q = a
        .body
        .div_exact(h)
        .expect("canonical remainder leaves an exact multiple");
    LaurentPoly::new(a.offset, q)
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.is_zero()
            .cmp(&other.is_zero())
            .reverse()
            .then_with(|| self.offset.cmp(&other.offset))
            .then_with(|| self.body.cmp(&other.body))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(rhs.offset);
        let a = self.body.shift_up((self.offset - lo) as usize);
        let b = rhs.body.shift_up((rhs.offset - lo) as usize);
        LaurentPoly::new(lo, &a + &b)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            offset: self.offset,
            body: -&self.body,
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::new(self.offset + rhs.offset, &self.body * &rhs.body)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl From<Poly> for LaurentPoly {
    fn from(body: Poly) -> Self {
        LaurentPoly::from_poly(body)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.offset == 0 {
            return write!(f, "{}", self.body);
        }
        if self.is_monomial() {
            return write_term(f, true, self.body.constant_term(), self.offset);
        }
        write!(f, "x^{}*({})", self.offset, self.body)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent[F{}]({})", self.modulus(), self)
    }
}
