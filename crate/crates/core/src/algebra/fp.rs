//! Scalars of the prime field F_p.

use std::fmt;

use crate::error::{Error, Result};

/// Largest modulus accepted by the library (exclusive).
pub const MODULUS_LIMIT: u32 = 1 << 16;

/// Checks that `p` is a prime below [`MODULUS_LIMIT`].
pub fn check_modulus(p: u32) -> Result<()> {
    if !(2..MODULUS_LIMIT).contains(&p) {
        return Err(Error::InvalidModulus(p));
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return Err(Error::InvalidModulus(p));
        }
        d += 1;
    }
    Ok(())
}

#[inline]
pub(crate) fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub(crate) fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow(mut a: u32, mut k: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while k > 0 {
        if k & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        k >>= 1;
    }
    acc
}

/// Multiplicative inverse; `a` must be nonzero mod `p`.
pub(crate) fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow(a, (p - 2) as u64, p)
}

/// An element of F_p together with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    pub fn new(value: i64, p: u32) -> Self {
        Fp {
            value: value.rem_euclid(p as i64) as u32,
            p,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<Fp> {
        (self.value != 0).then(|| Fp {
            value: inv(self.value, self.p),
            p: self.p,
        })
    }
}

impl std::ops::Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        Fp {
            value: add(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl std::ops::Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        Fp {
            value: sub(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl std::ops::Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        Fp {
            value: mul(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl std::ops::Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: neg(self.value, self.p),
            p: self.p,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli() {
        for p in [2, 3, 5, 7, 65521] {
            assert!(check_modulus(p).is_ok(), "{p}");
        }
        for p in [0, 1, 4, 9, 65536, 100_003] {
            assert!(check_modulus(p).is_err(), "{p}");
        }
    }

    #[test]
    fn field_axioms_small() {
        for p in [2u32, 3, 5, 7] {
            for a in 1..p {
                let x = Fp::new(a as i64, p);
                assert_eq!(x * x.inverse().unwrap(), Fp::new(1, p));
                assert_eq!(x + (-x), Fp::new(0, p));
            }
        }
        assert_eq!(Fp::new(-1, 5).value(), 4);
    }
}
