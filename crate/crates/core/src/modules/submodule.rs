use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::vector::LaurentVector;
use crate::algebra::hnf::{hermite_rows, Echelon};
use crate::algebra::{check_modulus, LaurentPoly, Poly, PolyMatrix};
use crate::error::{Error, Result};

/// An additive subgroup `U ⊆ R^n` with `x^e U = U`, presented as the
/// `F_p[x^e, x^-e]`-span of finitely many vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubmoduleGens {
    n: usize,
    p: u32,
    e: usize,
    gens: Vec<LaurentVector>,
}

/// `e(U)`, `rk_e(U)` and `r = n·e − rk_e(U)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub e: usize,
    pub rk: usize,
    pub r: usize,
}

/// Splits `v ∈ R^n` into the free `F_p[y, y^-1]`-module of rank `n·m`, `y = x^m`.
///
/// The term `c·x^k` of coordinate `i` with `k = q·m + j`, `0 <= j < m`,
/// becomes `c·y^q` in column `j·n + i`.
pub fn split(v: &LaurentVector, m: usize) -> Vec<LaurentPoly> {
    let n = v.len();
    let p = v.modulus();
    let mut terms = vec![Vec::new(); n * m];
    for (i, c) in v.coords().iter().enumerate() {
        for (k, a) in c.terms() {
            let (q, j) = k.div_mod_floor(&(m as i64));
            terms[j as usize * n + i].push((q, a as i64));
        }
    }
    terms
        .iter()
        .map(|t| LaurentPoly::from_terms(t, p))
        .collect()
}

/// Inverse of [`split`].
pub fn join(cols: &[LaurentPoly], n: usize, m: usize, p: u32) -> LaurentVector {
    let mut terms = vec![Vec::new(); n];
    for (col, f) in cols.iter().enumerate() {
        let (j, i) = (col / n, col % n);
        for (q, a) in f.terms() {
            terms[i].push((q * m as i64 + j as i64, a as i64));
        }
    }
    let coords = terms
        .iter()
        .map(|t| LaurentPoly::from_terms(t, p))
        .collect();
    LaurentVector::new(coords, p).expect("coordinates share the modulus")
}

/// The canonical form of a periodic subgroup: Hermite normal form of its
/// rescaled presentation at a fixed period `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalModule {
    n: usize,
    p: u32,
    m: usize,
    echelon: Echelon<LaurentPoly>,
}

impl CanonicalModule {
    pub fn period(&self) -> usize {
        self.m
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn width(&self) -> usize {
        self.n * self.m
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.echelon.pivots
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.echelon.rows
    }

    pub fn contains(&self, v: &LaurentVector) -> bool {
        self.echelon.contains(&split(v, self.m))
    }

    /// Canonical representative of `v + U`.
    pub fn reduce(&self, v: &LaurentVector) -> LaurentVector {
        join(
            &self.echelon.reduce(&split(v, self.m)),
            self.n,
            self.m,
            self.p,
        )
    }

    /// `dim_{F_p}` of the quotient when it is finite.
    pub fn codimension(&self) -> Option<usize> {
        if self.rank() < self.width() {
            return None;
        }
        Some(
            self.echelon
                .rows
                .iter()
                .zip(&self.echelon.pivots)
                .map(|(r, &c)| r[c].span().unwrap())
                .sum(),
        )
    }

    pub fn to_gens(&self) -> SubmoduleGens {
        SubmoduleGens {
            n: self.n,
            p: self.p,
            e: self.m,
            gens: self
                .echelon
                .rows
                .iter()
                .map(|r| join(r, self.n, self.m, self.p))
                .collect(),
        }
    }
}

impl SubmoduleGens {
    pub fn new(n: usize, p: u32, e: usize, gens: Vec<LaurentVector>) -> Result<Self> {
        check_modulus(p)?;
        if e == 0 {
            return Err(Error::domain("period must be positive"));
        }
        for g in &gens {
            if g.modulus() != p {
                return Err(Error::ModulusMismatch {
                    left: p,
                    right: g.modulus(),
                });
            }
            if g.len() != n {
                return Err(Error::domain(format!(
                    "generator {g} has {} coordinates, expected {n}",
                    g.len()
                )));
            }
        }
        Ok(SubmoduleGens { n, p, e, gens })
    }

    pub fn zero(n: usize, p: u32) -> Self {
        SubmoduleGens {
            n,
            p,
            e: 1,
            gens: Vec::new(),
        }
    }

    /// `R^n` itself.
    pub fn full(n: usize, p: u32) -> Self {
        let gens = (0..n)
            .map(|i| LaurentVector::unit(n, i, LaurentPoly::one(p)))
            .collect();
        SubmoduleGens { n, p, e: 1, gens }
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// The stored period `e` (not necessarily minimal).
    pub fn period(&self) -> usize {
        self.e
    }

    pub fn gens(&self) -> &[LaurentVector] {
        &self.gens
    }

    /// Generators over `F_p[x^{±m}]`, valid whenever `m` is a period.
    pub(crate) fn gens_at(&self, m: usize) -> Vec<LaurentVector> {
        let g = self.e.gcd(&m);
        self.gens
            .iter()
            .flat_map(|v| (0..m / g).map(move |j| v.mul_x_pow((j * g) as i64)))
            .collect()
    }

    fn canonical_unchecked(&self, m: usize) -> CanonicalModule {
        let rows = self.gens_at(m).iter().map(|v| split(v, m)).collect();
        CanonicalModule {
            n: self.n,
            p: self.p,
            m,
            echelon: hermite_rows(rows, self.n * m),
        }
    }

    /// Canonical form at period `m`; `m` must be a period of `U`.
    pub fn canonical(&self, m: usize) -> Result<CanonicalModule> {
        if m == 0 {
            return Err(Error::domain("period must be positive"));
        }
        if !m.is_multiple_of(self.e) && !self.has_period(m) {
            return Err(Error::precondition(format!("x^{m} U != U")));
        }
        Ok(self.canonical_unchecked(m))
    }

    /// `x^k U`.
    pub fn shift(&self, k: i64) -> SubmoduleGens {
        SubmoduleGens {
            gens: self.gens.iter().map(|g| g.mul_x_pow(k)).collect(),
            ..self.clone()
        }
    }

    /// `f U` for a scalar Laurent polynomial `f`.
    pub fn scale_by(&self, f: &LaurentPoly) -> SubmoduleGens {
        SubmoduleGens {
            gens: self.gens.iter().map(|g| g.scale(f)).collect(),
            ..self.clone()
        }
    }

    /// Whether `x^d U = U`.
    pub fn has_period(&self, d: usize) -> bool {
        if d == 0 {
            return false;
        }
        if d.is_multiple_of(self.e) {
            return true;
        }
        let l = self.e.lcm(&d);
        self.canonical_unchecked(l) == self.shift(d as i64).canonical_unchecked(l)
    }

    /// The same subgroup presented with period `d`, reduced to canonical generators.
    pub fn with_period(&self, d: usize) -> Result<SubmoduleGens> {
        Ok(self.canonical(d)?.to_gens())
    }

    pub fn contains(&self, w: &LaurentVector) -> bool {
        self.canonical_unchecked(self.e).contains(w)
    }

    /// `other ⊆ self`.
    pub fn contains_module(&self, other: &SubmoduleGens) -> bool {
        let l = self.e.lcm(&other.e);
        let c = self.canonical_unchecked(self.e);
        other.gens_at(l).iter().all(|g| c.contains(g))
    }

    pub fn same_module(&self, other: &SubmoduleGens) -> bool {
        self.contains_module(other) && other.contains_module(self)
    }

    /// `self + other` as a subgroup of `R^n`.
    pub fn sum(&self, other: &SubmoduleGens) -> SubmoduleGens {
        let l = self.e.lcm(&other.e);
        let mut gens = self.gens_at(l);
        gens.extend(other.gens_at(l));
        SubmoduleGens {
            gens,
            e: l,
            ..self.clone()
        }
    }

    /// Places `self ⊆ R^a` and `other ⊆ R^b` in complementary coordinates of `R^{a+b}`.
    pub fn direct_sum(&self, other: &SubmoduleGens) -> SubmoduleGens {
        assert_eq!(self.p, other.p, "modulus mismatch");
        let (a, b) = (self.n, other.n);
        let zero = LaurentPoly::zero(self.p);
        let l = self.e.lcm(&other.e);
        let mut gens: Vec<LaurentVector> = self
            .gens_at(l)
            .into_iter()
            .map(|g| {
                let mut c = g.into_coords();
                c.extend(std::iter::repeat_n(zero.clone(), b));
                LaurentVector::new(c, self.p).unwrap()
            })
            .collect();
        gens.extend(other.gens_at(l).into_iter().map(|g| {
            let mut c = vec![zero.clone(); a];
            c.extend(g.into_coords());
            LaurentVector::new(c, self.p).unwrap()
        }));
        SubmoduleGens {
            n: a + b,
            p: self.p,
            e: l,
            gens,
        }
    }

    /// Text form: a header line `n=<n> e=<e> p=<p>` then one generator per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("n={} e={} p={}\n", self.n, self.e, self.p);
        for g in &self.gens {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = content_lines(text).collect();
        let (u, rest) = Self::parse_block(&lines)?;
        if let Some((line, _)) = rest.first() {
            return Err(Error::parse(*line, "unexpected line after generators"));
        }
        Ok(u)
    }

    /// Reads a header and the generator lines that follow it, stopping at the
    /// first line that does not start with `[`.
    pub(crate) fn parse_block<'a>(
        lines: &'a [(usize, &'a str)],
    ) -> Result<(SubmoduleGens, &'a [(usize, &'a str)])> {
        let Some(&(hl, header)) = lines.first() else {
            return Err(Error::parse(1, "missing header n=<n> e=<e> p=<p>"));
        };
        let fields = parse_fields(header, hl, &["n", "e", "p"])?;
        let (n, e) = (fields[0] as usize, fields[1] as usize);
        let p = u32::try_from(fields[2]).map_err(|_| Error::parse(hl, "p out of range"))?;
        check_modulus(p).map_err(|err| Error::parse(hl, err.to_string()))?;
        if e == 0 {
            return Err(Error::parse(hl, "period must be positive"));
        }
        let mut gens = Vec::new();
        let mut used = 1;
        for &(line, text) in &lines[1..] {
            if !text.starts_with('[') {
                break;
            }
            gens.push(LaurentVector::parse_at(text, n, p, line)?);
            used += 1;
        }
        Ok((SubmoduleGens { n, p, e, gens }, &lines[used..]))
    }
}

/// Non-empty lines with `#` comments removed, numbered from 1.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Parses `k1=v1 k2=v2 ...` with exactly the given keys in order.
pub(crate) fn parse_fields(line: &str, no: usize, keys: &[&str]) -> Result<Vec<u64>> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != keys.len() {
        return Err(Error::parse(
            no,
            format!("expected {}", keys.join("=.. ") + "=.."),
        ));
    }
    parts
        .iter()
        .zip(keys)
        .map(|(part, key)| {
            let val = part
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| {
                    Error::parse(no, format!("expected {key}=<value>, found {part:?}"))
                })?;
            val.parse::<u64>()
                .map_err(|_| Error::parse(no, format!("bad value for {key}: {val:?}")))
        })
        .collect()
}

impl fmt::Display for SubmoduleGens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for SubmoduleGens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SubmoduleGens({})",
            self.to_text().trim_end().replace('\n', "; ")
        )
    }
}

/// Generator matrix of `U` over `F_p[y]`, `y = x^e`, in the free module of rank `n·e`.
///
/// Rows are multiplied by powers of `y` so every entry is a polynomial; this
/// does not change the span over `F_p[y, y^-1]`.
pub fn rescale(u: &SubmoduleGens, e: usize) -> Result<PolyMatrix> {
    if e == 0 || !e.is_multiple_of(u.e) {
        return Err(Error::domain(format!(
            "{e} is not a multiple of the stored period {}",
            u.e
        )));
    }
    let entries = u
        .gens_at(e)
        .iter()
        .map(|g| {
            let row = split(g, e);
            let low = row
                .iter()
                .filter_map(LaurentPoly::min_exp)
                .min()
                .unwrap_or(0);
            row.iter()
                .map(|f| f.mul_x_pow(-low).to_poly().unwrap())
                .collect::<Vec<Poly>>()
        })
        .filter(|r: &Vec<Poly>| r.iter().any(|f| !f.is_zero()))
        .collect();
    PolyMatrix::new(u.p, u.n * e, entries)
}

pub fn membership(u: &SubmoduleGens, w: &LaurentVector) -> Result<bool> {
    if w.modulus() != u.p {
        return Err(Error::ModulusMismatch {
            left: u.p,
            right: w.modulus(),
        });
    }
    if w.len() != u.n {
        return Err(Error::domain("vector length differs from ambient rank"));
    }
    Ok(u.contains(w))
}

/// Rank of `U` as a module over `F_p[x^{±e}]` at its stored period.
pub fn rank_of(u: &SubmoduleGens) -> usize {
    u.canonical_unchecked(u.e).rank()
}

/// The least period `e(U)`, searched among the divisors of a known period `s`.
pub fn exponent(u: &SubmoduleGens, s: usize) -> Result<usize> {
    if s == 0 || !u.has_period(s) {
        return Err(Error::precondition(format!("x^{s} U != U")));
    }
    Ok((1..=s)
        .filter(|d| s.is_multiple_of(*d))
        .find(|&d| u.has_period(d))
        .unwrap_or(s))
}

/// Rank of `U` under the action `x * u = x^m u`.
pub fn rk_m(u: &SubmoduleGens, m: usize) -> Result<usize> {
    Ok(u.canonical(m)?.rank())
}

pub fn r_value(u: &SubmoduleGens) -> Result<InvariantReport> {
    let e = exponent(u, u.e)?;
    let rk = rk_m(u, e)?;
    Ok(InvariantReport {
        e,
        rk,
        r: u.n * e - rk,
    })
}
