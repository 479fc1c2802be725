use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::GroupElement;
use crate::algebra::{phi, LaurentPoly};
use crate::error::{Error, Result};
use crate::modules::submodule::{content_lines, parse_fields, CanonicalModule};
use crate::modules::{exponent, r_value, LaurentVector, SubmoduleGens};

/// A subgroup `V ≤ L_{n,p}` as `(s, U, v)`: `U = V ∩ A`, `s` generates the
/// projection of `V` to `Z` and `(v, s) ∈ V`.
///
/// `s = 0` describes a subgroup of `A`, in which case `v = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubgroupTriple {
    s: u64,
    u: SubmoduleGens,
    v: LaurentVector,
}

/// A point `(t, r)` of the poset `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QPoint {
    pub t: u64,
    pub r: u64,
}

impl QPoint {
    pub fn new(t: u64, r: u64) -> Result<Self> {
        if t == 0 {
            return Err(Error::domain("t must be at least 1"));
        }
        Ok(QPoint { t, r })
    }
}

impl fmt::Display for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t, self.r)
    }
}

fn divides(a: u64, b: u64) -> bool {
    if a == 0 {
        b == 0
    } else {
        b.is_multiple_of(a)
    }
}

impl SubgroupTriple {
    /// Validates and canonicalizes.
    pub fn new(s: u64, u: SubmoduleGens, v: LaurentVector) -> Result<Self> {
        if v.len() != u.ambient_rank() || v.modulus() != u.modulus() {
            return Err(Error::domain("v does not live in the ambient module of U"));
        }
        let period = if s > 0 {
            if !u.has_period(s as usize) {
                return Err(Error::domain(format!("x^{s} U != U")));
            }
            s as usize
        } else {
            exponent(&u, u.period())?
        };
        let canon = u.canonical(period)?;
        let v = canon.reduce(&v);
        if s == 0 && !v.is_zero() {
            return Err(Error::domain("a triple with s = 0 needs v in U"));
        }
        Ok(SubgroupTriple {
            s,
            u: canon.to_gens(),
            v,
        })
    }

    /// The subgroup `U ≤ A` itself.
    pub fn in_a(u: SubmoduleGens) -> Result<Self> {
        let v = LaurentVector::zero(u.ambient_rank(), u.modulus());
        SubgroupTriple::new(0, u, v)
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn u(&self) -> &SubmoduleGens {
        &self.u
    }

    pub fn v(&self) -> &LaurentVector {
        &self.v
    }

    pub fn ambient_rank(&self) -> usize {
        self.u.ambient_rank()
    }

    pub fn modulus(&self) -> u32 {
        self.u.modulus()
    }

    /// `(v, s)` as a group element.
    pub fn generator(&self) -> GroupElement {
        GroupElement::new(self.v.clone(), self.s as i64)
    }

    /// Prepares the reduction data used by repeated membership queries.
    pub fn oracle(&self) -> MembershipOracle {
        MembershipOracle {
            s: self.s as i64,
            gen: self.generator(),
            canon: self.u.canonical(self.u.period()).expect("stored period"),
        }
    }

    pub fn to_text(&self) -> String {
        format!("s={}\n{}v={}\n", self.s, self.u.to_text(), self.v)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = content_lines(text).collect();
        let Some(&(sl, sline)) = lines.first() else {
            return Err(Error::parse(1, "missing s=<s> line"));
        };
        let s = parse_fields(sline, sl, &["s"])?[0];
        let (u, rest) = SubmoduleGens::parse_block(&lines[1..])?;
        let Some(&(vl, vline)) = rest.first() else {
            let last = lines.last().map_or(1, |l| l.0);
            return Err(Error::parse(last, "missing v=<vector> line"));
        };
        let vtext = vline
            .strip_prefix("v=")
            .ok_or_else(|| Error::parse(vl, "expected v=<vector>"))?;
        let v = LaurentVector::parse_at(vtext, u.ambient_rank(), u.modulus(), vl)?;
        if let Some(&(extra, _)) = rest.get(1) {
            return Err(Error::parse(extra, "unexpected line after v"));
        }
        SubgroupTriple::new(s, u, v).map_err(|e| Error::parse(vl, e.to_string()))
    }

    pub fn to_json(&self) -> TripleJson {
        TripleJson {
            schema: TRIPLE_SCHEMA.into(),
            s: self.s,
            n: self.u.ambient_rank(),
            p: self.u.modulus(),
            e: self.u.period(),
            gens: self.u.gens().iter().map(ToString::to_string).collect(),
            v: self.v.to_string(),
        }
    }

    pub fn from_json(j: &TripleJson) -> Result<Self> {
        if j.schema != TRIPLE_SCHEMA {
            return Err(Error::domain(format!("unknown schema {:?}", j.schema)));
        }
        let gens = j
            .gens
            .iter()
            .map(|g| LaurentVector::parse(g, j.n, j.p))
            .collect::<Result<Vec<_>>>()?;
        let u = SubmoduleGens::new(j.n, j.p, j.e, gens)?;
        SubgroupTriple::new(j.s, u, LaurentVector::parse(&j.v, j.n, j.p)?)
    }
}

pub const TRIPLE_SCHEMA: &str = "lamplighter.triple/1";

/// JSON mirror of the triple text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleJson {
    pub schema: String,
    pub s: u64,
    pub n: usize,
    pub p: u32,
    pub e: usize,
    pub gens: Vec<String>,
    pub v: String,
}

/// Membership test for a fixed triple.
#[derive(Clone, Debug)]
pub struct MembershipOracle {
    s: i64,
    gen: GroupElement,
    canon: CanonicalModule,
}

impl MembershipOracle {
    /// `(w, t) ∈ V` iff `s | t` and `(w, t)(v, s)^{-t/s}` lies in `U`.
    pub fn contains(&self, g: &GroupElement) -> bool {
        if self.s == 0 {
            return g.s == 0 && self.canon.contains(&g.v);
        }
        if g.s % self.s != 0 {
            return false;
        }
        let h = g.multiply(&self.gen.power(-(g.s / self.s)));
        self.canon.contains(&h.v)
    }
}

pub fn triple_membership(v: &SubgroupTriple, g: &GroupElement) -> bool {
    v.oracle().contains(g)
}

/// Triples are stored canonically, so this only clones.
pub fn canonical_triple(v: &SubgroupTriple) -> SubgroupTriple {
    v.clone()
}

/// `W ⊆ V`: `s_V | s_W`, `U_W ⊆ U_V` and
/// `v_W ≡ (1 + x^{s_V} + ... + x^{(k-1) s_V}) v_V mod U_V` with `k = s_W / s_V`.
pub fn contains(big: &SubgroupTriple, small: &SubgroupTriple) -> bool {
    if !divides(big.s, small.s) || !big.u.contains_module(&small.u) {
        return false;
    }
    if small.s == 0 {
        return true;
    }
    let k = (small.s / big.s) as usize;
    let p = big.modulus();
    let f = LaurentPoly::from_poly(phi(k, big.s as usize, p).expect("k, s >= 1"));
    big.u.contains(&(&small.v - &big.v.scale(&f)))
}

/// `g V g^{-1}` for `g = (w, u)`: `(s, x^u U, x^u v + (1 - x^s) w)`.
pub fn conjugate(g: &GroupElement, v: &SubgroupTriple) -> SubgroupTriple {
    let p = v.modulus();
    let u = g.s;
    let one_minus = LaurentPoly::from_terms(&[(0, 1), (v.s as i64, -1)], p);
    let new_v = &v.v.mul_x_pow(u) + &g.v.scale(&one_minus);
    SubgroupTriple::new(v.s, v.u.shift(u), new_v).expect("conjugate of a valid triple")
}

/// Generator of the image of `V` in `Z`.
pub fn pi1(v: &SubgroupTriple) -> u64 {
    v.s
}

/// `V ∩ A`.
pub fn pi2(v: &SubgroupTriple) -> SubmoduleGens {
    v.u.clone()
}

/// Whether `V` lies in the cylinder `{H : A ⊆ H, H ∩ B = ∅}`.
pub fn cylinder_test(v: &SubgroupTriple, a: &[GroupElement], b: &[GroupElement]) -> bool {
    let o = v.oracle();
    a.iter().all(|g| o.contains(g)) && !b.iter().any(|g| o.contains(g))
}

/// `Φ(V) = (s / e(U), r(U))`.
pub fn phi_encoding(v: &SubgroupTriple) -> Result<QPoint> {
    if v.s == 0 {
        return Err(Error::domain(
            "s = 0: the subgroup lies in the lamp group and has no Q encoding",
        ));
    }
    let inv = r_value(&v.u)?;
    let e = exponent(&v.u, v.s as usize)?;
    Ok(QPoint {
        t: v.s / e as u64,
        r: inv.r as u64,
    })
}

impl fmt::Display for SubgroupTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for SubgroupTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Triple({})",
            self.to_text().trim_end().replace('\n', "; ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lamplighter::ball::{converges_on_ball, word_closure, Convergence};

    fn lv(s: &str, p: u32) -> LaurentVector {
        LaurentVector::parse(s, 1, p).unwrap()
    }

    fn principal(f: &str, e: usize, p: u32) -> SubmoduleGens {
        SubmoduleGens::new(1, p, e, vec![lv(&format!("[{f}]"), p)]).unwrap()
    }

    fn sample() -> SubgroupTriple {
        SubgroupTriple::new(2, principal("1+x^2", 2, 2), lv("[1+x^-1]", 2)).unwrap()
    }

    #[test]
    fn membership_examples() {
        let v = sample();
        assert!(triple_membership(&v, &v.generator()));
        assert!(triple_membership(
            &v,
            &GroupElement::new(lv("[1+x^2]", 2), 0)
        ));
        assert!(triple_membership(&v, &v.generator().power(-2)));
        assert!(!triple_membership(&v, &GroupElement::new(lv("[1]", 2), 0)));
        assert!(!triple_membership(&v, &GroupElement::new(lv("[0]", 2), 1)));
        let closure = word_closure(
            &[v.generator(), GroupElement::new(lv("[1+x^2]", 2), 0)],
            1,
            2,
            5,
            4,
            1,
        );
        assert!(closure.contains(&v.generator().power(-2)));
        assert!(closure.iter().all(|g| triple_membership(&v, g)));
    }

    #[test]
    fn canonical_examples() {
        let v = sample();
        assert_eq!(canonical_triple(&v), v);
        let shifted =
            SubgroupTriple::new(2, principal("1+x^2", 2, 2), lv("[1+x^-1+x^2+x^4]", 2)).unwrap();
        assert_eq!(shifted, v);
        let a = lv("[1+x]", 3);
        let b = lv("[x^-1]", 3);
        let u1 = SubmoduleGens::new(1, 3, 2, vec![a.clone(), b.clone()]).unwrap();
        let u2 = SubmoduleGens::new(1, 3, 2, vec![b, &a + &a]).unwrap();
        let z = LaurentVector::zero(1, 3);
        assert_eq!(
            SubgroupTriple::new(2, u1, z.clone()).unwrap(),
            SubgroupTriple::new(2, u2, z).unwrap()
        );
    }

    #[test]
    fn invalid_triples() {
        assert!(SubgroupTriple::new(3, principal("1", 2, 2), lv("[0]", 2)).is_err());
        assert!(SubgroupTriple::new(0, principal("1+x", 1, 2), lv("[1]", 2)).is_err());
        assert!(SubgroupTriple::new(0, principal("1+x", 1, 2), lv("[1+x]", 2)).is_ok());
    }

    #[test]
    fn containment_examples() {
        let v = sample();
        assert!(contains(&v, &v));
        let big = SubgroupTriple::new(1, principal("1+x", 1, 2), lv("[1]", 2)).unwrap();
        let small = SubgroupTriple::new(2, principal("1+x^2", 2, 2), lv("[1+x]", 2)).unwrap();
        assert!(contains(&big, &small));
        assert!(!contains(&small, &big));
        // every element of `small` on a ball lies in `big`
        let o = big.oracle();
        for g in word_closure(
            &[small.generator(), GroupElement::new(lv("[1+x^2]", 2), 0)],
            1,
            2,
            2,
            4,
            2,
        ) {
            assert!(o.contains(&g));
        }
        let s3 = SubgroupTriple::new(3, SubmoduleGens::full(1, 2), lv("[0]", 2)).unwrap();
        let s2 = SubgroupTriple::new(2, SubmoduleGens::full(1, 2), lv("[0]", 2)).unwrap();
        assert!(!contains(&s3, &s2));
        let a_part = SubgroupTriple::in_a(principal("1+x^2", 1, 2)).unwrap();
        assert!(contains(&big, &a_part));
        assert!(!contains(&a_part, &big));
    }

    #[test]
    fn conjugation_examples() {
        let v = sample();
        assert_eq!(conjugate(&GroupElement::identity(1, 2), &v), v);
        let g = GroupElement::new(LaurentVector::zero(1, 2), 3);
        let c = conjugate(&g, &v);
        let expected = SubgroupTriple::new(2, v.u().shift(3), v.v().mul_x_pow(3)).unwrap();
        assert_eq!(c, expected);
        assert_eq!(pi1(&c), pi1(&v));
        let h = GroupElement::new(lv("[x^-1+x^2]", 2), -1);
        assert_eq!(pi1(&conjugate(&h, &v)), 2);
    }

    #[test]
    fn projections() {
        let a = SubgroupTriple::in_a(principal("1+x", 1, 3)).unwrap();
        assert_eq!(pi1(&a), 0);
        let u = principal("1+x^2", 2, 2);
        assert!(pi2(&sample()).same_module(&u));
    }

    #[test]
    fn cylinders() {
        let v = sample();
        let id = GroupElement::identity(1, 2);
        assert!(cylinder_test(&v, &[id], &[]));
        assert!(cylinder_test(&v, &[v.generator()], &[]));
        assert!(!cylinder_test(&v, &[], &[v.generator()]));
    }

    #[test]
    fn encoding_examples() {
        for s in 1..5 {
            let full = SubgroupTriple::new(s, SubmoduleGens::full(2, 3), LaurentVector::zero(2, 3))
                .unwrap();
            assert_eq!(phi_encoding(&full).unwrap(), QPoint { t: s, r: 0 });
        }
        let even = SubgroupTriple::new(2, principal("1", 2, 2), lv("[x]", 2)).unwrap();
        assert_eq!(phi_encoding(&even).unwrap(), QPoint { t: 1, r: 1 });
        let a = SubgroupTriple::in_a(SubmoduleGens::full(1, 2)).unwrap();
        assert!(matches!(phi_encoding(&a), Err(Error::Domain(_))));
    }

    #[test]
    fn text_and_json() {
        let v = sample();
        let t = v.to_text();
        assert!(t.starts_with("s=2\nn=1 e=2 p=2\n"));
        assert_eq!(SubgroupTriple::parse(&t).unwrap(), v);
        let j = serde_json::to_string(&v.to_json()).unwrap();
        let back: TripleJson = serde_json::from_str(&j).unwrap();
        assert_eq!(SubgroupTriple::from_json(&back).unwrap(), v);
        let bad = "s=2\nn=1 e=2 p=2\n[1+x^2]\nv=[1+x+x]\n";
        assert!(matches!(
            SubgroupTriple::parse(bad),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(
            SubgroupTriple::parse("s=2\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn ball_convergence() {
        let v = sample();
        assert_eq!(
            converges_on_ball(|_| v.clone(), &v, 2, 2, 5).unwrap(),
            Convergence::Stabilized { m0: 1 }
        );
        let other = SubgroupTriple::new(2, SubmoduleGens::full(1, 2), lv("[0]", 2)).unwrap();
        match converges_on_ball(
            |m| if m % 2 == 0 { other.clone() } else { v.clone() },
            &v,
            2,
            2,
            6,
        )
        .unwrap()
        {
            Convergence::Failed {
                witness,
                in_limit,
                index,
            } => {
                assert_eq!(index, 6);
                assert_eq!(triple_membership(&v, &witness), in_limit);
                assert_ne!(triple_membership(&other, &witness), in_limit);
            }
            c => panic!("{c:?}"),
        }
    }
}
