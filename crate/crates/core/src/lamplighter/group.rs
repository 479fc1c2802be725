use std::fmt;

use crate::algebra::LaurentPoly;
use crate::modules::LaurentVector;

/// An element `(v, s)` of `L_{n,p}`: lamp configuration `v` and cursor shift `s`.
///
/// `(v, s)(w, t) = (v + x^s w, s + t)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub v: LaurentVector,
    pub s: i64,
}

impl GroupElement {
    pub fn new(v: LaurentVector, s: i64) -> Self {
        GroupElement { v, s }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        GroupElement {
            v: LaurentVector::zero(n, p),
            s: 0,
        }
    }

    /// The shift generator `τ = (0, 1)`.
    pub fn tau(n: usize, p: u32) -> Self {
        GroupElement {
            v: LaurentVector::zero(n, p),
            s: 1,
        }
    }

    /// The lamp generator `a_i`: lamp `i` at position 0 switched by one.
    pub fn lamp(n: usize, p: u32, i: usize) -> Self {
        GroupElement {
            v: LaurentVector::unit(n, i, LaurentPoly::one(p)),
            s: 0,
        }
    }

    /// `a_1, ..., a_n, τ` followed by their inverses.
    pub fn generators(n: usize, p: u32) -> Vec<GroupElement> {
        let mut gens: Vec<GroupElement> = (0..n).map(|i| GroupElement::lamp(n, p, i)).collect();
        gens.push(GroupElement::tau(n, p));
        let inverses: Vec<GroupElement> = gens.iter().map(GroupElement::inverse).collect();
        gens.extend(inverses);
        gens
    }

    pub fn is_identity(&self) -> bool {
        self.s == 0 && self.v.is_zero()
    }

    pub fn multiply(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            v: &self.v + &other.v.mul_x_pow(self.s),
            s: self.s + other.s,
        }
    }

    /// `(v, s)^{-1} = (-x^{-s} v, -s)`.
    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            v: -&self.v.mul_x_pow(-self.s),
            s: -self.s,
        }
    }

    /// `(v, s)^k = ((1 + x^s + ... + x^{(k-1)s}) v, k s)` for `k >= 0`.
    pub fn power(&self, k: i64) -> GroupElement {
        if k < 0 {
            return self.inverse().power(-k);
        }
        let p = self.v.modulus();
        GroupElement {
            v: self.v.scale(&LaurentPoly::geometric(k as usize, self.s, p)),
            s: k * self.s,
        }
    }

    pub fn conjugate_by(&self, g: &GroupElement) -> GroupElement {
        g.multiply(self).multiply(&g.inverse())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.v, self.s)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn element(n: usize, p: u32) -> impl Strategy<Value = GroupElement> {
        (
            proptest::collection::vec(
                proptest::collection::vec((-4i64..5, 0i64..p as i64), 0..4),
                n,
            ),
            -5i64..6,
        )
            .prop_map(move |(coords, s)| {
                let coords = coords
                    .iter()
                    .map(|t| LaurentPoly::from_terms(t, p))
                    .collect();
                GroupElement::new(LaurentVector::new(coords, p).unwrap(), s)
            })
    }

    #[test]
    fn shift_convention() {
        let p = 2;
        let d0 = LaurentVector::from_lamps(0, &[vec![1]], 1, p);
        let g = GroupElement::new(d0.clone(), 1).multiply(&GroupElement::new(d0, 0));
        let expected = LaurentVector::from_lamps(-1, &[vec![1], vec![1]], 1, p);
        assert_eq!(g, GroupElement::new(expected, 1));
    }

    #[test]
    fn identity_and_inverse() {
        let g = GroupElement::new(
            LaurentVector::from_lamps(-2, &[vec![1, 2], vec![0, 1]], 2, 3),
            -3,
        );
        let id = GroupElement::identity(2, 3);
        assert_eq!(g.multiply(&id), g);
        assert_eq!(id.multiply(&g), g);
        assert!(g.multiply(&g.inverse()).is_identity());
        assert!(g.power(0).is_identity());
        assert_eq!(g.power(-1), g.inverse());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn group_axioms(a in element(2, 3), b in element(2, 3), c in element(2, 3)) {
            prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
            prop_assert!(a.multiply(&a.inverse()).is_identity());
            prop_assert!(a.inverse().multiply(&a).is_identity());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn power_matches_iterated_product(g in element(1, 2), k in -6i64..=6) {
            let base = if k >= 0 { g.clone() } else { g.inverse() };
            let mut acc = GroupElement::identity(1, 2);
            for _ in 0..k.abs() {
                acc = acc.multiply(&base);
            }
            prop_assert_eq!(g.power(k), acc);
        }
    }
}
