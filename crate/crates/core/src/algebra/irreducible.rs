//! Monic irreducible polynomials over F_p.

use super::poly::Poly;

/// Rabin/Ben-Or test: `f` of degree `d` is irreducible iff
/// `gcd(x^{p^i} - x, f) = 1` for every `1 <= i <= d/2`.
pub fn is_irreducible(f: &Poly) -> bool {
    let Some(d) = f.degree() else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let p = f.modulus();
    let x = Poly::x(p);
    let mut frob = x.rem(f);
    for _ in 0..d / 2 {
        frob = frob.pow_mod(p as u64, f);
        let g = Poly::ext_gcd(&(&frob - &x), f).0;
        if !g.is_one() {
            return false;
        }
    }
    true
}

/// All monic polynomials of degree `d` in enumeration order: the lower
/// coefficients read as a base-`p` numeral, least significant digit = constant term.
pub fn monic_of_degree(p: u32, d: usize) -> impl Iterator<Item = Poly> {
    let total = (p as u64).pow(d as u32);
    (0..total).map(move |mut n| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push((n % p as u64) as u32);
            n /= p as u64;
        }
        coeffs.push(1);
        Poly::from_residues(coeffs, p)
    })
}

/// Monic irreducibles other than `x`, by degree and then lexicographically.
///
/// `x` is a unit of the Laurent ring, so it is left out.
pub fn irreducibles(p: u32) -> impl Iterator<Item = Poly> {
    (1usize..)
        .flat_map(move |d| monic_of_degree(p, d))
        .filter(|f| f.constant_term() != 0 && is_irreducible(f))
}

/// The first `count` non-unit monic irreducibles over F_p.
pub fn enumerate_irreducibles(p: u32, count: usize) -> Vec<Poly> {
    irreducibles(p).take(count).collect()
}

/// The first (in enumeration order) monic irreducible of degree `d`, with
/// nonzero constant term.
pub fn first_irreducible_of_degree(p: u32, d: usize) -> Poly {
    assert!(d >= 1);
    monic_of_degree(p, d)
        .find(|f| f.constant_term() != 0 && is_irreducible(f))
        .expect("irreducibles exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64], p: u32) -> Poly {
        Poly::from_coeffs(c.to_vec(), p)
    }

    /// Oracle: no monic divisor of degree 1..=d/2.
    fn irreducible_by_trial_division(f: &Poly) -> bool {
        let d = f.degree().unwrap();
        (1..=d / 2).all(|k| monic_of_degree(f.modulus(), k).all(|g| !g.divides(f)))
    }

    #[test]
    fn examples() {
        assert_eq!(
            enumerate_irreducibles(2, 4),
            vec![
                poly(&[1, 1], 2),
                poly(&[1, 1, 1], 2),
                poly(&[1, 1, 0, 1], 2),
                poly(&[1, 0, 1, 1], 2),
            ]
        );
        assert_eq!(
            enumerate_irreducibles(3, 2),
            vec![poly(&[1, 1], 3), poly(&[2, 1], 3)]
        );
        assert_eq!(enumerate_irreducibles(2, 1), vec![poly(&[1, 1], 2)]);
    }

    #[test]
    fn agrees_with_trial_division() {
        for p in [2u32, 3, 5] {
            let max_d = if p == 2 { 9 } else { 5 };
            for d in 1..=max_d {
                for f in monic_of_degree(p, d) {
                    assert_eq!(
                        is_irreducible(&f),
                        irreducible_by_trial_division(&f),
                        "{f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_never_contains_x() {
        for p in [2u32, 3] {
            let list = enumerate_irreducibles(p, 40);
            assert!(list.iter().all(|f| *f != Poly::x(p)));
            assert!(list.iter().all(irreducible_by_trial_division));
            assert!(list.windows(2).all(|w| w[0].enumeration_cmp(&w[1]).is_lt()));
        }
    }

    #[test]
    fn irreducible_count_by_degree() {
        // Necklace counts minus the polynomial x: 1, 1, 2, 3, 6, 9 over F_2.
        let counts: Vec<usize> = (1..=6)
            .map(|d| {
                monic_of_degree(2, d)
                    .filter(|f| f.constant_term() != 0 && is_irreducible(f))
                    .count()
            })
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 6, 9]);
    }

    #[test]
    fn ladder() {
        assert_eq!(first_irreducible_of_degree(2, 3), poly(&[1, 1, 0, 1], 2));
        for d in 1..=12 {
            let f = first_irreducible_of_degree(3, d);
            assert_eq!(f.degree(), Some(d));
            assert!(is_irreducible(&f));
        }
    }
}
