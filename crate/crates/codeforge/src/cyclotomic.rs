//! Exact arithmetic in Z[ζ_p] for odd prime p (and p = 2, where ζ_2 = −1).
//!
//! Elements are stored as integer coordinates (c_0, …, c_{p−1}) representing
//! Σ c_i ζ_p^i, kept in the canonical form c_{p−1} = 0 obtained by subtracting
//! c_{p−1} from every coordinate (Σ_i ζ_p^i = 0). Canonical coordinates are
//! unique, so equality and integer extraction are plain coordinate comparisons.
//! Coordinates are arbitrary-precision: character sums over GF(p^e) reach
//! magnitude p^e and must never wrap silently.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// An element of Z[ζ_p] in canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    order: u64,
    coords: Vec<BigInt>,
}

impl CycInt {
    /// The zero element of Z[ζ_p].
    pub fn zero(p: u64) -> CycInt {
        assert!(p >= 2);
        CycInt {
            order: p,
            coords: vec![BigInt::zero(); p as usize],
        }
    }

    /// The rational integer n, embedded as (n, 0, …, 0).
    pub fn from_int(p: u64, n: impl Into<BigInt>) -> CycInt {
        let mut w = CycInt::zero(p);
        w.coords[0] = n.into();
        w
    }

    /// ζ_p^k.
    pub fn zeta_pow(p: u64, k: u64) -> CycInt {
        let mut w = CycInt::zero(p);
        w.coords[(k % p) as usize] = BigInt::one();
        w.canonicalize();
        w
    }

    /// Raw coordinates (c_0, …, c_{p−1}) with c_{p−1} = 0.
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    fn canonicalize(&mut self) {
        let last = self.coords[self.order as usize - 1].clone();
        if !last.is_zero() {
            for c in &mut self.coords {
                *c -= &last;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(BigInt::is_zero)
    }

    fn assert_same_order(&self, rhs: &CycInt) {
        assert_eq!(
            self.order, rhs.order,
            "mixed root orders {} and {}",
            self.order, rhs.order
        );
    }

    pub fn add(&self, rhs: &CycInt) -> CycInt {
        self.assert_same_order(rhs);
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(a, b)| a + b)
            .collect();
        CycInt {
            order: self.order,
            coords,
        }
    }

    pub fn sub(&self, rhs: &CycInt) -> CycInt {
        self.assert_same_order(rhs);
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(a, b)| a - b)
            .collect();
        CycInt {
            order: self.order,
            coords,
        }
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            order: self.order,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Product; exponents reduce mod p, result re-canonicalized.
    pub fn mul(&self, rhs: &CycInt) -> CycInt {
        self.assert_same_order(rhs);
        let p = self.order as usize;
        let mut coords = vec![BigInt::zero(); p];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coords[(i + j) % p] += a * b;
            }
        }
        let mut w = CycInt {
            order: self.order,
            coords,
        };
        w.canonicalize();
        w
    }

    pub fn scale(&self, n: &BigInt) -> CycInt {
        CycInt {
            order: self.order,
            coords: self.coords.iter().map(|c| c * n).collect(),
        }
    }

    /// Multiply by ζ_p^k.
    pub fn mul_zeta_pow(&self, k: u64) -> CycInt {
        let p = self.order;
        let k = (k % p) as usize;
        let mut coords = vec![BigInt::zero(); p as usize];
        for (i, c) in self.coords.iter().enumerate() {
            coords[(i + k) % p as usize] = c.clone();
        }
        let mut w = CycInt {
            order: p,
            coords,
        };
        w.canonicalize();
        w
    }

    /// Galois action σ_a(ζ_p^b) = ζ_p^{ab} for a unit mod p.
    pub fn galois(&self, a: u64) -> CycInt {
        let p = self.order;
        let a = a % p;
        assert!(
            num_integer::gcd(a, p) == 1,
            "{a} is not a unit modulo {p}"
        );
        let mut coords = vec![BigInt::zero(); p as usize];
        for (i, c) in self.coords.iter().enumerate() {
            coords[(i as u64 * a % p) as usize] += c;
        }
        let mut w = CycInt {
            order: p,
            coords,
        };
        w.canonicalize();
        w
    }

    /// Complex conjugation σ_{p−1}.
    pub fn conj(&self) -> CycInt {
        if self.order == 2 {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    /// Some(n) iff the element is the rational integer n.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coords[1..].iter().all(BigInt::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Decompose as ε·ζ_p^k with ε ∈ {−1, +1}, if the element has that shape.
    ///
    /// Note ±ζ_p^{p−1} canonicalizes to all-equal coordinates ∓1, which is
    /// handled here.
    pub fn as_sign_times_zeta(&self) -> Option<(i8, u64)> {
        let p = self.order as usize;
        let one = BigInt::one();
        let nonzero: Vec<usize> = (0..p).filter(|&i| !self.coords[i].is_zero()).collect();
        if nonzero.len() == 1 {
            let i = nonzero[0];
            if self.coords[i] == one {
                return Some((1, i as u64));
            }
            if self.coords[i] == -&one {
                return Some((-1, i as u64));
            }
            return None;
        }
        if nonzero.len() == p - 1 {
            if self.coords[..p - 1].iter().all(|c| *c == one) {
                return Some((-1, (p - 1) as u64));
            }
            if self.coords[..p - 1].iter().all(|c| *c == -&one) {
                return Some((1, (p - 1) as u64));
            }
        }
        None
    }

    /// Exact division of every coordinate by n; None if any coordinate is not
    /// divisible.
    pub fn div_exact(&self, n: &BigInt) -> Option<CycInt> {
        assert!(!n.is_zero());
        let mut coords = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            let (q, r) = num_integer::Integer::div_rem(c, n);
            if !r.is_zero() {
                return None;
            }
            coords.push(q);
        }
        Some(CycInt {
            order: self.order,
            coords,
        })
    }

    /// |w|² = w · conj(w), as an exact rational integer when it is one.
    pub fn norm_conj(&self) -> CycInt {
        self.mul(&self.conj())
    }
}

impl std::fmt::Display for CycInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z^{i}")?;
            } else {
                write!(f, "{c}*z^{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Legendre symbol of x modulo an odd prime p, as −1, 0, or 1.
pub fn legendre(x: u64, p: u64) -> i32 {
    let x = x % p;
    if x == 0 {
        return 0;
    }
    let mut r = 1u64;
    let mut b = x;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// The quadratic Gauss sum over GF(p): Σ_{x=1}^{p−1} η_0(x) ζ_p^x.
///
/// Its square is the rational integer p* = (−1)^{(p−1)/2} p.
pub fn gauss_sum(p: u64) -> CycInt {
    assert!(p >= 3 && p % 2 == 1, "gauss_sum requires an odd prime");
    let mut w = CycInt::zero(p);
    for x in 1..p {
        let s = legendre(x, p);
        w.coords[x as usize] += BigInt::from(s);
    }
    w.canonicalize();
    w
}

/// The canonical exact representative of √(p*)^e, namely gauss_sum(p)^e.
///
/// For even e this is the rational integer (p*)^{e/2}.
pub fn sqrt_pstar_power(p: u64, e: u32) -> CycInt {
    let g = gauss_sum(p);
    let mut acc = CycInt::from_int(p, 1);
    for _ in 0..e {
        acc = acc.mul(&g);
    }
    acc
}

/// p* = (−1)^{(p−1)/2} p as a plain integer.
pub fn p_star(p: u64) -> i64 {
    if ((p - 1) / 2).is_multiple_of(2) {
        p as i64
    } else {
        -(p as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(p: u64, n: i64) -> CycInt {
        CycInt::from_int(p, n)
    }

    #[test]
    fn zeta_sum_is_minus_one() {
        // ζ_3 + ζ_3² = −1, canonical coords (−1, 0, 0)
        let w = CycInt::zeta_pow(3, 1).add(&CycInt::zeta_pow(3, 2));
        assert_eq!(w, int(3, -1));
        assert_eq!(w.coords()[0], BigInt::from(-1));
        assert!(w.coords()[1].is_zero() && w.coords()[2].is_zero());
    }

    #[test]
    fn zeta_mul_wraps() {
        // ζ_5 · ζ_5⁴ = 1
        let w = CycInt::zeta_pow(5, 1).mul(&CycInt::zeta_pow(5, 4));
        assert_eq!(w.as_integer(), Some(BigInt::one()));
    }

    #[test]
    fn full_orbit_sums_to_zero() {
        for p in [3u64, 5, 7] {
            let mut s = CycInt::zero(p);
            for i in 0..p {
                s = s.add(&CycInt::zeta_pow(p, i));
            }
            assert!(s.is_zero(), "Σ ζ_{p}^i = 0");
        }
    }

    #[test]
    fn galois_identity_and_conjugation() {
        let w = CycInt::zeta_pow(7, 3).add(&int(7, 4));
        assert_eq!(w.galois(1), w);
        // σ_{p−1} is an involution
        assert_eq!(w.conj().conj(), w);
    }

    #[test]
    fn galois_sum_over_units() {
        // Σ_{a unit} σ_a(ζ_p) = −1
        for p in [3u64, 5, 7] {
            let z = CycInt::zeta_pow(p, 1);
            let mut s = CycInt::zero(p);
            for a in 1..p {
                s = s.add(&z.galois(a));
            }
            assert_eq!(s.as_integer(), Some(BigInt::from(-1)));
        }
    }

    #[test]
    fn gauss_sum_small_cases() {
        // p = 3: ζ − ζ², square −3
        let g3 = gauss_sum(3);
        assert_eq!(g3, CycInt::zeta_pow(3, 1).sub(&CycInt::zeta_pow(3, 2)));
        assert_eq!(g3.mul(&g3).as_integer(), Some(BigInt::from(-3)));
        // p = 5: square +5
        let g5 = gauss_sum(5);
        assert_eq!(g5.mul(&g5).as_integer(), Some(BigInt::from(5)));
    }

    #[test]
    fn gauss_sum_square_is_p_star() {
        for p in [3u64, 5, 7, 11] {
            let g = gauss_sum(p);
            assert_eq!(
                g.mul(&g).as_integer(),
                Some(BigInt::from(p_star(p))),
                "G² = p* at p = {p}"
            );
            // |G|² = p
            assert_eq!(g.norm_conj().as_integer(), Some(BigInt::from(p)));
        }
    }

    #[test]
    fn galois_acts_on_gauss_sum_by_legendre() {
        // σ_a(√p*) = η_0(a) √p*
        for p in [3u64, 5, 7] {
            let g = gauss_sum(p);
            for a in 1..p {
                let expect = g.scale(&BigInt::from(legendre(a, p)));
                assert_eq!(g.galois(a), expect);
            }
        }
    }

    #[test]
    fn sqrt_pstar_powers() {
        assert_eq!(sqrt_pstar_power(3, 2).as_integer(), Some(BigInt::from(-3)));
        assert_eq!(sqrt_pstar_power(3, 4).as_integer(), Some(BigInt::from(9)));
        // odd power: gauss_sum(3)³ = −3 · gauss_sum(3)
        let g = gauss_sum(3);
        assert_eq!(sqrt_pstar_power(3, 3), g.scale(&BigInt::from(-3)));
    }

    #[test]
    fn as_sign_times_zeta_handles_top_exponent() {
        let p = 5;
        for k in 0..p {
            let w = CycInt::zeta_pow(p, k);
            assert_eq!(w.as_sign_times_zeta(), Some((1, k)));
            assert_eq!(w.neg().as_sign_times_zeta(), Some((-1, k)));
        }
        assert_eq!(int(5, 2).as_sign_times_zeta(), None);
    }

    #[test]
    #[should_panic(expected = "mixed root orders")]
    fn mixed_orders_panic() {
        let _ = CycInt::zeta_pow(3, 1).add(&CycInt::zeta_pow(5, 1));
    }

    #[test]
    #[should_panic(expected = "not a unit")]
    fn galois_rejects_non_unit() {
        let _ = CycInt::zeta_pow(5, 1).galois(5);
    }

    proptest! {
        #[test]
        fn canonicalization_idempotent(coords in prop::collection::vec(-50i64..50, 7)) {
            let mut w = CycInt::zero(7);
            for (i, c) in coords.iter().enumerate() {
                w.coords[i] = BigInt::from(*c);
            }
            w.canonicalize();
            let mut again = w.clone();
            again.canonicalize();
            prop_assert_eq!(w, again);
        }

        #[test]
        fn ring_axioms(a in prop::collection::vec(-20i64..20, 5),
                       b in prop::collection::vec(-20i64..20, 5),
                       c in prop::collection::vec(-20i64..20, 5)) {
            let mk = |v: &Vec<i64>| {
                let mut w = CycInt::zero(5);
                for (i, x) in v.iter().enumerate() { w.coords[i] = BigInt::from(*x); }
                w.canonicalize();
                w
            };
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a).is_zero(), true);
        }

        #[test]
        fn galois_multiplicative_in_a(k in 0u64..7, a in 1u64..7, b in 1u64..7) {
            let w = CycInt::zeta_pow(7, k);
            prop_assert_eq!(w.galois(a).galois(b), w.galois(a * b % 7));
        }
    }
}
