//! Exact arithmetic in Z[ζ_p]: quadratic Gauss sums, the Galois action, and
//! the √(p*) normalization used by the Walsh engine.
//!
//! Run: cargo run --release --example exact_cyclotomic

use codeforge::cyclotomic::{gauss_sum, legendre, p_star, sqrt_pstar_power, CycInt};

fn main() {
    for p in [3u64, 5, 7, 11] {
        let g = gauss_sum(p);
        let square = g.mul(&g).as_integer().unwrap();
        println!("p = {p}: G = {g}");
        println!("  G² = {square} (p* = {})", p_star(p));
        println!("  G·conj(G) = {}", g.norm_conj().as_integer().unwrap());
        // σ_a(G) = η₀(a)·G for every unit a
        for a in 1..p {
            assert_eq!(g.galois(a), g.scale(&legendre(a, p).into()));
        }
        println!("  σ_a(G) = η₀(a)·G verified for all a");
    }

    // even powers of √(p*) collapse to rational integers
    for e in 1..=6u32 {
        let w = sqrt_pstar_power(3, e);
        match w.as_integer() {
            Some(n) => println!("√(−3)^{e} = {n}"),
            None => println!("√(−3)^{e} = {w}"),
        }
    }

    // ζ_7 summed over its full orbit vanishes
    let mut s = CycInt::zero(7);
    for i in 0..7 {
        s = s.add(&CycInt::zeta_pow(7, i));
    }
    assert!(s.is_zero());
    println!("Σ ζ₇^i = 0 exactly");
}
