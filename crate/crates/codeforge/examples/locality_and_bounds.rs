//! Locality by exhaustive repair-set search, dual locality through the
//! 1-design route, and the LRC bound verdicts.
//!
//! Run: cargo run --release --example locality_and_bounds

use codeforge::analysis::{
    cadambe_mazumdar_verdict, dual_locality_via_design, singleton_like_verdict, LrcParams,
};
use codeforge::constructions::{
    augmented_code, bent_code, BentFunctionSpec, GeneratorVariant, MonomialFamilySpec,
};

fn main() {
    // locality 2 for every q > 2 instance of the monomial family
    for q in [3u64, 4, 5] {
        let (p, e) = if q == 4 { (2, 2) } else { (q, 1) };
        let spec = MonomialFamilySpec::norm_trace(p, e, 2).unwrap();
        let built = augmented_code(&spec, GeneratorVariant::Canonical).unwrap();
        println!(
            "norm-trace q = {q}: [{}, {}] with locality {:?}",
            built.code.n(),
            built.code.k(),
            built.code.locality(3)
        );
    }

    // the binary instance: locality 3, dual locality from the 1-design
    let spec = MonomialFamilySpec::norm_trace(2, 1, 3).unwrap();
    let built = augmented_code(&spec, GeneratorVariant::Canonical).unwrap();
    println!(
        "norm-trace q = 2, r = 3: locality {:?}, dual locality {:?}",
        built.code.locality(3),
        dual_locality_via_design(&built.code)
    );
    // and the dual is (28, 21, 4, 2; 11): nearly dimension-optimal
    let cm = cadambe_mazumdar_verdict(LrcParams::new(28, 21, 4, 2, 11), None).unwrap();
    println!(
        "  dual as LRC: CM bound {} attained at t = {} → {:?}",
        cm.bound, cm.t_star, cm.verdict
    );

    // bent p = 3 with ε·η₀(−1) = −1: locality 3; dual is d- and k-optimal
    let spec = BentFunctionSpec::quadratic(3, 2, 3);
    let built = bent_code(&spec, GeneratorVariant::Canonical).unwrap();
    println!(
        "bent tr(w·x²) over GF(9): locality {:?}, dual locality {:?}",
        built.code.locality(3),
        dual_locality_via_design(&built.code)
    );
    let params = LrcParams::new(9, 5, 4, 3, 4);
    let sl = singleton_like_verdict(params);
    let cm = cadambe_mazumdar_verdict(params, None).unwrap();
    println!(
        "  dual (9,5,4,3;4): Singleton-like rhs {} → {:?}; CM bound {} → {:?}",
        sl.rhs, sl.verdict, cm.bound, cm.verdict
    );
}
