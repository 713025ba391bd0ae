//! The N = 2 family: augmented codes of D = {x : tr(x²) = 0} for odd q and
//! odd m, with the sign pattern controlled by l = e(p−1)(m+3)/4.
//!
//! Run: cargo run --release --example quadratic_code

use codeforge::constructions::{
    augmented_code, predicted_profile, CodeFamilySpec, GeneratorVariant, MonomialFamilySpec,
};

fn main() {
    for (q, m) in [(3u64, 3usize), (3, 5), (5, 3), (7, 3)] {
        let spec = MonomialFamilySpec::quadratic(q, 1, m).unwrap();
        let built = augmented_code(&spec, GeneratorVariant::Canonical).unwrap();
        let code = &built.code;
        let profile = predicted_profile(&CodeFamilySpec::Quadratic { p: q, e: 1, m }, None).unwrap();
        let wd = code.weight_distribution().unwrap();
        assert_eq!(wd.counts, profile.weight_table);
        println!(
            "q = {q}, m = {m}: [{}, {}, {}], dual {:?}, self-orthogonal: {}",
            code.n(),
            code.k(),
            code.min_distance().unwrap(),
            code.dual_min_distance(4),
            code.is_self_orthogonal(),
        );
        println!("  weights {:?}", wd.counts);
    }
}
