//! Build the augmented defining-set code for N = q^r + 1 (the norm-trace
//! family) and check the enumerated weight distribution against its closed
//! form.
//!
//! Run: cargo run --release --example norm_trace_code

use codeforge::constructions::{
    augmented_code, defining_set, predicted_profile, CodeFamilySpec, GeneratorVariant,
    MonomialFamilySpec,
};

fn main() {
    let (q, r) = (3u64, 2usize);
    let spec = MonomialFamilySpec::norm_trace(q, 1, r).unwrap();
    println!(
        "family: N = q^r + 1 = {} over GF({}^{}), defining trace to GF({q}) with t = {}",
        spec.n_exp,
        q,
        spec.m,
        spec.t
    );

    let (_, d_set) = defining_set(&spec).unwrap();
    println!(
        "defining set: {} elements, zero placed last (last enc = {})",
        d_set.len(),
        d_set.last().unwrap().enc()
    );

    let built = augmented_code(&spec, GeneratorVariant::Canonical).unwrap();
    let code = &built.code;
    let wd = code.weight_distribution().unwrap();
    println!(
        "code: [{}, {}, {}] over GF({q})",
        code.n(),
        code.k(),
        code.min_distance().unwrap()
    );
    println!("enumerated weights: {:?}", wd.counts);

    let profile = predicted_profile(&CodeFamilySpec::NormTrace { p: q, e: 1, r }, None).unwrap();
    println!("closed-form weights: {:?}", profile.weight_table);
    assert_eq!(wd.counts, profile.weight_table);

    println!(
        "dual distance: {:?} (predicted {:?})",
        code.dual_min_distance(4),
        profile.dual_d
    );
    println!("self-orthogonal: {}", code.is_self_orthogonal());
    println!("divisor of all weights: {}", code.divisor().unwrap());
}
