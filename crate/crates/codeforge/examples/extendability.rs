//! Identity extension [I : G] and the extendability verdict: the dual
//! distance of the extension depends on which generator matrix presents the
//! code, and the row-tweak variants keep it from dropping.
//!
//! Run: cargo run --release --example extendability

use codeforge::analysis::extendability_verdict;
use codeforge::codes::extend_identity;
use codeforge::constructions::{
    augmented_code, bent_code, BentFunctionSpec, GeneratorVariant, MonomialFamilySpec,
};

fn main() {
    let spec = MonomialFamilySpec::norm_trace(3, 1, 2).unwrap();
    for variant in [GeneratorVariant::Canonical, GeneratorVariant::RowTweak] {
        let built = augmented_code(&spec, variant).unwrap();
        let code = &built.code;
        let ext = extend_identity(code.field(), code.gen_rows()).unwrap();
        let rep = extendability_verdict(code, code.gen_rows(), 4).unwrap();
        println!(
            "norm-trace q=3, r=2, {variant:?}: C' = [{}, {}, {}], d(C⊥) = {}, d(C'⊥) = {} → {:?}",
            ext.n(),
            ext.k(),
            ext.min_distance().unwrap(),
            rep.dual_d,
            rep.extended_dual_d,
            rep.verdict
        );
    }

    let spec = BentFunctionSpec::quadratic(3, 3, 3);
    let built = bent_code(&spec, GeneratorVariant::RowTweak).unwrap();
    let ext = extend_identity(built.code.field(), built.code.gen_rows()).unwrap();
    let rep = extendability_verdict(&built.code, built.code.gen_rows(), 4).unwrap();
    println!(
        "bent tr(w·x²) over GF(27), RowTweak: C' = [{}, {}, {}] → {:?}",
        ext.n(),
        ext.k(),
        ext.min_distance().unwrap(),
        rep.verdict
    );
}
