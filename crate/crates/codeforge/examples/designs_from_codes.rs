//! Extract combinatorial designs from codeword supports by direct counting:
//! the binary norm-trace code holds 2-designs, and the bent-function codes
//! hold 1-designs on their minimum-weight supports.
//!
//! Run: cargo run --release --example designs_from_codes

use codeforge::codes::design_check;
use codeforge::constructions::{
    augmented_code, bent_code, BentFunctionSpec, GeneratorVariant, MonomialFamilySpec,
};

fn main() {
    // binary norm-trace at r = 3: the [28, 7, 12] code
    let spec = MonomialFamilySpec::norm_trace(2, 1, 3).unwrap();
    let built = augmented_code(&spec, GeneratorVariant::Canonical).unwrap();
    let code = &built.code;
    println!(
        "[{}, {}, {}] over GF(2):",
        code.n(),
        code.k(),
        code.min_distance().unwrap()
    );

    let blocks = code.supports_of_weight(12).unwrap();
    let verdict = design_check(28, 2, 12, &blocks);
    println!(
        "  minimum-weight supports: {} blocks, 2-(28, 12, {:?}) design: {}",
        blocks.len(),
        verdict.lambda,
        verdict.is_design
    );

    let dual_blocks = code.dual_support_sets(4);
    let verdict = design_check(28, 2, 4, &dual_blocks);
    println!(
        "  dual weight-4 supports: {} blocks, 2-(28, 4, {:?}) design: {}",
        dual_blocks.len(),
        verdict.lambda,
        verdict.is_design
    );

    // a bent instance holding a 1-design on its minimum-weight supports
    let spec = BentFunctionSpec::quadratic(3, 3, 1);
    let built = bent_code(&spec, GeneratorVariant::Canonical).unwrap();
    let d = built.code.min_distance().unwrap();
    let blocks = built.code.supports_of_weight(d).unwrap();
    let verdict = design_check(built.code.n(), 1, d, &blocks);
    println!(
        "bent tr(x²) over GF(27): 1-({}, {}, {:?}) design on {} blocks: {}",
        built.code.n(),
        d,
        verdict.lambda,
        blocks.len(),
        verdict.is_design
    );
}
