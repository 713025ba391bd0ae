//! Run the character-sum oracles: each closed form is checked against direct
//! enumeration over the ambient field, exhaustively where feasible and with a
//! seeded sample otherwise.
//!
//! Run: cargo run --release --example charsum_oracles

use codeforge::charsums::{
    sweep_affine_ppoly, sweep_norm_form, sweep_ns_bent, sweep_ns_norm, sweep_ns_quadratic, sweep_nst,
    sweep_weil, DEFAULT_SEED,
};
use codeforge::constructions::BentFunctionSpec;

fn main() {
    let sweeps = vec![
        sweep_norm_form(3, 1, 2),
        sweep_weil(3, 2),
        sweep_affine_ppoly(2, 3, None),
        sweep_affine_ppoly(3, 2, Some((200, DEFAULT_SEED))),
        sweep_ns_norm(3, 1, 2),
        sweep_nst(2, 1, 3, None),
        sweep_nst(2, 2, 2, Some((500, DEFAULT_SEED))),
        sweep_ns_quadratic(5, 1, 3),
        sweep_ns_bent(&BentFunctionSpec::quadratic(3, 2, 3)),
    ];
    for rep in sweeps {
        println!(
            "{} {:10} ({:12}) — {} cases, {} mismatches",
            if rep.pass() { "PASS" } else { "FAIL" },
            rep.scenario,
            rep.params,
            rep.cases_checked,
            rep.mismatches.len()
        );
    }
}
