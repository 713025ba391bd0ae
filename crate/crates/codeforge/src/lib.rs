//! codeforge: a workbench for two families of linear codes over finite fields
//! — augmented defining-set codes built from monomials, and codes built from
//! weakly regular bent functions — with exact verification of their weight
//! distributions, dual distances, self-orthogonality, designs, locality and
//! bound optimality.
//!
//! Everything is computed exactly: field arithmetic uses explicit tables over
//! a pinned deterministic representation (Conway moduli, generator x̄), Walsh
//! and Gauss sums live in Z[ζ_p] with big-integer coordinates, weight
//! distributions come from full codeword enumeration, and dual distances from
//! dependent-column searches cross-checked by the Pless power moments. No
//! floating point anywhere.
//!
//! Module map:
//!
//! - [`gf`] — prime fields, extension fields and towers GF(p) ⊆ GF(q) ⊆ GF(q^m)
//! - [`cyclotomic`] — exact arithmetic in Z[ζ_p]; quadratic Gauss sums
//! - [`codes`] — generic linear-code analytics (weights, duals, designs, locality)
//! - [`constructions`] — the two code families, their generator-matrix
//!   variants, the Walsh engine and closed-form predicted profiles
//! - [`charsums`] — brute-force oracles for the exponential-sum and
//!   solution-count identities
//! - [`analysis`] — sphere-packing/Plotkin/Singleton-like/Cadambe–Mazumdar
//!   bounds and extendability verdicts
//! - [`report`] — analysis reports, flat configs, the on-disk cache, exports
//! - [`suite`] — the self-contained verification matrix behind `codeforge suite`
//!
//! Start with the runnable examples (`cargo run --release --example <name>`):
//! `norm_trace_code`, `quadratic_code`, `bent_walsh`, `designs_from_codes`,
//! `locality_and_bounds`, `extendability`, `charsum_oracles`,
//! `exact_cyclotomic`. The `codeforge` binary exposes the same machinery as
//! `analyze`, `suite`, `export`, `charsum-verify` and `bounds` subcommands.

pub mod analysis;
pub mod charsums;
pub mod codes;
pub mod constructions;
pub mod cyclotomic;
pub mod gf;
pub mod report;
pub mod suite;

pub use codes::{set_max_threads, LinearCode};
pub use constructions::{BentFunctionSpec, CodeFamilySpec, GeneratorVariant, MonomialFamilySpec};
pub use gf::{make_field, Felt, FieldCtx, TowerCtx};
