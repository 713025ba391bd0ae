//! Acceptance matrix: every closed form, example, design, locality, bound and
//! oracle claim the crate commits to, with frozen expected values and zero
//! tolerance. Each criterion prints one PASS line (visible with --nocapture).

use codeforge::analysis::{
    cadambe_mazumdar_verdict, dual_locality_via_design, singleton_like_verdict,
    ExtendabilityVerdict, LrcParams, OptimalityVerdict,
};
use codeforge::charsums::{
    sweep_affine_ppoly, sweep_norm_form, sweep_ns_bent, sweep_ns_norm, sweep_ns_quadratic, sweep_nst,
    sweep_weil, DEFAULT_SEED,
};
use codeforge::codes::{design_check, pless_dual_counts, DualDistance, Locality};
use codeforge::constructions::{
    augmented_code, bent_code, predicted_profile, walsh_spectrum, BentFunction, BentFunctionSpec,
    CodeFamilySpec, DistancePrediction, GeneratorVariant, MonomialFamilySpec,
};
use codeforge::gf::make_field;
use codeforge::suite::{example_quadruple, kasami_plus_square, shipped_bent_instances, ParameterQuadruple};
use num_bigint::BigInt;
use std::collections::BTreeMap;

fn norm_trace(q: u64, r: usize) -> codeforge::constructions::AugmentedCode {
    let (p, e) = codeforge::report::factor_prime_power(q).unwrap();
    let spec = MonomialFamilySpec::norm_trace(p, e, r).unwrap();
    augmented_code(&spec, GeneratorVariant::Canonical).unwrap()
}

fn quadratic(q: u64, m: usize) -> codeforge::constructions::AugmentedCode {
    let spec = MonomialFamilySpec::quadratic(q, 1, m).unwrap();
    augmented_code(&spec, GeneratorVariant::Canonical).unwrap()
}

#[test]
fn criterion_01_table2_reproduction() {
    for (q, r) in [(2u64, 3usize), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)] {
        let built = norm_trace(q, r);
        let (p, e) = codeforge::report::factor_prime_power(q).unwrap();
        let prof = predicted_profile(&CodeFamilySpec::NormTrace { p, e, r }, None).unwrap();
        let wd = built.code.weight_distribution().unwrap();
        assert_eq!(
            wd.counts, prof.weight_table,
            "enumerated distribution vs closed form at (q,r)=({q},{r})"
        );
    }
    // frozen spot values
    let wd = norm_trace(3, 2).code.weight_distribution().unwrap().clone();
    assert_eq!(
        wd.counts,
        BTreeMap::from([(0, 1), (12, 100), (15, 120), (18, 20), (21, 2)])
    );
    let wd = norm_trace(2, 3).code.weight_distribution().unwrap().clone();
    assert_eq!(wd.counts, BTreeMap::from([(0, 1), (12, 63), (16, 63), (28, 1)]));
    println!("[criterion 1] PASS — six norm-trace weight distributions equal the closed forms exactly");
}

#[test]
fn criterion_02_table3_reproduction() {
    for (q, m) in [(3u64, 3usize), (3, 5), (5, 3), (7, 3)] {
        let built = quadratic(q, m);
        let prof = predicted_profile(&CodeFamilySpec::Quadratic { p: q, e: 1, m }, None).unwrap();
        let wd = built.code.weight_distribution().unwrap();
        assert_eq!(wd.counts, prof.weight_table, "(q,m)=({q},{m})");
        assert_eq!(
            built.code.dual_min_distance(4),
            DualDistance::Exact(3),
            "dual distance at (q,m)=({q},{m})"
        );
    }
    let built = quadratic(3, 3);
    let wd = built.code.weight_distribution().unwrap();
    assert_eq!((built.code.n(), built.code.k()), (9, 4));
    assert_eq!(built.code.min_distance().unwrap(), 4);
    assert_eq!(
        wd.counts,
        BTreeMap::from([(0, 1), (4, 12), (5, 12), (6, 24), (7, 24), (8, 6), (9, 2)])
    );
    println!("[criterion 2] PASS — four quadratic-family weight distributions and dual distances match");
}

#[test]
fn criterion_03_tables45_reproduction() {
    let w = |p: u64, e: usize| make_field(p, e).unwrap().generator().enc();
    let instances = [
        (3u64, 2usize, w(3, 2)),
        (3, 3, w(3, 3)),
        (3, 4, 1),
        (5, 2, 1),
        (5, 3, 1),
        (7, 2, 1),
    ];
    for (p, e, c) in instances {
        let spec = BentFunctionSpec::quadratic(p, e, c);
        let rep = walsh_spectrum(&spec).unwrap();
        let (eps, _) = rep.require_weakly_regular().unwrap();
        let prof = predicted_profile(&CodeFamilySpec::Bent(spec.clone()), Some(eps)).unwrap();
        let built = bent_code(&spec, GeneratorVariant::Canonical).unwrap();
        let wd = built.code.weight_distribution().unwrap();
        assert_eq!(wd.counts, prof.weight_table, "(p,e)=({p},{e}), ε={eps}");
    }
    // frozen spot values
    let spec = BentFunctionSpec::quadratic(3, 4, 1);
    let built = bent_code(&spec, GeneratorVariant::Canonical).unwrap();
    assert_eq!((built.code.n(), built.code.k(), built.code.min_distance().unwrap()), (81, 6, 51));
    let spec = BentFunctionSpec::quadratic(3, 3, w(3, 3));
    let built = bent_code(&spec, GeneratorVariant::Canonical).unwrap();
    assert_eq!((built.code.n(), built.code.k(), built.code.min_distance().unwrap()), (27, 5, 15));
    // p = 3, e = 2 with ε = +1: enumerator 1 + 36z⁵ + 24z⁶ + 18z⁸ + 2z⁹
    let spec = BentFunctionSpec::quadratic(3, 2, w(3, 2));
    assert_eq!(walsh_spectrum(&spec).unwrap().epsilon, Some(1));
    let built = bent_code(&spec, GeneratorVariant::Canonical).unwrap();
    let wd = built.code.weight_distribution().unwrap();
    assert_eq!(
        wd.counts,
        BTreeMap::from([(0, 1), (5, 36), (6, 24), (8, 18), (9, 2)])
    );
    println!("[criterion 3] PASS — six bent-family weight distributions match with engine-extracted ε");
}

#[test]
fn criterion_04_example_quadruples() {
    // sixteen parameter triples pinned exactly across four constructions
    let pinned: [(&str, CodeFamilySpec, ParameterQuadruple); 4] = [
        (
            "norm-trace q=3 r=2",
            CodeFamilySpec::NormTrace { p: 3, e: 1, r: 2 },
            [(21, 5, 12), (26, 5, 13), (21, 16, 3), (26, 21, 3)],
        ),
        (
            "norm-trace q=3 r=3",
            CodeFamilySpec::NormTrace { p: 3, e: 1, r: 3 },
            [(225, 7, 144), (232, 7, 145), (225, 218, 3), (232, 225, 3)],
        ),
        (
            "bent p=3 e=4",
            CodeFamilySpec::Bent(BentFunctionSpec::quadratic(3, 4, 1)),
            [(81, 6, 51), (87, 6, 52), (81, 75, 3), (87, 81, 3)],
        ),
        (
            "bent p=3 e=3",
            CodeFamilySpec::Bent(BentFunctionSpec::quadratic(3, 3, 3)),
            [(27, 5, 15), (32, 5, 17), (27, 22, 3), (32, 27, 3)],
        ),
    ];
    for (id, fam, want) in pinned {
        let (quad, verdict) = example_quadruple(&fam).unwrap();
        assert_eq!(quad, want, "{id}");
        assert_eq!(verdict, ExtendabilityVerdict::OptimallyExtendable, "{id}");
    }
    // the quadratic q=3, m=5 quadruple reproduces in full
    let (quad, verdict) = example_quadruple(&CodeFamilySpec::Quadratic { p: 3, e: 1, m: 5 }).unwrap();
    assert_eq!(quad, [(81, 6, 48), (87, 6, 49), (81, 75, 3), (87, 81, 3)]);
    assert_eq!(verdict, ExtendabilityVerdict::OptimallyExtendable);
    // quadratic q=5, m=3: C, C⊥, C′⊥ reproduce; d(C′) depends on the session's
    // primitive element (the construction guarantees d(C′) ≥ d + 1 = 17; this
    // representation gives 18)
    let (quad, verdict) = example_quadruple(&CodeFamilySpec::Quadratic { p: 5, e: 1, m: 3 }).unwrap();
    assert_eq!(quad[0], (25, 4, 16));
    assert_eq!(quad[2], (25, 21, 3));
    assert_eq!(quad[3], (29, 25, 3));
    assert_eq!((quad[1].0, quad[1].1), (29, 4));
    assert!(quad[1].2 >= 17, "extension must gain at least one distance unit");
    assert_eq!(verdict, ExtendabilityVerdict::OptimallyExtendable);
    println!("[criterion 4] PASS — sixteen pinned triples, both quadratic-family quadruples, and all six verdicts optimally extendable");
}

#[test]
fn criterion_05_self_orthogonality() {
    for (q, r) in [(2u64, 3usize), (3, 2), (4, 2), (2, 4)] {
        assert!(
            norm_trace(q, r).code.is_self_orthogonal(),
            "norm-trace (q,r)=({q},{r})"
        );
    }
    assert!(quadratic(3, 5).code.is_self_orthogonal(), "quadratic q=3, m=5");
    for (p, e, c) in [(3u64, 3usize, 3u64), (3, 4, 1), (5, 3, 1)] {
        let built = bent_code(&BentFunctionSpec::quadratic(p, e, c), GeneratorVariant::Canonical).unwrap();
        assert!(built.code.is_self_orthogonal(), "bent (p,e)=({p},{e})");
    }
    // p-divisible + all-ones ⇒ self-orthogonal on every odd-characteristic instance
    let odd_instances: Vec<codeforge::codes::LinearCode> = vec![
        norm_trace(3, 2).code,
        norm_trace(3, 3).code,
        norm_trace(5, 2).code,
        quadratic(3, 3).code,
        quadratic(3, 5).code,
        quadratic(5, 3).code,
        quadratic(7, 3).code,
        bent_code(&BentFunctionSpec::quadratic(3, 3, 3), GeneratorVariant::Canonical).unwrap().code,
        bent_code(&BentFunctionSpec::quadratic(3, 4, 1), GeneratorVariant::Canonical).unwrap().code,
        bent_code(&BentFunctionSpec::quadratic(5, 3, 1), GeneratorVariant::Canonical).unwrap().code,
    ];
    for code in &odd_instances {
        let p = code.field().p();
        assert_ne!(p, 2);
        let p_divisible = code.divisor().unwrap() % p == 0;
        if p_divisible && code.contains_all_ones() {
            assert!(
                code.is_self_orthogonal(),
                "p-divisible code with 1 ∈ C must be self-orthogonal"
            );
        }
    }
    println!("[criterion 5] PASS — G·Gᵀ = 0 on all listed instances and the divisibility implication holds");
}

#[test]
fn criterion_06_designs() {
    // binary norm-trace, r = 3: 2-(28,12,11) and dual 2-(28,4,5)
    let built = norm_trace(2, 3);
    let blocks = built.code.supports_of_weight(12).unwrap();
    let v = design_check(28, 2, 12, &blocks);
    assert!(v.is_design && v.lambda == Some(11), "{v:?}");
    let dual_blocks = built.code.dual_support_sets(4);
    let v = design_check(28, 2, 4, &dual_blocks);
    assert!(v.is_design && v.lambda == Some(5), "{v:?}");

    // bent p = 3, ε·η₀(−1) = −1: 2-(9, 5, (p−2)(p²−p−1)) = 2-(9,5,5),
    // complementary 2-(9,4,3), dual 2-(9,4,(p²−3)(p−2)/2) = 2-(9,4,3)
    let spec = BentFunctionSpec::quadratic(3, 2, 3);
    let built = bent_code(&spec, GeneratorVariant::Canonical).unwrap();
    let d = built.code.min_distance().unwrap();
    assert_eq!(d, 5);
    let blocks = built.code.supports_of_weight(5).unwrap();
    let v = design_check(9, 2, 5, &blocks);
    assert!(v.is_design && v.lambda == Some(5), "{v:?}");
    let comp: Vec<Vec<u32>> = blocks
        .iter()
        .map(|b| (0..9u32).filter(|i| !b.contains(i)).collect())
        .collect();
    let v = design_check(9, 2, 4, &comp);
    assert!(v.is_design && v.lambda == Some(3), "complement {v:?}");
    let v = design_check(9, 2, 4, &built.code.dual_support_sets(4));
    assert!(v.is_design && v.lambda == Some(3), "dual {v:?}");

    // six 1-designs verified by direct counting
    let one_designs: [(BentFunctionSpec, usize, u64); 6] = [
        (BentFunctionSpec::quadratic(3, 3, 1), 15, 15),
        (BentFunctionSpec::quadratic(3, 5, 3), 153, 153),
        (BentFunctionSpec::quadratic(5, 2, 5), 16, 16),
        (BentFunctionSpec::quadratic(5, 3, 1), 95, 190),
        (BentFunctionSpec::quadratic(7, 2, 1), 36, 36),
        (kasami_plus_square(3, 4, 1), 51, 102),
    ];
    for (spec, kappa, lambda) in one_designs {
        let built = bent_code(&spec, GeneratorVariant::Canonical).unwrap();
        assert_eq!(built.code.min_distance().unwrap(), kappa);
        let blocks = built.code.supports_of_weight(kappa).unwrap();
        let v = design_check(built.code.n(), 1, kappa, &blocks);
        assert!(
            v.is_design && v.lambda == Some(lambda),
            "1-({},{kappa},{lambda}) failed: {v:?}",
            built.code.n()
        );
    }
    println!("[criterion 6] PASS — 2-(28,12,11), 2-(28,4,5), the 2-(9,5,5) family and six 1-designs verified by direct counting");
}

#[test]
fn criterion_07_locality() {
    for q in [3u64, 4, 5] {
        assert_eq!(
            norm_trace(q, 2).code.locality(3),
            Locality::Exact(2),
            "locality 2 at q = {q}"
        );
    }
    let built = norm_trace(2, 3);
    assert_eq!(built.code.locality(3), Locality::Exact(3));
    assert_eq!(dual_locality_via_design(&built.code), Some(11));
    // bent p = 3, ε = +1 instance: locality 3, dual locality p²−p−2 = 4
    let built = bent_code(&BentFunctionSpec::quadratic(3, 2, 3), GeneratorVariant::Canonical).unwrap();
    assert_eq!(built.code.locality(3), Locality::Exact(3));
    assert_eq!(dual_locality_via_design(&built.code), Some(4));
    assert_eq!(built.code.dual_code().locality(4), Locality::Exact(4));
    println!("[criterion 7] PASS — locality 2 (q ∈ {{3,4,5}}), 3 with dual 11 (binary r=3), 3 with dual 4 (bent p=3)");
}

#[test]
fn criterion_08_lrc_bound_verdicts() {
    let params = LrcParams::new(9, 4, 4, 3, 2);
    assert_eq!(
        singleton_like_verdict(params).verdict,
        OptimalityVerdict::AlmostOptimal
    );
    assert_eq!(
        cadambe_mazumdar_verdict(params, None).unwrap().verdict,
        OptimalityVerdict::Optimal
    );
    let cm = cadambe_mazumdar_verdict(LrcParams::new(28, 21, 4, 2, 11), None).unwrap();
    assert!(matches!(
        cm.verdict,
        OptimalityVerdict::Optimal | OptimalityVerdict::AlmostOptimal
    ));
    let params = LrcParams::new(9, 5, 4, 3, 4);
    assert_eq!(
        singleton_like_verdict(params).verdict,
        OptimalityVerdict::Optimal
    );
    assert_eq!(
        cadambe_mazumdar_verdict(params, None).unwrap().verdict,
        OptimalityVerdict::Optimal
    );
    println!("[criterion 8] PASS — (9,4,4,3;2) k-optimal/almost d-optimal; (28,21,4,2;11) within one of the CM bound; (9,5,4,3;4) d- and k-optimal");
}

#[test]
fn criterion_09_character_sum_oracles() {
    let sweeps = [
        sweep_norm_form(2, 1, 2),
        sweep_norm_form(3, 1, 2),
        sweep_weil(3, 1),
        sweep_weil(3, 2),
        sweep_affine_ppoly(2, 2, None),
        sweep_affine_ppoly(2, 3, None),
        sweep_affine_ppoly(3, 2, Some((200, DEFAULT_SEED))),
        sweep_ns_norm(3, 1, 2),
        sweep_nst(2, 1, 3, None),
        sweep_nst(2, 2, 2, Some((500, DEFAULT_SEED))),
        sweep_ns_quadratic(3, 1, 3),
        sweep_ns_quadratic(5, 1, 3),
        sweep_ns_bent(&BentFunctionSpec::quadratic(3, 2, 3)),
        sweep_ns_bent(&BentFunctionSpec::quadratic(3, 3, 3)),
    ];
    let mut total = 0;
    for rep in &sweeps {
        assert!(
            rep.pass(),
            "{} ({}): {:?}",
            rep.scenario,
            rep.params,
            &rep.mismatches[..rep.mismatches.len().min(3)]
        );
        total += rep.cases_checked;
    }
    println!("[criterion 9] PASS — {total} brute-force vs closed-form cases across seven identity families, zero mismatches");
}

#[test]
fn criterion_10_pless_cross_checks() {
    // q = 3, r = 2: A₁⊥ = A₂⊥ = 0 and A₃⊥ = 20, three independent routes
    let built = norm_trace(3, 2);
    let wd = built.code.weight_distribution().unwrap();
    let duals = pless_dual_counts(wd, 3).unwrap();
    assert_eq!(duals, vec![BigInt::from(0), BigInt::from(0), BigInt::from(20)]);
    assert_eq!(built.code.dual_word_count(3), 20);
    // closed form q^r(q^r+1)(q−1)(q−2)(q^r−q²+q)(q^r−q)/(6q³) at q=3, r=2
    assert_eq!((9 * 10 * 2) * 3 * 6 / (6 * 27), 20);

    // q = 2, r = 3: A₃⊥ = 0 and A₄⊥ = 315 (the closed form
    // 2^r(2^r−1)(2^r−2)(2^r−4)(2^r+2)(2^r+1)/384 evaluated at r = 3)
    let built = norm_trace(2, 3);
    let wd = built.code.weight_distribution().unwrap();
    let duals = pless_dual_counts(wd, 4).unwrap();
    assert_eq!(
        duals,
        vec![BigInt::from(0), BigInt::from(0), BigInt::from(0), BigInt::from(315)]
    );
    assert_eq!(built.code.dual_word_count(4), 315);
    assert_eq!(8 * 7 * 6 * 4 * 10 * 9 / 384, 315);
    println!("[criterion 10] PASS — power moments, closed forms and dependent-column counts agree (A₃⊥ = 20; A₄⊥ = 315)");
}

#[test]
fn criterion_11_walsh_engine() {
    let mut checked = 0;
    for (label, spec) in shipped_bent_instances() {
        let rep = walsh_spectrum(&spec).unwrap();
        assert!(rep.is_bent, "{label}: |W_f(β)|² = p^e must hold exactly");
        let pe = BigInt::from(spec.p).pow(spec.e as u32);
        for w in &rep.spectrum {
            assert_eq!(w.norm_conj().as_integer(), Some(pe.clone()), "{label}");
        }
        let (_, dual) = rep.require_weakly_regular().unwrap();
        assert!(rep.rf_member, "{label}");
        assert_eq!(dual[0], 0, "{label}: f*(0) = 0");
        let h = rep.rf_exponent.unwrap();
        let l = rep.dual_rf_exponent.unwrap();
        assert!(h.is_multiple_of(2) && num_integer::gcd(h - 1, spec.p - 1) == 1);
        assert!(l.is_multiple_of(2) && num_integer::gcd(l - 1, spec.p - 1) == 1);
        // (f*)*(x) = f(−x) pointwise
        let field = make_field(spec.p, spec.e).unwrap();
        let dual_spec = BentFunctionSpec {
            p: spec.p,
            e: spec.e,
            f: BentFunction::Table(dual.to_vec()),
        };
        let rep2 = walsh_spectrum(&dual_spec).unwrap();
        let (_, dual2) = rep2.require_weakly_regular().unwrap();
        let ftab = spec.table(&field);
        for x in field.elements() {
            assert_eq!(
                dual2[x.enc() as usize],
                ftab[field.neg(x).enc() as usize],
                "{label}: (f*)* = f(−x)"
            );
        }
        checked += 1;
    }
    // extracted signs match the worked examples
    assert_eq!(
        walsh_spectrum(&BentFunctionSpec::quadratic(3, 4, 1)).unwrap().epsilon,
        Some(-1)
    );
    assert_eq!(
        walsh_spectrum(&BentFunctionSpec::quadratic(3, 3, 3)).unwrap().epsilon,
        Some(-1)
    );
    println!("[criterion 11] PASS — {checked} bent instances: exact |W|², global ε, RF structure and dual round-trip");
}

#[test]
fn deterministic_representation_regression() {
    // the values that depend on the pinned field representation, frozen so a
    // representation change cannot slip through silently
    let f81 = make_field(3, 4).unwrap();
    assert_eq!(f81.modulus(), &[2, 0, 0, 2, 1]);
    assert_eq!(f81.generator().enc(), 3);
    // row-tweak variant extension of the quadratic q=5, m=3 instance
    let spec = MonomialFamilySpec::quadratic(5, 1, 3).unwrap();
    let tweaked = augmented_code(&spec, GeneratorVariant::RowTweak).unwrap();
    let ext = codeforge::codes::extend_identity(tweaked.code.field(), tweaked.code.gen_rows()).unwrap();
    assert_eq!(ext.min_distance().unwrap(), 18);
    // and the profile only promises d + 1 as a floor
    let prof = predicted_profile(&CodeFamilySpec::Quadratic { p: 5, e: 1, m: 3 }, None).unwrap();
    assert_eq!(prof.extended_d, DistancePrediction::AtLeast(17));
}

#[test]
fn full_suite_is_green() {
    let result = codeforge::suite::run_suite(None, DEFAULT_SEED);
    for item in result.items.iter().filter(|i| !i.pass) {
        eprintln!("FAIL {}: {}", item.id, item.detail);
    }
    assert!(result.pass, "the verification matrix must be fully green");
    println!(
        "[suite] PASS — {} verification items green",
        result.items.len()
    );
}
