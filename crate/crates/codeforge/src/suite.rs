//! The verification matrix behind `codeforge suite`: every construction,
//! closed form, design, locality, bound and character-sum claim the crate
//! reproduces, expressed as one pass/fail item each.

use crate::analysis::{
    cadambe_mazumdar_verdict, dual_locality_via_design, extendability_verdict,
    singleton_like_verdict, ExtendabilityVerdict, LrcParams, OptimalityVerdict,
};
use crate::charsums::{
    sweep_affine_ppoly, sweep_norm_form, sweep_ns_bent, sweep_ns_norm, sweep_ns_quadratic, sweep_nst,
    sweep_weil, SweepReport,
};
use crate::codes::{design_check, pless_dual_counts, DualDistance, LinearCode, Locality};
use crate::constructions::{
    augmented_code, bent_code, predicted_profile, walsh_spectrum, BentFunction, BentFunctionSpec,
    CodeFamilySpec, GeneratorVariant, MonomialFamilySpec,
};
use crate::gf::make_field;
use num_bigint::BigInt;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteItem {
    pub id: String,
    pub tags: Vec<&'static str>,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub items: Vec<SuiteItem>,
    pub pass: bool,
}

struct Runner {
    filter: Option<String>,
    seed: u64,
    items: Vec<SuiteItem>,
}

impl Runner {
    fn wants(&self, id: &str, tags: &[&'static str]) -> bool {
        match &self.filter {
            None => true,
            Some(f) => id.contains(f.as_str()) || tags.iter().any(|t| t.contains(f.as_str())),
        }
    }

    fn check<F: FnOnce() -> Result<String, String>>(
        &mut self,
        id: &str,
        tags: &[&'static str],
        run: F,
    ) {
        if !self.wants(id, tags) {
            return;
        }
        let (pass, detail) = match run() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.items.push(SuiteItem {
            id: id.to_string(),
            tags: tags.to_vec(),
            pass,
            detail,
        });
    }
}

fn build_monomial(
    family: CodeFamilySpec,
    variant: GeneratorVariant,
) -> Result<crate::constructions::AugmentedCode, String> {
    let spec = family
        .monomial_spec()
        .map_err(|e| e.to_string())?
        .ok_or("not a monomial family")?;
    augmented_code(&spec, variant).map_err(|e| e.to_string())
}

fn params_of(code: &LinearCode) -> Result<(usize, usize, usize), String> {
    Ok((
        code.n(),
        code.k(),
        code.min_distance().map_err(|e| e.to_string())?,
    ))
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

/// Power moments must give A_s⊥ = 0 below the dual distance and a positive
/// count at it.
fn pless_zero_pattern(
    wd: &crate::codes::WeightDistribution,
    dual_d: usize,
) -> Result<(), String> {
    use num_traits::Zero;
    let upto = dual_d.min(5);
    let counts = pless_dual_counts(wd, upto).map_err(|e| e.to_string())?;
    for (i, a) in counts.iter().enumerate() {
        let s = i + 1;
        if s < dual_d && !a.is_zero() {
            return Err(format!("A_{s}⊥ = {a}, expected 0 below d⊥ = {dual_d}"));
        }
        if s == dual_d && a.is_zero() {
            return Err(format!("A_{s}⊥ = 0 at the dual distance"));
        }
    }
    Ok(())
}

fn sweep_item(rep: SweepReport) -> Result<String, String> {
    if rep.pass() {
        Ok(format!("{} cases, 0 mismatches", rep.cases_checked))
    } else {
        Err(format!(
            "{} mismatches out of {}: {:?}",
            rep.mismatches.len(),
            rep.cases_checked,
            &rep.mismatches[..rep.mismatches.len().min(3)]
        ))
    }
}

/// f(x) = tr(x^{p^{3k}+p^{2k}−p^k+1} + x²), tabulated.
pub fn kasami_plus_square(p: u64, e: usize, k: u32) -> BentFunctionSpec {
    let field = make_field(p, e).unwrap();
    let expo = p.pow(3 * k) + p.pow(2 * k) - p.pow(k) + 1;
    let table = field
        .elements()
        .map(|x| field.trace_to_prime(field.add(field.pow(x, expo), field.mul(x, x))))
        .collect();
    BentFunctionSpec {
        p,
        e,
        f: BentFunction::Table(table),
    }
}

/// The bent instances exercised throughout the suite: the five quadratics of
/// the closed-form table plus the tabulated Kasami-plus-square function.
pub fn shipped_bent_instances() -> Vec<(String, BentFunctionSpec)> {
    let w = |p: u64, e: usize| make_field(p, e).unwrap().generator().enc();
    vec![
        ("p3-e2-tr-wx2".into(), BentFunctionSpec::quadratic(3, 2, w(3, 2))),
        ("p3-e3-tr-wx2".into(), BentFunctionSpec::quadratic(3, 3, w(3, 3))),
        ("p3-e4-tr-x2".into(), BentFunctionSpec::quadratic(3, 4, 1)),
        ("p3-e5-tr-wx2".into(), BentFunctionSpec::quadratic(3, 5, w(3, 5))),
        ("p5-e2-tr-x2".into(), BentFunctionSpec::quadratic(5, 2, 1)),
        ("p5-e2-tr-wx2".into(), BentFunctionSpec::quadratic(5, 2, w(5, 2))),
        ("p5-e3-tr-x2".into(), BentFunctionSpec::quadratic(5, 3, 1)),
        ("p7-e2-tr-x2".into(), BentFunctionSpec::quadratic(7, 2, 1)),
        ("p3-e4-kasami-x2".into(), kasami_plus_square(3, 4, 1)),
    ]
}

/// Run the verification matrix, optionally filtered by id/tag substring.
pub fn run_suite(filter: Option<&str>, seed: u64) -> SuiteResult {
    let mut r = Runner {
        filter: filter.map(String::from),
        seed,
        items: Vec::new(),
    };
    weight_tables(&mut r);
    example_quadruples(&mut r);
    self_orthogonality(&mut r);
    designs(&mut r);
    locality(&mut r);
    bounds(&mut r);
    charsums(&mut r);
    pless_cross_checks(&mut r);
    walsh_engine(&mut r);
    let pass = r.items.iter().all(|i| i.pass);
    SuiteResult {
        items: r.items,
        pass,
    }
}

fn weight_tables(r: &mut Runner) {
    for (q, rr) in [(2u64, 3usize), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)] {
        let id = format!("table2-q{q}-r{rr}");
        r.check(&id, &["table2", "weights"], || {
            let (p, e) = crate::report::factor_prime_power(q).map_err(|e| e.to_string())?;
            let fam = CodeFamilySpec::NormTrace { p, e, r: rr };
            let built = build_monomial(fam.clone(), GeneratorVariant::Canonical)?;
            let prof = predicted_profile(&fam, None).map_err(|e| e.to_string())?;
            let wd = built.code.weight_distribution().map_err(|e| e.to_string())?;
            expect_eq("weight table", &wd.counts, &prof.weight_table)?;
            if let Some(dd) = prof.dual_d {
                expect_eq("dual distance", built.code.dual_min_distance(4), DualDistance::Exact(dd))?;
                pless_zero_pattern(wd, dd)?;
            }
            Ok(format!(
                "[{},{},{}] weights match the closed form",
                wd.n,
                wd.k,
                prof.d
            ))
        });
    }
    for (q, m) in [(3u64, 3usize), (3, 5), (5, 3), (7, 3)] {
        let id = format!("table3-q{q}-m{m}");
        r.check(&id, &["table3", "weights"], || {
            let fam = CodeFamilySpec::Quadratic { p: q, e: 1, m };
            let built = build_monomial(fam.clone(), GeneratorVariant::Canonical)?;
            let prof = predicted_profile(&fam, None).map_err(|e| e.to_string())?;
            let wd = built.code.weight_distribution().map_err(|e| e.to_string())?;
            expect_eq("weight table", &wd.counts, &prof.weight_table)?;
            expect_eq("dual distance", built.code.dual_min_distance(4), DualDistance::Exact(3))?;
            pless_zero_pattern(wd, 3)?;
            Ok(format!("[{},{},{}] weights match the closed form", wd.n, wd.k, prof.d))
        });
    }
    for (label, spec) in [
        ("p3-e2-tr-wx2", BentFunctionSpec::quadratic(3, 2, 3)),
        ("p3-e3-tr-wx2", BentFunctionSpec::quadratic(3, 3, 3)),
        ("p3-e4-tr-x2", BentFunctionSpec::quadratic(3, 4, 1)),
        ("p5-e2-tr-x2", BentFunctionSpec::quadratic(5, 2, 1)),
        ("p5-e3-tr-x2", BentFunctionSpec::quadratic(5, 3, 1)),
        ("p7-e2-tr-x2", BentFunctionSpec::quadratic(7, 2, 1)),
    ] {
        let id = format!("tables45-{label}");
        r.check(&id, &["tables45", "weights"], || {
            let rep = walsh_spectrum(&spec).map_err(|e| e.to_string())?;
            let (eps, _) = rep.require_weakly_regular().map_err(|e| e.to_string())?;
            let fam = CodeFamilySpec::Bent(spec.clone());
            let prof = predicted_profile(&fam, Some(eps)).map_err(|e| e.to_string())?;
            let built = bent_code(&spec, GeneratorVariant::Canonical).map_err(|e| e.to_string())?;
            let wd = built.code.weight_distribution().map_err(|e| e.to_string())?;
            expect_eq("weight table", &wd.counts, &prof.weight_table)?;
            if let Some(dd) = prof.dual_d {
                expect_eq("dual distance", built.code.dual_min_distance(4), DualDistance::Exact(dd))?;
                pless_zero_pattern(wd, dd)?;
            }
            Ok(format!("[{},{},{}] with ε = {eps}", wd.n, wd.k, prof.d))
        });
    }
}

struct ExampleSpec {
    id: &'static str,
    family: CodeFamilySpec,
    /// Reference [n, k, d] of C, C', C⊥, C'⊥. Extended-code distances depend
    /// on the presenting matrix, so the quadratic q=5 entry pins the value the
    /// crate's deterministic representation produces (see README).
    quad: ParameterQuadruple,
}

fn example_specs() -> Vec<ExampleSpec> {
    vec![
        ExampleSpec {
            id: "nt-q3-r2",
            family: CodeFamilySpec::NormTrace { p: 3, e: 1, r: 2 },
            quad: [(21, 5, 12), (26, 5, 13), (21, 16, 3), (26, 21, 3)],
        },
        ExampleSpec {
            id: "nt-q3-r3",
            family: CodeFamilySpec::NormTrace { p: 3, e: 1, r: 3 },
            quad: [(225, 7, 144), (232, 7, 145), (225, 218, 3), (232, 225, 3)],
        },
        ExampleSpec {
            id: "bent-p3-e4",
            family: CodeFamilySpec::Bent(BentFunctionSpec::quadratic(3, 4, 1)),
            quad: [(81, 6, 51), (87, 6, 52), (81, 75, 3), (87, 81, 3)],
        },
        ExampleSpec {
            id: "bent-p3-e3",
            family: CodeFamilySpec::Bent(BentFunctionSpec::quadratic(3, 3, 3)),
            quad: [(27, 5, 15), (32, 5, 17), (27, 22, 3), (32, 27, 3)],
        },
        ExampleSpec {
            id: "quad-q3-m5",
            family: CodeFamilySpec::Quadratic { p: 3, e: 1, m: 5 },
            quad: [(81, 6, 48), (87, 6, 49), (81, 75, 3), (87, 81, 3)],
        },
        ExampleSpec {
            id: "quad-q5-m3",
            family: CodeFamilySpec::Quadratic { p: 5, e: 1, m: 3 },
            quad: [(25, 4, 16), (29, 4, 18), (25, 21, 3), (29, 25, 3)],
        },
    ]
}

/// The [n, k, d] triples of C, C', C⊥ and C'⊥ in that order.
pub type ParameterQuadruple = [(usize, usize, usize); 4];

/// Build C from the row-tweak variant and report the quadruple
/// ([n,k,d] of C, C', C⊥, C'⊥) plus the extendability verdict.
pub fn example_quadruple(
    family: &CodeFamilySpec,
) -> Result<(ParameterQuadruple, ExtendabilityVerdict), String> {
    let (code, d) = match family {
        CodeFamilySpec::Bent(spec) => {
            let built = bent_code(spec, GeneratorVariant::RowTweak).map_err(|e| e.to_string())?;
            let d = built.code.min_distance().map_err(|e| e.to_string())?;
            (built.code, d)
        }
        _ => {
            let built = build_monomial(family.clone(), GeneratorVariant::RowTweak)?;
            let d = built.code.min_distance().map_err(|e| e.to_string())?;
            (built.code, d)
        }
    };
    let n = code.n();
    let k = code.k();
    let dual_d = code
        .dual_min_distance(4)
        .exact()
        .ok_or("dual distance beyond search limit")?;
    let ext = crate::codes::extend_identity(code.field(), code.gen_rows())
        .map_err(|e| e.to_string())?;
    let (en, ek, ed) = params_of(&ext)?;
    let ext_dual_d = ext
        .dual_min_distance(4)
        .exact()
        .ok_or("extended dual distance beyond search limit")?;
    let verdict = extendability_verdict(&code, code.gen_rows(), 4)
        .map_err(|e| e.to_string())?
        .verdict;
    Ok((
        [
            (n, k, d),
            (en, ek, ed),
            (n, n - k, dual_d),
            (en, en - ek, ext_dual_d),
        ],
        verdict,
    ))
}

fn example_quadruples(r: &mut Runner) {
    for ex in example_specs() {
        let id = format!("examples-{}", ex.id);
        r.check(&id, &["examples", "extendability"], || {
            let (quad, verdict) = example_quadruple(&ex.family)?;
            expect_eq("quadruple", quad, ex.quad)?;
            expect_eq("verdict", verdict, ExtendabilityVerdict::OptimallyExtendable)?;
            Ok(format!("{quad:?}, optimally extendable"))
        });
    }
}

fn self_orthogonality(r: &mut Runner) {
    let mut instances: Vec<(String, CodeFamilySpec, bool)> = Vec::new();
    for (q, rr) in [(2u64, 3usize), (3, 2), (4, 2), (2, 4)] {
        let (p, e) = crate::report::factor_prime_power(q).unwrap();
        instances.push((
            format!("so-normtrace-q{q}-r{rr}"),
            CodeFamilySpec::NormTrace { p, e, r: rr },
            true,
        ));
    }
    instances.push((
        "so-quadratic-q3-m5".into(),
        CodeFamilySpec::Quadratic { p: 3, e: 1, m: 5 },
        true,
    ));
    for (label, spec) in [
        ("p3-e3", BentFunctionSpec::quadratic(3, 3, 3)),
        ("p3-e4", BentFunctionSpec::quadratic(3, 4, 1)),
        ("p5-e3", BentFunctionSpec::quadratic(5, 3, 1)),
    ] {
        instances.push((
            format!("so-bent-{label}"),
            CodeFamilySpec::Bent(spec),
            true,
        ));
    }
    for (id, fam, want) in instances {
        r.check(&id, &["selforth"], || {
            let code = match &fam {
                CodeFamilySpec::Bent(spec) => {
                    bent_code(spec, GeneratorVariant::Canonical)
                        .map_err(|e| e.to_string())?
                        .code
                }
                _ => build_monomial(fam.clone(), GeneratorVariant::Canonical)?.code,
            };
            expect_eq("G·Gᵀ = 0", code.is_self_orthogonal(), want)?;
            // odd characteristic + p-divisible + all-ones ⇒ self-orthogonal
            if code.field().p() % 2 == 1 {
                let divisible = code.divisor().map_err(|e| e.to_string())? % code.field().p() == 0;
                if divisible && code.contains_all_ones() && !code.is_self_orthogonal() {
                    return Err("p-divisible code with 1 ∈ C must be self-orthogonal".into());
                }
            }
            Ok("G·Gᵀ = 0".into())
        });
    }
}

fn designs(r: &mut Runner) {
    r.check("designs-coldesign1-r3", &["designs"], || {
        let fam = CodeFamilySpec::NormTrace { p: 2, e: 1, r: 3 };
        let built = build_monomial(fam, GeneratorVariant::Canonical)?;
        let code = &built.code;
        let blocks = code.supports_of_weight(12).map_err(|e| e.to_string())?;
        let verdict = design_check(28, 2, 12, &blocks);
        if !(verdict.is_design && verdict.lambda == Some(11)) {
            return Err(format!("minimum-weight supports: {verdict:?}"));
        }
        let dual_blocks = code.dual_support_sets(4);
        let dual_verdict = design_check(28, 2, 4, &dual_blocks);
        if !(dual_verdict.is_design && dual_verdict.lambda == Some(5)) {
            return Err(format!("dual weight-4 supports: {dual_verdict:?}"));
        }
        Ok("2-(28,12,11) and dual 2-(28,4,5) verified by direct counting".into())
    });
    r.check("designs-coldesign2-p3", &["designs"], || {
        // the ε·η₀(−1) = −1 instance at p = 3 is f = tr(w x²)
        let p: u64 = 3;
        let spec = BentFunctionSpec::quadratic(3, 2, 3);
        let built = bent_code(&spec, GeneratorVariant::Canonical).map_err(|e| e.to_string())?;
        let n = (p * p) as usize;
        let d = (p * p - p - 1) as usize;
        let lambda = (p - 2) * (p * p - p - 1);
        let blocks = built.code.supports_of_weight(d).map_err(|e| e.to_string())?;
        let verdict = design_check(n, 2, d, &blocks);
        if !(verdict.is_design && verdict.lambda == Some(lambda)) {
            return Err(format!(
                "minimum-weight supports: want λ = {lambda}, got {verdict:?}"
            ));
        }
        // complementary design: 2-(p², p+1, p)
        let comp_blocks: Vec<Vec<u32>> = blocks
            .iter()
            .map(|b| (0..n as u32).filter(|i| !b.contains(i)).collect())
            .collect();
        let comp = design_check(n, 2, (p + 1) as usize, &comp_blocks);
        if !(comp.is_design && comp.lambda == Some(p)) {
            return Err(format!("complementary design: {comp:?}"));
        }
        // dual minimum-weight: 2-(p², 4, (p²−3)(p−2)/2)
        let dual_lambda = (p * p - 3) * (p - 2) / 2;
        let dual_blocks = built.code.dual_support_sets(4);
        let dual = design_check(n, 2, 4, &dual_blocks);
        if !(dual.is_design && dual.lambda == Some(dual_lambda)) {
            return Err(format!("dual design: want λ = {dual_lambda}, got {dual:?}"));
        }
        Ok(format!(
            "2-(9,5,{lambda}), complementary 2-(9,4,{p}), dual 2-(9,4,{dual_lambda})"
        ))
    });
    let one_designs: Vec<(&str, BentFunctionSpec, usize, u64)> = vec![
        ("designs-1d-p3-e3", BentFunctionSpec::quadratic(3, 3, 1), 15, 15),
        ("designs-1d-p3-e5", BentFunctionSpec::quadratic(3, 5, 3), 153, 153),
        ("designs-1d-p5-e2", BentFunctionSpec::quadratic(5, 2, 5), 16, 16),
        ("designs-1d-p5-e3", BentFunctionSpec::quadratic(5, 3, 1), 95, 190),
        ("designs-1d-p7-e2", BentFunctionSpec::quadratic(7, 2, 1), 36, 36),
        ("designs-1d-p3-e4-kasami", kasami_plus_square(3, 4, 1), 51, 102),
    ];
    for (id, spec, kappa, lambda) in one_designs {
        r.check(id, &["designs"], || {
            let built = bent_code(&spec, GeneratorVariant::Canonical).map_err(|e| e.to_string())?;
            let d = built.code.min_distance().map_err(|e| e.to_string())?;
            expect_eq("minimum weight", d, kappa)?;
            let blocks = built.code.supports_of_weight(kappa).map_err(|e| e.to_string())?;
            let verdict = design_check(built.code.n(), 1, kappa, &blocks);
            if !(verdict.is_design && verdict.lambda == Some(lambda)) {
                return Err(format!("want 1-({},{kappa},{lambda}), got {verdict:?}", built.code.n()));
            }
            Ok(format!("1-({},{kappa},{lambda}) verified by direct counting", built.code.n()))
        });
    }
}

fn locality(r: &mut Runner) {
    for q in [3u64, 4, 5] {
        let id = format!("locality-normtrace-q{q}");
        r.check(&id, &["locality"], || {
            let (p, e) = crate::report::factor_prime_power(q).unwrap();
            let fam = CodeFamilySpec::NormTrace { p, e, r: 2 };
            let built = build_monomial(fam, GeneratorVariant::Canonical)?;
            expect_eq("locality", built.code.locality(3), Locality::Exact(2))?;
            Ok("locality 2".into())
        });
    }
    r.check("locality-binary-r3", &["locality"], || {
        let fam = CodeFamilySpec::NormTrace { p: 2, e: 1, r: 3 };
        let built = build_monomial(fam, GeneratorVariant::Canonical)?;
        expect_eq("locality", built.code.locality(3), Locality::Exact(3))?;
        // dual locality via the minimum-weight 1-design route
        let dual_loc = dual_locality_via_design(&built.code).ok_or("1-design route failed")?;
        expect_eq("dual locality", dual_loc, 11)?;
        Ok("locality 3, dual locality 11".into())
    });
    r.check("locality-bent-p3", &["locality"], || {
        let spec = BentFunctionSpec::quadratic(3, 2, 3); // ε·η₀(−1) = −1 instance
        let built = bent_code(&spec, GeneratorVariant::Canonical).map_err(|e| e.to_string())?;
        expect_eq("locality", built.code.locality(3), Locality::Exact(3))?;
        let dual_loc = dual_locality_via_design(&built.code).ok_or("1-design route failed")?;
        expect_eq("dual locality via design", dual_loc, 4)?;
        // small enough to cross-check by direct column search on the dual
        let dual = built.code.dual_code();
        expect_eq("dual locality direct", dual.locality(4), Locality::Exact(4))?;
        Ok("locality 3, dual locality 4 (design route = direct search)".into())
    });
}

fn bounds(r: &mut Runner) {
    r.check("bounds-lrc-9-4-4", &["bounds"], || {
        let params = LrcParams::new(9, 4, 4, 3, 2);
        let sl = singleton_like_verdict(params);
        expect_eq("singleton-like", sl.verdict, OptimalityVerdict::AlmostOptimal)?;
        let cm = cadambe_mazumdar_verdict(params, None).map_err(|e| e.to_string())?;
        expect_eq("cadambe-mazumdar", cm.verdict, OptimalityVerdict::Optimal)?;
        Ok(format!(
            "k-optimal (bound {} at t = {}), almost d-optimal (rhs {})",
            cm.bound, cm.t_star, sl.rhs
        ))
    });
    r.check("bounds-lrc-28-21-4", &["bounds"], || {
        let params = LrcParams::new(28, 21, 4, 2, 11);
        let cm = cadambe_mazumdar_verdict(params, None).map_err(|e| e.to_string())?;
        if !matches!(
            cm.verdict,
            OptimalityVerdict::Optimal | OptimalityVerdict::AlmostOptimal
        ) {
            return Err(format!("want k-optimal or almost, got {cm:?}"));
        }
        Ok(format!("bound {} at t = {} → {:?}", cm.bound, cm.t_star, cm.verdict))
    });
    r.check("bounds-lrc-9-5-4", &["bounds"], || {
        let params = LrcParams::new(9, 5, 4, 3, 4);
        let sl = singleton_like_verdict(params);
        expect_eq("singleton-like", sl.verdict, OptimalityVerdict::Optimal)?;
        let cm = cadambe_mazumdar_verdict(params, None).map_err(|e| e.to_string())?;
        expect_eq("cadambe-mazumdar", cm.verdict, OptimalityVerdict::Optimal)?;
        Ok(format!("d-optimal (rhs {}) and k-optimal (bound {})", sl.rhs, cm.bound))
    });
}

fn charsums(r: &mut Runner) {
    let seed = r.seed;
    r.check("charsums-normform-q2-r2", &["charsums"], || sweep_item(sweep_norm_form(2, 1, 2)));
    r.check("charsums-normform-q3-r2", &["charsums"], || sweep_item(sweep_norm_form(3, 1, 2)));
    r.check("charsums-weil-gf3", &["charsums"], || sweep_item(sweep_weil(3, 1)));
    r.check("charsums-weil-gf9", &["charsums"], || sweep_item(sweep_weil(3, 2)));
    r.check("charsums-sums-gf4", &["charsums"], || sweep_item(sweep_affine_ppoly(2, 2, None)));
    r.check("charsums-sums-gf8", &["charsums"], || sweep_item(sweep_affine_ppoly(2, 3, None)));
    r.check("charsums-sums-gf9", &["charsums"], || {
        sweep_item(sweep_affine_ppoly(3, 2, Some((200, seed))))
    });
    r.check("charsums-count-nt-q3-r2", &["charsums"], || sweep_item(sweep_ns_norm(3, 1, 2)));
    r.check("charsums-count-ntpair-q2-r3", &["charsums"], || sweep_item(sweep_nst(2, 1, 3, None)));
    r.check("charsums-count-ntpair-q4-r2", &["charsums"], || {
        sweep_item(sweep_nst(2, 2, 2, Some((500, seed))))
    });
    r.check("charsums-count-quad-q3-m3", &["charsums"], || sweep_item(sweep_ns_quadratic(3, 1, 3)));
    r.check("charsums-count-quad-q5-m3", &["charsums"], || sweep_item(sweep_ns_quadratic(5, 1, 3)));
    r.check("charsums-count-bent-p3-e2", &["charsums"], || {
        sweep_item(sweep_ns_bent(&BentFunctionSpec::quadratic(3, 2, 3)))
    });
    r.check("charsums-count-bent-p3-e3", &["charsums"], || {
        sweep_item(sweep_ns_bent(&BentFunctionSpec::quadratic(3, 3, 3)))
    });
}

fn pless_cross_checks(r: &mut Runner) {
    r.check("pless-q3-r2", &["pless"], || {
        let spec = MonomialFamilySpec::norm_trace(3, 1, 2).map_err(|e| e.to_string())?;
        let built = augmented_code(&spec, GeneratorVariant::Canonical).map_err(|e| e.to_string())?;
        let wd = built.code.weight_distribution().map_err(|e| e.to_string())?;
        let duals = pless_dual_counts(wd, 3).map_err(|e| e.to_string())?;
        // closed form A₃⊥ = q^r(q^r+1)(q−1)(q−2)(q^r−q²+q)(q^r−q)/(6q³) = 20
        let formula = |q: i128, rr: u32| {
            let qr = q.pow(rr);
            qr * (qr + 1) * (q - 1) * (q - 2) * (qr - q * q + q) * (qr - q) / (6 * q * q * q)
        };
        expect_eq(
            "pless A₁..A₃",
            duals.clone(),
            vec![BigInt::from(0), BigInt::from(0), BigInt::from(formula(3, 2))],
        )?;
        expect_eq("direct count", built.code.dual_word_count(3), 20)?;
        Ok("A₃⊥ = 20 by power moments, closed form and column search".into())
    });
    r.check("pless-q2-r3", &["pless"], || {
        let spec = MonomialFamilySpec::norm_trace(2, 1, 3).map_err(|e| e.to_string())?;
        let built = augmented_code(&spec, GeneratorVariant::Canonical).map_err(|e| e.to_string())?;
        let wd = built.code.weight_distribution().map_err(|e| e.to_string())?;
        let duals = pless_dual_counts(wd, 4).map_err(|e| e.to_string())?;
        // closed form A₄⊥ = 2^r(2^r−1)(2^r−2)(2^r−4)(2^r+2)(2^r+1)/384 = 315
        let formula = |rr: u32| {
            let t = 2i128.pow(rr);
            t * (t - 1) * (t - 2) * (t - 4) * (t + 2) * (t + 1) / 384
        };
        let want = vec![
            BigInt::from(0),
            BigInt::from(0),
            BigInt::from(0),
            BigInt::from(formula(3)),
        ];
        expect_eq("pless A₁..A₄", duals.clone(), want)?;
        expect_eq("direct count", built.code.dual_word_count(4), 315)?;
        Ok("A₃⊥ = 0 and A₄⊥ = 315 by power moments, closed form and column search".into())
    });
}

fn walsh_engine(r: &mut Runner) {
    for (label, spec) in shipped_bent_instances() {
        let id = format!("walsh-{label}");
        r.check(&id, &["walsh"], || {
            let rep = walsh_spectrum(&spec).map_err(|e| e.to_string())?;
            if !rep.is_bent {
                return Err("|W_f(β)|² ≠ p^e".into());
            }
            let (eps, dual) = rep.require_weakly_regular().map_err(|e| e.to_string())?;
            if !rep.rf_member {
                return Err("f is not in the RF class".into());
            }
            if dual[0] != 0 {
                return Err("f*(0) ≠ 0".into());
            }
            if !rep.dual_rf {
                return Err("f* fails the RF shape".into());
            }
            // (f*)*(x) = f(−x)
            let field = make_field(spec.p, spec.e).map_err(|e| e.to_string())?;
            let dual_spec = BentFunctionSpec {
                p: spec.p,
                e: spec.e,
                f: BentFunction::Table(dual.to_vec()),
            };
            let rep2 = walsh_spectrum(&dual_spec).map_err(|e| e.to_string())?;
            let (_, dual2) = rep2.require_weakly_regular().map_err(|e| e.to_string())?;
            let ftab = spec.table(&field);
            for x in field.elements() {
                if dual2[x.enc() as usize] != ftab[field.neg(x).enc() as usize] {
                    return Err(format!("(f*)* ≠ f(−x) at x = {}", x.enc()));
                }
            }
            Ok(format!(
                "bent, weakly regular with ε = {eps}, h = {}, l = {}",
                rep.rf_exponent.unwrap(),
                rep.dual_rf_exponent.unwrap()
            ))
        });
    }
    r.check("walsh-epsilon-exa3", &["walsh"], || {
        let rep = walsh_spectrum(&BentFunctionSpec::quadratic(3, 4, 1)).map_err(|e| e.to_string())?;
        expect_eq("ε", rep.epsilon, Some(-1))?;
        Ok("ε = −1".into())
    });
    r.check("walsh-epsilon-exa4", &["walsh"], || {
        let rep = walsh_spectrum(&BentFunctionSpec::quadratic(3, 3, 3)).map_err(|e| e.to_string())?;
        expect_eq("ε", rep.epsilon, Some(-1))?;
        Ok("ε = −1".into())
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_narrows_items() {
        let full = run_suite(Some("bounds"), crate::charsums::DEFAULT_SEED);
        assert!(full.items.iter().all(|i| i.id.contains("bounds")));
        assert!(!full.items.is_empty());
        assert!(full.pass, "{:#?}", full.items);
    }
}
