//! Analysis reports, the flat config format, the on-disk cache and exports.
//!
//! Reports serialize with sorted keys and fixed field order, so two runs of
//! the same spec produce byte-identical JSON. Timing is a diagnostic and goes
//! to stderr, never into the document. The cache stores only the expensive
//! artifacts (weight distribution and dual-distance records) keyed by a hash
//! of the canonical spec encoding; everything else is rebuilt.

use crate::analysis::{
    cadambe_mazumdar_verdict, classify_code, dual_locality_via_design, extendability_verdict,
    singleton_like_verdict, CadambeMazumdarReport, ClassifyReport, ExtendabilityReport, LrcParams,
    SingletonLikeReport,
};
use crate::codes::{design_check, DesignVerdict, DualDistance, LinearCode, Locality};
use crate::constructions::{
    augmented_code, bent_code, predicted_profile, walsh_spectrum, BentFunction, BentFunctionSpec,
    CodeFamilySpec, ConstructError, GeneratorVariant, LocalityPrediction, PredictedProfile,
};
use crate::gf::GfError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "CODEFORGE_CACHE_DIR";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{0}")]
    Construct(#[from] ConstructError),
    #[error("{0}")]
    Codes(#[from] crate::codes::CodesError),
    #[error("bad spec: {0}")]
    BadSpec(String),
    #[error("nothing to export: {0}")]
    NothingToExport(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl ReportError {
    /// CLI exit code: 2 for spec errors, 3 for cap violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Construct(ConstructError::Gf(GfError::TooLarge { .. })) => 3,
            ReportError::Codes(crate::codes::CodesError::TooLarge { .. }) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecEcho {
    pub family: String,
    pub p: u64,
    pub e: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_exp: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    pub variant: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DesignResults {
    /// 1-design verdict on minimum-weight supports (drives dual locality).
    pub min_weight_1design: DesignVerdict,
    /// 2-design verdict on minimum-weight supports, when checked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_weight_2design: Option<DesignVerdict>,
    /// 2-design verdict on the dual's minimum-weight supports, when checked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_min_weight_2design: Option<DesignVerdict>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundResults {
    pub primal: ClassifyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<ClassifyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lrc_singleton_like: Option<SingletonLikeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lrc_cadambe_mazumdar: Option<CadambeMazumdarReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Computed {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub dual_d: DualDistance,
    pub weight_table: BTreeMap<usize, u64>,
    pub self_orthogonal: bool,
    pub divisor: u64,
    pub all_ones_in_code: bool,
    pub locality: Locality,
    /// Dual locality certified through the minimum-weight 1-design.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_locality: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<i8>,
    pub designs: DesignResults,
    pub bounds: BoundResults,
    pub extendability: ExtendabilityReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchFlags {
    pub n: bool,
    pub k: bool,
    pub d: bool,
    pub dual_d: bool,
    pub weight_table: bool,
    pub self_orthogonal: bool,
    pub locality: bool,
    pub extended_dual_d: bool,
    pub overall: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub spec: SpecEcho,
    pub computed: Computed,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<PredictedProfile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches: Option<MatchFlags>,
}

impl AnalysisReport {
    pub fn all_match(&self) -> bool {
        self.matches.as_ref().is_none_or(|m| m.overall)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub variant: GeneratorVariant,
    pub cache_dir: Option<PathBuf>,
    pub dual_search_limit: usize,
    pub locality_rmax: u32,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            variant: GeneratorVariant::RowTweak,
            cache_dir: default_cache_dir(),
            dual_search_limit: 4,
            locality_rmax: 3,
        }
    }
}

pub fn default_cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from)
}

/// Canonical one-line encoding of a spec + variant; the cache key hashes this.
pub fn canonical_spec_string(family: &CodeFamilySpec, variant: GeneratorVariant) -> String {
    let v = match variant {
        GeneratorVariant::Canonical => "canonical",
        GeneratorVariant::RowTweak => "rowtweak",
    };
    match family {
        CodeFamilySpec::NormTrace { p, e, r } => {
            format!("family=norm-trace;p={p};e={e};r={r};variant={v};v{SCHEMA_VERSION}")
        }
        CodeFamilySpec::Quadratic { p, e, m } => {
            format!("family=quadratic;p={p};e={e};m={m};variant={v};v{SCHEMA_VERSION}")
        }
        CodeFamilySpec::Monomial { p, e, m, n_exp } => {
            format!("family=monomial;p={p};e={e};m={m};N={n_exp};variant={v};v{SCHEMA_VERSION}")
        }
        CodeFamilySpec::Bent(spec) => {
            let f = match &spec.f {
                BentFunction::QuadraticTrace { c } => format!("quad:{c}"),
                BentFunction::Table(t) => format!("table:{}", fnv1a(format!("{t:?}").as_bytes())),
            };
            format!(
                "family=bent;p={};e={};fn={f};variant={v};v{SCHEMA_VERSION}",
                spec.p, spec.e
            )
        }
    }
}

pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheRecord {
    spec: String,
    n: usize,
    k: u32,
    q: u64,
    weight_table: BTreeMap<usize, u64>,
    dual_d: usize,
    extended_dual_d: usize,
}

fn cache_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{:016x}.json", fnv1a(key.as_bytes())))
}

fn cache_load(dir: &Path, key: &str) -> Option<CacheRecord> {
    let path = cache_path(dir, key);
    let data = std::fs::read_to_string(path).ok()?;
    let rec: CacheRecord = serde_json::from_str(&data).ok()?;
    if rec.spec == key {
        Some(rec)
    } else {
        None
    }
}

fn cache_store(dir: &Path, rec: &CacheRecord) {
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    let path = cache_path(dir, &rec.spec);
    let _ = std::fs::write(path, serde_json::to_string_pretty(rec).expect("serializes"));
}

/// Build the construction selected by `family` and run the full analysis.
pub fn analyze(
    family: &CodeFamilySpec,
    opts: &AnalyzeOptions,
) -> Result<AnalysisReport, ReportError> {
    let started = std::time::Instant::now();
    let (code, _canonical_rows, epsilon, echo) = build_construction(family, opts.variant)?;
    let key = canonical_spec_string(family, opts.variant);
    let cached = opts.cache_dir.as_deref().and_then(|d| cache_load(d, &key));

    let (weight_table, dual_d, extended_dual_d) = match &cached {
        Some(rec) => (
            rec.weight_table.clone(),
            DualDistance::Exact(rec.dual_d),
            rec.extended_dual_d,
        ),
        None => {
            let wd = code.weight_distribution()?.clone();
            let dd = code.dual_min_distance(opts.dual_search_limit);
            let ext = extendability_verdict(&code, code.gen_rows(), opts.dual_search_limit)
                .map_err(|e| ReportError::BadSpec(e.to_string()))?;
            (wd.counts, dd, ext.extended_dual_d)
        }
    };
    let extendability = {
        let dual = match dual_d {
            DualDistance::Exact(d) => d,
            DualDistance::AtLeast(d) => d,
        };
        let verdict = if dual == extended_dual_d {
            crate::analysis::ExtendabilityVerdict::OptimallyExtendable
        } else if extended_dual_d + 1 == dual {
            crate::analysis::ExtendabilityVerdict::AlmostOptimallyExtendable
        } else {
            crate::analysis::ExtendabilityVerdict::Neither
        };
        ExtendabilityReport {
            dual_d: match dual_d {
                DualDistance::Exact(d) => d,
                DualDistance::AtLeast(d) => d,
            },
            extended_dual_d,
            verdict,
        }
    };

    let d = *weight_table
        .keys()
        .find(|&&w| w > 0)
        .ok_or_else(|| ReportError::BadSpec("zero code".into()))?;
    let n = code.n();
    let k = code.k();
    let q = code.q();
    let divisor = {
        let mut g = 0u64;
        for &w in weight_table.keys().filter(|&&w| w > 0) {
            g = num_integer::gcd(g, w as u64);
        }
        g
    };
    let locality = code.locality(opts.locality_rmax);
    let min_supports = code.supports_of_weight(d)?;
    let min_weight_1design = design_check(n, 1, d, &min_supports);
    let dual_locality = dual_locality_via_design(&code);
    // the named 2-design regimes: binary norm-trace, and bent with dual d = 4
    let check_2designs = matches!(dual_d, DualDistance::Exact(4));
    let (min2, dual2) = if check_2designs {
        let primal = design_check(n, 2, d, &min_supports);
        let dual_supports = code.dual_support_sets(4);
        let dual = design_check(n, 2, 4, &dual_supports);
        (Some(primal), Some(dual))
    } else {
        (None, None)
    };

    let dual_exact = match dual_d {
        DualDistance::Exact(v) => Some(v),
        DualDistance::AtLeast(_) => None,
    };
    let bounds = BoundResults {
        primal: classify_code(n, k, d, q),
        dual: dual_exact.map(|dd| classify_code(n, n - k, dd, q)),
        lrc_singleton_like: match locality {
            Locality::Exact(r) if r >= 1 => {
                Some(singleton_like_verdict(LrcParams::new(n, k, d, q, r as usize)))
            }
            _ => None,
        },
        lrc_cadambe_mazumdar: match locality {
            Locality::Exact(r) if r >= 1 => {
                cadambe_mazumdar_verdict(LrcParams::new(n, k, d, q, r as usize), None).ok()
            }
            _ => None,
        },
    };

    let predicted = predicted_profile(family, epsilon).ok();
    let matches = predicted.as_ref().map(|prof| {
        let weight_ok = prof.weight_table == weight_table;
        let dual_ok = match (prof.dual_d, dual_exact) {
            (Some(a), Some(b)) => a == b,
            (None, _) => true,
            _ => false,
        };
        let so_ok = prof
            .self_orthogonal
            .is_none_or(|so| so == code.is_self_orthogonal());
        let loc_ok = match prof.locality {
            LocalityPrediction::Proven(r) => locality == Locality::Exact(r),
            _ => true,
        };
        let ext_ok = {
            let (lo, hi) = prof.extended_dual_d;
            extended_dual_d >= lo && extended_dual_d <= hi
        };
        let flags = MatchFlags {
            n: prof.n == n,
            k: prof.k == k,
            d: prof.d == d,
            dual_d: dual_ok,
            weight_table: weight_ok,
            self_orthogonal: so_ok,
            locality: loc_ok,
            extended_dual_d: ext_ok,
            overall: false,
        };
        let overall = flags.n
            && flags.k
            && flags.d
            && flags.dual_d
            && flags.weight_table
            && flags.self_orthogonal
            && flags.locality
            && flags.extended_dual_d;
        MatchFlags { overall, ..flags }
    });

    if cached.is_none() {
        if let Some(dir) = opts.cache_dir.as_deref() {
            if let DualDistance::Exact(dd) = dual_d {
                cache_store(
                    dir,
                    &CacheRecord {
                        spec: key,
                        n,
                        k: k as u32,
                        q,
                        weight_table: weight_table.clone(),
                        dual_d: dd,
                        extended_dual_d,
                    },
                );
            }
        }
    }
    eprintln!(
        "analyze: {} in {:.1} ms{}",
        echo.family,
        started.elapsed().as_secs_f64() * 1e3,
        if cached.is_some() { " (cache hit)" } else { "" }
    );

    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        spec: echo,
        computed: Computed {
            n,
            k,
            d,
            dual_d,
            weight_table,
            self_orthogonal: code.is_self_orthogonal(),
            divisor,
            all_ones_in_code: code.contains_all_ones(),
            locality,
            dual_locality,
            epsilon,
            designs: DesignResults {
                min_weight_1design,
                min_weight_2design: min2,
                dual_min_weight_2design: dual2,
            },
            bounds,
            extendability,
        },
        predicted,
        matches,
    })
}

/// A built construction: the code generated by the requested variant matrix,
/// the canonical rows, ε for bent instances, and the spec echo.
pub type BuiltConstruction = (LinearCode, Vec<Vec<crate::gf::Felt>>, Option<i8>, SpecEcho);

/// Build the code selected by the family spec.
pub fn build_construction(
    family: &CodeFamilySpec,
    variant: GeneratorVariant,
) -> Result<BuiltConstruction, ReportError> {
    let vname = match variant {
        GeneratorVariant::Canonical => "canonical",
        GeneratorVariant::RowTweak => "rowtweak",
    };
    match family {
        CodeFamilySpec::Bent(spec) => {
            let report = walsh_spectrum(spec)?;
            let built = bent_code(spec, variant)?;
            let canonical = bent_code(spec, GeneratorVariant::Canonical)?;
            let echo = SpecEcho {
                family: "bent".into(),
                p: spec.p,
                e: spec.e,
                m: None,
                r: None,
                n_exp: None,
                function: Some(function_name(&spec.f)),
                variant: vname.into(),
            };
            Ok((
                built.code,
                canonical.code.gen_rows().to_vec(),
                report.epsilon,
                echo,
            ))
        }
        _ => {
            let spec = family
                .monomial_spec()?
                .expect("non-bent family has a monomial spec");
            let built = augmented_code(&spec, variant)?;
            let canonical = augmented_code(&spec, GeneratorVariant::Canonical)?;
            let (m, r) = match family {
                CodeFamilySpec::NormTrace { r, .. } => (None, Some(*r)),
                _ => (Some(spec.m), None),
            };
            let echo = SpecEcho {
                family: family.family_name().into(),
                p: spec.p,
                e: spec.e,
                m,
                r,
                n_exp: Some(spec.n_exp),
                function: None,
                variant: vname.into(),
            };
            Ok((built.code, canonical.code.gen_rows().to_vec(), None, echo))
        }
    }
}

pub fn function_name(f: &BentFunction) -> String {
    match f {
        BentFunction::QuadraticTrace { c: 1 } => "tr-x2".into(),
        BentFunction::QuadraticTrace { c } => format!("tr-c{c}-x2"),
        BentFunction::Table(_) => "table".into(),
    }
}

// ---------------------------------------------------------------------------
// flat config format
// ---------------------------------------------------------------------------

/// Parse the flat key-value config (one `key = value` per line, `#` comments).
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, ReportError> {
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(ReportError::BadSpec(format!(
                "config line {} is not `key = value`",
                lineno + 1
            )));
        };
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// Factor a prime power q into (p, e).
pub fn factor_prime_power(q: u64) -> Result<(u64, usize), ReportError> {
    if q < 2 {
        return Err(ReportError::BadSpec(format!("{q} is not a prime power")));
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut e = 0;
            let mut v = q;
            while v.is_multiple_of(p) {
                v /= p;
                e += 1;
            }
            if v != 1 {
                return Err(ReportError::BadSpec(format!("{q} is not a prime power")));
            }
            return Ok((p, e));
        }
        p += 1;
    }
    Ok((q, 1))
}

/// Resolve a family spec from merged config keys.
pub fn family_from_keys(keys: &BTreeMap<String, String>) -> Result<CodeFamilySpec, ReportError> {
    let get = |k: &str| keys.get(k).cloned();
    let parse_u64 = |k: &str| -> Result<u64, ReportError> {
        get(k)
            .ok_or_else(|| ReportError::BadSpec(format!("missing key `{k}`")))?
            .parse()
            .map_err(|_| ReportError::BadSpec(format!("bad integer for `{k}`")))
    };
    let pe = || -> Result<(u64, usize), ReportError> {
        if keys.contains_key("q") {
            factor_prime_power(parse_u64("q")?)
        } else {
            let p = parse_u64("p")?;
            let e = keys
                .get("e")
                .map(|v| v.parse::<usize>())
                .transpose()
                .map_err(|_| ReportError::BadSpec("bad integer for `e`".into()))?
                .unwrap_or(1);
            Ok((p, e))
        }
    };
    let family = get("family").ok_or_else(|| ReportError::BadSpec("missing `family`".into()))?;
    match family.as_str() {
        "norm-trace" => {
            let (p, e) = pe()?;
            Ok(CodeFamilySpec::NormTrace {
                p,
                e,
                r: parse_u64("r")? as usize,
            })
        }
        "quadratic" => {
            let (p, e) = pe()?;
            Ok(CodeFamilySpec::Quadratic {
                p,
                e,
                m: parse_u64("m")? as usize,
            })
        }
        "monomial" => {
            let (p, e) = pe()?;
            Ok(CodeFamilySpec::Monomial {
                p,
                e,
                m: parse_u64("m")? as usize,
                n_exp: parse_u64("N")?,
            })
        }
        "bent" => {
            let (p, e) = pe()?;
            let f = parse_bent_function(p, e, get("fn").as_deref().unwrap_or("tr-x2"))?;
            Ok(CodeFamilySpec::Bent(BentFunctionSpec { p, e, f }))
        }
        other => Err(ReportError::BadSpec(format!("unknown family `{other}`"))),
    }
}

/// Function selectors: `tr-x2`, `tr-wx2` (w = field generator), `c:<enc>`,
/// `table:<path>` (two whitespace-separated columns: element index, value).
pub fn parse_bent_function(p: u64, e: usize, name: &str) -> Result<BentFunction, ReportError> {
    match name {
        "tr-x2" => Ok(BentFunction::QuadraticTrace { c: 1 }),
        "tr-wx2" => {
            let field = crate::gf::make_field(p, e)
                .map_err(|err| ReportError::BadSpec(err.to_string()))?;
            Ok(BentFunction::QuadraticTrace {
                c: field.generator().enc(),
            })
        }
        other => {
            if let Some(c) = other.strip_prefix("c:") {
                let c: u64 = c
                    .parse()
                    .map_err(|_| ReportError::BadSpec(format!("bad element encoding `{c}`")))?;
                Ok(BentFunction::QuadraticTrace { c })
            } else if let Some(path) = other.strip_prefix("table:") {
                let text = std::fs::read_to_string(path)?;
                let q = (p as u128).pow(e as u32) as usize;
                let mut table = vec![u64::MAX; q];
                for line in text.lines() {
                    let line = line.trim();
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    let mut it = line.split_whitespace();
                    let (Some(xi), Some(fv)) = (it.next(), it.next()) else {
                        return Err(ReportError::BadSpec("table rows need two columns".into()));
                    };
                    let xi: usize = xi
                        .parse()
                        .map_err(|_| ReportError::BadSpec("bad table index".into()))?;
                    let fv: u64 = fv
                        .parse()
                        .map_err(|_| ReportError::BadSpec("bad table value".into()))?;
                    if xi >= q || fv >= p {
                        return Err(ReportError::BadSpec("table entry out of range".into()));
                    }
                    table[xi] = fv;
                }
                if table.contains(&u64::MAX) {
                    return Err(ReportError::BadSpec("table does not cover the field".into()));
                }
                Ok(BentFunction::Table(table))
            } else {
                Err(ReportError::BadSpec(format!("unknown function `{name}`")))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// exports
// ---------------------------------------------------------------------------

/// Weight table as CSV: header plus ascending `weight,count` rows.
pub fn export_weights_csv(table: &BTreeMap<usize, u64>) -> String {
    let mut out = String::from("weight,count\n");
    for (w, c) in table {
        out.push_str(&format!("{w},{c}\n"));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct MatrixExport {
    pub field: FieldMeta,
    pub rows: usize,
    pub cols: usize,
    /// Row-major element encodings.
    pub entries: Vec<Vec<u64>>,
}

#[derive(Debug, Serialize)]
pub struct FieldMeta {
    pub p: u64,
    pub deg: usize,
    pub q: u64,
    pub modulus: Vec<u64>,
    pub generator: u64,
}

pub fn field_meta(field: &crate::gf::FieldCtx) -> FieldMeta {
    FieldMeta {
        p: field.p(),
        deg: field.deg(),
        q: field.q(),
        modulus: field.modulus().to_vec(),
        generator: field.generator().enc(),
    }
}

pub fn export_matrix(code: &LinearCode) -> MatrixExport {
    MatrixExport {
        field: field_meta(code.field()),
        rows: code.gen_rows().len(),
        cols: code.n(),
        entries: code
            .gen_rows()
            .iter()
            .map(|r| r.iter().map(|c| c.enc()).collect())
            .collect(),
    }
}

#[derive(Debug, Serialize)]
pub struct DefiningSetExport {
    pub field: FieldMeta,
    pub size: usize,
    /// Element encodings in the deterministic order (zero last).
    pub elements: Vec<u64>,
}
