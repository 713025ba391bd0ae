//! Thin command-line front end; all computation lives in the library.
//!
//! Exit codes: 0 success (all match flags true / suite pass), 1 mismatch or
//! suite failure, 2 spec errors, 3 cap violations. With `--json`, stdout
//! carries exactly one JSON document; diagnostics go to stderr.

use clap::{Args, Parser, Subcommand, ValueEnum};
use codeforge::analysis::{
    cadambe_mazumdar_verdict, classify_code, plotkin_max, singleton_like_verdict, LrcParams,
};
use codeforge::charsums::DEFAULT_SEED;
use codeforge::constructions::GeneratorVariant;
use codeforge::report::{
    analyze, build_construction, default_cache_dir, export_weights_csv, family_from_keys,
    parse_config, AnalyzeOptions, ReportError,
};
use codeforge::suite::run_suite;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "codeforge",
    version,
    about = "Construct defining-set and bent-function linear codes and verify their properties"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Cap worker threads (0 = auto); never affects results.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Cache directory (overrides CODEFORGE_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Canonical,
    Rowtweak,
}

#[derive(Args)]
struct FamilyArgs {
    /// Flat key=value config file; flags override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// norm-trace | quadratic | monomial | bent
    #[arg(long)]
    family: Option<String>,
    /// Intermediate field size q (a prime power; alternative to -p/-e).
    #[arg(short = 'q')]
    q: Option<u64>,
    /// Characteristic p.
    #[arg(short = 'p')]
    p: Option<u64>,
    /// Extension degree e over GF(p).
    #[arg(short = 'e')]
    e: Option<usize>,
    /// Top extension degree m over GF(q).
    #[arg(short = 'm')]
    m: Option<usize>,
    /// Norm-trace parameter r (m = 2r).
    #[arg(short = 'r')]
    r: Option<usize>,
    /// Monomial exponent N.
    #[arg(short = 'N')]
    n_exp: Option<u64>,
    /// Bent function: tr-x2 | tr-wx2 | c:<enc> | table:<path>.
    #[arg(long = "fn")]
    function: Option<String>,
    /// Generator-matrix variant; config key `variant` is used when the flag
    /// is left at its default.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
}

impl FamilyArgs {
    fn resolve(
        &self,
    ) -> Result<(codeforge::constructions::CodeFamilySpec, GeneratorVariant), ReportError> {
        let mut keys: BTreeMap<String, String> = match &self.config {
            Some(path) => parse_config(&std::fs::read_to_string(path)?)?,
            None => BTreeMap::new(),
        };
        let mut set = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                keys.insert(k.to_string(), v);
            }
        };
        set("family", self.family.clone());
        set("q", self.q.map(|v| v.to_string()));
        set("p", self.p.map(|v| v.to_string()));
        set("e", self.e.map(|v| v.to_string()));
        set("m", self.m.map(|v| v.to_string()));
        set("r", self.r.map(|v| v.to_string()));
        set("N", self.n_exp.map(|v| v.to_string()));
        set("fn", self.function.clone());
        let variant = match (self.variant, keys.get("variant").map(String::as_str)) {
            (Some(VariantArg::Canonical), _) => GeneratorVariant::Canonical,
            (Some(VariantArg::Rowtweak), _) => GeneratorVariant::RowTweak,
            (None, Some("canonical")) => GeneratorVariant::Canonical,
            (None, Some("rowtweak")) | (None, None) => GeneratorVariant::RowTweak,
            (None, Some(other)) => {
                return Err(ReportError::BadSpec(format!("unknown variant `{other}`")))
            }
        };
        Ok((family_from_keys(&keys)?, variant))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a construction, run the full analysis and compare against the
    /// closed-form prediction.
    Analyze {
        #[command(flatten)]
        family: FamilyArgs,
        /// Print the JSON report to stdout.
        #[arg(long)]
        json: bool,
        /// Also write the JSON report to a file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification matrix (optionally an id/tag-filtered subset).
    Suite {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export weight tables, generator matrices or defining sets.
    Export {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum)]
        what: ExportWhat,
        #[arg(long, value_enum, default_value = "json")]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the character-sum identity sweeps.
    CharsumVerify {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the code/LRC bounds for explicit parameters.
    Bounds {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'd')]
        d: usize,
        #[arg(short = 'q')]
        q: u64,
        /// Locality (enables the LRC verdicts).
        #[arg(short = 'r')]
        r: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportWhat {
    Weights,
    Matrix,
    DefiningSet,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Csv,
    Json,
}

fn write_out(out: Option<&PathBuf>, data: &str) -> Result<(), ReportError> {
    if let Some(path) = out {
        std::fs::write(path, data)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    codeforge::codes::set_max_threads(cli.threads);
    let cache_dir = cli.cache_dir.clone().or_else(default_cache_dir);
    match run(cli, cache_dir) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli, cache_dir: Option<PathBuf>) -> Result<ExitCode, ReportError> {
    match cli.cmd {
        Cmd::Analyze { family, json, out } => {
            let (fam, variant) = family.resolve()?;
            let opts = AnalyzeOptions {
                variant,
                cache_dir,
                ..Default::default()
            };
            let report = analyze(&fam, &opts)?;
            let doc = report.to_json();
            write_out(out.as_ref(), &doc)?;
            if json {
                println!("{doc}");
            } else {
                print_summary(&report);
            }
            Ok(if report.all_match() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Suite { filter, json, out } => {
            let result = run_suite(filter.as_deref(), cli.seed);
            let doc = serde_json::to_string_pretty(&result).expect("serializes");
            write_out(out.as_ref(), &doc)?;
            if json {
                println!("{doc}");
            } else {
                print_suite(&result);
            }
            Ok(if result.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Export {
            family,
            what,
            format,
            out,
        } => {
            let (fam, variant) = family.resolve()?;
            let doc = export(&fam, variant, what, format, cache_dir)?;
            write_out(out.as_ref(), &doc)?;
            if out.is_none() {
                println!("{doc}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::CharsumVerify { filter, json } => {
            // the sweeps all carry the `charsums` tag; an extra filter narrows
            // by id substring
            let result = match filter {
                Some(f) => run_suite(Some(&format!("charsums-{f}")), cli.seed),
                None => run_suite(Some("charsums"), cli.seed),
            };
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&result).expect("serializes")
                );
            } else {
                print_suite(&result);
            }
            Ok(if result.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Bounds {
            n,
            k,
            d,
            q,
            r,
            json: _,
        } => {
            #[derive(Serialize)]
            struct BoundsDoc {
                schema: u32,
                classify: codeforge::analysis::ClassifyReport,
                sphere_packing_kmax: usize,
                plotkin_max: Option<u64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                lrc_singleton_like: Option<codeforge::analysis::SingletonLikeReport>,
                #[serde(skip_serializing_if = "Option::is_none")]
                lrc_cadambe_mazumdar: Option<codeforge::analysis::CadambeMazumdarReport>,
            }
            let (sl, cm) = match r {
                Some(r) => {
                    let params = LrcParams::new(n, k, d, q, r);
                    (
                        Some(singleton_like_verdict(params)),
                        cadambe_mazumdar_verdict(params, None).ok(),
                    )
                }
                None => (None, None),
            };
            let doc = BoundsDoc {
                schema: codeforge::report::SCHEMA_VERSION,
                classify: classify_code(n, k, d, q),
                sphere_packing_kmax: codeforge::analysis::sphere_packing_kmax(n, d, q),
                plotkin_max: plotkin_max(n, d, q),
                lrc_singleton_like: sl,
                lrc_cadambe_mazumdar: cm,
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_suite(result: &codeforge::suite::SuiteResult) {
    for item in &result.items {
        println!(
            "{} {:42} {}",
            if item.pass { "PASS" } else { "FAIL" },
            item.id,
            item.detail
        );
    }
    println!(
        "{} — {} checks",
        if result.pass { "PASS" } else { "FAIL" },
        result.items.len()
    );
}

fn export(
    fam: &codeforge::constructions::CodeFamilySpec,
    variant: GeneratorVariant,
    what: ExportWhat,
    format: ExportFormat,
    cache_dir: Option<PathBuf>,
) -> Result<String, ReportError> {
    match what {
        ExportWhat::Weights => {
            let opts = AnalyzeOptions {
                variant,
                cache_dir,
                ..Default::default()
            };
            let report = analyze(fam, &opts)?;
            Ok(match format {
                ExportFormat::Csv => export_weights_csv(&report.computed.weight_table),
                ExportFormat::Json => {
                    serde_json::to_string_pretty(&report.computed.weight_table).expect("serializes")
                }
            })
        }
        ExportWhat::Matrix => {
            let (code, _, _, _) = build_construction(fam, variant)?;
            let doc = codeforge::report::export_matrix(&code);
            Ok(match format {
                ExportFormat::Json => serde_json::to_string_pretty(&doc).expect("serializes"),
                ExportFormat::Csv => {
                    let mut out = String::new();
                    for row in &doc.entries {
                        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                        out.push_str(&cells.join(","));
                        out.push('\n');
                    }
                    out
                }
            })
        }
        ExportWhat::DefiningSet => {
            let spec = fam.monomial_spec()?.ok_or_else(|| {
                ReportError::NothingToExport("the bent family has no defining set".into())
            })?;
            let (tower, d) = codeforge::constructions::defining_set(&spec)?;
            let elements: Vec<u64> = d.iter().map(|x| x.enc()).collect();
            match format {
                ExportFormat::Json => {
                    let doc = codeforge::report::DefiningSetExport {
                        field: codeforge::report::field_meta(tower.top()),
                        size: elements.len(),
                        elements,
                    };
                    Ok(serde_json::to_string_pretty(&doc).expect("serializes"))
                }
                ExportFormat::Csv => {
                    let mut out = String::from("index,element\n");
                    for (i, e) in elements.iter().enumerate() {
                        out.push_str(&format!("{i},{e}\n"));
                    }
                    Ok(out)
                }
            }
        }
    }
}

fn print_summary(report: &codeforge::report::AnalysisReport) {
    let c = &report.computed;
    println!(
        "{} over GF({}): [{}, {}, {}], dual d = {:?}",
        report.spec.family,
        report.spec.p.pow(report.spec.e as u32),
        c.n,
        c.k,
        c.d,
        c.dual_d
    );
    println!("  weights {:?}", c.weight_table.iter().collect::<Vec<_>>());
    println!(
        "  self-orthogonal: {}, divisor: {}, locality: {:?}, extendability: {:?}",
        c.self_orthogonal, c.divisor, c.locality, c.extendability.verdict
    );
    if let Some(m) = &report.matches {
        println!(
            "  prediction match: {}",
            if m.overall { "all fields" } else { "MISMATCH" }
        );
    }
}
