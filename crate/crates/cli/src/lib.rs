//! The `mpf` command line: argument definitions and verb handlers.
//!
//! Handlers write their primary output to the writer they are given (or to
//! `--out`) and report failures as a [`Failure`] carrying the exit code.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use mpf_core::formats::{
    format_hex, parse_hex, spectrum_csv, DoPolynomialFile, FunctionFile, RdsInput, RdsReportOutput,
    TruthTableFile, FORMAT_VERSION,
};
use mpf_core::planar::{ComponentVerdict, PermVerdict};
use mpf_core::search::run_search_streaming;
use mpf_core::transforms::transform;
use mpf_core::{
    graph_of, is_flat, is_modified_planar_components, is_modified_planar_perm,
    rds_verify_bruteforce, rds_verify_characters, run_search, Error, FieldSpec, FunctionClass,
    GroupLaw, RdsReport, SearchFilter, SearchJob, Setting, VectorialFunction,
};
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERDICT_FALSE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "mpf",
    version,
    about = "Exact analysis of modified planar functions over GF(2^n)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every planarity test and RDS verifier on one function.
    #[command(group(ArgGroup::new("input").required(true).args(["file", "poly"])))]
    Analyze {
        /// Function table JSON.
        #[arg(long)]
        file: Option<PathBuf>,
        /// DO polynomial JSON.
        #[arg(long)]
        poly: Option<PathBuf>,
        /// Field degree for a polynomial file without a field.
        #[arg(long, requires = "poly")]
        n: Option<u32>,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Dump the twisted spectrum of a Boolean function.
    Spectrum {
        /// Truth table JSON.
        #[arg(long)]
        file: PathBuf,
        /// Twist parameter.
        #[arg(long, value_parser = parse_hex_u32, default_value = "0x0")]
        c: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = CsvOrJson::Csv)]
        format: CsvOrJson,
    },
    /// Check whether a set is a relative difference set.
    VerifyRds {
        /// Group, elements and optional subgroup, as JSON.
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TextOrJson::Json)]
        format: TextOrJson,
    },
    /// Search a function class for modified planar maps.
    Search {
        #[arg(long)]
        mode: Setting,
        #[arg(long)]
        n: u32,
        /// Field modulus for univariate searches.
        #[arg(long, value_parser = parse_hex_u64)]
        modulus: Option<u64>,
        #[arg(long, default_value = "all")]
        class: FunctionClass,
        #[arg(long, default_value = "both")]
        filter: SearchFilter,
        #[arg(long, env = "MPF_DEFAULT_SHARDS", default_value_t = 1)]
        shards: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Examine this many random candidates instead of the whole class.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write each passing function as a JSON line while searching.
        #[arg(long, conflicts_with = "format")]
        stream: bool,
        #[arg(long, value_enum)]
        format: Option<TextOrJson>,
    },
    /// Run the built-in self checks.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TextOrJson {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CsvOrJson {
    Csv,
    Json,
}

fn parse_hex_u64(s: &str) -> Result<u64, String> {
    parse_hex(s).map_err(|e| e.to_string())
}

fn parse_hex_u32(s: &str) -> Result<u32, String> {
    let v = parse_hex_u64(s)?;
    u32::try_from(v).map_err(|_| format!("{s} does not fit in 32 bits"))
}

/// An error together with the process exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_IO,
            Error::RouteDisagreement { .. } => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::new(EXIT_IO, format!("{}: {e}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| io_failure(path, e)),
        None => stdout
            .write_all(bytes)
            .map_err(|e| Failure::new(EXIT_IO, format!("stdout: {e}"))),
    }
}

fn pretty(v: &impl serde::Serialize) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s.into_bytes()
}

/// Runs a parsed command, returning the exit code on success.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze {
            file,
            poly,
            n,
            format,
        } => {
            let f = match (file, poly) {
                (Some(path), _) => read_json::<FunctionFile>(&path)?.decode()?,
                (None, Some(path)) => read_json::<DoPolynomialFile>(&path)?
                    .decode(n)?
                    .to_function(),
                (None, None) => {
                    return Err(Failure::new(EXIT_USAGE, "--file or --poly is required"))
                }
            };
            analyze(&f, format, stdout)
        }
        Command::Spectrum {
            file,
            c,
            out,
            format,
        } => {
            let (domain, g) = read_json::<TruthTableFile>(&file)?.decode()?;
            let s = transform::<i64>(&domain, &g, c)?;
            let bytes = match format {
                CsvOrJson::Csv => spectrum_csv(&s).into_bytes(),
                CsvOrJson::Json => {
                    let values: Vec<Value> = s
                        .values
                        .iter()
                        .enumerate()
                        .map(|(u, v)| {
                            json!({
                                "u": format_hex(u as u64),
                                "re": v.re,
                                "im": v.im,
                                "norm_sq": v.norm_sq(),
                            })
                        })
                        .collect();
                    pretty(&json!({
                        "format_version": FORMAT_VERSION,
                        "mode": domain.setting(),
                        "n": domain.n(),
                        "c": format_hex(c as u64),
                        "flat": is_flat(&s),
                        "values": values,
                    }))
                }
            };
            emit(out.as_deref(), stdout, &bytes)?;
            Ok(EXIT_OK)
        }
        Command::VerifyRds { file, format } => {
            let input = read_json::<RdsInput>(&file)?.decode()?;
            verify_rds(&input.law, &input.elements, &input.subgroup, format, stdout)
        }
        Command::Search {
            mode,
            n,
            modulus,
            class,
            filter,
            shards,
            seed,
            sample,
            out,
            stream,
            format,
        } => {
            let field = match (mode, modulus) {
                (Setting::Univariate, Some(m)) => Some(mpf_core::make_field(n, Some(m))?),
                (Setting::Multivariate, Some(_)) => {
                    return Err(Failure::new(
                        EXIT_USAGE,
                        "--modulus only applies to --mode uv",
                    ))
                }
                (_, None) => None,
            };
            let job = SearchJob {
                setting: mode,
                n,
                field,
                class,
                filter,
                shards,
                seed,
                sample,
            };
            search(
                &job,
                out.as_deref(),
                stream,
                format.unwrap_or(TextOrJson::Json),
                stdout,
            )
        }
        Command::Selftest => {
            let checks = mpf_core::selftest::run();
            let mut text = String::new();
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!("{tag}  {}\n", c.name));
            }
            let passed = checks.iter().filter(|c| c.passed).count();
            text.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
            emit(None, stdout, text.as_bytes())?;
            Ok(if passed == checks.len() {
                EXIT_OK
            } else {
                EXIT_INTERNAL
            })
        }
    }
}

struct Analysis {
    perm: PermVerdict,
    components: ComponentVerdict,
    rds: RdsReport,
    characters: bool,
}

fn analyze(
    f: &VectorialFunction,
    format: TextOrJson,
    stdout: &mut dyn Write,
) -> Result<u8, Failure> {
    let law = GroupLaw::for_domain(f.domain());
    let graph = graph_of(f);
    let forbidden = law.forbidden_subgroup();
    let a = Analysis {
        perm: is_modified_planar_perm(f),
        components: is_modified_planar_components(f)?,
        rds: rds_verify_bruteforce(&law, &graph, &forbidden)?,
        characters: rds_verify_characters(&law, &graph, &forbidden)?,
    };
    let verdicts = [
        a.perm.planar,
        a.components.planar,
        a.rds.is_rds,
        a.characters,
    ];
    if verdicts.iter().any(|&v| v != verdicts[0]) {
        return Err(Failure::new(
            EXIT_INTERNAL,
            format!(
                "internal disagreement on {:?}: perm {}, components {}, rds count {}, characters {}",
                f.table(),
                verdicts[0],
                verdicts[1],
                verdicts[2],
                verdicts[3]
            ),
        ));
    }
    let bytes = match format {
        TextOrJson::Text => analysis_text(f, &a).into_bytes(),
        TextOrJson::Json => pretty(&analysis_json(f, &law, &a)),
    };
    emit(None, stdout, &bytes)?;
    Ok(EXIT_OK)
}

fn field_line(field: Option<&FieldSpec>) -> String {
    field.map_or(String::new(), |f| {
        format!(", modulus {}", format_hex(f.modulus()))
    })
}

fn analysis_text(f: &VectorialFunction, a: &Analysis) -> String {
    let d = f.domain();
    let mut s = format!(
        "mode {}, n = {}{}\n",
        d.setting().as_str(),
        d.n(),
        field_line(d.field())
    );
    s.push_str(&format!(
        "modified planar: {} (perm), {} (components), RDS {}\n",
        a.perm.planar,
        a.components.planar,
        if a.rds.is_rds {
            "verified"
        } else {
            "not verified"
        }
    ));
    if let Some(w) = a.perm.witness {
        s.push_str(&format!(
            "witness: direction {}, x1 = {}, x2 = {}, value {}\n",
            format_hex(w.direction as u64),
            format_hex(w.x1 as u64),
            format_hex(w.x2 as u64),
            format_hex(w.value as u64)
        ));
    }
    if let Some(c) = a.components.failing_twist {
        s.push_str(&format!(
            "first non-flat component: c = {}\n",
            format_hex(c as u64)
        ));
    }
    s.push_str(&rds_text(&a.rds, Some(a.characters)));
    s
}

fn rds_text(r: &RdsReport, characters: Option<bool>) -> String {
    let mut s = format!(
        "rds parameters (m, n, k, lambda) = ({}, {}, {}, {}): {}\n",
        r.mu, r.nu, r.k, r.lambda, r.is_rds
    );
    if let Some(e) = r.failing_element {
        s.push_str(&format!(
            "unbalanced difference: ({}, {}) occurs {} times\n",
            format_hex(e.element.x as u64),
            format_hex(e.element.y as u64),
            e.count
        ));
    }
    match characters {
        Some(v) => s.push_str(&format!("character test: {v}\n")),
        None => s.push_str("character test: not applicable\n"),
    }
    s
}

fn analysis_json(f: &VectorialFunction, law: &GroupLaw, a: &Analysis) -> Value {
    let hex = |v: u32| format_hex(v as u64);
    json!({
        "format_version": FORMAT_VERSION,
        "function": FunctionFile::from(f),
        "perm": {
            "planar": a.perm.planar,
            "witness": a.perm.witness.map(|w| json!({
                "direction": hex(w.direction),
                "x1": hex(w.x1),
                "x2": hex(w.x2),
                "value": hex(w.value),
            })),
        },
        "components": {
            "planar": a.components.planar,
            "failing_twist": a.components.failing_twist.map(hex),
        },
        "rds": RdsReportOutput::new(law, &a.rds, Some(a.characters)),
    })
}

fn verify_rds(
    law: &GroupLaw,
    elements: &[mpf_core::GroupElem],
    subgroup: &[mpf_core::GroupElem],
    format: TextOrJson,
    stdout: &mut dyn Write,
) -> Result<u8, Failure> {
    let report = rds_verify_bruteforce(law, elements, subgroup)?;
    let mut distinct = elements.to_vec();
    distinct.sort();
    distinct.dedup();
    let characters = match rds_verify_characters(law, &distinct, subgroup) {
        Ok(v) => Some(v),
        Err(Error::CharactersUnsupported | Error::UnsupportedSubgroup) => None,
        Err(e) => return Err(e.into()),
    };
    if characters.is_some_and(|v| v != report.is_rds) {
        return Err(Failure::new(
            EXIT_INTERNAL,
            format!(
                "internal disagreement: difference count says {}, characters say {}",
                report.is_rds, !report.is_rds
            ),
        ));
    }
    let bytes = match format {
        TextOrJson::Json => pretty(&RdsReportOutput::new(law, &report, characters)),
        TextOrJson::Text => {
            format!("group {}\n{}", law.name(), rds_text(&report, characters)).into_bytes()
        }
    };
    emit(None, stdout, &bytes)?;
    Ok(if report.is_rds {
        EXIT_OK
    } else {
        EXIT_VERDICT_FALSE
    })
}

fn search(
    job: &SearchJob,
    out: Option<&Path>,
    stream: bool,
    format: TextOrJson,
    stdout: &mut dyn Write,
) -> Result<u8, Failure> {
    if stream {
        let report = match out {
            Some(path) => {
                let file = fs::File::create(path).map_err(|e| io_failure(path, e))?;
                let mut w = std::io::BufWriter::new(file);
                let r = run_search_streaming(job, &mut w)?;
                w.flush().map_err(|e| io_failure(path, e))?;
                r
            }
            None => run_search_streaming(job, stdout)?,
        };
        eprintln!("examined {}, passing {}", report.examined, report.passing);
        return Ok(EXIT_OK);
    }
    let report = run_search(job)?;
    let bytes = match format {
        TextOrJson::Json => pretty(&report),
        TextOrJson::Text => {
            let mut s = format!("examined {}, passing {}", report.examined, report.passing);
            if let Some(ok) = report.cross_check {
                s.push_str(if ok {
                    ", routes agree"
                } else {
                    ", routes disagree"
                });
            }
            s.push('\n');
            for f in &report.functions {
                s.push_str(&f.table.join(" "));
                s.push('\n');
            }
            if report.truncated {
                s.push_str("(list truncated)\n");
            }
            s.into_bytes()
        }
    };
    emit(out, stdout, &bytes)?;
    Ok(EXIT_OK)
}
