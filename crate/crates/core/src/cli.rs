//! The `acm` command line: argument parsing, dispatch and report output.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::conjecture::{probe_catenary_from_survey, probe_ld_from_survey};
use crate::error::{Error, Result};
use crate::factorization::{catenary_of_factorizations, enumerate_factorizations, LengthProfile};
use crate::invariants::{catenary, density, omega};
use crate::monoid::{Acm, Classification};
use crate::report::{format_delta_set, format_ratio};
use crate::survey::{Survey, SurveyRow, SurveySummary};
use crate::verify::{run_suite, Suite};

/// Exit status for a verification suite with a failing check.
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Variant {
    Floor,
    #[default]
    Ceiling,
}

impl From<Variant> for omega::OmegaVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Floor => omega::OmegaVariant::Floor,
            Variant::Ceiling => omega::OmegaVariant::Ceiling,
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "acm",
    version,
    about = "Factorization invariants of arithmetical congruence monoids"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_factorizations: u64,
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub atom_bound: u64,
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub len_bound: u64,
    #[arg(long, global = true, value_enum, default_value_t = Variant::Ceiling)]
    pub variant: Variant,
    /// Accepted for scripts; nothing here is random.
    #[arg(long, global = true)]
    pub seedless: bool,
}

#[derive(Debug, Clone, Args)]
pub struct MonoidArgs {
    #[arg(long)]
    pub a: u64,
    #[arg(long)]
    pub b: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Class and structural parameters.
    Classify(#[command(flatten)] MonoidArgs),
    /// Atoms up to a bound.
    Atoms {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long)]
        max: u64,
    },
    /// All factorizations of an element.
    Factorize {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long)]
        x: u64,
    },
    /// Length set, delta set and length density of an element.
    Profile {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long)]
        x: u64,
    },
    /// Omega primality: closed form, bounded oracle and witness.
    Omega {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long)]
        x: u64,
    },
    /// Length density of the monoid.
    Ld {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// Also scan elements up to this bound.
        #[arg(long)]
        max: Option<u64>,
    },
    /// Catenary degree of an element, or of the monoid.
    Catenary {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long)]
        x: Option<u64>,
        #[arg(long)]
        max: Option<u64>,
    },
    /// One row per element up to a bound, then an aggregate footer.
    Survey {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long)]
        max: u64,
    },
    /// Run a named bundle of consistency checks.
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// Probe the two conjectures for a global singular monoid.
    Conjecture {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long)]
        max: u64,
    },
}

/// Parses `args`, runs the command and returns the exit status. Reports
/// go to `--out` or `stdout`; diagnostics go to `stderr` as JSON.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 1;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match run_command(&config, stdout) {
        Ok(code) => code,
        Err(e) => {
            let diagnostic = json!({
                "error": error_kind(&e),
                "message": e.to_string(),
                "exit_code": e.exit_code(),
            });
            let _ = writeln!(stderr, "{diagnostic}");
            e.exit_code()
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidAcm { .. } => "invalid-acm",
        Error::NotInMonoid { .. } => "not-in-monoid",
        Error::NotAnAtom(_) => "not-an-atom",
        Error::NotIntegerDivisor { .. } => "not-a-divisor",
        Error::ClassMismatch { .. } => "class-mismatch",
        Error::CapExceeded { .. } => "cap-exceeded",
        Error::Malformed(_) => "malformed",
        Error::Unavailable(_) => "unavailable",
        Error::Structural(_) => "structural",
        Error::Overflow(_) => "overflow",
        Error::Kernel(_) => "arithmetic",
    }
}

/// Dispatches one command. `Ok` carries the exit status: 0, or 3 when a
/// verification suite has a failing check.
pub fn run_command(config: &RunConfig, stdout: &mut dyn Write) -> Result<i32> {
    let opts = &config.options;
    let mut file;
    let out: &mut dyn Write = match &opts.out {
        Some(path) => {
            file = BufWriter::new(File::create(path).map_err(io_error)?);
            &mut file
        }
        None => stdout,
    };
    let cap = usize::try_from(opts.cap_factorizations).unwrap_or(usize::MAX);
    let mut code = 0;
    match &config.command {
        Command::Classify(m) => emit_report(&classify_report(&monoid(m)?), opts.format, out)?,
        Command::Atoms { monoid: m, max } => {
            let acm = monoid(m)?;
            let atoms = acm.atoms_up_to(*max);
            let report = json!({
                "monoid": acm.to_string(),
                "bound": max,
                "count": atoms.len(),
                "atoms": atoms,
            });
            emit_report(&report, opts.format, out)?;
        }
        Command::Factorize { monoid: m, x } => {
            let acm = monoid(m)?;
            let zs = enumerate_factorizations(&acm, *x, cap)?;
            let lists: Vec<&[u64]> = zs.iter().map(|z| z.atoms()).collect();
            let report = json!({
                "monoid": acm.to_string(),
                "element": x,
                "count": zs.len(),
                "factorizations": lists,
            });
            emit_report(&report, opts.format, out)?;
        }
        Command::Profile { monoid: m, x } => {
            let acm = monoid(m)?;
            let zs = enumerate_factorizations(&acm, *x, cap)?;
            let profile = LengthProfile::from_factorizations(&zs)?;
            let mut report = object(&profile)?;
            report.insert("monoid".into(), json!(acm.to_string()));
            report.insert("element".into(), json!(x));
            report.insert("factorizations".into(), json!(zs.len()));
            report.insert("delta_set".into(), json!(profile.delta_set));
            emit_report(&Value::Object(report), opts.format, out)?;
        }
        Command::Omega { monoid: m, x } => {
            let acm = monoid(m)?;
            emit_report(&omega_report(&acm, *x, opts)?, opts.format, out)?;
        }
        Command::Ld { monoid: m, max } => {
            let acm = monoid(m)?;
            emit_report(&ld_report(&acm, *max, cap)?, opts.format, out)?;
        }
        Command::Catenary { monoid: m, x, max } => {
            let acm = monoid(m)?;
            emit_report(&catenary_report(&acm, *x, *max, cap)?, opts.format, out)?;
        }
        Command::Survey { monoid: m, max } => {
            let acm = monoid(m)?;
            stream_survey(&acm, *max, cap, opts.format, out)?;
        }
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite)?;
            if !report.passed() {
                code = EXIT_VERIFY_FAILED;
            }
            match opts.format {
                Format::Table => {
                    for c in &report.checks {
                        let status = if c.passed { "pass" } else { "FAIL" };
                        writeln!(out, "[{status}] {}: {}", c.name, c.detail).map_err(io_error)?;
                    }
                    for n in &report.notes {
                        writeln!(out, "[note] {n}").map_err(io_error)?;
                    }
                    let verdict = if report.passed() { "passed" } else { "failed" };
                    writeln!(out, "{suite}: {verdict}").map_err(io_error)?;
                }
                _ => {
                    let mut value = object(&report)?;
                    value.insert("passed".into(), json!(report.passed()));
                    emit_report(&Value::Object(value), opts.format, out)?;
                }
            }
        }
        Command::Conjecture { monoid: m, max } => {
            let acm = monoid(m)?;
            let survey = Survey::run(&acm, *max, cap)?;
            let mut report = Map::new();
            report.insert("monoid".into(), json!(acm.to_string()));
            report.insert(
                "ld".into(),
                to_value(&probe_ld_from_survey(&acm, &survey)?)?,
            );
            let catenary = match probe_catenary_from_survey(&acm, &survey, *max) {
                Ok(p) => to_value(&p)?,
                Err(
                    e @ (Error::Unavailable(_) | Error::CapExceeded { .. } | Error::Overflow(_)),
                ) => {
                    json!({ "unavailable": e.to_string() })
                }
                Err(e) => return Err(e),
            };
            report.insert("catenary".into(), catenary);
            emit_report(&Value::Object(report), opts.format, out)?;
        }
    }
    out.flush().map_err(io_error)?;
    Ok(code)
}

fn monoid(m: &MonoidArgs) -> Result<Acm> {
    Acm::new(m.a, m.b)
}

fn io_error(e: io::Error) -> Error {
    Error::Malformed(format!("I/O: {e}"))
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Malformed(e.to_string()))
}

fn object<T: Serialize>(v: &T) -> Result<Map<String, Value>> {
    match to_value(v)? {
        Value::Object(m) => Ok(m),
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            Ok(m)
        }
    }
}

fn classify_report(acm: &Acm) -> Value {
    let desc = acm.descriptor();
    let mut report = json!({
        "monoid": acm.to_string(),
        "a": desc.a(),
        "b": desc.b(),
        "d": desc.d(),
        "f": desc.f(),
        "class": acm.classification().name(),
        "krull": acm.classification().krull_annotation(),
    });
    match acm.classification() {
        Classification::Regular => {}
        Classification::LocalSingular(p) => {
            report["p"] = json!(p.p);
            report["alpha"] = json!(p.alpha);
            report["beta"] = json!(p.beta);
            report["delta"] = json!(p.delta);
        }
        Classification::GlobalSingular { d, .. } => {
            report["d_factors"] = json!(d.factors());
        }
    }
    report
}

fn omega_report(acm: &Acm, x: u64, opts: &Options) -> Result<Value> {
    let variant: omega::OmegaVariant = opts.variant.into();
    let mut report = Map::new();
    report.insert("monoid".into(), json!(acm.to_string()));
    report.insert("element".into(), json!(x));
    report.insert("variant".into(), json!(variant.to_string()));
    report.insert(
        "closed_form".into(),
        json!(omega::omega_closed(acm, x, variant)?),
    );
    let len_bound = usize::try_from(opts.len_bound).unwrap_or(usize::MAX);
    match omega::omega_oracle(acm, x, opts.atom_bound, len_bound) {
        Ok(r) => {
            report.insert("oracle".into(), to_value(&r)?);
        }
        Err(e @ Error::Unavailable(_)) => {
            report.insert("oracle".into(), Value::Null);
            report.insert("oracle_note".into(), json!(e.to_string()));
        }
        Err(e) => return Err(e),
    }
    if acm.classification().is_regular() {
        report.insert(
            "witness".into(),
            json!(omega::omega_witness_regular(acm, x)?),
        );
    }
    Ok(Value::Object(report))
}

fn ld_report(acm: &Acm, max: Option<u64>, cap: usize) -> Result<Value> {
    let mut report = Map::new();
    report.insert("monoid".into(), json!(acm.to_string()));
    report.insert("class".into(), json!(acm.classification().name()));
    match density::ld_closed(acm) {
        Ok(v) => {
            report.insert("ld_closed".into(), json!(v.map(|r| format_ratio(&r))));
        }
        Err(e @ Error::Unavailable(_)) => {
            report.insert("ld_closed".into(), Value::Null);
            report.insert("ld_closed_note".into(), json!(e.to_string()));
        }
        Err(e) => return Err(e),
    }
    if acm.classification().is_regular() {
        match density::ld_witness_regular(acm) {
            Ok((x, profile)) => {
                report.insert("witness".into(), json!(x));
                report.insert("witness_lengths".into(), json!(profile.lengths));
            }
            Err(e @ Error::Unavailable(_)) => {
                report.insert("witness".into(), Value::Null);
                report.insert("witness_note".into(), json!(e.to_string()));
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(bound) = max {
        let summary = Survey::run(acm, bound, cap)?.summary();
        let min = summary.min_length_density;
        report.insert(
            "survey".into(),
            json!({
                "bound": bound,
                "min_ld": min.map(|w| format_ratio(&w.value)),
                "witness": min.map(|w| w.witness),
                "capped": summary.capped,
            }),
        );
    }
    Ok(Value::Object(report))
}

fn catenary_report(acm: &Acm, x: Option<u64>, max: Option<u64>, cap: usize) -> Result<Value> {
    let mut report = Map::new();
    report.insert("monoid".into(), json!(acm.to_string()));
    let closed = catenary::catenary_closed_local(acm).ok();
    report.insert("closed_form".into(), json!(closed));
    if let Some(x) = x {
        let zs = enumerate_factorizations(acm, x, cap)?;
        report.insert("element".into(), json!(x));
        report.insert("factorizations".into(), json!(zs.len()));
        report.insert("catenary".into(), json!(catenary_of_factorizations(&zs)));
    }
    if let Some(bound) = max {
        let summary = Survey::run(acm, bound, cap)?.summary();
        report.insert(
            "survey".into(),
            to_value(&catenary::catenary_from_summary(&summary))?,
        );
        report.insert("survey_bound".into(), json!(bound));
        report.insert(
            "lower_bound_check".into(),
            to_value(&catenary::lower_bound_from_summary(acm, bound, &summary))?,
        );
    }
    if x.is_none() && max.is_none() && closed.is_none() {
        return Err(Error::Unavailable(format!(
            "{acm}: no closed form for this class; pass --x or --max"
        )));
    }
    Ok(Value::Object(report))
}

/// Writes `report` in the requested format, newline-terminated. Object keys
/// come out sorted.
pub fn emit_report(report: &Value, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(report)
                .map_err(|e| Error::Malformed(e.to_string()))?;
            writeln!(out, "{text}").map_err(io_error)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["key", "value"]).map_err(csv_error)?;
            for (k, v) in flat_entries(report) {
                w.write_record([k.as_str(), v.as_str()])
                    .map_err(csv_error)?;
            }
            w.flush().map_err(io_error)
        }
        Format::Table => {
            let entries = flat_entries(report);
            let width = entries
                .iter()
                .map(|(k, _)| k.chars().count())
                .max()
                .unwrap_or(0);
            for (k, v) in entries {
                writeln!(out, "{k:<width$}  {v}").map_err(io_error)?;
            }
            Ok(())
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Malformed(format!("csv: {e}"))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Top-level keys, nested objects flattened with dotted keys.
fn flat_entries(v: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(m) => {
                for (k, v) in m {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, v, out);
                }
            }
            other => out.push((prefix.to_string(), scalar(other))),
        }
    }
    let mut out = Vec::new();
    walk("", v, &mut out);
    out
}

pub const SURVEY_CSV_HEADER: [&str; 7] = [
    "element",
    "min_len",
    "max_len",
    "delta_set",
    "ld",
    "catenary",
    "flags",
];

fn survey_fields(row: &SurveyRow) -> [String; 7] {
    let p = row.profile.as_ref();
    [
        row.element.to_string(),
        p.map(|p| p.min_length.to_string()).unwrap_or_default(),
        p.map(|p| p.max_length.to_string()).unwrap_or_default(),
        p.map(|p| format_delta_set(&p.delta_set))
            .unwrap_or_default(),
        p.and_then(|p| p.length_density)
            .map(|r| format_ratio(&r))
            .unwrap_or_default(),
        row.catenary.map(|c| c.to_string()).unwrap_or_default(),
        row.flags(),
    ]
}

fn footer(summary: &SurveySummary) -> Value {
    json!({
        "elements": summary.elements,
        "capped": summary.capped,
        "multi_length": summary.multi_length,
        "max_catenary": summary.max_catenary.map(|w| w.value),
        "max_catenary_witness": summary.max_catenary.map(|w| w.witness),
        "min_ld": summary.min_length_density.map(|w| format_ratio(&w.value)),
        "min_ld_witness": summary.min_length_density.map(|w| w.witness),
        "delta_set": summary.delta_witnesses.keys().collect::<Vec<_>>(),
        "delta_witnesses": summary
            .delta_witnesses
            .iter()
            .map(|(g, w)| (g.to_string(), json!(w)))
            .collect::<Map<_, _>>(),
    })
}

/// Rows as they are produced, ascending, then the aggregate footer.
///
/// CSV: the fixed header, one record per element, then `# key=value`
/// footer lines. JSON: one object per line, then `{"summary": ...}`.
fn stream_survey(
    acm: &Acm,
    bound: u64,
    cap: usize,
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(SURVEY_CSV_HEADER).map_err(csv_error)?;
            let survey = Survey::stream(acm, bound, cap, |row| {
                w.write_record(survey_fields(row)).map_err(csv_error)
            })?;
            w.flush().map_err(io_error)?;
            drop(w);
            for (k, v) in flat_entries(&footer(&survey.summary())) {
                writeln!(out, "# {k}={v}").map_err(io_error)?;
            }
        }
        Format::Json => {
            let survey = Survey::stream(acm, bound, cap, |row| {
                let mut v = object(row)?;
                v.insert("flags".into(), json!(row.flags()));
                writeln!(out, "{}", Value::Object(v)).map_err(io_error)
            })?;
            writeln!(out, "{}", json!({ "summary": footer(&survey.summary()) }))
                .map_err(io_error)?;
        }
        Format::Table => {
            let widths = [10, 7, 7, 12, 8, 8, 0];
            let line = |fields: &[String]| {
                let cells: Vec<String> = fields
                    .iter()
                    .zip(widths)
                    .map(|(f, w)| format!("{f:<w$}"))
                    .collect();
                cells.join(" ").trim_end().to_string()
            };
            let header: Vec<String> = SURVEY_CSV_HEADER.iter().map(|s| s.to_string()).collect();
            writeln!(out, "{}", line(&header)).map_err(io_error)?;
            let survey = Survey::stream(acm, bound, cap, |row| {
                writeln!(out, "{}", line(&survey_fields(row))).map_err(io_error)
            })?;
            let summary = survey.summary();
            writeln!(out).map_err(io_error)?;
            for (gap, witness) in &summary.delta_witnesses {
                writeln!(out, "delta gap {gap}: first at {witness}").map_err(io_error)?;
            }
            emit_report(&footer(&summary), Format::Table, out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["acm"];
        full.extend_from_slice(args);
        let code = main_with_args(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn factorize_json() {
        let (code, out, _) = run(&[
            "factorize",
            "--a",
            "1",
            "--b",
            "4",
            "--x",
            "693",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["factorizations"], json!([[9, 77], [21, 33]]));
    }

    #[test]
    fn invalid_acm_exits_one() {
        let (code, out, err) = run(&["classify", "--a", "2", "--b", "4"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.contains("a² ≢ a (mod b)"), "{err}");
    }

    #[test]
    fn cap_exits_two() {
        let (code, _, err) = run(&[
            "factorize",
            "--a",
            "1",
            "--b",
            "4",
            "--x",
            "693",
            "--cap-factorizations",
            "1",
        ]);
        assert_eq!(code, 2);
        assert!(err.contains("cap-exceeded"));
    }

    #[test]
    fn survey_csv_layout() {
        let (code, out, _) = run(&[
            "survey", "--a", "1", "--b", "5", "--max", "1300", "--format", "csv",
        ]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(
            lines.next(),
            Some("element,min_len,max_len,delta_set,ld,catenary,flags")
        );
        assert!(out.contains("1296,2,4,{2},1/2,4,multi-length"), "{out}");
        assert!(out.lines().last().unwrap().starts_with("# "));
    }

    #[test]
    fn output_is_deterministic() {
        let args = [
            "survey", "--a", "4", "--b", "6", "--max", "3000", "--format", "json",
        ];
        assert_eq!(run(&args), run(&args));
    }
}
