//! The `dsforge` command line.
//!
//! Exit status: 0 when everything is valid, 1 when validation or
//! specification checks found failures, 2 for usage, I/O and parse errors.

use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::annotation::{decode_html, extract_jsonld_blocks, parse_annotation_block, resolve_references};
use crate::corpus::{scan_corpus, ScanOptions};
use crate::domainspec::{
    check_domain_spec, diff_domain_specs, parse_domain_spec_str, scaffold_domain_spec, to_json_string, CheckMode,
    DomainSpecification,
};
use crate::validator::{generate_template, validate_document, ValidationOptions, ValidationReport};
use crate::vocabulary::VocabularyGraph;
use crate::{bundled, VOCAB_ENV};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Failures = 1,
    Error = 2,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "dsforge",
    version,
    about = "Domain specifications for schema.org annotations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct VocabArg {
    /// schema.org JSON-LD release file [env: DSFORGE_VOCAB]
    #[arg(long)]
    vocab: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SpecSource {
    /// Domain specification file
    #[arg(long, conflicts_with = "ds_dir")]
    ds: Option<PathBuf>,
    /// Directory of *.json domain specification files (default: bundled set)
    #[arg(long)]
    ds_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vocabulary statistics
    Vocab {
        #[command(subcommand)]
        command: VocabCommand,
    },
    /// Domain specification tools
    Ds {
        #[command(subcommand)]
        command: DsCommand,
    },
    /// Validate annotation files (HTML or JSON-LD)
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        specs: SpecSource,
        #[command(flatten)]
        vocab: VocabArg,
        #[arg(long)]
        format: Option<Format>,
        /// Only select specifications whose domain types name the annotation type exactly
        #[arg(long)]
        exact: bool,
    },
    /// Generate a JSON-LD skeleton for one domain type
    Template {
        ds_file: PathBuf,
        #[arg(long = "type")]
        type_name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the JSON-LD blocks of an HTML page
    Extract {
        html_file: PathBuf,
        #[arg(long)]
        format: Option<Format>,
    },
    /// Validate a corpus directory and write aggregate statistics
    Report {
        dir: PathBuf,
        #[arg(long)]
        ds_dir: Option<PathBuf>,
        #[command(flatten)]
        vocab: VocabArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Worker threads (0 = number of CPUs)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Debug, Subcommand)]
enum VocabCommand {
    /// Term counts and load warnings
    Info {
        vocab_file: PathBuf,
        #[arg(long)]
        format: Option<Format>,
    },
}

#[derive(Debug, Subcommand)]
enum DsCommand {
    /// Check a specification against the vocabulary
    Check {
        ds_file: PathBuf,
        #[command(flatten)]
        vocab: VocabArg,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        format: Option<Format>,
    },
    /// Draft a specification from the vocabulary
    Scaffold {
        type_name: String,
        #[command(flatten)]
        vocab: VocabArg,
        /// Only properties whose domain names the type itself
        #[arg(long)]
        direct_only: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Property-level difference between two specifications
    Diff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        format: Option<Format>,
    },
}

/// A failure that ends the command with status 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

type CmdResult = Result<ExitStatus, Fatal>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    default_format: Format,
    env_vocab: Option<PathBuf>,
}

impl Ctx<'_> {
    fn format(&self, requested: Option<Format>) -> Format {
        requested.unwrap_or(self.default_format)
    }

    fn graph(&mut self, arg: &VocabArg) -> Result<VocabularyGraph, Fatal> {
        let path = arg
            .vocab
            .clone()
            .or_else(|| self.env_vocab.clone())
            .ok_or_else(|| Fatal(format!("no vocabulary given: pass --vocab or set {VOCAB_ENV}")))?;
        VocabularyGraph::from_path(&path).map_err(Fatal::from)
    }

    fn json<T: Serialize>(&mut self, value: &T) -> Result<(), Fatal> {
        let text = serde_json::to_string_pretty(value)?;
        writeln!(self.out, "{text}")?;
        Ok(())
    }
}

fn read_text(path: &Path) -> Result<String, Fatal> {
    let bytes = fs::read(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    Ok(decode_html(&bytes).0)
}

fn read_spec(path: &Path) -> Result<DomainSpecification, Fatal> {
    parse_domain_spec_str(&read_text(path)?).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn read_spec_dir(dir: &Path) -> Result<Vec<DomainSpecification>, Fatal> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Fatal(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Fatal(format!("{}: no .json specification files", dir.display())));
    }
    files.iter().map(|f| read_spec(f)).collect()
}

fn load_specs(src: &SpecSource) -> Result<Vec<DomainSpecification>, Fatal> {
    match (&src.ds, &src.ds_dir) {
        (Some(file), _) => Ok(vec![read_spec(file)?]),
        (None, Some(dir)) => read_spec_dir(dir),
        (None, None) => Ok(bundled::all()),
    }
}

fn write_output(ctx: &mut Ctx, output: Option<&Path>, text: &str) -> Result<(), Fatal> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Fatal(format!("{}: {e}", path.display()))),
        None => {
            ctx.out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn vocab_info(ctx: &mut Ctx, file: &Path, format: Option<Format>) -> CmdResult {
    let graph = VocabularyGraph::from_path(file)?;
    let datatypes = graph.classes().filter(|c| c.is_datatype).count();
    match ctx.format(format) {
        Format::Json => ctx.json(&json!({
            "classes": graph.class_count(),
            "datatypes": datatypes,
            "properties": graph.property_count(),
            "skipped_entries": graph.skipped_entries(),
            "warnings": graph.load_warnings(),
        }))?,
        Format::Text => {
            writeln!(ctx.out, "classes:    {} ({datatypes} datatypes)", graph.class_count())?;
            writeln!(ctx.out, "properties: {}", graph.property_count())?;
            writeln!(
                ctx.out,
                "skipped:    {} (enumeration members and other entries)",
                graph.skipped_entries()
            )?;
            writeln!(ctx.out, "warnings:   {}", graph.load_warnings().len())?;
            for w in graph.load_warnings() {
                writeln!(ctx.out, "  {:?} {}: {}", w.kind, w.term, w.detail)?;
            }
        }
    }
    Ok(ExitStatus::Success)
}

fn ds_check(ctx: &mut Ctx, file: &Path, vocab: &VocabArg, strict: bool, format: Option<Format>) -> CmdResult {
    let spec = read_spec(file)?;
    let graph = ctx.graph(vocab)?;
    let mode = if strict { CheckMode::Strict } else { CheckMode::Lenient };
    let report = check_domain_spec(&spec, &graph, mode);
    match ctx.format(format) {
        Format::Json => ctx.json(&report)?,
        Format::Text => {
            writeln!(
                ctx.out,
                "{}: {} ({} issues)",
                report.spec,
                if report.passed { "passed" } else { "failed" },
                report.issues.len()
            )?;
            for i in &report.issues {
                writeln!(ctx.out, "  {} {} [{}] {}", i.code, i.severity, i.code.title(), i.detail)?;
            }
        }
    }
    Ok(if report.passed {
        ExitStatus::Success
    } else {
        ExitStatus::Failures
    })
}

fn ds_diff(ctx: &mut Ctx, a: &Path, b: &Path, format: Option<Format>) -> CmdResult {
    let diff = diff_domain_specs(&read_spec(a)?, &read_spec(b)?);
    match ctx.format(format) {
        Format::Json => ctx.json(&diff)?,
        Format::Text => {
            for p in &diff.added {
                writeln!(ctx.out, "+ {p}")?;
            }
            for p in &diff.removed {
                writeln!(ctx.out, "- {p}")?;
            }
            for c in &diff.changed {
                writeln!(ctx.out, "~ {}: {}", c.property, c.what)?;
            }
        }
    }
    Ok(ExitStatus::Success)
}

fn print_report_text(out: &mut dyn Write, r: &ValidationReport) -> io::Result<()> {
    match &r.spec {
        None => writeln!(out, "{}: no matching domain specification", r.source),
        Some(spec) => {
            writeln!(
                out,
                "{}: {} against {spec} (completeness {:.3})",
                r.source,
                if r.valid { "valid" } else { "INVALID" },
                r.completeness
            )?;
            for i in &r.issues {
                writeln!(out, "  {} {:<7} {:<28} {}", i.code, i.severity, i.path, i.message)?;
            }
            Ok(())
        }
    }
}

fn annotation_blocks(path: &Path, text: String) -> (Vec<String>, Vec<String>) {
    let is_html = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("html") || e.eq_ignore_ascii_case("htm"));
    if is_html {
        let ex = extract_jsonld_blocks(&text);
        (ex.blocks.into_iter().map(|b| b.raw).collect(), ex.warnings)
    } else {
        (vec![text], Vec::new())
    }
}

fn validate(
    ctx: &mut Ctx,
    files: &[PathBuf],
    specs: &SpecSource,
    vocab: &VocabArg,
    format: Option<Format>,
    exact: bool,
) -> CmdResult {
    let specs = load_specs(specs)?;
    let graph = ctx.graph(vocab)?;
    let options = ValidationOptions::default();
    let mut reports = Vec::new();
    let mut broken = false;
    for file in files {
        let label = file.display().to_string();
        let (blocks, warnings) = annotation_blocks(file, read_text(file)?);
        for w in warnings {
            writeln!(ctx.err, "{label}: {w}")?;
        }
        for (i, raw) in blocks.iter().enumerate() {
            match parse_annotation_block(raw, &label, i) {
                Ok(doc) => {
                    let doc = resolve_references(&doc);
                    reports.extend(validate_document(&doc, &specs, &graph, &options, !exact));
                }
                Err(e) => {
                    writeln!(ctx.err, "{label}: block {i}: {e}")?;
                    broken = true;
                }
            }
        }
    }
    match ctx.format(format) {
        Format::Json => ctx.json(&reports)?,
        Format::Text => {
            for r in &reports {
                print_report_text(ctx.out, r)?;
            }
        }
    }
    for r in reports.iter().filter(|r| !r.is_matched()) {
        writeln!(ctx.err, "{}: no domain specification matches this annotation", r.source)?;
    }
    Ok(if broken {
        ExitStatus::Error
    } else if reports.iter().all(|r| r.is_matched() && r.valid) {
        ExitStatus::Success
    } else {
        ExitStatus::Failures
    })
}

fn template(ctx: &mut Ctx, file: &Path, type_name: &str, output: Option<&Path>) -> CmdResult {
    let spec = read_spec(file)?;
    let doc =
        generate_template(&spec, type_name).map_err(|e| Fatal(format!("{e}: not a domain type of `{}`", spec.name)))?;
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    write_output(ctx, output, &text)?;
    Ok(ExitStatus::Success)
}

fn extract(ctx: &mut Ctx, file: &Path, format: Option<Format>) -> CmdResult {
    let ex = extract_jsonld_blocks(&read_text(file)?);
    for w in &ex.warnings {
        writeln!(ctx.err, "{}: {w}", file.display())?;
    }
    match ctx.format(format) {
        Format::Json => {
            let blocks: Vec<_> = ex
                .blocks
                .iter()
                .map(|b| json!({"block_index": b.block_index, "raw": b.raw}))
                .collect();
            ctx.json(&blocks)?;
        }
        Format::Text => {
            for b in &ex.blocks {
                writeln!(ctx.out, "{}", b.raw.trim())?;
            }
        }
    }
    Ok(ExitStatus::Success)
}

fn report(
    ctx: &mut Ctx,
    dir: &Path,
    ds_dir: Option<&Path>,
    vocab: &VocabArg,
    output: Option<&Path>,
    jobs: usize,
) -> CmdResult {
    let specs = match ds_dir {
        Some(d) => read_spec_dir(d)?,
        None => bundled::all(),
    };
    let graph = ctx.graph(vocab)?;
    let options = ScanOptions {
        parallelism: jobs,
        ..ScanOptions::default()
    };
    let corpus = scan_corpus(&[dir.to_path_buf()], &specs, &graph, &options)?;
    for m in &corpus.messages {
        writeln!(ctx.err, "{}: {} {}", m.path, m.severity, m.message)?;
    }
    write_output(ctx, output, &corpus.to_json())?;
    let s = &corpus.stats;
    writeln!(
        ctx.err,
        "{} documents, {} blocks, {} annotations ({} unmatched, {} invalid), mean completeness {:.3}",
        s.documents_scanned,
        s.blocks_found,
        s.annotations_validated,
        s.unmatched_annotations,
        s.invalid_count,
        s.mean_completeness
    )?;
    Ok(if s.invalid_count == 0 {
        ExitStatus::Success
    } else {
        ExitStatus::Failures
    })
}

fn dispatch(ctx: &mut Ctx, cli: Cli) -> CmdResult {
    match cli.command {
        Command::Vocab {
            command: VocabCommand::Info { vocab_file, format },
        } => vocab_info(ctx, &vocab_file, format),
        Command::Ds { command } => match command {
            DsCommand::Check {
                ds_file,
                vocab,
                strict,
                format,
            } => ds_check(ctx, &ds_file, &vocab, strict, format),
            DsCommand::Scaffold {
                type_name,
                vocab,
                direct_only,
                output,
            } => {
                let graph = ctx.graph(&vocab)?;
                let spec = scaffold_domain_spec(&graph, &type_name, !direct_only)?;
                write_output(ctx, output.as_deref(), &to_json_string(&spec))?;
                Ok(ExitStatus::Success)
            }
            DsCommand::Diff { a, b, format } => ds_diff(ctx, &a, &b, format),
        },
        Command::Validate {
            files,
            specs,
            vocab,
            format,
            exact,
        } => validate(ctx, &files, &specs, &vocab, format, exact),
        Command::Template {
            ds_file,
            type_name,
            output,
        } => template(ctx, &ds_file, &type_name, output.as_deref()),
        Command::Extract { html_file, format } => extract(ctx, &html_file, format),
        Command::Report {
            dir,
            ds_dir,
            vocab,
            output,
            jobs,
        } => report(ctx, &dir, ds_dir.as_deref(), &vocab, output.as_deref(), jobs),
    }
}

/// Runs one invocation with explicit output streams and environment.
///
/// `default_format` applies when a command is not given `--format`;
/// `env_vocab` stands in for the `DSFORGE_VOCAB` variable.
pub fn run_with(
    argv: &[String],
    out: &mut dyn Write,
    err: &mut dyn Write,
    default_format: Format,
    env_vocab: Option<PathBuf>,
) -> ExitStatus {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    ExitStatus::Success
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    ExitStatus::Error
                }
            };
        }
    };
    let mut ctx = Ctx {
        out,
        err,
        default_format,
        env_vocab,
    };
    match dispatch(&mut ctx, cli) {
        Ok(status) => status,
        Err(Fatal(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            ExitStatus::Error
        }
    }
}

/// Entry point for the binary: real stdio, `DSFORGE_VOCAB` from the
/// environment, text output on terminals and JSON otherwise.
pub fn run(argv: &[String]) -> ExitStatus {
    let stdout = io::stdout();
    let default_format = if stdout.is_terminal() {
        Format::Text
    } else {
        Format::Json
    };
    let env_vocab = std::env::var_os(VOCAB_ENV).map(PathBuf::from);
    let mut out = stdout.lock();
    let mut err = io::stderr().lock();
    let status = run_with(argv, &mut out, &mut err, default_format, env_vocab);
    let _ = out.flush();
    status
}
