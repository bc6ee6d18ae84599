use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use symlint_core::corpus::{
    assemble_with, read_manifest, stratified_sample, write_manifest, ManifestEntry, PostBundle, PostStream,
    Selection,
};
use symlint_core::error::CorpusError;
use symlint_core::report::{build_report, render, ReportFormat, ReportInput};
use symlint_core::resolver::ConfirmOptions;
use symlint_core::ruleset::{apply_overrides, builtin_ruleset, Overrides};
use symlint_core::{CipherSite, Finding, KeySizeSite, ScanOptions, Scanner, SourceText, Status};

const EXIT_FINDINGS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;

/// Scan Java snippets and Q&A dumps for symmetric-encryption API misuse.
#[derive(Debug, Parser)]
#[command(name = "symlint", version)]
struct Cli {
    /// Print per-item diagnostics to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply the corpus filter to a Posts.xml dump and write a manifest.
    Filter {
        /// Posts.xml data dump.
        dump: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw the stratified sample from a manifest.
    Sample {
        manifest: PathBuf,
        /// Total sample size, split 40/30/30 across recent, top-score and random.
        #[arg(short = 'n', long)]
        size: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Scan a dump (optionally restricted by a manifest) or source files.
    Scan {
        /// `.xml` dumps, `.jsonl` manifests, `.java` sources or answer texts.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Restrict a dump scan to the posts listed in this manifest.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[command(flatten)]
        rules: RuleArgs,
        /// Exit 1 when needs_review findings exist, too.
        #[arg(long)]
        fail_on_review: bool,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(short, long, env = "SYMLINT_JOBS")]
        jobs: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Audit one answer text (markdown fences or inline code) and print findings
    /// as `file#block:line:col`, with lines counted within each code block.
    Audit {
        file: PathBuf,
        #[command(flatten)]
        rules: RuleArgs,
        #[arg(long)]
        fail_on_review: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Aggregate scan output into report tables.
    Report {
        /// JSONL output of `scan`.
        findings: PathBuf,
        manifest: PathBuf,
        /// json, csv or markdown.
        #[arg(long, env = "SYMLINT_FORMAT", default_value = "json")]
        format: ReportFormat,
        #[command(flatten)]
        rules: RuleArgs,
        /// Timestamp to embed; omitted by default so output is reproducible.
        #[arg(long)]
        generated_at: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, clap::Args)]
struct RuleArgs {
    /// Rule overrides file (`R-02-b: disabled`, `R-01.severity: insecure`).
    #[arg(long = "rules")]
    rules: Option<PathBuf>,
    /// Confirm constants even when nothing else in the section uses them.
    #[arg(long)]
    strict_context: bool,
}

/// One line of `scan` output.
#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum ScanRecord {
    Finding(Finding),
    CipherSite(CipherSite),
    KeySize(KeySizeSite),
}

enum Failure {
    Usage(String),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let verbose = cli.verbose > 0;
    let result = match cli.command {
        Command::Filter { dump, output } => filter(&dump, output.as_deref()),
        Command::Sample { manifest, size, seed, output } => sample(&manifest, size, seed, output.as_deref()),
        Command::Scan { inputs, manifest, rules, fail_on_review, jobs, output } => {
            scan(&inputs, manifest.as_deref(), &rules, fail_on_review, jobs, output.as_deref(), verbose)
        }
        Command::Audit { file, rules, fail_on_review, output } => {
            audit(&file, &rules, fail_on_review, output.as_deref(), verbose)
        }
        Command::Report { findings, manifest, format, rules, generated_at, output } => {
            report(&findings, &manifest, format, &rules, generated_at, output.as_deref())
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

/// Writes all of `bytes` or nothing: files go through a temp file in the
/// target directory that is renamed into place.
fn write_output(path: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match path {
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
        Some(path) => {
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)
                .with_context(|| format!("creating temp file in {}", dir.display()))?;
            tmp.write_all(bytes)?;
            tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(())
}

fn open_dump(path: &Path) -> Result<PostStream<BufReader<File>>, CorpusError> {
    Ok(PostStream::new(BufReader::with_capacity(256 * 1024, File::open(path)?)))
}

fn load_bundles(dump: &Path, selection: Selection<'_>) -> anyhow::Result<Vec<PostBundle>> {
    let asm = assemble_with(|| open_dump(dump), selection).with_context(|| format!("reading {}", dump.display()))?;
    for d in &asm.diagnostics {
        eprintln!("warning: {d}");
    }
    Ok(asm.bundles)
}

fn load_manifest(path: &Path) -> anyhow::Result<Vec<ManifestEntry>> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_manifest(BufReader::new(f)).with_context(|| format!("reading {}", path.display()))
}

fn load_scanner(args: &RuleArgs) -> anyhow::Result<Scanner> {
    let mut rules = builtin_ruleset();
    if let Some(path) = &args.rules {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let overrides = Overrides::parse(&text).with_context(|| format!("in {}", path.display()))?;
        rules = apply_overrides(&rules, &overrides).with_context(|| format!("in {}", path.display()))?;
    }
    Scanner::new(rules).map_err(|diags| {
        let msgs: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
        anyhow!("invalid ruleset: {}", msgs.join("; "))
    })
}

fn scan_options(args: &RuleArgs) -> ScanOptions {
    ScanOptions { confirm: ConfirmOptions { strict_context: args.strict_context }, ..Default::default() }
}

fn filter(dump: &Path, output: Option<&Path>) -> Outcome {
    let bundles = load_bundles(dump, Selection::CorpusFilter)?;
    let entries: Vec<ManifestEntry> = bundles.iter().map(ManifestEntry::from).collect();
    let mut buf = Vec::new();
    write_manifest(&mut buf, &entries).map_err(anyhow::Error::from)?;
    write_output(output, &buf)?;
    eprintln!("filter: retained {} posts", entries.len());
    Ok(0)
}

fn sample(manifest: &Path, n: usize, seed: u64, output: Option<&Path>) -> Outcome {
    let entries = load_manifest(manifest)?;
    let picked = match stratified_sample(&entries, n, seed) {
        Ok(s) => s,
        Err(e @ CorpusError::SampleTooLarge { .. }) => return Err(Failure::Usage(e.to_string())),
        Err(e) => return Err(Failure::Input(e.into())),
    };
    for d in &picked.diagnostics {
        eprintln!("warning: {d}");
    }
    let out: Vec<ManifestEntry> = picked
        .picks
        .into_iter()
        .map(|(stratum, mut e)| {
            e.stratum = Some(stratum);
            e
        })
        .collect();
    let mut buf = Vec::new();
    write_manifest(&mut buf, &out).map_err(anyhow::Error::from)?;
    write_output(output, &buf)?;
    Ok(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum InputKind {
    Dump,
    Manifest,
    Java,
    Text,
}

fn input_kind(path: &Path) -> InputKind {
    match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
        Some("xml") => InputKind::Dump,
        Some("jsonl") | Some("ndjson") => InputKind::Manifest,
        Some("java") => InputKind::Java,
        _ => InputKind::Text,
    }
}

fn scan(
    inputs: &[PathBuf],
    manifest: Option<&Path>,
    rules: &RuleArgs,
    fail_on_review: bool,
    jobs: Option<usize>,
    output: Option<&Path>,
    verbose: bool,
) -> Outcome {
    let scanner = load_scanner(rules)?;
    let opts = scan_options(rules);
    let mut manifests: Vec<&Path> = manifest.into_iter().collect();
    manifests.extend(inputs.iter().filter(|p| input_kind(p) == InputKind::Manifest).map(PathBuf::as_path));
    let dumps: Vec<&Path> = inputs.iter().filter(|p| input_kind(p) == InputKind::Dump).map(PathBuf::as_path).collect();
    if !manifests.is_empty() && dumps.is_empty() {
        return Err(Failure::Usage("a manifest holds no post bodies; pass the dump it was built from".into()));
    }
    let ids: Option<HashSet<u64>> = if manifests.is_empty() {
        None
    } else {
        let mut ids = HashSet::new();
        for m in &manifests {
            ids.extend(load_manifest(m)?.into_iter().map(|e| e.id));
        }
        Some(ids)
    };

    let mut sources: Vec<SourceText> = Vec::new();
    for path in inputs {
        match input_kind(path) {
            InputKind::Manifest => {}
            InputKind::Dump => {
                let selection = ids.as_ref().map_or(Selection::CorpusFilter, Selection::Ids);
                let bundles = load_bundles(path, selection)?;
                if let Some(ids) = &ids {
                    if bundles.len() < ids.len() {
                        eprintln!("warning: {} manifest posts not found in {}", ids.len() - bundles.len(), path.display());
                    }
                }
                sources.extend(bundles.iter().flat_map(PostBundle::sources));
            }
            kind => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let id = path.display().to_string();
                sources.push(if kind == InputKind::Java { SourceText::plain(text, id) } else { SourceText::fenced(text, id) });
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    // Indexed collect keeps input order whatever the job count.
    let scans: Vec<_> = pool.install(|| sources.par_iter().map(|s| scanner.scan_text(s, opts)).collect());

    let mut buf = Vec::new();
    let (mut confirmed, mut review) = (0usize, 0usize);
    for scan in scans {
        if verbose {
            for w in &scan.warnings {
                eprintln!("{}: {}", w.source_id, w.message);
            }
            for d in &scan.diagnostics {
                eprintln!("{d}");
            }
        }
        for f in scan.findings {
            confirmed += usize::from(f.status == Status::Confirmed);
            review += usize::from(f.status == Status::NeedsReview);
            push_record(&mut buf, &ScanRecord::Finding(f));
        }
        for s in scan.cipher_sites {
            push_record(&mut buf, &ScanRecord::CipherSite(s));
        }
        for k in scan.key_sizes {
            push_record(&mut buf, &ScanRecord::KeySize(k));
        }
    }
    write_output(output, &buf)?;
    eprintln!("scan: {} sources, {confirmed} confirmed, {review} needs review", sources.len());
    Ok(exit_for(confirmed, review, fail_on_review))
}

fn push_record(buf: &mut Vec<u8>, rec: &ScanRecord) {
    serde_json::to_writer(&mut *buf, rec).expect("record serializes");
    buf.push(b'\n');
}

fn exit_for(confirmed: usize, review: usize, fail_on_review: bool) -> u8 {
    if confirmed > 0 || (fail_on_review && review > 0) {
        EXIT_FINDINGS
    } else {
        0
    }
}

fn audit(file: &Path, rules: &RuleArgs, fail_on_review: bool, output: Option<&Path>, verbose: bool) -> Outcome {
    let scanner = load_scanner(rules)?;
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let name = file.display().to_string();
    let scan = scanner.scan_text(&SourceText::fenced(text, name.clone()), scan_options(rules));
    for w in &scan.warnings {
        eprintln!("warning: {}: {}", w.source_id, w.message);
    }
    if verbose {
        for d in &scan.diagnostics {
            eprintln!("{d}");
        }
    }
    let mut out = String::new();
    let (mut confirmed, mut review) = (0usize, 0usize);
    for f in &scan.findings {
        match f.status {
            Status::Confirmed => confirmed += 1,
            Status::NeedsReview => review += 1,
            Status::Dismissed if !verbose => continue,
            Status::Dismissed => {}
        }
        out.push_str(&format!(
            "{name}#{}:{}:{}: {} [{}] {}: {}",
            f.snippet_index + 1,
            f.line,
            f.column,
            f.rule_id,
            f.severity,
            f.status.as_str(),
            f.matched_text.lines().next().unwrap_or("").trim()
        ));
        if !f.evidence.is_empty() {
            out.push_str(&format!(" ({})", f.evidence));
        }
        out.push('\n');
    }
    out.push_str(&format!("{confirmed} confirmed, {review} needs review\n"));
    write_output(output, out.as_bytes())?;
    Ok(exit_for(confirmed, review, fail_on_review))
}

fn read_scan_records(path: &Path) -> anyhow::Result<(Vec<Finding>, Vec<CipherSite>, Vec<KeySizeSite>)> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let (mut findings, mut sites, mut keys) = (Vec::new(), Vec::new(), Vec::new());
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: ScanRecord = serde_json::from_str(&line)
            .with_context(|| format!("{} line {}", path.display(), i + 1))?;
        match rec {
            ScanRecord::Finding(f) => findings.push(f),
            ScanRecord::CipherSite(s) => sites.push(s),
            ScanRecord::KeySize(k) => keys.push(k),
        }
    }
    Ok((findings, sites, keys))
}

fn report(
    findings: &Path,
    manifest: &Path,
    format: ReportFormat,
    rules: &RuleArgs,
    generated_at: Option<String>,
    output: Option<&Path>,
) -> Outcome {
    let scanner = load_scanner(rules)?;
    let posts = load_manifest(manifest)?;
    let (findings, sites, keys) = read_scan_records(findings)?;
    let catalog: Vec<String> = scanner.ruleset().active().map(|r| r.id.clone()).collect();
    let report = build_report(ReportInput {
        posts: &posts,
        findings: &findings,
        cipher_sites: &sites,
        key_sizes: &keys,
        catalog: &catalog,
        ruleset_version: &scanner.ruleset().version,
        generated_at,
    })
    .map_err(anyhow::Error::from)?;
    write_output(output, &render(&report, format))?;
    Ok(0)
}
