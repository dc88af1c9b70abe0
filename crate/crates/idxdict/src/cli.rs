//! Command-line surface: dictionary lifecycle, compress/decompress, and a
//! size-comparison report.
//!
//! Exit codes: 0 success, 2 usage, 3 I/O, 4 dictionary errors, 5 codec
//! errors.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::codec::{self, CodecError, CompressedContainer};
use crate::dictionary::{Dictionary, DictionaryError};

#[derive(Parser, Debug)]
#[command(
    name = "idxdict",
    version,
    about = "Compress text files against a shared, append-only word dictionary"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Create, inspect, or export dictionary files
    #[command(subcommand)]
    Dict(DictAction),
    /// Compress a file, growing the dictionary as needed
    Compress {
        /// File to compress
        input: PathBuf,
        /// Dictionary file; updated in place with any new words
        #[arg(long)]
        dict: PathBuf,
        /// Destination for the compressed container
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Restore the original file from a compressed container
    Decompress {
        /// Compressed container to read
        input: PathBuf,
        /// Dictionary the input was compressed against (same id, seq not older)
        #[arg(long)]
        dict: PathBuf,
        /// Destination for the restored bytes
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Report compressed sizes for a corpus, with optional external baselines
    Bench {
        /// Files to compress (the dictionary file is left untouched)
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Dictionary to compress against
        #[arg(long)]
        dict: PathBuf,
        /// Extra row as LABEL=BYTES, e.g. gzip=274 (single-file corpus only)
        #[arg(long = "external", value_name = "LABEL=BYTES", value_parser = parse_external)]
        externals: Vec<(String, u64)>,
    },
}

#[derive(Subcommand, Debug)]
enum DictAction {
    /// Write a fresh empty dictionary with a random id
    Init {
        #[arg(long)]
        dict: PathBuf,
        /// Replace the file if it already exists
        #[arg(long)]
        overwrite: bool,
    },
    /// Print entry counts and bucket occupancy
    Stats {
        #[arg(long)]
        dict: PathBuf,
    },
    /// Print every entry in the dictionary file format
    Export {
        #[arg(long)]
        dict: PathBuf,
    },
}

fn parse_external(arg: &str) -> Result<(String, u64), String> {
    let (label, size) = arg
        .split_once('=')
        .ok_or_else(|| format!("{arg:?} is not LABEL=BYTES"))?;
    if label.is_empty() {
        return Err(format!("{arg:?} has an empty label"));
    }
    let size = size
        .parse()
        .map_err(|_| format!("{size:?} is not a byte count"))?;
    Ok((label.to_string(), size))
}

/// Command failures, one variant per exit-code class.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Dictionary(DictionaryError),
    #[error(transparent)]
    Codec(#[from] CodecError),
}

impl CliError {
    pub fn class(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Dictionary(_) => "dictionary",
            CliError::Codec(_) => "codec",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Dictionary(_) => 4,
            CliError::Codec(_) => 5,
        }
    }
}

impl From<DictionaryError> for CliError {
    fn from(e: DictionaryError) -> Self {
        match e {
            DictionaryError::Io(io) => CliError::Io(io.to_string()),
            other => CliError::Dictionary(other),
        }
    }
}

fn io_at(path: &Path) -> impl Fn(io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

fn stdout_err(e: io::Error) -> CliError {
    CliError::Io(format!("stdout: {e}"))
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(io_at(path))
}

fn write_file_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_at(path))?;
    tmp.write_all(bytes).map_err(io_at(path))?;
    tmp.persist(path).map_err(|e| io_at(path)(e.error))?;
    Ok(())
}

fn load_dict(path: &Path) -> Result<Dictionary, CliError> {
    Dictionary::load(path).map_err(|e| match e {
        DictionaryError::Io(io) => CliError::Io(format!("{}: {io}", path.display())),
        other => CliError::Dictionary(other),
    })
}

fn save_dict(dict: &Dictionary, path: &Path) -> Result<(), CliError> {
    dict.save(path).map_err(|e| match e {
        DictionaryError::Io(io) => CliError::Io(format!("{}: {io}", path.display())),
        other => CliError::Dictionary(other),
    })
}

fn cmd_dict_init(path: &Path, overwrite: bool, out: &mut dyn Write) -> Result<(), CliError> {
    if path.exists() && !overwrite {
        return Err(CliError::Io(format!(
            "{}: already exists (pass --overwrite to replace it)",
            path.display()
        )));
    }
    let dict = Dictionary::new();
    save_dict(&dict, path)?;
    writeln!(out, "initialized {} with id {:016x}", path.display(), dict.id())
        .map_err(stdout_err)
}

fn cmd_dict_stats(path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let stats = load_dict(path)?.stats();
    let mut text = String::new();
    let _ = writeln!(text, "id:      {:016x}", stats.id);
    let _ = writeln!(text, "seq:     {}", stats.seq);
    let _ = writeln!(
        text,
        "main:    {} entries in {} buckets",
        stats.main_entries,
        stats.main_buckets.len()
    );
    for (ic, nc, count) in &stats.main_buckets {
        let _ = writeln!(text, "  {}/{nc}: {count}", (b'a' + ic - 1) as char);
    }
    let _ = writeln!(text, "short:   {} entries", stats.short_entries);
    let _ = writeln!(
        text,
        "special: {} entries in {} buckets",
        stats.special_entries,
        stats.special_buckets.len()
    );
    for (nc, count) in &stats.special_buckets {
        let _ = writeln!(text, "  {nc}: {count}");
    }
    out.write_all(text.as_bytes()).map_err(stdout_err)
}

fn cmd_dict_export(path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    load_dict(path)?.write_to(out).map_err(stdout_err)
}

fn cmd_compress(
    input: &Path,
    dict_path: &Path,
    output: &Path,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let mut dict = load_dict(dict_path)?;
    let seq_before = dict.seq();
    let data = read_file(input)?;
    let container = codec::compress(&data, &mut dict)?;
    // The dictionary lands first: a grown dictionary without the container
    // is harmless, the reverse is undecodable.
    save_dict(&dict, dict_path)?;
    write_file_atomic(output, &container.to_bytes())?;

    let mut text = format!(
        "compressed {} ({} bytes) -> {} ({} bytes, {} frames)\n",
        input.display(),
        data.len(),
        output.display(),
        container.byte_len(),
        container.frame_count
    );
    if !data.is_empty() {
        let m = codec::metrics(data.len() as u64, container.byte_len() as u64)?;
        let _ = writeln!(
            text,
            "ratio {:.4}, saved {:.2}%",
            m.compression_ratio, m.compressed_percent
        );
    }
    let _ = writeln!(
        text,
        "dictionary {}: seq {seq_before} -> {}",
        dict_path.display(),
        dict.seq()
    );
    out.write_all(text.as_bytes()).map_err(stdout_err)
}

fn cmd_decompress(
    input: &Path,
    dict_path: &Path,
    output: &Path,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let dict = load_dict(dict_path)?;
    let bytes = read_file(input)?;
    let container = CompressedContainer::from_bytes(&bytes)?;
    let original = codec::decompress(&container, &dict)?;
    write_file_atomic(output, &original)?;
    writeln!(
        out,
        "decompressed {} -> {} ({} bytes)",
        input.display(),
        output.display(),
        original.len()
    )
    .map_err(stdout_err)
}

/// One line of a [`BenchReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub label: String,
    pub original_size: u64,
    pub compressed_size: u64,
    pub compressed_percent: f64,
    pub compression_ratio: f64,
}

impl BenchRow {
    /// Builds a row, deriving percent and ratio from the two sizes.
    pub fn new(
        label: impl Into<String>,
        original_size: u64,
        compressed_size: u64,
    ) -> Result<Self, CodecError> {
        let m = codec::metrics(original_size, compressed_size)?;
        Ok(Self {
            label: label.into(),
            original_size,
            compressed_size,
            compressed_percent: m.compressed_percent,
            compression_ratio: m.compression_ratio,
        })
    }
}

/// Size comparison across files and external baselines.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// Formats the rows as an aligned text table.
    pub fn render(&self) -> String {
        const HEADERS: [&str; 5] = ["label", "original", "compressed", "compressed%", "ratio"];
        let cells: Vec<[String; 5]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.label.clone(),
                    r.original_size.to_string(),
                    r.compressed_size.to_string(),
                    format!("{:.2}", r.compressed_percent),
                    format!("{:.4}", r.compression_ratio),
                ]
            })
            .collect();
        let mut widths = HEADERS.map(str::len);
        for row in &cells {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let mut emit = |row: [&str; 5]| {
            let _ = writeln!(
                out,
                "{:<w0$}  {:>w1$}  {:>w2$}  {:>w3$}  {:>w4$}",
                row[0],
                row[1],
                row[2],
                row[3],
                row[4],
                w0 = widths[0],
                w1 = widths[1],
                w2 = widths[2],
                w3 = widths[3],
                w4 = widths[4],
            );
        };
        emit(HEADERS);
        for row in &cells {
            emit([&row[0], &row[1], &row[2], &row[3], &row[4]]);
        }
        out
    }
}

fn cmd_bench(
    files: &[PathBuf],
    dict_path: &Path,
    externals: &[(String, u64)],
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if !externals.is_empty() && files.len() != 1 {
        return Err(CliError::Usage(
            "--external rows need a single-file corpus to compare against".to_string(),
        ));
    }
    let mut dict = load_dict(dict_path)?;
    let mut report = BenchReport::default();
    let mut last_original = None;
    for path in files {
        let data = read_file(path)?;
        if data.is_empty() {
            eprintln!("warning: skipping empty file {}", path.display());
            continue;
        }
        let container = codec::compress(&data, &mut dict)?;
        let label = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        report
            .rows
            .push(BenchRow::new(label, data.len() as u64, container.byte_len() as u64)?);
        last_original = Some(data.len() as u64);
    }
    if !externals.is_empty() {
        let original = last_original.ok_or_else(|| {
            CliError::Usage("--external rows need a non-empty corpus file".to_string())
        })?;
        for (label, size) in externals {
            report.rows.push(BenchRow::new(label.clone(), original, *size)?);
        }
    }
    out.write_all(report.render().as_bytes()).map_err(stdout_err)
}

/// Executes a parsed command, writing normal output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Dict(DictAction::Init { dict, overwrite }) => {
            cmd_dict_init(&dict, overwrite, out)
        }
        Command::Dict(DictAction::Stats { dict }) => cmd_dict_stats(&dict, out),
        Command::Dict(DictAction::Export { dict }) => cmd_dict_export(&dict, out),
        Command::Compress { input, dict, output } => cmd_compress(&input, &dict, &output, out),
        Command::Decompress { input, dict, output } => {
            cmd_decompress(&input, &dict, &output, out)
        }
        Command::Bench { files, dict, externals } => cmd_bench(&files, &dict, &externals, out),
    }
}

/// Binary entry point; parses arguments, runs, and maps errors to exit codes.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli, &mut io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error[{}]: {err}", err.class());
            ExitCode::from(err.exit_code())
        }
    }
}
