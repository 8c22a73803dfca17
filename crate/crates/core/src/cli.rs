//! Command-line front end.
//!
//! Data goes to stdout (or `--out`), diagnostics and run metadata to stderr.
//! Every number is printed with four decimals so output is byte-stable.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::codec::{self, fixed4, CodecConfig, Codec, MetricsRow};
use crate::error::{Error, Result};
use crate::imageio::{self, GrayImage};
use crate::kernels::{self, Family};
use crate::opbench;
use crate::zonal2d::{self, Block8};

#[derive(Debug, Parser)]
#[command(name = "pdct", version, about = "Pruned approximate DCT transforms and compression benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transform one 8-sample vector or one 8×8 block and print coefficients.
    Transform(TransformArgs),
    /// Compress a PGM image and print its metrics.
    Compress(CompressArgs),
    /// Print the operation-count table as CSV.
    BenchComplexity(BenchComplexityArgs),
    /// Run every transform over a directory of PGM images.
    BenchCorpus(BenchCorpusArgs),
    /// Report low-frequency energy compaction of PGM images.
    Energy(EnergyArgs),
}

#[derive(Debug, Args)]
struct TransformArgs {
    /// Registry name: exact-dct, sdct, rdct, modified-rdct or pruned.
    #[arg(long, default_value = "modified-rdct")]
    transform: String,
    /// Keep only the four lowest-frequency outputs per dimension.
    #[arg(long)]
    pruned: bool,
    /// Apply the scaling diagonal (orthonormal output).
    #[arg(long)]
    scaled: bool,
    /// Eight comma-separated samples.
    #[arg(long, conflicts_with = "block", required_unless_present = "block", allow_hyphen_values = true)]
    vector: Option<String>,
    /// Sixty-four comma-separated samples, row-major.
    #[arg(long, allow_hyphen_values = true)]
    block: Option<String>,
}

#[derive(Debug, Args)]
struct CompressArgs {
    /// Input binary PGM.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value = "modified-rdct")]
    transform: String,
    #[arg(long)]
    pruned: bool,
    /// Subtract 128 before transforming.
    #[arg(long)]
    level_shift: bool,
    /// Write the reconstructed image here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchComplexityArgs {
    /// Print percentage savings of the pruned transform instead.
    #[arg(long)]
    savings: bool,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchCorpusArgs {
    /// Directory of .pgm files.
    #[arg(long)]
    dir: PathBuf,
    /// Transforms to run (repeatable); all families by default.
    #[arg(long = "transform")]
    transforms: Vec<String>,
    #[arg(long)]
    level_shift: bool,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EnergyArgs {
    /// Input PGM files (repeatable).
    #[arg(long = "in")]
    inputs: Vec<PathBuf>,
    /// Directory of .pgm files.
    #[arg(long)]
    dir: Option<PathBuf>,
    #[arg(long, default_value = "modified-rdct")]
    transform: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let line = msg.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(stderr, "pdct: {}", line.trim_start_matches("error: ").trim());
            return 2;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "pdct: {e}");
            1
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Transform(a) => transform(a, stdout, stderr),
        Command::Compress(a) => compress(a, stdout, stderr),
        Command::BenchComplexity(a) => bench_complexity(a, stdout),
        Command::BenchCorpus(a) => bench_corpus(a, stdout, stderr),
        Command::Energy(a) => energy(a, stdout),
    }
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn parse_samples(s: &str, n: usize) -> Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::InvalidArgument(format!("bad sample `{t}`")))
        })
        .collect::<Result<_>>()?;
    if v.len() != n {
        return Err(Error::InvalidArgument(format!("expected {n} samples, got {}", v.len())));
    }
    Ok(v)
}

fn join4(values: impl IntoIterator<Item = f64>) -> String {
    values.into_iter().map(fixed4).collect::<Vec<_>>().join(",")
}

fn transform(a: TransformArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let spec = kernels::lookup(&a.transform)?;
    let spec = if a.pruned { spec.pruned() } else { spec };
    let mut text = String::new();
    let count;
    if let Some(v) = a.vector {
        let x: [f64; 8] = parse_samples(&v, 8)?.try_into().expect("length checked");
        let (y, c) = spec.forward(x);
        count = c;
        let y = y.iter().enumerate().map(|(k, &v)| if a.scaled { v * spec.scaling()[k] } else { v });
        text.push_str(&join4(y));
        text.push('\n');
    } else {
        let s = parse_samples(a.block.as_deref().unwrap_or_default(), 64)?;
        let block: Block8 = std::array::from_fn(|i| std::array::from_fn(|j| s[i * 8 + j]));
        let (b, c) = zonal2d::forward_2d(&spec, &block, a.scaled);
        count = c;
        for i in 0..b.size() {
            text.push_str(&join4((0..b.size()).map(|j| b.get(i, j))));
            text.push('\n');
        }
    }
    emit(&text, None, stdout)?;
    let _ = writeln!(stderr, "{} rows={} ops: {count}", spec.name(), spec.rows());
    Ok(())
}

fn image_label(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

fn compress(a: CompressArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let img = imageio::read_pgm_file(&a.input)?;
    let cfg = CodecConfig::new(&a.transform, a.pruned)?.with_level_shift(a.level_shift);
    let (out, metrics) = Codec::new(cfg.clone()).compress_image(&img)?;
    if let Some(path) = &a.out {
        imageio::write_pgm_file(path, &out)?;
    }
    let row = MetricsRow { transform: cfg.family.name(), pruned: cfg.pruned, image: image_label(&a.input), metrics };
    emit(&codec::metrics_csv([&row]), None, stdout)?;
    let _ = writeln!(stderr, "{}x{} image, {} blocks", img.width(), img.height(), img.blocks().len());
    Ok(())
}

fn bench_complexity(a: BenchComplexityArgs, stdout: &mut dyn Write) -> Result<()> {
    let table = opbench::complexity_table();
    let text = if a.savings {
        let rep = opbench::savings_report(&table, &opbench::SAVINGS_COMPETITORS)?;
        let mut s = String::from("competitor,dim,competitor_ops,proposed_ops,reduction_pct\n");
        for r in &rep.savings {
            s.push_str(&format!("{},{},{},{},{}\n", r.competitor, r.dim, r.competitor_ops, r.proposed_ops, fixed4(r.percent)));
        }
        s
    } else {
        opbench::complexity_csv(&table)
    };
    emit(&text, a.out.as_deref(), stdout)
}

/// All `.pgm` files in `dir`, sorted by file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<(String, GrayImage)>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm")))
        .collect();
    paths.sort();
    paths.iter().map(|p| Ok((image_label(p), imageio::read_pgm_file(p)?))).collect()
}

fn bench_corpus(a: BenchCorpusArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let images = load_corpus(&a.dir)?;
    let names: Vec<String> = if a.transforms.is_empty() {
        Family::ALL.iter().map(|f| f.name().to_string()).collect()
    } else {
        a.transforms
    };
    let mut configs = Vec::new();
    for name in &names {
        for pruned in [false, true] {
            let cfg = CodecConfig::new(name, pruned)?.with_level_shift(a.level_shift);
            if !configs.contains(&cfg) {
                configs.push(cfg);
            }
        }
    }
    let report = codec::corpus_average(&images, &configs)?;
    let text = codec::metrics_csv(report.rows.iter().chain(&report.averages));
    emit(&text, a.out.as_deref(), stdout)?;
    let _ = writeln!(stderr, "{} images, {} configurations", images.len(), configs.len());
    Ok(())
}

fn energy(a: EnergyArgs, stdout: &mut dyn Write) -> Result<()> {
    let spec = kernels::lookup(&a.transform)?;
    let mut images: Vec<(String, GrayImage)> = Vec::new();
    for p in &a.inputs {
        images.push((image_label(p), imageio::read_pgm_file(p)?));
    }
    if let Some(dir) = &a.dir {
        images.extend(load_corpus(dir)?);
    }
    if images.is_empty() {
        return Err(Error::InvalidArgument("no input images (use --in or --dir)".into()));
    }
    let mut text = String::from("image,weighted,unweighted,blocks\n");
    for (name, img) in &images {
        let c = zonal2d::image_compaction(&spec, &img.blocks())?;
        text.push_str(&format!("{name},{},{},{}\n", fixed4(c.weighted), fixed4(c.unweighted), c.blocks));
    }
    emit(&text, a.out.as_deref(), stdout)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["pdct"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn transform_vector() {
        let (code, out, _) = run_str(&["transform", "--transform", "pruned", "--vector", "1,1,1,1,1,1,1,1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "8.0000,0.0000,0.0000,0.0000\n");

        let (_, out, _) = run_str(&["transform", "--transform", "pruned", "--vector", "1,2,3,4,5,6,7,8"]);
        assert_eq!(out, "36.0000,-7.0000,0.0000,3.0000\n");
    }

    #[test]
    fn transform_block() {
        let ones = vec!["1"; 64].join(",");
        let (code, out, _) = run_str(&["transform", "--transform", "pruned", "--block", &ones, "--scaled"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "8.0000,0.0000,0.0000,0.0000");
    }

    #[test]
    fn errors_are_single_line() {
        let (code, _, err) = run_str(&["transform", "--transform", "nope", "--vector", "1,1,1,1,1,1,1,1"]);
        assert_eq!(code, 1);
        assert_eq!(err.lines().count(), 1);

        let (code, _, err) = run_str(&["transform", "--vector", "1,2"]);
        assert_eq!(code, 1);
        assert!(err.contains("expected 8 samples"));

        let (code, _, err) = run_str(&["bench-complexity", "--bogus"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);

        let (code, _, err) = run_str(&["compress", "--in", "/nonexistent/x.pgm"]);
        assert_eq!(code, 1);
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn bench_complexity_row() {
        let (code, out, _) = run_str(&["bench-complexity"]);
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l == "modified-rdct,2D,true,0,120,0,measured"));
        let (_, again, _) = run_str(&["bench-complexity"]);
        assert_eq!(out, again);
    }

    #[test]
    fn savings_table() {
        let (code, out, _) = run_str(&["bench-complexity", "--savings"]);
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l == "modified-rdct,1D,14,10,28.5714"));
        assert!(out.lines().any(|l| l == "rdct,2D,352,120,65.9091"));
    }
}
