//! The `skl` command line.
//!
//! Exit codes: 0 success, 1 validation or crosscheck failure (or
//! disagreeing modes for `classify`), 2 usage or parse error, 3 internal
//! error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{direct_product, FiniteSkewLattice};
use crate::classify::{classify_report, find_forbidden};
use crate::construct::{
    gen_chain, gen_corpus, gen_partial_functions, gen_primitive, gen_rectangular, gen_xn, gen_yn, CorpusEntry,
    CorpusLimits, PrimitiveSpec,
};
use crate::coset::decompose;
use crate::crosscheck::crosscheck;
use crate::error::SklError;
use crate::format::{parse_algebra, serialize_algebra};
use crate::validate::validate;

#[derive(Debug, Parser)]
#[command(name = "skl", version, about = "Finite skew lattice analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the skew lattice laws.
    Validate { file: PathBuf },
    /// List D-classes, the order of S/D, cosets, coset bijections and AC-components.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide every property in every mode.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Search for a copy of X_n or Y_n, n >= 2.
    Forbidden {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write generated algebras as .skl files.
    Generate {
        kind: GenerateKind,
        /// Input .skl files (for `product`).
        inputs: Vec<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// JSON primitive spec (for `primitive`).
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file, or directory for `corpus`.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check every invariant over .skl files, or over the seeded corpus when no path is given.
    Crosscheck {
        paths: Vec<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    Xn,
    Yn,
    Chain,
    Rectangular,
    Partialfn,
    Primitive,
    Product,
    Corpus,
}

/// A failure with its exit code.
struct Exit(i32, String);

impl From<SklError> for Exit {
    fn from(e: SklError) -> Self {
        let code = match e {
            SklError::Internal(_) => 3,
            SklError::NotASkewLattice(_) => 1,
            _ => 2,
        };
        Exit(code, e.to_string())
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Exit {
    Exit(2, format!("{}: {e}", path.display()))
}

fn read_text(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn load(path: &Path) -> Result<FiniteSkewLattice, Exit> {
    parse_algebra(&read_text(path)?).map_err(|e| Exit(2, format!("{}: {e}", path.display())))
}

/// Parses and checks the laws; a failed law is exit 1.
fn load_valid(path: &Path) -> Result<FiniteSkewLattice, Exit> {
    let alg = load(path)?;
    let report = validate(&alg);
    if !report.ok {
        return Err(Exit(1, format!("{}: not a skew lattice\n{}", path.display(), report.to_string().trim_end())));
    }
    Ok(alg)
}

fn write_file(path: &Path, text: &str) -> Result<(), Exit> {
    fs::write(path, text).map_err(|e| io_error(path, e))
}

fn need(flag: &str, v: Option<usize>) -> Result<usize, Exit> {
    v.ok_or_else(|| Exit(2, format!("--{flag} is required")))
}

/// Runs the command line `argv` (program name first), writing to `out` and
/// `err`, and returns the exit code.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "skl: {msg}");
            code
        }
    }
}

/// Runs with the process arguments and standard streams.
pub fn run() -> i32 {
    let argv: Vec<String> = std::env::args().collect();
    run_with(&argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Exit> {
    out.write_all(text.as_bytes()).map_err(|e| Exit(2, e.to_string()))
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    match command {
        Command::Validate { file } => {
            let report = validate(&load(&file)?);
            emit(out, &report.to_string())?;
            Ok(i32::from(!report.ok))
        }
        Command::Decompose { file, json } => {
            let alg = load_valid(&file)?;
            let d = decompose(&alg)?;
            let text = if json { serde_json::to_string_pretty(&d).expect("serializes") + "\n" } else { d.to_string() };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Classify { file, json } => {
            let alg = load_valid(&file)?;
            let report = classify_report(&alg)?;
            emit(out, &if json { report.to_json() + "\n" } else { report.to_string() })?;
            Ok(i32::from(!report.all_agree()))
        }
        Command::Forbidden { file, json } => {
            let alg = load_valid(&file)?;
            let witness = find_forbidden(&alg)?;
            let text = match (&witness, json) {
                (None, false) => "none\n".to_string(),
                (None, true) => "null\n".to_string(),
                (Some(w), false) => {
                    let pairs: Vec<String> =
                        w.label_pairs(&alg).iter().map(|(s, t)| format!("  {s} -> {t}")).collect();
                    format!("{}_{}\n{}\n", w.kind, w.n, pairs.join("\n"))
                }
                (Some(w), true) => {
                    let embedding: serde_json::Map<String, serde_json::Value> =
                        w.label_pairs(&alg).into_iter().map(|(s, t)| (s, t.into())).collect();
                    let v = serde_json::json!({ "kind": w.kind, "n": w.n, "embedding": embedding });
                    serde_json::to_string_pretty(&v).expect("serializes") + "\n"
                }
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Generate { kind, inputs, n, p, q, m, k, spec, seed, output } => {
            let alg = match kind {
                GenerateKind::Xn => gen_xn(need("n", n)?)?,
                GenerateKind::Yn => gen_yn(need("n", n)?)?,
                GenerateKind::Chain => gen_chain(need("k", k.or(n))?)?,
                GenerateKind::Rectangular => gen_rectangular(need("p", p)?, need("q", q)?)?,
                GenerateKind::Partialfn => gen_partial_functions(need("m", m)?, need("k", k)?)?,
                GenerateKind::Primitive => {
                    let path = spec.ok_or_else(|| Exit(2, "--spec is required".into()))?;
                    let parsed: PrimitiveSpec = serde_json::from_str(&read_text(&path)?)
                        .map_err(|e| Exit(2, format!("{}: {e}", path.display())))?;
                    gen_primitive(&parsed)?
                }
                GenerateKind::Product => {
                    let [a, b] = inputs.as_slice() else {
                        return Err(Exit(2, "product takes exactly two input files".into()));
                    };
                    direct_product(&load_valid(a)?, &load_valid(b)?)?
                }
                GenerateKind::Corpus => {
                    let corpus = gen_corpus(seed, &CorpusLimits::default());
                    fs::create_dir_all(&output).map_err(|e| io_error(&output, e))?;
                    for (i, e) in corpus.iter().enumerate() {
                        let path = output.join(format!("{i:04}-{}.skl", file_stem(&e.name)));
                        write_file(&path, &format!("# {}\n{}", e.name, serialize_algebra(&e.algebra)))?;
                    }
                    emit(out, &format!("wrote {} algebras to {}\n", corpus.len(), output.display()))?;
                    return Ok(0);
                }
            };
            write_file(&output, &serialize_algebra(&alg))?;
            emit(out, &format!("wrote {} elements to {}\n", alg.len(), output.display()))?;
            Ok(0)
        }
        Command::Crosscheck { paths, seed } => {
            let start = Instant::now();
            let corpus = if paths.is_empty() { gen_corpus(seed, &CorpusLimits::default()) } else { load_paths(&paths)? };
            let summary = crosscheck(&corpus, seed);
            emit(out, &summary.to_string())?;
            let _ = writeln!(err, "elapsed {:.2?}", start.elapsed());
            Ok(if summary.internal {
                3
            } else {
                i32::from(!summary.ok())
            })
        }
    }
}

fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

/// Loads files, and the `.skl` files of directories in name order.
fn load_paths(paths: &[PathBuf]) -> Result<Vec<CorpusEntry>, Exit> {
    let mut files = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut inner: Vec<PathBuf> = fs::read_dir(path)
                .map_err(|e| io_error(path, e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "skl"))
                .collect();
            inner.sort();
            files.extend(inner);
        } else {
            files.push(path.clone());
        }
    }
    files
        .iter()
        .map(|f| Ok(CorpusEntry { name: f.display().to_string(), algebra: load(f)? }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_exit_codes() {
        let code = |e| Exit::from(e).0;
        assert_eq!(code(SklError::Internal("x".into())), 3);
        assert_eq!(code(SklError::NotASkewLattice("x".into())), 1);
        assert_eq!(code(SklError::Parse { line: 1, message: "x".into() }), 2);
        assert_eq!(code(SklError::OutOfBounds("x".into())), 2);
    }

    #[test]
    fn file_stems() {
        assert_eq!(file_stem("xn(2)*chain(3)"), "xn_2__chain_3_");
    }
}
