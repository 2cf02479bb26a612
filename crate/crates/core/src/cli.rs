//! Command-line front end: single generation runs and the benchmark harness.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::baseline::run_cils;
use crate::lexicon::{Lexicon, LexiconError, SYLLABLE_SEPARATOR};
use crate::problem::{Criterion, NeighborRange, Objective, Problem, ProblemError};
use crate::search::{run_crs, ParamError, RunOutcome, SearchParams};
use crate::solutions::{Solution, SolutionSet};
use crate::stats::{build_bigram_table, FrequencyMode};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Params(_) => 2,
            CliError::Problem(ProblemError::Usage(_) | ProblemError::Criterion(_)) => 2,
            _ => 1,
        }
    }

    fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_owned(),
            source,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Algorithm {
    Crs,
    Cils,
}

impl Algorithm {
    pub fn run<O: Objective + ?Sized>(
        self,
        objective: &O,
        params: &SearchParams,
        seed: u64,
    ) -> RunOutcome {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match self {
            Algorithm::Crs => run_crs(objective, params, &mut rng),
            Algorithm::Cils => run_cils(objective, params, &mut rng),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Algorithm::Crs => "CRS",
            Algorithm::Cils => "CILS",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmChoice {
    Crs,
    Cils,
    Both,
}

impl AlgorithmChoice {
    fn algorithms(self) -> Vec<Algorithm> {
        match self {
            AlgorithmChoice::Crs => vec![Algorithm::Crs],
            AlgorithmChoice::Cils => vec![Algorithm::Cils],
            AlgorithmChoice::Both => vec![Algorithm::Crs, Algorithm::Cils],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionKind {
    Bigram,
    Neighbors,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    /// `text<TAB>syll-syll<TAB>iteration`
    #[default]
    Lines,
    /// One JSON object per line.
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "nonword",
    version,
    about = "Generate pseudowords with reactive tabu search"
)]
#[command(args_conflicts_with_subcommands = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one search per replicate and write the solutions (the default).
    Generate(RunArgs),
    /// Compare algorithms over several syllable counts.
    Bench(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Lexicon file: word<TAB>frequency<TAB>syll-syll-...
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Defaults to crs for generate and both for bench.
    #[arg(long, value_enum)]
    pub algorithm: Option<AlgorithmChoice>,
    #[arg(long, value_enum, default_value = "bigram")]
    pub criterion: CriterionKind,
    #[arg(long, default_value = "token")]
    pub mode: FrequencyMode,
    /// Syllables per nonword; bench accepts a comma-separated list.
    #[arg(long, value_delimiter = ',')]
    pub syllables: Vec<usize>,
    /// Target orthographic neighbor range A:B.
    #[arg(long, default_value = "1:4")]
    pub range: NeighborRange,
    /// Bigram normalization; defaults to the largest table count.
    #[arg(long)]
    pub delta_b: Option<f64>,
    #[arg(long, default_value_t = 100.0)]
    pub delta_n: f64,
    #[arg(long, default_value_t = 500)]
    pub iterations: u64,
    #[arg(long)]
    pub target_solutions: Option<usize>,
    #[arg(long, default_value_t = 300)]
    pub chi_max: usize,
    #[arg(long, default_value_t = 3)]
    pub rep: u32,
    #[arg(long, default_value_t = 3)]
    pub chaos: usize,
    #[arg(long, default_value_t = 1.3)]
    pub increase: f64,
    #[arg(long, default_value_t = 0.8)]
    pub decrease: f64,
    #[arg(long, default_value_t = 8000)]
    pub rmax: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub replicates: usize,
    /// Output file. Generate writes one file per replicate, suffixed by its index.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "lines")]
    pub format: OutputFormat,
    /// Print the bigram table (bigram, position, count) and exit.
    #[arg(long)]
    pub dump_tables: bool,
}

/// Fully validated settings for a generate or bench invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub lexicon: PathBuf,
    pub algorithms: Vec<Algorithm>,
    pub criterion: Criterion,
    pub syllables: Vec<usize>,
    pub params: SearchParams,
    pub seed: u64,
    pub replicates: usize,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

impl RunConfig {
    fn from_args(args: &RunArgs, bench: bool) -> Result<Self, CliError> {
        let lexicon = args
            .lexicon
            .clone()
            .ok_or_else(|| CliError::Usage("--lexicon is required".into()))?;
        let choice = args.algorithm.unwrap_or(if bench {
            AlgorithmChoice::Both
        } else {
            AlgorithmChoice::Crs
        });
        if !bench && choice == AlgorithmChoice::Both {
            return Err(CliError::Usage(
                "--algorithm both is only valid for bench".into(),
            ));
        }
        let syllables = match (args.syllables.as_slice(), bench) {
            ([], false) => vec![2],
            ([], true) => vec![2, 3, 4],
            ([_], _) => args.syllables.clone(),
            (_, false) => {
                return Err(CliError::Usage(
                    "generate takes a single --syllables value".into(),
                ))
            }
            (_, true) => args.syllables.clone(),
        };
        let criterion = match args.criterion {
            CriterionKind::Bigram => Criterion::Bigram {
                mode: args.mode,
                delta: args.delta_b,
            },
            CriterionKind::Neighbors => Criterion::Neighbors {
                range: args.range,
                delta: args.delta_n,
            },
        };
        let min_syllables = match criterion {
            Criterion::Bigram { .. } => 2,
            Criterion::Neighbors { .. } => 1,
        };
        if let Some(&d) = syllables.iter().find(|&&d| d < min_syllables) {
            return Err(CliError::Usage(format!(
                "--syllables {d} is too small for the {:?} criterion (minimum {min_syllables})",
                args.criterion
            )));
        }
        if args.replicates == 0 {
            return Err(CliError::Usage("--replicates must be at least 1".into()));
        }
        let params = SearchParams {
            rep: args.rep,
            chaos: args.chaos,
            increase: args.increase,
            decrease: args.decrease,
            chi_max: args.chi_max,
            r_max: args.rmax,
            max_iterations: args.iterations,
            target_solutions: args.target_solutions,
        };
        params.validate()?;
        Ok(Self {
            lexicon,
            algorithms: choice.algorithms(),
            criterion,
            syllables,
            params,
            seed: args.seed,
            replicates: args.replicates,
            output: args.output.clone(),
            format: args.format,
        })
    }

    /// Seed of replicate `index`.
    pub fn replicate_seed(&self, index: usize) -> u64 {
        self.seed.wrapping_add(index as u64)
    }
}

/// `out.tsv` becomes `out.3.tsv` for replicate 3.
pub fn replicate_path(base: &Path, index: usize) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}.{index}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{index}"),
    };
    base.with_file_name(name)
}

pub fn write_solutions<W: Write>(
    out: &mut W,
    solutions: &SolutionSet,
    format: OutputFormat,
) -> std::io::Result<()> {
    let sep = SYLLABLE_SEPARATOR.to_string();
    for s in solutions {
        match format {
            OutputFormat::Lines => writeln!(
                out,
                "{}\t{}\t{}",
                s.text,
                s.syllables.join(&sep),
                s.iteration
            )?,
            OutputFormat::Json => {
                serde_json::to_writer(&mut *out, s)?;
                writeln!(out)?;
            }
        }
    }
    Ok(())
}

/// Reads back a file produced by [`write_solutions`].
pub fn read_solutions<R: BufRead>(
    reader: R,
    format: OutputFormat,
) -> Result<Vec<Solution>, CliError> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| CliError::Format {
            line: line_no,
            message: e.to_string(),
        })?;
        if line.is_empty() {
            continue;
        }
        let bad = |message: String| CliError::Format {
            line: line_no,
            message,
        };
        let solution = match format {
            OutputFormat::Json => serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?,
            OutputFormat::Lines => {
                let fields: Vec<&str> = line.split('\t').collect();
                let [text, syllables, iteration] = fields[..] else {
                    return Err(bad(format!("expected 3 fields, found {}", fields.len())));
                };
                Solution {
                    text: text.to_owned(),
                    syllables: syllables
                        .split(SYLLABLE_SEPARATOR)
                        .map(String::from)
                        .collect(),
                    iteration: iteration
                        .parse()
                        .map_err(|_| bad(format!("invalid iteration `{iteration}`")))?,
                }
            }
        };
        out.push(solution);
    }
    Ok(out)
}

fn load_lexicon(path: &Path) -> Result<Lexicon, CliError> {
    match Lexicon::from_path(path) {
        Err(LexiconError::Io(e)) => Err(CliError::io(path, e)),
        other => Ok(other?),
    }
}

/// One finished replicate of `generate`.
#[derive(Debug, Clone)]
pub struct ReplicateResult {
    pub index: usize,
    pub seed: u64,
    pub outcome: RunOutcome,
    pub path: Option<PathBuf>,
}

/// Runs the configured algorithm once per replicate and writes each
/// solution set. Without an output path solutions go to `stdout`.
pub fn generate<W: Write>(
    cfg: &RunConfig,
    stdout: &mut W,
) -> Result<Vec<ReplicateResult>, CliError> {
    let lexicon = load_lexicon(&cfg.lexicon)?;
    let problem = Problem::new(lexicon, cfg.criterion.clone(), cfg.syllables[0])?;
    let algorithm = cfg.algorithms[0];
    let mut results = Vec::with_capacity(cfg.replicates);
    for index in 0..cfg.replicates {
        let seed = cfg.replicate_seed(index);
        let outcome = algorithm.run(&problem, &cfg.params, seed);
        let path = match &cfg.output {
            Some(base) => {
                let path = replicate_path(base, index);
                let mut buf = Vec::new();
                write_solutions(&mut buf, &outcome.solutions, cfg.format)
                    .and_then(|_| std::fs::write(&path, buf))
                    .map_err(|e| CliError::io(&path, e))?;
                Some(path)
            }
            None => {
                write_solutions(stdout, &outcome.solutions, cfg.format)
                    .map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
                None
            }
        };
        results.push(ReplicateResult {
            index,
            seed,
            outcome,
            path,
        });
    }
    Ok(results)
}

pub fn summary_line(algorithm: Algorithm, r: &ReplicateResult) -> String {
    let s = &r.outcome.stats;
    format!(
        "{} replicate {} seed {}: {} iterations, {} solutions, {} diversifications, {:.3} s",
        algorithm.label(),
        r.index,
        r.seed,
        s.iterations,
        s.solutions,
        s.diversifications,
        s.elapsed_secs
    )
}

/// Aggregate of `replicates` runs of one algorithm at one syllable count.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchCell {
    pub algorithm: Algorithm,
    pub syllables: usize,
    pub mean_solutions: f64,
    /// Population standard deviation.
    pub std_solutions: f64,
    pub mean_secs: f64,
    pub runs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub syllables: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    pub cells: Vec<BenchCell>,
}

/// Mean and population standard deviation.
pub fn mean_and_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

impl BenchReport {
    pub fn cell(&self, algorithm: Algorithm, syllables: usize) -> Option<&BenchCell> {
        self.cells
            .iter()
            .find(|c| c.algorithm == algorithm && c.syllables == syllables)
    }

    /// Tab-separated table: one block of three rows per algorithm, one column
    /// per syllable count. Standard deviations are population form.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("algorithm\tmetric");
        for d in &self.syllables {
            let _ = write!(out, "\t{d} syllables");
        }
        out.push('\n');
        type Metric = fn(&BenchCell) -> String;
        let metrics: [(&str, Metric); 3] = [
            ("Solutions found", |c| format!("{:.2}", c.mean_solutions)),
            ("Standard deviation", |c| format!("{:.2}", c.std_solutions)),
            ("Running time (s)", |c| format!("{:.4}", c.mean_secs)),
        ];
        for &alg in &self.algorithms {
            for (name, metric) in &metrics {
                let _ = write!(out, "{}\t{name}", alg.label());
                for &d in &self.syllables {
                    let value = self.cell(alg, d).map(metric).unwrap_or_default();
                    let _ = write!(out, "\t{value}");
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Runs every algorithm `replicates` times for every syllable count.
pub fn bench(cfg: &RunConfig) -> Result<BenchReport, CliError> {
    let lexicon = load_lexicon(&cfg.lexicon)?;
    let mut cells = Vec::new();
    for &d in &cfg.syllables {
        let problem = Problem::new(lexicon.clone(), cfg.criterion.clone(), d)?;
        for &algorithm in &cfg.algorithms {
            let runs: Vec<RunOutcome> = (0..cfg.replicates)
                .map(|i| algorithm.run(&problem, &cfg.params, cfg.replicate_seed(i)))
                .collect();
            let found: Vec<f64> = runs.iter().map(|r| r.solutions.len() as f64).collect();
            let secs: Vec<f64> = runs.iter().map(|r| r.stats.elapsed_secs).collect();
            let (mean_solutions, std_solutions) = mean_and_std(&found);
            cells.push(BenchCell {
                algorithm,
                syllables: d,
                mean_solutions,
                std_solutions,
                mean_secs: mean_and_std(&secs).0,
                runs: runs.len(),
            });
        }
    }
    Ok(BenchReport {
        syllables: cfg.syllables.clone(),
        algorithms: cfg.algorithms.clone(),
        cells,
    })
}

fn dump_tables<W: Write>(args: &RunArgs, stdout: &mut W) -> Result<(), CliError> {
    let path = args
        .lexicon
        .as_deref()
        .ok_or_else(|| CliError::Usage("--lexicon is required".into()))?;
    let table = build_bigram_table(&load_lexicon(path)?, args.mode);
    stdout
        .write_all(table.to_tsv().as_bytes())
        .map_err(|e| CliError::io(Path::new("<stdout>"), e))
}

/// Entry point shared by the binary and the tests. Progress and summaries
/// go to `stdout`; when no output file is given, so do the results.
pub fn run<W: Write, E: Write>(cli: Cli, stdout: &mut W, stderr: &mut E) -> Result<(), CliError> {
    let (args, is_bench) = match cli.command {
        Some(Command::Generate(a)) => (a, false),
        Some(Command::Bench(a)) => (a, true),
        None => (cli.run, false),
    };
    if args.dump_tables {
        return dump_tables(&args, stdout);
    }
    let cfg = RunConfig::from_args(&args, is_bench)?;
    // Summaries must not mix with solution lines on stdout.
    let to_stdout = cfg.output.is_none();
    fn log<W: Write, E: Write>(to_stdout: bool, stdout: &mut W, stderr: &mut E, line: String) {
        let _ = if to_stdout {
            writeln!(stderr, "{line}")
        } else {
            writeln!(stdout, "{line}")
        };
    }
    if is_bench {
        let report = bench(&cfg)?;
        let text = report.to_tsv();
        match &cfg.output {
            Some(path) => {
                std::fs::write(path, &text).map_err(|e| CliError::io(path, e))?;
                log(
                    to_stdout,
                    stdout,
                    stderr,
                    format!("wrote {}", path.display()),
                );
            }
            None => stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))?,
        }
        return Ok(());
    }
    let results = generate(&cfg, stdout)?;
    for r in &results {
        log(
            to_stdout,
            stdout,
            stderr,
            summary_line(cfg.algorithms[0], r),
        );
    }
    Ok(())
}
