//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use nonword::cli::{read_solutions, OutputFormat};
use nonword::{
    apply_move, build_bigram_table, count_orthographic_neighbors, decode, encode,
    memory_based_reaction, partition_moves, random_configuration, run_cils, run_crs, Configuration,
    Criterion, FrequencyMode, Lexicon, MoveKey, NeighborIndex, NeighborRange, Neighborhood,
    Objective, Problem, SearchParams, TabuMemory,
};
use proptest::prelude::*;
use proptest::test_runner::{Config as ProptestConfig, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within_budget(start: Instant, limit: Duration, detail: String) -> Outcome {
    let elapsed = start.elapsed();
    ensure!(
        elapsed < limit,
        "{detail}; took {elapsed:.2?}, limit {limit:?}"
    );
    Ok(format!("{detail}; {elapsed:.2?}"))
}

/// Statistics tables and neighbor counts against direct scans.
fn corpus_statistics() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut candidates = 0;
    for k in 0..50 {
        let lex = synthetic_lexicon(&mut rng, 20 + k, 60 + 2 * k);
        ensure!(lex.len() <= 200, "lexicon {k} has {} words", lex.len());
        for (mode, type_mode) in [(FrequencyMode::Token, false), (FrequencyMode::Type, true)] {
            let table = build_bigram_table(&lex, mode);
            let got: BTreeMap<(String, usize), f64> = table
                .sorted_entries()
                .into_iter()
                .map(|(b, p, c)| ((b, p), c))
                .collect();
            let want = oracle_bigram_counts(&lex, type_mode);
            ensure!(
                got == want,
                "lexicon {k}, {mode} table differs from the oracle"
            );
            let max = want.values().copied().fold(0.0, f64::max);
            ensure!(table.max_count() == max, "lexicon {k}, {mode} max count");
        }
        let index = NeighborIndex::new(&lex);
        let alphabet: Vec<char> = lex.alphabet().iter().copied().collect();
        let words: Vec<&str> = lex.entries().iter().map(|e| e.word.as_str()).collect();
        for i in 0..200 {
            let candidate: String = if i % 2 == 0 {
                // Mutate a word so that neighbors are common.
                let mut chars: Vec<char> = words[rng.gen_range(0..words.len())].chars().collect();
                let p = rng.gen_range(0..chars.len());
                chars[p] = alphabet[rng.gen_range(0..alphabet.len())];
                chars.into_iter().collect()
            } else {
                let len = rng.gen_range(1..9);
                (0..len)
                    .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
                    .collect()
            };
            let got = count_orthographic_neighbors(&index, &candidate);
            let want = oracle_neighbors(&lex, &candidate);
            ensure!(
                got == want,
                "lexicon {k}, `{candidate}`: {got} neighbors, oracle {want}"
            );
            candidates += 1;
        }
    }
    within_budget(
        start,
        Duration::from_secs(10),
        format!("50 lexicons, both modes, {candidates} neighbor candidates"),
    )
}

fn position_calibration() -> Outcome {
    let lex = Lexicon::parse_str("pacific\t1\tpa-ci-fic\nspecific\t1\tspe-ci-fic\n")
        .map_err(|e| e.to_string())?;
    for mode in [FrequencyMode::Token, FrequencyMode::Type] {
        let table = build_bigram_table(&lex, mode);
        let ic: Vec<(usize, f64)> = table
            .sorted_entries()
            .into_iter()
            .filter(|(b, _, _)| b == "ic")
            .map(|(_, p, c)| (p, c))
            .collect();
        ensure!(ic == vec![(5, 1.0), (6, 1.0)], "{mode}: `ic` at {ic:?}");
    }
    let solo = |w: &str| {
        let lex = Lexicon::parse_str(&format!("{w}\t1\t{w}\n")).unwrap();
        build_bigram_table(&lex, FrequencyMode::Type).get("ic", if w == "pacific" { 5 } else { 6 })
    };
    ensure!(
        solo("pacific") == 1.0 && solo("specific") == 1.0,
        "single-word tables"
    );
    Ok("`ic` at 5 in pacific and 6 in specific".into())
}

/// Random configurations scored against an independent integer check.
fn score_contract() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let lex = synthetic_lexicon(&mut rng, 60, 400);
    let mut report = Vec::new();
    let cases: Vec<(Criterion, usize)> = vec![
        (
            Criterion::Bigram {
                mode: FrequencyMode::Token,
                delta: None,
            },
            3,
        ),
        (
            Criterion::Bigram {
                mode: FrequencyMode::Type,
                delta: None,
            },
            2,
        ),
        (
            Criterion::Neighbors {
                range: NeighborRange::new(1, 3).unwrap(),
                delta: 100.0,
            },
            2,
        ),
    ];
    for (criterion, d) in cases {
        let problem = Problem::new(lex.clone(), criterion.clone(), d).map_err(|e| e.to_string())?;
        let counts = match &criterion {
            Criterion::Bigram { mode, .. } => {
                Some(oracle_bigram_counts(&lex, *mode == FrequencyMode::Type))
            }
            Criterion::Neighbors { .. } => None,
        };
        let (mut ones, mut degenerate) = (0, 0);
        // Include every lexicon word that splits into d syllables.
        let mut configs: Vec<Configuration> = lex
            .entries()
            .iter()
            .filter_map(|e| encode(&e.syllables, problem.inventory()))
            .filter(|v| v.len() == d)
            .collect();
        let words_included = configs.len();
        while configs.len() < 10_000 + words_included {
            configs.push(random_configuration(&mut rng, d, problem.inventory().len()));
        }
        for v in &configs {
            let w = decode(v, problem.inventory()).map_err(|e| e.to_string())?;
            let s = problem.score(v);
            ensure!(
                (0.0..=1.0).contains(&s),
                "{}: score {s} out of range",
                w.text()
            );
            let syl: Vec<&str> = w.syllables().iter().map(String::as_str).collect();
            let raw = match (&criterion, &counts) {
                (Criterion::Bigram { .. }, Some(counts)) => oracle_bigram_holds(counts, &syl),
                (Criterion::Neighbors { range, .. }, _) => {
                    let n = oracle_neighbors(&lex, w.text());
                    Some((range.low as usize..=range.high as usize).contains(&n))
                }
                _ => unreachable!(),
            };
            let is_word = lex.entries().iter().any(|e| e.word == w.text());
            let expected = match raw {
                Some(holds) => holds && !is_word,
                None => {
                    degenerate += 1;
                    ensure!(
                        problem.evaluate(&w).is_err(),
                        "{}: degenerate but evaluated",
                        w.text()
                    );
                    false
                }
            };
            ensure!(
                (s == 1.0) == expected,
                "{}: score {s}, raw {raw:?}, word {is_word}",
                w.text()
            );
            if expected {
                ones += 1;
            }
        }
        ensure!(
            ones > 0 && ones < configs.len(),
            "criterion never discriminates: {ones}"
        );
        report.push(format!(
            "{}d={d}: {ones}/{} at 1 ({words_included} words, {degenerate} degenerate)",
            match criterion {
                Criterion::Bigram { mode, .. } => format!("bigram/{mode} "),
                Criterion::Neighbors { .. } => "neighbors ".into(),
            },
            configs.len()
        ));
    }
    Ok(report.join("; "))
}

/// Straight-line model of the visit bookkeeping, for comparison.
#[derive(Debug, Default)]
struct ReactionModel {
    visit: HashMap<Vec<usize>, u64>,
    reps: HashMap<Vec<usize>, u32>,
    repeated: HashSet<Vec<usize>>,
    rave: f64,
    period: f64,
    changed_at: u64,
}

impl ReactionModel {
    fn new() -> Self {
        Self {
            rave: 1.0,
            period: 1.0,
            ..Default::default()
        }
    }

    fn visit(&mut self, v: &[usize], t: u64, p: &SearchParams) -> bool {
        match self.visit.get(v).copied() {
            Some(prev) => {
                let r = t - prev;
                self.visit.insert(v.to_vec(), t);
                let phi = self.reps.get(v).copied().unwrap_or(0) + 1;
                self.reps.insert(v.to_vec(), phi);
                if phi > p.rep {
                    self.repeated.insert(v.to_vec());
                }
                if self.repeated.len() > p.chaos {
                    self.repeated.clear();
                    return true;
                }
                if r < p.r_max {
                    self.rave = 0.1 * r as f64 + 0.9 * self.rave;
                    self.period *= p.increase;
                    self.changed_at = t;
                }
            }
            None => {
                self.visit.insert(v.to_vec(), t);
                self.reps.insert(v.to_vec(), 1);
            }
        }
        if (t - self.changed_at) as f64 > self.rave {
            self.period = (self.period * p.decrease).max(1.0);
            self.changed_at = t;
        }
        false
    }
}

fn reactive_trace() -> Outcome {
    let params = SearchParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut worst_rel = 0.0f64;
    let mut escapes = 0;
    let mut steps = 0;
    for trace in 0..200 {
        let mut mem = TabuMemory::new();
        let mut model = ReactionModel::new();
        let pool: Vec<Vec<usize>> = (0..rng.gen_range(2..9)).map(|i| vec![i, i % 3]).collect();
        let mut t = rng.gen_range(0..5);
        for _ in 0..300 {
            let v = &pool[rng.gen_range(0..pool.len())];
            let before = mem.period();
            let esc = memory_based_reaction(&mut mem, &Configuration::new(v.clone()), t, &params);
            let want = model.visit(v, t, &params);
            ensure!(
                esc == want,
                "trace {trace}, t={t}: escape {esc}, model {want}"
            );
            ensure!(
                mem.period() == model.period,
                "trace {trace}, t={t}: T {} vs {}",
                mem.period(),
                model.period
            );
            ensure!(mem.period() >= 1.0, "T below 1");
            let after = mem.period();
            let allowed = [
                before,
                before * params.increase,
                (before * params.decrease).max(1.0),
                (before * params.increase * params.decrease).max(1.0),
            ];
            ensure!(
                allowed.contains(&after),
                "trace {trace}: T jumped {before} -> {after}"
            );
            ensure!(
                mem.period_changed_at() == model.changed_at,
                "trace {trace}: tT"
            );
            let rel = (mem.mean_repetition_interval() - model.rave).abs() / model.rave;
            worst_rel = worst_rel.max(rel);
            ensure!(rel <= 1e-12, "trace {trace}: Rave relative error {rel}");
            if esc {
                ensure!(mem.repeated().is_empty(), "S not cleared after escape");
                escapes += 1;
            } else {
                ensure!(
                    mem.repeated().len() <= params.chaos,
                    "|S| exceeds CHAOS without escape"
                );
            }
            steps += 1;
            t += rng.gen_range(1..4);
        }
    }
    ensure!(escapes > 0, "no trace reached an escape");

    // Hand trace: four configurations visited in turn. Each reaches
    // Φ = 4 > REP on its fourth visit; the fourth of those overflows S.
    let mut mem = TabuMemory::new();
    let mut fired = Vec::new();
    let mut t = 0;
    for round in 0..4 {
        for c in 0..4 {
            if memory_based_reaction(&mut mem, &Configuration::new(vec![c]), t, &params) {
                fired.push((round, c, mem.repeated().len()));
            }
            t += 1;
        }
    }
    ensure!(fired == vec![(3, 3, 0)], "hand trace escapes {fired:?}");

    // First revisit arithmetic: visit at 5, revisit at 10.
    let mut mem = TabuMemory::new();
    memory_based_reaction(&mut mem, &Configuration::new(vec![0]), 5, &params);
    memory_based_reaction(&mut mem, &Configuration::new(vec![0]), 10, &params);
    ensure!(
        (mem.mean_repetition_interval() - 1.4).abs() < 1e-12 && mem.period() == 1.3,
        "revisit arithmetic"
    );
    Ok(format!("{steps} visits over 200 random traces, {escapes} escapes, worst Rave rel. error {worst_rel:e}"))
}

fn prohibition_semantics() -> Outcome {
    let mut runner = TestRunner::new(ProptestConfig {
        cases: 256,
        failure_persistence: None,
        ..ProptestConfig::default()
    });
    let strategy = (
        proptest::collection::vec((0usize..3, 0usize..5, 1.0f64..6.0, 1u64..4), 1..25),
        0u64..50,
    );
    let mut checked = 0usize;
    runner
        .run(&strategy, |(ops, start)| {
            let lambda = 5;
            let nbhd = Neighborhood::new((0..lambda).collect(), 3);
            let mut mem = TabuMemory::new();
            let mut v = Configuration::new(vec![0, 1, 2]);
            let mut t = start;
            let mut last: HashMap<MoveKey, u64> = HashMap::new();
            for (pos, val, period, gap) in ops {
                mem.set_period(period);
                let old = v.components()[pos];
                v = apply_move(&v, MoveKey::new(pos, val), &mut mem, t);
                last.insert(MoveKey::new(pos, old), t);
                let inverse = MoveKey::new(pos, old);
                let tenure = period.ceil() as u64;
                // Without further updates the inverse stays out for exactly ⌈T⌉ iterations.
                for later in t + 1..=t + tenure + 3 {
                    let (_, prohibited) = partition_moves(&nbhd, &mem, later);
                    let expect = later <= t + tenure;
                    prop_assert_eq!(
                        prohibited.contains(&inverse),
                        expect,
                        "t={} later={} T={}",
                        t,
                        later,
                        period
                    );
                }
                // Every move of the neighborhood agrees with the last-use record.
                let probe = t + gap;
                let (admissible, prohibited) = partition_moves(&nbhd, &mem, probe);
                prop_assert_eq!(admissible.len() + prohibited.len(), nbhd.len());
                for m in nbhd.moves() {
                    let expect = last.get(&m).is_some_and(|&u| u + tenure >= probe);
                    if expect != prohibited.contains(&m) {
                        return Err(TestCaseError::fail(format!("{m:?} at {probe}")));
                    }
                }
                t += gap;
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    checked += 256;
    Ok(format!(
        "{checked} random traces, windows of ⌈T⌉ for T in [1, 6)"
    ))
}

fn brute_force_solutions(problem: &Problem) -> BTreeSet<String> {
    let (d, lambda) = (problem.dimension(), problem.cardinality());
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; d];
    loop {
        let v = Configuration::new(idx.clone());
        if problem.score(&v) == 1.0 {
            out.insert(problem.describe(&v).0);
        }
        let mut k = 0;
        while k < d {
            idx[k] += 1;
            if idx[k] < lambda {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == d {
            return out;
        }
    }
}

fn exhaustive_completeness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let lex = synthetic_lexicon(&mut rng, 16, 60);
    let problem = Problem::new(
        lex.clone(),
        Criterion::Bigram {
            mode: FrequencyMode::Type,
            delta: None,
        },
        3,
    )
    .map_err(|e| e.to_string())?;
    let space = problem.cardinality().pow(3);
    ensure!(space <= 4096, "space {space}");
    let oracle = brute_force_solutions(&problem);
    // Cross-check the oracle set with the integer criterion.
    let counts = oracle_bigram_counts(&lex, true);
    let mut independent = BTreeSet::new();
    let syl = problem.inventory().syllables();
    for a in syl {
        for b in syl {
            for c in syl {
                let parts = [a.as_str(), b.as_str(), c.as_str()];
                let text = parts.concat();
                if oracle_bigram_holds(&counts, &parts) == Some(true) && !lex.is_word(&text) {
                    independent.insert(text);
                }
            }
        }
    }
    ensure!(oracle == independent, "oracle sets disagree");
    ensure!(!oracle.is_empty(), "toy problem has no solutions");
    let params = SearchParams {
        max_iterations: 2000,
        ..SearchParams::default()
    };
    let mut complete = 0;
    for seed in 0..20 {
        let out = run_crs(&problem, &params, &mut ChaCha8Rng::seed_from_u64(seed));
        let found: BTreeSet<String> = out.solutions.texts().map(String::from).collect();
        ensure!(
            found.is_subset(&oracle),
            "seed {seed} returned a non-solution"
        );
        if found == oracle {
            complete += 1;
        }
    }
    ensure!(complete >= 19, "complete in {complete}/20 runs");
    within_budget(
        start,
        Duration::from_secs(30),
        format!(
            "λ={}, d=3, {} solutions, complete in {complete}/20",
            problem.cardinality(),
            oracle.len()
        ),
    )
}

fn trend_replication() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let lex = synthetic_lexicon(&mut rng, 200, 2000);
    let params = SearchParams {
        chi_max: 50,
        max_iterations: 500,
        ..SearchParams::default()
    };
    let mut means = BTreeMap::new();
    for d in [2, 3, 4] {
        let problem = Problem::new(
            lex.clone(),
            Criterion::Bigram {
                mode: FrequencyMode::Token,
                delta: None,
            },
            d,
        )
        .map_err(|e| e.to_string())?;
        let mean = |cils: bool| {
            (0..10u64)
                .map(|seed| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let out = if cils {
                        run_cils(&problem, &params, &mut rng)
                    } else {
                        run_crs(&problem, &params, &mut rng)
                    };
                    out.solutions.len() as f64
                })
                .sum::<f64>()
                / 10.0
        };
        means.insert(d, (mean(false), mean(true)));
    }
    let ratio = |d: usize| means[&d].0 / means[&d].1;
    let detail = format!(
        "λ={}; {}",
        build_lambda(&lex),
        means
            .iter()
            .map(|(d, (c, i))| format!("d={d}: CRS {c:.1} CILS {i:.1} ratio {:.3}", c / i))
            .collect::<Vec<_>>()
            .join(", ")
    );
    ensure!(
        means[&3].0 >= means[&3].1,
        "CRS below CILS at d=3: {detail}"
    );
    ensure!(
        means[&4].0 >= means[&4].1,
        "CRS below CILS at d=4: {detail}"
    );
    ensure!(ratio(4) > ratio(2), "ratio does not grow with d: {detail}");
    within_budget(start, Duration::from_secs(300), detail)
}

fn build_lambda(lex: &Lexicon) -> usize {
    nonword::build_syllable_inventory(lex)
        .map(|i| i.len())
        .unwrap_or(0)
}

fn run_cli(args: &[&str]) -> Result<(Vec<u8>, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_nonword"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    Ok((out.stdout, out.stderr))
}

fn without_runtime(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.contains("Running time (s)"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let lex = synthetic_lexicon(&mut rng, 40, 300);
    let lex_path = write_lexicon(&lex, dir.path(), "lexicon.tsv");
    let lex_arg = lex_path.to_str().unwrap();
    let fix3 = dir.path().join("fix3.tsv");
    std::fs::write(&fix3, FIX3).map_err(|e| e.to_string())?;

    let mut compared = 0;
    let runs: Vec<Vec<&str>> = vec![
        vec![
            "--lexicon",
            lex_arg,
            "--algorithm",
            "crs",
            "--criterion",
            "bigram",
            "--mode",
            "token",
            "--syllables",
            "3",
            "--iterations",
            "80",
            "--seed",
            "9",
            "--replicates",
            "3",
        ],
        vec![
            "--lexicon",
            lex_arg,
            "--algorithm",
            "cils",
            "--criterion",
            "neighbors",
            "--range",
            "1:3",
            "--syllables",
            "2",
            "--iterations",
            "60",
            "--seed",
            "4",
            "--replicates",
            "2",
            "--format",
            "json",
        ],
        vec![
            "generate",
            "--lexicon",
            fix3.to_str().unwrap(),
            "--algorithm",
            "crs",
            "--criterion",
            "bigram",
            "--mode",
            "type",
            "--syllables",
            "2",
            "--iterations",
            "50",
            "--seed",
            "1",
            "--replicates",
            "1",
        ],
    ];
    for (k, args) in runs.iter().enumerate() {
        let format = if args.contains(&"json") {
            OutputFormat::Json
        } else {
            OutputFormat::Lines
        };
        let replicates: usize = args[args.iter().position(|a| *a == "--replicates").unwrap() + 1]
            .parse()
            .unwrap();
        let mut outputs = Vec::new();
        for attempt in 0..2 {
            let base = dir.path().join(format!("run{k}_{attempt}.out"));
            let mut full = args.clone();
            full.extend(["--output", base.to_str().unwrap()]);
            run_cli(&full)?;
            let files: Vec<Vec<u8>> = (0..replicates)
                .map(|r| std::fs::read(dir.path().join(format!("run{k}_{attempt}.{r}.out"))))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            outputs.push(files);
        }
        ensure!(
            outputs[0] == outputs[1],
            "run {k}: output files differ between repeats"
        );
        // Files parse back and every line is a solution.
        let problem = problem_for_args(args, &lex, &fix3)?;
        for file in &outputs[0] {
            let solutions = read_solutions(file.as_slice(), format).map_err(|e| e.to_string())?;
            for s in &solutions {
                let v = encode(&s.syllables, problem.inventory()).ok_or("unknown syllable")?;
                ensure!(
                    problem.score(&v) == 1.0 && problem.describe(&v).0 == s.text,
                    "run {k}: `{}` is not a solution",
                    s.text
                );
            }
        }
        compared += replicates;
        // Standard output mode is repeatable too.
        let a = run_cli(args)?.0;
        let b = run_cli(args)?.0;
        ensure!(a == b, "run {k}: stdout differs between repeats");
    }

    let bench = [
        "bench",
        "--lexicon",
        lex_arg,
        "--syllables",
        "2,3",
        "--iterations",
        "30",
        "--chi-max",
        "20",
        "--replicates",
        "3",
        "--seed",
        "5",
    ];
    let r1 = String::from_utf8(run_cli(&bench)?.0).map_err(|e| e.to_string())?;
    let r2 = String::from_utf8(run_cli(&bench)?.0).map_err(|e| e.to_string())?;
    ensure!(r1.lines().count() == 7, "bench report shape:\n{r1}");
    ensure!(
        without_runtime(&r1) == without_runtime(&r2),
        "bench reports differ:\n{r1}\n{r2}"
    );
    let usage = Command::new(env!("CARGO_BIN_EXE_nonword"))
        .args([
            "--lexicon",
            lex_arg,
            "--syllables",
            "1",
            "--criterion",
            "bigram",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        usage.status.code() == Some(2),
        "bigram with one syllable exits {:?}",
        usage.status.code()
    );
    Ok(format!("{compared} replicate files identical across repeats, bench reports identical apart from timings"))
}

fn problem_for_args(args: &[&str], lex: &Lexicon, fix3: &Path) -> Result<Problem, String> {
    let get = |flag: &str| args.iter().position(|a| *a == flag).map(|i| args[i + 1]);
    let lexicon = if get("--lexicon") == fix3.to_str() {
        Lexicon::parse_str(FIX3).unwrap()
    } else {
        lex.clone()
    };
    let d: usize = get("--syllables").unwrap().parse().unwrap();
    let criterion = match get("--criterion") {
        Some("neighbors") => Criterion::Neighbors {
            range: get("--range").unwrap_or("1:4").parse().unwrap(),
            delta: 100.0,
        },
        _ => Criterion::Bigram {
            mode: get("--mode").unwrap_or("token").parse().unwrap(),
            delta: None,
        },
    };
    Problem::new(lexicon, criterion, d).map_err(|e| e.to_string())
}

fn solution_purity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let lex = synthetic_lexicon(&mut rng, 50, 500);
    let criteria = [
        (
            Criterion::Bigram {
                mode: FrequencyMode::Token,
                delta: None,
            },
            2,
        ),
        (
            Criterion::Bigram {
                mode: FrequencyMode::Type,
                delta: None,
            },
            3,
        ),
        (
            Criterion::Neighbors {
                range: NeighborRange::new(1, 4).unwrap(),
                delta: 100.0,
            },
            2,
        ),
        (
            Criterion::Neighbors {
                range: NeighborRange::new(0, 1).unwrap(),
                delta: 100.0,
            },
            3,
        ),
    ];
    let (mut runs, mut total) = (0, 0);
    for (criterion, d) in criteria {
        let problem = Problem::new(lex.clone(), criterion, d).map_err(|e| e.to_string())?;
        let params = SearchParams {
            chi_max: 30,
            max_iterations: 150,
            ..SearchParams::default()
        };
        for seed in 0..5 {
            for cils in [false, true] {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let out = if cils {
                    run_cils(&problem, &params, &mut rng)
                } else {
                    run_crs(&problem, &params, &mut rng)
                };
                let texts: Vec<&str> = out.solutions.texts().collect();
                let unique: HashSet<&str> = texts.iter().copied().collect();
                ensure!(unique.len() == texts.len(), "duplicate texts");
                ensure!(
                    out.stats.solutions == texts.len(),
                    "stats disagree with the set"
                );
                for s in &out.solutions {
                    ensure!(!lex.is_word(&s.text), "`{}` is a lexicon word", s.text);
                    ensure!(
                        s.syllables.concat() == s.text,
                        "`{}` syllables do not join",
                        s.text
                    );
                    let v = encode(&s.syllables, problem.inventory()).ok_or("unknown syllable")?;
                    ensure!(
                        problem.score(&v) == 1.0,
                        "`{}` re-scores to {}",
                        s.text,
                        problem.score(&v)
                    );
                }
                runs += 1;
                total += texts.len();
            }
        }
    }
    Ok(format!("{runs} runs, {total} solutions re-scored"))
}

fn main() {
    let criteria: [Check; 9] = [
        (
            "corpus statistics match brute-force oracles",
            corpus_statistics,
        ),
        ("bigram position calibration", position_calibration),
        ("score contract", score_contract),
        ("reactive dynamics trace", reactive_trace),
        ("prohibition semantics", prohibition_semantics),
        ("exhaustive-space completeness", exhaustive_completeness),
        ("trend replication", trend_replication),
        ("CLI determinism", cli_determinism),
        ("solution purity", solution_purity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match result {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
