//! Multi-start experiment driver: random start solution and weights per
//! restart, a shared non-dominated archive per run, timing statistics,
//! result files and 50% empirical attainment surfaces for two objectives.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;

use crate::archive::{save_front, NonDominatedArchive};
use crate::climber::{climb_store, ClimbOptions, ReportSink};
use crate::error::{Error, Result};
use crate::landscape::{
    generate_adjacent_mnk, generate_random_mnk, save_instance, ObjectiveVector, Solution,
    VectorMkLandscape,
};
use crate::moves::MoveIndex;
use crate::scores::{ScoreStore, WeightVector};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Model {
    #[default]
    Adjacent,
    Random,
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjacent" => Ok(Model::Adjacent),
            "random" => Ok(Model::Random),
            other => Err(Error::input(format!("unknown model {other:?}"))),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Adjacent => "adjacent",
            Model::Random => "random",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub q: u32,
    pub r: usize,
    /// Seed of the per-run random streams.
    pub seed: u64,
    /// Seed of the instance generator; defaults to `seed`.
    pub instance_seed: Option<u64>,
    /// Wall-clock budget of one run, seconds.
    pub time_limit: f64,
    pub runs: usize,
    /// Restart cap per run; with a generous time limit this makes runs
    /// reproducible independent of machine speed.
    pub max_restarts: Option<u64>,
    pub out: Option<PathBuf>,
    pub model: Model,
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 1000,
            k: 3,
            d: 2,
            q: 100,
            r: 1,
            seed: 0,
            instance_seed: None,
            time_limit: 60.0,
            runs: 1,
            max_restarts: None,
            out: None,
            model: Model::Adjacent,
            threads: 1,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::input("r must be >= 1"));
        }
        if !(self.time_limit.is_finite() && self.time_limit > 0.0) {
            return Err(Error::input("time limit must be a positive number of seconds"));
        }
        if self.runs == 0 {
            return Err(Error::input("runs must be >= 1"));
        }
        if self.threads == 0 {
            return Err(Error::input("threads must be >= 1"));
        }
        if self.n <= self.k {
            return Err(Error::input(format!("need N > K, got N={}, K={}", self.n, self.k)));
        }
        if self.d == 0 {
            return Err(Error::input("d must be >= 1"));
        }
        if self.q < 2 {
            return Err(Error::input("q must be >= 2"));
        }
        Ok(())
    }

    pub fn instance_seed(&self) -> u64 {
        self.instance_seed.unwrap_or(self.seed)
    }

    pub fn generate_instance(&self) -> Result<VectorMkLandscape> {
        match self.model {
            Model::Adjacent => generate_adjacent_mnk(self.n, self.k, self.d, self.q, self.instance_seed()),
            Model::Random => generate_random_mnk(self.n, self.k, self.d, self.q, self.instance_seed()),
        }
    }

    /// Random stream of run `run`: ChaCha8 keyed by `seed`, stream `run`.
    pub fn run_rng(&self, run: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(run as u64);
        rng
    }

    fn metadata(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            s.push_str(k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        };
        kv("n", self.n.to_string());
        kv("k", self.k.to_string());
        kv("d", self.d.to_string());
        kv("q", self.q.to_string());
        kv("r", self.r.to_string());
        kv("model", self.model.to_string());
        kv("seed", self.seed.to_string());
        kv("instance_seed", self.instance_seed().to_string());
        kv("rng", "chacha8 seed=<seed> stream=<run>".to_string());
        kv("time_limit", self.time_limit.to_string());
        kv("runs", self.runs.to_string());
        kv(
            "max_restarts",
            self.max_restarts.map_or("none".to_string(), |m| m.to_string()),
        );
        kv("threads", self.threads.to_string());
        s
    }
}

/// Timing and counting statistics of one multi-start run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunStats {
    pub run: usize,
    pub restarts: u64,
    pub total_moves: u64,
    pub strong_moves: u64,
    pub w_moves: u64,
    pub reports: u64,
    /// Archive inserts accepted / rejected.
    pub archive_added: u64,
    pub archive_rejected: u64,
    /// Graph and move-basis construction, excluded from per-move times.
    pub problem_init_ms: f64,
    /// Wall time of the restart loop.
    pub loop_secs: f64,
    /// Start-solution sampling and score computation, summed over restarts.
    pub solution_init_secs: f64,
    /// Time inside archive updates.
    pub archive_secs: f64,
    /// `loop_secs / total_moves`; includes solution-dependent init.
    pub mean_us_per_move: f64,
    /// `(loop_secs - solution_init_secs) / total_moves`.
    pub mean_us_per_move_excl_init: f64,
    /// Median over restarts (with at least one move) of that restart's
    /// wall time per move.
    pub median_us_per_move: f64,
    pub moves_per_restart: Vec<u64>,
    /// Archive size after each restart.
    pub archive_size_trace: Vec<usize>,
}

impl RunStats {
    fn to_text(&self, archive_len: usize) -> String {
        let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(",");
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            s.push_str(k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        };
        kv("run", self.run.to_string());
        kv("restarts", self.restarts.to_string());
        kv("moves", self.total_moves.to_string());
        kv("strong_moves", self.strong_moves.to_string());
        kv("w_moves", self.w_moves.to_string());
        kv("reports", self.reports.to_string());
        kv("archive_size", archive_len.to_string());
        kv("archive_added", self.archive_added.to_string());
        kv("archive_rejected", self.archive_rejected.to_string());
        kv("problem_init_ms", format!("{:.3}", self.problem_init_ms));
        kv("loop_secs", format!("{:.6}", self.loop_secs));
        kv("solution_init_secs", format!("{:.6}", self.solution_init_secs));
        kv("archive_secs", format!("{:.6}", self.archive_secs));
        kv("mean_us_per_move", format!("{:.4}", self.mean_us_per_move));
        kv(
            "mean_us_per_move_excl_init",
            format!("{:.4}", self.mean_us_per_move_excl_init),
        );
        kv("median_us_per_move", format!("{:.4}", self.median_us_per_move));
        kv(
            "moves_per_restart",
            join(&mut self.moves_per_restart.iter().map(u64::to_string)),
        );
        kv(
            "archive_size_trace",
            join(&mut self.archive_size_trace.iter().map(usize::to_string)),
        );
        s
    }
}

/// Uniform sample from the open positive unit simplex.
pub fn sample_weight<R: Rng + ?Sized>(d: usize, rng: &mut R) -> WeightVector {
    assert!(d >= 1, "d must be >= 1");
    loop {
        let raw: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let total: f64 = raw.iter().sum();
        if !(total.is_finite() && total > 0.0) {
            continue;
        }
        let w: Vec<f64> = raw.into_iter().map(|v| v / total).collect();
        if let Ok(w) = WeightVector::new(w) {
            return w;
        }
    }
}

struct TimedArchive<'a> {
    archive: &'a mut NonDominatedArchive,
    elapsed: Duration,
}

impl ReportSink for TimedArchive<'_> {
    fn report(&mut self, solution: &Solution, objectives: &[i64]) {
        let t = Instant::now();
        self.archive.insert(objectives, solution);
        self.elapsed += t.elapsed();
    }
}

fn median(v: &mut [f64]) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// One multi-start run on a prepared instance and move basis.
///
/// `problem_init` is the time the caller spent building `index`; it is
/// only recorded, never charged to moves.
pub fn multistart_on(
    f: &VectorMkLandscape,
    index: &MoveIndex,
    config: &RunConfig,
    run: usize,
    problem_init: Duration,
) -> Result<(NonDominatedArchive, RunStats)> {
    config.validate()?;
    let mut rng = config.run_rng(run);
    let mut archive = NonDominatedArchive::new(f.d());
    let mut stats = RunStats {
        run,
        problem_init_ms: problem_init.as_secs_f64() * 1e3,
        ..Default::default()
    };
    let start = Instant::now();
    let deadline = start + Duration::from_secs_f64(config.time_limit);
    let opts = ClimbOptions {
        deadline: Some(deadline),
        log_trajectory: false,
    };
    let mut per_restart = Vec::new();
    let mut solution_init = Duration::ZERO;
    let mut archive_time = Duration::ZERO;

    while Instant::now() < deadline && config.max_restarts.is_none_or(|m| stats.restarts < m) {
        let t0 = Instant::now();
        let x0 = Solution::random(f.n(), &mut rng);
        let w = sample_weight(f.d(), &mut rng);
        let mut store = ScoreStore::new(f, index, x0, w)?;
        let init = t0.elapsed();

        let mut sink = TimedArchive {
            archive: &mut archive,
            elapsed: Duration::ZERO,
        };
        let res = climb_store(f, index, &mut store, &mut sink, &mut rng, &opts);
        archive_time += sink.elapsed;
        solution_init += init;

        stats.restarts += 1;
        stats.total_moves += res.moves;
        stats.strong_moves += res.strong_moves;
        stats.w_moves += res.w_moves;
        stats.reports += res.reports;
        stats.moves_per_restart.push(res.moves);
        stats.archive_size_trace.push(archive.len());
        if res.moves > 0 {
            per_restart.push((init + res.climb_time).as_secs_f64() * 1e6 / res.moves as f64);
        }
    }

    let loop_time = start.elapsed();
    stats.loop_secs = loop_time.as_secs_f64();
    stats.solution_init_secs = solution_init.as_secs_f64();
    stats.archive_secs = archive_time.as_secs_f64();
    if stats.total_moves > 0 {
        let moves = stats.total_moves as f64;
        stats.mean_us_per_move = stats.loop_secs * 1e6 / moves;
        stats.mean_us_per_move_excl_init =
            (stats.loop_secs - stats.solution_init_secs).max(0.0) * 1e6 / moves;
    }
    stats.median_us_per_move = median(&mut per_restart);
    stats.archive_added = archive.added();
    stats.archive_rejected = archive.rejected();
    Ok((archive, stats))
}

/// Generates the configured instance and performs run 0.
pub fn multistart(config: &RunConfig) -> Result<(NonDominatedArchive, RunStats)> {
    config.validate()?;
    let f = config.generate_instance()?;
    let t = Instant::now();
    let index = MoveIndex::new(&f, config.r)?;
    multistart_on(&f, &index, config, 0, t.elapsed())
}

/// Everything produced by [`run_experiment`].
#[derive(Debug)]
pub struct Experiment {
    pub instance: VectorMkLandscape,
    pub moves_in_basis: usize,
    pub runs: Vec<(NonDominatedArchive, RunStats)>,
    /// 50% attainment surface over all runs, for two objectives.
    pub eas50: Option<Vec<ObjectiveVector>>,
}

/// All `config.runs` runs on one instance, each with its own archive and
/// random stream. Writes result files when `config.out` is set.
pub fn run_experiment(config: &RunConfig) -> Result<Experiment> {
    config.validate()?;
    let f = config.generate_instance()?;
    let t = Instant::now();
    let index = MoveIndex::new(&f, config.r)?;
    let problem_init = t.elapsed();

    let do_run = |run: usize| multistart_on(&f, &index, config, run, problem_init);
    let runs: Vec<_> = if config.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::input(format!("thread pool: {e}")))?;
        pool.install(|| (0..config.runs).into_par_iter().map(do_run).collect::<Result<_>>())?
    } else {
        (0..config.runs).map(do_run).collect::<Result<_>>()?
    };

    let eas50 = if f.d() == 2 {
        let fronts: Vec<_> = runs.iter().map(|(a, _)| a.front()).collect();
        Some(eas50(&fronts)?)
    } else {
        None
    };
    let exp = Experiment {
        moves_in_basis: index.len(),
        instance: f,
        runs,
        eas50,
    };
    if let Some(dir) = &config.out {
        export_results(&exp, config, dir)?;
    }
    Ok(exp)
}

/// Writes `metadata.txt`, `instance.txt`, and per run `front_NNN.txt` and
/// `stats_NNN.txt`, plus `eas50.txt` for two objectives.
pub fn export_results(exp: &Experiment, config: &RunConfig, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let meta = dir.join("metadata.txt");
    let mut text = config.metadata();
    text.push_str(&format!("moves_in_basis={}\n", exp.moves_in_basis));
    text.push_str(&format!("c={}\n", exp.instance.c()));
    fs::write(&meta, text).map_err(|e| Error::io(&meta, e))?;
    save_instance(&exp.instance, dir.join("instance.txt"))?;
    for (archive, stats) in &exp.runs {
        export_run(dir, archive, stats)?;
    }
    if let Some(eas) = &exp.eas50 {
        save_front(eas, dir.join("eas50.txt"))?;
    }
    Ok(())
}

pub fn export_run(dir: &Path, archive: &NonDominatedArchive, stats: &RunStats) -> Result<()> {
    save_front(&archive.front(), dir.join(format!("front_{:03}.txt", stats.run)))?;
    let path = dir.join(format!("stats_{:03}.txt", stats.run));
    fs::write(&path, stats.to_text(archive.len())).map_err(|e| Error::io(&path, e))
}

/// Parses a `key=value` stats or metadata file.
pub fn parse_key_values(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

/// Maximal points of the region attained (weakly dominated, maximizing)
/// by at least `min_runs` of the given two-objective fronts.
///
/// For each candidate first coordinate `a`, run `j` reaches height
/// `h_j(a) = max { p.1 : p in front_j, p.0 >= a }`; the surface height at
/// `a` is the `min_runs`-th largest of those.
pub fn attainment_surface(
    fronts: &[Vec<ObjectiveVector>],
    min_runs: usize,
) -> Result<Vec<ObjectiveVector>> {
    if fronts.is_empty() {
        return Err(Error::input("no fronts given"));
    }
    if min_runs == 0 || min_runs > fronts.len() {
        return Err(Error::input(format!(
            "attainment level {min_runs} outside 1..={}",
            fronts.len()
        )));
    }
    if let Some(p) = fronts.iter().flatten().find(|p| p.len() != 2) {
        return Err(Error::Unsupported(format!(
            "attainment surfaces need d = 2, got a {}-dimensional point",
            p.len()
        )));
    }
    let mut xs: Vec<i64> = fronts.iter().flatten().map(|p| p[0]).collect();
    xs.sort_unstable_by(|a, b| b.cmp(a));
    xs.dedup();

    let mut surface = Vec::new();
    let mut best_y = i64::MIN;
    let mut heights = Vec::with_capacity(fronts.len());
    for &a in &xs {
        heights.clear();
        heights.extend(
            fronts
                .iter()
                .filter_map(|fr| fr.iter().filter(|p| p[0] >= a).map(|p| p[1]).max()),
        );
        if heights.len() < min_runs {
            continue;
        }
        heights.sort_unstable_by(|a, b| b.cmp(a));
        let y = heights[min_runs - 1];
        if y > best_y {
            surface.push(vec![a, y]);
            best_y = y;
        }
    }
    surface.sort();
    Ok(surface)
}

/// 50% empirical attainment surface: attained by at least half the runs.
pub fn eas50(fronts: &[Vec<ObjectiveVector>]) -> Result<Vec<ObjectiveVector>> {
    attainment_surface(fronts, fronts.len().div_ceil(2).max(1))
}

/// Fraction of points of `reference` weakly dominated by some point of
/// `candidate`. An empty reference counts as fully covered.
pub fn surface_coverage(candidate: &[ObjectiveVector], reference: &[ObjectiveVector]) -> f64 {
    if reference.is_empty() {
        return 1.0;
    }
    let covered = reference
        .iter()
        .filter(|p| {
            candidate
                .iter()
                .any(|c| c.iter().zip(p.iter()).all(|(a, b)| a >= b))
        })
        .count();
    covered as f64 / reference.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archive::{dominates, parse_front};

    /// Counts attaining runs on the full grid of merged coordinates.
    fn brute_surface(fronts: &[Vec<ObjectiveVector>], min_runs: usize) -> Vec<ObjectiveVector> {
        let mut xs: Vec<i64> = fronts.iter().flatten().map(|p| p[0]).collect();
        let mut ys: Vec<i64> = fronts.iter().flatten().map(|p| p[1]).collect();
        xs.sort();
        xs.dedup();
        ys.sort();
        ys.dedup();
        let mut attained = Vec::new();
        for &x in &xs {
            for &y in &ys {
                let count = fronts
                    .iter()
                    .filter(|fr| fr.iter().any(|p| p[0] >= x && p[1] >= y))
                    .count();
                if count >= min_runs {
                    attained.push(vec![x, y]);
                }
            }
        }
        let mut out: Vec<_> = attained
            .iter()
            .filter(|p| !attained.iter().any(|q| dominates(q, p).unwrap()))
            .cloned()
            .collect();
        out.sort();
        out
    }

    #[test]
    fn eas_single_run_is_its_front() {
        let front = vec![vec![1, 5], vec![3, 3], vec![5, 1]];
        assert_eq!(eas50(std::slice::from_ref(&front)).unwrap(), front);
        assert_eq!(eas50(&[front.clone(), front.clone()]).unwrap(), front);
    }

    #[test]
    fn eas_three_runs() {
        let fronts = vec![vec![vec![1, 3]], vec![vec![3, 1]], vec![vec![2, 2]]];
        let got = eas50(&fronts).unwrap();
        assert_eq!(got, brute_surface(&fronts, 2));
        assert_eq!(got, vec![vec![1, 2], vec![2, 1]]);
    }

    #[test]
    fn eas_matches_grid_oracle_on_random_fronts() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let runs = rng.random_range(1..7);
            let fronts: Vec<Vec<ObjectiveVector>> = (0..runs)
                .map(|_| {
                    let mut a = NonDominatedArchive::new(2);
                    for _ in 0..rng.random_range(1..8) {
                        a.insert(&[rng.random_range(0..20), rng.random_range(0..20)], &Solution::zeros(1));
                    }
                    a.front()
                })
                .collect();
            for level in 1..=runs {
                let got = attainment_surface(&fronts, level).unwrap();
                assert_eq!(got, brute_surface(&fronts, level));
                for p in &got {
                    for q in &got {
                        assert!(!dominates(p, q).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn eas_rejects_other_dimensions() {
        assert!(matches!(eas50(&[vec![vec![1, 2, 3]]]), Err(Error::Unsupported(_))));
        assert!(eas50(&[]).is_err());
    }

    #[test]
    fn weights_positive_and_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(sample_weight(1, &mut rng).as_slice(), &[1.0]);
        let draws = 20_000;
        let mut mean = [0.0; 2];
        for _ in 0..draws {
            let w = sample_weight(2, &mut rng);
            assert!(w.as_slice().iter().all(|&c| c > 0.0));
            assert!((w.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-12);
            mean[0] += w.as_slice()[0];
            mean[1] += w.as_slice()[1];
        }
        // uniform on the 1-simplex: component variance 1/12, se ~ 0.002
        for m in mean {
            assert!((m / draws as f64 - 0.5).abs() < 0.01);
        }
    }

    #[test]
    fn config_validation() {
        let ok = RunConfig::default();
        assert!(ok.validate().is_ok());
        for bad in [
            RunConfig { r: 0, ..ok.clone() },
            RunConfig { time_limit: 0.0, ..ok.clone() },
            RunConfig { runs: 0, ..ok.clone() },
            RunConfig { n: 3, k: 3, ..ok.clone() },
            RunConfig { q: 1, ..ok.clone() },
        ] {
            assert!(bad.validate().is_err());
        }
        assert_eq!("adjacent".parse::<Model>().unwrap(), Model::Adjacent);
        assert!("nk".parse::<Model>().is_err());
    }

    fn small_config() -> RunConfig {
        RunConfig {
            n: 40,
            k: 2,
            d: 2,
            q: 100,
            r: 2,
            seed: 5,
            time_limit: 30.0,
            runs: 2,
            max_restarts: Some(20),
            ..Default::default()
        }
    }

    #[test]
    fn fixed_seed_runs_are_reproducible() {
        let c = small_config();
        let a = run_experiment(&c).unwrap();
        let b = run_experiment(&c).unwrap();
        for ((fa, sa), (fb, sb)) in a.runs.iter().zip(&b.runs) {
            assert_eq!(fa.front(), fb.front());
            assert_eq!(sa.moves_per_restart, sb.moves_per_restart);
            assert_eq!(sa.archive_size_trace, sb.archive_size_trace);
        }
        assert_eq!(a.eas50, b.eas50);
        assert_ne!(a.runs[0].0.front(), a.runs[1].0.front());
    }

    #[test]
    fn threaded_runs_match_sequential() {
        let c = small_config();
        let seq = run_experiment(&c).unwrap();
        let par = run_experiment(&RunConfig { threads: 2, ..c }).unwrap();
        for ((fa, _), (fb, _)) in seq.runs.iter().zip(&par.runs) {
            assert_eq!(fa.front(), fb.front());
        }
    }

    #[test]
    fn single_objective_archive_holds_one_value() {
        let c = RunConfig {
            d: 1,
            runs: 1,
            ..small_config()
        };
        let (archive, stats) = multistart(&c).unwrap();
        assert_eq!(archive.len(), 1);
        assert!(stats.total_moves > 0);
        assert_eq!(stats.restarts, 20);
    }

    #[test]
    fn export_writes_expected_files() {
        let dir = tempfile::tempdir().unwrap();
        let c = RunConfig {
            out: Some(dir.path().to_path_buf()),
            ..small_config()
        };
        let exp = run_experiment(&c).unwrap();
        let read = |name: &str| fs::read_to_string(dir.path().join(name)).unwrap();
        let meta = parse_key_values(&read("metadata.txt"));
        assert!(meta.contains(&("seed".to_string(), "5".to_string())));
        assert!(meta.contains(&("r".to_string(), "2".to_string())));
        let front = parse_front(&read("front_000.txt")).unwrap();
        assert_eq!(front, exp.runs[0].0.front());
        let stats = parse_key_values(&read("stats_001.txt"));
        let moves: u64 = stats.iter().find(|(k, _)| k == "moves").unwrap().1.parse().unwrap();
        assert!(moves > 0);
        assert_eq!(parse_front(&read("eas50.txt")).unwrap(), exp.eas50.unwrap());
        let inst = crate::landscape::load_instance(dir.path().join("instance.txt")).unwrap();
        assert_eq!(inst, exp.instance);

        // rerun into a second directory: fronts and metadata are bit-identical
        let dir2 = tempfile::tempdir().unwrap();
        run_experiment(&RunConfig {
            out: Some(dir2.path().to_path_buf()),
            ..small_config()
        })
        .unwrap();
        for name in ["metadata.txt", "front_000.txt", "front_001.txt", "eas50.txt"] {
            assert_eq!(read(name), fs::read_to_string(dir2.path().join(name)).unwrap());
        }
    }

    #[test]
    fn export_to_unwritable_path_reports_path() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        fs::write(&blocker, "x").unwrap();
        let c = RunConfig {
            out: Some(blocker.join("sub")),
            runs: 1,
            ..small_config()
        };
        match run_experiment(&c) {
            Err(Error::Io { path, .. }) => assert!(path.starts_with(&blocker)),
            other => panic!("expected i/o error, got {other:?}"),
        }
    }
}
