//! Next-improvement Hamming-ball hill climber: strong improving moves
//! first, otherwise w-improving moves, stopping when no stored move has a
//! positive w-score.

use std::time::{Duration, Instant};

use rand::Rng;

use crate::archive::NonDominatedArchive;
use crate::error::Result;
use crate::landscape::{ObjectiveVector, Solution, VectorMkLandscape};
use crate::moves::{MoveId, MoveIndex};
use crate::scores::{Bucket, ScoreStore, WeightVector};

/// Receives solutions the climber reports: the solution before every
/// w-improving (non-strong) step and the final solution.
pub trait ReportSink {
    fn report(&mut self, solution: &Solution, objectives: &[i64]);
}

impl ReportSink for NonDominatedArchive {
    fn report(&mut self, solution: &Solution, objectives: &[i64]) {
        self.insert(objectives, solution);
    }
}

/// Report log.
impl ReportSink for Vec<(Solution, ObjectiveVector)> {
    fn report(&mut self, solution: &Solution, objectives: &[i64]) {
        self.push((solution.clone(), objectives.to_vec()));
    }
}

impl<A: ReportSink, B: ReportSink> ReportSink for (A, B) {
    fn report(&mut self, solution: &Solution, objectives: &[i64]) {
        self.0.report(solution, objectives);
        self.1.report(solution, objectives);
    }
}

impl<S: ReportSink + ?Sized> ReportSink for &mut S {
    fn report(&mut self, solution: &Solution, objectives: &[i64]) {
        (**self).report(solution, objectives);
    }
}

#[derive(Clone, Debug, Default)]
pub struct ClimbOptions {
    /// Wall-clock limit, checked between moves.
    pub deadline: Option<Instant>,
    /// Record every visited solution (memory grows with the move count).
    pub log_trajectory: bool,
}

#[derive(Clone, Debug)]
pub struct ClimbResult {
    pub solution: Solution,
    pub objectives: ObjectiveVector,
    pub moves: u64,
    pub strong_moves: u64,
    pub w_moves: u64,
    /// Calls made to the sink, final report included.
    pub reports: u64,
    /// Time spent computing scores for the start solution.
    pub init_time: Duration,
    /// Time spent in the move loop (sink calls included).
    pub climb_time: Duration,
    /// False only when the deadline interrupted the climb.
    pub local_optimum: bool,
    /// Visited solutions, start first, when requested.
    pub trajectory: Option<Vec<Solution>>,
}

/// Smallest strong improving move, chosen uniformly among ties.
///
/// Panics if the strong bucket is empty.
pub fn select_strong<R: Rng + ?Sized>(store: &ScoreStore, rng: &mut R) -> MoveId {
    store
        .sample(Bucket::Strong, rng)
        .expect("select_strong called with no strong improving move")
}

/// Smallest w-improving (non-strong) move, chosen uniformly among ties.
///
/// Panics if the w-improving bucket is empty.
pub fn select_w_improving<R: Rng + ?Sized>(store: &ScoreStore, rng: &mut R) -> MoveId {
    store
        .sample(Bucket::WImproving, rng)
        .expect("select_w_improving called with no w-improving move")
}

/// Climbs from `x0` under weights `w` until a w-local optimum of the
/// radius-`r` ball is reached (or the deadline passes).
pub fn climb<S, R>(
    f: &VectorMkLandscape,
    index: &MoveIndex,
    x0: Solution,
    w: &WeightVector,
    sink: &mut S,
    rng: &mut R,
    opts: &ClimbOptions,
) -> Result<ClimbResult>
where
    S: ReportSink + ?Sized,
    R: Rng + ?Sized,
{
    let start = Instant::now();
    let mut store = ScoreStore::new(f, index, x0, w.clone())?;
    let init_time = start.elapsed();
    let mut result = climb_store(f, index, &mut store, sink, rng, opts);
    result.init_time = init_time;
    Ok(result)
}

/// Runs the move loop on an already initialized store.
pub fn climb_store<S, R>(
    f: &VectorMkLandscape,
    index: &MoveIndex,
    store: &mut ScoreStore,
    sink: &mut S,
    rng: &mut R,
    opts: &ClimbOptions,
) -> ClimbResult
where
    S: ReportSink + ?Sized,
    R: Rng + ?Sized,
{
    let start = Instant::now();
    let mut trajectory = opts
        .log_trajectory
        .then(|| vec![store.solution().clone()]);
    let (mut strong, mut weak, mut reports) = (0u64, 0u64, 0u64);
    let mut local_optimum = true;

    loop {
        let t = if let Some(t) = store.sample(Bucket::Strong, rng) {
            strong += 1;
            t
        } else if let Some(t) = store.sample(Bucket::WImproving, rng) {
            sink.report(store.solution(), store.objectives());
            reports += 1;
            weak += 1;
            t
        } else {
            break;
        };
        store.update_scores(f, index, t);
        if let Some(tr) = trajectory.as_mut() {
            tr.push(store.solution().clone());
        }
        if let Some(deadline) = opts.deadline {
            if Instant::now() >= deadline {
                local_optimum =
                    store.count(Bucket::Strong) == 0 && store.count(Bucket::WImproving) == 0;
                break;
            }
        }
    }
    sink.report(store.solution(), store.objectives());
    reports += 1;

    ClimbResult {
        solution: store.solution().clone(),
        objectives: store.objectives().to_vec(),
        moves: strong + weak,
        strong_moves: strong,
        w_moves: weak,
        reports,
        init_time: Duration::ZERO,
        climb_time: start.elapsed(),
        local_optimum,
        trajectory,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archive::dominates;
    use crate::landscape::{generate_adjacent_mnk, Subfunction};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(v: &[f64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    /// x0, x1 never co-occur; at x = 00, S_{0} = (-1, 3), S_{1} = (3, -1).
    fn crossing_pair() -> VectorMkLandscape {
        VectorMkLandscape::new(
            2,
            2,
            1,
            5,
            vec![
                Subfunction::new(0, vec![0], vec![1, 0]),
                Subfunction::new(1, vec![0], vec![0, 3]),
                Subfunction::new(0, vec![1], vec![0, 3]),
                Subfunction::new(1, vec![1], vec![1, 0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn local_optimum_start_takes_no_moves() {
        let f = crossing_pair();
        let idx = MoveIndex::new(&f, 2).unwrap();
        let x = Solution::from_bitstring("11").unwrap();
        let mut log: Vec<(Solution, ObjectiveVector)> = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let res = climb(&f, &idx, x.clone(), &w(&[1.0, 1.0]), &mut log, &mut rng, &Default::default())
            .unwrap();
        assert_eq!(res.moves, 0);
        assert_eq!(log, vec![(x, vec![3, 3])]);
        assert!(res.local_optimum);
    }

    #[test]
    fn weak_steps_reach_the_combined_strong_move() {
        let f = crossing_pair();
        let idx = MoveIndex::new(&f, 2).unwrap();
        let x0 = Solution::zeros(2);
        let f0 = f.evaluate(&x0).unwrap();
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut log: Vec<(Solution, ObjectiveVector)> = Vec::new();
            let res = climb(&f, &idx, x0.clone(), &w(&[1.0, 1.0]), &mut log, &mut rng, &Default::default())
                .unwrap();
            assert!(dominates(&res.objectives, &f0).unwrap());
            assert_eq!(res.objectives, vec![3, 3]);
            // each single flip stays weak after the other: two weak steps
            assert_eq!((res.w_moves, res.strong_moves), (2, 0));
            assert_eq!(log.len() as u64, res.w_moves + 1);
        }
    }

    #[test]
    fn w_score_strictly_increases_and_reports_are_complete() {
        let f = generate_adjacent_mnk(40, 2, 2, 100, 21).unwrap();
        let idx = MoveIndex::new(&f, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let weights = w(&[0.3, 0.7]);
        let x0 = Solution::random(40, &mut rng);
        let mut log: Vec<(Solution, ObjectiveVector)> = Vec::new();
        let opts = ClimbOptions {
            log_trajectory: true,
            ..Default::default()
        };
        let res = climb(&f, &idx, x0, &weights, &mut log, &mut rng, &opts).unwrap();
        let tr = res.trajectory.unwrap();
        assert_eq!(tr.len() as u64, res.moves + 1);
        for pair in tr.windows(2) {
            let a = f.evaluate(&pair[0]).unwrap();
            let b = f.evaluate(&pair[1]).unwrap();
            let diff: Vec<i64> = b.iter().zip(&a).map(|(p, q)| p - q).collect();
            assert!(weights.dot(&diff) > 0.0);
        }
        assert_eq!(log.len() as u64, res.w_moves + 1);
        assert_eq!(res.reports, res.w_moves + 1);
        assert_eq!(log.last().unwrap().0, res.solution);
        for (x, fx) in &log {
            assert_eq!(&f.evaluate(x).unwrap(), fx);
        }
    }

    #[test]
    fn expired_deadline_stops_early() {
        let f = generate_adjacent_mnk(500, 3, 2, 100, 1).unwrap();
        let idx = MoveIndex::new(&f, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut archive = NonDominatedArchive::new(2);
        let opts = ClimbOptions {
            deadline: Some(Instant::now()),
            ..Default::default()
        };
        let res = climb(&f, &idx, Solution::random(500, &mut rng), &w(&[0.5, 0.5]), &mut archive, &mut rng, &opts)
            .unwrap();
        assert_eq!(res.moves, 1);
        assert!(!res.local_optimum);
        assert!(!archive.is_empty());
    }

    #[test]
    fn selection_picks_smallest_then_uniform() {
        // x0 alone improves; {x1,x2} only improves jointly
        let f = VectorMkLandscape::new(
            3,
            1,
            2,
            4,
            vec![
                Subfunction::new(0, vec![0], vec![0, 1]),
                Subfunction::new(0, vec![1, 2], vec![1, 0, 0, 3]),
            ],
        )
        .unwrap();
        let idx = MoveIndex::new(&f, 2).unwrap();
        let store = ScoreStore::new(&f, &idx, Solution::zeros(3), w(&[1.0])).unwrap();
        assert_eq!(store.members(Bucket::Strong).len(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            assert_eq!(idx.vars(select_strong(&store, &mut rng)), &[0]);
        }
    }

    #[test]
    fn two_singletons_drawn_evenly() {
        let f = VectorMkLandscape::new(
            2,
            1,
            1,
            2,
            vec![
                Subfunction::new(0, vec![0], vec![0, 1]),
                Subfunction::new(0, vec![1], vec![0, 1]),
            ],
        )
        .unwrap();
        let idx = MoveIndex::new(&f, 1).unwrap();
        let store = ScoreStore::new(&f, &idx, Solution::zeros(2), w(&[1.0])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let draws = 10_000;
        let first = (0..draws)
            .filter(|_| idx.vars(select_strong(&store, &mut rng)) == [0])
            .count() as f64;
        let expected = draws as f64 / 2.0;
        let chi2 = 2.0 * (first - expected).powi(2) / expected;
        // 1 degree of freedom, p = 0.001
        assert!(chi2 < 10.83, "chi2 = {chi2}");
    }

    #[test]
    #[should_panic]
    fn empty_bucket_selection_panics() {
        let f = crossing_pair();
        let idx = MoveIndex::new(&f, 1).unwrap();
        let store =
            ScoreStore::new(&f, &idx, Solution::from_bitstring("11").unwrap(), w(&[1.0, 1.0])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        select_w_improving(&store, &mut rng);
    }
}
