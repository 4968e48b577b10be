//! Multi-objective hill climbing over a Hamming ball of radius `r` on
//! k-bounded pseudo-Boolean vector functions (vector Mk landscapes).
//!
//! The climber keeps one integer score vector per move in a linear-size
//! move basis (connected variable sets of the co-occurrence graph) and
//! updates only the scores a flip can change, so each step costs time
//! independent of `n` when every variable appears in a bounded number of
//! subfunctions.
//!
//! ```
//! use mkball_core::{
//!     climb, generate_adjacent_mnk, ClimbOptions, MoveIndex, NonDominatedArchive, Solution,
//!     WeightVector,
//! };
//! use rand::SeedableRng;
//!
//! let f = generate_adjacent_mnk(40, 2, 2, 100, 7).unwrap();
//! let index = MoveIndex::new(&f, 2).unwrap();
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
//! let x0 = Solution::random(f.n(), &mut rng);
//! let w = WeightVector::new(vec![0.5, 0.5]).unwrap();
//! let mut archive = NonDominatedArchive::new(2);
//! let result = climb(&f, &index, x0, &w, &mut archive, &mut rng, &ClimbOptions::default())
//!     .unwrap();
//! assert!(result.local_optimum);
//! assert!(!archive.is_empty());
//! ```

pub mod archive;
pub mod climber;
pub mod error;
pub mod harness;
pub mod landscape;
pub mod moves;
pub mod oracle;
pub mod scores;

pub use archive::{dominates, InsertOutcome, NonDominatedArchive};
pub use climber::{climb, select_strong, select_w_improving, ClimbOptions, ClimbResult, ReportSink};
pub use error::{Error, Result};
pub use harness::{
    eas50, multistart, run_experiment, sample_weight, Experiment, Model, RunConfig, RunStats,
};
pub use landscape::{
    generate_adjacent_mnk, generate_random_mnk, load_instance, save_instance, CoOccurrenceGraph,
    ObjectiveVector, Solution, Subfunction, VectorMkLandscape,
};
pub use moves::{decompose, enumerate_moves, MoveId, MoveIndex};
pub use scores::{Bucket, ScoreStore, WeightVector};
