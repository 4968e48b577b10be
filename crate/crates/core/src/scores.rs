//! Score vectors `S_v(x) = f(x xor v) - f(x)` for every basis move, kept
//! exact under flips, and the three buckets the climber samples from.

use std::io::{self, Write};

use rand::Rng;

use crate::error::{Error, Result};
use crate::landscape::{
    project, term_table, MaskGroups, ObjectiveVector, Solution, Tables, VectorMkLandscape,
};
use crate::moves::{MoveId, MoveIndex};

/// Classification of a move under the current scores and weights.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bucket {
    /// No objective gets worse and at least one gets strictly better.
    Strong = 0,
    /// Not strong, but `w . S_v > 0`.
    WImproving = 1,
    Rest = 2,
}

impl Bucket {
    pub const ALL: [Bucket; 3] = [Bucket::Strong, Bucket::WImproving, Bucket::Rest];

    pub fn name(self) -> &'static str {
        match self {
            Bucket::Strong => "strong",
            Bucket::WImproving => "w-improving",
            Bucket::Rest => "rest",
        }
    }
}

/// Strictly positive weights defining the w-score direction.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::input("weight vector is empty"));
        }
        if let Some(bad) = w.iter().find(|&&c| !(c.is_finite() && c > 0.0)) {
            return Err(Error::input(format!(
                "weight components must be finite and > 0, got {bad}"
            )));
        }
        Ok(WeightVector(w))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn dot(&self, s: &[i64]) -> f64 {
        self.0.iter().zip(s).map(|(w, &v)| w * v as f64).sum()
    }
}

/// Bucket of a score vector under weights `w`.
#[inline]
pub fn classify_scores(s: &[i64], w: &WeightVector) -> Bucket {
    if s.iter().all(|&v| v >= 0) && s.iter().any(|&v| v > 0) {
        Bucket::Strong
    } else if w.dot(s) > 0.0 {
        Bucket::WImproving
    } else {
        Bucket::Rest
    }
}

const TAG_BITS: u32 = 2;
const SIZE_BITS: u32 = 4;
const POS_SHIFT: u32 = TAG_BITS + SIZE_BITS;
/// Largest move basis the packed slots can address.
pub const MAX_MOVES: usize = 1 << (32 - POS_SHIFT);
/// Largest radius the packed slots can address.
pub const MAX_RADIUS: usize = 1 << SIZE_BITS;

/// Per-bucket member lists split by move size, with O(1) transfer. Each
/// move's bucket, size and list position share one packed word.
#[derive(Clone, Debug)]
struct Buckets {
    lists: [Vec<Vec<u32>>; 3],
    /// `pos << POS_SHIFT | (size - 1) << TAG_BITS | bucket`
    slot: Vec<u32>,
}

impl Buckets {
    fn new(index: &MoveIndex) -> Self {
        let r = index.r();
        Buckets {
            lists: std::array::from_fn(|_| vec![Vec::new(); r]),
            slot: index
                .ids()
                .map(|m| ((index.size(m) as u32 - 1) << TAG_BITS) | Bucket::Rest as u32)
                .collect(),
        }
    }

    #[inline]
    fn tag(&self, m: u32) -> Bucket {
        Bucket::ALL[(self.slot[m as usize] & 3) as usize]
    }

    /// Adds `m` to `b`; the slot must hold the move's size.
    #[inline]
    fn insert(&mut self, m: u32, b: Bucket) {
        let size = (self.slot[m as usize] >> TAG_BITS) & ((1 << SIZE_BITS) - 1);
        let list = &mut self.lists[b as usize][size as usize];
        self.slot[m as usize] = (list.len() as u32) << POS_SHIFT | size << TAG_BITS | b as u32;
        list.push(m);
    }

    #[inline]
    fn remove(&mut self, m: u32) {
        let slot = self.slot[m as usize];
        let size = (slot >> TAG_BITS) & ((1 << SIZE_BITS) - 1);
        let list = &mut self.lists[(slot & 3) as usize][size as usize];
        let p = (slot >> POS_SHIFT) as usize;
        list.swap_remove(p);
        if let Some(&moved) = list.get(p) {
            let s = &mut self.slot[moved as usize];
            *s = (*s & ((1 << POS_SHIFT) - 1)) | (p as u32) << POS_SHIFT;
        }
    }

    #[inline]
    fn set(&mut self, m: u32, b: Bucket) {
        if self.slot[m as usize] & 3 != b as u32 {
            self.remove(m);
            self.insert(m, b);
        }
    }

    fn count(&self, b: Bucket) -> usize {
        self.lists[b as usize].iter().map(Vec::len).sum()
    }

    /// Uniform pick among the members of smallest size.
    fn sample<R: Rng + ?Sized>(&self, b: Bucket, rng: &mut R) -> Option<u32> {
        let list = self.lists[b as usize].iter().find(|l| !l.is_empty())?;
        Some(list[rng.random_range(0..list.len())])
    }

    fn members(&self, b: Bucket) -> impl Iterator<Item = u32> + '_ {
        self.lists[b as usize].iter().flatten().copied()
    }
}

/// Score vectors of every move in `M^r` for the current solution.
///
/// The store owns the current solution `x` and its objective vector. It does
/// not borrow the landscape or move index; every call that needs them takes
/// them as arguments and they must be the ones the store was built with.
#[derive(Clone, Debug)]
pub struct ScoreStore {
    d: usize,
    x: Solution,
    fx: ObjectiveVector,
    w: WeightVector,
    /// `scores[m * d + i]` is `S_{i,m}`.
    scores: Vec<i64>,
    buckets: Buckets,
    /// Groups visited by the current update.
    visited: Vec<u32>,
    last_triples: usize,
}

impl ScoreStore {
    /// Computes every stored score from scratch, visiting for each
    /// subfunction only the moves that touch its mask.
    pub fn new(
        f: &VectorMkLandscape,
        index: &MoveIndex,
        x: Solution,
        w: WeightVector,
    ) -> Result<Self> {
        f.check_len(&x)?;
        if w.len() != f.d() {
            return Err(Error::input(format!(
                "weight vector has {} components, landscape has d = {}",
                w.len(),
                f.d()
            )));
        }
        if index.graph().n() != f.n() {
            return Err(Error::input("move index was built for a different landscape"));
        }
        if index.len() > MAX_MOVES || index.r() > MAX_RADIUS {
            return Err(Error::input(format!(
                "move basis too large for the score store ({} moves, r = {}; limits {MAX_MOVES}, {MAX_RADIUS})",
                index.len(),
                index.r()
            )));
        }
        let d = f.d();
        let groups = f.groups();
        let scores = match groups.tables() {
            Tables::U8(t) => initial_scores(groups, t, index, &x, d),
            Tables::U16(t) => initial_scores(groups, t, index, &x, d),
            Tables::U32(t) => initial_scores(groups, t, index, &x, d),
        };
        let fx = f.evaluate(&x)?;
        let mut buckets = Buckets::new(index);
        for m in 0..index.len() {
            let b = classify_scores(&scores[m * d..(m + 1) * d], &w);
            buckets.insert(m as u32, b);
        }
        Ok(ScoreStore {
            d,
            x,
            fx,
            w,
            scores,
            buckets,
            visited: Vec::new(),
            last_triples: 0,
        })
    }

    pub fn solution(&self) -> &Solution {
        &self.x
    }

    /// `f(x)` for the current solution, maintained from the scores.
    pub fn objectives(&self) -> &[i64] {
        &self.fx
    }

    pub fn weights(&self) -> &WeightVector {
        &self.w
    }

    pub fn len(&self) -> usize {
        self.scores.len() / self.d
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    #[inline]
    pub fn score(&self, m: MoveId) -> &[i64] {
        &self.scores[m.index() * self.d..(m.index() + 1) * self.d]
    }

    /// `w . S_v`.
    pub fn w_score(&self, m: MoveId) -> f64 {
        self.w.dot(self.score(m))
    }

    /// Stored bucket tag of `m`.
    pub fn bucket(&self, m: MoveId) -> Bucket {
        self.buckets.tag(m.0)
    }

    /// Classification of `m` from its current score and weights.
    pub fn classify(&self, m: MoveId) -> Bucket {
        classify_scores(self.score(m), &self.w)
    }

    pub fn count(&self, b: Bucket) -> usize {
        self.buckets.count(b)
    }

    pub fn members(&self, b: Bucket) -> Vec<MoveId> {
        self.buckets.members(b).map(MoveId).collect()
    }

    /// A uniformly random move among the smallest members of `b`.
    pub fn sample<R: Rng + ?Sized>(&self, b: Bucket, rng: &mut R) -> Option<MoveId> {
        self.buckets.sample(b, rng).map(MoveId)
    }

    /// `(i, l, v)` triples processed by the most recent update.
    pub fn last_update_triples(&self) -> usize {
        self.last_triples
    }

    /// Moves to `x xor t`, adjusting every score that can change.
    ///
    /// For each subfunction whose mask meets `t` and each move `v` meeting
    /// the same mask, `S_{i,v}` gains
    /// `f(x^t^v) - f(x^t) - f(x^v) + f(x)` for that subfunction. All four
    /// values are lookups at the projection of `x` xor local flip bits.
    /// Touched moves are re-bucketed.
    ///
    /// Panics if `t` is not a move of `index`.
    pub fn update_scores(&mut self, f: &VectorMkLandscape, index: &MoveIndex, t: MoveId) {
        assert!(t.index() < index.len(), "move {t:?} is not in the move basis");
        let d = self.d;
        for i in 0..d {
            self.fx[i] += self.scores[t.index() * d + i];
        }
        let mut visited = std::mem::take(&mut self.visited);
        visited.clear();
        let tvars = index.vars(t);
        let groups = f.groups();
        let (x, scores) = (&self.x, &mut self.scores[..]);
        let triples = match groups.tables() {
            Tables::U8(tab) => accumulate(groups, tab, index, x, tvars, scores, d, &mut visited),
            Tables::U16(tab) => accumulate(groups, tab, index, x, tvars, scores, d, &mut visited),
            Tables::U32(tab) => accumulate(groups, tab, index, x, tvars, scores, d, &mut visited),
        };
        self.x.flip_all(tvars);
        // a move shared by several groups is classified more than once; harmless
        for &g in &visited {
            for &m in index.group_moves(g as usize).0 {
                let b = classify_scores(&self.scores[m as usize * d..(m as usize + 1) * d], &self.w);
                self.buckets.set(m, b);
            }
        }
        self.visited = visited;
        self.last_triples = triples;
    }

    /// Switches to new weights. Only moves outside the strong bucket can
    /// change bucket; scores are untouched.
    pub fn reclassify(&mut self, w: WeightVector) -> Result<()> {
        if w.len() != self.d {
            return Err(Error::input(format!(
                "weight vector has {} components, expected {}",
                w.len(),
                self.d
            )));
        }
        self.w = w;
        let candidates: Vec<u32> = self
            .buckets
            .members(Bucket::WImproving)
            .chain(self.buckets.members(Bucket::Rest))
            .collect();
        for m in candidates {
            let b = classify_scores(self.score(MoveId(m)), &self.w);
            self.buckets.set(m, b);
        }
        Ok(())
    }

    /// One line per move: variables, score vector and bucket, tab separated.
    pub fn dump<W: Write>(&self, index: &MoveIndex, out: &mut W) -> io::Result<()> {
        for m in index.ids() {
            let vars: Vec<String> = index.vars(m).iter().map(u32::to_string).collect();
            let score: Vec<String> = self.score(m).iter().map(i64::to_string).collect();
            writeln!(
                out,
                "{}\t{}\t{}",
                vars.join(","),
                score.join(","),
                self.bucket(m).name()
            )?;
        }
        Ok(())
    }

}

/// Scores of every move at `x`, computed group by group.
fn initial_scores<T: Copy + Into<i64>>(
    groups: &MaskGroups,
    tables: &[T],
    index: &MoveIndex,
    x: &Solution,
    d: usize,
) -> Vec<i64> {
    let mut scores = vec![0i64; index.len() * d];
    for g in 0..groups.len() {
        let mask = groups.vars(g);
        let xi = project(mask, x);
        let (ms, bits) = index.group_moves(g);
        for &term in groups.terms(g) {
            let table = term_table(tables, term, mask.len());
            let here: i64 = table[xi].into();
            let obj = term.objective as usize;
            for (&m, &vb) in ms.iter().zip(bits) {
                let there: i64 = table[xi ^ vb as usize].into();
                scores[m as usize * d + obj] += there - here;
            }
        }
    }
    scores
}

/// Adds the effect of flipping `tvars` at `x` to every affected score and
/// records the visited groups. Returns the number of (term, move) pairs.
#[allow(clippy::too_many_arguments)]
fn accumulate<T: Copy + Into<i64>>(
    groups: &MaskGroups,
    tables: &[T],
    index: &MoveIndex,
    x: &Solution,
    tvars: &[u32],
    scores: &mut [i64],
    d: usize,
    visited: &mut Vec<u32>,
) -> usize {
    let mut triples = 0;
    for &tv in tvars {
        for &g in groups.of_var(tv as usize) {
            if visited.contains(&g) {
                continue;
            }
            visited.push(g);
            let g = g as usize;
            let mask = groups.vars(g);
            let xi = project(mask, x);
            let tb = mask
                .iter()
                .enumerate()
                .filter(|(_, v)| tvars.contains(v))
                .fold(0usize, |acc, (j, _)| acc | 1 << j);
            let xt = xi ^ tb;
            let (ms, bits) = index.group_moves(g);
            let terms = groups.terms(g);
            for &term in terms {
                let table = term_table(tables, term, mask.len());
                let obj = term.objective as usize;
                let base = table[xi].into() - table[xt].into();
                for (&m, &vb) in ms.iter().zip(bits) {
                    let vb = vb as usize;
                    scores[m as usize * d + obj] +=
                        table[xt ^ vb].into() - table[xi ^ vb].into() + base;
                }
            }
            triples += ms.len() * terms.len();
        }
    }
    triples
}
