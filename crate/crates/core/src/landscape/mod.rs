//! Vector Mk landscapes: `d` objectives, each a sum of subfunctions that
//! read at most `k` variables through a dense lookup table.

mod format;
mod generate;
mod graph;

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

pub use format::{load_instance, parse_instance, save_instance, write_instance};
pub use generate::{generate_adjacent_mnk, generate_random_mnk};
pub use graph::CoOccurrenceGraph;

/// Largest supported epistasis bound; tables hold `2^k` entries.
pub const MAX_K: usize = 16;

/// Objective values `(f_1(x), ..., f_d(x))`, all maximized.
pub type ObjectiveVector = Vec<i64>;

/// A point of `B^n`, bit-packed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    n: usize,
    words: Vec<u64>,
}

impl Solution {
    pub fn new(bits: Vec<bool>) -> Self {
        let mut x = Solution::zeros(bits.len());
        for (v, b) in bits.into_iter().enumerate() {
            if b {
                x.words[v / 64] |= 1 << (v % 64);
            }
        }
        x
    }

    pub fn zeros(n: usize) -> Self {
        Solution {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    /// Uniform sample from `B^n`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut words: Vec<u64> = (0..n.div_ceil(64)).map(|_| rng.random()).collect();
        if !n.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (n % 64)) - 1;
            }
        }
        Solution { n, words }
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::input(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Solution::new)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, var: usize) -> bool {
        assert!(var < self.n, "variable {var} out of range 0..{}", self.n);
        self.words[var / 64] >> (var % 64) & 1 == 1
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.n).map(|v| self.get(v)).collect()
    }

    #[inline]
    pub fn flip(&mut self, var: usize) {
        assert!(var < self.n, "variable {var} out of range 0..{}", self.n);
        self.words[var / 64] ^= 1 << (var % 64);
    }

    /// `x <- x xor v` for the variable set `vars`.
    pub fn flip_all(&mut self, vars: &[u32]) {
        for &v in vars {
            self.flip(v as usize);
        }
    }

    pub fn hamming(&self, other: &Solution) -> usize {
        assert_eq!(self.n, other.n, "solution length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.n {
            f.write_str(if self.get(v) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Solution({self})")
    }
}

/// One term `f_i^(l)` of objective `i`.
///
/// The table is indexed by the projection of `x` onto the mask: bit `j` of
/// the index is the value of variable `mask[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subfunction {
    objective: usize,
    local: usize,
    mask: Vec<u32>,
    table: Vec<u32>,
}

impl Subfunction {
    pub fn new(objective: usize, mask: Vec<u32>, table: Vec<u32>) -> Self {
        Subfunction {
            objective,
            local: 0,
            mask,
            table,
        }
    }

    pub fn objective(&self) -> usize {
        self.objective
    }

    /// Position of this subfunction among those of its objective.
    pub fn local_index(&self) -> usize {
        self.local
    }

    pub fn mask(&self) -> &[u32] {
        &self.mask
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Index into the table for the projection of `x` onto the mask.
    #[inline]
    pub fn project(&self, x: &Solution) -> usize {
        project(&self.mask, x)
    }

    #[inline]
    pub fn value(&self, x: &Solution) -> u32 {
        self.table[self.project(x)]
    }
}

#[inline]
pub(crate) fn project(mask: &[u32], x: &Solution) -> usize {
    mask.iter()
        .enumerate()
        .fold(0usize, |acc, (j, &v)| acc | ((x.get(v as usize) as usize) << j))
}

/// One subfunction of a mask group: its objective and table offset.
#[derive(Copy, Clone, Debug)]
pub(crate) struct Term {
    pub(crate) objective: u32,
    pub(crate) table: u32,
}

/// Concatenated subfunction tables in the narrowest integer type that holds
/// every entry. Narrow tables keep the update working set small.
#[derive(Clone, Debug)]
pub(crate) enum Tables {
    U8(Vec<u8>),
    U16(Vec<u16>),
    U32(Vec<u32>),
}

impl Default for Tables {
    fn default() -> Self {
        Tables::U8(Vec::new())
    }
}

impl Tables {
    fn pack(values: Vec<u32>) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        if max <= u8::MAX as u32 {
            Tables::U8(values.into_iter().map(|v| v as u8).collect())
        } else if max <= u16::MAX as u32 {
            Tables::U16(values.into_iter().map(|v| v as u16).collect())
        } else {
            Tables::U32(values)
        }
    }
}

/// Table of `term` within the flat slice, for a mask of `width` variables.
#[inline]
pub(crate) fn term_table<T>(tables: &[T], term: Term, width: usize) -> &[T] {
    &tables[term.table as usize..][..1 << width]
}

/// Subfunctions sharing one ordered mask, stored flat. Adjacent MNK
/// instances put all `d` objectives on the same masks, so incidence is
/// stored once per group. Tables are laid out group by group.
#[derive(Clone, Debug, Default)]
pub(crate) struct MaskGroups {
    var_start: Vec<u32>,
    vars: Vec<u32>,
    term_start: Vec<u32>,
    terms: Vec<Term>,
    tables: Tables,
    of_var_start: Vec<u32>,
    of_var: Vec<u32>,
}

impl MaskGroups {
    fn build(n: usize, subfunctions: &[Subfunction]) -> (Self, Vec<u32>) {
        let mut index: std::collections::HashMap<&[u32], u32> = Default::default();
        let mut members: Vec<Vec<u32>> = Vec::new();
        let mut masks: Vec<&[u32]> = Vec::new();
        let mut sub_group = Vec::with_capacity(subfunctions.len());
        for (s, sub) in subfunctions.iter().enumerate() {
            let g = *index.entry(sub.mask.as_slice()).or_insert_with(|| {
                masks.push(&sub.mask);
                members.push(Vec::new());
                (members.len() - 1) as u32
            });
            members[g as usize].push(s as u32);
            sub_group.push(g);
        }

        let mut out = MaskGroups {
            var_start: vec![0],
            term_start: vec![0],
            ..Default::default()
        };
        let mut tables = Vec::new();
        let mut per_var = vec![Vec::new(); n];
        for (g, (mask, subs)) in masks.iter().zip(&members).enumerate() {
            out.vars.extend_from_slice(mask);
            out.var_start.push(out.vars.len() as u32);
            for &v in *mask {
                per_var[v as usize].push(g as u32);
            }
            for &s in subs {
                let sub = &subfunctions[s as usize];
                out.terms.push(Term {
                    objective: sub.objective as u32,
                    table: tables.len() as u32,
                });
                tables.extend_from_slice(&sub.table);
            }
            out.term_start.push(out.terms.len() as u32);
        }
        out.tables = Tables::pack(tables);
        out.of_var_start.push(0);
        for row in per_var {
            out.of_var.extend(row);
            out.of_var_start.push(out.of_var.len() as u32);
        }
        (out, sub_group)
    }

    pub(crate) fn len(&self) -> usize {
        self.var_start.len() - 1
    }

    #[inline]
    pub(crate) fn vars(&self, g: usize) -> &[u32] {
        &self.vars[self.var_start[g] as usize..self.var_start[g + 1] as usize]
    }

    #[inline]
    pub(crate) fn terms(&self, g: usize) -> &[Term] {
        &self.terms[self.term_start[g] as usize..self.term_start[g + 1] as usize]
    }

    pub(crate) fn tables(&self) -> &Tables {
        &self.tables
    }

    /// Groups whose mask contains `var`.
    #[inline]
    pub(crate) fn of_var(&self, var: usize) -> &[u32] {
        &self.of_var[self.of_var_start[var] as usize..self.of_var_start[var + 1] as usize]
    }
}

/// A `d`-objective function over `B^n` whose objectives are sums of
/// k-bounded subfunctions.
#[derive(Clone, Debug)]
pub struct VectorMkLandscape {
    n: usize,
    d: usize,
    k: usize,
    q: u32,
    c: usize,
    subfunctions: Vec<Subfunction>,
    /// `objective_start[i]..objective_start[i+1]` are the subfunctions of objective `i`.
    objective_start: Vec<usize>,
    groups: MaskGroups,
    sub_group: Vec<u32>,
}

impl PartialEq for VectorMkLandscape {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.d == other.d
            && self.k == other.k
            && self.q == other.q
            && self.subfunctions == other.subfunctions
    }
}

impl Eq for VectorMkLandscape {}

impl VectorMkLandscape {
    /// Builds and validates a landscape. Subfunctions are grouped by
    /// objective (stable order) and receive local indices `0..m_i`.
    pub fn new(
        n: usize,
        d: usize,
        k: usize,
        q: u32,
        mut subfunctions: Vec<Subfunction>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::validation("n must be positive"));
        }
        if d == 0 {
            return Err(Error::validation("d must be positive"));
        }
        if k == 0 || k > MAX_K {
            return Err(Error::validation(format!("k must be in 1..={MAX_K}, got {k}")));
        }
        if q == 0 {
            return Err(Error::validation("q must be positive"));
        }
        if n > u32::MAX as usize {
            return Err(Error::validation("n exceeds u32 range"));
        }

        let mut covered = vec![0usize; n];
        for (s, sub) in subfunctions.iter().enumerate() {
            if sub.objective >= d {
                return Err(Error::validation(format!(
                    "subfunction {s}: objective {} out of range 0..{d}",
                    sub.objective
                )));
            }
            if sub.mask.is_empty() || sub.mask.len() > k {
                return Err(Error::validation(format!(
                    "subfunction {s}: mask size {} not in 1..={k}",
                    sub.mask.len()
                )));
            }
            for (j, &v) in sub.mask.iter().enumerate() {
                if v as usize >= n {
                    return Err(Error::validation(format!(
                        "subfunction {s}: variable {v} out of range 0..{n}"
                    )));
                }
                if sub.mask[..j].contains(&v) {
                    return Err(Error::validation(format!(
                        "subfunction {s}: variable {v} repeated in mask"
                    )));
                }
                covered[v as usize] += 1;
            }
            if sub.table.len() != 1 << sub.mask.len() {
                return Err(Error::validation(format!(
                    "subfunction {s}: table length {} != 2^{}",
                    sub.table.len(),
                    sub.mask.len()
                )));
            }
            if let Some(bad) = sub.table.iter().find(|&&e| e >= q) {
                return Err(Error::validation(format!(
                    "subfunction {s}: table entry {bad} outside [0, {q})"
                )));
            }
        }
        if let Some(v) = covered.iter().position(|&c| c == 0) {
            return Err(Error::validation(format!(
                "variable {v} appears in no subfunction"
            )));
        }
        let c = covered.into_iter().max().unwrap_or(0);

        subfunctions.sort_by_key(|s| s.objective);
        let mut objective_start = vec![0; d + 1];
        for s in &subfunctions {
            objective_start[s.objective + 1] += 1;
        }
        for i in 0..d {
            objective_start[i + 1] += objective_start[i];
        }
        for i in 0..d {
            for (l, sub) in subfunctions[objective_start[i]..objective_start[i + 1]]
                .iter_mut()
                .enumerate()
            {
                sub.local = l;
            }
        }

        let (groups, sub_group) = MaskGroups::build(n, &subfunctions);

        Ok(VectorMkLandscape {
            n,
            d,
            k,
            q,
            c,
            subfunctions,
            objective_start,
            groups,
            sub_group,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Maximum number of subfunctions (over all objectives) any variable appears in.
    pub fn c(&self) -> usize {
        self.c
    }

    /// Number of subfunctions of objective `i` (`m_i`).
    pub fn m(&self, objective: usize) -> usize {
        self.objective_start[objective + 1] - self.objective_start[objective]
    }

    /// All subfunctions, grouped by objective.
    pub fn subfunctions(&self) -> &[Subfunction] {
        &self.subfunctions
    }

    pub fn subfunction(&self, objective: usize, local: usize) -> Result<&Subfunction> {
        if objective >= self.d || local >= self.m(objective) {
            return Err(Error::input(format!(
                "no subfunction ({objective}, {local})"
            )));
        }
        Ok(&self.subfunctions[self.objective_start[objective] + local])
    }

    pub fn evaluate(&self, x: &Solution) -> Result<ObjectiveVector> {
        self.check_len(x)?;
        let mut out = vec![0i64; self.d];
        for sub in &self.subfunctions {
            out[sub.objective] += sub.value(x) as i64;
        }
        Ok(out)
    }

    /// Value of the single subfunction `f_i^(l)` at `x`.
    pub fn evaluate_sub(&self, objective: usize, local: usize, x: &Solution) -> Result<u32> {
        self.check_len(x)?;
        Ok(self.subfunction(objective, local)?.value(x))
    }

    pub fn cooccurrence_graph(&self) -> CoOccurrenceGraph {
        CoOccurrenceGraph::from_masks(self.n, (0..self.groups.len()).map(|g| self.groups.vars(g)))
    }

    pub(crate) fn check_len(&self, x: &Solution) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::input(format!(
                "solution length {} != n = {}",
                x.len(),
                self.n
            )));
        }
        Ok(())
    }

    pub(crate) fn groups(&self) -> &MaskGroups {
        &self.groups
    }

    pub(crate) fn group_of(&self, sub: usize) -> usize {
        self.sub_group[sub] as usize
    }
}
