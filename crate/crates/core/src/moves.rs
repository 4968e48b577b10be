//! The move basis `M^r`: every set of at most `r` variables whose induced
//! subgraph of the co-occurrence graph is connected. Scores of any other
//! move in the Hamming ball are sums of scores of basis moves.

use crate::error::{Error, Result};
use crate::landscape::{CoOccurrenceGraph, VectorMkLandscape};

/// Dense handle of a move in a [`MoveIndex`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveId(pub u32);

impl MoveId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Lists every connected induced vertex set of size `1..=r`, each exactly
/// once, as sorted variable lists ordered by size then lexicographically.
///
/// Sets are grown from each root using only vertices greater than the root
/// and, at each step, only the exclusive neighbourhood of the newly added
/// vertex, so no set can be reached twice.
pub fn enumerate_moves(graph: &CoOccurrenceGraph, r: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if r == 0 {
        return out;
    }
    let mut current = Vec::with_capacity(r);
    for root in 0..graph.n() as u32 {
        current.push(root);
        let ext: Vec<u32> = graph
            .neighbors(root as usize)
            .iter()
            .copied()
            .filter(|&u| u > root)
            .collect();
        extend(graph, root, &mut current, ext, r, &mut out);
        current.pop();
    }
    out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn extend(
    graph: &CoOccurrenceGraph,
    root: u32,
    current: &mut Vec<u32>,
    mut ext: Vec<u32>,
    r: usize,
    out: &mut Vec<Vec<u32>>,
) {
    let mut found = current.clone();
    found.sort_unstable();
    out.push(found);
    if current.len() == r {
        return;
    }
    while let Some(w) = ext.pop() {
        let mut next = ext.clone();
        for &u in graph.neighbors(w as usize) {
            if u > root
                && !current.contains(&u)
                && !current.iter().any(|&s| graph.has_edge(s, u))
            {
                next.push(u);
            }
        }
        current.push(w);
        extend(graph, root, current, next, r, out);
        current.pop();
    }
}

/// Splits `vars` into the connected components of the induced subgraph.
/// Each component is sorted; components are ordered by smallest variable.
pub fn decompose(vars: &[u32], graph: &CoOccurrenceGraph) -> Vec<Vec<u32>> {
    let mut remaining: Vec<u32> = vars.to_vec();
    remaining.sort_unstable();
    remaining.dedup();
    let mut parts = Vec::new();
    while !remaining.is_empty() {
        let mut comp = vec![remaining.remove(0)];
        let mut frontier = 0;
        while frontier < comp.len() {
            let v = comp[frontier];
            frontier += 1;
            let mut i = 0;
            while i < remaining.len() {
                if graph.has_edge(v, remaining[i]) {
                    comp.push(remaining.remove(i));
                } else {
                    i += 1;
                }
            }
        }
        comp.sort_unstable();
        parts.push(comp);
    }
    parts
}

/// Compressed rows: `start[i]..start[i+1]` indexes `data`.
#[derive(Clone, Debug, Default)]
struct Rows<T> {
    start: Vec<u32>,
    data: Vec<T>,
}

impl<T> Rows<T> {
    fn push_row(&mut self, row: impl IntoIterator<Item = T>) {
        if self.start.is_empty() {
            self.start.push(0);
        }
        self.data.extend(row);
        self.start.push(self.data.len() as u32);
    }

    #[inline]
    fn row(&self, i: usize) -> &[T] {
        &self.data[self.start[i] as usize..self.start[i + 1] as usize]
    }

    fn rows(&self) -> usize {
        self.start.len().saturating_sub(1)
    }
}

/// The move basis of a landscape with all incidence lists the score
/// update needs, built once per instance.
#[derive(Clone, Debug)]
pub struct MoveIndex {
    r: usize,
    graph: CoOccurrenceGraph,
    moves: Rows<u32>,
    by_var: Rows<u32>,
    /// Per mask group: moves touching the mask.
    by_group: Rows<u32>,
    /// Parallel to `by_group.data`: the move's variables as bits of the
    /// group's local table index.
    group_bits: Vec<u16>,
    /// subfunction -> mask group
    sub_group: Vec<u32>,
    objective_start: Vec<usize>,
}

impl MoveIndex {
    pub fn new(f: &VectorMkLandscape, r: usize) -> Result<Self> {
        Self::with_graph(f, f.cooccurrence_graph(), r)
    }

    pub fn with_graph(f: &VectorMkLandscape, graph: CoOccurrenceGraph, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::input("radius r must be at least 1"));
        }
        if graph.n() != f.n() {
            return Err(Error::input("graph and landscape disagree on n"));
        }
        let list = enumerate_moves(&graph, r);
        if list.len() > u32::MAX as usize {
            return Err(Error::input("move basis too large"));
        }

        let mut per_var: Vec<Vec<u32>> = vec![Vec::new(); f.n()];
        let mut moves = Rows::default();
        for (id, vars) in list.iter().enumerate() {
            for &v in vars {
                per_var[v as usize].push(id as u32);
            }
        }
        for vars in list {
            moves.push_row(vars);
        }
        let mut by_var = Rows::default();
        for row in per_var {
            by_var.push_row(row);
        }

        let mut by_group = Rows::default();
        let mut group_bits = Vec::new();
        let mut scratch = Vec::new();
        let groups = f.groups();
        for g in 0..groups.len() {
            let mask = groups.vars(g);
            scratch.clear();
            for &v in mask {
                scratch.extend_from_slice(by_var.row(v as usize));
            }
            scratch.sort_unstable();
            scratch.dedup();
            for &m in &scratch {
                let mut bits = 0u16;
                for &v in moves.row(m as usize) {
                    if let Some(j) = mask.iter().position(|&u| u == v) {
                        bits |= 1 << j;
                    }
                }
                group_bits.push(bits);
            }
            by_group.push_row(scratch.iter().copied());
        }

        let sub_group = (0..f.subfunctions().len())
            .map(|s| f.group_of(s) as u32)
            .collect();
        let objective_start = (0..=f.d())
            .map(|i| (0..i).map(|j| f.m(j)).sum())
            .collect();

        Ok(MoveIndex {
            r,
            graph,
            moves,
            by_var,
            by_group,
            group_bits,
            sub_group,
            objective_start,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn graph(&self) -> &CoOccurrenceGraph {
        &self.graph
    }

    /// `|M^r|`.
    pub fn len(&self) -> usize {
        self.moves.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ids(&self) -> impl ExactSizeIterator<Item = MoveId> + '_ {
        (0..self.len() as u32).map(MoveId)
    }

    /// Sorted variables flipped by `id`.
    #[inline]
    pub fn vars(&self, id: MoveId) -> &[u32] {
        self.moves.row(id.index())
    }

    #[inline]
    pub fn size(&self, id: MoveId) -> usize {
        self.vars(id).len()
    }

    /// Moves that flip variable `var`.
    pub fn moves_with_var(&self, var: usize) -> impl ExactSizeIterator<Item = MoveId> + '_ {
        self.by_var.row(var).iter().map(|&m| MoveId(m))
    }

    /// Moves whose variables intersect the mask of subfunction `(objective, local)`.
    pub fn subfunction_moves(
        &self,
        objective: usize,
        local: usize,
    ) -> impl ExactSizeIterator<Item = MoveId> + '_ {
        let s = self.objective_start[objective] + local;
        self.by_group
            .row(self.sub_group[s] as usize)
            .iter()
            .map(|&m| MoveId(m))
    }

    /// Handle of the basis move with exactly these variables.
    pub fn find(&self, vars: &[u32]) -> Option<MoveId> {
        let mut sorted = vars.to_vec();
        sorted.sort_unstable();
        let first = *sorted.first()? as usize;
        if first >= self.by_var.rows() {
            return None;
        }
        self.by_var
            .row(first)
            .iter()
            .map(|&m| MoveId(m))
            .find(|&m| self.vars(m) == sorted.as_slice())
    }

    #[inline]
    pub(crate) fn group_moves(&self, group: usize) -> (&[u32], &[u16]) {
        let lo = self.by_group.start[group] as usize;
        let hi = self.by_group.start[group + 1] as usize;
        (&self.by_group.data[lo..hi], &self.group_bits[lo..hi])
    }

    #[cfg(test)]
    pub(crate) fn group_count(&self) -> usize {
        self.by_group.rows()
    }
}
