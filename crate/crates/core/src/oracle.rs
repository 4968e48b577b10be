//! Exhaustive reference implementations for verification.
//!
//! Nothing here reuses the evaluation, move-enumeration or dominance code of
//! the production modules; the only shared surface is read access to the
//! subfunction masks and tables. Everything is exponential in `n` or `r`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::landscape::{CoOccurrenceGraph, ObjectiveVector, Solution, VectorMkLandscape};

/// Size limit for Hamming-ball scans.
pub const MAX_BALL_N: usize = 24;
/// Size limit for full enumeration of `B^n` or of all vertex subsets.
pub const MAX_ENUM_N: usize = 20;

fn check_limit(n: usize, limit: usize, what: &str) -> Result<()> {
    if n > limit {
        return Err(Error::input(format!("{what}: n = {n} exceeds limit {limit}")));
    }
    Ok(())
}

/// Full evaluation by direct table lookup.
pub fn eval(f: &VectorMkLandscape, bits: &[bool]) -> ObjectiveVector {
    let mut out = vec![0i64; f.d()];
    for sub in f.subfunctions() {
        let mut idx = 0usize;
        for (j, &var) in sub.mask().iter().enumerate() {
            if bits[var as usize] {
                idx += 1 << j;
            }
        }
        out[sub.objective()] += i64::from(sub.table()[idx]);
    }
    out
}

fn diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `a` dominates `b` under maximization.
fn better(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y) && a.iter().zip(b).any(|(x, y)| x > y)
}

/// Visits every subset of `0..n` of size `1..=r` in lexicographic order.
fn for_each_subset(n: usize, r: usize, mut visit: impl FnMut(&[u32])) {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        for v in start..n {
            cur.push(v as u32);
            visit(cur);
            if cur.len() < r {
                rec(v + 1, n, r, cur, visit);
            }
            cur.pop();
        }
    }
    rec(0, n, r, &mut Vec::new(), &mut visit);
}

/// Every move of the radius-`r` ball and its objective delta.
#[derive(Clone, Debug)]
pub struct BallScan {
    pub center: Solution,
    pub radius: usize,
    pub entries: Vec<(Vec<u32>, Vec<i64>)>,
}

pub fn ball_scan(f: &VectorMkLandscape, x: &Solution, r: usize) -> Result<BallScan> {
    check_limit(f.n(), MAX_BALL_N, "ball scan")?;
    if x.len() != f.n() {
        return Err(Error::input("solution length mismatch"));
    }
    let base = eval(f, &x.to_bits());
    let mut entries = Vec::new();
    let mut y = x.to_bits();
    for_each_subset(f.n(), r, |vars| {
        for &v in vars {
            y[v as usize] = !y[v as usize];
        }
        entries.push((vars.to_vec(), diff(&eval(f, &y), &base)));
        for &v in vars {
            y[v as usize] = !y[v as usize];
        }
    });
    Ok(BallScan {
        center: x.clone(),
        radius: r,
        entries,
    })
}

/// `f(x xor v) - f(x)` for every `|v| <= r`, keyed by sorted variables.
pub fn brute_scores(
    f: &VectorMkLandscape,
    x: &Solution,
    r: usize,
) -> Result<BTreeMap<Vec<u32>, Vec<i64>>> {
    Ok(ball_scan(f, x, r)?.entries.into_iter().collect())
}

/// No solution within distance `r` dominates `x`.
pub fn brute_local_optimum(f: &VectorMkLandscape, x: &Solution, r: usize) -> Result<bool> {
    let zero = vec![0i64; f.d()];
    Ok(!ball_scan(f, x, r)?
        .entries
        .iter()
        .any(|(_, delta)| better(delta, &zero)))
}

/// Some solution within distance `r` has `w . (f(y) - f(x)) > 0`.
pub fn ball_has_w_improvement(
    f: &VectorMkLandscape,
    x: &Solution,
    r: usize,
    w: &[f64],
) -> Result<bool> {
    Ok(ball_scan(f, x, r)?.entries.iter().any(|(_, delta)| {
        w.iter().zip(delta).map(|(a, &b)| a * b as f64).sum::<f64>() > 0.0
    }))
}

/// Exact Pareto front by enumerating all of `B^n`; sorted, deduplicated.
pub fn brute_pareto(f: &VectorMkLandscape) -> Result<Vec<ObjectiveVector>> {
    check_limit(f.n(), MAX_ENUM_N, "pareto enumeration")?;
    let n = f.n();
    let mut images = BTreeSet::new();
    for code in 0u64..(1 << n) {
        let bits: Vec<bool> = (0..n).map(|j| code >> j & 1 == 1).collect();
        images.insert(eval(f, &bits));
    }
    let images: Vec<_> = images.into_iter().collect();
    Ok(nondominated_filter(&images))
}

/// Points not dominated by any other point; sorted, deduplicated.
pub fn nondominated_filter(points: &[ObjectiveVector]) -> Vec<ObjectiveVector> {
    let mut out: Vec<ObjectiveVector> = points
        .iter()
        .filter(|p| !points.iter().any(|q| better(q, p)))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Every vertex subset of size `1..=r` whose induced subgraph is connected.
pub fn brute_connected_subsets(g: &CoOccurrenceGraph, r: usize) -> Result<BTreeSet<Vec<u32>>> {
    check_limit(g.n(), MAX_ENUM_N, "subset enumeration")?;
    let mut out = BTreeSet::new();
    for_each_subset(g.n(), r, |vars| {
        let mut reached = vec![false; vars.len()];
        reached[0] = true;
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for j in 0..vars.len() {
                if !reached[j] && g.neighbors(vars[i] as usize).contains(&vars[j]) {
                    reached[j] = true;
                    stack.push(j);
                }
            }
        }
        if reached.iter().all(|&b| b) {
            out.insert(vars.to_vec());
        }
    });
    Ok(out)
}
