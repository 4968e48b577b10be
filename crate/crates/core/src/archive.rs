//! External set of mutually non-dominated solutions, plus the front file
//! format (one entry per line, `d` tab-separated integers, sorted).

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::landscape::{ObjectiveVector, Solution};

/// `a` dominates `b` (maximization): `a >= b` everywhere, `>` somewhere.
pub fn dominates(a: &[i64], b: &[i64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::input(format!(
            "dimension mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(dominates_unchecked(a, b))
}

#[inline]
pub(crate) fn dominates_unchecked(a: &[i64], b: &[i64]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return false;
        }
        strict |= x > y;
    }
    strict
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum InsertOutcome {
    Added,
    Dominated,
    Duplicate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArchiveEntry {
    pub objectives: ObjectiveVector,
    pub solution: Solution,
}

/// Non-dominated archive. Equal objective vectors keep the first solution
/// seen. With two objectives entries stay sorted by the first objective
/// (so the second is strictly decreasing) and an insert is a binary
/// search; otherwise inserts scan linearly.
#[derive(Clone, Debug)]
pub struct NonDominatedArchive {
    d: usize,
    entries: Vec<ArchiveEntry>,
    added: u64,
    rejected: u64,
}

impl NonDominatedArchive {
    pub fn new(d: usize) -> Self {
        NonDominatedArchive {
            d,
            entries: Vec::new(),
            added: 0,
            rejected: 0,
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    /// Number of inserts that entered the set.
    pub fn added(&self) -> u64 {
        self.added
    }

    /// Number of inserts rejected as dominated or duplicate.
    pub fn rejected(&self) -> u64 {
        self.rejected
    }

    /// Panics if `objectives.len() != d`.
    pub fn insert(&mut self, objectives: &[i64], solution: &Solution) -> InsertOutcome {
        assert_eq!(objectives.len(), self.d, "objective dimension mismatch");
        if self.d == 2 {
            return self.insert_sorted(objectives, solution);
        }
        for e in &self.entries {
            if e.objectives == objectives {
                self.rejected += 1;
                return InsertOutcome::Duplicate;
            }
            if dominates_unchecked(&e.objectives, objectives) {
                self.rejected += 1;
                return InsertOutcome::Dominated;
            }
        }
        self.entries
            .retain(|e| !dominates_unchecked(objectives, &e.objectives));
        self.entries.push(ArchiveEntry {
            objectives: objectives.to_vec(),
            solution: solution.clone(),
        });
        self.added += 1;
        InsertOutcome::Added
    }

    fn insert_sorted(&mut self, p: &[i64], solution: &Solution) -> InsertOutcome {
        let i = self.entries.partition_point(|e| e.objectives[0] < p[0]);
        if let Some(e) = self.entries.get(i) {
            if e.objectives[1] >= p[1] {
                self.rejected += 1;
                return if e.objectives == p {
                    InsertOutcome::Duplicate
                } else {
                    InsertOutcome::Dominated
                };
            }
        }
        let lo = self.entries[..i].partition_point(|e| e.objectives[1] > p[1]);
        let hi = match self.entries.get(i) {
            Some(e) if e.objectives[0] == p[0] => i + 1,
            _ => i,
        };
        self.entries.splice(
            lo..hi,
            std::iter::once(ArchiveEntry {
                objectives: p.to_vec(),
                solution: solution.clone(),
            }),
        );
        self.added += 1;
        InsertOutcome::Added
    }

    /// Inserts every entry of `other`.
    pub fn merge(&mut self, other: &NonDominatedArchive) {
        for e in &other.entries {
            self.insert(&e.objectives, &e.solution);
        }
    }

    /// Objective vectors sorted lexicographically.
    pub fn front(&self) -> Vec<ObjectiveVector> {
        let mut front: Vec<ObjectiveVector> =
            self.entries.iter().map(|e| e.objectives.clone()).collect();
        front.sort();
        front
    }
}

pub fn write_front<W: Write>(front: &[ObjectiveVector], out: &mut W) -> io::Result<()> {
    let mut sorted: Vec<&ObjectiveVector> = front.iter().collect();
    sorted.sort();
    for p in sorted {
        let cols: Vec<String> = p.iter().map(i64::to_string).collect();
        writeln!(out, "{}", cols.join("\t"))?;
    }
    Ok(())
}

pub fn save_front(front: &[ObjectiveVector], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    write_front(front, &mut buf).map_err(|e| Error::io(path, e))?;
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn parse_front(text: &str) -> Result<Vec<ObjectiveVector>> {
    let mut out: Vec<ObjectiveVector> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let p = line
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>().map_err(|e| Error::Parse {
                    line: i + 1,
                    field: "objective",
                    message: format!("{t:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = out.first() {
            if first.len() != p.len() {
                return Err(Error::Parse {
                    line: i + 1,
                    field: "objective",
                    message: format!("{} columns, expected {}", p.len(), first.len()),
                });
            }
        }
        out.push(p);
    }
    Ok(out)
}

pub fn load_front(path: impl AsRef<Path>) -> Result<Vec<ObjectiveVector>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_front(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sol() -> Solution {
        Solution::zeros(1)
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&[2, 3], &[1, 3]).unwrap());
        assert!(!dominates(&[2, 1], &[1, 2]).unwrap());
        assert!(!dominates(&[1, 2], &[2, 1]).unwrap());
        assert!(!dominates(&[1, 1], &[1, 1]).unwrap());
        assert!(matches!(dominates(&[1], &[1, 2]), Err(Error::Input(_))));
    }

    #[test]
    fn insert_examples() {
        let mut a = NonDominatedArchive::new(2);
        assert_eq!(a.insert(&[5, 5], &sol()), InsertOutcome::Added);

        let mut a = NonDominatedArchive::new(2);
        for p in [[1, 4], [2, 2], [4, 1]] {
            assert_eq!(a.insert(&p, &sol()), InsertOutcome::Added);
        }
        assert_eq!(a.insert(&[3, 3], &sol()), InsertOutcome::Added);
        assert_eq!(a.front(), vec![vec![1, 4], vec![3, 3], vec![4, 1]]);

        let mut a = NonDominatedArchive::new(2);
        a.insert(&[1, 1], &sol());
        assert_eq!(a.insert(&[0, 0], &sol()), InsertOutcome::Dominated);
        assert_eq!(a.insert(&[1, 1], &sol()), InsertOutcome::Duplicate);
        assert_eq!(a.len(), 1);
        assert_eq!(a.added(), 1);
        assert_eq!(a.rejected(), 2);
    }

    #[test]
    fn duplicates_keep_first_solution() {
        let mut a = NonDominatedArchive::new(1);
        let first = Solution::from_bitstring("01").unwrap();
        a.insert(&[3], &first);
        a.insert(&[3], &Solution::from_bitstring("10").unwrap());
        assert_eq!(a.entries()[0].solution, first);
    }

    #[test]
    fn front_file_round_trip() {
        let front = vec![vec![3, 1], vec![1, 3], vec![2, 2]];
        let mut buf = Vec::new();
        write_front(&front, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "1\t3\n2\t2\n3\t1\n");
        let back = parse_front(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back, vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert!(parse_front("1\t2\n3\n").is_err());
        assert!(parse_front("1\tx\n").is_err());
    }

    fn filter_oracle(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = points
            .iter()
            .filter(|p| !points.iter().any(|q| dominates(q, p).unwrap()))
            .cloned()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    proptest! {
        #[test]
        fn archive_equals_nondominated_filter(points in prop::collection::vec(prop::collection::vec(0i64..8, 3), 0..60)) {
            let mut a = NonDominatedArchive::new(3);
            for p in &points {
                a.insert(p, &sol());
            }
            prop_assert_eq!(a.front(), filter_oracle(&points));
            for x in a.entries() {
                for y in a.entries() {
                    prop_assert!(!dominates_unchecked(&x.objectives, &y.objectives));
                }
            }
        }

        #[test]
        fn two_objective_archive_equals_filter(points in prop::collection::vec(prop::collection::vec(-5i64..15, 2), 0..80)) {
            let mut a = NonDominatedArchive::new(2);
            for p in &points {
                a.insert(p, &sol());
            }
            prop_assert_eq!(a.front(), filter_oracle(&points));
            prop_assert_eq!(a.added() + a.rejected(), points.len() as u64);
            prop_assert!(a.entries().windows(2).all(|w| w[0].objectives[0] < w[1].objectives[0]));
        }

        #[test]
        fn merge_order_does_not_matter(points in prop::collection::vec(prop::collection::vec(0i64..10, 2), 0..40), split in 0usize..40) {
            let split = split.min(points.len());
            let mut whole = NonDominatedArchive::new(2);
            for p in &points { whole.insert(p, &sol()); }
            let mut left = NonDominatedArchive::new(2);
            let mut right = NonDominatedArchive::new(2);
            for p in &points[..split] { left.insert(p, &sol()); }
            for p in &points[split..] { right.insert(p, &sol()); }
            right.merge(&left);
            prop_assert_eq!(whole.front(), right.front());
        }
    }
}
