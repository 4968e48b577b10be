/// Variable co-occurrence graph: an edge joins two variables that are both
/// arguments of some subfunction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoOccurrenceGraph {
    adjacency: Vec<Vec<u32>>,
}

impl CoOccurrenceGraph {
    /// Union of the cliques induced by each mask. No self-loops, no duplicates.
    pub fn from_masks<'a>(n: usize, masks: impl IntoIterator<Item = &'a [u32]>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for mask in masks {
            for (j, &a) in mask.iter().enumerate() {
                for &b in &mask[j + 1..] {
                    if a != b {
                        adjacency[a as usize].push(b);
                        adjacency[b as usize].push(a);
                    }
                }
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        CoOccurrenceGraph { adjacency }
    }

    /// Builds a graph from an explicit edge list.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let pairs: Vec<[u32; 2]> = edges.iter().map(|&(a, b)| [a, b]).collect();
        Self::from_masks(n, pairs.iter().map(|p| p.as_slice()))
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.adjacency[a as usize].binary_search(&b).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }
}

#[cfg(test)]
mod tests {
    use crate::landscape::{generate_adjacent_mnk, Subfunction, VectorMkLandscape};

    #[test]
    fn single_subfunction_gives_triangle() {
        let f = VectorMkLandscape::new(
            3,
            1,
            3,
            2,
            vec![Subfunction::new(0, vec![0, 1, 2], vec![0; 8])],
        )
        .unwrap();
        let g = f.cooccurrence_graph();
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.neighbors(2), &[0, 1]);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn disjoint_masks_give_disconnected_cliques() {
        let f = VectorMkLandscape::new(
            5,
            1,
            3,
            2,
            vec![
                Subfunction::new(0, vec![0, 1], vec![0; 4]),
                Subfunction::new(0, vec![2, 3, 4], vec![0; 8]),
            ],
        )
        .unwrap();
        let g = f.cooccurrence_graph();
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[0]);
        assert_eq!(g.neighbors(2), &[3, 4]);
        assert!(!g.has_edge(1, 2));
    }

    #[test]
    fn adjacent_instance_degree_is_two_k() {
        let f = generate_adjacent_mnk(10, 2, 1, 10, 3).unwrap();
        let g = f.cooccurrence_graph();
        // brute force: count distinct pairs that share a mask
        for v in 0..10u32 {
            let mut nb: Vec<u32> = f
                .subfunctions()
                .iter()
                .filter(|s| s.mask().contains(&v))
                .flat_map(|s| s.mask().iter().copied())
                .filter(|&u| u != v)
                .collect();
            nb.sort_unstable();
            nb.dedup();
            assert_eq!(nb.len(), 4);
            assert_eq!(g.neighbors(v as usize), nb.as_slice());
        }
        assert!(g.max_degree() <= f.c() * f.k());
    }

    #[test]
    fn symmetric() {
        let f = crate::landscape::generate_random_mnk(30, 3, 2, 10, 1).unwrap();
        let g = f.cooccurrence_graph();
        for a in 0..30 {
            for &b in g.neighbors(a) {
                assert!(g.has_edge(b, a as u32));
                assert_ne!(b as usize, a);
            }
        }
        assert!(g.max_degree() <= f.c() * f.k());
    }
}
