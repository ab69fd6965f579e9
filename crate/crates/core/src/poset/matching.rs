//! Maximum bipartite matching (Hopcroft–Karp) over bitset adjacency.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

const NIL: usize = usize::MAX;

/// Size of a maximum matching between left `0..n` and right `0..n`, where
/// `adj[l]` holds the right neighbors of `l`.
pub(crate) fn max_matching(adj: &[FixedBitSet]) -> usize {
    let n = adj.len();
    let lists: Vec<Vec<usize>> = adj.iter().map(|s| s.ones().collect()).collect();
    let mut mate_l = vec![NIL; n];
    let mut mate_r = vec![NIL; n];
    let mut dist = vec![0usize; n];
    let mut size = 0;
    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..n {
            if mate_l[l] == NIL {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &lists[l] {
                let m = mate_r[r];
                if m == NIL {
                    found = true;
                } else if dist[m] == usize::MAX {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            return size;
        }
        let mut next = vec![0usize; n];
        for l in 0..n {
            if mate_l[l] == NIL
                && augment(l, &lists, &mut mate_l, &mut mate_r, &mut dist, &mut next)
            {
                size += 1;
            }
        }
    }
}

/// Iterative DFS along the BFS layers.
fn augment(
    root: usize,
    lists: &[Vec<usize>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&l) = stack.last() {
        if next[l] == lists[l].len() {
            dist[l] = usize::MAX;
            stack.pop();
            continue;
        }
        let r = lists[l][next[l]];
        next[l] += 1;
        let m = mate_r[r];
        if m == NIL {
            // flip the path recorded on the stack
            let mut r = r;
            while let Some(l) = stack.pop() {
                let prev = mate_l[l];
                mate_l[l] = r;
                mate_r[r] = l;
                r = prev;
            }
            return true;
        }
        if dist[m] == dist[l] + 1 {
            stack.push(m);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<FixedBitSet> {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in edges {
            adj[a].insert(b);
        }
        adj
    }

    /// Exhaustive oracle over all subsets of edges for tiny graphs.
    fn brute(n: usize, edges: &[(usize, usize)]) -> usize {
        let mut best = 0;
        for mask in 0u32..(1 << edges.len()) {
            let chosen: Vec<_> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).collect();
            let mut l = vec![false; n];
            let mut r = vec![false; n];
            let ok = chosen.iter().all(|&i| {
                let (a, b) = edges[i];
                let fresh = !l[a] && !r[b];
                l[a] = true;
                r[b] = true;
                fresh
            });
            if ok {
                best = best.max(chosen.len());
            }
        }
        best
    }

    #[test]
    fn matches_brute_force() {
        let cases: Vec<(usize, Vec<(usize, usize)>)> = vec![
            (3, vec![(0, 0), (0, 1), (1, 0), (2, 1)]),
            (4, vec![(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)]),
            (5, vec![(0, 0), (1, 0), (2, 0), (3, 4), (4, 3), (4, 4)]),
            (4, vec![]),
        ];
        for (n, e) in cases {
            assert_eq!(max_matching(&graph(n, &e)), brute(n, &e), "{e:?}");
        }
    }

    #[test]
    fn needs_augmenting_paths() {
        // greedy 0-0 blocks 1; optimum rematches 0 to 1
        let adj = graph(2, &[(0, 0), (0, 1), (1, 0)]);
        assert_eq!(max_matching(&adj), 2);
    }
}
