//! Reference answers computed without the graph module.
#![allow(clippy::needless_range_loop)]

/// `reach[u][v]` is true iff a nonempty directed path leads from `u` to `v`.
/// Computed by relaxing `reach[u][v] |= reach[u][w] && edge(w, v)` until
/// nothing changes.
pub fn reachability(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
    }
    let mut reach = adj.clone();
    loop {
        let mut changed = false;
        for u in 0..n {
            for w in 0..n {
                if !reach[u][w] {
                    continue;
                }
                for v in 0..n {
                    if adj[w][v] && !reach[u][v] {
                        reach[u][v] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return reach;
        }
    }
}

/// Nodes reachable from `u`, excluding `u` itself.
pub fn downstream(reach: &[Vec<bool>], u: usize) -> Vec<usize> {
    (0..reach.len()).filter(|&v| v != u && reach[u][v]).collect()
}

/// Nodes that reach `v`, excluding `v` itself.
pub fn upstream(reach: &[Vec<bool>], v: usize) -> Vec<usize> {
    (0..reach.len()).filter(|&u| u != v && reach[u][v]).collect()
}

/// Distinct direct successors per node, counted by scanning the edge list.
pub fn direct_dependent_counts(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    (0..n)
        .map(|u| {
            let mut targets: Vec<usize> = edges.iter().filter(|e| e.0 == u).map(|e| e.1).collect();
            targets.sort_unstable();
            targets.dedup();
            targets.len()
        })
        .collect()
}

#[test]
fn oracle_on_a_hand_built_graph() {
    // 0 -> 1 -> 2 -> 1, 3 isolated
    let reach = reachability(4, &[(0, 1), (1, 2), (2, 1)]);
    assert_eq!(downstream(&reach, 0), [1, 2]);
    assert_eq!(downstream(&reach, 1), [2]);
    assert_eq!(upstream(&reach, 1), [0, 2]);
    assert!(reach[1][1]);
    assert!(downstream(&reach, 3).is_empty());
    assert_eq!(direct_dependent_counts(4, &[(0, 1), (0, 1), (0, 2)]), [2, 0, 0, 0]);
}
