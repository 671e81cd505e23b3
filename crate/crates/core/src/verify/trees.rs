//! Enumeration of unlabeled tree shapes via Prüfer sequences.
//!
//! Every labeled tree on `n ≥ 2` vertices corresponds to exactly one Prüfer
//! sequence in `{0..n}^(n-2)`; decoding all sequences and deduplicating by a
//! canonical form yields every tree shape up to isomorphism. The canonical
//! form roots the tree at its center (taking the lexicographically smaller
//! encoding when there are two centers), so isomorphic trees always collide.

use std::collections::BTreeMap;

/// Decodes a Prüfer sequence into the edge list of a labeled tree on `n`
/// vertices. Requires `n ≥ 2`, `seq.len() == n - 2`, entries `< n`.
pub fn tree_from_pruefer(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    assert!(n >= 2, "Prüfer decoding needs at least 2 vertices");
    assert_eq!(seq.len(), n - 2, "sequence length must be n - 2");
    assert!(seq.iter().all(|&s| s < n), "sequence entry out of range");
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] = 0;
        degree[s] -= 1;
    }
    let mut rest = (0..n).filter(|&v| degree[v] == 1);
    edges.push((rest.next().unwrap(), rest.next().unwrap()));
    edges
}

/// Edge lists of all pairwise non-isomorphic trees on `n` vertices, in a
/// deterministic order. Counts for n = 1..8: 1, 1, 1, 2, 3, 6, 11, 23.
pub fn all_tree_shapes(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(n >= 1);
    if n == 1 {
        return vec![vec![]];
    }
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut shapes: BTreeMap<String, Vec<(usize, usize)>> = BTreeMap::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let edges = tree_from_pruefer(n, &seq);
        let code = canonical_code(n, &edges);
        shapes.entry(code).or_insert(edges);
        // Odometer over {0..n}^(n-2).
        let mut i = seq.len();
        loop {
            if i == 0 {
                return shapes.into_values().collect();
            }
            i -= 1;
            if seq[i] + 1 < n {
                seq[i] += 1;
                seq[i + 1..].fill(0);
                break;
            }
        }
    }
}

/// Canonical string encoding of an unlabeled tree.
pub fn canonical_code(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    centers(n, &adj)
        .into_iter()
        .map(|c| rooted_code(c, usize::MAX, &adj))
        .min()
        .unwrap()
}

/// The 1 or 2 central vertices, found by repeatedly stripping leaves.
fn centers(n: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            alive[v] = false;
            for &w in &adj[v] {
                if alive[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    (0..n).filter(|&v| alive[v]).collect()
}

fn rooted_code(v: usize, parent: usize, adj: &[Vec<usize>]) -> String {
    let mut child_codes: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(w, v, adj))
        .collect();
    child_codes.sort();
    format!("({})", child_codes.concat())
}
