//! Weighted dual graphs of surface resolutions and the determinant calculus Δ.
//!
//! A [`DualGraph`] holds one vertex per exceptional curve `E_i` with weight
//! `m_i = -E_i^2` and a simple edge for each intersecting pair. Δ of an
//! induced subgraph is the absolute determinant of the corresponding
//! intersection submatrix, with `Δ(∅) = 1`. Vertex deletion is expressed by a
//! [`SubgraphSelector`], most importantly the tree path between two vertices.
//!
//! Construction only enforces structural sanity (indices in range, no
//! self-loops or duplicate edges). The singularity-theoretic hypotheses —
//! connected tree, weights ≥ 2, negative-definite intersection matrix — are
//! checked by [`DualGraph::validate`], so enumeration code can
//! generate-then-filter.

use num_bigint::BigInt;

use crate::det;
use crate::{Error, Result};

/// Weighted dual graph: vertices `0..n` with weights `m_i = -E_i^2` and
/// simple undirected edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    weights: Vec<i64>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl DualGraph {
    /// Builds a graph from weights and 0-based edges.
    pub fn new(weights: Vec<i64>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { index: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &norm {
            adj[a].push(b);
            adj[b].push(a);
        }
        Ok(DualGraph {
            weights,
            edges: norm,
            adj,
        })
    }

    /// Builds a graph from weights and 1-based edges, as used by graph files.
    pub fn from_one_based(weights: Vec<i64>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = weights.len();
        let mut shifted = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for v in [a, b] {
                if v < 1 || v > n {
                    return Err(Error::VertexOutOfRange { index: v, n });
                }
            }
            shifted.push((a - 1, b - 1));
        }
        Self::new(weights, &shifted)
    }

    /// Builds the chain `v_1 - v_2 - ... - v_n` with the given weights.
    pub fn chain(weights: &[i64]) -> Result<Self> {
        let edges: Vec<_> = (1..weights.len()).map(|i| (i - 1, i)).collect();
        Self::new(weights.to_vec(), &edges)
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> i64 {
        self.weights[v]
    }

    /// Normalized edge list: each pair `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n()
    }

    /// True iff the graph has no cycles (components may be several trees).
    pub fn is_forest(&self) -> bool {
        // A simple graph is a forest iff |E| = |V| - #components.
        let mut seen = vec![false; self.n()];
        let mut components = 0;
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        self.edges.len() == self.n() - components
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() == self.n() - 1 && self.is_connected()
    }

    /// True iff the graph is a chain `v_1 - ... - v_n` (a path; single
    /// vertices count).
    pub fn is_chain(&self) -> bool {
        self.is_tree() && (0..self.n()).all(|v| self.degree(v) <= 2)
    }

    /// Vertex order along a chain, starting from the endpoint with the
    /// smallest index. Errors with [`Error::NotAChain`] otherwise.
    pub fn chain_order(&self) -> Result<Vec<usize>> {
        if !self.is_chain() {
            return Err(Error::NotAChain);
        }
        if self.n() == 1 {
            return Ok(vec![0]);
        }
        let start = (0..self.n()).find(|&v| self.degree(v) == 1).unwrap();
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = self.adj[start][0];
        loop {
            order.push(cur);
            let next = self.adj[cur].iter().find(|&&w| w != prev);
            match next {
                Some(&w) => {
                    prev = cur;
                    cur = w;
                }
                None => break,
            }
        }
        Ok(order)
    }

    /// Checks the standing hypotheses on a resolution graph of one
    /// singular point: connected tree, all weights ≥ 2, negative-definite
    /// intersection matrix.
    pub fn validate(&self) -> ValidationReport {
        let negated: Vec<i64> = self.intersection_matrix().iter().map(|&x| -x).collect();
        ValidationReport {
            connected: self.is_connected(),
            acyclic: self.is_forest(),
            weights_at_least_two: self.weights.iter().all(|&m| m >= 2),
            negative_definite: det::is_positive_definite(self.n(), &negated),
        }
    }

    /// Errors with a summary of validation failures unless the graph is a
    /// valid singularity graph.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(report.problems().join(", ")))
        }
    }

    /// Full intersection matrix, flat row-major: diagonal `-m_i`,
    /// off-diagonal 1 on edges.
    pub fn intersection_matrix(&self) -> Vec<i64> {
        let n = self.n();
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            m[i * n + i] = -self.weights[i];
        }
        for &(a, b) in &self.edges {
            m[a * n + b] = 1;
            m[b * n + a] = 1;
        }
        m
    }

    /// The unique tree path between `i` and `j`, endpoints included
    /// (`i = j` gives the single vertex). Errors if the vertices are in
    /// different components.
    pub fn path(&self, i: usize, j: usize) -> Result<SubgraphSelector> {
        let n = self.n();
        for v in [i, j] {
            if v >= n {
                return Err(Error::VertexOutOfRange { index: v, n });
            }
        }
        // BFS from i; in a forest the parent walk from j is the unique path.
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::from([i]);
        seen[i] = true;
        while let Some(v) = queue.pop_front() {
            if v == j {
                break;
            }
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if !seen[j] {
            return Err(Error::Disconnected);
        }
        let mut deleted = vec![false; n];
        let mut v = j;
        deleted[v] = true;
        while v != i {
            v = parent[v];
            deleted[v] = true;
        }
        Ok(SubgraphSelector { deleted })
    }

    /// `Δ` of the induced subgraph remaining after deleting the selected
    /// vertices: |det| of the corresponding intersection submatrix.
    /// `Δ(∅) = 1`; for a disconnected remainder this equals the product of
    /// Δ over components.
    pub fn delta(&self, deleted: &SubgraphSelector) -> BigInt {
        assert_eq!(
            deleted.deleted.len(),
            self.n(),
            "selector built for a different graph size"
        );
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !deleted.deleted[v]).collect();
        let k = keep.len();
        let mut sub = vec![0i64; k * k];
        for (r, &v) in keep.iter().enumerate() {
            sub[r * k + r] = -self.weights[v];
        }
        for &(a, b) in &self.edges {
            if let (Ok(r), Ok(c)) = (keep.binary_search(&a), keep.binary_search(&b)) {
                sub[r * k + c] = 1;
                sub[c * k + r] = 1;
            }
        }
        det::abs_det(k, &sub)
    }

    /// `Δ` of the whole graph.
    pub fn delta_full(&self) -> BigInt {
        self.delta(&SubgraphSelector::keep_all(self.n()))
    }

    /// `Δ(Γ∖path(k,j))` for every `j`, sharing one BFS tree rooted at `k`.
    pub(crate) fn path_delta_table(&self, k: usize) -> Result<Vec<BigInt>> {
        (0..self.n()).map(|j| Ok(self.delta(&self.path(k, j)?))).collect()
    }
}

/// A set of vertices to delete from a graph before taking Δ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphSelector {
    deleted: Vec<bool>,
}

impl SubgraphSelector {
    /// Deletes nothing: selects the full graph.
    pub fn keep_all(n: usize) -> Self {
        SubgraphSelector {
            deleted: vec![false; n],
        }
    }

    /// Deletes the listed vertices (0-based, duplicates tolerated).
    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut deleted = vec![false; n];
        for v in vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { index: v, n });
            }
            deleted[v] = true;
        }
        Ok(SubgraphSelector { deleted })
    }

    pub fn n(&self) -> usize {
        self.deleted.len()
    }

    pub fn is_deleted(&self, v: usize) -> bool {
        self.deleted[v]
    }

    /// Deleted vertices in increasing order.
    pub fn deleted_vertices(&self) -> Vec<usize> {
        (0..self.deleted.len())
            .filter(|&v| self.deleted[v])
            .collect()
    }
}

/// Outcome of [`DualGraph::validate`]: each standing hypothesis separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationReport {
    pub connected: bool,
    pub acyclic: bool,
    pub weights_at_least_two: bool,
    pub negative_definite: bool,
}

impl ValidationReport {
    pub fn is_tree(&self) -> bool {
        self.connected && self.acyclic
    }

    pub fn is_valid(&self) -> bool {
        self.connected && self.acyclic && self.weights_at_least_two && self.negative_definite
    }

    /// Human-readable list of failed checks (empty when valid).
    pub fn problems(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.connected {
            out.push("not connected");
        }
        if !self.acyclic {
            out.push("contains a cycle");
        }
        if !self.weights_at_least_two {
            out.push("has a weight < 2");
        }
        if !self.negative_definite {
            out.push("intersection matrix is not negative definite");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn construction_rejects_bad_structure() {
        assert_eq!(DualGraph::new(vec![], &[]), Err(Error::EmptyGraph));
        assert_eq!(
            DualGraph::new(vec![2, 2], &[(0, 2)]),
            Err(Error::VertexOutOfRange { index: 2, n: 2 })
        );
        assert_eq!(DualGraph::new(vec![2, 2], &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            DualGraph::new(vec![2, 2], &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert!(DualGraph::from_one_based(vec![2, 2], &[(0, 1)]).is_err());
    }

    #[test]
    fn validation_examples() {
        // Single (-2)-curve: 1x1 matrix, minor 2 > 0.
        assert!(DualGraph::chain(&[2]).unwrap().validate().is_valid());
        // Chain [2,2]: leading minors of the negated matrix are 2 and 3.
        assert!(DualGraph::chain(&[2, 2]).unwrap().validate().is_valid());
        // Weight below 2 fails the minimality convention even though the
        // matrix is still negative definite.
        let r = DualGraph::chain(&[1, 2]).unwrap().validate();
        assert!(!r.is_valid());
        assert!(!r.weights_at_least_two);
        assert!(r.negative_definite);
        // Disconnected pair: flagged, but still acyclic.
        let r = DualGraph::new(vec![2, 2], &[]).unwrap().validate();
        assert!(!r.connected && r.acyclic && !r.is_valid());
        // Triangle: cyclic.
        let r = DualGraph::new(vec![3, 3, 3], &[(0, 1), (1, 2), (0, 2)])
            .unwrap()
            .validate();
        assert!(!r.acyclic);
    }

    #[test]
    fn path_examples() {
        let chain = DualGraph::chain(&[2, 2, 2]).unwrap();
        assert_eq!(chain.path(0, 2).unwrap().deleted_vertices(), vec![0, 1, 2]);
        assert_eq!(chain.path(1, 1).unwrap().deleted_vertices(), vec![1]);

        // Star: leaves 0,1,2 around center 3; the path between two leaves
        // runs through the center.
        let star = DualGraph::new(vec![2, 2, 2, 2], &[(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(star.path(0, 1).unwrap().deleted_vertices(), vec![0, 1, 3]);

        let split = DualGraph::new(vec![2, 2], &[]).unwrap();
        assert_eq!(split.path(0, 1), Err(Error::Disconnected));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(DualGraph::chain(&[3]).unwrap().delta_full(), big(3));
        assert_eq!(DualGraph::chain(&[2, 2, 2]).unwrap().delta_full(), big(4));
        assert_eq!(DualGraph::chain(&[3, 2]).unwrap().delta_full(), big(5));

        // Deleting everything leaves the empty graph: Δ(∅) = 1.
        let g = DualGraph::chain(&[2, 2]).unwrap();
        let all = SubgraphSelector::from_vertices(2, [0, 1]).unwrap();
        assert_eq!(g.delta(&all), big(1));
    }

    #[test]
    fn all_two_chains_have_delta_n_plus_one() {
        for n in 1..=50usize {
            let g = DualGraph::chain(&vec![2; n]).unwrap();
            assert_eq!(g.delta_full(), big(n as i64 + 1), "length {n}");
        }
    }

    #[test]
    fn chain_order_walks_the_path() {
        // Chain with edges given out of order: 2-0-1 with weights marking
        // the positions.
        let g = DualGraph::new(vec![3, 4, 2], &[(0, 1), (2, 0)]).unwrap();
        assert!(g.is_chain());
        let order = g.chain_order().unwrap();
        assert_eq!(order, vec![1, 0, 2]);

        let star = DualGraph::new(vec![2, 2, 2, 2], &[(0, 3), (1, 3), (2, 3)]).unwrap();
        assert!(!star.is_chain());
        assert_eq!(star.chain_order(), Err(Error::NotAChain));
    }

    #[test]
    fn d4_star_is_valid_with_delta_4() {
        let star = DualGraph::new(vec![2, 2, 2, 2], &[(0, 3), (1, 3), (2, 3)]).unwrap();
        assert!(star.validate().is_valid());
        assert_eq!(star.delta_full(), big(4));
    }

    /// Random tree on up to 8 vertices: vertex i attaches to some earlier
    /// vertex, weights in 2..=6.
    fn arb_tree() -> impl Strategy<Value = DualGraph> {
        (1usize..=8)
            .prop_flat_map(|n| {
                (
                    proptest::collection::vec(any::<usize>(), n - 1),
                    proptest::collection::vec(2i64..=6, n),
                )
            })
            .prop_map(|(raw_parents, weights)| {
                let edges: Vec<_> = raw_parents
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| (i + 1, p % (i + 1)))
                    .collect();
                DualGraph::new(weights, &edges).unwrap()
            })
    }

    proptest! {
        #[test]
        fn delta_is_relabeling_invariant(g in arb_tree(), keys in proptest::collection::vec(any::<u64>(), 8)) {
            let n = g.n();
            // Build a permutation of 0..n by sorting synthetic keys.
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&v| (keys[v], v));
            let mut pos = vec![0usize; n];
            for (new, &old) in order.iter().enumerate() {
                pos[old] = new;
            }
            let weights: Vec<i64> = order.iter().map(|&v| g.weight(v)).collect();
            let edges: Vec<_> = g.edges().iter().map(|&(a, b)| (pos[a], pos[b])).collect();
            let h = DualGraph::new(weights, &edges).unwrap();
            prop_assert_eq!(g.delta_full(), h.delta_full());

            // Any deleted subset maps across the relabeling, too.
            let sel = SubgraphSelector::from_vertices(n, (0..n).filter(|v| v % 2 == 0)).unwrap();
            let mapped = SubgraphSelector::from_vertices(
                n,
                sel.deleted_vertices().iter().map(|&v| pos[v]),
            ).unwrap();
            prop_assert_eq!(g.delta(&sel), h.delta(&mapped));
        }

        #[test]
        fn deleting_a_chain_vertex_splits_delta_into_a_product(
            weights in proptest::collection::vec(2i64..=6, 1..=9),
            pick in any::<usize>(),
        ) {
            let n = weights.len();
            let k = pick % n;
            let g = DualGraph::chain(&weights).unwrap();
            let sel = SubgraphSelector::from_vertices(n, [k]).unwrap();
            let left = if k == 0 {
                BigInt::from(1)
            } else {
                DualGraph::chain(&weights[..k]).unwrap().delta_full()
            };
            let right = if k + 1 == n {
                BigInt::from(1)
            } else {
                DualGraph::chain(&weights[k + 1..]).unwrap().delta_full()
            };
            prop_assert_eq!(g.delta(&sel), left * right);
        }
    }
}
