//! Graph data model: loopless mixed graphs with undirected, directed and
//! bidirected edges, plus DAG and undirected restrictions.
//!
//! Multiple edges between the same pair of nodes are kept as a multiset;
//! path traversal treats each edge instance independently.

mod essential;
mod paths;
mod separation;

pub use essential::{essential_graph, EssentialGraph};
pub use paths::{simplify_path, BayesBallPath, Block, BlockKind, PathError, PathStep, TrekCanyonDecomposition};
#[cfg(test)]
pub(crate) use paths::walk_from_nodes;
pub use separation::{d_separated, find_bayes_ball_path, m_separated};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::nodeset::{NodeSet, MAX_GROUND};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Undirected,
    /// Directed from `a` to `b`.
    Directed,
    Bidirected,
}

/// One edge instance. For `Directed`, the arrow points `a -> b`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub kind: EdgeKind,
}

impl Edge {
    /// Whether this edge carries an arrowhead at `node`.
    pub fn arrowhead_at(&self, node: usize) -> bool {
        match self.kind {
            EdgeKind::Undirected => false,
            EdgeKind::Bidirected => node == self.a || node == self.b,
            EdgeKind::Directed => node == self.b,
        }
    }

    pub fn other(&self, node: usize) -> usize {
        if node == self.a {
            self.b
        } else {
            debug_assert_eq!(node, self.b);
            self.a
        }
    }

    pub fn touches(&self, node: usize) -> bool {
        self.a == node || self.b == node
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("ground set too large: {0} > {max}", max = MAX_GROUND)]
    TooLarge(usize),
    #[error("edge ({0}, {1}) out of range for {2} nodes")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("loop at node {0}")]
    Loop(usize),
    #[error("graph is not a DAG: {0}")]
    NotDag(String),
    #[error("graph is not undirected")]
    NotUndirected,
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

/// Loopless mixed graph on nodes `0..n`.
#[derive(Clone, Debug)]
pub struct MixedGraph {
    n: usize,
    edges: Vec<Edge>,
    /// incident edge indices per node
    adj: Vec<Vec<usize>>,
}

/// Equality as a labeled edge multiset; storage order is irrelevant.
impl PartialEq for MixedGraph {
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut a = self.edges.clone();
        let mut b = other.edges.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

impl Eq for MixedGraph {}

impl MixedGraph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        if n > MAX_GROUND {
            return Err(GraphError::TooLarge(n));
        }
        let mut adj = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            if e.a >= n || e.b >= n {
                return Err(GraphError::EdgeOutOfRange(e.a, e.b, n));
            }
            if e.a == e.b {
                return Err(GraphError::Loop(e.a));
            }
            adj[e.a].push(idx);
            adj[e.b].push(idx);
        }
        Ok(MixedGraph { n, edges, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &Edge {
        &self.edges[idx]
    }

    /// Indices of edges incident to `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Directed in-neighbors (tails of arrows into `v`), deduplicated.
    pub fn parents(&self, v: usize) -> NodeSet {
        let mut out = NodeSet::EMPTY;
        for &idx in &self.adj[v] {
            let e = &self.edges[idx];
            if e.kind == EdgeKind::Directed && e.b == v {
                out.insert(e.a);
            }
        }
        out
    }

    pub fn children(&self, v: usize) -> NodeSet {
        let mut out = NodeSet::EMPTY;
        for &idx in &self.adj[v] {
            let e = &self.edges[idx];
            if e.kind == EdgeKind::Directed && e.a == v {
                out.insert(e.b);
            }
        }
        out
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].iter().any(|&idx| self.edges[idx].touches(v))
    }

    /// Unordered adjacency pairs, deduplicated.
    pub fn skeleton(&self) -> BTreeSet<(usize, usize)> {
        self.edges
            .iter()
            .map(|e| (e.a.min(e.b), e.a.max(e.b)))
            .collect()
    }

    /// Nodes with a directed path into some node of `seeds`, following
    /// arrows only. A node is not its own ancestor: callers that need the
    /// reflexive closure take the union with `seeds` explicitly.
    pub fn ancestors(&self, seeds: NodeSet) -> NodeSet {
        let mut reached = NodeSet::EMPTY;
        let mut stack: Vec<usize> = seeds.iter().collect();
        while let Some(v) = stack.pop() {
            for &idx in &self.adj[v] {
                let e = &self.edges[idx];
                if e.kind == EdgeKind::Directed && e.b == v && !reached.contains(e.a) {
                    reached.insert(e.a);
                    stack.push(e.a);
                }
            }
        }
        reached
    }

    pub fn descendants(&self, seeds: NodeSet) -> NodeSet {
        let mut reached = NodeSet::EMPTY;
        let mut stack: Vec<usize> = seeds.iter().collect();
        while let Some(v) = stack.pop() {
            for &idx in &self.adj[v] {
                let e = &self.edges[idx];
                if e.kind == EdgeKind::Directed && e.a == v && !reached.contains(e.b) {
                    reached.insert(e.b);
                    stack.push(e.b);
                }
            }
        }
        reached
    }

    /// Shortest directed path from `from` to the first node of `targets`
    /// reached, as a node list starting at `from`. Intermediate nodes avoid
    /// `targets` by construction.
    pub(crate) fn directed_path_to(&self, from: usize, targets: NodeSet) -> Option<Vec<usize>> {
        let mut prev: Vec<Option<usize>> = vec![None; self.n];
        let mut seen = NodeSet::singleton(from);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(from);
        while let Some(v) = queue.pop_front() {
            if targets.contains(v) {
                let mut path = vec![v];
                let mut cur = v;
                while let Some(p) = prev[cur] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for &idx in &self.adj[v] {
                let e = &self.edges[idx];
                if e.kind == EdgeKind::Directed && e.a == v && !seen.contains(e.b) {
                    seen.insert(e.b);
                    prev[e.b] = Some(v);
                    queue.push_back(e.b);
                }
            }
        }
        None
    }

    /// Some directed edge index `u -> v`, preferring the lowest index.
    pub(crate) fn directed_edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.adj[u]
            .iter()
            .copied()
            .find(|&idx| {
                let e = &self.edges[idx];
                e.kind == EdgeKind::Directed && e.a == u && e.b == v
            })
    }

    pub fn is_all_directed(&self) -> bool {
        self.edges.iter().all(|e| e.kind == EdgeKind::Directed)
    }

    pub fn is_all_undirected(&self) -> bool {
        self.edges.iter().all(|e| e.kind == EdgeKind::Undirected)
    }

    /// Kahn topological order over the directed part; `None` on a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        for e in &self.edges {
            if e.kind == EdgeKind::Directed {
                indeg[e.b] += 1;
            }
        }
        let mut ready: BTreeSet<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            order.push(v);
            for &idx in &self.adj[v] {
                let e = &self.edges[idx];
                if e.kind == EdgeKind::Directed && e.a == v {
                    indeg[e.b] -= 1;
                    if indeg[e.b] == 0 {
                        ready.insert(e.b);
                    }
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }
}

/// A directed acyclic graph; a validated restriction of [`MixedGraph`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dag(MixedGraph);

impl Dag {
    pub fn new(g: MixedGraph) -> Result<Self, GraphError> {
        if !g.is_all_directed() {
            return Err(GraphError::NotDag("contains non-directed edges".into()));
        }
        if g.topological_order().is_none() {
            return Err(GraphError::NotDag("contains a directed cycle".into()));
        }
        Ok(Dag(g))
    }

    pub fn from_edge_list(n: usize, arcs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let edges = arcs
            .iter()
            .map(|&(a, b)| Edge {
                a,
                b,
                kind: EdgeKind::Directed,
            })
            .collect();
        Dag::new(MixedGraph::new(n, edges)?)
    }

    pub fn graph(&self) -> &MixedGraph {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn edge_count(&self) -> usize {
        self.0.edges().len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.edges().iter().map(|e| (e.a, e.b))
    }

    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.0.directed_edge_between(a, b).is_some()
    }

    pub fn parents(&self, v: usize) -> NodeSet {
        self.0.parents(v)
    }

    pub fn topological_order(&self) -> Vec<usize> {
        self.0.topological_order().expect("validated acyclic")
    }

    /// Skeleton plus married parents: edges `(i,j)` whenever `i -> j`,
    /// `j -> i`, or `i -> k <- j` for some `k`.
    pub fn moral_graph(&self) -> MixedGraph {
        let mut pairs: BTreeSet<(usize, usize)> = self.0.skeleton();
        for k in 0..self.n() {
            let pa: Vec<usize> = self.parents(k).iter().collect();
            for x in 0..pa.len() {
                for y in x + 1..pa.len() {
                    pairs.insert((pa[x], pa[y]));
                }
            }
        }
        let edges = pairs
            .into_iter()
            .map(|(a, b)| Edge {
                a,
                b,
                kind: EdgeKind::Undirected,
            })
            .collect();
        MixedGraph::new(self.n(), edges).expect("valid moral graph")
    }

    /// Triples `(i, j, k)` with `i -> k <- j`, `i < j`, and `i, j`
    /// non-adjacent.
    pub fn v_structures(&self) -> BTreeSet<(usize, usize, usize)> {
        let mut out = BTreeSet::new();
        for k in 0..self.n() {
            let pa: Vec<usize> = self.parents(k).iter().collect();
            for x in 0..pa.len() {
                for y in x + 1..pa.len() {
                    if !self.0.adjacent(pa[x], pa[y]) {
                        out.insert((pa[x], pa[y], k));
                    }
                }
            }
        }
        out
    }

    /// Markov equivalence: equal skeletons and equal V-structure sets.
    pub fn markov_equivalent(&self, other: &Dag) -> bool {
        self.n() == other.n()
            && self.0.skeleton() == other.0.skeleton()
            && self.v_structures() == other.v_structures()
    }
}

/// An undirected graph; a validated restriction of [`MixedGraph`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UndirectedGraph(MixedGraph);

impl UndirectedGraph {
    pub fn new(g: MixedGraph) -> Result<Self, GraphError> {
        if !g.is_all_undirected() {
            return Err(GraphError::NotUndirected);
        }
        Ok(UndirectedGraph(g))
    }

    pub fn graph(&self) -> &MixedGraph {
        &self.0
    }
}

// --- JSON wire format -------------------------------------------------
//
// {"n": 4, "edges": [{"a": 1, "b": 3, "kind": "directed"}, ...]}
// with 1-based node labels.

#[derive(Serialize, Deserialize)]
struct EdgeWire {
    a: usize,
    b: usize,
    kind: EdgeKind,
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    n: usize,
    edges: Vec<EdgeWire>,
}

impl MixedGraph {
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let wire: GraphWire =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        let mut edges = Vec::with_capacity(wire.edges.len());
        for e in wire.edges {
            if e.a == 0 || e.b == 0 || e.a > wire.n || e.b > wire.n {
                return Err(GraphError::Json(format!(
                    "edge ({}, {}) out of 1..={}",
                    e.a, e.b, wire.n
                )));
            }
            edges.push(Edge {
                a: e.a - 1,
                b: e.b - 1,
                kind: e.kind,
            });
        }
        MixedGraph::new(wire.n, edges)
    }

    pub fn to_json(&self) -> String {
        let wire = GraphWire {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| EdgeWire {
                    a: e.a + 1,
                    b: e.b + 1,
                    kind: e.kind,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&wire).expect("serializable")
    }
}

#[cfg(test)]
pub(crate) mod testgraphs {
    use super::*;

    /// The 4-node DAG 1→3, 2→3, 3→4 (0-based arcs).
    pub fn diamond4() -> Dag {
        Dag::from_edge_list(4, &[(0, 2), (1, 2), (2, 3)]).unwrap()
    }

    /// V-structure 1→3←2 on three nodes.
    pub fn vstructure() -> Dag {
        Dag::from_edge_list(3, &[(0, 2), (1, 2)]).unwrap()
    }

    /// The 8-node DAG used for the longer path examples.
    pub fn eight_node() -> Dag {
        Dag::from_edge_list(
            8,
            &[
                (0, 3),
                (1, 2),
                (1, 5),
                (2, 3),
                (2, 6),
                (3, 7),
                (3, 6),
                (4, 7),
                (4, 5),
                (5, 6),
                (6, 7),
            ],
        )
        .unwrap()
    }

    /// 4-node DAG whose associahedron is not simple:
    /// 1→2, 2→3, 3→4, 1→4, 2→4.
    pub fn not_simple4() -> Dag {
        Dag::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)]).unwrap()
    }
}
