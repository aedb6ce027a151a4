//! Bayes-ball walks and their trek/canyon structure.
//!
//! A walk is simplified by the surgery of the simple-path lemmas: splice
//! out repeated nodes (first edge in, last edge out), re-activating a
//! collider that this creates through a conditioned descendant, and cut
//! canyons short when the entering edge carries no arrowhead. The result
//! is a simple walk together with its block decomposition, which is what
//! the matroid construction consumes.

use thiserror::Error;

use super::MixedGraph;
use crate::nodeset::NodeSet;

/// One traversal step: an edge instance and the direction it is walked.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PathStep {
    pub edge: usize,
    /// True when walked from the stored `a` endpoint to `b`.
    pub forward: bool,
}

/// A walk whose colliders are activated by the conditioning set and whose
/// non-colliders avoid it. Nodes and edges may repeat.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BayesBallPath {
    pub nodes: Vec<usize>,
    pub steps: Vec<PathStep>,
    pub given: NodeSet,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("walk is structurally malformed: {0}")]
    Malformed(String),
    #[error("non-collider {node} lies in the conditioning set")]
    NonColliderConditioned { node: usize },
    #[error("collider {node} is not activated by the conditioning set")]
    ColliderNotActivated { node: usize },
    #[error("endpoint {0} lies in the conditioning set")]
    EndpointConditioned(usize),
    #[error("no simple form: collider {node} created by splicing has no conditioned descendant")]
    NoSimpleForm { node: usize },
    #[error("path simplification did not converge")]
    SimplificationDiverged,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlockKind {
    Trek,
    Canyon,
}

/// A trek or canyon as a node list. Canyon nodes are listed from the top
/// down to the middle collider; the palindromic second half is implicit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Block {
    pub kind: BlockKind,
    pub nodes: Vec<usize>,
}

/// Alternating trek/canyon blocks of a simple walk, starting and ending
/// with treks. Adjacent canyons (possible in mixed graphs) sit between
/// the same trek pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TrekCanyonDecomposition {
    pub blocks: Vec<Block>,
}

impl TrekCanyonDecomposition {
    pub fn treks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.kind == BlockKind::Trek)
    }

    pub fn canyons(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.kind == BlockKind::Canyon)
    }

    /// Trek/canyon blocks strictly alternate (the DAG shape).
    pub fn is_strictly_alternating(&self) -> bool {
        self.blocks
            .windows(2)
            .all(|w| w[0].kind != w[1].kind)
    }

    /// Groups of the form (trek, canyons..., trek) between consecutive
    /// treks, as indices into `blocks`.
    pub fn groups(&self) -> Vec<(usize, Vec<usize>, usize)> {
        let trek_pos: Vec<usize> = self
            .blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.kind == BlockKind::Trek)
            .map(|(i, _)| i)
            .collect();
        trek_pos
            .windows(2)
            .map(|w| (w[0], (w[0] + 1..w[1]).collect(), w[1]))
            .collect()
    }
}

impl BayesBallPath {
    pub fn endpoints(&self) -> (usize, usize) {
        (*self.nodes.first().unwrap(), *self.nodes.last().unwrap())
    }

    fn junction(&self, g: &MixedGraph, pos: usize) -> (bool, bool) {
        let node = self.nodes[pos];
        let inc = g.edge(self.steps[pos - 1].edge).arrowhead_at(node);
        let out = g.edge(self.steps[pos].edge).arrowhead_at(node);
        (inc, out)
    }

    fn is_collider_at(&self, g: &MixedGraph, pos: usize) -> bool {
        let (inc, out) = self.junction(g, pos);
        inc && out
    }

    /// Checks structure and the collider/non-collider conditions. Colliders
    /// may sit in `K ∪ an(K)`; the walks produced by the search and by
    /// simplification keep them in `K` itself.
    pub fn validate(&self, g: &MixedGraph) -> Result<(), PathError> {
        if self.nodes.len() < 2 || self.steps.len() + 1 != self.nodes.len() {
            return Err(PathError::Malformed(format!(
                "{} nodes with {} steps",
                self.nodes.len(),
                self.steps.len()
            )));
        }
        for (p, step) in self.steps.iter().enumerate() {
            if step.edge >= g.edges().len() {
                return Err(PathError::Malformed(format!("edge index {}", step.edge)));
            }
            let e = g.edge(step.edge);
            let (from, to) = if step.forward { (e.a, e.b) } else { (e.b, e.a) };
            if from != self.nodes[p] || to != self.nodes[p + 1] {
                return Err(PathError::Malformed(format!(
                    "step {p} does not join nodes {} and {}",
                    self.nodes[p],
                    self.nodes[p + 1]
                )));
            }
        }
        let (i, j) = self.endpoints();
        if i == j {
            return Err(PathError::Malformed("equal endpoints".into()));
        }
        for v in [i, j] {
            if self.given.contains(v) {
                return Err(PathError::EndpointConditioned(v));
            }
        }
        let activated = self.given.union(g.ancestors(self.given));
        for pos in 1..self.nodes.len() - 1 {
            let node = self.nodes[pos];
            if self.is_collider_at(g, pos) {
                if !activated.contains(node) {
                    return Err(PathError::ColliderNotActivated { node });
                }
            } else if self.given.contains(node) {
                return Err(PathError::NonColliderConditioned { node });
            }
        }
        Ok(())
    }
}

/// Expands every collider lying in `an(K) \ K` into an explicit
/// down-and-back detour to the nearest conditioned descendant, so that all
/// colliders of the result lie in `K`.
pub(crate) fn materialize_detours(
    g: &MixedGraph,
    path: &BayesBallPath,
) -> Result<BayesBallPath, PathError> {
    let given = path.given;
    let mut nodes = vec![path.nodes[0]];
    let mut steps = Vec::with_capacity(path.steps.len());
    for pos in 1..path.nodes.len() {
        // decide whether the node at pos-1 .. wait: handle junction for the
        // node being appended in the previous iteration; simpler: copy step,
        // then expand at the new node if it is an unconditioned collider.
        steps.push(path.steps[pos - 1]);
        nodes.push(path.nodes[pos]);
        let at = path.nodes[pos];
        if pos < path.nodes.len() - 1 && path.is_collider_at(g, pos) && !given.contains(at) {
            let descent = g
                .directed_path_to(at, given)
                .ok_or(PathError::ColliderNotActivated { node: at })?;
            for w in 1..descent.len() {
                let idx = g
                    .directed_edge_between(descent[w - 1], descent[w])
                    .expect("descent follows directed edges");
                steps.push(PathStep { edge: idx, forward: true });
                nodes.push(descent[w]);
            }
            for w in (1..descent.len()).rev() {
                let idx = g
                    .directed_edge_between(descent[w - 1], descent[w])
                    .expect("descent follows directed edges");
                steps.push(PathStep { edge: idx, forward: false });
                nodes.push(descent[w - 1]);
            }
        }
    }
    Ok(BayesBallPath {
        nodes,
        steps,
        given,
    })
}

enum DecomposeIssue {
    /// Node occurs outside a single block; splice it.
    Repeated(usize),
    /// Canyon at positions `[l..=r]` entered or left without an arrowhead;
    /// replace it by its top node.
    Shortcut { l: usize, r: usize },
}

/// Computes the trek/canyon decomposition of a materialized walk, or
/// reports the first surgery needed to make it simple.
fn decompose(
    g: &MixedGraph,
    path: &BayesBallPath,
) -> Result<Result<TrekCanyonDecomposition, DecomposeIssue>, PathError> {
    let len = path.nodes.len();
    let collider: Vec<bool> = (0..len)
        .map(|p| p >= 1 && p + 1 < len && path.is_collider_at(g, p))
        .collect();
    for (p, &c) in collider.iter().enumerate() {
        if c && !path.given.contains(path.nodes[p]) {
            return Err(PathError::ColliderNotActivated {
                node: path.nodes[p],
            });
        }
    }

    // Grow a maximal palindromic canyon around each collider.
    let directed_toward = |step: &PathStep, inner: usize| -> bool {
        let e = g.edge(step.edge);
        e.kind == super::EdgeKind::Directed && e.b == inner
    };
    let mut ranges: Vec<(usize, usize)> = Vec::new();
    for m in 0..len {
        if !collider[m] {
            continue;
        }
        let (mut l, mut r) = (m, m);
        while l >= 2 && r + 2 < len {
            let (lp, rp) = (l - 1, r + 1);
            if collider[lp] || collider[rp] || path.nodes[lp] != path.nodes[rp] {
                break;
            }
            if !directed_toward(&path.steps[lp], path.nodes[l])
                || !directed_toward(&path.steps[r], path.nodes[r])
            {
                break;
            }
            l = lp;
            r = rp;
        }
        ranges.push((l, r));
    }

    // Overlapping palindromes share a node across blocks.
    for w in ranges.windows(2) {
        let ((_, r0), (l1, _)) = (w[0], w[1]);
        if r0 >= l1 {
            return Ok(Err(DecomposeIssue::Repeated(path.nodes[l1])));
        }
    }

    // Canyon ends must be entered and left with an arrowhead; otherwise the
    // canyon is cut short. Single-node canyons always qualify.
    for &(l, r) in &ranges {
        if !g.edge(path.steps[l - 1].edge).arrowhead_at(path.nodes[l])
            || !g.edge(path.steps[r].edge).arrowhead_at(path.nodes[r])
        {
            return Ok(Err(DecomposeIssue::Shortcut { l, r }));
        }
    }

    // Assemble alternating blocks; treks are the gaps between canyons.
    let mut blocks = Vec::new();
    let mut cursor = 0usize;
    for &(l, r) in &ranges {
        if cursor < l {
            blocks.push(Block {
                kind: BlockKind::Trek,
                nodes: path.nodes[cursor..l].to_vec(),
            });
        }
        let m = (l + r) / 2;
        blocks.push(Block {
            kind: BlockKind::Canyon,
            nodes: path.nodes[l..=m].to_vec(),
        });
        cursor = r + 1;
    }
    blocks.push(Block {
        kind: BlockKind::Trek,
        nodes: path.nodes[cursor..].to_vec(),
    });
    if blocks.first().map(|b| b.kind) != Some(BlockKind::Trek) || blocks.is_empty() {
        return Err(PathError::Malformed("walk does not start with a trek".into()));
    }

    // Simplicity: every node lives in exactly one block.
    let mut seen_in: Vec<Option<usize>> = vec![None; g.n()];
    for (bi, b) in blocks.iter().enumerate() {
        let mut local = NodeSet::EMPTY;
        for &v in &b.nodes {
            if local.contains(v) || matches!(seen_in[v], Some(prev) if prev != bi) {
                return Ok(Err(DecomposeIssue::Repeated(v)));
            }
            local.insert(v);
            seen_in[v] = Some(bi);
        }
    }

    Ok(Ok(TrekCanyonDecomposition { blocks }))
}

/// Splices out everything between the first and last occurrence of `node`.
fn splice_at(path: &BayesBallPath, node: usize) -> BayesBallPath {
    let p1 = path.nodes.iter().position(|&v| v == node).unwrap();
    let p2 = path.nodes.iter().rposition(|&v| v == node).unwrap();
    debug_assert!(p1 < p2);
    let mut nodes = path.nodes[..=p1].to_vec();
    nodes.extend_from_slice(&path.nodes[p2 + 1..]);
    let mut steps = path.steps[..p1].to_vec();
    steps.extend_from_slice(&path.steps[p2..]);
    BayesBallPath {
        nodes,
        steps,
        given: path.given,
    }
}

/// Replaces the canyon at `[l..=r]` by its top node.
fn shortcut_canyon(path: &BayesBallPath, l: usize, r: usize) -> BayesBallPath {
    debug_assert_eq!(path.nodes[l], path.nodes[r]);
    let mut nodes = path.nodes[..=l].to_vec();
    nodes.extend_from_slice(&path.nodes[r + 1..]);
    let mut steps = path.steps[..l].to_vec();
    steps.extend_from_slice(&path.steps[r..]);
    BayesBallPath {
        nodes,
        steps,
        given: path.given,
    }
}

/// After a splice, the kept junction may have turned into a collider; it
/// must then be conditioned or have a conditioned descendant (the detour is
/// re-materialized by the caller). In a mixed graph with undirected edges
/// this can genuinely fail, in which case no simple form exists.
fn splice_junction_ok(g: &MixedGraph, path: &BayesBallPath, node: usize) -> Result<(), PathError> {
    let pos = path.nodes.iter().position(|&v| v == node).unwrap();
    if pos == 0 || pos + 1 == path.nodes.len() {
        return Ok(());
    }
    if path.is_collider_at(g, pos)
        && !path.given.contains(node)
        && !g.ancestors(path.given).contains(node)
    {
        return Err(PathError::NoSimpleForm { node });
    }
    Ok(())
}

/// Simplifies a Bayes-ball walk to a simple one between the same endpoints
/// given the same conditioning set, together with its trek/canyon
/// decomposition.
pub fn simplify_path(
    g: &MixedGraph,
    path: &BayesBallPath,
) -> Result<(BayesBallPath, TrekCanyonDecomposition), PathError> {
    path.validate(g)?;
    let mut walk = materialize_detours(g, path)?;
    let budget = 8 + 4 * walk.nodes.len() * (g.n() + 2);
    for _ in 0..budget {
        match decompose(g, &walk)? {
            Ok(decomp) => {
                debug_assert!(walk.validate(g).is_ok());
                debug_assert_eq!(walk.endpoints(), path.endpoints());
                return Ok((walk, decomp));
            }
            Err(DecomposeIssue::Repeated(node)) => {
                let spliced = splice_at(&walk, node);
                splice_junction_ok(g, &spliced, node)?;
                walk = materialize_detours(g, &spliced)?;
            }
            Err(DecomposeIssue::Shortcut { l, r }) => {
                walk = shortcut_canyon(&walk, l, r);
            }
        }
    }
    Err(PathError::SimplificationDiverged)
}

/// Builds a walk from a node sequence by resolving edges between
/// consecutive nodes; test scaffolding for hand-written walks.
#[cfg(test)]
pub(crate) fn walk_from_nodes(g: &MixedGraph, nodes: &[usize], given: NodeSet) -> BayesBallPath {
    let steps = nodes
        .windows(2)
        .map(|w| {
            let idx = g
                .incident(w[0])
                .iter()
                .copied()
                .find(|&e| g.edge(e).touches(w[1]))
                .expect("adjacent");
            PathStep {
                edge: idx,
                forward: g.edge(idx).a == w[0],
            }
        })
        .collect();
    BayesBallPath {
        nodes: nodes.to_vec(),
        steps,
        given,
    }
}
