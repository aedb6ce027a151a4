//! Essential graphs (CPDAGs): the partially directed representation of a
//! Markov equivalence class, computed from skeleton + V-structures by
//! Meek closure.

use std::collections::BTreeSet;

use super::Dag;

/// Partially directed graph with a canonical edge-set representation, so
/// equivalence classes deduplicate by `Ord`/`Eq`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct EssentialGraph {
    pub n: usize,
    /// Arcs `a -> b` present in every member of the class.
    pub directed: BTreeSet<(usize, usize)>,
    /// Reversible edges, stored with `a < b`.
    pub undirected: BTreeSet<(usize, usize)>,
}

impl EssentialGraph {
    pub fn edge_count(&self) -> usize {
        self.directed.len() + self.undirected.len()
    }

    pub fn skeleton(&self) -> BTreeSet<(usize, usize)> {
        self.directed
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .chain(self.undirected.iter().copied())
            .collect()
    }
}

/// Computes the essential graph of `g`'s Markov equivalence class: keep the
/// skeleton, orient V-structures, and close under the Meek rules. The
/// reachability form of the final rule also forces orientations implied by
/// acyclicity.
pub fn essential_graph(g: &Dag) -> EssentialGraph {
    let n = g.n();
    let mut und: BTreeSet<(usize, usize)> = g.graph().skeleton();
    let mut dir: BTreeSet<(usize, usize)> = BTreeSet::new();

    let adjacent = |und: &BTreeSet<(usize, usize)>, dir: &BTreeSet<(usize, usize)>, a: usize, b: usize| {
        und.contains(&(a.min(b), a.max(b))) || dir.contains(&(a, b)) || dir.contains(&(b, a))
    };
    let orient = |und: &mut BTreeSet<(usize, usize)>, dir: &mut BTreeSet<(usize, usize)>, a: usize, b: usize| {
        und.remove(&(a.min(b), a.max(b)));
        dir.insert((a, b));
    };

    for (a, b, k) in g.v_structures() {
        orient(&mut und, &mut dir, a, k);
        orient(&mut und, &mut dir, b, k);
    }

    let parents = |dir: &BTreeSet<(usize, usize)>, v: usize| -> Vec<usize> {
        dir.iter().filter(|&&(_, b)| b == v).map(|&(a, _)| a).collect()
    };
    let reaches = |dir: &BTreeSet<(usize, usize)>, from: usize, to: usize| -> bool {
        let mut stack = vec![from];
        let mut seen = vec![false; n];
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            for &(a, b) in dir.iter() {
                if a == v && !seen[b] {
                    stack.push(b);
                }
            }
        }
        false
    };

    loop {
        let mut changed = false;
        let undirected: Vec<(usize, usize)> = und.iter().copied().collect();

        for (x, y) in undirected {
            if !und.contains(&(x, y)) {
                continue;
            }
            for (a, b) in [(x, y), (y, x)] {
                // R1: c -> a, a -- b, c and b non-adjacent  =>  a -> b
                let r1 = parents(&dir, a)
                    .iter()
                    .any(|&c| c != b && !adjacent(&und, &dir, c, b));
                // R2: a -> w -> b with a -- b  =>  a -> b
                let r2 = dir
                    .iter()
                    .any(|&(s, w)| s == a && dir.contains(&(w, b)));
                // R3: a -- c, a -- d, c -> b, d -> b, c and d non-adjacent
                let pb = parents(&dir, b);
                let mut r3 = false;
                for (ci, &c) in pb.iter().enumerate() {
                    for &d in &pb[ci + 1..] {
                        if !adjacent(&und, &dir, c, d)
                            && und.contains(&(a.min(c), a.max(c)))
                            && und.contains(&(a.min(d), a.max(d)))
                        {
                            r3 = true;
                        }
                    }
                }
                // R4 / acyclicity closure: a directed path a => b forces a -> b
                let r4 = || reaches(&dir, a, b);
                if r1 || r2 || r3 || r4() {
                    orient(&mut und, &mut dir, a, b);
                    changed = true;
                    break;
                }
            }
        }
        if !changed {
            break;
        }
    }

    EssentialGraph {
        n,
        directed: dir,
        undirected: und,
    }
}
