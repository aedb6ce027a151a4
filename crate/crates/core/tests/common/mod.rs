//! Shared generators for the integration suites.
#![allow(dead_code)]

use dagassoc::graph::{Dag, Edge, EdgeKind, MixedGraph};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// All DAGs on `n` labeled nodes (each unordered pair absent or oriented).
pub fn all_dags(n: usize) -> Vec<Dag> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0u8; pairs.len()];
    loop {
        let arcs: Vec<(usize, usize)> = pairs
            .iter()
            .zip(&choice)
            .filter_map(|(&(a, b), &c)| match c {
                1 => Some((a, b)),
                2 => Some((b, a)),
                _ => None,
            })
            .collect();
        if let Ok(d) = Dag::from_edge_list(n, &arcs) {
            out.push(d);
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] == 3 {
                choice[k] = 0;
                k += 1;
            } else {
                break;
            }
        }
    }
}

/// Random DAG: orient each pair low -> high with the given probability,
/// then relabel by a random permutation.
pub fn random_dag(n: usize, edge_prob: f64, rng: &mut StdRng) -> Dag {
    let mut relabel: Vec<usize> = (0..n).collect();
    for p in (1..n).rev() {
        let q = rng.gen_range(0..=p);
        relabel.swap(p, q);
    }
    let mut arcs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(edge_prob) {
                arcs.push((relabel[a], relabel[b]));
            }
        }
    }
    Dag::from_edge_list(n, &arcs).expect("oriented along an order")
}

/// Random loopless mixed graph; directed edges follow a hidden order so
/// the directed part stays acyclic, and a few parallel edges appear.
pub fn random_lmg(n: usize, rng: &mut StdRng) -> MixedGraph {
    let mut relabel: Vec<usize> = (0..n).collect();
    for p in (1..n).rev() {
        let q = rng.gen_range(0..=p);
        relabel.swap(p, q);
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for _ in 0..2 {
                if rng.gen_bool(0.25) {
                    let kind = match rng.gen_range(0..3) {
                        0 => EdgeKind::Undirected,
                        1 => EdgeKind::Directed,
                        _ => EdgeKind::Bidirected,
                    };
                    edges.push(Edge {
                        a: relabel[a],
                        b: relabel[b],
                        kind,
                    });
                }
            }
        }
    }
    MixedGraph::new(n, edges).expect("valid")
}

/// Random acyclic directed mixed graph (directed + bidirected only).
pub fn random_admg(n: usize, rng: &mut StdRng) -> MixedGraph {
    let mut relabel: Vec<usize> = (0..n).collect();
    for p in (1..n).rev() {
        let q = rng.gen_range(0..=p);
        relabel.swap(p, q);
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.3) {
                let kind = if rng.gen_bool(0.5) {
                    EdgeKind::Directed
                } else {
                    EdgeKind::Bidirected
                };
                edges.push(Edge {
                    a: relabel[a],
                    b: relabel[b],
                    kind,
                });
            }
        }
    }
    MixedGraph::new(n, edges).expect("valid")
}
