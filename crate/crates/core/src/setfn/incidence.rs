//! Vertex–facet incidence of generalized permutohedra.
//!
//! The exact route works on rational-kind functions: vertices come from
//! the greedy correspondence, facets are the inequalities whose tight
//! vertex set spans affine dimension `n − 2` inside the hyperplane
//! `Σx = ω([n])`, and vertex degrees come from the combinatorial edge
//! test on the incidence matrix.
//!
//! The float route mirrors the published rounding pipeline for log-kind
//! realizations whose right-hand sides are irrational: round to dyadic
//! rationals, take exact greedy vertices of the rounded function,
//! threshold the slack matrix, and deduplicate.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use super::{SetFnError, SetFunction, ValueKind};
use crate::linalg::{Mat, Rat};
use crate::nodeset::{all_subsets, NodeSet};

/// Exact incidence is limited to ground sets where enumerating `n!` greedy
/// vertices and `2^n` inequalities stays cheap.
pub const MAX_INCIDENCE: usize = 7;

#[derive(Clone, Debug)]
pub struct FacetIncidence {
    pub n: usize,
    /// Deduplicated vertex coordinates, sorted.
    pub vertices: Vec<Vec<Rat>>,
    /// One representative subset per geometric facet.
    pub facet_sets: Vec<NodeSet>,
    /// `incidence[v][f]`: vertex `v` lies on facet `f`.
    pub incidence: Vec<Vec<bool>>,
    /// Vertex degrees in the edge graph.
    pub degrees: Vec<usize>,
    /// Affine dimension of the polytope.
    pub dim: usize,
    /// Every vertex degree equals `n − 1`.
    pub is_simple: bool,
}

impl FacetIncidence {
    pub fn f_vector_ends(&self) -> (usize, usize) {
        (self.vertices.len(), self.facet_sets.len())
    }
}

pub fn facet_incidence(w: &SetFunction) -> Result<FacetIncidence, SetFnError> {
    if w.kind() != ValueKind::Rational {
        return Err(SetFnError::NonRationalKind);
    }
    let n = w.n();
    if n > MAX_INCIDENCE {
        return Err(SetFnError::SizeBound(n, MAX_INCIDENCE));
    }
    if let Some((k, i, j)) = w.submodular_violation() {
        return Err(SetFnError::NotSubmodular { k, i, j });
    }

    let vertex_set: BTreeSet<Vec<Rat>> = (0..n)
        .permutations(n)
        .map(|perm| w.greedy_vertex(&perm).expect("submodular").coords)
        .collect();
    let vertices: Vec<Vec<Rat>> = vertex_set.into_iter().collect();
    let coord_sum = |v: &[Rat], s: NodeSet| -> Rat { s.iter().map(|i| v[i].clone()).sum() };

    // Facets keyed by their tight vertex set; complementary subsets can
    // support the same facet, keep the first representative.
    let full = NodeSet::full(n);
    let mut facets: BTreeMap<Vec<usize>, NodeSet> = BTreeMap::new();
    for s in all_subsets(n) {
        if s.is_empty() || s == full {
            continue;
        }
        let tight: Vec<usize> = (0..vertices.len())
            .filter(|&v| coord_sum(&vertices[v], s) == *w.value(s))
            .collect();
        if tight.is_empty() || tight.len() == vertices.len() {
            continue;
        }
        let pts = Mat::from_rows(tight.iter().map(|&v| vertices[v].clone()).collect());
        if pts.affine_dim_of_rows() == n.saturating_sub(2) {
            facets.entry(tight).or_insert(s);
        }
    }
    let facet_list: Vec<(Vec<usize>, NodeSet)> = facets.into_iter().collect();
    let incidence: Vec<Vec<bool>> = (0..vertices.len())
        .map(|v| facet_list.iter().map(|(t, _)| t.contains(&v)).collect())
        .collect();

    let degrees = degrees_from_incidence(&incidence);

    let dim = if vertices.is_empty() {
        0
    } else {
        Mat::from_rows(vertices.clone()).affine_dim_of_rows()
    };
    let is_simple = degrees.iter().all(|&d| d == n - 1);
    Ok(FacetIncidence {
        n,
        vertices,
        facet_sets: facet_list.into_iter().map(|(_, s)| s).collect(),
        incidence,
        degrees,
        dim,
        is_simple,
    })
}

/// Vertex degrees in the edge graph of a polytope given by its
/// vertex–facet incidence: two vertices are adjacent exactly when no
/// third vertex lies on every facet common to both.
pub fn degrees_from_incidence(incidence: &[Vec<bool>]) -> Vec<usize> {
    let nv = incidence.len();
    let nf = incidence.first().map_or(0, Vec::len);
    let mut degrees = vec![0usize; nv];
    for u in 0..nv {
        for v in u + 1..nv {
            let common: Vec<usize> = (0..nf)
                .filter(|&f| incidence[u][f] && incidence[v][f])
                .collect();
            let blocked = (0..nv)
                .filter(|&x| x != u && x != v)
                .any(|x| common.iter().all(|&f| incidence[x][f]));
            if !blocked {
                degrees[u] += 1;
                degrees[v] += 1;
            }
        }
    }
    degrees
}

#[derive(Clone, Debug)]
pub struct FloatIncidence {
    pub vertex_count: usize,
    pub facet_count: usize,
    /// Deduplicated 0/1 incidence matrix, rows by vertex, columns by facet.
    pub matrix: Vec<Vec<bool>>,
}

fn dyadic_round(x: f64, bits: u32) -> Rat {
    let scale = (2f64).powi(bits as i32);
    let scaled = (x * scale).round();
    Rat::new(
        BigInt::from_f64(scaled).expect("finite"),
        BigInt::one() << bits,
    )
}

/// The rounding pipeline: approximate `ω` at `round_bits` of precision,
/// compute exact greedy vertices of the rounded function, threshold the
/// slack matrix at `zero_bits`, and deduplicate rows and columns. Columns
/// whose tight rows do not span affine dimension `n − 2` are dropped, so
/// weakly redundant inequalities do not inflate the facet count.
pub fn float_incidence_heuristic(
    w: &SetFunction,
    round_bits: u32,
    zero_bits: u32,
) -> Result<FloatIncidence, SetFnError> {
    let n = w.n();
    if n > MAX_INCIDENCE {
        return Err(SetFnError::SizeBound(n, MAX_INCIDENCE));
    }
    let omega = |s: NodeSet| -> f64 {
        let v = w.value(s).to_f64().expect("representable");
        match w.kind() {
            ValueKind::Log => v.ln(),
            ValueKind::Rational => v,
        }
    };
    let rounded: Vec<Rat> = all_subsets(n)
        .map(|s| {
            if s.is_empty() {
                Rat::zero()
            } else {
                dyadic_round(omega(s), round_bits)
            }
        })
        .collect();

    // Exact greedy on the rounded function; candidates collapse later via
    // the thresholded incidence pattern.
    let candidates: BTreeSet<Vec<Rat>> = (0..n)
        .permutations(n)
        .map(|perm| {
            let mut coords = vec![Rat::zero(); n];
            let mut prefix = NodeSet::EMPTY;
            for &v in &perm {
                let next = prefix.with(v);
                coords[v] =
                    &rounded[next.bits() as usize] - &rounded[prefix.bits() as usize];
                prefix = next;
            }
            coords
        })
        .collect();
    let candidates: Vec<Vec<Rat>> = candidates.into_iter().collect();

    let full = NodeSet::full(n);
    let columns: Vec<NodeSet> = all_subsets(n)
        .filter(|s| !s.is_empty() && *s != full)
        .collect();
    let tol = Rat::new(BigInt::one(), BigInt::one() << zero_bits);
    let tight = |cand: &[Rat], s: NodeSet| -> bool {
        let sum: Rat = s.iter().map(|i| cand[i].clone()).sum();
        let slack = &rounded[s.bits() as usize] - sum;
        let abs = if slack < Rat::zero() { -slack } else { slack };
        abs <= tol
    };

    // Deduplicate rows by incidence pattern, keeping one exact
    // representative point per row.
    let mut rows: BTreeMap<Vec<bool>, Vec<Rat>> = BTreeMap::new();
    for cand in &candidates {
        let pattern: Vec<bool> = columns.iter().map(|&s| tight(cand, s)).collect();
        rows.entry(pattern).or_insert_with(|| cand.clone());
    }
    let rows: Vec<(Vec<bool>, Vec<Rat>)> = rows.into_iter().collect();

    let mut facet_patterns: BTreeSet<Vec<bool>> = BTreeSet::new();
    for (c, _) in columns.iter().enumerate() {
        let incident: Vec<usize> = (0..rows.len()).filter(|&r| rows[r].0[c]).collect();
        if incident.is_empty() || incident.len() == rows.len() {
            continue;
        }
        let pts = Mat::from_rows(incident.iter().map(|&r| rows[r].1.clone()).collect());
        if pts.affine_dim_of_rows() != n.saturating_sub(2) {
            continue;
        }
        facet_patterns.insert((0..rows.len()).map(|r| rows[r].0[c]).collect());
    }
    let facet_patterns: Vec<Vec<bool>> = facet_patterns.into_iter().collect();

    let matrix: Vec<Vec<bool>> = (0..rows.len())
        .map(|r| facet_patterns.iter().map(|col| col[r]).collect())
        .collect();
    Ok(FloatIncidence {
        vertex_count: rows.len(),
        facet_count: facet_patterns.len(),
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::simplex_fn;
    use super::*;
    use crate::linalg::rat_int;

    fn ns(items: &[usize]) -> NodeSet {
        items.iter().copied().collect()
    }

    #[test]
    fn hexagon_is_simple() {
        // sum of all simplices on [3]: the full permutohedron
        let mut w = SetFunction::zero(3);
        for s in all_subsets(3).filter(|s| !s.is_empty()) {
            w = w.sum(&simplex_fn(3, s)).unwrap();
        }
        let inc = facet_incidence(&w).unwrap();
        assert_eq!(inc.f_vector_ends(), (6, 6));
        assert_eq!(inc.dim, 2);
        assert!(inc.is_simple);
        assert!(inc.degrees.iter().all(|&d| d == 2));
    }

    #[test]
    fn v_structure_polytope_is_a_pentagon() {
        // U_{2,3} polytope plus the two edge segments
        let u23 = SetFunction::rational(3, |s| rat_int(s.len().min(2) as i64)).unwrap();
        let w = u23
            .sum(&simplex_fn(3, ns(&[0, 2])))
            .unwrap()
            .sum(&simplex_fn(3, ns(&[1, 2])))
            .unwrap();
        let inc = facet_incidence(&w).unwrap();
        assert_eq!(inc.f_vector_ends(), (5, 5));
        assert!(inc.is_simple);
    }

    #[test]
    fn segment_has_two_facet_vertices() {
        let w = simplex_fn(2, NodeSet::full(2));
        let inc = facet_incidence(&w).unwrap();
        assert_eq!(inc.f_vector_ends(), (2, 2));
        assert_eq!(inc.dim, 1);
        assert_eq!(inc.degrees, vec![1, 1]);
        assert!(inc.is_simple);
    }

    #[test]
    fn log_kind_routed_to_float_heuristic() {
        let d = |s: NodeSet| -> Rat {
            // identity-matrix determinants: point polytope
            let _ = s;
            Rat::one()
        };
        let w = SetFunction::log_from_dets(3, d).unwrap();
        assert!(matches!(
            facet_incidence(&w),
            Err(SetFnError::NonRationalKind)
        ));
        let inc = float_incidence_heuristic(&w, 52, 35).unwrap();
        assert_eq!(inc.vertex_count, 1);
        assert_eq!(inc.facet_count, 0);
    }

    #[test]
    fn float_heuristic_matches_exact_counts_on_pentagon() {
        let u23 = SetFunction::rational(3, |s| rat_int(s.len().min(2) as i64)).unwrap();
        let w = u23
            .sum(&simplex_fn(3, ns(&[0, 2])))
            .unwrap()
            .sum(&simplex_fn(3, ns(&[1, 2])))
            .unwrap();
        let exact = facet_incidence(&w).unwrap();
        let inc = float_incidence_heuristic(&w, 52, 35).unwrap();
        assert_eq!(
            (inc.vertex_count, inc.facet_count),
            exact.f_vector_ends()
        );
    }
}
