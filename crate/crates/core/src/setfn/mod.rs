//! Submodular set functions and their generalized permutohedra.
//!
//! A set function carries exact values of one of two kinds. Rational-kind
//! functions store `ω(A)` directly. Log-kind functions store a positive
//! rational `d(A)` with the semantics `ω(A) = log d(A)`, so every linear
//! relation among `ω`-values is decided by an exact multiplicative
//! relation among `d`-values. No floating point enters any CI decision or
//! vertex-class merge.

mod incidence;

pub use incidence::{
    degrees_from_incidence, facet_incidence, float_incidence_heuristic, FacetIncidence,
    FloatIncidence,
};

use std::cmp::Ordering;
use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ci::CiStructure;
use crate::linalg::{rat_from_string, rat_to_string, Rat};
use crate::nodeset::{all_subsets, NodeSet, MAX_GROUND};

/// Enumeration bound for `permutation_classes`.
pub const MAX_CLASS_ENUM: usize = 9;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ValueKind {
    Rational,
    /// Values are logs of stored positive rationals.
    Log,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SetFnError {
    #[error("function is not submodular at K={k:?}, i={i}, j={j}")]
    NotSubmodular { k: NodeSet, i: usize, j: usize },
    #[error("value kinds differ")]
    KindMismatch,
    #[error("log-kind values must be positive, got {0} for {1:?}")]
    NonPositive(String, NodeSet),
    #[error("empty set must have value {expected}, got {got}")]
    BadEmptyValue { expected: String, got: String },
    #[error("ground set of size {0} exceeds the enumeration bound {1}")]
    SizeBound(usize, usize),
    #[error("operation requires rational value kind")]
    NonRationalKind,
    #[error("invalid set-function JSON: {0}")]
    Json(String),
}

/// A total function `2^[n] -> values` with exact comparison semantics.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetFunction {
    n: usize,
    kind: ValueKind,
    vals: Vec<Rat>,
}

impl SetFunction {
    /// Rational-kind function from a per-subset closure; `f(∅)` must be 0.
    pub fn rational(n: usize, mut f: impl FnMut(NodeSet) -> Rat) -> Result<Self, SetFnError> {
        assert!(n <= MAX_GROUND);
        let vals: Vec<Rat> = all_subsets(n).map(|s| f(s)).collect();
        if !vals[0].is_zero() {
            return Err(SetFnError::BadEmptyValue {
                expected: "0".into(),
                got: rat_to_string(&vals[0]),
            });
        }
        Ok(SetFunction {
            n,
            kind: ValueKind::Rational,
            vals,
        })
    }

    /// Log-kind function from the stored determinant values `d(A)`;
    /// requires `d(∅) = 1` and `d(A) > 0`.
    pub fn log_from_dets(n: usize, mut d: impl FnMut(NodeSet) -> Rat) -> Result<Self, SetFnError> {
        assert!(n <= MAX_GROUND);
        let vals: Vec<Rat> = all_subsets(n).map(|s| d(s)).collect();
        if !vals[0].is_one() {
            return Err(SetFnError::BadEmptyValue {
                expected: "1".into(),
                got: rat_to_string(&vals[0]),
            });
        }
        for (bits, v) in vals.iter().enumerate() {
            if *v <= Rat::zero() {
                return Err(SetFnError::NonPositive(
                    rat_to_string(v),
                    NodeSet::from_bits(bits as u16),
                ));
            }
        }
        Ok(SetFunction {
            n,
            kind: ValueKind::Log,
            vals,
        })
    }

    /// The zero function (a point polytope at the origin).
    pub fn zero(n: usize) -> Self {
        SetFunction::rational(n, |_| Rat::zero()).unwrap()
    }

    /// The modular function `A -> |A|`.
    pub fn cardinality(n: usize) -> Self {
        SetFunction::rational(n, |s| Rat::from_integer(s.len().into())).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ValueKind {
        self.kind
    }

    /// Stored value for a subset: `ω(A)` for rational kind, `d(A)` for log
    /// kind.
    pub fn value(&self, s: NodeSet) -> &Rat {
        &self.vals[s.bits() as usize]
    }

    /// Compares `ω(Ki) + ω(Kj)` against `ω(Kij) + ω(K)` exactly.
    /// `Greater` is the strict submodular case, `Equal` the removed wall.
    pub fn slack_cmp(&self, k: NodeSet, i: usize, j: usize) -> Ordering {
        debug_assert!(i != j && !k.contains(i) && !k.contains(j));
        let ki = k.with(i);
        let kj = k.with(j);
        let kij = ki.with(j);
        match self.kind {
            ValueKind::Rational => {
                let lhs = self.value(ki) + self.value(kj);
                let rhs = self.value(kij) + self.value(k);
                lhs.cmp(&rhs)
            }
            ValueKind::Log => {
                let lhs = self.value(ki) * self.value(kj);
                let rhs = self.value(kij) * self.value(k);
                lhs.cmp(&rhs)
            }
        }
    }

    /// First elementary submodularity violation, if any.
    pub fn submodular_violation(&self) -> Option<(NodeSet, usize, usize)> {
        for k in all_subsets(self.n) {
            for i in 0..self.n {
                if k.contains(i) {
                    continue;
                }
                for j in i + 1..self.n {
                    if k.contains(j) {
                        continue;
                    }
                    if self.slack_cmp(k, i, j) == Ordering::Less {
                        return Some((k, i, j));
                    }
                }
            }
        }
        None
    }

    pub fn is_submodular(&self) -> bool {
        self.submodular_violation().is_none()
    }

    fn require_submodular(&self) -> Result<(), SetFnError> {
        match self.submodular_violation() {
            None => Ok(()),
            Some((k, i, j)) => Err(SetFnError::NotSubmodular { k, i, j }),
        }
    }

    /// The semigraphoid induced by a submodular function: `i ⫫ j | K`
    /// exactly at the tight elementary inequalities.
    pub fn semigraphoid(&self) -> Result<CiStructure, SetFnError> {
        self.require_submodular()?;
        Ok(CiStructure::from_predicate(self.n, |i, j, k| {
            self.slack_cmp(k, i, j) == Ordering::Equal
        }))
    }

    /// Pointwise sum. Both operands must be submodular-comparable, i.e.
    /// share the value kind; log-kind functions multiply their stored
    /// determinants.
    pub fn sum(&self, other: &SetFunction) -> Result<SetFunction, SetFnError> {
        if self.n != other.n || self.kind != other.kind {
            return Err(SetFnError::KindMismatch);
        }
        let vals = self
            .vals
            .iter()
            .zip(&other.vals)
            .map(|(a, b)| match self.kind {
                ValueKind::Rational => a + b,
                ValueKind::Log => a * b,
            })
            .collect();
        Ok(SetFunction {
            n: self.n,
            kind: self.kind,
            vals,
        })
    }

    /// The reflection `ω'(S) = ω([n] \ S) − ω([n])`; the polytope of `ω'`
    /// is the negative of the polytope of `ω`.
    pub fn dual_flip(&self) -> SetFunction {
        let full = NodeSet::full(self.n);
        let vals = all_subsets(self.n)
            .map(|s| {
                let comp = full.difference(s);
                match self.kind {
                    ValueKind::Rational => self.value(comp) - self.value(full),
                    ValueKind::Log => self.value(comp) / self.value(full),
                }
            })
            .collect();
        SetFunction {
            n: self.n,
            kind: self.kind,
            vals,
        }
    }

    fn greedy_coords(&self, perm: &[usize]) -> Vec<Rat> {
        let mut coords = vec![Rat::zero(); self.n];
        let mut prefix = NodeSet::EMPTY;
        for &v in perm {
            let next = prefix.with(v);
            coords[v] = match self.kind {
                ValueKind::Rational => self.value(next) - self.value(prefix),
                ValueKind::Log => self.value(next) / self.value(prefix),
            };
            prefix = next;
        }
        coords
    }

    /// Greedy vertex selected by a permutation: coordinate `π(k)` is the
    /// prefix difference `ω({π(1..k)}) − ω({π(1..k−1)})`. For log-kind
    /// functions the coordinates are stored multiplicatively (as
    /// `exp(x_i)`, an exact positive rational).
    pub fn greedy_vertex(&self, perm: &[usize]) -> Result<VertexPoint, SetFnError> {
        self.require_submodular()?;
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        Ok(VertexPoint {
            kind: self.kind,
            coords: self.greedy_coords(perm),
        })
    }

    /// All facet-style inequalities `Σ_{i∈I} x_i ≤ ω(I)` for nonempty
    /// proper `I`, plus the equality at `[n]`. Bounds are in storage
    /// semantics (`d(I)` for log kind).
    pub fn h_representation(&self) -> HRepresentation {
        let full = NodeSet::full(self.n);
        let inequalities = all_subsets(self.n)
            .filter(|s| !s.is_empty() && *s != full)
            .map(|s| (s, self.value(s).clone()))
            .collect();
        HRepresentation {
            n: self.n,
            kind: self.kind,
            inequalities,
            equality: (full, self.value(full).clone()),
        }
    }

    /// Partitions all `n!` permutations into vertex classes by exact greedy
    /// vertex equality, together with the induced semigraphoid (the removed
    /// walls). Facet tight sets are filled for rational-kind functions
    /// within the incidence bound; the float heuristic covers log-kind
    /// realizations.
    pub fn permutation_classes(&self) -> Result<PermutohedronSummary, SetFnError> {
        if self.n > MAX_CLASS_ENUM {
            return Err(SetFnError::SizeBound(self.n, MAX_CLASS_ENUM));
        }
        self.require_submodular()?;
        let mut groups: BTreeMap<Vec<Rat>, Vec<Vec<usize>>> = BTreeMap::new();
        for perm in (0..self.n).permutations(self.n) {
            let coords = self.greedy_coords(&perm);
            groups.entry(coords).or_default().push(perm);
        }
        let mut classes: Vec<VertexClass> = groups
            .into_iter()
            .map(|(coords, perms)| VertexClass {
                vertex: VertexPoint {
                    kind: self.kind,
                    coords,
                },
                perms,
            })
            .collect();
        // deterministic order: by least permutation in the class
        classes.sort_by(|a, b| a.perms[0].cmp(&b.perms[0]));
        let removed_walls = self.semigraphoid()?;
        let facet_tight_sets = if self.kind == ValueKind::Rational
            && self.n <= incidence::MAX_INCIDENCE
        {
            Some(facet_incidence(self)?.facet_sets)
        } else {
            None
        };
        Ok(PermutohedronSummary {
            n: self.n,
            classes,
            removed_walls,
            facet_tight_sets,
        })
    }
}

/// One exact vertex. Rational-kind coordinates are the point itself;
/// log-kind coordinates store `exp(x_i)` as positive rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct VertexPoint {
    pub kind: ValueKind,
    pub coords: Vec<Rat>,
}

impl PartialOrd for ValueKind {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ValueKind {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self as u8).cmp(&(*other as u8))
    }
}

impl VertexPoint {
    /// Negation of the point (reciprocal coordinates for log kind).
    pub fn negated(&self) -> VertexPoint {
        VertexPoint {
            kind: self.kind,
            coords: self
                .coords
                .iter()
                .map(|c| match self.kind {
                    ValueKind::Rational => -c,
                    ValueKind::Log => Rat::one() / c,
                })
                .collect(),
        }
    }

    fn combine(&self, s: NodeSet) -> Rat {
        match self.kind {
            ValueKind::Rational => s.iter().map(|i| self.coords[i].clone()).sum(),
            ValueKind::Log => s
                .iter()
                .map(|i| self.coords[i].clone())
                .product(),
        }
    }

    /// Whether `Σ_{i∈I} x_i ≤ ω(I)` holds (multiplicatively for log kind).
    pub fn satisfies(&self, s: NodeSet, bound: &Rat) -> bool {
        self.combine(s) <= *bound
    }

    /// Whether the inequality for `I` is tight at this point.
    pub fn tight_at(&self, s: NodeSet, bound: &Rat) -> bool {
        self.combine(s) == *bound
    }
}

#[derive(Clone, Debug)]
pub struct HRepresentation {
    pub n: usize,
    pub kind: ValueKind,
    pub inequalities: Vec<(NodeSet, Rat)>,
    pub equality: (NodeSet, Rat),
}

impl HRepresentation {
    pub fn satisfied_by(&self, v: &VertexPoint) -> bool {
        self.inequalities.iter().all(|(s, b)| v.satisfies(*s, b))
            && v.tight_at(self.equality.0, &self.equality.1)
    }
}

/// A vertex class of the coarsened permutation fan.
#[derive(Clone, Debug)]
pub struct VertexClass {
    pub vertex: VertexPoint,
    /// All permutations selecting this vertex, lexicographically sorted.
    pub perms: Vec<Vec<usize>>,
}

/// The coarsened `S_n` fan of a submodular function.
#[derive(Clone, Debug)]
pub struct PermutohedronSummary {
    pub n: usize,
    pub classes: Vec<VertexClass>,
    pub removed_walls: CiStructure,
    /// Subsets whose inequality supports a facet; exact route, rational
    /// kind only.
    pub facet_tight_sets: Option<Vec<NodeSet>>,
}

impl PermutohedronSummary {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// The classes as sorted permutation lists, for partition comparison
    /// independent of vertex coordinates.
    pub fn partition(&self) -> Vec<Vec<Vec<usize>>> {
        let mut p: Vec<Vec<Vec<usize>>> =
            self.classes.iter().map(|c| c.perms.clone()).collect();
        p.sort();
        p
    }

    pub fn same_partition(&self, other: &PermutohedronSummary) -> bool {
        self.n == other.n && self.partition() == other.partition()
    }
}

// --- JSON wire format ---------------------------------------------------
//
// {"n": 3, "kind": "rational", "values": {"1": "1", "1,2": "3/2", ...}}
// subsets are sorted comma-joined 1-based indices; the empty set is
// implied (0 for rational, 1 for log).

#[derive(Serialize, Deserialize)]
struct SetFnWire {
    n: usize,
    kind: String,
    values: BTreeMap<String, String>,
}

fn subset_key(s: NodeSet) -> String {
    s.iter().map(|i| (i + 1).to_string()).join(",")
}

fn parse_subset_key(key: &str, n: usize) -> Result<NodeSet, SetFnError> {
    let mut s = NodeSet::EMPTY;
    for tok in key.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let v: usize = tok
            .parse()
            .map_err(|_| SetFnError::Json(format!("bad subset key {key:?}")))?;
        if v == 0 || v > n {
            return Err(SetFnError::Json(format!(
                "subset key {key:?} out of range 1..={n}"
            )));
        }
        s.insert(v - 1);
    }
    Ok(s)
}

impl SetFunction {
    pub fn to_json(&self) -> String {
        let values = all_subsets(self.n)
            .filter(|s| !s.is_empty())
            .map(|s| (subset_key(s), rat_to_string(self.value(s))))
            .collect();
        let wire = SetFnWire {
            n: self.n,
            kind: match self.kind {
                ValueKind::Rational => "rational".into(),
                ValueKind::Log => "log".into(),
            },
            values,
        };
        serde_json::to_string_pretty(&wire).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, SetFnError> {
        let wire: SetFnWire =
            serde_json::from_str(text).map_err(|e| SetFnError::Json(e.to_string()))?;
        if wire.n > MAX_GROUND {
            return Err(SetFnError::Json(format!("n = {} too large", wire.n)));
        }
        let kind = match wire.kind.as_str() {
            "rational" => ValueKind::Rational,
            "log" => ValueKind::Log,
            other => {
                return Err(SetFnError::Json(format!(
                    "unknown kind {other:?}; expected \"rational\" or \"log\""
                )))
            }
        };
        let default = match kind {
            ValueKind::Rational => Rat::zero(),
            ValueKind::Log => Rat::one(),
        };
        let mut vals = vec![default; 1 << wire.n];
        let mut seen = vec![false; 1 << wire.n];
        seen[0] = true;
        for (key, val) in &wire.values {
            let s = parse_subset_key(key, wire.n)?;
            let v = rat_from_string(val).map_err(SetFnError::Json)?;
            if s.is_empty() {
                let expected = match kind {
                    ValueKind::Rational => Rat::zero(),
                    ValueKind::Log => Rat::one(),
                };
                if v != expected {
                    return Err(SetFnError::BadEmptyValue {
                        expected: rat_to_string(&expected),
                        got: rat_to_string(&v),
                    });
                }
                continue;
            }
            vals[s.bits() as usize] = v;
            seen[s.bits() as usize] = true;
        }
        if let Some(missing) = seen.iter().position(|&x| !x) {
            return Err(SetFnError::Json(format!(
                "missing value for subset {:?}",
                NodeSet::from_bits(missing as u16)
            )));
        }
        match kind {
            ValueKind::Rational => SetFunction::rational(wire.n, |s| vals[s.bits() as usize].clone()),
            ValueKind::Log => SetFunction::log_from_dets(wire.n, |s| vals[s.bits() as usize].clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_int};

    /// Rank function of the rank-one matroid supported on `support`.
    pub(crate) fn simplex_fn(n: usize, support: NodeSet) -> SetFunction {
        SetFunction::rational(n, |s| {
            if s.intersection(support).is_empty() {
                Rat::zero()
            } else {
                Rat::one()
            }
        })
        .unwrap()
    }

    fn ns(items: &[usize]) -> NodeSet {
        items.iter().copied().collect()
    }

    #[test]
    fn uniform_rank_one_is_submodular() {
        let w = simplex_fn(3, NodeSet::full(3));
        assert!(w.is_submodular());
        let sg = w.semigraphoid().unwrap();
        // exactly {1⫫2|3, 1⫫3|2, 2⫫3|1}
        assert_eq!(sg.len(), 3);
        assert!(sg.contains(0, 1, ns(&[2])));
        assert!(sg.contains(0, 2, ns(&[1])));
        assert!(sg.contains(1, 2, ns(&[0])));
    }

    #[test]
    fn squared_cardinality_is_not_submodular() {
        let w = SetFunction::rational(4, |s| rat_int((s.len() * s.len()) as i64)).unwrap();
        assert!(!w.is_submodular());
        assert!(w.semigraphoid().is_err());
        assert!(w.greedy_vertex(&[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn modular_function_collapses_everything() {
        let w = SetFunction::cardinality(3);
        let sg = w.semigraphoid().unwrap();
        assert_eq!(sg.len(), crate::ci::elementary_triple_count(3));
        let summary = w.permutation_classes().unwrap();
        assert_eq!(summary.class_count(), 1);
        let v = w.greedy_vertex(&[2, 0, 1]).unwrap();
        assert_eq!(v.coords, vec![Rat::one(), Rat::one(), Rat::one()]);
    }

    #[test]
    fn simplex_vertices_and_classes() {
        let w = simplex_fn(3, NodeSet::full(3));
        let v = w.greedy_vertex(&[0, 1, 2]).unwrap();
        assert_eq!(v.coords, vec![rat_int(1), rat_int(0), rat_int(0)]);
        // simplex: classes by leading element
        assert_eq!(w.permutation_classes().unwrap().class_count(), 3);
    }

    #[test]
    fn greedy_prefixes_are_tight_and_feasible() {
        let w = simplex_fn(4, ns(&[0, 2, 3]))
            .sum(&simplex_fn(4, ns(&[1, 2])))
            .unwrap()
            .sum(&SetFunction::cardinality(4))
            .unwrap();
        assert!(w.is_submodular());
        let hrep = w.h_representation();
        for perm in (0..4usize).permutations(4) {
            let v = w.greedy_vertex(&perm).unwrap();
            assert!(hrep.satisfied_by(&v));
            let mut prefix = NodeSet::EMPTY;
            for &x in &perm {
                prefix.insert(x);
                assert!(v.tight_at(prefix, w.value(prefix)));
            }
        }
    }

    #[test]
    fn wall_removal_matches_class_merge() {
        // adjacent transpositions merge exactly when the elementary
        // inequality is tight
        let w = simplex_fn(4, ns(&[0, 1, 2])).sum(&simplex_fn(4, ns(&[2, 3]))).unwrap();
        for perm in (0..4usize).permutations(4) {
            for p in 0..3 {
                let mut swapped = perm.clone();
                swapped.swap(p, p + 1);
                let k: NodeSet = perm[..p].iter().copied().collect();
                let merged = w.greedy_vertex(&perm).unwrap() == w.greedy_vertex(&swapped).unwrap();
                let tight =
                    w.slack_cmp(k, perm[p], perm[p + 1]) == Ordering::Equal;
                assert_eq!(merged, tight);
            }
        }
    }

    #[test]
    fn dual_flip_involution_and_vertex_negation() {
        let w = simplex_fn(3, NodeSet::full(3));
        let flipped = w.dual_flip();
        assert!(flipped.is_submodular());
        assert_eq!(flipped.dual_flip(), w);
        for perm in (0..3usize).permutations(3) {
            let rev: Vec<usize> = perm.iter().rev().copied().collect();
            assert_eq!(
                flipped.greedy_vertex(&rev).unwrap(),
                w.greedy_vertex(&perm).unwrap().negated()
            );
        }

        let modular = SetFunction::cardinality(3);
        let flipped = modular.dual_flip();
        for perm in (0..3usize).permutations(3) {
            let rev: Vec<usize> = perm.iter().rev().copied().collect();
            assert_eq!(
                flipped.greedy_vertex(&rev).unwrap(),
                modular.greedy_vertex(&perm).unwrap().negated()
            );
        }
    }

    #[test]
    fn sum_intersects_semigraphoids() {
        let a = simplex_fn(3, ns(&[0, 1]));
        let b = simplex_fn(3, ns(&[1, 2]));
        let s = a.sum(&b).unwrap();
        let sga = a.semigraphoid().unwrap();
        let sgb = b.semigraphoid().unwrap();
        let sgs = s.semigraphoid().unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                let rest = NodeSet::full(3).without(i).without(j);
                for k in rest.subsets() {
                    assert_eq!(
                        sgs.contains(i, j, k),
                        sga.contains(i, j, k) && sgb.contains(i, j, k)
                    );
                }
            }
        }
        // identity: w + 0 = w
        assert_eq!(a.sum(&SetFunction::zero(3)).unwrap(), a);
        // three segments sum to the hexagon
        let hex = simplex_fn(3, ns(&[0, 1]))
            .sum(&simplex_fn(3, ns(&[0, 2])))
            .unwrap()
            .sum(&simplex_fn(3, ns(&[1, 2])))
            .unwrap();
        assert_eq!(hex.permutation_classes().unwrap().class_count(), 6);
    }

    #[test]
    fn log_kind_comparisons_are_multiplicative() {
        // d-values of a 2x2 positive definite matrix [[2,1],[1,2]]
        let d = |s: NodeSet| -> Rat {
            match s.bits() {
                0b00 => rat_int(1),
                0b01 | 0b10 => rat_int(2),
                0b11 => rat_int(3),
                _ => unreachable!(),
            }
        };
        let w = SetFunction::log_from_dets(2, d).unwrap();
        assert!(w.is_submodular());
        // 2*2 > 3*1: the pair is dependent
        assert_eq!(w.slack_cmp(NodeSet::EMPTY, 0, 1), Ordering::Greater);
        let v = w.greedy_vertex(&[0, 1]).unwrap();
        assert_eq!(v.coords, vec![rat_int(2), rat(3, 2)]);
        assert!(SetFunction::log_from_dets(1, |s| if s.is_empty() {
            Rat::one()
        } else {
            rat_int(-3)
        })
        .is_err());
    }

    #[test]
    fn kind_mismatch_rejected() {
        let a = SetFunction::cardinality(2);
        let b = SetFunction::log_from_dets(2, |s| if s.is_empty() { Rat::one() } else { rat_int(2) })
            .unwrap();
        assert_eq!(a.sum(&b), Err(SetFnError::KindMismatch));
    }

    #[test]
    fn json_round_trip() {
        let w = simplex_fn(3, ns(&[0, 2])).sum(&SetFunction::cardinality(3)).unwrap();
        let back = SetFunction::from_json(&w.to_json()).unwrap();
        assert_eq!(w, back);
        assert!(SetFunction::from_json("{\"n\":2,\"kind\":\"foo\",\"values\":{}}").is_err());
        assert!(SetFunction::from_json("{\"n\":2,\"kind\":\"rational\",\"values\":{\"1\":\"1\"}}")
            .is_err());
    }
}
