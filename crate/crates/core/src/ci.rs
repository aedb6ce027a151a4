//! Elementary conditional independence structures and the
//! semigraphoid / graphoid / gaussoid axiom systems.
//!
//! A structure is a set of elementary relations `i ⫫ j | K` over the
//! ground set `[n]`. Relations are stored in canonical form with
//! `i < j`, so the symmetry axiom is implicit.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::nodeset::{NodeSet, MAX_GROUND};

/// An elementary CI relation `i ⫫ j | cond` in canonical form (`i < j`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CiRelation {
    i: usize,
    j: usize,
    cond: NodeSet,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CiError {
    #[error("relation endpoints must be distinct, got {0}")]
    EqualEndpoints(usize),
    #[error("node {0} out of range for ground set of size {1}")]
    NodeOutOfRange(usize, usize),
    #[error("conditioning set {cond:?} contains endpoint {node}")]
    EndpointInCond { node: usize, cond: NodeSet },
    #[error("ground sets differ: {0} vs {1}")]
    GroundMismatch(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl CiRelation {
    /// Canonicalizes the endpoint order; rejects loops and overlapping
    /// conditioning sets.
    pub fn new(i: usize, j: usize, cond: NodeSet) -> Result<Self, CiError> {
        if i == j {
            return Err(CiError::EqualEndpoints(i));
        }
        if cond.contains(i) {
            return Err(CiError::EndpointInCond { node: i, cond });
        }
        if cond.contains(j) {
            return Err(CiError::EndpointInCond { node: j, cond });
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        Ok(CiRelation { i, j, cond })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn cond(&self) -> NodeSet {
        self.cond
    }
}

impl fmt::Debug for CiRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⫫{}|{:?}", self.i, self.j, self.cond)
    }
}

/// A finite set of elementary CI relations on `[n]`.
#[derive(Clone, PartialEq, Eq)]
pub struct CiStructure {
    n: usize,
    relations: BTreeSet<CiRelation>,
}

/// Witness of a failed axiom instance, for diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// Relations that triggered the rule.
    pub premises: Vec<CiRelation>,
    /// Relations of which at least one must be present but none is.
    pub missing_any_of: Vec<CiRelation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Semigraphoid,
    Intersection,
    Converse,
    WeakTransitivity,
    MssMonotone,
}

/// 1-based rendering `i _||_ j | k...` for user-facing messages.
fn render_relation(r: &CiRelation) -> String {
    let mut s = format!("{} _||_ {}", r.i + 1, r.j + 1);
    if !r.cond.is_empty() {
        s.push_str(" |");
        for k in r.cond.iter() {
            s.push_str(&format!(" {}", k + 1));
        }
    }
    s
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.axiom {
            Axiom::Semigraphoid => "SG2",
            Axiom::Intersection => "INT",
            Axiom::Converse => "G1",
            Axiom::WeakTransitivity => "G2",
            Axiom::MssMonotone => "MSS-monotonicity",
        };
        write!(f, "{name}: have")?;
        for (k, p) in self.premises.iter().enumerate() {
            write!(f, "{}[{}]", if k == 0 { " " } else { " and " }, render_relation(p))?;
        }
        write!(f, ", need")?;
        for (k, m) in self.missing_any_of.iter().enumerate() {
            write!(
                f,
                "{}[{}]",
                if k == 0 { " " } else { " or " },
                render_relation(m)
            )?;
        }
        Ok(())
    }
}

impl CiStructure {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_GROUND);
        CiStructure {
            n,
            relations: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn insert(&mut self, rel: CiRelation) -> Result<(), CiError> {
        if rel.j >= self.n {
            return Err(CiError::NodeOutOfRange(rel.j, self.n));
        }
        if !rel.cond.is_subset_of(NodeSet::full(self.n)) {
            let bad = rel.cond.difference(NodeSet::full(self.n)).iter().next().unwrap();
            return Err(CiError::NodeOutOfRange(bad, self.n));
        }
        self.relations.insert(rel);
        Ok(())
    }

    pub fn insert_parts(&mut self, i: usize, j: usize, cond: NodeSet) -> Result<(), CiError> {
        self.insert(CiRelation::new(i, j, cond)?)
    }

    pub fn contains(&self, i: usize, j: usize, cond: NodeSet) -> bool {
        match CiRelation::new(i, j, cond) {
            Ok(rel) => self.relations.contains(&rel),
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &CiRelation> {
        self.relations.iter()
    }

    /// Collects the relations declared independent by `indep` over all
    /// elementary triples.
    pub fn from_predicate(n: usize, mut indep: impl FnMut(usize, usize, NodeSet) -> bool) -> Self {
        let mut s = CiStructure::new(n);
        for i in 0..n {
            for j in i + 1..n {
                let rest = NodeSet::full(n).without(i).without(j);
                for cond in rest.subsets() {
                    if indep(i, j, cond) {
                        s.insert_parts(i, j, cond).unwrap();
                    }
                }
            }
        }
        s
    }

    /// Set equality of canonical relations; errors on ground-set mismatch.
    pub fn same_relations(&self, other: &CiStructure) -> Result<bool, CiError> {
        if self.n != other.n {
            return Err(CiError::GroundMismatch(self.n, other.n));
        }
        Ok(self.relations == other.relations)
    }

    fn triple_iter(&self) -> impl Iterator<Item = (usize, usize, usize, NodeSet)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| {
            (0..n).filter(move |&j| j != i).flat_map(move |j| {
                (0..n)
                    .filter(move |&k| k != i && k != j)
                    .flat_map(move |k| {
                        let rest = NodeSet::full(n).without(i).without(j).without(k);
                        rest.subsets().map(move |l| (i, j, k, l))
                    })
            })
        })
    }

    /// (SG2): `i⫫j|L` and `i⫫k|jL` imply `i⫫k|L` and `i⫫j|kL`.
    /// Iterating over all ordered `(i,j,k)` covers both directions of the
    /// biconditional pairing.
    pub fn semigraphoid_violation(&self) -> Option<AxiomViolation> {
        for (i, j, k, l) in self.triple_iter() {
            if self.contains(i, j, l) && self.contains(i, k, l.with(j)) {
                for (a, b, c) in [(i, k, l), (i, j, l.with(k))] {
                    if !self.contains(a, b, c) {
                        return Some(AxiomViolation {
                            axiom: Axiom::Semigraphoid,
                            premises: vec![
                                CiRelation::new(i, j, l).unwrap(),
                                CiRelation::new(i, k, l.with(j)).unwrap(),
                            ],
                            missing_any_of: vec![CiRelation::new(a, b, c).unwrap()],
                        });
                    }
                }
            }
        }
        None
    }

    /// (INT): `i⫫j|kL` and `i⫫k|jL` imply `i⫫j|L` and `i⫫k|L`.
    pub fn intersection_violation(&self) -> Option<AxiomViolation> {
        for (i, j, k, l) in self.triple_iter() {
            if self.contains(i, j, l.with(k)) && self.contains(i, k, l.with(j)) {
                for (a, b, c) in [(i, j, l), (i, k, l)] {
                    if !self.contains(a, b, c) {
                        return Some(AxiomViolation {
                            axiom: Axiom::Intersection,
                            premises: vec![
                                CiRelation::new(i, j, l.with(k)).unwrap(),
                                CiRelation::new(i, k, l.with(j)).unwrap(),
                            ],
                            missing_any_of: vec![CiRelation::new(a, b, c).unwrap()],
                        });
                    }
                }
            }
        }
        None
    }

    /// (G1): `i⫫j|L` and `i⫫k|L` imply `i⫫j|kL` and `i⫫k|jL`.
    pub fn converse_violation(&self) -> Option<AxiomViolation> {
        for (i, j, k, l) in self.triple_iter() {
            if self.contains(i, j, l) && self.contains(i, k, l) {
                for (a, b, c) in [(i, j, l.with(k)), (i, k, l.with(j))] {
                    if !self.contains(a, b, c) {
                        return Some(AxiomViolation {
                            axiom: Axiom::Converse,
                            premises: vec![
                                CiRelation::new(i, j, l).unwrap(),
                                CiRelation::new(i, k, l).unwrap(),
                            ],
                            missing_any_of: vec![CiRelation::new(a, b, c).unwrap()],
                        });
                    }
                }
            }
        }
        None
    }

    /// (G2), weak transitivity: `i⫫j|L` and `i⫫j|kL` imply
    /// `i⫫k|L` or `j⫫k|L`.
    pub fn weak_transitivity_violation(&self) -> Option<AxiomViolation> {
        for (i, j, k, l) in self.triple_iter() {
            if i > j {
                continue; // premises symmetric in (i, j)
            }
            if self.contains(i, j, l) && self.contains(i, j, l.with(k)) {
                let opt1 = CiRelation::new(i, k, l).unwrap();
                let opt2 = CiRelation::new(j, k, l).unwrap();
                if !self.relations.contains(&opt1) && !self.relations.contains(&opt2) {
                    return Some(AxiomViolation {
                        axiom: Axiom::WeakTransitivity,
                        premises: vec![
                            CiRelation::new(i, j, l).unwrap(),
                            CiRelation::new(i, j, l.with(k)).unwrap(),
                        ],
                        missing_any_of: vec![opt1, opt2],
                    });
                }
            }
        }
        None
    }

    /// Necessary condition for Minkowski-sum-of-simplices realizability:
    /// independence is monotone under growing the conditioning set.
    pub fn mss_monotone_violation(&self) -> Option<AxiomViolation> {
        for rel in &self.relations {
            let rest = NodeSet::full(self.n)
                .without(rel.i)
                .without(rel.j)
                .difference(rel.cond);
            for extra in rest.subsets() {
                if extra.is_empty() {
                    continue;
                }
                let big = rel.cond.union(extra);
                if !self.contains(rel.i, rel.j, big) {
                    return Some(AxiomViolation {
                        axiom: Axiom::MssMonotone,
                        premises: vec![*rel],
                        missing_any_of: vec![CiRelation::new(rel.i, rel.j, big).unwrap()],
                    });
                }
            }
        }
        None
    }

    pub fn is_semigraphoid(&self) -> bool {
        self.semigraphoid_violation().is_none()
    }

    pub fn is_graphoid(&self) -> bool {
        self.is_semigraphoid() && self.intersection_violation().is_none()
    }

    pub fn is_gaussoid(&self) -> bool {
        self.is_graphoid()
            && self.converse_violation().is_none()
            && self.weak_transitivity_violation().is_none()
    }

    pub fn is_mss_monotone(&self) -> bool {
        self.mss_monotone_violation().is_none()
    }

    /// The dual structure: `i⫫j|K` maps to `i⫫j|([n] \ Kij)`.
    pub fn dual(&self) -> CiStructure {
        let mut out = CiStructure::new(self.n);
        for rel in &self.relations {
            let dual_cond = NodeSet::full(self.n)
                .without(rel.i)
                .without(rel.j)
                .difference(rel.cond);
            out.insert_parts(rel.i, rel.j, dual_cond).unwrap();
        }
        out
    }

    /// All elementary relations NOT in the structure (the dependencies).
    pub fn complement(&self) -> Vec<CiRelation> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let rest = NodeSet::full(self.n).without(i).without(j);
                for cond in rest.subsets() {
                    let rel = CiRelation::new(i, j, cond).unwrap();
                    if !self.relations.contains(&rel) {
                        out.push(rel);
                    }
                }
            }
        }
        out
    }

    /// Parses the line format `i _||_ j | k1 k2 ...` with 1-based indices.
    /// The conditioning bar may be omitted when the set is empty. Blank
    /// lines and `#` comments are skipped. `n` is the ground-set size.
    pub fn parse_text(n: usize, text: &str) -> Result<Self, CiError> {
        let mut s = CiStructure::new(n);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |msg: String| CiError::Parse {
                line: lineno + 1,
                msg,
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let sep = tokens.iter().position(|&t| t == "_||_");
            if sep != Some(1) || tokens.len() < 3 {
                return Err(parse_err(
                    "expected `i _||_ j [| k1 k2 ...]` with single nodes on each side".into(),
                ));
            }
            let one_index = |tok: &str| -> Result<usize, CiError> {
                let v: usize = tok
                    .parse()
                    .map_err(|_| parse_err(format!("bad node index {tok:?}")))?;
                if v == 0 || v > n {
                    return Err(parse_err(format!("node {v} out of range 1..={n}")));
                }
                Ok(v - 1)
            };
            let i = one_index(tokens[0])?;
            let j = one_index(tokens[2])?;
            let mut cond = NodeSet::EMPTY;
            if tokens.len() > 3 {
                if tokens[3] != "|" {
                    return Err(parse_err(format!(
                        "expected `|` before the conditioning set, found {:?}",
                        tokens[3]
                    )));
                }
                for tok in &tokens[4..] {
                    cond.insert(one_index(tok)?);
                }
            }
            let rel = CiRelation::new(i, j, cond).map_err(|e| parse_err(e.to_string()))?;
            s.insert(rel).map_err(|e| parse_err(e.to_string()))?;
        }
        Ok(s)
    }

    /// Serializes in the same line format, 1-based.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for rel in &self.relations {
            out.push_str(&format!("{} _||_ {}", rel.i + 1, rel.j + 1));
            if !rel.cond.is_empty() {
                out.push_str(" |");
                for k in rel.cond.iter() {
                    out.push_str(&format!(" {}", k + 1));
                }
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for CiStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CiStructure(n={}, {:?})", self.n, self.relations)
    }
}

/// Number of elementary triples on `[n]`: one per pair and conditioning set.
pub fn elementary_triple_count(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    (n * (n - 1) / 2) << (n - 2)
}
