//! Matroids from simple Bayes-ball paths and the Minkowski-sum-of-matroid-
//! polytopes construction.
//!
//! Each simple path yields a matroid: nodes of one trek or canyon become
//! parallel elements, nodes off the path become loops, and consecutive
//! treks with the `m` canyons between them form a uniform matroid
//! `U_{m+1, m+2}`, glued along shared treks by parallel connection. The
//! realization places each group on a moment curve in its own coordinate
//! block, chained at the shared trek points, so ranks are exact integer
//! matrix ranks.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::ci::CiStructure;
use crate::graph::{
    find_bayes_ball_path, m_separated, simplify_path, BlockKind, MixedGraph, PathError,
    TrekCanyonDecomposition,
};
use crate::linalg::{rat_int, rat_to_string, Mat, Rat};
use crate::nodeset::{all_subsets, NodeSet};
use crate::setfn::{SetFnError, SetFunction};

/// Ground-set bound for the associahedron builder.
pub const MAX_MSMP: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatroidError {
    #[error("decomposition is not a valid simple-path block sequence: {0}")]
    BadDecomposition(String),
    #[error("ground set of size {0} exceeds the bound {1}")]
    SizeBound(usize, usize),
    #[error("path error: {0}")]
    Path(#[from] PathError),
    #[error("set function error: {0}")]
    SetFn(#[from] SetFnError),
}

/// Anything that answers rank queries over subsets of `[n]`.
pub trait RankOracle {
    fn ground_size(&self) -> usize;
    fn rank(&self, s: NodeSet) -> usize;
}

/// The matroid of a simple Bayes-ball path.
#[derive(Clone, Debug)]
pub struct PathMatroid {
    n: usize,
    /// Block id per node; `None` marks a loop.
    block_of: Vec<Option<usize>>,
    /// Node lists per block, in path order (treks and canyons alternating
    /// as in the decomposition).
    blocks: Vec<Vec<usize>>,
    /// Block ids per group `(t_k, canyons..., t_{k+1})`.
    groups: Vec<Vec<usize>>,
    /// Homogeneous coordinates, one column per node; loops are zero.
    realization: Mat,
}

impl PathMatroid {
    /// Builds the matroid of a simple-path decomposition on ground set
    /// `[n]`.
    pub fn from_decomposition(
        decomp: &TrekCanyonDecomposition,
        n: usize,
    ) -> Result<Self, MatroidError> {
        let blocks_in = &decomp.blocks;
        if blocks_in.is_empty()
            || blocks_in.first().unwrap().kind != BlockKind::Trek
            || blocks_in.last().unwrap().kind != BlockKind::Trek
        {
            return Err(MatroidError::BadDecomposition(
                "must start and end with treks".into(),
            ));
        }
        if blocks_in.windows(2).any(|w| {
            w[0].kind == BlockKind::Trek && w[1].kind == BlockKind::Trek
        }) {
            return Err(MatroidError::BadDecomposition(
                "consecutive treks without a canyon".into(),
            ));
        }
        let mut block_of: Vec<Option<usize>> = vec![None; n];
        for (bi, b) in blocks_in.iter().enumerate() {
            if b.nodes.is_empty() {
                return Err(MatroidError::BadDecomposition("empty block".into()));
            }
            for &v in &b.nodes {
                if v >= n {
                    return Err(MatroidError::BadDecomposition(format!(
                        "node {v} outside ground set [{n}]"
                    )));
                }
                if block_of[v].is_some() {
                    return Err(MatroidError::BadDecomposition(format!(
                        "node {v} appears in two blocks"
                    )));
                }
                block_of[v] = Some(bi);
            }
        }

        // Groups: consecutive treks with the canyons between them.
        let trek_ids: Vec<usize> = blocks_in
            .iter()
            .enumerate()
            .filter(|(_, b)| b.kind == BlockKind::Trek)
            .map(|(i, _)| i)
            .collect();
        let groups: Vec<Vec<usize>> = trek_ids
            .windows(2)
            .map(|w| (w[0]..=w[1]).collect())
            .collect();

        // Moment-curve coordinates per group, chained at shared treks.
        let canyon_counts: Vec<usize> = groups.iter().map(|g| g.len() - 2).collect();
        let total_rows: usize = 1 + canyon_counts.iter().sum::<usize>();
        let mut cols: Vec<Vec<Rat>> = vec![vec![Rat::zero(); total_rows]; blocks_in.len()];
        for col in cols.iter_mut() {
            col[0] = rat_int(1);
        }
        let mut row_offset = 1usize;
        for (gi, group) in groups.iter().enumerate() {
            let m = canyon_counts[gi];
            for (pos, &bi) in group.iter().enumerate() {
                for p in 1..=m {
                    let v = (pos as i64).pow(p as u32);
                    cols[bi][row_offset + p - 1] = rat_int(v);
                }
            }
            // chain: every block of a later group shares the trailing
            // trek's coordinates in this group's rows
            let last_val = group.len() as i64 - 1;
            for later in groups.iter().skip(gi + 1) {
                for &bi in later.iter().skip(1) {
                    for p in 1..=m {
                        cols[bi][row_offset + p - 1] = rat_int(last_val.pow(p as u32));
                    }
                }
            }
            row_offset += m;
        }

        let mut mat = Mat::zeros(total_rows, n);
        for v in 0..n {
            if let Some(bi) = block_of[v] {
                for r in 0..total_rows {
                    mat[(r, v)] = cols[bi][r].clone();
                }
            }
        }
        Ok(PathMatroid {
            n,
            block_of,
            blocks: blocks_in.iter().map(|b| b.nodes.clone()).collect(),
            groups,
            realization: mat,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn loops(&self) -> NodeSet {
        (0..self.n).filter(|&v| self.block_of[v].is_none()).collect()
    }

    pub fn parallel_classes(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn realization(&self) -> &Mat {
        &self.realization
    }

    /// Rank from the affine realization (exact matrix rank).
    pub fn rank_by_realization(&self, s: NodeSet) -> usize {
        let cols: Vec<usize> = s.iter().collect();
        if cols.is_empty() {
            return 0;
        }
        let rows: Vec<usize> = (0..self.realization.n_rows()).collect();
        self.realization.submatrix(&rows, &cols).rank()
    }

    /// Rank from the flat conditions: greedy independence against the
    /// closure computed by group completion (a set of blocks missing one
    /// member of a group spans it).
    pub fn rank_by_flats(&self, s: NodeSet) -> usize {
        let touched: BTreeSet<usize> = s.iter().filter_map(|v| self.block_of[v]).collect();
        let closure = |t: &BTreeSet<usize>| -> BTreeSet<usize> {
            let mut c = t.clone();
            loop {
                let mut grew = false;
                for group in &self.groups {
                    let have = group.iter().filter(|b| c.contains(b)).count();
                    if have == group.len() - 1 {
                        for b in group {
                            if c.insert(*b) {
                                grew = true;
                            }
                        }
                    }
                }
                if !grew {
                    return c;
                }
            }
        };
        let mut indep: BTreeSet<usize> = BTreeSet::new();
        let mut rank = 0usize;
        for b in touched {
            if !closure(&indep).contains(&b) {
                indep.insert(b);
                rank += 1;
            }
        }
        rank
    }

    /// All bases (maximal independent node sets).
    pub fn bases(&self) -> Vec<NodeSet> {
        let full_rank = self.rank(NodeSet::full(self.n));
        all_subsets(self.n)
            .filter(|s| s.len() == full_rank && self.rank(*s) == full_rank)
            .collect()
    }

    /// JSON dump of the structure and realization.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Wire {
            n: usize,
            loops: Vec<usize>,
            blocks: Vec<BlockWire>,
            realization: Vec<Vec<String>>,
        }
        #[derive(Serialize)]
        struct BlockWire {
            kind: &'static str,
            nodes: Vec<usize>,
        }
        let kinds: Vec<&'static str> = {
            // blocks alternate trek/canyon groups; recover kinds from groups
            let mut kinds = vec!["canyon"; self.blocks.len()];
            for group in &self.groups {
                kinds[*group.first().unwrap()] = "trek";
                kinds[*group.last().unwrap()] = "trek";
            }
            if self.groups.is_empty() {
                kinds = vec!["trek"];
            }
            kinds
        };
        let wire = Wire {
            n: self.n,
            loops: self.loops().iter().map(|v| v + 1).collect(),
            blocks: self
                .blocks
                .iter()
                .zip(kinds)
                .map(|(nodes, kind)| BlockWire {
                    kind,
                    nodes: nodes.iter().map(|v| v + 1).collect(),
                })
                .collect(),
            realization: (0..self.realization.n_rows())
                .map(|r| {
                    self.realization
                        .row(r)
                        .iter()
                        .map(rat_to_string)
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string_pretty(&wire).expect("serializable")
    }
}

impl RankOracle for PathMatroid {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn rank(&self, s: NodeSet) -> usize {
        self.rank_by_realization(s)
    }
}

/// An explicit rank table over `2^[n]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TableRank {
    pub n: usize,
    pub table: Vec<usize>,
}

impl RankOracle for TableRank {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn rank(&self, s: NodeSet) -> usize {
        self.table[s.bits() as usize]
    }
}

impl TableRank {
    /// Checks the rank axioms: zero at the empty set, unit increase,
    /// monotone, submodular.
    pub fn is_matroid_rank(&self) -> bool {
        let n = self.n;
        if self.table[0] != 0 {
            return false;
        }
        for s in all_subsets(n) {
            for a in 0..n {
                if s.contains(a) {
                    continue;
                }
                let sa = s.with(a);
                let d = self.table[sa.bits() as usize] as i64 - self.table[s.bits() as usize] as i64;
                if d < 0 || d > 1 {
                    return false;
                }
                for b in a + 1..n {
                    if s.contains(b) {
                        continue;
                    }
                    let sb = s.with(b);
                    let sab = sa.with(b);
                    if self.table[sa.bits() as usize] + self.table[sb.bits() as usize]
                        < self.table[sab.bits() as usize] + self.table[s.bits() as usize]
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Connected: no proper separator, i.e. `r(S) + r([n]\S) > r([n])` for
    /// all proper nonempty `S`. Loops always separate.
    pub fn is_connected(&self) -> bool {
        let full = NodeSet::full(self.n);
        let total = self.table[full.bits() as usize];
        all_subsets(self.n)
            .filter(|s| !s.is_empty() && *s != full)
            .all(|s| {
                self.table[s.bits() as usize]
                    + self.table[full.difference(s).bits() as usize]
                    > total
            })
    }
}

/// Enumerates all matroid rank tables on `[n]` by depth-first assignment
/// in subset order with submodularity pruning.
pub fn all_matroid_rank_tables(n: usize) -> Vec<TableRank> {
    let size = 1usize << n;
    // masks ordered by popcount then value, so all subsets precede supersets
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by_key(|&m| (m.count_ones(), m));
    let mut table = vec![0usize; size];
    let mut out = Vec::new();

    fn consistent(table: &[usize], n: usize, mask: usize) -> bool {
        let s = NodeSet::from_bits(mask as u16);
        // unit increase + monotone against all co-atoms, submodularity for
        // all elementary pairs inside the assigned down-set
        for a in s.iter() {
            let sub = mask & !(1 << a);
            let d = table[mask] as i64 - table[sub] as i64;
            if !(0..=1).contains(&d) {
                return false;
            }
        }
        let items: Vec<usize> = s.iter().collect();
        for (ai, &a) in items.iter().enumerate() {
            for &b in &items[ai + 1..] {
                let sa = mask & !(1 << b);
                let sb = mask & !(1 << a);
                let k = mask & !(1 << a) & !(1 << b);
                if table[sa] + table[sb] < table[mask] + table[k] {
                    return false;
                }
            }
        }
        let _ = n;
        true
    }

    fn dfs(
        order: &[usize],
        pos: usize,
        n: usize,
        table: &mut Vec<usize>,
        out: &mut Vec<TableRank>,
    ) {
        if pos == order.len() {
            out.push(TableRank {
                n,
                table: table.clone(),
            });
            return;
        }
        let mask = order[pos];
        if mask == 0 {
            table[0] = 0;
            dfs(order, pos + 1, n, table, out);
            return;
        }
        for v in 0..=(mask.count_ones() as usize) {
            table[mask] = v;
            if consistent(table, n, mask) {
                dfs(order, pos + 1, n, table, out);
            }
        }
    }

    dfs(&order, 0, n, &mut table, &mut out);
    out
}

/// The semigraphoid of a matroid rank oracle: `i` and `j` are dependent
/// given `K` exactly when `rank(K) + 1 = rank(Ki) = rank(Kj) = rank(Kij)`.
pub fn matroid_semigraphoid<R: RankOracle>(m: &R) -> CiStructure {
    let n = m.ground_size();
    CiStructure::from_predicate(n, |i, j, k| {
        let rk = m.rank(k);
        let dependent = m.rank(k.with(i)) == rk + 1
            && m.rank(k.with(j)) == rk + 1
            && m.rank(k.with(i).with(j)) == rk + 1;
        !dependent
    })
}

/// The rank function of a matroid as a rational set function; its greedy
/// vertices are the indicator vectors of bases.
pub fn rank_function<R: RankOracle>(m: &R) -> SetFunction {
    SetFunction::rational(m.ground_size(), |s| rat_int(m.rank(s) as i64))
        .expect("rank of empty set is zero")
}

/// Rank function of the rank-one matroid whose non-loops are `support`.
pub fn simplex_rank_function(n: usize, support: NodeSet) -> SetFunction {
    SetFunction::rational(n, |s| {
        if s.intersection(support).is_empty() {
            rat_int(0)
        } else {
            rat_int(1)
        }
    })
    .expect("zero on empty set")
}

/// Builds the associahedron set function of a graph as a Minkowski sum of
/// path-matroid rank functions: one simple Bayes-ball path per elementary
/// dependence, deduplicated by rank table.
pub fn msmp_associahedron(g: &MixedGraph) -> Result<SetFunction, MatroidError> {
    let n = g.n();
    if n > MAX_MSMP {
        return Err(MatroidError::SizeBound(n, MAX_MSMP));
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut total = SetFunction::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            let rest = NodeSet::full(n).without(i).without(j);
            for cond in rest.subsets() {
                if m_separated(g, i, j, cond) {
                    continue;
                }
                let path = find_bayes_ball_path(g, i, j, cond)
                    .expect("dependence implies a connecting walk");
                let (_, decomp) = simplify_path(g, &path)?;
                let matroid = PathMatroid::from_decomposition(&decomp, n)?;
                let table: Vec<usize> =
                    all_subsets(n).map(|s| matroid.rank(s)).collect();
                if seen.insert(table.clone()) {
                    total = total.sum(&rank_function(&TableRank { n, table }))?;
                }
            }
        }
    }
    Ok(total)
}
