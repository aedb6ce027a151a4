//! Ordering-based causal structure search.
//!
//! A CI oracle maps each permutation to its minimal I-map: the DAG along
//! the ordering whose missing edges are exactly the conditional
//! independences against the preceding nodes. Search walks either over
//! adjacent transpositions of the ordering or over covered-edge reversals
//! of the current DAG, never accepting a denser I-map, and the exhaustive
//! baseline scans all orderings.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::ci::CiStructure;
use crate::gaussian::gaussian_ci;
use crate::graph::{
    d_separated, essential_graph, m_separated, Dag, EssentialGraph, MixedGraph,
};
use crate::linalg::Mat;
use crate::nodeset::NodeSet;

/// Bound for the exhaustive sweep over all `n!` orderings.
pub const MAX_EXHAUSTIVE: usize = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CausalError {
    #[error("ground set of size {0} exceeds the exhaustive bound {1}")]
    SizeBound(usize, usize),
    #[error("sample oracle needs at least {0} rows, got {1}")]
    TooFewSamples(usize, usize),
}

/// Answers elementary CI queries; `true` means independent.
pub trait CiOracle {
    fn n(&self) -> usize;
    fn independent(&self, i: usize, j: usize, k: NodeSet) -> bool;
}

/// The oracle backends. All but the sample-based one are deterministic
/// and exact.
pub enum Oracle {
    DagDsep(Dag),
    LmgMsep(MixedGraph),
    GaussianExact { sigma: Mat },
    Explicit(CiStructure),
    GaussianSample(SampleOracle),
}

impl CiOracle for Oracle {
    fn n(&self) -> usize {
        match self {
            Oracle::DagDsep(g) => g.n(),
            Oracle::LmgMsep(g) => g.n(),
            Oracle::GaussianExact { sigma } => sigma.n_rows(),
            Oracle::Explicit(ci) => ci.n(),
            Oracle::GaussianSample(s) => s.n(),
        }
    }

    fn independent(&self, i: usize, j: usize, k: NodeSet) -> bool {
        match self {
            Oracle::DagDsep(g) => d_separated(g, i, j, k),
            Oracle::LmgMsep(g) => m_separated(g, i, j, k),
            Oracle::GaussianExact { sigma } => gaussian_ci(sigma, i, j, k),
            Oracle::Explicit(ci) => ci.contains(i, j, k),
            Oracle::GaussianSample(s) => s.independent(i, j, k),
        }
    }
}

/// The minimal I-map `G_π`: for positions `p < q`, the arc
/// `π(p) -> π(q)` is present unless `π(p) ⫫ π(q)` given all other nodes
/// up to and including `π(q)` in the ordering.
pub fn minimal_imap(oracle: &impl CiOracle, perm: &[usize]) -> Dag {
    let n = oracle.n();
    assert_eq!(perm.len(), n);
    let mut arcs = Vec::new();
    let mut upto = NodeSet::EMPTY;
    for q in 0..n {
        upto.insert(perm[q]);
        for p in 0..q {
            let k = upto.without(perm[p]).without(perm[q]);
            if !oracle.independent(perm[p], perm[q], k) {
                arcs.push((perm[p], perm[q]));
            }
        }
    }
    Dag::from_edge_list(n, &arcs).expect("edges follow the ordering")
}

/// Covered edges: arcs `(a, b)` with `pa(a) = pa(b) \ {a}`; reversing one
/// stays inside the Markov equivalence class.
pub fn covered_edges(g: &Dag) -> BTreeSet<(usize, usize)> {
    g.arcs()
        .filter(|&(a, b)| g.parents(a) == g.parents(b).without(a))
        .collect()
}

/// Whether two orderings select the same vertex of the fan, i.e. have
/// equal minimal I-maps.
pub fn same_vertex(oracle: &impl CiOracle, pi: &[usize], tau: &[usize]) -> bool {
    minimal_imap(oracle, pi) == minimal_imap(oracle, tau)
}

#[derive(Clone, Copy, Debug)]
pub struct SpParams {
    pub max_steps: usize,
    pub plateau_budget: usize,
    pub seed: u64,
}

impl Default for SpParams {
    fn default() -> Self {
        SpParams {
            max_steps: 500,
            plateau_budget: 50,
            seed: 0,
        }
    }
}

/// How the ordering is updated after a covered-edge reversal.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum PermUpdate {
    /// Move the head just in front of the tail, keeping everything else
    /// in place.
    #[default]
    MinimalSwap,
    /// Re-sort the flipped DAG topologically, preferring the previous
    /// ordering.
    Resort,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub moved: String,
    pub edges: usize,
    pub accepted: bool,
}

#[derive(Clone, Debug)]
pub struct SpRun {
    pub perm: Vec<usize>,
    pub dag: Dag,
    pub essential: EssentialGraph,
    pub edge_count: usize,
    pub log: Vec<StepRecord>,
}

/// Greedy walk over adjacent transpositions of the ordering, accepting a
/// proposal when its I-map is at least as sparse. Stops after
/// `plateau_budget` consecutive accepted non-improving moves, or
/// `max_steps` proposals.
pub fn greedy_sp_permutohedron(
    oracle: &impl CiOracle,
    start: &[usize],
    params: SpParams,
) -> SpRun {
    let n = oracle.n();
    let mut rng = StdRng::seed_from_u64(params.seed);
    let mut perm = start.to_vec();
    let mut dag = minimal_imap(oracle, &perm);
    let mut edges = dag.edge_count();
    let mut plateau = 0usize;
    let mut log = Vec::new();
    for step in 1..=params.max_steps {
        if n < 2 || plateau >= params.plateau_budget {
            break;
        }
        let p = rng.gen_range(0..n - 1);
        let mut proposal = perm.clone();
        proposal.swap(p, p + 1);
        let candidate = minimal_imap(oracle, &proposal);
        let m = candidate.edge_count();
        let accepted = m <= edges;
        log.push(StepRecord {
            step,
            moved: format!("swap {}<->{} at {}", perm[p] + 1, perm[p + 1] + 1, p),
            edges: m,
            accepted,
        });
        if accepted {
            if m < edges {
                plateau = 0;
            } else {
                plateau += 1;
            }
            perm = proposal;
            dag = candidate;
            edges = m;
        }
    }
    let essential = essential_graph(&dag);
    SpRun {
        perm,
        dag,
        essential,
        edge_count: edges,
        log,
    }
}

/// Topological order of `g` preferring the positions in `previous`.
fn resort_by(g: &Dag, previous: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (p, &v) in previous.iter().enumerate() {
        pos[v] = p;
    }
    let mut indeg: Vec<usize> = (0..n).map(|v| g.parents(v).len()).collect();
    let mut ready: BTreeSet<(usize, usize)> = (0..n)
        .filter(|&v| indeg[v] == 0)
        .map(|v| (pos[v], v))
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&(_, v)) = ready.iter().next() {
        ready.remove(&(pos[v], v));
        order.push(v);
        for c in g.graph().children(v).iter() {
            indeg[c] -= 1;
            if indeg[c] == 0 {
                ready.insert((pos[c], c));
            }
        }
    }
    order
}

/// Greedy walk by covered-edge reversal: pick a random covered edge of the
/// current I-map, reverse it, re-derive the ordering, and accept when the
/// new I-map is at least as sparse.
pub fn greedy_sp_covered(
    oracle: &impl CiOracle,
    start: &[usize],
    params: SpParams,
    update: PermUpdate,
) -> SpRun {
    let mut rng = StdRng::seed_from_u64(params.seed);
    let mut perm = start.to_vec();
    let mut dag = minimal_imap(oracle, &perm);
    let mut edges = dag.edge_count();
    let mut plateau = 0usize;
    let mut log = Vec::new();
    for step in 1..=params.max_steps {
        if plateau >= params.plateau_budget {
            break;
        }
        let covered: Vec<(usize, usize)> = covered_edges(&dag).into_iter().collect();
        if covered.is_empty() {
            break;
        }
        let (a, b) = covered[rng.gen_range(0..covered.len())];
        let proposal = match update {
            PermUpdate::MinimalSwap => {
                // move b directly in front of a
                let mut p: Vec<usize> = perm.iter().copied().filter(|&v| v != b).collect();
                let ia = p.iter().position(|&v| v == a).unwrap();
                p.insert(ia, b);
                p
            }
            PermUpdate::Resort => {
                let arcs: Vec<(usize, usize)> = dag
                    .arcs()
                    .map(|(x, y)| if (x, y) == (a, b) { (b, a) } else { (x, y) })
                    .collect();
                let flipped = Dag::from_edge_list(dag.n(), &arcs)
                    .expect("covered-edge reversal preserves acyclicity");
                resort_by(&flipped, &perm)
            }
        };
        let candidate = minimal_imap(oracle, &proposal);
        let m = candidate.edge_count();
        let accepted = m <= edges;
        log.push(StepRecord {
            step,
            moved: format!("reverse {}->{}", a + 1, b + 1),
            edges: m,
            accepted,
        });
        if accepted {
            if m < edges {
                plateau = 0;
            } else {
                plateau += 1;
            }
            perm = proposal;
            dag = candidate;
            edges = m;
        }
    }
    let essential = essential_graph(&dag);
    SpRun {
        perm,
        dag,
        essential,
        edge_count: edges,
        log,
    }
}

#[derive(Clone, Debug)]
pub struct ExhaustiveSp {
    pub min_edges: usize,
    /// Essential graphs of all sparsest I-maps, deduplicated.
    pub optima: BTreeSet<EssentialGraph>,
}

/// Evaluates the I-map of every ordering and keeps the sparsest ones.
pub fn exhaustive_sp(oracle: &impl CiOracle) -> Result<ExhaustiveSp, CausalError> {
    use itertools::Itertools;
    let n = oracle.n();
    if n > MAX_EXHAUSTIVE {
        return Err(CausalError::SizeBound(n, MAX_EXHAUSTIVE));
    }
    let mut min_edges = usize::MAX;
    let mut optima = BTreeSet::new();
    for perm in (0..n).permutations(n) {
        let dag = minimal_imap(oracle, &perm);
        let m = dag.edge_count();
        if m < min_edges {
            min_edges = m;
            optima.clear();
        }
        if m == min_edges {
            optima.insert(essential_graph(&dag));
        }
    }
    Ok(ExhaustiveSp { min_edges, optima })
}

/// Runs a greedy algorithm from `restarts` random starting orderings and
/// returns the sparsest result (first found on ties) plus all runs.
pub fn best_of_restarts(
    oracle: &impl CiOracle,
    restarts: usize,
    params: SpParams,
    run: impl Fn(&[usize], SpParams) -> SpRun,
) -> Vec<SpRun> {
    let n = oracle.n();
    let mut seeder = StdRng::seed_from_u64(params.seed);
    let mut runs = Vec::with_capacity(restarts);
    for _ in 0..restarts.max(1) {
        let mut start: Vec<usize> = (0..n).collect();
        for p in (1..n).rev() {
            let q = seeder.gen_range(0..=p);
            start.swap(p, q);
        }
        let sub = SpParams {
            seed: seeder.gen(),
            ..params
        };
        runs.push(run(&start, sub));
    }
    runs
}

pub fn best_run(runs: &[SpRun]) -> &SpRun {
    runs.iter()
        .min_by_key(|r| r.edge_count)
        .expect("at least one run")
}

// --- Sample-based oracle (plumbing) --------------------------------------

/// Fisher-z partial-correlation test on a data matrix. Randomized input,
/// never used by the exact property suites.
pub struct SampleOracle {
    cov: Vec<Vec<f64>>,
    rows: usize,
    alpha: f64,
    n: usize,
}

impl SampleOracle {
    pub fn from_data(data: &[Vec<f64>], alpha: f64) -> Result<Self, CausalError> {
        let rows = data.len();
        let n = data.first().map_or(0, Vec::len);
        if rows < n + 4 {
            return Err(CausalError::TooFewSamples(n + 4, rows));
        }
        let mut mean = vec![0.0; n];
        for row in data {
            for (m, &x) in mean.iter_mut().zip(row) {
                *m += x;
            }
        }
        for m in &mut mean {
            *m /= rows as f64;
        }
        let mut cov = vec![vec![0.0; n]; n];
        for row in data {
            for i in 0..n {
                for j in 0..n {
                    cov[i][j] += (row[i] - mean[i]) * (row[j] - mean[j]);
                }
            }
        }
        for r in &mut cov {
            for x in r.iter_mut() {
                *x /= rows as f64 - 1.0;
            }
        }
        Ok(SampleOracle {
            cov,
            rows,
            alpha,
            n,
        })
    }

    fn n(&self) -> usize {
        self.n
    }

    fn independent(&self, i: usize, j: usize, k: NodeSet) -> bool {
        let idx: Vec<usize> = k.with(i).with(j).iter().collect();
        let m = idx.len();
        let mut a: Vec<Vec<f64>> = (0..m)
            .map(|r| (0..m).map(|c| self.cov[idx[r]][idx[c]]).collect())
            .collect();
        let mut inv: Vec<Vec<f64>> = (0..m)
            .map(|r| (0..m).map(|c| f64::from(u8::from(r == c))).collect())
            .collect();
        // small dense Gauss-Jordan; sample covariances are well-conditioned
        // at these sizes
        for c in 0..m {
            let p = (c..m)
                .max_by(|&x, &y| a[x][c].abs().partial_cmp(&a[y][c].abs()).unwrap())
                .unwrap();
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c];
            for x in 0..m {
                a[c][x] /= piv;
                inv[c][x] /= piv;
            }
            for r in 0..m {
                if r != c {
                    let f = a[r][c];
                    for x in 0..m {
                        a[r][x] -= f * a[c][x];
                        inv[r][x] -= f * inv[c][x];
                    }
                }
            }
        }
        let pi = idx.iter().position(|&v| v == i).unwrap();
        let pj = idx.iter().position(|&v| v == j).unwrap();
        let r = -inv[pi][pj] / (inv[pi][pi] * inv[pj][pj]).sqrt();
        let r = r.clamp(-0.999_999, 0.999_999);
        let z = 0.5 * ((1.0 + r) / (1.0 - r)).ln();
        let dof = self.rows as f64 - k.len() as f64 - 3.0;
        let stat = z.abs() * dof.max(1.0).sqrt();
        stat <= normal_quantile(1.0 - self.alpha / 2.0)
    }
}

/// Two-sided critical value for the Fisher-z statistic.
fn normal_quantile(p: f64) -> f64 {
    use statrs::distribution::{ContinuousCDF, Normal};
    Normal::new(0.0, 1.0).unwrap().inverse_cdf(p)
}

/// Draws rows from the zero-mean Gaussian with the given covariance, by
/// Cholesky factorization in floating point. Plumbing for the sample
/// oracle.
pub fn sample_gaussian_data(sigma: &Mat, rows: usize, seed: u64) -> Vec<Vec<f64>> {
    use num_traits::ToPrimitive;
    let n = sigma.n_rows();
    let s: Vec<Vec<f64>> = (0..n)
        .map(|r| (0..n).map(|c| sigma[(r, c)].to_f64().unwrap()).collect())
        .collect();
    // Cholesky
    let mut l = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = s[i][j];
            for k in 0..j {
                sum -= l[i][k] * l[j][k];
            }
            if i == j {
                l[i][j] = sum.max(1e-12).sqrt();
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let std_normal = statrs::distribution::Normal::new(0.0, 1.0).unwrap();
    (0..rows)
        .map(|_| {
            let z: Vec<f64> = (0..n).map(|_| rng.sample(std_normal)).collect();
            (0..n)
                .map(|i| (0..=i).map(|k| l[i][k] * z[k]).sum())
                .collect()
        })
        .collect()
}
