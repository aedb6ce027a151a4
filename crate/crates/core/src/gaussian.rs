//! Faithful Gaussian realizations of DAGs with exact rational arithmetic.
//!
//! A weighted DAG gives an upper-triangular `Λ` (unit diagonal, `-ℓ_{ij}`
//! at edges), the concentration matrix `K = ΛΛᵀ` and the covariance
//! `Σ = K⁻¹`. CI statements are rank conditions on submatrices of `Σ`,
//! decided exactly, and the log-determinant set function of `K` realizes
//! the (dual of the) DAG associahedron.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::ci::CiStructure;
use crate::graph::{d_separated, Dag};
use crate::linalg::{Mat, Rat};
use crate::nodeset::{all_subsets, NodeSet};
use crate::setfn::{SetFnError, SetFunction};

/// Retry bound for the faithfulness search.
pub const MAX_FAITHFUL_ATTEMPTS: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaussianError {
    #[error("edge ({0}, {1}) has zero weight")]
    ZeroWeight(usize, usize),
    #[error("missing weight for edge ({0}, {1})")]
    MissingWeight(usize, usize),
    #[error("matrix is not positive definite: principal minor of {0:?} is not positive")]
    NotPositiveDefinite(NodeSet),
    #[error("no faithful weight assignment found in {attempts} attempts; offending triples: {offending:?}")]
    Unfaithful {
        attempts: usize,
        offending: Vec<(usize, usize, NodeSet)>,
    },
    #[error(transparent)]
    SetFn(#[from] SetFnError),
}

/// The structural matrix of a weighted DAG: unit diagonal and `-ℓ_{ab}` at
/// each edge `a -> b`.
pub fn lambda_from_dag(
    g: &Dag,
    weights: &BTreeMap<(usize, usize), Rat>,
) -> Result<Mat, GaussianError> {
    let n = g.n();
    let mut lambda = Mat::identity(n);
    for (a, b) in g.arcs() {
        let w = weights
            .get(&(a, b))
            .ok_or(GaussianError::MissingWeight(a, b))?;
        if w.is_zero() {
            return Err(GaussianError::ZeroWeight(a, b));
        }
        lambda[(a, b)] = -w.clone();
    }
    Ok(lambda)
}

/// Unit weights for every edge of the DAG.
pub fn unit_weights(g: &Dag) -> BTreeMap<(usize, usize), Rat> {
    g.arcs().map(|e| (e, Rat::one())).collect()
}

/// The concentration matrix `K = ΛΛᵀ`.
pub fn gram(lambda: &Mat) -> Mat {
    lambda.mul(&lambda.transpose())
}

/// Exact CI test on a covariance matrix: `i ⫫ j | K` iff the submatrix
/// `Σ_{Ki,Kj}` drops rank to `|K|`. Correlation rescaling leaves the rank
/// unchanged, so `Σ` is used directly.
pub fn gaussian_ci(sigma: &Mat, i: usize, j: usize, k: NodeSet) -> bool {
    debug_assert!(i != j && !k.contains(i) && !k.contains(j));
    let rows: Vec<usize> = k.with(i).iter().collect();
    let cols: Vec<usize> = k.with(j).iter().collect();
    sigma.submatrix(&rows, &cols).rank() <= k.len()
}

/// The log-determinant set function `A -> log det(K_{A,A})`, stored as the
/// exact positive rationals `d(A) = det(K_{A,A})`. For a concentration
/// matrix `K` this realizes the negative of the covariance-side
/// generalized permutohedron; its semigraphoid is the dual one, and
/// `dual_flip` recovers the primal fan.
pub fn multiinformation(kmat: &Mat) -> Result<SetFunction, GaussianError> {
    let n = kmat.n_rows();
    assert_eq!(n, kmat.n_cols());
    let mut dets: Vec<Rat> = Vec::with_capacity(1 << n);
    for s in all_subsets(n) {
        let idx: Vec<usize> = s.iter().collect();
        let d = kmat.submatrix(&idx, &idx).det();
        if d <= Rat::zero() {
            return Err(GaussianError::NotPositiveDefinite(s));
        }
        dets.push(d);
    }
    Ok(SetFunction::log_from_dets(n, |s| {
        dets[s.bits() as usize].clone()
    })?)
}

/// A verified faithful realization of a DAG.
#[derive(Clone, Debug)]
pub struct FaithfulGaussian {
    pub lambda: Mat,
    pub kmat: Mat,
    pub sigma: Mat,
    pub weights: BTreeMap<(usize, usize), Rat>,
    /// The verified CI structure; equals the d-separation structure by
    /// construction.
    pub ci: CiStructure,
    pub attempts: usize,
}

fn faithfulness_gaps(g: &Dag, sigma: &Mat) -> Vec<(usize, usize, NodeSet)> {
    let n = g.n();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let rest = NodeSet::full(n).without(i).without(j);
            for k in rest.subsets() {
                if gaussian_ci(sigma, i, j, k) != d_separated(g, i, j, k) {
                    bad.push((i, j, k));
                }
            }
        }
    }
    bad
}

/// Samples integer edge weights from a widening range until the exact
/// Gaussian CI structure matches d-separation on every elementary triple.
/// Deterministic for a fixed seed.
pub fn faithful_gaussian(g: &Dag, seed: u64) -> Result<FaithfulGaussian, GaussianError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut width: i64 = 1;
    let mut last_offending = Vec::new();
    for attempt in 1..=MAX_FAITHFUL_ATTEMPTS {
        let weights: BTreeMap<(usize, usize), Rat> = g
            .arcs()
            .map(|e| {
                let mut w: i64 = 0;
                while w == 0 {
                    w = rng.gen_range(-width..=width);
                }
                (e, Rat::from_integer(w.into()))
            })
            .collect();
        let lambda = lambda_from_dag(g, &weights)?;
        let kmat = gram(&lambda);
        let sigma = kmat.inverse().expect("K = ΛΛᵀ with unit-diagonal Λ is invertible");
        let gaps = faithfulness_gaps(g, &sigma);
        if gaps.is_empty() {
            let ci = CiStructure::from_predicate(g.n(), |i, j, k| gaussian_ci(&sigma, i, j, k));
            return Ok(FaithfulGaussian {
                lambda,
                kmat,
                sigma,
                weights,
                ci,
                attempts: attempt,
            });
        }
        last_offending = gaps;
        if attempt % 4 == 0 {
            width *= 2;
        }
    }
    Err(GaussianError::Unfaithful {
        attempts: MAX_FAITHFUL_ATTEMPTS,
        offending: last_offending,
    })
}

// --- JSON wire format: rows of fraction strings -------------------------

pub fn matrix_to_json(m: &Mat) -> String {
    let rows: Vec<Vec<String>> = (0..m.n_rows())
        .map(|r| m.row(r).iter().map(crate::linalg::rat_to_string).collect())
        .collect();
    serde_json::to_string_pretty(&rows).expect("serializable")
}

pub fn matrix_from_json(text: &str) -> Result<Mat, String> {
    let rows: Vec<Vec<String>> = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let parsed: Result<Vec<Vec<Rat>>, String> = rows
        .iter()
        .map(|r| r.iter().map(|s| crate::linalg::rat_from_string(s)).collect())
        .collect();
    let parsed = parsed?;
    if parsed.is_empty() || parsed.iter().any(|r| r.len() != parsed[0].len()) {
        return Err("matrix rows must be nonempty and equal length".into());
    }
    Ok(Mat::from_rows(parsed))
}
