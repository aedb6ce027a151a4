//! Polyhedral geometry of conditional independence structures.
//!
//! The crate connects three views of the same combinatorial object:
//!
//! * sets of elementary CI relations and their axiom systems
//!   (semigraphoid, graphoid, gaussoid) in [`ci`];
//! * separation in graphs — d-separation for DAGs, m-separation for
//!   loopless mixed graphs, with explicit Bayes-ball witness walks and
//!   their trek/canyon structure — in [`graph`];
//! * submodular set functions and their generalized permutohedra in
//!   [`setfn`], realized either from exact Gaussian log-determinants
//!   ([`gaussian`]) or as Minkowski sums of path-matroid polytopes
//!   ([`matroid`]).
//!
//! On top of that geometry, [`causal`] implements ordering-based sparsest
//! permutation search: minimal I-maps, covered-edge walks, and the
//! exhaustive baseline.

pub mod causal;
pub mod ci;
pub mod gaussian;
pub mod matroid;
pub mod setfn;
pub mod graph;
pub mod linalg;
pub mod nodeset;

pub use ci::{CiRelation, CiStructure};
pub use graph::{Dag, EssentialGraph, MixedGraph};
pub use linalg::{Mat, Rat};
pub use nodeset::NodeSet;
pub use setfn::SetFunction;
