//! Diagram combinatorics of free knots and links: Gauss codes,
//! Reidemeister moves, parities, the parity bracket, Turaev's cobracket and
//! the two-fold covering, with bounded search oracles for equivalence and
//! splitness at desk scale.
//!
//! Diagrams are multi-component cyclic Gauss codes; the framed 4-graph view
//! is derived on demand. All values are immutable and all operations are
//! pure functions.

pub mod bracket;
pub mod canon;
pub mod corpus;
pub mod cover;
pub mod delta;
pub mod diagram;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod moves;
pub mod orbit;
pub mod parity;
pub mod search;
#[doc(hidden)]
pub mod testutil;

pub use bracket::{
    bracket_full, bracket_knot, bracket_rel, normalize_g, smooth, smooth_any, smooth_mixed,
    BracketSpace, BracketValue, GNormal, SmoothingWay,
};
pub use canon::{CanonMode, CanonicalForm};
pub use corpus::{parse_corpus, CorpusEntry};
pub use cover::{
    classify_edges, covering_k2, covering_k2_with, kprime_from_k2, projection_kprime,
    CoveringGraph, EdgeClassification, TreeChoice,
};
pub use delta::{delta_l, f_pq, p_pq, turaev_delta, DeltaMode, DeltaOptions, DeltaValue, Pattern};
pub use diagram::{Crossing, CrossingKind, LinkDiagram};
pub use enumerate::{classify_knot, enumerate_knots, irreducibly_odd_knots, KnotClass};
pub use error::{Error, Result};
pub use graph::{FramedGraph, HalfEdge, Passage};
pub use moves::{
    apply_move, enumerate_moves, inverse, MoveApplication, MoveCaps, MoveDirection, MoveKind,
    MoveSite,
};
pub use orbit::{replay, run_orbit, OrbitCheck, OrbitOptions, OrbitReport, OrbitVerdict};
pub use parity::{
    check_parity_axioms, cycle_basis, gaussian_assignment, gaussian_parity, homology_parity, p_l,
    pl_assignment, AxiomReport, CycleBasis, ParityAssignment, ParityRule,
};
pub use search::{
    bounded_equiv, bounded_equiv_mode, certified_nonsplit, certified_trivial_split,
    minimal_representative, EquivVerdict, SearchBudget, SplitVerdict, TrivialSplitVerdict,
};
