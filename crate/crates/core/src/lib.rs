//! Exact counting of primitive periodic orbits on 2-regular circulant
//! digraphs `C_n(a,b)`.
//!
//! The closed formulas live in [`counting`], built from the integer helpers
//! in [`numtheory`], the word combinatorics in [`words`] and the solution
//! lattice in [`lattice`]. [`oracle`] enumerates orbits by brute force on
//! small graphs so every formula can be checked against ground truth.
//!
//! ```
//! use circulant_orbits::{count_orbits_l, CirculantGraph};
//!
//! let graph = CirculantGraph::new(21, 4, 10).unwrap();
//! assert_eq!(count_orbits_l(&graph, 15).unwrap().total.to_string(), "3822");
//! ```

pub mod cli;
pub mod counting;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod numtheory;
pub mod oracle;
pub mod words;

pub use counting::{
    count_orbits_l, count_orbits_l_direct, count_orbits_lk, count_orbits_lk_unreduced,
    predicted_repetition, sum_reduction_check, LengthCount, Method, OrbitCountReport, Term,
};
pub use error::{Error, Result};
pub use graph::{Bond, CirculantGraph, Circuit};
pub use lattice::{basis, bcounts_for_length, lattice_points, LatticeBasis, OrbitClass};
pub use numtheory::BigCount;
pub use oracle::{enumerate_orbits, phi, verify_range, Orbit, VerificationReport};
pub use words::{count_lyndon, count_nonprimitive, list_lyndon, Letter, Word, WordDecomposition};

/// Default cap on candidate presentations for brute-force enumeration and
/// on `l * C(l, k)` for Lyndon listing.
pub const DEFAULT_BUDGET: u128 = 1 << 28;

/// Environment variable that overrides [`DEFAULT_BUDGET`] for the CLI.
pub const BUDGET_ENV: &str = "CIRCULANT_ORBITS_BUDGET";
