//! Exact tools for integer symmetric matrices whose eigenvalues all lie in
//! `[-2, 2]` (cyclotomic matrices), viewed as charged signed graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: charged signed graphs, general integer symmetric matrices,
//!   switching equivalence, canonical forms and induced-subgraph search.
//! * [`intpoly`]: dense integer polynomials, characteristic polynomials,
//!   cyclotomic factorisation and Chebyshev polynomials.
//! * [`spectral`]: exact eigenvalue-location tests built on symmetric
//!   elimination, interlacing checks and Gram factorisations.
//! * [`catalog`]: constructors for the named maximal graphs and families.
//! * [`search`]: extension, growth, orderly enumeration and the search for
//!   maximal triangle-free subgraphs of the E8 line system.
//!
//! All arithmetic is exact. Work that fans out over independent branches uses
//! rayon when the `parallel` feature is enabled (the default) and runs
//! sequentially otherwise; results are merged in canonical order so output is
//! identical either way.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod error;
pub mod graph;
pub mod intpoly;
pub mod par;
pub mod search;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{CanonicalForm, ChargedSignedGraph, EquivalenceWitness, IntSymMatrix};
pub use intpoly::{IntPoly, ReciprocalPoly};
pub use spectral::{SpectralCertificate, Verdict};
