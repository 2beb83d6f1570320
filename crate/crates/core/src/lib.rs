//! Exact tope decompositions along symmetric cycles of oriented matroids.
//!
//! The pipeline, one module per stage:
//!
//! 1. [`instances`] builds tope sets (hypercubes, generic central
//!    arrangements, JSON files) and checks the necessary conditions for a
//!    simple oriented matroid.
//! 2. [`cycles`] finds symmetric cycles `R` in the tope graph.
//! 3. [`decomp`] computes the minimal subset `Q(T, R)` of the cycle whose
//!    sum is the tope `T`.
//! 4. [`complexes`] turns `Q(T, R)` into the complex with facets
//!    `[n] - S(T, Q)` and counts its faces.
//! 5. [`spectra`] maps long f-vectors to long h-vectors and checks the
//!    (anti)symmetry, span and orthogonality relations between them.
//! 6. [`verify`] runs all of the above over pairs of topes from two
//!    instances and aggregates the results.
//!
//! Arithmetic is exact everywhere; see [`arith`] and [`fm`].

pub mod arith;
pub mod cli;
pub mod complexes;
pub mod cycles;
pub mod decomp;
pub mod error;
pub mod fm;
pub mod instances;
pub mod signvec;
pub mod spectra;
pub mod validation;
pub mod verify;

pub use error::{Error, Result};
pub use signvec::{GroundSubset, SignVector};
