//! Spectral radius of simple digraphs with a prescribed number of arcs.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the pure
//! algorithmic parts:
//!
//! * [`digraph`]: bitset digraphs, strong components, clique number, the
//!   nested prefix family and the Perron-guided rewiring normalizer.
//! * [`spectral`]: Perron roots and vectors by shifted power iteration, the
//!   spectral norm, the clique/rest series equation and the extremal cubic.
//! * [`extremal`]: arc decompositions `e = k(k-1) + t`, the extremal
//!   candidate digraph and the known closed forms.
//! * [`bounds`]: upper bounds on the spectral radius and a per-digraph audit
//!   trace.
//! * [`enumerate`] and [`verify`]: canonical enumeration of the nested prefix
//!   family, a brute-force oracle over all arc subsets and the sweep reports.
//!
//! File formats, timing, parallel execution and the command line live in the
//! companion `digrho` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod digraph;
pub mod enumerate;
mod error;
pub mod extremal;
pub mod spectral;
pub mod verify;

pub use digraph::{CanonicalForm, Digraph};
pub use error::{Error, Result};
pub use extremal::ArcDecomposition;
pub use spectral::{SpectralOptions, SpectralResult};
