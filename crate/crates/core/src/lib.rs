//! Exact computations around twisted conjugation of simply connected semisimple groups:
//! folding of root data by diagram automorphisms, explicit highest-weight modules,
//! weight-space multi-filtrations, invariant-tensor pairing matrices and their determinants,
//! and the twisted Cayley–Hamilton identity on the torus.
//!
//! All arithmetic is over arbitrary-precision rationals.

pub mod chevalley;
pub mod cli;
pub mod error;
pub mod filtration;
pub mod invariants;
pub mod linalg;
pub mod repn;
pub mod rootdata;
pub mod twist;

pub use error::{Error, Result};
pub use rootdata::{GroupAlgebraElement, RootDatum, Weight};
pub use twist::PinnedAutomorphism;
