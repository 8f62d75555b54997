//! Wedderburn decomposition of the rational group algebra `QG` for split
//! metacyclic p-groups `G = C_{p^n} x| C_{p^m}` with `p` odd.
//!
//! Two independent routes are provided: closed-form counting formulas
//! ([`formulas`]) and a character-theoretic computation ([`rational::oracle`])
//! built from the irreducible complex characters ([`complex_reps`]) and their
//! Galois classes. [`report::Verification`] compares them.

pub mod arith;
pub mod checks;
pub mod cli;
pub mod complex_reps;
pub mod cyclotomic;
pub mod error;
pub mod formulas;
pub mod group;
pub mod rational;
pub mod report;

pub use complex_reps::{IrreducibleCharacter, OrbitDescriptor};
pub use cyclotomic::CyclotomicElement;
pub use error::{Error, ErrorKind, Result};
pub use formulas::wedderburn_closed_form;
pub use group::{GroupElement, GroupParams};
pub use rational::{oracle, RationalCounts, SimpleComponent, WedderburnDecomposition};
pub use report::{parse_decomposition, DecompositionReport, Provenance, Verification};
