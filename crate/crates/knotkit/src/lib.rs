//! Computational knot theory toolkit.
//!
//! The crate provides oriented link diagrams with Reidemeister-move search,
//! Wirtinger presentations and finitely presented group machinery (Tietze
//! simplification, coset enumeration, subgroup presentations, integral
//! homology), finite-quotient fingerprints, Schubert and Montesinos normal
//! form arithmetic, branched-cover constructions, Seifert invariants with
//! the torus-gluing normalization, and a recognizer that decides whether a
//! knot diagram represents a fixed two-bridge or 3-tangle Montesinos knot.

pub mod covers;
pub mod diagram;
pub mod fpgroups;
pub mod montesinos;
pub mod quotients;
pub mod recognize;
pub mod seifert;
pub mod tangle;
pub mod twobridge;

pub use diagram::{LinkDiagram, ReidemeisterMove};
pub use fpgroups::{AbelianInvariants, GroupPresentation, Word};
pub mod cli;
