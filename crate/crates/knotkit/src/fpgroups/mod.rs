//! Finitely presented groups and their standard computations.

pub mod abelian;
mod cosets;
mod presentation;
mod schreier;
mod tietze;
pub mod words;

pub use abelian::{cokernel_invariants, smith_normal_form, AbelianInvariants, IntMat};
pub use cosets::{coset_enumeration, CosetTable, Enumeration};
pub use presentation::{parse_presentation, wirtinger, GroupPresentation, PresentationError};
pub use schreier::{reidemeister_schreier, SchreierData, SchreierError};
pub use tietze::{simplify, DEFAULT_EFFORT};
pub use words::{parse_word, Word};
