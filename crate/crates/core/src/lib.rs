//! Rational (Malcev) completions of Artin groups and of braid groups of complex
//! reflection groups, computed through their finite-dimensional shadows: lower
//! central quotients, group homology of dihedral Artin groups, truncated
//! partially commutative series and hyperplane orbit counts.

pub mod coxeter;
pub mod crg;
pub mod dlhomology;
pub mod fpnilq;
pub mod pclie;
pub mod word;

pub use coxeter::{CoxeterError, CoxeterGraph, Label, OddPartition};
pub use crg::{CrgError, ReflectionGroupSpec};
pub use fpnilq::{AbelianGroup, IntegerMatrix};
pub use pclie::{CommutationGraph, PcError, TruncatedSeries};
pub use word::{GroupPresentation, Letter, PresentationError, Word};
