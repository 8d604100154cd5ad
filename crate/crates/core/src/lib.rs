//! Computer algebra for finitely presented connected graded algebras.

pub mod automaton;
pub mod cache;
pub mod coherence;
pub mod error;
pub mod format;
pub mod groebner;
pub mod hilbert;
pub mod intpoly;
pub mod module;
pub mod poly;
pub mod presentation;
pub mod report;
pub mod scalar;
pub mod syzygy;
pub mod word;

pub use error::{Error, Result};
pub use format::parse_presentation;
pub use groebner::{complete_right, complete_two_sided, GroebnerBasis, ModuleBasis, ReductionTrace};
pub use module::{FreeModule, FreeModuleElement, ModuleTerm};
pub use poly::Polynomial;
pub use presentation::{Generator, ModulePresentation, Presentation};
pub use scalar::{Field, Scalar};
pub use word::{MonomialOrder, Word};
