//! Exact VC dimension, suboplex ideals and multigraded Betti numbers of
//! Boolean function classes.

pub mod betti;
pub mod builders;
pub mod class;
pub mod complex;
pub mod error;
pub mod field;
pub mod ideal;
pub mod io;
pub mod oracle;
pub mod poset;
pub mod subsets;

pub use error::{Error, Result};
pub use field::FieldSpec;
pub use poset::{Interval, SubsetPoset};
pub use subsets::{delta, monomial, GroundSpec, PartialFunction, SquarefreeMonomial, Subset};
pub use complex::{HomologyProfile, SimplicialComplex};
pub use class::{FunctionClass, ShatterMethod};
pub use ideal::IdealGenerators;
pub use betti::{BettiTable, CmAssurance, LabeledComplex};
