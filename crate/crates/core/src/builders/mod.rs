//! Constructors for matroids, polyhedral face posets and Boolean formula classes.

pub mod cells;
pub mod formula;
pub mod matroid;

pub use cells::{cube_complex, face_poset, intersection_closure, CellComplexInput};
pub use formula::{formula_class, formula_poset, FormulaClassSpec};
pub use matroid::{Matroid, MatroidSpec};
