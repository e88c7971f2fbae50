//! Left-invariant sub-Lorentzian contact structures on 3-dimensional Lie
//! groups: frame adaptation, local invariants, and the Lie algebra class of
//! each normal form.

pub mod algebra;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod frame;
pub mod invariants;
pub mod num;
pub mod prolongation;
pub mod recognizer;

pub use algebra::{LieAlgebra3, Subspace, SymMatrix3, Vector3};
pub use error::{Error, Result};
pub use frame::{adapt, AdaptedStructure, Flip, MetricOnH, Orientation, OrientationFlags, StructureFunctions};
pub use invariants::{invariant_set, normalize_h, HClass, HNormalForm, HTensor, InvariantSet};
pub use recognizer::{canonical_model, recognize, same_class, LieAlgebraClass, Recognition};
pub use classifier::{classify, construct_from_invariants, table_report, ClassificationReport, Grid, RowId, SolutionId, Status, TableRow};
pub use prolongation::{prolongation_dim, GradedSymbol};
