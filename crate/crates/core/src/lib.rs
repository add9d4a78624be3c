//! Torus-covering charts and the invariants used to bound their unknotting
//! numbers: braid arithmetic with an exact word problem, quandle colorings of
//! closed braids, and the chart model with its turning operation.

pub mod braid;
pub mod chart;
pub mod garside;
pub mod gfp;
pub mod perm;
pub mod quandle;
pub mod unknotting;

pub use braid::{BraidError, BraidWord, Letter};
pub use chart::{ChartClass, ChartDocument, ChartError, GluingMatrix, TorusCoveringChart};
pub use garside::NormalForm;
pub use perm::Permutation;
pub use quandle::{ArcPosition, ColoringError, ColoringSystem, Quandle, QuandleError};
pub use unknotting::{BoundsReport, CountMethod, SurgeryExperiment, UnknottingError};
