//! Exact lattice and root-system computations for del Pezzo threefolds:
//! Picard lattices of del Pezzo surfaces, ADE root subsystems, plane and
//! node counts, pencil analysis, and an audit of the published
//! classification table.

// Matrix code indexes rows and columns together.
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod counting;
pub mod dynkin;
pub mod error;
mod intmat;
pub mod lattice;
pub mod pencils;
pub mod perm;
pub mod rootsys;
pub mod threefold;

pub use catalog::{builtin_table, verify_all, verify_row, CatalogRow, ModelAnalysis, RowReport, Status, Summary};
pub use counting::{NodeCountResult, SRelation};
pub use dynkin::{Component, DynkinType, Family};
pub use error::{Error, Result};
pub use lattice::{IntegerLattice, LatticeVector, Sublattice, SurfaceShape};
pub use pencils::{Contraction, PencilClass, PencilGraph, Rank2Case};
pub use rootsys::{LineSet, RootSet};
pub use threefold::{BaseKind, LatticeData, ThreefoldModel};
