//! Groups acting on finite directed graphs with cocycles: validation,
//! cohomology, example constructions, the exact *-algebra of the associated
//! correspondence, and Toeplitz normal forms checked against a Fock model.

pub mod algebra;
pub mod cocycle;
pub mod cohomology;
pub mod constructions;
pub mod graph;
pub mod group;
pub mod integer;
pub mod par;
pub mod schema;
pub mod toeplitz;

pub use graph::{Graph, Path};
pub use group::{Elem, Group};
pub use integer::Integer;
