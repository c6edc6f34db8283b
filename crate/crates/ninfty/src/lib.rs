//! Combinatorics of transfer systems over small finite groups, together with
//! the representation-theoretic maps from G-universes to transfer systems and
//! an executable verification harness for their structure theorems.

pub mod changeof;
pub mod character;
pub mod error;
pub mod group;
pub mod lattice;
pub mod theorems;
pub mod transfer;
pub mod universe;

pub use error::{Error, Result};
pub use group::{build_group, GroupTable};
pub use lattice::{GroupData, SubgroupLattice};
pub use transfer::{Relation, TransferSystem};
pub use universe::{Universe, UniverseCtx};

