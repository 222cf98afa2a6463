//! Exact arithmetic in the character ring of the symmetric group and in its
//! reduction modulo a prime, with verifiers for the description of the
//! radical filtration of `R_n / p R_n` by the statistic `π_p`.
//!
//! * [`partitions`]: compositions, partitions, `π_p`, the `jm` invariant.
//! * [`charring`]: products of permutation characters `φ_λ` via
//!   contingency tables.
//! * [`oracles`]: class-function and permutation-group ground truth.
//! * [`fp_algebra`]: linear algebra over `F_p`, radical, Loewy series.
//! * [`theorems`]: verification reports and sweeps.
//! * [`cache`]: on-disk JSON form of the structure constants.

pub mod cache;
pub mod charring;
pub mod error;
pub mod fp_algebra;
pub mod oracles;
pub mod partitions;
pub mod theorems;

pub use charring::{
    enumerate_tables, multiply, phi_product, structure_constant_table, table_to_composition,
    CharElement, ContingencyTable, StructureConstants,
};
pub use error::{Error, Result};
pub use fp_algebra::{FpAlgebra, FpMatrix, FpSubspace, FpVector, Prime};
pub use partitions::{Composition, JmPair, Partition, PartitionBasis};
pub use theorems::{sweep, verify, OracleConfig, VerificationReport};
