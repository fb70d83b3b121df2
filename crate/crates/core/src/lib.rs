//! Exact computations with finite commutative F_p-algebras, their modules,
//! trivial extensions `A ⋉ E` and Gorenstein homological invariants.

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod fplinalg;
pub mod gorenstein;
pub mod modules;
pub mod par;
pub mod poly;
pub mod speclang;
pub mod suite;

pub use algebra::{FpAlgebra, Ideal, Ring};
pub use error::{Error, Result};
pub use fplinalg::{FpMatrix, FpScalar, Subspace};
pub use modules::{FinModule, FinModuleMap};
pub use par::{Exec, Limits};
