//! Clifford analysis on conformally flat spin manifolds: multivector
//! arithmetic, Möbius transformations, finite-difference Dirac operators,
//! automorphic kernel series and boundary quadrature.

pub mod clifford;
pub mod diffops;
pub mod error;
pub mod kernels;
pub mod moebius;
pub mod quadrature;
pub mod sum;

pub use clifford::Multivector;
pub use diffops::FieldFn;
pub use error::{Error, Result};
pub use kernels::KernelSpec;
