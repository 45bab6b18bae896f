//! Decomposition of finitely presented modules into annihilator components
//! driven by pairwise comaximal ideals.
//!
//! Rings are the integers, `Z/m`, `F_p[x]`, finite products and upper
//! triangular matrix rings over these. Modules are given by generators and
//! relations and stored as lattices over the underlying principal ideal
//! domain, so every computation is exact.

pub mod arith;
pub mod decomp;
pub mod error;
pub mod linalg;
pub mod modules;
pub mod nilary;
pub mod oracle;
pub mod ring;
pub mod rings;
pub mod sample;
pub mod scalar;
pub mod torsion;

pub use decomp::{Decomposition, NontrivialityCertificate, Part, QuotientDecomposition};
pub use error::{Error, Result};
pub use modules::{Component, FPModule, Invariants, ModuleElement, ModuleHom, Submodule};
pub use ring::{Ideal, IdealOp, PartitionOfUnity, RingDescriptor, RingElement};
pub use scalar::{Pid, Scalar};
