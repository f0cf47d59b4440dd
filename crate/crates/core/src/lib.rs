//! Exact computations in bracket algebras attached to finite Coxeter groups.
//!
//! The crate is organised bottom-up: exact scalars and polynomials, root
//! systems and their Weyl groups, operators on group rings, and the
//! algebraic checks built on top of them.

pub mod error;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod nabla;
pub mod nc;
pub mod ops;
pub mod pieri;
pub mod poly;
pub mod quotient;
pub mod relations;
pub mod roots;
pub mod scalar;
pub mod verify;
pub mod schubert;

pub use error::{Error, Result};
pub use poly::{Monomial, MultiPoly};
pub use roots::{CoxeterType, Family, RootSystem};
pub use scalar::Scalar;
