//! Exact symbolic kernel for braided Weyl algebras.

pub mod bundled;
pub mod calculus;
pub mod commpoly;
pub mod error;
pub mod expr;
pub mod hecke;
pub mod linalg;
pub mod pbw;
pub mod poisson;
pub mod radial;
mod render;
pub mod ring;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use ring::{Field, Ring};
pub use scalar::{Gauss, Scalar, ScalarError, Var};

pub type Element = pbw::Element<Scalar>;
pub type RelationTable = pbw::RelationTable<Scalar>;
pub type Rewriter = pbw::Rewriter<Scalar>;
