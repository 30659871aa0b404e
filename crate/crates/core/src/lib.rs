//! Quantum-stabilizer ramp secret sharing for classical secrets, analyzed
//! through symplectic linear algebra over finite fields.

pub mod access;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod gv;
pub mod index_set;
pub mod io;
pub mod linalg;
pub mod ms;
pub mod par;
pub mod qsim;
pub mod rs;
pub mod scheme;
pub mod symplectic;

pub use error::{Error, Result};
pub use field::{Felt, FieldSpec};
pub use index_set::IndexSet;
pub use linalg::{FVector, Layout, Mat, Subspace};
pub use par::{Config, Exec};
pub use scheme::{AccessClass, InfoAmount, Scheme};
pub use symplectic::{SympSpace, SympVec};
