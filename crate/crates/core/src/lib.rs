//! Truncated Fock-space operator algebra: deformed oscillators, supersymmetric
//! quantum mechanics, the osp(2|2) closure check, qubit Clifford/Pauli
//! machinery and induced representations of finite matrix groups.

pub mod error;
pub mod fock;
pub mod linalg;
pub mod mackey;
pub mod osp;
pub mod qubit;
pub mod susy;

pub use error::{Error, Result};
