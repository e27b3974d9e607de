//! Finite digraphs, homomorphism search, polymorphism minions, box complexes,
//! circle maps and the adjoint graph functors used to move between promise
//! constraint satisfaction problems.

pub mod adjoint;
pub mod circle;
pub mod combinat;
pub mod complex;
pub mod error;
pub mod exec;
pub mod functor;
pub mod graph;
pub mod hom;
pub mod minion;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::Digraph;
