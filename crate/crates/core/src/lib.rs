//! Graphs with few eigenvalues obtained by Seidel switching: spectra, regular
//! two-graphs, explicit constructions, symplectic embeddings and exhaustive
//! switching-class censuses.

pub mod census;
pub mod construct;
pub mod embed;
mod error;
pub mod exec;
pub mod graphcore;
pub mod spectra;
pub mod twograph;

pub use error::{Error, Result};
pub use exec::Execution;
