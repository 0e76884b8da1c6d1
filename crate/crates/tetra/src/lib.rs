//! Exact verification of tetrahedron-equation solutions.

pub mod error;
pub mod ratmat;
pub mod twovec;
pub mod report;
pub mod leibniz2;
pub mod rack2;
pub mod zte;
pub mod split;
pub mod finrack;
pub mod forge;
pub mod cli;

pub use error::{Error, Result};
