//! Tropical double description: exact extreme-ray computation for max-plus
//! polyhedra given by systems of max-plus linear inequalities.

pub mod bench;
pub mod dd;
pub mod error;
pub mod extremality;
pub mod gen;
pub mod hypergraph;
pub mod io;
pub mod oracle;
pub mod scalar;
pub mod system;
pub mod vector;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use system::{AffineSystem, IneqSystem};
pub use vector::{TRowVector, TVector};
