//! Row-finite k-graphs and their Kumjian-Pask algebras.

pub mod algebra;
pub mod analysis;
pub mod degree;
pub mod error;
pub mod graph;
pub mod io;
pub mod path;
pub mod report;

pub use degree::{Degree, DegreeDelta};
pub use error::{Error, Result};
