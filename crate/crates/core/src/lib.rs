//! Combinatorics of finite valued translation quivers.

pub mod additive;
pub mod chains;
pub mod classify;
pub mod cli;
pub mod combination;
pub mod error;
pub mod io;
pub mod quiver;
pub mod rejection;
mod serde_int;
pub mod solver;
pub mod vertex;

pub use combination::VertexCombination;
pub use error::{Result, TauqError};
pub use quiver::{QuiverBuilder, TranslationQuiver, Valuation};
pub use vertex::VertexId;
