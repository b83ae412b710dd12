//! Exact computational geometry of space sextic curves over finite fields:
//! construction from eight plane points, tritangent planes, Steiner systems,
//! and the inverse reconstructions.

pub mod binform;
pub mod construct;
pub mod error;
pub mod field;
pub mod groebner;
pub mod lehavi;
pub mod linalg;
pub mod multipoly;
pub mod reconstruct;
pub mod solve;
pub mod steiner;
pub mod tritangent;
pub mod unipoly;

pub use error::Error;
