pub mod angles;
pub mod dynamics;
pub mod error;

pub use error::{Error, Result};
pub mod boettcher;
pub mod cli;
pub mod geom;
pub mod linearize;
pub mod semiconj;
pub mod tess;
