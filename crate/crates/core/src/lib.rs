pub mod classifier;
pub mod complexroots;
pub mod counting;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod metriclab;
pub mod minpoly;
pub mod polyint;
pub mod rat;
pub mod realroots;
pub mod report;

pub use error::{Error, Result};
