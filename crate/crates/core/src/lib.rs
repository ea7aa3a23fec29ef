//! Exact-arithmetic engine for the Kontsevich graph calculus.

pub mod error;
pub mod graph;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Q;
pub mod complex;
pub mod linalg;
pub mod superpoly;
pub mod cli;
pub mod orient;
pub mod poissonlab;
