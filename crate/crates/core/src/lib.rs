//! Exact verification engine for the super Yangian double DY(gl(1|1)).

pub mod error;
pub mod evalrep;
pub mod gauss;
pub mod exactfield;
pub mod gradedlinalg;
pub mod hopf;
pub mod modealgebra;
pub mod ring;
pub mod rmatrix;
pub mod rtt;
pub mod series;

pub use error::{AlgebraError, Result};
