//! Exact computations with finite flat group schemes over `Z_(p)`: pushouts,
//! upper and lower bounds of models, cokernels and quotients, worked out on
//! structure constants of their Hopf algebras.

pub mod cli;
pub mod cokernel;
pub mod dvr;
pub mod error;
pub mod hopf;
pub mod io;
pub mod presentation;
pub mod pushout;
pub mod quasifinite;

pub use error::{Error, Result};
