//! Lorentzian Coxeter groups acting on the Hilbert-metric domain `D`:
//! bilinear forms, the normalized projective action, word combinatorics,
//! cusps and horoballs, limit-set sampling and Cannon–Thurston checks.

pub mod catalog;
pub mod chart;
pub mod config;
pub mod coxsys;
pub mod error;
pub mod exec;
pub mod hilbert;
pub mod limits;
pub mod render;
pub mod suites;
pub mod system;
pub mod words;

pub use chart::{Chart, ChartPoint, Region};
pub use config::{RunConfig, Tolerances};
pub use coxsys::{BilinearForm, CoxeterMatrix, Edge, SignatureReport};
pub use error::{Error, Result};
pub use exec::Execution;
pub use system::System;
pub use words::{CayleyBall, Generators, GroupElement, Side};
