//! Mod-p Hecke algebras of weight-2 modular symbols.
//!
//! The crate builds spaces of modular symbols over `F_p` for `Gamma0(N)` and
//! `Gamma1(N)`, generates the Hecke algebra acting on the cuspidal part,
//! splits it into local factors and reports socle-based multiplicity
//! diagnostics for each factor. A separate module works through the
//! semilinear algebra of Dieudonne modules killed by `p`.

pub mod arith;
pub mod cli;
pub mod diagnostics;
pub mod dieudonne;
pub mod error;
pub mod ff;
pub mod hecke;
pub mod modsym;
pub mod scan;

pub use error::{Error, Result};
