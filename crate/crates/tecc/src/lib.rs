//! Exact construction and analysis of evaluation codes on elliptic curves
//! over small finite fields: generator and parity-check matrices, residue
//! vectors of canonical differentials, self-duality certificates, minimum
//! distance classification through the curve group, and Schur-square
//! distinguishers.
//!
//! Everything is exact arithmetic; no floats anywhere.

pub mod curve;
pub mod differential;
pub mod gf;
pub mod lincode;
pub mod rrspace;
pub mod teccbuild;
