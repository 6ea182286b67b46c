//! Circuit synthesis and verification for two-outcome qubit measurements.
//!
//! A two-outcome POVM on a qubit — a filter, a diluter, or a fully general
//! pair of measurement operators — can be realized with nothing more than a
//! CNOT between the system and one ancilla qubit, single-qubit unitaries, and
//! a projective measurement on the ancilla. This crate builds those circuits,
//! simulates them exactly, extracts their effective Kraus operators, and
//! numerically explores which two-qubit interactions are universal for the
//! filtering task.
//!
//! The crate is organized around four modules:
//!
//! - [`qmath`]: complex matrices up to 8×8, labeled state vectors of two or
//!   three qubits, tensor products, partial traces, Schmidt analysis.
//! - [`povm`]: two-outcome POVM representation, completeness checking, and
//!   reduction to the canonical form `M_i = V_i · D_i · U`.
//! - [`circuits`]: synthesis of ancilla circuits for filters, optimal
//!   pure-state conversion, deterministic dilution, and general POVMs, plus
//!   exact branch-by-branch simulation.
//! - [`search`]: the canonical interaction family `U_d(a1, a2, a3)`, the
//!   product-state constraint residual, and grid scans of the reachable
//!   success-amplitude range.
//!
//! All operations are pure functions of their inputs; values are freely
//! transferable between threads.

pub mod circuits;
pub mod error;
pub mod povm;
pub mod qmath;
pub mod search;

pub use error::{Error, Result};

/// Tolerance for invariants of directly constructed objects (norms,
/// orthogonality, completeness of exact constructions).
pub const TOL_CONSTRUCT: f64 = 1e-12;

/// Tolerance for round-trip identities that compose several exact steps
/// (reconstructions, unitarity of products, oracle agreement).
pub const TOL_ROUNDTRIP: f64 = 1e-10;

/// Tolerance used where numerical optimization feeds in (constraint
/// residuals accepted by the search module).
pub const TOL_SEARCH: f64 = 1e-8;

/// Angle inputs within this distance beyond a closed boundary are clamped
/// onto it, so four-decimal approximations of π/4 or π/2 stay valid.
pub(crate) const ANGLE_SLACK: f64 = 1e-4;
