//! Numerics for analysing pure three-qubit states as quantum secret-sharing
//! resources.
//!
//! The three parties are the dealer (A), the assistant (B) and the
//! reconstructor (C). A ket is stored over the basis `|q_A q_B q_C>` with
//! index `4 q_A + 2 q_B + q_C`.
//!
//! The crate is `no_std` (it needs `alloc`), so it can be embedded anywhere;
//! file formats, threading and the command line live in the `qss` crate.
//!
//! Module map:
//!
//! - [`qmath`]: small dense linear algebra (Kronecker products, partial
//!   traces, Jacobi eigenvalues, 3x3 singular values and trace norms).
//! - [`states`]: Acin / GHZ^R / MSR parametrisations, density matrices,
//!   seeded sampling.
//! - [`correlations`]: Pauli (Bloch) decompositions, the three-body
//!   correlation tensor, conditioning on the assistant's measurement.
//! - [`fidelity`]: teleportation and controlled-reconstruction fidelities and
//!   their closed forms on the GHZ^R family.
//! - [`bell`]: M-value, CHSH value and a direct CHSH settings optimiser.
//! - [`analysis`]: classification, bound checks, seeded sweeps and figure data.
//! - [`oracle`]: brute-force validators (protocol Monte Carlo, conditioned
//!   reconstruction).
#![no_std]

extern crate alloc;

pub mod analysis;
pub mod bell;
pub mod correlations;
mod error;
pub mod fidelity;
pub mod optim;
pub mod oracle;
pub mod qmath;
pub mod sphere;
pub mod states;
pub mod tol;

pub use error::{Error, Result};

pub use analysis::{analyze, AnalysisRecord, TheoremReport};
pub use correlations::ChannelRole;
pub use qmath::{ComplexMatrix, RealMatrix3, C64};
pub use states::{AcinParams, MsrParams, PureState3};
