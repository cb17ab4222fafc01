//! Numerical tolerances shared by the library and its acceptance suite.

/// Max |A_ij - conj(A_ji)| accepted for matrices declared Hermitian.
pub const HERM_TOL: f64 = 1e-10;
/// Eigenvalue residual bound reported by the Jacobi solver.
pub const EIG_TOL: f64 = 1e-11;
/// Smallest eigenvalue still counted as positive semidefinite.
pub const POS_TOL: f64 = 1e-10;
/// Off-diagonal Frobenius norm (relative to the matrix norm) at which the
/// Jacobi sweeps stop.
pub const JACOBI_OFF_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Allowed drift of sum |amplitude|^2 from 1.
pub const NORM_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-9;
/// Imaginary part tolerated in a Pauli expectation value before the input is
/// declared non-Hermitian.
pub const IMAG_TOL: f64 = 1e-10;
/// Pauli expectations must lie in [-1 - ENTRY_TOL, 1 + ENTRY_TOL].
pub const ENTRY_TOL: f64 = 1e-9;
pub const UNIT_TOL: f64 = 1e-9;
/// Outcome probabilities below this make the conditioned state undefined.
pub const DEGENERATE_PROB: f64 = 1e-12;
/// |phi| (mod 2 pi) below this counts as the real GHZ^R slice.
pub const PHASE_TOL: f64 = 1e-12;

/// Applied outward when comparing fidelities against 2/3.
pub const CLASS_TOL: f64 = 1e-9;
/// Theorem slack below `-VIOL_TOL` is a violation.
pub const VIOL_TOL: f64 = 1e-6;
/// |Theorem-1 slack| at or below this marks an MSR (boundary) state.
pub const MSR_TOL: f64 = 1e-6;
/// S_max above `2 + BELL_TOL` is a Bell violation in the exclusivity check.
pub const BELL_TOL: f64 = 1e-9;
