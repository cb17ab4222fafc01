//! Teleportation fidelity of a two-qubit channel and controlled state
//! reconstruction (CSR) fidelity of a three-qubit resource.
//!
//! For a channel with correlation matrix `T`, `theta2 = ||T||_1` and the
//! optimal teleportation fidelity is `(1 + theta2 / 3) / 2`.
//!
//! For reconstruction at C with B's help, B measures along an axis `n` and
//! C's conditional channels average to
//! `(||R + T(n)||_1 + ||R - T(n)||_1) / 2`, where `T(n)` is the three-body
//! tensor contracted with `n` on B's index. `theta3` is the maximum of that
//! over `n`, and the CSR fidelity is `1/2 + theta3 / 6`.

#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use crate::correlations::{bloch2, bloch3, BlochDecomp3};
use crate::qmath::{trace_norm, ComplexMatrix, RealMatrix3, Vec3};
use crate::sphere::{self, AxisOptimum, AxisSearch};
use crate::states::{AcinParams, PureState3};
use crate::{Error, Result};

/// Relative tolerance under which AB and AC teleportation are reported as
/// tied.
pub const TIE_TOL: f64 = 1e-10;

pub fn fidelity_from_theta2(theta2: f64) -> f64 {
    0.5 * (1.0 + theta2 / 3.0)
}

pub fn csr_from_theta3(theta3: f64) -> f64 {
    0.5 + theta3 / 6.0
}

/// Trace norm of the channel's correlation matrix, in `[0, 3]`.
pub fn theta2(rho2: &ComplexMatrix) -> Result<f64> {
    trace_norm(&bloch2(rho2)?.t)
}

pub fn tele_fidelity(rho2: &ComplexMatrix) -> Result<f64> {
    theta2(rho2).map(fidelity_from_theta2)
}

/// `(||R + T(n)||_1 + ||R - T(n)||_1) / 2` at a single assistant axis.
pub fn theta3_at_axis(d: &BlochDecomp3, n: Vec3) -> Result<f64> {
    let t = d.tau.contract_assistant(n)?;
    Ok(0.5 * (trace_norm(&(d.r + t))? + trace_norm(&(d.r - t))?))
}

fn objective(r: &RealMatrix3, d: &BlochDecomp3, n: Vec3) -> f64 {
    let t = d.tau.contract_unchecked(n);
    match (trace_norm(&(*r + t)), trace_norm(&(*r - t))) {
        (Ok(a), Ok(b)) => 0.5 * (a + b),
        _ => f64::NAN,
    }
}

/// `theta3` with the maximising assistant axis.
pub fn theta3(rho: &ComplexMatrix) -> Result<AxisOptimum> {
    theta3_decomp(&bloch3(rho)?)
}

pub fn theta3_decomp(d: &BlochDecomp3) -> Result<AxisOptimum> {
    if d.r.max_abs() == 0.0 && d.tau.max_abs() == 0.0 {
        return Ok(AxisOptimum { value: 0.0, axis: [0.0, 0.0, 1.0] });
    }
    let r = d.r;
    sphere::maximize(|n| objective(&r, d, n), &AxisSearch::default())
}

pub fn csr_fidelity(rho: &ComplexMatrix) -> Result<f64> {
    theta3(rho).map(|t| csr_from_theta3(t.value))
}

/// `theta3 = 4 lambda0 max(lambda2, lambda4) + 1` on the real GHZ^R slice.
pub fn closed_theta3_ghzr(p: &AcinParams) -> Result<f64> {
    p.require_real()?;
    let l = p.lambda();
    Ok(4.0 * l[0] * l[2].max(l[4]) + 1.0)
}

/// Closed-form `||R||` (dealer-reconstructor) on the GHZ^R slice.
pub fn closed_norm_r(p: &AcinParams) -> Result<f64> {
    p.require_real()?;
    let [l0, l1, l2, l3, l4] = p.lambda();
    Ok(2.0 * l0 * l2
        + 2.0 * (l0 * l0 * l2 * l2 + (l1 * l2 + l3 * l4).powi(2)).sqrt()
        + (4.0 * l0 * l0 * l1 * l1 + (l0 * l0 - l1 * l1 + l4 * l4 + l2 * l2 - l3 * l3).powi(2)).sqrt())
}

/// Closed-form `||Q||` (dealer-assistant) on the GHZ^R slice.
pub fn closed_norm_q(p: &AcinParams) -> Result<f64> {
    p.require_real()?;
    let [l0, l1, l2, l3, l4] = p.lambda();
    Ok(2.0 * l0 * l3
        + 2.0 * (l0 * l0 * l3 * l3 + (l1 * l3 + l2 * l4).powi(2)).sqrt()
        + (4.0 * l0 * l0 * l1 * l1 + (l0 * l0 - l1 * l1 + l4 * l4 + l3 * l3 - l2 * l2).powi(2)).sqrt())
}

pub fn closed_theta2_ghzr(p: &AcinParams) -> Result<f64> {
    Ok(closed_norm_r(p)?.max(closed_norm_q(p)?))
}

/// `(theta2, theta3) = (cos t, 2 cos t + 1)` along the MSR family.
pub fn msr_closed_forms(theta: f64) -> Result<(f64, f64)> {
    if !(0.0..=core::f64::consts::FRAC_PI_2).contains(&theta) {
        return Err(Error::ThetaRange(theta));
    }
    let c = theta.cos();
    Ok((c, 2.0 * c + 1.0))
}

/// Fidelity figures of one three-qubit state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelitySummary {
    pub theta2_ab: f64,
    pub theta2_ac: f64,
    pub f_ab: f64,
    pub f_ac: f64,
    pub f_max: f64,
    pub theta3: f64,
    pub f_csr: f64,
    pub best_axis: Vec3,
    /// `theta2_ab` and `theta2_ac` agree within `TIE_TOL`; `f_max` is then
    /// taken from the AC channel.
    pub tie_ab_ac: bool,
}

impl FidelitySummary {
    /// `max(theta2_ab, theta2_ac)`.
    pub fn theta2(&self) -> f64 {
        self.theta2_ab.max(self.theta2_ac)
    }
}

pub fn summarize(d: &BlochDecomp3) -> Result<FidelitySummary> {
    let theta2_ab = trace_norm(&d.q)?;
    let theta2_ac = trace_norm(&d.r)?;
    let f_ab = fidelity_from_theta2(theta2_ab);
    let f_ac = fidelity_from_theta2(theta2_ac);
    let tie = (theta2_ab - theta2_ac).abs() <= TIE_TOL * theta2_ab.max(1.0);
    let f_max = if tie || f_ac >= f_ab { f_ac } else { f_ab };
    let t3 = theta3_decomp(d)?;
    Ok(FidelitySummary {
        theta2_ab,
        theta2_ac,
        f_ab,
        f_ac,
        f_max,
        theta3: t3.value,
        f_csr: csr_from_theta3(t3.value),
        best_axis: t3.axis,
        tie_ab_ac: tie,
    })
}

pub fn fidelity_summary(psi: &PureState3) -> Result<FidelitySummary> {
    summarize(&bloch3(&psi.density())?)
}
