//! Classification of states as secret-sharing resources, the three bound
//! checks, seeded sweeps and the scatter datasets of the two figures.
//!
//! The bounds, all on `theta3` against the dealer channels:
//!
//! - fidelity bound: `theta3 <= 1 + 2 theta2` for secret-shareable states;
//! - Bell bound: `theta3 <= 2 sqrt(M_max) + 1` when `f_max <= 2/3` and
//!   `f_csr >= 2/3`;
//! - mutual exclusivity: no secret-shareable state has `S_max > 2`.

use alloc::vec::Vec;
use core::ops::Range;

#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use crate::bell::{self, BellSummary};
use crate::correlations::bloch3;
use crate::fidelity::{self, FidelitySummary};
use crate::states::{from_acin, sample_acin, stream_seed, AcinParams, PureState3};
use crate::tol::{BELL_TOL, CLASS_TOL, MSR_TOL, VIOL_TOL};
use crate::Result;

const TWO_THIRDS: f64 = 2.0 / 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    pub secret_shareable: bool,
    pub msr_boundary: bool,
    pub tie_ab_ac: bool,
}

/// Raw slacks, computed for every state whether or not the premises hold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Slacks {
    /// `1 + 2 theta2 - theta3`.
    pub thm1: f64,
    /// `2 sqrt(M_max) + 1 - theta3`.
    pub thm2: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisRecord {
    /// Present when the state was built from Acin coefficients.
    pub params: Option<AcinParams>,
    pub fidelity: FidelitySummary,
    pub bell: BellSummary,
    pub flags: Flags,
    pub slacks: Slacks,
}

/// Both dealer channels at or below the classical limit and reconstruction
/// above it, with `CLASS_TOL` applied outward on the channels.
pub fn is_secret_shareable(f: &FidelitySummary) -> bool {
    f.f_ab <= TWO_THIRDS + CLASS_TOL && f.f_ac <= TWO_THIRDS + CLASS_TOL && f.f_csr > TWO_THIRDS + CLASS_TOL
}

pub fn analyze(psi: &PureState3, params: Option<AcinParams>) -> Result<AnalysisRecord> {
    let d = bloch3(&psi.density())?;
    let fidelity = fidelity::summarize(&d)?;
    let bell = bell::summarize(&d)?;
    let slacks = Slacks {
        thm1: 1.0 + 2.0 * fidelity.theta2() - fidelity.theta3,
        thm2: 2.0 * bell.m_max().max(0.0).sqrt() + 1.0 - fidelity.theta3,
    };
    let secret_shareable = is_secret_shareable(&fidelity);
    let flags = Flags {
        secret_shareable,
        msr_boundary: secret_shareable && slacks.thm1.abs() <= MSR_TOL,
        tie_ab_ac: fidelity.tie_ab_ac,
    };
    Ok(AnalysisRecord { params, fidelity, bell, flags, slacks })
}

pub fn analyze_acin(p: &AcinParams) -> Result<AnalysisRecord> {
    analyze(&from_acin(p), Some(*p))
}

/// Fidelity-bound slack, `None` unless `f_max <= 2/3` and `f_csr > 2/3`.
pub fn check_theorem1(r: &AnalysisRecord) -> Option<f64> {
    let f = &r.fidelity;
    (f.f_ab.max(f.f_ac) <= TWO_THIRDS + CLASS_TOL && f.f_csr > TWO_THIRDS + CLASS_TOL).then_some(r.slacks.thm1)
}

/// Bell-bound slack, `None` unless `f_max <= 2/3` and `f_csr >= 2/3`.
pub fn check_theorem2(r: &AnalysisRecord) -> Option<f64> {
    let f = &r.fidelity;
    (f.f_ab.max(f.f_ac) <= TWO_THIRDS + CLASS_TOL && f.f_csr >= TWO_THIRDS - CLASS_TOL).then_some(r.slacks.thm2)
}

/// `2 - S_max` for secret-shareable states, `None` otherwise.
pub fn exclusivity_slack(r: &AnalysisRecord) -> Option<f64> {
    r.flags.secret_shareable.then_some(2.0 - r.bell.s_max)
}

/// False iff the state is secret-shareable and violates CHSH by more than
/// `BELL_TOL`.
pub fn check_mutual_exclusivity(r: &AnalysisRecord) -> bool {
    !(r.flags.secret_shareable && r.bell.s_max > 2.0 + BELL_TOL)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    FidelityBound,
    BellBound,
    MutualExclusivity,
}

impl Theorem {
    pub const ALL: [Theorem; 3] = [Theorem::FidelityBound, Theorem::BellBound, Theorem::MutualExclusivity];

    pub fn label(self) -> &'static str {
        match self {
            Theorem::FidelityBound => "theta3 <= 1 + 2 theta2",
            Theorem::BellBound => "theta3 <= 2 sqrt(M) + 1",
            Theorem::MutualExclusivity => "secret sharing => S_max <= 2",
        }
    }

    pub fn slack(self, r: &AnalysisRecord) -> Option<f64> {
        match self {
            Theorem::FidelityBound => check_theorem1(r),
            Theorem::BellBound => check_theorem2(r),
            Theorem::MutualExclusivity => exclusivity_slack(r),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    /// Record index within the sweep (offset from its base seed).
    pub offset: u64,
    pub slack: f64,
    pub record: AnalysisRecord,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tally {
    pub premise_hits: u64,
    /// `+inf` while no record has met the premise.
    pub min_slack: f64,
    pub violations: Vec<Violation>,
}

impl Default for Tally {
    fn default() -> Self {
        Self { premise_hits: 0, min_slack: f64::INFINITY, violations: Vec::new() }
    }
}

/// Aggregated verdict of a sweep over all three checks.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremReport {
    pub samples: u64,
    pub tol: f64,
    pub tallies: [Tally; 3],
}

impl Default for TheoremReport {
    fn default() -> Self {
        Self::new(VIOL_TOL)
    }
}

impl TheoremReport {
    /// Empty report; a slack below `-tol` counts as a violation.
    pub fn new(tol: f64) -> Self {
        Self { samples: 0, tol, tallies: Default::default() }
    }

    pub fn tally(&self, t: Theorem) -> &Tally {
        &self.tallies[t as usize]
    }

    pub fn absorb(&mut self, offset: u64, r: &AnalysisRecord) {
        self.samples += 1;
        for t in Theorem::ALL {
            let Some(slack) = t.slack(r) else { continue };
            let tally = &mut self.tallies[t as usize];
            tally.premise_hits += 1;
            tally.min_slack = tally.min_slack.min(slack);
            if slack < -self.tol {
                tally.violations.push(Violation { offset, slack, record: *r });
            }
        }
    }

    /// Appends `other`, which must cover later offsets for the violation
    /// lists to stay ordered.
    pub fn merge(&mut self, other: TheoremReport) {
        self.samples += other.samples;
        for (mine, theirs) in self.tallies.iter_mut().zip(other.tallies) {
            mine.premise_hits += theirs.premise_hits;
            mine.min_slack = mine.min_slack.min(theirs.min_slack);
            mine.violations.extend(theirs.violations);
        }
    }

    pub fn violation_count(&self) -> usize {
        self.tallies.iter().map(|t| t.violations.len()).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.violation_count() == 0
    }
}

/// Parameters of record `idx` in a sweep from `seed`.
pub fn sweep_params(seed: u64, idx: u64, include_phase: bool) -> AcinParams {
    sample_acin(stream_seed(seed, idx), include_phase)
}

/// Analyses records `range` of the sweep from `seed`, passing each to `sink`
/// in index order. Any partition of `0..n` into ranges reproduces the same
/// records.
pub fn sweep_range(
    range: Range<u64>,
    seed: u64,
    include_phase: bool,
    tol: f64,
    mut sink: impl FnMut(u64, &AnalysisRecord),
) -> Result<TheoremReport> {
    let mut report = TheoremReport::new(tol);
    for idx in range {
        let r = analyze_acin(&sweep_params(seed, idx, include_phase))?;
        report.absorb(idx, &r);
        sink(idx, &r);
    }
    Ok(report)
}

pub fn sweep(n: u64, seed: u64, include_phase: bool, sink: impl FnMut(u64, &AnalysisRecord)) -> Result<TheoremReport> {
    sweep_range(0..n, seed, include_phase, VIOL_TOL, sink)
}

/// Number of points on each analytic boundary curve.
pub const BOUNDARY_POINTS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureKind {
    /// Reconstruction fidelity against the larger teleportation fidelity.
    RfVsTf,
    /// Reconstruction fidelity against the larger CHSH value.
    RfVsBell,
}

impl FigureKind {
    pub fn name(self) -> &'static str {
        match self {
            FigureKind::RfVsTf => "rf-vs-tf",
            FigureKind::RfVsBell => "rf-vs-bell",
        }
    }

    pub fn x_label(self) -> &'static str {
        match self {
            FigureKind::RfVsTf => "f_max",
            FigureKind::RfVsBell => "s_max",
        }
    }

    /// Domain of the boundary curve.
    pub fn x_range(self) -> (f64, f64) {
        match self {
            FigureKind::RfVsTf => (0.5, TWO_THIRDS),
            FigureKind::RfVsBell => (0.0, 2.0),
        }
    }

    /// Largest reconstruction fidelity allowed at `x`: `2x - 1/3` or
    /// `(x + 4) / 6`.
    pub fn boundary(self, x: f64) -> f64 {
        match self {
            FigureKind::RfVsTf => 2.0 * x - 1.0 / 3.0,
            FigureKind::RfVsBell => (x + 4.0) / 6.0,
        }
    }

    pub fn x_of(self, r: &AnalysisRecord) -> f64 {
        match self {
            FigureKind::RfVsTf => r.fidelity.f_max,
            FigureKind::RfVsBell => r.bell.s_max,
        }
    }
}

/// `BOUNDARY_POINTS` uniformly spaced points, endpoints included.
pub fn boundary_curve(kind: FigureKind) -> Vec<(f64, f64)> {
    let (lo, hi) = kind.x_range();
    (0..BOUNDARY_POINTS)
        .map(|i| {
            let x =
                if i + 1 == BOUNDARY_POINTS { hi } else { lo + (hi - lo) * i as f64 / (BOUNDARY_POINTS - 1) as f64 };
            (x, kind.boundary(x))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FigurePoint {
    /// Sweep index; `None` for the GHZ marker.
    pub idx: Option<u64>,
    pub x: f64,
    pub y: f64,
    pub secret_shareable: bool,
    pub msr_boundary: bool,
}

impl FigurePoint {
    pub fn new(kind: FigureKind, idx: Option<u64>, r: &AnalysisRecord) -> Self {
        Self {
            idx,
            x: kind.x_of(r),
            y: r.fidelity.f_csr,
            secret_shareable: r.flags.secret_shareable,
            msr_boundary: r.flags.msr_boundary,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FigureData {
    pub kind: FigureKind,
    pub points: Vec<FigurePoint>,
    pub ghz: FigurePoint,
    pub boundary: Vec<(f64, f64)>,
}

/// Scatter over `n` Acin states (phase included) plus the GHZ marker and
/// the analytic boundary.
pub fn figure_data(kind: FigureKind, n: u64, seed: u64) -> Result<FigureData> {
    let mut points = Vec::with_capacity(n as usize);
    sweep(n, seed, true, |idx, r| points.push(FigurePoint::new(kind, Some(idx), r)))?;
    figure_from_points(kind, points)
}

/// Completes a scatter computed elsewhere (for example in parallel).
pub fn figure_from_points(kind: FigureKind, points: Vec<FigurePoint>) -> Result<FigureData> {
    let ghz = FigurePoint::new(kind, None, &analyze(&PureState3::ghz(), Some(AcinParams::ghz()))?);
    Ok(FigureData { kind, points, ghz, boundary: boundary_curve(kind) })
}
