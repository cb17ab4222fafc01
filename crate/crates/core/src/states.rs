//! Pure three-qubit states: the Acin (generalised GHZ) parametrisation, its
//! real GHZ^R slice, the one-parameter MSR family, and seeded sampling.
//!
//! Amplitudes are indexed by `4 q_A + 2 q_B + q_C`, so the Acin coefficient
//! `lambda1 e^{i phi}` sits on `|100>` at index 4.

use alloc::format;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, TAU};

#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::correlations::ChannelRole;
use crate::qmath::{kron, partial_trace_unnormalized, ComplexMatrix, C64, ONE, ZERO};
use crate::tol::{NORM_TOL, PHASE_TOL};
use crate::{Error, Result};

/// Normalised three-qubit ket.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureState3 {
    amps: [C64; 8],
}

fn norm_sqr(amps: &[C64; 8]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

impl PureState3 {
    /// Rejects amplitudes whose squared norm is off by more than `NORM_TOL`.
    pub fn new(amps: [C64; 8]) -> Result<Self> {
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let n2 = norm_sqr(&amps);
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self { amps })
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalize(amps: [C64; 8]) -> Result<Self> {
        let n2 = norm_sqr(&amps);
        if !n2.is_finite() || n2 == 0.0 {
            return Err(Error::NotNormalized(n2));
        }
        let k = 1.0 / n2.sqrt();
        Ok(Self { amps: amps.map(|a| a * k) })
    }

    pub fn basis(index: usize) -> Self {
        let mut amps = [ZERO; 8];
        amps[index] = ONE;
        Self { amps }
    }

    /// `(|000> + |111>) / sqrt 2`.
    pub fn ghz() -> Self {
        from_acin(&AcinParams::ghz())
    }

    pub fn amplitudes(&self) -> &[C64; 8] {
        &self.amps
    }

    pub fn density(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amps).expect("dimension 8")
    }

    /// Two-qubit state of `channel`, tracing out the third party.
    pub fn reduced_pair(&self, channel: ChannelRole) -> ComplexMatrix {
        partial_trace_unnormalized(&self.density(), &channel.qubits()).expect("valid qubit pair")
    }

    /// Applies `u_a (x) u_b (x) u_c`.
    pub fn apply_local(&self, u: [&ComplexMatrix; 3]) -> Result<Self> {
        let full = kron(&kron(u[0], u[1])?, u[2])?;
        let amps = core::array::from_fn(|i| (0..8).map(|j| full[(i, j)] * self.amps[j]).sum());
        Self::new(amps)
    }

    /// Inverse of [`from_acin`] for states already in GHZ^R form: real,
    /// non-negative amplitudes supported on {0, 4, 5, 6, 7}.
    pub fn acin_readback(&self) -> Option<AcinParams> {
        const SUPPORT: [usize; 5] = [0, 4, 5, 6, 7];
        let off_support = (0..8).filter(|i| !SUPPORT.contains(i)).any(|i| self.amps[i].norm() > NORM_TOL);
        if off_support {
            return None;
        }
        let mut lambda = [0.0; 5];
        for (k, &i) in SUPPORT.iter().enumerate() {
            let a = self.amps[i];
            if a.im.abs() > NORM_TOL || a.re < -NORM_TOL {
                return None;
            }
            lambda[k] = a.re.max(0.0);
        }
        AcinParams::new(lambda, 0.0).ok()
    }
}

/// Coefficients `lambda0..lambda4 >= 0` (squares summing to 1) and the phase
/// on `|100>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AcinParams {
    lambda: [f64; 5],
    phi: f64,
}

impl AcinParams {
    /// `phi` is reduced into `[0, 2 pi)`.
    pub fn new(lambda: [f64; 5], phi: f64) -> Result<Self> {
        if lambda.iter().any(|l| !l.is_finite()) || !phi.is_finite() {
            return Err(Error::NonFinite);
        }
        if let Some(l) = lambda.iter().find(|&&l| l < 0.0) {
            return Err(Error::AcinParams(format!("negative coefficient {l}")));
        }
        let sum: f64 = lambda.iter().map(|l| l * l).sum();
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::AcinParams(format!("sum of squares {sum}")));
        }
        let mut phi = phi % TAU;
        if phi < 0.0 {
            phi += TAU;
        }
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(Self { lambda, phi })
    }

    pub fn ghz() -> Self {
        Self { lambda: [FRAC_1_SQRT_2, 0.0, 0.0, 0.0, FRAC_1_SQRT_2], phi: 0.0 }
    }

    pub fn lambda(&self) -> [f64; 5] {
        self.lambda
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// True on the real GHZ^R slice (phi = 0 up to `PHASE_TOL`).
    pub fn is_real(&self) -> bool {
        self.phi <= PHASE_TOL || TAU - self.phi <= PHASE_TOL
    }

    pub(crate) fn require_real(&self) -> Result<()> {
        if self.is_real() {
            Ok(())
        } else {
            Err(Error::NonzeroPhase(self.phi))
        }
    }
}

pub fn from_acin(p: &AcinParams) -> PureState3 {
    let l = p.lambda;
    let mut amps = [ZERO; 8];
    amps[0] = C64::new(l[0], 0.0);
    amps[4] = C64::from_polar(l[1], p.phi);
    amps[5] = C64::new(l[2], 0.0);
    amps[6] = C64::new(l[3], 0.0);
    amps[7] = C64::new(l[4], 0.0);
    // AcinParams already enforces the norm.
    PureState3 { amps }
}

/// One-parameter MSR family `(cos t |000> + sin t |100>) / sqrt 2 + |111> / sqrt 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MsrParams {
    theta: f64,
}

impl MsrParams {
    pub fn new(theta: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            return Err(Error::ThetaRange(theta));
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn acin(&self) -> AcinParams {
        let (s, c) = self.theta.sin_cos();
        AcinParams { lambda: [c * FRAC_1_SQRT_2, s * FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2], phi: 0.0 }
    }
}

pub fn from_msr(p: &MsrParams) -> PureState3 {
    from_acin(&p.acin())
}

/// Acin coefficients with `(lambda_i^2)` uniform on the 4-simplex (sorted
/// uniform spacings) and, if `include_phase`, `phi` uniform on `[0, 2 pi)`.
pub fn sample_acin(seed: u64, include_phase: bool) -> AcinParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cuts: [f64; 4] = core::array::from_fn(|_| rng.random::<f64>());
    cuts.sort_by(f64::total_cmp);
    let mut weights = [0.0; 5];
    let mut prev = 0.0;
    for (w, &c) in weights.iter_mut().zip(cuts.iter()) {
        *w = c - prev;
        prev = c;
    }
    weights[4] = 1.0 - prev;
    let phi = if include_phase { TAU * rng.random::<f64>() } else { 0.0 };
    AcinParams { lambda: weights.map(|w| w.sqrt()), phi }
}

/// Seed for record `index` of a sweep started from `base` (SplitMix64
/// finaliser), so any partition of the index range reproduces the same
/// samples.
pub fn stream_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Haar-random three-qubit pure state (normalised complex Gaussian vector).
pub fn haar_state3<R: Rng + ?Sized>(rng: &mut R) -> PureState3 {
    loop {
        let amps = core::array::from_fn(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
        if let Ok(s) = PureState3::normalize(amps) {
            return s;
        }
    }
}

/// Haar-random two-qubit pure state as a density matrix.
pub fn haar_pair_density<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let mut v: [C64; 4] = core::array::from_fn(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= n);
    ComplexMatrix::outer(&v).expect("dimension 4")
}

/// Haar-random SU(2) element from a uniformly random unit quaternion.
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let q: [f64; 4] = core::array::from_fn(|_| rng.sample(StandardNormal));
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [a, b, c, d] = q.map(|x| x / n);
    ComplexMatrix::from_rows(2, alloc::vec![C64::new(a, b), C64::new(c, d), C64::new(-c, d), C64::new(a, -b)])
        .expect("dimension 2")
}
