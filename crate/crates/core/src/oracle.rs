//! Brute-force validators that share no code with the formulas they check.
//!
//! - [`mc_teleport_fidelity`] simulates Bell-measurement teleportation over
//!   a two-qubit resource. Local rotations are tuned numerically on the exact
//!   average fidelity, then measurement outcomes and input states are sampled.
//! - [`csr_conditioned_fidelity`] lets the assistant measure, conditions the
//!   dealer-reconstructor pair on each outcome, and averages the conditioned
//!   teleportation fidelities. [`csr_oracle`] maximises it over the axis with
//!   its own latitude-longitude grid and Nelder-Mead.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::correlations::{condition_on_assistant, Outcome};
use crate::fidelity::tele_fidelity;
use crate::optim::NelderMead;
use crate::qmath::{kron, su2_zyz, ComplexMatrix, Vec3, C64, ONE, ZERO};
use crate::states::{stream_seed, PureState3};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McConfig {
    samples: u64,
    seed: u64,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Result<Self> {
        if samples == 0 {
            return Err(Error::Config("Monte Carlo needs at least one sample".into()));
        }
        Ok(Self { samples, seed })
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

type M2 = [[C64; 2]; 2];
type M4 = [[C64; 4]; 4];

/// Bell basis over (input, Alice's resource qubit): Phi+, Phi-, Psi+, Psi-.
fn bell_basis() -> [M2; 4] {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    [[[h, ZERO], [ZERO, h]], [[h, ZERO], [ZERO, -h]], [[ZERO, h], [h, ZERO]], [[ZERO, h], [-h, ZERO]]]
}

/// Bob's correction for each Bell outcome: I, Z, X, Y.
fn corrections() -> [M2; 4] {
    let i = C64::new(0.0, 1.0);
    [[[ONE, ZERO], [ZERO, ONE]], [[ONE, ZERO], [ZERO, -ONE]], [[ZERO, ONE], [ONE, ZERO]], [[ZERO, -i], [i, ZERO]]]
}

fn to_m2(m: &ComplexMatrix) -> M2 {
    [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
}

/// Euler angles (ZYZ) of Alice's rotation on her resource qubit, Bob's
/// rotation before the correction and Bob's rotation after it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProtocolSettings {
    pub alice: [f64; 3],
    pub bob_pre: [f64; 3],
    pub bob_post: [f64; 3],
}

impl ProtocolSettings {
    fn from_slice(x: &[f64]) -> Self {
        Self { alice: [x[0], x[1], x[2]], bob_pre: [x[3], x[4], x[5]], bob_post: [x[6], x[7], x[8]] }
    }
}

/// Standard teleportation over a locally rotated resource.
#[derive(Clone, Debug)]
pub struct Protocol {
    resource: M4,
    /// `C_k^dagger W^dagger`, applied to the input to score outcome `k`.
    score: [M2; 4],
    bell: [M2; 4],
}

impl Protocol {
    pub fn new(rho2: &ComplexMatrix, s: &ProtocolSettings) -> Result<Self> {
        if rho2.dim() != 4 {
            return Err(Error::Dimension(rho2.dim()));
        }
        let [a0, a1, a2] = s.alice;
        let [b0, b1, b2] = s.bob_pre;
        let [c0, c1, c2] = s.bob_post;
        let local = kron(&su2_zyz(a0, a1, a2), &su2_zyz(b0, b1, b2))?;
        let rotated = rho2.conjugate_by(&local);
        let resource = core::array::from_fn(|i| core::array::from_fn(|j| rotated[(i, j)]));
        let w = to_m2(&su2_zyz(c0, c1, c2));
        let corr = corrections();
        // (W C)^dagger = C^dagger W^dagger
        let score = core::array::from_fn(|k| {
            let c = &corr[k];
            let mut wc = [[ZERO; 2]; 2];
            for (i, row) in wc.iter_mut().enumerate() {
                for (j, x) in row.iter_mut().enumerate() {
                    *x = w[i][0] * c[0][j] + w[i][1] * c[1][j];
                }
            }
            let wc_dag: M2 = [[wc[0][0].conj(), wc[1][0].conj()], [wc[0][1].conj(), wc[1][1].conj()]];
            wc_dag
        });
        Ok(Self { resource, score, bell: bell_basis() })
    }

    /// Probability of each Bell outcome and the unnormalised fidelity
    /// `p_k F_k` of the corrected output with `psi`.
    pub fn branches(&self, psi: [C64; 2]) -> [(f64, f64); 4] {
        core::array::from_fn(|k| {
            let beta = &self.bell[k];
            let w = [
                beta[0][0].conj() * psi[0] + beta[1][0].conj() * psi[1],
                beta[0][1].conj() * psi[0] + beta[1][1].conj() * psi[1],
            ];
            let mut bob = [[ZERO; 2]; 2];
            for (b, row) in bob.iter_mut().enumerate() {
                for (bp, x) in row.iter_mut().enumerate() {
                    let mut acc = ZERO;
                    for a in 0..2 {
                        for ap in 0..2 {
                            acc += w[a] * self.resource[2 * a + b][2 * ap + bp] * w[ap].conj();
                        }
                    }
                    *x = acc;
                }
            }
            let p = (bob[0][0] + bob[1][1]).re;
            let v = self.score[k].map(|row| row[0] * psi[0] + row[1] * psi[1]);
            let overlap = v[0].conj() * (bob[0][0] * v[0] + bob[0][1] * v[1])
                + v[1].conj() * (bob[1][0] * v[0] + bob[1][1] * v[1]);
            (p, overlap.re)
        })
    }

    /// Outcome-averaged fidelity for one input.
    pub fn input_fidelity(&self, psi: [C64; 2]) -> f64 {
        self.branches(psi).iter().map(|b| b.1).sum()
    }

    /// Exact average over the six octahedron states, which equals the
    /// average over the whole Bloch sphere.
    pub fn average_fidelity(&self) -> f64 {
        octahedron().iter().map(|&psi| self.input_fidelity(psi)).sum::<f64>() / 6.0
    }
}

fn octahedron() -> [[C64; 2]; 6] {
    let h = FRAC_1_SQRT_2;
    [
        [ONE, ZERO],
        [ZERO, ONE],
        [C64::new(h, 0.0), C64::new(h, 0.0)],
        [C64::new(h, 0.0), C64::new(-h, 0.0)],
        [C64::new(h, 0.0), C64::new(0.0, h)],
        [C64::new(h, 0.0), C64::new(0.0, -h)],
    ]
}

/// Bloch-uniform pure state: `cos(theta)` uniform on `[-1, 1]`, azimuth
/// uniform.
pub fn bloch_uniform<R: Rng + ?Sized>(rng: &mut R) -> [C64; 2] {
    let z: f64 = 2.0 * rng.random::<f64>() - 1.0;
    let phi = TAU * rng.random::<f64>();
    let c = ((1.0 + z) / 2.0).max(0.0).sqrt();
    let s = ((1.0 - z) / 2.0).max(0.0).sqrt();
    [C64::new(c, 0.0), C64::from_polar(s, phi)]
}

const TUNE_STARTS: usize = 6;

/// Finds local rotations maximising the exact average fidelity.
pub fn tune_protocol(rho2: &ComplexMatrix, seed: u64) -> Result<(ProtocolSettings, f64)> {
    rho2.require_density()?;
    let nm = NelderMead { max_iter: 20_000, f_tol: 1e-11, x_tol: 1e-7 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5E_ED0F_7E1E);
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut converged = false;
    for start in 0..TUNE_STARTS {
        let x0: Vec<f64> =
            if start == 0 { alloc::vec![0.0; 9] } else { (0..9).map(|_| TAU * rng.random::<f64>()).collect() };
        let m = nm.minimize(
            |x| match Protocol::new(rho2, &ProtocolSettings::from_slice(x)) {
                Ok(p) => -p.average_fidelity(),
                Err(_) => f64::NAN,
            },
            &x0,
            0.7,
        );
        converged |= m.converged;
        if best.as_ref().is_none_or(|b| -m.value > b.0) {
            best = Some((-m.value, m.x));
        }
    }
    let (value, x) = best.expect("at least one start");
    if !converged {
        return Err(Error::NoConvergence { what: "teleportation rotation search", residual: f64::NAN });
    }
    Ok((ProtocolSettings::from_slice(&x), value))
}

/// Running sums of sampled fidelities.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct McPartial {
    pub n: u64,
    pub sum: f64,
    pub sum_sq: f64,
}

impl McPartial {
    pub fn merge(&mut self, o: McPartial) {
        self.n += o.n;
        self.sum += o.sum;
        self.sum_sq += o.sum_sq;
    }

    pub fn mean(&self) -> f64 {
        self.sum / self.n as f64
    }

    pub fn stderr(&self) -> f64 {
        if self.n < 2 {
            return f64::INFINITY;
        }
        let n = self.n as f64;
        let var = ((self.sum_sq - self.sum * self.sum / n) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    }
}

/// Samples per independently seeded batch.
pub const MC_BATCH: u64 = 1 << 16;

/// Runs batch `batch` (covering samples `batch * MC_BATCH ..`) of at most
/// `len` samples.
pub fn mc_batch(protocol: &Protocol, seed: u64, batch: u64, len: u64) -> McPartial {
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, batch));
    let mut acc = McPartial::default();
    for _ in 0..len {
        let psi = bloch_uniform(&mut rng);
        let branches = protocol.branches(psi);
        let total: f64 = branches.iter().map(|b| b.0).sum();
        let mut u = rng.random::<f64>() * total;
        let mut pick = 3;
        for (k, b) in branches.iter().enumerate() {
            if u < b.0 {
                pick = k;
                break;
            }
            u -= b.0;
        }
        let (p, pf) = branches[pick];
        let f = if p > 0.0 { pf / p } else { 0.0 };
        acc.n += 1;
        acc.sum += f;
        acc.sum_sq += f * f;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    /// Exact average fidelity of the tuned protocol.
    pub tuned: f64,
    pub settings: ProtocolSettings,
}

/// Sampled average fidelity of the best rotated standard protocol.
pub fn mc_teleport_fidelity(rho2: &ComplexMatrix, cfg: &McConfig) -> Result<McEstimate> {
    let (settings, tuned) = tune_protocol(rho2, cfg.seed)?;
    let protocol = Protocol::new(rho2, &settings)?;
    let mut acc = McPartial::default();
    let batches = cfg.samples.div_ceil(MC_BATCH);
    for b in 0..batches {
        let len = MC_BATCH.min(cfg.samples - b * MC_BATCH);
        acc.merge(mc_batch(&protocol, cfg.seed, b, len));
    }
    Ok(McEstimate { mean: acc.mean(), stderr: acc.stderr(), tuned, settings })
}

/// `sum_s p_s F(rho_s)` over the assistant's two outcomes along `n`;
/// zero-probability outcomes are skipped.
pub fn csr_conditioned_fidelity(psi: &PureState3, n: Vec3) -> Result<f64> {
    conditioned(&psi.density(), n)
}

fn conditioned(rho: &ComplexMatrix, n: Vec3) -> Result<f64> {
    let mut total = 0.0;
    for outcome in [Outcome::Plus, Outcome::Minus] {
        match condition_on_assistant(rho, n, outcome) {
            Ok((p, ac)) => total += p * tele_fidelity(&ac)?,
            Err(Error::DegenerateOutcome(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CsrOracle {
    pub fidelity: f64,
    pub axis: Vec3,
}

const GRID_POLAR: usize = 16;
const GRID_AZIMUTH: usize = 32;
const CSR_STARTS: usize = 3;

fn polar_axis(t: f64, p: f64) -> Vec3 {
    let (st, ct) = t.sin_cos();
    let (sp, cp) = p.sin_cos();
    [st * cp, st * sp, ct]
}

/// Conditioned reconstruction fidelity maximised over the assistant's axis.
pub fn csr_oracle(psi: &PureState3) -> Result<CsrOracle> {
    let rho = psi.density();
    let mut grid = Vec::with_capacity(GRID_POLAR * GRID_AZIMUTH + 2);
    for &(t, p) in &[(0.0, 0.0), (PI, 0.0)] {
        grid.push((conditioned(&rho, polar_axis(t, p))?, t, p));
    }
    for i in 0..GRID_POLAR {
        let t = PI * (i as f64 + 0.5) / GRID_POLAR as f64;
        for j in 0..GRID_AZIMUTH {
            let p = TAU * j as f64 / GRID_AZIMUTH as f64;
            grid.push((conditioned(&rho, polar_axis(t, p))?, t, p));
        }
    }
    grid.sort_by(|a, b| b.0.total_cmp(&a.0));

    let nm = NelderMead { max_iter: 2_000, f_tol: 1e-13, x_tol: 1e-8 };
    let mut best = CsrOracle { fidelity: grid[0].0, axis: polar_axis(grid[0].1, grid[0].2) };
    let mut converged = false;
    for &(_, t0, p0) in grid.iter().take(CSR_STARTS) {
        let m = nm.minimize(|x| conditioned(&rho, polar_axis(x[0], x[1])).map_or(f64::NAN, |f| -f), &[t0, p0], 0.1);
        converged |= m.converged;
        if -m.value > best.fidelity {
            best = CsrOracle { fidelity: -m.value, axis: polar_axis(m.x[0], m.x[1]) };
        }
    }
    if !converged {
        return Err(Error::NoConvergence { what: "conditioned reconstruction axis search", residual: f64::NAN });
    }
    Ok(best)
}
