//! Pauli decompositions of two- and three-qubit density matrices.
//!
//! Pauli indices run x, y, z. For three qubits the local Bloch vectors are
//! `a, b, c`, the pair correlation matrices are `Q` (AB), `R` (AC) and `S`
//! (BC), and `tau[i][j][k] = Tr(rho sigma_i (x) sigma_j (x) sigma_k)`.

use alloc::vec::Vec;

use crate::qmath::{
    bloch_operator, kron, norm, partial_trace_unnormalized, ComplexMatrix, RealMatrix3, Vec3, C64, ONE, ZERO,
};
use crate::tol::{DEGENERATE_PROB, ENTRY_TOL, IMAG_TOL, UNIT_TOL};
use crate::{Error, Result};

/// The three bipartite channels of a dealer/assistant/reconstructor triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelRole {
    DealerAssistant,
    DealerReconstructor,
    AssistantReconstructor,
}

impl ChannelRole {
    pub const ALL: [ChannelRole; 3] =
        [ChannelRole::DealerAssistant, ChannelRole::DealerReconstructor, ChannelRole::AssistantReconstructor];

    /// Qubits kept by the channel.
    pub fn qubits(self) -> [usize; 2] {
        match self {
            ChannelRole::DealerAssistant => [0, 1],
            ChannelRole::DealerReconstructor => [0, 2],
            ChannelRole::AssistantReconstructor => [1, 2],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ChannelRole::DealerAssistant => "AB",
            ChannelRole::DealerReconstructor => "AC",
            ChannelRole::AssistantReconstructor => "BC",
        }
    }
}

/// `Tr(rho P)` for the Pauli string `ops` (0 = identity, 1..=3 = x, y, z;
/// `ops[0]` acts on the most significant qubit).
///
/// Each Pauli string has a single non-zero entry per column, so the trace is
/// a sum of `dim` terms.
pub fn pauli_expectation(rho: &ComplexMatrix, ops: &[u8]) -> C64 {
    let n = ops.len();
    debug_assert_eq!(1 << n, rho.dim());
    let mut flip = 0usize;
    for (q, &op) in ops.iter().enumerate() {
        if op == 1 || op == 2 {
            flip |= 1 << (n - 1 - q);
        }
    }
    let mut acc = ZERO;
    for j in 0..rho.dim() {
        let mut elem = ONE;
        for (q, &op) in ops.iter().enumerate() {
            let bit = (j >> (n - 1 - q)) & 1;
            match (op, bit) {
                // Y|0> = i|1>, Y|1> = -i|0>
                (2, 0) => elem *= C64::new(0.0, 1.0),
                (2, _) => elem *= C64::new(0.0, -1.0),
                (3, 1) => elem = -elem,
                _ => {}
            }
        }
        acc += rho[(j, j ^ flip)] * elem;
    }
    acc
}

fn real_expectation(rho: &ComplexMatrix, ops: &[u8]) -> Result<f64> {
    let v = pauli_expectation(rho, ops);
    if v.im.abs() > IMAG_TOL {
        return Err(Error::NotHermitian(v.im.abs()));
    }
    if v.re.abs() > 1.0 + ENTRY_TOL {
        return Err(Error::Config(alloc::format!("Pauli expectation {} outside [-1, 1]", v.re)));
    }
    Ok(v.re)
}

/// Tensor product of Paulis (0 = identity) as a dense matrix.
pub fn pauli_string(ops: &[u8]) -> ComplexMatrix {
    let single = |op: u8| match op {
        0 => ComplexMatrix::identity(2).unwrap(),
        k => crate::qmath::pauli(usize::from(k - 1)),
    };
    let mut m = single(ops[0]);
    for &op in &ops[1..] {
        m = kron(&m, &single(op)).expect("at most three qubits");
    }
    m
}

/// Local Bloch vectors and correlation matrix of a two-qubit state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochDecomp2 {
    pub r: Vec3,
    pub s: Vec3,
    pub t: RealMatrix3,
}

pub fn bloch2(rho: &ComplexMatrix) -> Result<BlochDecomp2> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(rho.dim()));
    }
    rho.require_density()?;
    let mut d = BlochDecomp2 { r: [0.0; 3], s: [0.0; 3], t: RealMatrix3::ZERO };
    for i in 0..3u8 {
        d.r[i as usize] = real_expectation(rho, &[i + 1, 0])?;
        d.s[i as usize] = real_expectation(rho, &[0, i + 1])?;
        for j in 0..3u8 {
            d.t.0[i as usize][j as usize] = real_expectation(rho, &[i + 1, j + 1])?;
        }
    }
    Ok(d)
}

impl BlochDecomp2 {
    /// `1/4 (I + r.sigma (x) I + I (x) s.sigma + sum t_ij sigma_i (x) sigma_j)`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut terms: Vec<([u8; 2], f64)> = alloc::vec![([0, 0], 1.0)];
        for i in 0..3u8 {
            terms.push(([i + 1, 0], self.r[i as usize]));
            terms.push(([0, i + 1], self.s[i as usize]));
            for j in 0..3u8 {
                terms.push(([i + 1, j + 1], self.t.0[i as usize][j as usize]));
            }
        }
        sum_terms(terms.iter().map(|(ops, c)| (&ops[..], *c)), 0.25)
    }
}

fn sum_terms<'a>(terms: impl Iterator<Item = (&'a [u8], f64)>, prefactor: f64) -> ComplexMatrix {
    let mut acc: Option<ComplexMatrix> = None;
    for (ops, c) in terms {
        if c == 0.0 {
            continue;
        }
        let term = pauli_string(ops).scale(C64::new(c * prefactor, 0.0));
        acc = Some(match acc {
            None => term,
            Some(a) => &a + &term,
        });
    }
    acc.expect("identity term is always present")
}

/// Three-body correlation tensor `t_ijk`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CorrelationTensor(pub [[[f64; 3]; 3]; 3]);

impl CorrelationTensor {
    /// `out[i][k] = sum_j n_j tau[i][j][k]`; `n` must be a unit vector.
    pub fn contract_assistant(&self, n: Vec3) -> Result<RealMatrix3> {
        let len = norm(n);
        if !len.is_finite() || (len - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit(len));
        }
        Ok(self.contract_unchecked(n))
    }

    pub(crate) fn contract_unchecked(&self, n: Vec3) -> RealMatrix3 {
        let mut m = RealMatrix3::ZERO;
        for i in 0..3 {
            for k in 0..3 {
                m.0[i][k] = (0..3).map(|j| n[j] * self.0[i][j][k]).sum();
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().flatten().map(|x| x.abs()).fold(0.0, f64::max)
    }
}

/// Full Pauli decomposition of a three-qubit state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochDecomp3 {
    pub a: Vec3,
    pub b: Vec3,
    pub c: Vec3,
    /// AB correlations.
    pub q: RealMatrix3,
    /// AC correlations.
    pub r: RealMatrix3,
    /// BC correlations.
    pub s: RealMatrix3,
    pub tau: CorrelationTensor,
}

pub fn bloch3(rho: &ComplexMatrix) -> Result<BlochDecomp3> {
    if rho.dim() != 8 {
        return Err(Error::Dimension(rho.dim()));
    }
    rho.require_density()?;
    let mut d = BlochDecomp3 {
        a: [0.0; 3],
        b: [0.0; 3],
        c: [0.0; 3],
        q: RealMatrix3::ZERO,
        r: RealMatrix3::ZERO,
        s: RealMatrix3::ZERO,
        tau: CorrelationTensor::default(),
    };
    for i in 0..3u8 {
        let iu = i as usize;
        d.a[iu] = real_expectation(rho, &[i + 1, 0, 0])?;
        d.b[iu] = real_expectation(rho, &[0, i + 1, 0])?;
        d.c[iu] = real_expectation(rho, &[0, 0, i + 1])?;
        for j in 0..3u8 {
            let ju = j as usize;
            d.q.0[iu][ju] = real_expectation(rho, &[i + 1, j + 1, 0])?;
            d.r.0[iu][ju] = real_expectation(rho, &[i + 1, 0, j + 1])?;
            d.s.0[iu][ju] = real_expectation(rho, &[0, i + 1, j + 1])?;
            for k in 0..3u8 {
                d.tau.0[iu][ju][k as usize] = real_expectation(rho, &[i + 1, j + 1, k + 1])?;
            }
        }
    }
    Ok(d)
}

impl BlochDecomp3 {
    /// Rebuilds `rho_ABC` from its 64 Pauli coefficients.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut terms: Vec<([u8; 3], f64)> = alloc::vec![([0, 0, 0], 1.0)];
        for i in 0..3u8 {
            let iu = i as usize;
            terms.push(([i + 1, 0, 0], self.a[iu]));
            terms.push(([0, i + 1, 0], self.b[iu]));
            terms.push(([0, 0, i + 1], self.c[iu]));
            for j in 0..3u8 {
                let ju = j as usize;
                terms.push(([i + 1, j + 1, 0], self.q.0[iu][ju]));
                terms.push(([i + 1, 0, j + 1], self.r.0[iu][ju]));
                terms.push(([0, i + 1, j + 1], self.s.0[iu][ju]));
                for k in 0..3u8 {
                    terms.push(([i + 1, j + 1, k + 1], self.tau.0[iu][ju][k as usize]));
                }
            }
        }
        sum_terms(terms.iter().map(|(ops, c)| (&ops[..], *c)), 0.125)
    }

    /// Correlation matrix of a bipartite channel.
    pub fn channel_matrix(&self, channel: ChannelRole) -> RealMatrix3 {
        match channel {
            ChannelRole::DealerAssistant => self.q,
            ChannelRole::DealerReconstructor => self.r,
            ChannelRole::AssistantReconstructor => self.s,
        }
    }
}

/// Sign of the assistant's projective outcome along `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn sign(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }
}

/// Projects the assistant onto `(I + s n.sigma)/2` and returns the outcome
/// probability with the normalised dealer-reconstructor state.
pub fn condition_on_assistant(rho: &ComplexMatrix, n: Vec3, outcome: Outcome) -> Result<(f64, ComplexMatrix)> {
    if rho.dim() != 8 {
        return Err(Error::Dimension(rho.dim()));
    }
    rho.require_density()?;
    let len = norm(n);
    if !len.is_finite() || (len - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit(len));
    }
    let id = ComplexMatrix::identity(2)?;
    let half = C64::new(0.5, 0.0);
    let proj = (&id + &bloch_operator(n).scale(C64::new(outcome.sign(), 0.0))).scale(half);
    let full = kron(&kron(&id, &proj)?, &id)?;
    let projected = &(&full * rho) * &full;
    let p = projected.trace().re;
    if p < DEGENERATE_PROB {
        return Err(Error::DegenerateOutcome(p));
    }
    let ac = partial_trace_unnormalized(&projected, &[0, 2])?.scale(C64::new(1.0 / p, 0.0));
    Ok((p, ac))
}
