//! Dense complex/real linear algebra for one to three qubits.
//!
//! Only what the analysis needs: matrices of dimension 2, 4 or 8, Kronecker
//! products, partial traces over qubits, Hermitian eigenvalues by cyclic
//! Jacobi rotations, and singular values / trace norms of 3x3 real matrices.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use crate::tol::{HERM_TOL, JACOBI_MAX_SWEEPS, JACOBI_OFF_TOL, TRACE_TOL};
use crate::{Error, Result};

pub type C64 = Complex64;
pub type Vec3 = [f64; 3];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix of dimension 2, 4 or 8, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 | 8 => Ok(()),
        _ => Err(Error::Dimension(dim)),
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, data: vec![ZERO; dim * dim] })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        Ok(m)
    }

    pub fn from_rows(dim: usize, data: Vec<C64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::Dimension(data.len()));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_diag(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        Ok(m)
    }

    /// `|v><v|`.
    pub fn outer(v: &[C64]) -> Result<Self> {
        let dim = v.len();
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn scale(&self, k: C64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * k).collect() }
    }

    /// `U A U^dagger`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        &(u * self) * &u.adjoint()
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// max |A_ij - conj(A_ji)|.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn require_hermitian(&self) -> Result<()> {
        let dev = self.hermitian_deviation();
        if dev <= HERM_TOL {
            Ok(())
        } else {
            Err(Error::NotHermitian(dev))
        }
    }

    /// Hermitian with unit trace. Positivity is not checked here.
    pub fn require_density(&self) -> Result<()> {
        self.require_hermitian()?;
        let tr = self.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::Trace(tr));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        ComplexMatrix { dim: n, data: out }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix { dim: 2, data: vec![ZERO, ONE, ONE, ZERO] }
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix { dim: 2, data: vec![ZERO, -I, I, ZERO] }
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix { dim: 2, data: vec![ONE, ZERO, ZERO, -ONE] }
}

/// Pauli matrix by index: 0 = x, 1 = y, 2 = z.
pub fn pauli(i: usize) -> ComplexMatrix {
    match i {
        0 => sigma_x(),
        1 => sigma_y(),
        2 => sigma_z(),
        _ => panic!("Pauli index {i} out of range"),
    }
}

/// `n . sigma` for a real 3-vector.
pub fn bloch_operator(n: Vec3) -> ComplexMatrix {
    ComplexMatrix {
        dim: 2,
        data: vec![C64::new(n[2], 0.0), C64::new(n[0], -n[1]), C64::new(n[0], n[1]), C64::new(-n[2], 0.0)],
    }
}

/// Single-qubit unitary `Rz(alpha) Ry(beta) Rz(gamma)`.
pub fn su2_zyz(alpha: f64, beta: f64, gamma: f64) -> ComplexMatrix {
    let (sb, cb) = (beta / 2.0).sin_cos();
    let e = |t: f64| C64::from_polar(1.0, t);
    ComplexMatrix {
        dim: 2,
        data: vec![
            e(-(alpha + gamma) / 2.0) * cb,
            -e(-(alpha - gamma) / 2.0) * sb,
            e((alpha - gamma) / 2.0) * sb,
            e((alpha + gamma) / 2.0) * cb,
        ],
    }
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dim = a.dim * b.dim;
    if dim > 8 {
        return Err(Error::Dimension(dim));
    }
    let mut out = ComplexMatrix::zeros(dim)?;
    for i in 0..a.dim {
        for j in 0..a.dim {
            let x = a[(i, j)];
            for k in 0..b.dim {
                for l in 0..b.dim {
                    out[(i * b.dim + k, j * b.dim + l)] = x * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Reduced density matrix over the qubits in `keep` (qubit 0 is the most
/// significant bit of the basis index).
pub fn partial_trace(rho: &ComplexMatrix, keep: &[usize]) -> Result<ComplexMatrix> {
    rho.require_density()?;
    partial_trace_unnormalized(rho, keep)
}

/// Same as [`partial_trace`] without the density-matrix precondition; used on
/// projected (sub-normalised) operators.
pub fn partial_trace_unnormalized(rho: &ComplexMatrix, keep: &[usize]) -> Result<ComplexMatrix> {
    let n = rho.n_qubits();
    if keep.is_empty() || keep.len() >= n {
        return Err(Error::Subsystems(format!("keep {keep:?} of {n} qubits")));
    }
    let mut sorted: Vec<usize> = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != keep.len() || sorted.iter().any(|&q| q >= n) {
        return Err(Error::Subsystems(format!("keep {keep:?} of {n} qubits")));
    }
    let bit = |idx: usize, q: usize| (idx >> (n - 1 - q)) & 1;
    let kept_index = |idx: usize| sorted.iter().fold(0usize, |acc, &q| (acc << 1) | bit(idx, q));
    let traced_mask: usize = (0..n).filter(|q| !sorted.contains(q)).fold(0, |m, q| m | (1 << (n - 1 - q)));

    let mut out = ComplexMatrix::zeros(1 << sorted.len())?;
    for i in 0..rho.dim {
        for j in 0..rho.dim {
            if i & traced_mask == j & traced_mask {
                out[(kept_index(i), kept_index(j))] += rho[(i, j)];
            }
        }
    }
    Ok(out)
}

/// Eigenvalues of a Hermitian matrix, descending, by cyclic complex Jacobi
/// rotations.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    h.require_hermitian()?;
    let n = h.dim;
    let mut a = h.clone();
    // Symmetrise so the rotations act on an exactly Hermitian matrix.
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let scale = frobenius(&a).max(1.0);
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= JACOBI_OFF_TOL * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, p, q);
            }
        }
    }
    let residual = off_diagonal_norm(&a);
    if !converged && residual > JACOBI_OFF_TOL * scale {
        return Err(Error::NoConvergence { what: "Hermitian Jacobi", residual });
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    Ok(ev)
}

fn frobenius(a: &ComplexMatrix) -> f64 {
    a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Zero `a[p][q]` with `a <- J^dagger a J`, where `J = D G`: `D` removes the
/// phase of `a[p][q]` and `G` is the real Jacobi rotation.
fn jacobi_rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // J = [[c, s], [-s conj(phase), c conj(phase)]] on the (p, q) plane.
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;
    let n = a.dim;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

/// 3x3 real matrix; holds correlation matrices and their combinations.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RealMatrix3(pub [[f64; 3]; 3]);

impl RealMatrix3 {
    pub const ZERO: Self = Self([[0.0; 3]; 3]);

    pub fn identity() -> Self {
        Self::diag([1.0, 1.0, 1.0])
    }

    pub fn diag(d: Vec3) -> Self {
        let mut m = Self::ZERO;
        for i in 0..3 {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|x| *x *= k);
        m
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0.iter().flatten().zip(other.0.iter().flatten()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: Vec3) -> Vec3 {
        core::array::from_fn(|i| dot(self.0[i], v))
    }

    pub fn tmul_vec(&self, v: Vec3) -> Vec3 {
        core::array::from_fn(|j| (0..3).map(|i| self.0[i][j] * v[i]).sum())
    }

    /// `M^T M`.
    pub fn gram(&self) -> Self {
        self.transpose() * *self
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
}

impl Add for RealMatrix3 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl Sub for RealMatrix3 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for RealMatrix3 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for RealMatrix3 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        m
    }
}

/// Eigenvalues of a real symmetric 3x3 matrix, descending (cyclic Jacobi).
pub fn symmetric_eigenvalues3(s: &RealMatrix3) -> Result<Vec3> {
    if !s.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut a = s.0;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let avg = 0.5 * (a[i][j] + a[j][i]);
            a[i][j] = avg;
            a[j][i] = avg;
        }
    }
    let scale = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    let off = |a: &[[f64; 3]; 3]| (2.0 * (a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2))).sqrt();
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off(&a) <= JACOBI_OFF_TOL * scale {
            converged = true;
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let apq = a[p][q];
            if apq == 0.0 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            for k in 0..3 {
                let akp = a[k][p];
                let akq = a[k][q];
                a[k][p] = c * akp - s * akq;
                a[k][q] = s * akp + c * akq;
            }
            for k in 0..3 {
                let apk = a[p][k];
                let aqk = a[q][k];
                a[p][k] = c * apk - s * aqk;
                a[q][k] = s * apk + c * aqk;
            }
            a[p][q] = 0.0;
            a[q][p] = 0.0;
        }
    }
    let residual = off(&a);
    if !converged && residual > JACOBI_OFF_TOL * scale {
        return Err(Error::NoConvergence { what: "symmetric Jacobi", residual });
    }
    let mut ev = [a[0][0], a[1][1], a[2][2]];
    ev.sort_by(|x, y| y.total_cmp(x));
    Ok(ev)
}

/// Singular values of a 3x3 real matrix, descending.
///
/// One-sided Jacobi: plane rotations orthogonalise the columns and the
/// column norms are the singular values. Small singular values keep absolute
/// accuracy near machine epsilon, which a square root of the eigenvalues of
/// `M^T M` would not.
pub fn singular_values_3x3(m: &RealMatrix3) -> Result<Vec3> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut col: [Vec3; 3] = core::array::from_fn(|j| [m.0[0][j], m.0[1][j], m.0[2][j]]);
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            let alpha = dot(col[p], col[p]);
            let beta = dot(col[q], col[q]);
            let gamma = dot(col[p], col[q]);
            if gamma.abs() <= 4.0 * f64::EPSILON * (alpha * beta).sqrt() {
                continue;
            }
            rotated = true;
            let zeta = (beta - alpha) / (2.0 * gamma);
            let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
            let c = 1.0 / (1.0 + t * t).sqrt();
            let s = c * t;
            let (a, b) = (col[p], col[q]);
            col[p] = core::array::from_fn(|i| c * a[i] - s * b[i]);
            col[q] = core::array::from_fn(|i| s * a[i] + c * b[i]);
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { what: "one-sided Jacobi SVD", residual: f64::NAN });
    }
    let mut sv = col.map(norm);
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

/// Sum of singular values.
pub fn trace_norm(m: &RealMatrix3) -> Result<f64> {
    Ok(singular_values_3x3(m)?.iter().sum())
}

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn normalize(a: Vec3) -> Vec3 {
    let n = norm(a);
    [a[0] / n, a[1] / n, a[2] / n]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn phi_plus() -> ComplexMatrix {
        let s = 0.5f64.sqrt();
        ComplexMatrix::outer(&[c(s), ZERO, ZERO, c(s)]).unwrap()
    }

    #[test]
    fn kron_identities_and_paulis() {
        let i2 = ComplexMatrix::identity(2).unwrap();
        assert_eq!(kron(&i2, &i2).unwrap(), ComplexMatrix::identity(4).unwrap());
        let zz = kron(&sigma_z(), &sigma_z()).unwrap();
        assert_eq!(zz, ComplexMatrix::from_real_diag(&[1.0, -1.0, -1.0, 1.0]).unwrap());
        let xi = kron(&sigma_x(), &i2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if (i + 2) % 4 == j { ONE } else { ZERO };
                assert_eq!(xi[(i, j)], expect, "({i},{j})");
            }
        }
    }

    #[test]
    fn kron_rejects_oversized_product() {
        let a = ComplexMatrix::identity(4).unwrap();
        assert_eq!(kron(&a, &a), Err(Error::Dimension(16)));
    }

    #[test]
    fn dimension_must_be_qubit_sized() {
        assert_eq!(ComplexMatrix::zeros(3), Err(Error::Dimension(3)));
    }

    #[test]
    fn partial_trace_examples() {
        let half = ComplexMatrix::from_real_diag(&[0.5, 0.5]).unwrap();
        assert!(partial_trace(&phi_plus(), &[0]).unwrap().max_abs_diff(&half) < 1e-15);

        let mut ket = [ZERO; 8];
        ket[0] = ONE;
        let rho000 = ComplexMatrix::outer(&ket).unwrap();
        let r02 = partial_trace(&rho000, &[0, 2]).unwrap();
        assert_eq!(r02, ComplexMatrix::from_real_diag(&[1.0, 0.0, 0.0, 0.0]).unwrap());

        let s = 0.5f64.sqrt();
        let mut ghz = [ZERO; 8];
        ghz[0] = c(s);
        ghz[7] = c(s);
        let rho = ComplexMatrix::outer(&ghz).unwrap();
        let ac = partial_trace(&rho, &[0, 2]).unwrap();
        // Brute force: sum over the traced B bit of rho[(a b c), (a' b c')].
        let mut oracle = ComplexMatrix::zeros(4).unwrap();
        for a in 0..2 {
            for cc in 0..2 {
                for a2 in 0..2 {
                    for c2 in 0..2 {
                        for b in 0..2 {
                            oracle[(2 * a + cc, 2 * a2 + c2)] += rho[(4 * a + 2 * b + cc, 4 * a2 + 2 * b + c2)];
                        }
                    }
                }
            }
        }
        assert!(ac.max_abs_diff(&oracle) < 1e-15);
        let expect = ComplexMatrix::from_real_diag(&[0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!(ac.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        let rho = phi_plus();
        assert!(matches!(partial_trace(&rho, &[]), Err(Error::Subsystems(_))));
        assert!(matches!(partial_trace(&rho, &[2]), Err(Error::Subsystems(_))));
        assert!(matches!(partial_trace(&rho, &[0, 0]), Err(Error::Subsystems(_))));
        let mut bad = rho.clone();
        bad[(0, 1)] = c(0.3);
        assert!(matches!(partial_trace(&bad, &[0]), Err(Error::NotHermitian(_))));
        let doubled = rho.scale(c(2.0));
        assert!(matches!(partial_trace(&doubled, &[0]), Err(Error::Trace(_))));
    }

    #[test]
    fn eigenvalue_examples() {
        let ev = hermitian_eigenvalues(&sigma_x()).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-12 && (ev[1] + 1.0).abs() < 1e-12);
        let ev = hermitian_eigenvalues(&ComplexMatrix::from_real_diag(&[0.3, 0.7]).unwrap()).unwrap();
        assert_eq!(ev, vec![0.7, 0.3]);
        let ev = hermitian_eigenvalues(&sigma_y()).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-12 && (ev[1] + 1.0).abs() < 1e-12);
        let ac = ComplexMatrix::from_real_diag(&[0.5, 0.0, 0.0, 0.5]).unwrap();
        assert_eq!(hermitian_eigenvalues(&ac).unwrap(), vec![0.5, 0.5, 0.0, 0.0]);
        let ev = hermitian_eigenvalues(&phi_plus()).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-12);
        assert!(ev[1..].iter().all(|e| e.abs() < 1e-12));
    }

    #[test]
    fn eigenvalues_reject_non_hermitian() {
        let mut m = sigma_x();
        m[(0, 1)] = c(2.0);
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn singular_value_examples() {
        let sv = singular_values_3x3(&RealMatrix3::diag([1.0, -1.0, 0.0])).unwrap();
        assert_eq!(sv, [1.0, 1.0, 0.0]);
        assert_eq!(singular_values_3x3(&RealMatrix3::ZERO).unwrap(), [0.0; 3]);
        assert_eq!(singular_values_3x3(&RealMatrix3::diag([0.0, 0.0, 1.0])).unwrap(), [1.0, 0.0, 0.0]);
        let mut nan = RealMatrix3::ZERO;
        nan.0[1][2] = f64::NAN;
        assert_eq!(singular_values_3x3(&nan), Err(Error::NonFinite));
    }

    #[test]
    fn trace_norm_examples() {
        let bell = RealMatrix3::diag([1.0, -1.0, 1.0]);
        assert!((trace_norm(&bell).unwrap() - 3.0).abs() < 1e-12);
        assert!((trace_norm(&RealMatrix3::diag([0.0, 0.0, 1.0])).unwrap() - 1.0).abs() < 1e-12);
        let sum = bell + RealMatrix3::diag([0.0, 0.0, 1.0]);
        assert!((trace_norm(&sum).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn su2_is_unitary() {
        let u = su2_zyz(0.3, 1.1, -2.0);
        let id = &u * &u.adjoint();
        assert!(id.max_abs_diff(&ComplexMatrix::identity(2).unwrap()) < 1e-14);
    }

    #[test]
    fn singular_values_stress() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for k in 0..20_000 {
            let mut m =
                RealMatrix3(core::array::from_fn(|_| core::array::from_fn(|_| 2.0 * rng.random::<f64>() - 1.0)));
            match k % 4 {
                // rank one
                1 => {
                    let (u, v) = (m.0[0], m.0[1]);
                    m = RealMatrix3(core::array::from_fn(|i| core::array::from_fn(|j| u[i] * v[j])));
                }
                // repeated columns
                2 => {
                    for row in m.0.iter_mut() {
                        row[2] = row[0];
                    }
                }
                // entries of very different scale
                3 => m.0[2] = m.0[2].map(|x| x * 1e-9),
                _ => {}
            }
            let sv = singular_values_3x3(&m).unwrap();
            let frob: f64 = m.0.iter().flatten().map(|x| x * x).sum();
            assert!((sv.iter().map(|s| s * s).sum::<f64>() - frob).abs() < 1e-13);
            assert!((sv[0] * sv[1] * sv[2] - m.det().abs()).abs() < 1e-13);
            assert!(sv[0] >= sv[1] && sv[1] >= sv[2] && sv[2] >= 0.0);
        }
    }

    #[test]
    fn rank_one_trace_norm_has_no_square_root_noise() {
        let m = RealMatrix3([[0.0; 3], [0.0; 3], [0.3, -0.4, 0.0]]);
        let noisy = m + RealMatrix3([[1e-17, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        assert!((trace_norm(&noisy).unwrap() - 0.5).abs() < 1e-15);
    }
}
