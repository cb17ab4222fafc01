//! Bell-CHSH value of two-qubit channels.
//!
//! With `m1 >= m2 >= m3` the eigenvalues of `T^T T`, the M-value is
//! `m1 + m2` and the maximal CHSH value is `2 sqrt(M)`. [`chsh_optimize`]
//! reaches the same number by searching measurement settings directly.

use alloc::vec::Vec;

#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use crate::correlations::{bloch2, bloch3, BlochDecomp3};
use crate::optim::NelderMead;
use crate::qmath::{dot, norm, normalize, symmetric_eigenvalues3, ComplexMatrix, RealMatrix3, Vec3};
use crate::sphere::{fibonacci_sphere, tangent_basis};
use crate::states::{AcinParams, PureState3};
use crate::{Error, Result};

/// Sum of the two largest eigenvalues of `T^T T`.
pub fn m_from_correlation(t: &RealMatrix3) -> Result<f64> {
    let ev = symmetric_eigenvalues3(&t.gram())?;
    Ok(ev[0].max(0.0) + ev[1].max(0.0))
}

pub fn s_from_m(m: f64) -> f64 {
    2.0 * m.max(0.0).sqrt()
}

pub fn m_value(rho2: &ComplexMatrix) -> Result<f64> {
    m_from_correlation(&bloch2(rho2)?.t)
}

pub fn s_value(rho2: &ComplexMatrix) -> Result<f64> {
    m_value(rho2).map(s_from_m)
}

/// Largest CHSH value over the dealer-assistant and dealer-reconstructor
/// channels.
pub fn s_max(psi: &PureState3) -> Result<f64> {
    Ok(bell_summary(psi)?.s_max)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellSummary {
    pub m_ab: f64,
    pub m_ac: f64,
    pub s_ab: f64,
    pub s_ac: f64,
    pub s_max: f64,
}

impl BellSummary {
    pub fn m_max(&self) -> f64 {
        self.m_ab.max(self.m_ac)
    }
}

pub fn summarize(d: &BlochDecomp3) -> Result<BellSummary> {
    let m_ab = m_from_correlation(&d.q)?;
    let m_ac = m_from_correlation(&d.r)?;
    let s_ab = s_from_m(m_ab);
    let s_ac = s_from_m(m_ac);
    Ok(BellSummary { m_ab, m_ac, s_ab, s_ac, s_max: s_ab.max(s_ac) })
}

pub fn bell_summary(psi: &PureState3) -> Result<BellSummary> {
    summarize(&bloch3(&psi.density())?)
}

/// `M = 1 - 4 (l1 l4 + l2 l3)^2 + 4 l0^2 |l2^2 - l3^2|` on the GHZ^R slice.
pub fn closed_m_ghzr(p: &AcinParams) -> Result<f64> {
    p.require_real()?;
    let [l0, l1, l2, l3, l4] = p.lambda();
    Ok(1.0 - 4.0 * (l1 * l4 + l2 * l3).powi(2) + 4.0 * l0 * l0 * (l2 * l2 - l3 * l3).abs())
}

/// Closed-form eigenvalues of `R^T R` (dealer-reconstructor), in the order
/// they are usually listed (not sorted).
pub fn closed_eigs_rtr(p: &AcinParams) -> Result<Vec3> {
    p.require_real()?;
    let [l0, l1, l2, l3, l4] = p.lambda();
    let (s0, s1, s2, s3, s4) = (l0 * l0, l1 * l1, l2 * l2, l3 * l3, l4 * l4);
    Ok([
        4.0 * s0 * s2,
        4.0 * s0 * s2 + 4.0 * (l1 * l2 + l3 * l4).powi(2),
        4.0 * s0 * s2 + 4.0 * s0 * (s4 - s3) + (s0 + s1 + s3 - s2 - s4).powi(2),
    ])
}

/// Closed-form eigenvalues of `Q^T Q` (dealer-assistant).
pub fn closed_eigs_qtq(p: &AcinParams) -> Result<Vec3> {
    p.require_real()?;
    let [l0, l1, l2, l3, l4] = p.lambda();
    let (s0, s1, s2, s3, s4) = (l0 * l0, l1 * l1, l2 * l2, l3 * l3, l4 * l4);
    Ok([
        4.0 * s0 * s3,
        4.0 * s0 * s3 + 4.0 * (l1 * l3 + l2 * l4).powi(2),
        4.0 * s0 * s3 + 4.0 * s0 * (s4 - s2) + (s0 + s1 + s2 - s3 - s4).powi(2),
    ])
}

/// Four CHSH measurement directions: A measures `a` or `a_prime`, B
/// measures `b` or `b_prime`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChshSettings {
    pub a: Vec3,
    pub a_prime: Vec3,
    pub b: Vec3,
    pub b_prime: Vec3,
}

/// `|E(a,b) + E(a',b) + E(a,b') - E(a',b')|` with `E(x, y) = x^T T y`.
pub fn chsh_value(t: &RealMatrix3, s: &ChshSettings) -> f64 {
    let e = |x: Vec3, y: Vec3| dot(x, t.mul_vec(y));
    (e(s.a, s.b) + e(s.a_prime, s.b) + e(s.a, s.b_prime) - e(s.a_prime, s.b_prime)).abs()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChshOptimum {
    pub s: f64,
    pub settings: ChshSettings,
}

const CHSH_GRID: usize = 256;
const CHSH_STARTS: usize = 4;

/// Best CHSH value over all projective settings.
///
/// For fixed `a, a'` the best `b, b'` point along `T^T (a + a')` and
/// `T^T (a - a')`, leaving `|T^T (a + a')| + |T^T (a - a')|` to maximise over
/// two unit vectors: a grid scan over pairs, then Nelder-Mead in tangent
/// coordinates from the best pairs.
pub fn chsh_optimize(rho2: &ComplexMatrix) -> Result<ChshOptimum> {
    chsh_optimize_correlation(&bloch2(rho2)?.t)
}

pub fn chsh_optimize_correlation(t: &RealMatrix3) -> Result<ChshOptimum> {
    if !t.is_finite() {
        return Err(Error::NonFinite);
    }
    let reduced = |a: Vec3, ap: Vec3| {
        let plus = t.tmul_vec([a[0] + ap[0], a[1] + ap[1], a[2] + ap[2]]);
        let minus = t.tmul_vec([a[0] - ap[0], a[1] - ap[1], a[2] - ap[2]]);
        norm(plus) + norm(minus)
    };

    let grid = fibonacci_sphere(CHSH_GRID);
    let images: Vec<Vec3> = grid.iter().map(|&a| t.tmul_vec(a)).collect();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(CHSH_GRID * (CHSH_GRID - 1) / 2);
    for i in 0..CHSH_GRID {
        for j in (i + 1)..CHSH_GRID {
            let (x, y) = (images[i], images[j]);
            let v = norm([x[0] + y[0], x[1] + y[1], x[2] + y[2]]) + norm([x[0] - y[0], x[1] - y[1], x[2] - y[2]]);
            pairs.push((v, i, j));
        }
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));

    let nm = NelderMead::default();
    let mut best: Option<(f64, Vec3, Vec3)> = None;
    let mut converged = false;
    for &(_, i, j) in pairs.iter().take(CHSH_STARTS) {
        let (a0, ap0) = (grid[i], grid[j]);
        let (e1, e2) = tangent_basis(a0);
        let (f1, f2) = tangent_basis(ap0);
        let lift = |x: &[f64]| {
            let a = normalize([
                a0[0] + x[0] * e1[0] + x[1] * e2[0],
                a0[1] + x[0] * e1[1] + x[1] * e2[1],
                a0[2] + x[0] * e1[2] + x[1] * e2[2],
            ]);
            let ap = normalize([
                ap0[0] + x[2] * f1[0] + x[3] * f2[0],
                ap0[1] + x[2] * f1[1] + x[3] * f2[1],
                ap0[2] + x[2] * f1[2] + x[3] * f2[2],
            ]);
            (a, ap)
        };
        let m = nm.minimize(
            |x| {
                let (a, ap) = lift(x);
                -reduced(a, ap)
            },
            &[0.0; 4],
            0.1,
        );
        converged |= m.converged;
        let (a, ap) = lift(&m.x);
        let v = reduced(a, ap);
        if best.is_none_or(|b| v > b.0) {
            best = Some((v, a, ap));
        }
    }
    let (_, a, a_prime) = best.ok_or(Error::Config("no CHSH start".into()))?;
    if !converged {
        return Err(Error::NoConvergence { what: "CHSH settings search", residual: f64::NAN });
    }
    let direction = |v: Vec3, fallback: Vec3| if norm(v) > 1e-300 { normalize(v) } else { fallback };
    let sum = [a[0] + a_prime[0], a[1] + a_prime[1], a[2] + a_prime[2]];
    let diff = [a[0] - a_prime[0], a[1] - a_prime[1], a[2] - a_prime[2]];
    let settings = ChshSettings {
        a,
        a_prime,
        b: direction(t.tmul_vec(sum), [0.0, 0.0, 1.0]),
        b_prime: direction(t.tmul_vec(diff), [1.0, 0.0, 0.0]),
    };
    Ok(ChshOptimum { s: chsh_value(t, &settings), settings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::ChannelRole;
    use crate::qmath::{C64, ZERO};
    use crate::states::{MsrParams, PureState3};
    use core::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn bell() -> ComplexMatrix {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        ComplexMatrix::outer(&[h, ZERO, ZERO, h]).unwrap()
    }

    #[test]
    fn m_value_examples() {
        assert!((m_value(&bell()).unwrap() - 2.0).abs() < 1e-12);
        let ac = PureState3::ghz().reduced_pair(ChannelRole::DealerReconstructor);
        assert!((m_value(&ac).unwrap() - 1.0).abs() < 1e-12);
        let mixed = ComplexMatrix::identity(4).unwrap().scale(C64::new(0.25, 0.0));
        assert_eq!(m_value(&mixed).unwrap(), 0.0);
    }

    #[test]
    fn s_value_examples() {
        assert!((s_value(&bell()).unwrap() - 2.0 * SQRT_2).abs() < 1e-12);
        assert!((s_max(&PureState3::ghz()).unwrap() - 2.0).abs() < 1e-12);
        for k in 0..=8 {
            let theta = core::f64::consts::FRAC_PI_2 * k as f64 / 8.0;
            let psi = crate::states::from_msr(&MsrParams::new(theta).unwrap());
            assert!((s_max(&psi).unwrap() - 2.0 * theta.cos()).abs() < 1e-7, "theta {theta}");
        }
    }

    #[test]
    fn closed_m_examples() {
        assert!((closed_m_ghzr(&AcinParams::ghz()).unwrap() - 1.0).abs() < 1e-15);
        let zero = AcinParams::new([1.0, 0.0, 0.0, 0.0, 0.0], 0.0).unwrap();
        assert_eq!(closed_m_ghzr(&zero).unwrap(), 1.0);
        for k in 0..=6 {
            let theta = core::f64::consts::FRAC_PI_2 * k as f64 / 6.0;
            let p = MsrParams::new(theta).unwrap().acin();
            assert!((closed_m_ghzr(&p).unwrap() - theta.cos().powi(2)).abs() < 1e-12);
        }
        assert!(closed_m_ghzr(&AcinParams::new([0.6, 0.8, 0.0, 0.0, 0.0], 2.0).unwrap()).is_err());
    }

    #[test]
    fn closed_eigenvalues_on_msr_family() {
        for k in 0..=6 {
            let theta = core::f64::consts::FRAC_PI_2 * k as f64 / 6.0;
            let p = MsrParams::new(theta).unwrap();
            let d = bloch3(&crate::states::from_msr(&p).density()).unwrap();
            for (closed, t) in [(closed_eigs_rtr(&p.acin()).unwrap(), d.r), (closed_eigs_qtq(&p.acin()).unwrap(), d.q)]
            {
                let mut c = closed;
                c.sort_by(|a, b| b.total_cmp(a));
                let numeric = symmetric_eigenvalues3(&t.gram()).unwrap();
                for (x, y) in c.iter().zip(numeric) {
                    assert!((x - y).abs() < 1e-10, "{c:?} vs {numeric:?}");
                }
            }
        }
    }

    #[test]
    fn chsh_examples() {
        let b = chsh_optimize(&bell()).unwrap();
        assert!((b.s - 2.0 * SQRT_2).abs() < 1e-4, "{}", b.s);
        let ac = PureState3::ghz().reduced_pair(ChannelRole::DealerReconstructor);
        assert!((chsh_optimize(&ac).unwrap().s - 2.0).abs() < 1e-4);
    }

    #[test]
    fn chsh_settings_reproduce_value() {
        let b = chsh_optimize(&bell()).unwrap();
        let t = bloch2(&bell()).unwrap().t;
        assert!((chsh_value(&t, &b.settings) - b.s).abs() < 1e-12);
        for v in [b.settings.a, b.settings.a_prime, b.settings.b, b.settings.b_prime] {
            assert!((norm(v) - 1.0).abs() < 1e-12);
        }
    }
}
