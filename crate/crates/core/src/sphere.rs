//! Maximisation of a continuous function over unit 3-vectors: a Fibonacci
//! lattice scan followed by tangent-plane golden-section refinement.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // std, when linked, supplies these as inherent methods
use num_traits::Float;

use crate::qmath::{cross, dot, normalize, Vec3};
use crate::{Error, Result};

/// Quasi-uniform points on the unit sphere.
pub fn fibonacci_sphere(n: usize) -> Vec<Vec3> {
    let golden_angle = PI * (3.0 - 5.0f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let (s, c) = (golden_angle * i as f64).sin_cos();
            [r * c, r * s, z]
        })
        .collect()
}

/// Orthonormal pair spanning the tangent plane at unit vector `n`.
pub fn tangent_basis(n: Vec3) -> (Vec3, Vec3) {
    let helper = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = normalize(cross(n, helper));
    let e2 = cross(n, e1);
    (e1, e2)
}

/// Rotates `n` by angle `t` towards tangent direction `e`.
pub fn rotate_towards(n: Vec3, e: Vec3, t: f64) -> Vec3 {
    let (s, c) = t.sin_cos();
    normalize([n[0] * c + e[0] * s, n[1] * c + e[1] * s, n[2] * c + e[2] * s])
}

#[derive(Clone, Copy, Debug)]
pub struct AxisSearch {
    pub scan_nodes: usize,
    /// Number of well-separated scan maxima that get refined.
    pub starts: usize,
    pub max_rounds: usize,
    pub line_iters: usize,
    pub obj_tol: f64,
    pub angle_tol: f64,
}

impl Default for AxisSearch {
    fn default() -> Self {
        Self { scan_nodes: 512, starts: 3, max_rounds: 40, line_iters: 30, obj_tol: 1e-9, angle_tol: 1e-7 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisOptimum {
    pub value: f64,
    pub axis: Vec3,
}

/// Golden-section search for the maximum of `g` on `[lo, hi]`.
fn golden_max(mut g: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    let inv_phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    for _ in 0..iters {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = g(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximises `f` over the unit sphere. `f` is assumed even
/// (`f(n) = f(-n)`), which only affects how scan starts are de-duplicated.
pub fn maximize(mut f: impl FnMut(Vec3) -> f64, cfg: &AxisSearch) -> Result<AxisOptimum> {
    let nodes = fibonacci_sphere(cfg.scan_nodes);
    let mut scored: Vec<(f64, Vec3)> = nodes.iter().map(|&n| (f(n), n)).collect();
    if scored.iter().any(|(v, _)| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));

    let spacing = (4.0 * PI / cfg.scan_nodes as f64).sqrt();
    let min_sep = (3.0 * spacing).cos();
    let mut starts: Vec<Vec3> = Vec::with_capacity(cfg.starts);
    for &(_, n) in &scored {
        if starts.len() == cfg.starts {
            break;
        }
        if starts.iter().all(|s| dot(*s, n).abs() < min_sep) {
            starts.push(n);
        }
    }

    let mut best: Option<AxisOptimum> = None;
    let mut worst_gain = 0.0f64;
    let mut any_converged = false;
    for start in starts {
        let (opt, converged, gain) = refine(&mut f, start, 2.0 * spacing, cfg);
        any_converged |= converged;
        if !converged {
            worst_gain = worst_gain.max(gain);
        }
        if best.is_none_or(|b| opt.value > b.value) {
            best = Some(opt);
        }
    }
    if !any_converged {
        return Err(Error::NoConvergence { what: "axis search", residual: worst_gain });
    }
    best.ok_or(Error::Config("axis search needs at least one start".into()))
}

fn refine(f: &mut impl FnMut(Vec3) -> f64, start: Vec3, width: f64, cfg: &AxisSearch) -> (AxisOptimum, bool, f64) {
    let mut n = start;
    let mut best = f(n);
    let mut h = width;
    let mut gain = f64::INFINITY;
    for _ in 0..cfg.max_rounds {
        let before = best;
        let mut moved = 0.0f64;
        let (e1, e2) = tangent_basis(n);
        for e in [e1, e2] {
            let base = n;
            let (t, v) = golden_max(|t| f(rotate_towards(base, e, t)), -h, h, cfg.line_iters);
            if v > best {
                n = rotate_towards(base, e, t);
                best = v;
                moved = moved.max(t.abs());
            }
        }
        gain = best - before;
        if gain <= cfg.obj_tol && (moved <= cfg.angle_tol || h <= cfg.angle_tol) {
            return (AxisOptimum { value: best, axis: n }, true, gain);
        }
        h = if moved > 0.0 { (2.0 * moved).clamp(cfg.angle_tol, h) } else { h * 0.25 };
    }
    (AxisOptimum { value: best, axis: n }, false, gain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::norm;

    #[test]
    fn lattice_is_on_the_sphere() {
        let pts = fibonacci_sphere(512);
        assert_eq!(pts.len(), 512);
        assert!(pts.iter().all(|p| (norm(*p) - 1.0).abs() < 1e-14));
        let mean_z: f64 = pts.iter().map(|p| p[2]).sum::<f64>() / 512.0;
        assert!(mean_z.abs() < 1e-12);
    }

    #[test]
    fn finds_quadratic_form_maximum() {
        // max of n^T A n is the top eigenvalue of A.
        let a = [[2.0, 0.5, 0.0], [0.5, 1.0, 0.3], [0.0, 0.3, -1.0]];
        let q = |n: Vec3| (0..3).map(|i| (0..3).map(|j| n[i] * a[i][j] * n[j]).sum::<f64>()).sum::<f64>();
        let opt = maximize(q, &AxisSearch::default()).unwrap();
        let top = crate::qmath::symmetric_eigenvalues3(&crate::qmath::RealMatrix3(a)).unwrap()[0];
        assert!((opt.value - top).abs() < 1e-10, "{} vs {top}", opt.value);
    }

    #[test]
    fn golden_section_brackets_peak() {
        let (x, v) = golden_max(|t| -(t - 0.3) * (t - 0.3), -1.0, 1.0, 60);
        assert!((x - 0.3).abs() < 1e-8 && v.abs() < 1e-15);
    }
}
