//! Zeros of a rational Herglotz function.

use nalgebra::DMatrix;
use num_complex::Complex64;

use std::f64::consts::TAU;

use super::{imag, AtomicHerglotz, BoundaryPoint};
use crate::error::{Error, Result};

/// Coefficients (ascending) of `N(z) = Σ_j a_j (s_j + z) Π_{k≠j} (s_k − z) + iγ Π_k (s_k − z)`,
/// the numerator of `p = N/D` with `D(z) = Π_k (s_k − z)`.
pub(crate) fn numerator(p: &AtomicHerglotz) -> Vec<Complex64> {
    let pts: Vec<Complex64> = p.atoms.iter().map(|a| a.point.point()).collect();
    let m = pts.len();
    let mut num = vec![Complex64::new(0.0, 0.0); m + 1];
    for (j, a) in p.atoms.iter().enumerate() {
        let mut poly = vec![pts[j] * a.mass, Complex64::new(a.mass, 0.0)];
        for (k, &s) in pts.iter().enumerate() {
            if k != j {
                poly = mul_linear(&poly, s, Complex64::new(-1.0, 0.0));
            }
        }
        for (c, t) in num.iter_mut().zip(&poly) {
            *c += t;
        }
    }
    let mut den = vec![imag(p.gamma)];
    for &s in &pts {
        den = mul_linear(&den, s, Complex64::new(-1.0, 0.0));
    }
    for (c, t) in num.iter_mut().zip(&den) {
        *c += t;
    }
    num
}

/// `poly · (c0 + c1 z)`.
fn mul_linear(poly: &[Complex64], c0: Complex64, c1: Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
    for (i, &c) in poly.iter().enumerate() {
        out[i] += c * c0;
        out[i + 1] += c * c1;
    }
    out
}

#[cfg(test)]
fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// All roots of a polynomial with nonzero leading coefficient, as companion-matrix eigenvalues.
pub(crate) fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let m = coeffs.len() - 1;
    let lead = coeffs[m];
    if lead.norm() == 0.0 {
        return Err(Error::RootFindingFailure("vanishing leading coefficient".into()));
    }
    if m == 1 {
        return Ok(vec![-coeffs[0] / lead]);
    }
    let mut comp = DMatrix::<Complex64>::zeros(m, m);
    for i in 1..m {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..m {
        comp[(i, m - 1)] = -coeffs[i] / lead;
    }
    let eig = comp
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::RootFindingFailure("Schur decomposition did not converge".into()))?;
    Ok(eig.iter().copied().collect())
}

/// `Im p(e^{iθ}) = γ + Σ m_j cot((θ − θ_j)/2)` and its θ-derivative.
fn boundary_imag(p: &AtomicHerglotz, theta: f64) -> (f64, f64) {
    let mut v = p.gamma;
    let mut d = 0.0;
    for a in &p.atoms {
        let (s, c) = (0.5 * (theta - a.point.theta)).sin_cos();
        v += a.mass * c / s;
        d -= 0.5 * a.mass / (s * s);
    }
    (v, d)
}

/// The zero of `Im p(e^{iθ})` on the arc `(lo, hi)` between consecutive atoms, where it
/// decreases from +∞ to −∞. Newton from `start`, safeguarded by bisection.
fn arc_zero(p: &AtomicHerglotz, mut lo: f64, mut hi: f64, start: f64) -> f64 {
    let mut x = if start > lo && start < hi { start } else { 0.5 * (lo + hi) };
    for _ in 0..200 {
        let (v, d) = boundary_imag(p, x);
        if v == 0.0 {
            return x;
        }
        if v > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - v / d;
        let next = if d < 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) || hi - lo <= 4.0 * f64::EPSILON * hi.abs() {
            return next;
        }
        x = next;
    }
    x
}

/// The zeros of `p ∈ 𝒫_m`, which are simple and lie on the unit circle, one on each arc
/// between consecutive atoms. Companion-matrix roots seed a bracketed Newton iteration in
/// the angle; the eigenvalues alone lose accuracy when atoms cluster.
pub(crate) fn unit_circle_zeros(p: &AtomicHerglotz) -> Result<Vec<BoundaryPoint>> {
    let seeds: Vec<f64> = polynomial_roots(&numerator(p))?.iter().map(|z| z.im.atan2(z.re)).collect();
    let angles: Vec<f64> = p.atoms.iter().map(|a| a.point.theta).collect();
    let m = angles.len();
    let mut zeros = Vec::with_capacity(m);
    for j in 0..m {
        let lo = angles[j];
        let hi = if j + 1 < m { angles[j + 1] } else { angles[0] + TAU };
        let start = seeds
            .iter()
            .map(|&s| lo + (s - lo).rem_euclid(TAU))
            .find(|&s| s > lo && s < hi)
            .unwrap_or(0.5 * (lo + hi));
        let theta = arc_zero(p, lo, hi, start);
        if !(theta > lo && theta < hi) {
            return Err(Error::RootFindingFailure(format!("no zero found on the arc ({lo}, {hi})")));
        }
        zeros.push(BoundaryPoint::new(theta));
    }
    Ok(zeros)
}
