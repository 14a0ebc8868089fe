//! Numerical semiflows `dφ_t/dt = G(φ_t)` with derivative propagation and boundary
//! derivative estimates from Julia quotients.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::VectorField;
use crate::herglotz::{check_in_disk, BoundaryPoint};
pub use crate::ode::OdeSettings;

/// Sampled points of a trajectory, with `∂φ_t/∂z` when requested.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<Complex64>,
    pub derivs: Option<Vec<Complex64>>,
}

fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Invalid(format!("time must be finite and >= 0, got {t}")));
    }
    Ok(())
}

/// `φ_t(z0)`.
pub fn integrate_flow<G: VectorField + ?Sized>(g: &G, z0: Complex64, t: f64, settings: &OdeSettings) -> Result<Complex64> {
    check_in_disk(z0)?;
    check_time(t)?;
    let y = crate::ode::integrate(|y: &[Complex64; 1]| [g.field(y[0])], [z0], 0.0, t, settings)?;
    Ok(y[0])
}

/// `(φ_t(z0), φ_t'(z0))`, the derivative from the variational equation
/// `d(∂φ)/dt = G'(φ)·∂φ`.
pub fn integrate_flow_with_derivative<G: VectorField + ?Sized>(
    g: &G,
    z0: Complex64,
    t: f64,
    settings: &OdeSettings,
) -> Result<(Complex64, Complex64)> {
    check_in_disk(z0)?;
    check_time(t)?;
    let y = crate::ode::integrate(
        |y: &[Complex64; 2]| [g.field(y[0]), g.field_derivative(y[0]) * y[1]],
        [z0, Complex64::new(1.0, 0.0)],
        0.0,
        t,
        settings,
    )?;
    Ok((y[0], y[1]))
}

/// The trajectory sampled at `samples + 1` equally spaced times in `[0, t]` (a single
/// sample when `t = 0`).
pub fn integrate_trajectory<G: VectorField + ?Sized>(
    g: &G,
    z0: Complex64,
    t: f64,
    samples: usize,
    with_derivative: bool,
    settings: &OdeSettings,
) -> Result<Trajectory> {
    check_in_disk(z0)?;
    check_time(t)?;
    if samples == 0 {
        return Err(Error::Invalid("at least one sample interval is required".into()));
    }
    if t == 0.0 {
        let one = Complex64::new(1.0, 0.0);
        return Ok(Trajectory { times: vec![0.0], points: vec![z0], derivs: with_derivative.then(|| vec![one]) });
    }
    let mut times = vec![0.0];
    let mut points = vec![z0];
    let mut derivs = vec![Complex64::new(1.0, 0.0)];
    let mut y = [z0, Complex64::new(1.0, 0.0)];
    for j in 1..=samples {
        let t0 = t * (j - 1) as f64 / samples as f64;
        let t1 = t * j as f64 / samples as f64;
        y = crate::ode::integrate(
            |y: &[Complex64; 2]| [g.field(y[0]), g.field_derivative(y[0]) * y[1]],
            y,
            t0,
            t1,
            settings,
        )?;
        times.push(t1);
        points.push(y[0]);
        derivs.push(y[1]);
    }
    Ok(Trajectory { times, points, derivs: with_derivative.then_some(derivs) })
}

/// Default radii `1 − 2^{−k}`, `k = 4..=14`.
pub fn default_radii() -> Vec<f64> {
    (4..=14).map(|k| 1.0 - 2f64.powi(-k)).collect()
}

/// `((1 − |z|²)/|z − σ|²)·(|w − σ|²/(1 − |w|²))` for `w = φ(z)`.
pub fn julia_quotient(z: Complex64, w: Complex64, sigma: BoundaryPoint) -> f64 {
    let s = sigma.point();
    (1.0 - z.norm_sqr()) / (z - s).norm_sqr() * (w - s).norm_sqr() / (1.0 - w.norm_sqr())
}

/// Julia quotients of `map` along the radius to `σ` at the given radii.
pub fn radial_julia_quotients<M>(map: M, sigma: BoundaryPoint, radii: &[f64]) -> Result<Vec<f64>>
where
    M: Fn(Complex64) -> Result<Complex64>,
{
    radii
        .iter()
        .map(|&r| {
            let z = r * sigma.point();
            Ok(julia_quotient(z, map(z)?, sigma))
        })
        .collect()
}

/// Tolerance target of the boundary-derivative estimate (relative).
pub const JULIA_TOL: f64 = 1e-3;

/// Extrapolates Julia quotients at radii `r_k` with halving `1 − r_k` to `r → 1⁻`
/// (Richardson in `1 − r`, two levels).
pub fn extrapolate_julia(quotients: &[f64]) -> Result<f64> {
    let n = quotients.len();
    if n < 4 {
        return Err(Error::Invalid("at least four radii are needed".into()));
    }
    let mut table = quotients.to_vec();
    for level in 1..=2 {
        let f = 2f64.powi(level);
        table = table.windows(2).map(|w| (f * w[1] - w[0]) / (f - 1.0)).collect();
    }
    let best = table[table.len() - 1];
    let prev = table[table.len() - 2];
    let increment = (best - prev).abs() / best.abs().max(f64::MIN_POSITIVE);
    if !(increment <= 10.0 * JULIA_TOL) {
        return Err(Error::ExtrapolationDivergence { increment });
    }
    Ok(best)
}

/// Estimate of `φ_t'(σ)` at a boundary regular fixed point `σ`.
///
/// Radii must satisfy `1 − r_{k+1} = (1 − r_k)/2`; `None` uses [`default_radii`].
pub fn estimate_boundary_derivative<G: VectorField + ?Sized>(
    g: &G,
    sigma: BoundaryPoint,
    t: f64,
    settings: &OdeSettings,
    radii: Option<&[f64]>,
) -> Result<f64> {
    let default = default_radii();
    let radii = radii.unwrap_or(&default);
    let q = radial_julia_quotients(|z| integrate_flow(g, z, t, settings), sigma, radii)?;
    extrapolate_julia(&q)
}

/// Final distances of sample trajectories to the Denjoy–Wolff point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttractionReport {
    pub initial: Vec<f64>,
    pub final_: Vec<f64>,
    /// True when every sample ended closer to `τ` than it started.
    pub attracted: bool,
}

/// Integrates each sample to `t_max` and compares its distance to `τ` before and after:
/// Euclidean for `|τ| < 1`, and `1 − Re(w τ̄)` for `|τ| = 1`.
pub fn dw_attraction_check<G: VectorField + ?Sized>(
    g: &G,
    tau: Complex64,
    samples: &[Complex64],
    t_max: f64,
    settings: &OdeSettings,
) -> Result<AttractionReport> {
    let boundary = (tau.norm() - 1.0).abs() <= crate::generator::BOUNDARY_TOL;
    let dist = |w: Complex64| if boundary { 1.0 - (w * tau.conj()).re } else { (w - tau).norm() };
    let mut initial = Vec::with_capacity(samples.len());
    let mut final_ = Vec::with_capacity(samples.len());
    for &z in samples {
        initial.push(dist(z));
        final_.push(dist(integrate_flow(g, z, t_max, settings)?));
    }
    let attracted = initial.iter().zip(&final_).all(|(a, b)| b < a);
    Ok(AttractionReport { initial, final_, attracted })
}
