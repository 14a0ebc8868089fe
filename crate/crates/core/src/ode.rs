//! Dormand–Prince 5(4) with PI step-size control for complex systems confined to the
//! unit disk.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Step-control settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSettings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
    /// Steps whose stages come closer than this to the unit circle are rejected.
    pub boundary_guard: f64,
}

impl Default for OdeSettings {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-12, max_step: 0.01, boundary_guard: 1e-13 }
    }
}

impl OdeSettings {
    pub fn validate(&self) -> Result<()> {
        let ok = [self.rel_tol, self.abs_tol, self.max_step, self.boundary_guard]
            .iter()
            .all(|x| x.is_finite() && *x > 0.0);
        if !ok {
            return Err(Error::Invalid("ODE settings must be finite and positive".into()));
        }
        Ok(())
    }
}

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// Difference between the fifth- and fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const EXPO: f64 = 0.17;
const BETA: f64 = 0.04;
const MAX_GROW: f64 = 5.0;
const MAX_SHRINK: f64 = 0.1;

/// Integrates `y' = f(y)` from `t0` to `t1 >= t0`. Component 0 is the point in the disk;
/// further components (e.g. variational derivatives) are unconstrained.
pub fn integrate<const N: usize, F>(
    f: F,
    y0: [Complex64; N],
    t0: f64,
    t1: f64,
    settings: &OdeSettings,
) -> Result<[Complex64; N]>
where
    F: Fn(&[Complex64; N]) -> [Complex64; N],
{
    settings.validate()?;
    if !(t1 >= t0) {
        return Err(Error::Invalid(format!("end time {t1} precedes start time {t0}")));
    }
    let limit = 1.0 - settings.boundary_guard;
    if !(y0[0].norm() < limit) {
        return Err(Error::BoundaryEscape { t: t0, modulus: y0[0].norm() });
    }
    let mut t = t0;
    let mut y = y0;
    if t1 == t0 {
        return Ok(y);
    }
    let mut h = settings.max_step.min(t1 - t0);
    let mut err_old: f64 = 1e-4;
    let mut k = [[Complex64::new(0.0, 0.0); N]; 7];
    k[0] = f(&y);
    let mut fsal = true;
    let mut last_boundary = false;
    loop {
        if h <= 1e-14 * t.abs().max(1.0) {
            return Err(if last_boundary {
                Error::BoundaryEscape { t, modulus: y[0].norm() }
            } else {
                Error::StepFailure { t, h }
            });
        }
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }
        if !fsal {
            k[0] = f(&y);
        }
        let mut escaped = false;
        let mut ynew = y;
        for s in 1..7 {
            let mut ys = y;
            for (i, yi) in ys.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..s {
                    acc += A[s][j] * k[j][i];
                }
                *yi += h * acc;
            }
            if !(ys[0].norm() < limit) {
                escaped = true;
                break;
            }
            k[s] = f(&ys);
            if s == 6 {
                ynew = ys;
            }
        }
        if escaped {
            last_boundary = true;
            fsal = true;
            h *= 0.25;
            continue;
        }
        let mut sum = 0.0;
        for i in 0..N {
            let mut e = Complex64::new(0.0, 0.0);
            for s in 0..7 {
                e += E[s] * k[s][i];
            }
            let sc = settings.abs_tol + settings.rel_tol * y[i].norm().max(ynew[i].norm());
            sum += ((h * e).norm() / sc).powi(2);
        }
        let err = (sum / N as f64).sqrt();
        let fac11 = err.powf(EXPO);
        if err <= 1.0 {
            let fac = (fac11 / err_old.powf(BETA) / SAFETY).clamp(1.0 / MAX_GROW, 1.0 / MAX_SHRINK);
            err_old = err.max(1e-4);
            t = if last { t1 } else { t + h };
            y = ynew;
            k[0] = k[6];
            fsal = true;
            last_boundary = false;
            if last {
                return Ok(y);
            }
            h = (h / fac).min(settings.max_step);
        } else {
            fsal = true;
            last_boundary = false;
            h /= (fac11 / SAFETY).min(1.0 / MAX_SHRINK);
        }
    }
}
