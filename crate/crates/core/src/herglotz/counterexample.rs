//! A Herglotz function whose measure has no atom at 1, yet `|ς − 1|⁻¹` is not
//! integrable: the measure `dν(t) = dt/log(1/|t|)` on `|t| ≤ 1/e` in the half-plane
//! picture. Its transform `P` still tends to 0 along the imaginary axis.

use std::f64::consts::{E, FRAC_PI_2};

use crate::error::{Error, Result};
use crate::quadrature::integrate;

const ABS_TOL: f64 = 1e-8;

/// `P(iy)/(2i) = ∫₀^{1/e} y / ((t² + y²) log(1/t)) dt` for `0 < y < 1`.
///
/// Integrated in `s = log(1/t)`, where the integrand `y e^{−s}/((e^{−2s} + y²) s)` has
/// a single bump near `s = log(1/y)` and decays like `e^{−s}` afterwards.
pub fn counterexample_p(y: f64) -> Result<f64> {
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::Domain(format!("y = {y} is not in (0, 1)")));
    }
    let g = |s: f64| {
        let t = (-s).exp();
        y * t / ((t * t + y * y) * s)
    };
    let peak = (1.0 / y).ln();
    let cut = peak.max(1.0) + 40.0;
    // Tail beyond `cut` is at most ∫ e^{−s}/(y·cut) ds = e^{−cut}/(y·cut) < e^{−40}/cut.
    let tail = (-40.0f64).exp() / cut;
    let mut breaks = vec![1.0];
    if peak > 1.0 {
        breaks.push(peak);
    }
    breaks.push(cut);
    let share = ABS_TOL / 10.0 / (breaks.len() - 1) as f64;
    let mut value = 0.0;
    let mut error = tail;
    for w in breaks.windows(2) {
        let q = integrate(g, w[0], w[1], share, 0.0, 4000)?;
        value += q.value;
        error += q.error;
    }
    if error > ABS_TOL {
        return Err(Error::QuadratureFailure { estimate: value, error });
    }
    Ok(value)
}

/// Upper bound for [`counterexample_p`] from splitting the integral at
/// `t = √y/e`: `(π/2)/(1 + ½ log(1/y)) + (π/2 − arctan(1/(e√y)))`.
pub fn counterexample_bound(y: f64) -> f64 {
    FRAC_PI_2 / (1.0 + 0.5 * (1.0 / y).ln()) + (FRAC_PI_2 - (1.0 / (E * y.sqrt())).atan())
}

/// `∫_δ^{1/e} dt/(t log(1/t))` for `0 < δ < 1/e`, which equals `log log(1/δ)`.
pub fn counterexample_divergence(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0 / E) {
        return Err(Error::Domain(format!("delta = {delta} is not in (0, 1/e)")));
    }
    let upper = (1.0 / delta).ln();
    let q = integrate(|s| 1.0 / s, 1.0, upper, 1e-13, 1e-14, 4000)?;
    Ok(q.value)
}
