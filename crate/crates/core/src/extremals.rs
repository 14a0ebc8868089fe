//! Extreme points of the generator classes and the single-fixed-point integral
//! representation over probability measures on the circle.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::generator::{FixedPointConfig, GeneratorSpec};
use crate::herglotz::{check_in_disk, AtomicHerglotz, BoundaryPoint};

/// Tolerance on `Σ|λ_k| = 1` for inputs.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Tolerance on `Σ|λ'_k| = 1` when testing extremality.
pub const EXTREME_TOL: f64 = 1e-10;

/// A generator of the form every nonzero extreme point of the class over `(τ, F, Λ)`
/// must take: `p = ib + Σ_{j<n} a_j K_{s_j}` with at most `n − 1` free atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremeCandidate {
    config: FixedPointConfig,
    b: f64,
    free_atoms: Vec<(BoundaryPoint, f64)>,
}

impl ExtremeCandidate {
    pub fn new(config: FixedPointConfig, b: f64, free_atoms: Vec<(BoundaryPoint, f64)>) -> Result<Self> {
        if free_atoms.len() + 1 > config.n() {
            return Err(Error::Invalid(format!(
                "{} free atoms exceed the allowed n - 1 = {}",
                free_atoms.len(),
                config.n() - 1
            )));
        }
        if free_atoms.iter().any(|(_, a)| !(a.is_finite() && *a >= 0.0)) {
            return Err(Error::Invalid("free atom masses must be finite and >= 0".into()));
        }
        if !b.is_finite() {
            return Err(Error::Invalid("b must be finite".into()));
        }
        Ok(Self { config, b, free_atoms })
    }

    pub fn config(&self) -> &FixedPointConfig {
        &self.config
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn free_atoms(&self) -> &[(BoundaryPoint, f64)] {
        &self.free_atoms
    }
}

pub fn extreme_candidate_generator(cand: &ExtremeCandidate) -> GeneratorSpec {
    let p = AtomicHerglotz::new(cand.free_atoms.iter().copied(), cand.b).expect("validated candidate");
    GeneratorSpec::new(cand.config.clone(), p)
}

/// The extreme point of the class over `(τ, F)` with `Σ|λ_k| ≤ 1` whose spectral values
/// are `lambdas` (summing to −1) and whose Herglotz part is the constant `ib`.
pub fn extreme_point_gen_f(
    tau: Complex64,
    sigmas: Vec<BoundaryPoint>,
    lambdas: Vec<f64>,
    b: f64,
) -> Result<GeneratorSpec> {
    let sum: f64 = lambdas.iter().map(|l| l.abs()).sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::Normalization { sum });
    }
    let cfg = FixedPointConfig::new(tau, sigmas, lambdas)?;
    Ok(GeneratorSpec::new(cfg, AtomicHerglotz::trivial(b)))
}

/// True iff `spec` is an extreme point of the class over `(τ, F)` with `Σ|λ'_k| ≤ 1`:
/// its Herglotz part is a purely imaginary constant and `Σ|λ'_k| = 1`.
pub fn is_extreme_gen_f(spec: &GeneratorSpec) -> bool {
    let Some(p) = spec.p() else { return false };
    if !p.is_trivial() {
        return false;
    }
    let sum: f64 = spec.brfp_spectral_values().iter().map(|l| l.abs()).sum();
    (sum - 1.0).abs() <= EXTREME_TOL
}

/// `(1 − w)·g1 + w·g2` for two generators sharing `(τ, F)`, represented over the
/// configuration whose bounds are the actual spectral values of the combination.
pub fn gen_f_convex_combination(g1: &GeneratorSpec, g2: &GeneratorSpec, w: f64) -> Result<GeneratorSpec> {
    if g1.config().sigmas() != g2.config().sigmas() {
        return Err(Error::Invalid("generators have different boundary fixed points".into()));
    }
    let lambdas = g1
        .brfp_spectral_values()
        .iter()
        .zip(g2.brfp_spectral_values())
        .map(|(a, b)| (1.0 - w) * a + w * b)
        .collect();
    let cfg = g1.config().with_lambdas(lambdas)?;
    GeneratorSpec::from_berkson_porta(&cfg, &g1.mix_berkson_porta(g2, w)?)
}

fn check_weights(mu: &[(BoundaryPoint, f64)]) -> Result<()> {
    if mu.iter().any(|(_, w)| !(w.is_finite() && *w >= 0.0)) {
        return Err(Error::Weight("weights must be finite and >= 0".into()));
    }
    let sum: f64 = mu.iter().map(|(_, w)| w).sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::Weight(format!("weights sum to {sum}, not 1")));
    }
    Ok(())
}

/// `(|λ|/|σ − τ|²)(τ − z)(1 − τ̄z)(1 − σ̄z) Σ_j w_j (1 − κ_j)/(1 − κ_j σ̄ z)` for an atomic
/// probability measure `μ = Σ w_j δ_{κ_j}`.
pub fn gk_generator(
    tau: Complex64,
    sigma: BoundaryPoint,
    lambda: f64,
    mu: &[(BoundaryPoint, f64)],
    z: Complex64,
) -> Result<Complex64> {
    check_weights(mu)?;
    check_in_disk(z)?;
    if !(lambda < 0.0) {
        return Err(Error::Invalid(format!("lambda must be < 0, got {lambda}")));
    }
    let s = sigma.point();
    if (s - tau).norm() <= crate::herglotz::ANGLE_TOL {
        return Err(Error::Invalid("tau coincides with sigma".into()));
    }
    let sum: Complex64 = mu
        .iter()
        .map(|(k, w)| {
            let kp = k.point();
            *w * (1.0 - kp) / (1.0 - kp * s.conj() * z)
        })
        .sum();
    let pre = lambda.abs() / (s - tau).norm_sqr();
    Ok(pre * (tau - z) * (1.0 - tau.conj() * z) * (1.0 - s.conj() * z) * sum)
}

/// The point `κ = (iy − 1)/(iy + 1)`, `y = 2b|λ|/|σ − τ|²`, whose Dirac measure
/// reproduces the single-fixed-point candidate with `p = ib`.
pub fn gk_kappa(tau: Complex64, sigma: BoundaryPoint, lambda: f64, b: f64) -> BoundaryPoint {
    let y = 2.0 * b * lambda.abs() / (sigma.point() - tau).norm_sqr();
    let iy = Complex64::new(0.0, y);
    BoundaryPoint::from_complex((iy - 1.0) / (iy + 1.0))
}
