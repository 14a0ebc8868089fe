//! Piecewise-constant Loewner–Kufarev evolution in the class of generators with
//! `Σ|λ'_k| ≤ 1`, the Cowen–Pommerenke region of `−log φ'(τ)`, and the concavity
//! toolkit for `Q(x) = (Σ 1/x_j)⁻¹`.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::{FixedPointConfig, GeneratorSpec, BOUNDARY_TOL};
use crate::herglotz::{AtomicHerglotz, BoundaryPoint};
use crate::semiflow::{integrate_flow, integrate_flow_with_derivative, OdeSettings};
use crate::value_regions::{DiskRegion, IntervalRegion};

/// Tolerance of `Σ|λ'_k| ≤ 1` and of the strict equality.
pub const BUDGET_TOL: f64 = 1e-12;

/// Tolerance for matching prescribed boundary derivatives.
pub const TARGET_TOL: f64 = 1e-9;

/// One constant piece of a time-dependent field.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub duration: f64,
    pub generator: GeneratorSpec,
}

fn spectral_budget(g: &GeneratorSpec) -> f64 {
    g.brfp_spectral_values().iter().map(|l| l.abs()).sum()
}

/// A field `G(·, t)` that is constant on consecutive time segments, all sharing `(τ, F)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseField {
    segments: Vec<Segment>,
}

impl PiecewiseField {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        let first = segments.first().ok_or_else(|| Error::Invalid("a field needs at least one segment".into()))?;
        let tau = first.generator.config().tau();
        let sigmas = first.generator.config().sigmas().to_vec();
        for (j, s) in segments.iter().enumerate() {
            if !(s.duration.is_finite() && s.duration > 0.0) {
                return Err(Error::Invalid(format!("segment {j} has non-positive duration {}", s.duration)));
            }
            let cfg = s.generator.config();
            if (cfg.tau() - tau).norm() > BOUNDARY_TOL || cfg.sigmas() != sigmas.as_slice() {
                return Err(Error::Invalid(format!("segment {j} has a different (tau, F)")));
            }
            let budget = spectral_budget(&s.generator);
            if budget > 1.0 + BUDGET_TOL {
                return Err(Error::NotInClass(format!("segment {j} has spectral budget {budget} > 1")));
            }
        }
        Ok(Self { segments })
    }

    /// A single segment.
    pub fn constant(generator: GeneratorSpec, duration: f64) -> Result<Self> {
        Self::new(vec![Segment { duration, generator }])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn config(&self) -> &FixedPointConfig {
        self.segments[0].generator.config()
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    /// True when every segment has `Σ|λ'_k| = 1`.
    pub fn is_strict(&self) -> bool {
        self.segments.iter().all(|s| (spectral_budget(&s.generator) - 1.0).abs() <= BUDGET_TOL)
    }

    /// The same evolution reparametrized so that every segment has `Σ|λ'_k| = 1`:
    /// `G/s` run for `s` times as long. Trivial segments are dropped.
    pub fn normalized(&self) -> Result<PiecewiseField> {
        let mut out = Vec::new();
        for seg in &self.segments {
            let s = spectral_budget(&seg.generator);
            let Some(p) = seg.generator.p() else { continue };
            let cfg = seg.generator.config();
            let lambdas = cfg.lambdas().iter().map(|l| l / s).collect();
            let gen = GeneratorSpec::new(cfg.with_lambdas(lambdas)?, p.scaled(s));
            out.push(Segment { duration: seg.duration * s, generator: gen });
        }
        PiecewiseField::new(out)
    }

    /// `w_{z0}(T)`: the evolved map at `z0`.
    pub fn evolve(&self, z0: Complex64, settings: &OdeSettings) -> Result<Complex64> {
        let mut w = z0;
        for s in &self.segments {
            w = integrate_flow(&s.generator, w, s.duration, settings)?;
        }
        Ok(w)
    }

    /// The evolved map and its derivative at `z0`.
    pub fn evolve_with_derivative(&self, z0: Complex64, settings: &OdeSettings) -> Result<(Complex64, Complex64)> {
        let mut w = z0;
        let mut d = Complex64::new(1.0, 0.0);
        for s in &self.segments {
            let (w1, d1) = integrate_flow_with_derivative(&s.generator, w, s.duration, settings)?;
            w = w1;
            d *= d1;
        }
        Ok((w, d))
    }

    /// `log φ'(σ_k) = Σ duration·|λ'_k|` (0-based `k`).
    pub fn boundary_log_derivative(&self, k: usize) -> Result<f64> {
        let mut acc = 0.0;
        for s in &self.segments {
            acc += s.duration * s.generator.brfp_spectral_value(k)?.abs();
        }
        Ok(acc)
    }

    /// `∫ G'(τ, t) dt = −Σ duration·λ(G_segment)`, the distinguished value of `log φ'(τ)`.
    pub fn psi_tau(&self) -> Complex64 {
        self.segments.iter().map(|s| -s.duration * s.generator.dw_spectral_value()).sum()
    }
}

/// Prescribed boundary derivatives `a_k = φ'(σ_k) > 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CpTarget {
    a: Vec<f64>,
}

impl CpTarget {
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Invalid("target needs at least one derivative".into()));
        }
        if let Some(x) = a.iter().find(|x| !(x.is_finite() && **x > 1.0)) {
            return Err(Error::Invalid(format!("boundary derivatives must exceed 1, got {x}")));
        }
        Ok(Self { a })
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn logs(&self) -> Vec<f64> {
        self.a.iter().map(|x| x.ln()).collect()
    }

    /// `T = Σ log a_k`.
    pub fn total_log(&self) -> f64 {
        self.logs().iter().sum()
    }

    /// `r(A) = (Σ 1/log a_k)⁻¹`.
    pub fn r(&self) -> f64 {
        harmonic_q(&self.logs()).expect("logs are positive")
    }
}

/// `D(A) = {|ω − r(A)| ≤ r(A)}`; the values actually attained are `D(A)∖{0}`.
pub fn cp_region(target: &CpTarget) -> DiskRegion {
    let r = target.r();
    DiskRegion::new(Complex64::new(r, 0.0), r)
}

/// `[0, r(A)]`, the region for a boundary Denjoy–Wolff point.
pub fn cp_interval(target: &CpTarget) -> IntervalRegion {
    IntervalRegion::new(0.0, target.r())
}

/// `γ = −Σ Im(σ̄_k τ)/log a_k`, the imaginary constant of the extremal field for a
/// boundary Denjoy–Wolff point (in the unit-time normalization).
pub fn cp_boundary_gamma(tau: Complex64, sigmas: &[BoundaryPoint], target: &CpTarget) -> f64 {
    -sigmas
        .iter()
        .zip(target.logs())
        .map(|(s, l)| (s.point().conj() * tau).im / l)
        .sum::<f64>()
}

/// The constant field `(τ − z)(1 − τ̄z)/(c + Σ |τ − σ_k|²/(2 log a_k) K_{σ_k})` on `[0, 1]`,
/// reparametrized to a single segment of duration `T = Σ log a_k` with `λ_k = −log a_k/T`.
pub fn cp_extremal_field(
    tau: Complex64,
    sigmas: Vec<BoundaryPoint>,
    target: &CpTarget,
    c: Complex64,
) -> Result<PiecewiseField> {
    if c.re < 0.0 {
        return Err(Error::Domain(format!("Re c = {} is negative", c.re)));
    }
    if sigmas.len() != target.a.len() {
        return Err(Error::Invalid("target and boundary points differ in length".into()));
    }
    let t = target.total_log();
    let lambdas = target.logs().iter().map(|l| -l / t).collect();
    let cfg = FixedPointConfig::new(tau, sigmas, lambdas)?;
    let p = AtomicHerglotz::constant(c * t)?;
    PiecewiseField::constant(GeneratorSpec::new(cfg, p), t)
}

/// A point `−log φ'(τ)` of a Cowen–Pommerenke experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct CpPoint {
    pub point: Complex64,
    /// Distance inside `D(A)` (or `[0, r(A)]`), negative outside.
    pub slack: f64,
    pub inside: bool,
    /// `−log` of the ODE-variational derivative at `τ`, when requested (interior `τ`).
    pub ode_point: Option<Complex64>,
}

/// Slack threshold for `inside`.
pub const CP_SLACK_TOL: f64 = 1e-8;

/// Evaluates `−psi_tau(field)` against the region for `target`.
pub fn cp_experiment(field: &PiecewiseField, target: &CpTarget, settings: Option<&OdeSettings>) -> Result<CpPoint> {
    let logs = target.logs();
    if logs.len() != field.config().n() {
        return Err(Error::Invalid("target and field differ in the number of fixed points".into()));
    }
    for (k, want) in logs.iter().enumerate() {
        let got = field.boundary_log_derivative(k)?;
        if (got - want).abs() > TARGET_TOL * want.max(1.0) {
            return Err(Error::TargetMismatch { k, got, want: *want });
        }
    }
    let point = -field.psi_tau();
    let (slack, nonzero) = if field.config().is_boundary() {
        (cp_interval(target).slack(point.re), true)
    } else {
        (cp_region(target).slack(point), point.norm() > 0.0)
    };
    let ode_point = match settings {
        Some(s) if !field.config().is_boundary() => {
            let (_, d) = field.evolve_with_derivative(field.config().tau(), s)?;
            Some(-d.ln())
        }
        _ => None,
    };
    Ok(CpPoint { point, slack, inside: slack >= -CP_SLACK_TOL && nonzero, ode_point })
}

/// Largest violation of the chain
/// `Re(−e^{−iθ}ψ) ≤ (1 + cos θ) Σ d·Q(|λ'|) ≤ (1 + cos θ) T·Q(mean |λ'|)` over `θ` on a grid.
pub fn jensen_gap(field: &PiecewiseField, grid: usize) -> f64 {
    let psi = field.psi_tau();
    let n = field.config().n();
    let t = field.total_duration();
    let per_segment: f64 = field
        .segments
        .iter()
        .map(|s| {
            let l: Vec<f64> = s.generator.brfp_spectral_values().iter().map(|x| x.abs()).collect();
            s.duration * harmonic_q(&l).unwrap_or(0.0)
        })
        .sum();
    let mean: Vec<f64> = (0..n)
        .map(|k| field.boundary_log_derivative(k).expect("index in range") / t)
        .collect();
    let bound = t * harmonic_q(&mean).unwrap_or(0.0);
    let mut worst = f64::NEG_INFINITY;
    for j in 0..grid {
        let th = TAU * j as f64 / grid as f64;
        let lhs = (-Complex64::from_polar(1.0, -th) * psi).re;
        let f = 1.0 + th.cos();
        worst = worst.max(lhs - f * per_segment).max(f * (per_segment - bound));
    }
    worst
}

/// A random field in the strict class over `(τ, F)` with `φ'(σ_k) = a_k`: up to five
/// segments with random durations, per-segment spectral weights, and Herglotz parts
/// with atoms off `F`.
pub fn random_cp_field<R: Rng>(
    rng: &mut R,
    tau: Complex64,
    sigmas: &[BoundaryPoint],
    target: &CpTarget,
) -> Result<PiecewiseField> {
    let n = sigmas.len();
    let logs = target.logs();
    let t: f64 = logs.iter().sum();
    let m: Vec<f64> = logs.iter().map(|l| l / t).collect();
    let segs = rng.gen_range(1..=5);
    let mut d: Vec<f64> = (0..segs).map(|_| rng.gen_range(0.1..1.0)).collect();
    let dsum: f64 = d.iter().sum();
    d.iter_mut().for_each(|x| *x *= t / dsum);
    // Random rows on the simplex, then shifted so that the duration-weighted column
    // sums equal log a_k and pulled toward the feasible point m until all entries are positive.
    let y: Vec<Vec<f64>> = (0..segs)
        .map(|_| {
            let e: Vec<f64> = (0..n).map(|_| -rng.gen::<f64>().max(1e-300).ln()).collect();
            let s: f64 = e.iter().sum();
            e.iter().map(|x| x / s).collect()
        })
        .collect();
    let achieved: Vec<f64> = (0..n).map(|k| (0..segs).map(|j| d[j] * y[j][k]).sum()).collect();
    let shift: Vec<f64> = (0..n).map(|k| (logs[k] - achieved[k]) / t).collect();
    let floor = 1e-3 * m.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut theta: f64 = 1.0;
    for j in 0..segs {
        for k in 0..n {
            let v = y[j][k] + shift[k];
            if v < floor {
                theta = theta.min((m[k] - floor) / (m[k] - v));
            }
        }
    }
    let mut segments = Vec::with_capacity(segs);
    for j in 0..segs {
        let mut x: Vec<f64> = (0..n).map(|k| theta * (y[j][k] + shift[k]) + (1.0 - theta) * m[k]).collect();
        let s: f64 = x.iter().sum();
        x.iter_mut().for_each(|v| *v /= s);
        let cfg = FixedPointConfig::new(tau, sigmas.to_vec(), x.iter().map(|v| -v).collect())?;
        let p = crate::sampling::random_herglotz(rng, &[]);
        let p = if sigmas.iter().any(|s| p.has_atom_at(s)) { AtomicHerglotz::trivial(p.gamma()) } else { p };
        segments.push(Segment { duration: d[j], generator: GeneratorSpec::new(cfg, p) });
    }
    PiecewiseField::new(segments)
}

/// `Q(x) = (Σ 1/x_j)⁻¹`.
pub fn harmonic_q(x: &[f64]) -> Result<f64> {
    if x.is_empty() || x.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::Domain("Q needs a nonempty list of positive reals".into()));
    }
    Ok(1.0 / x.iter().map(|v| 1.0 / v).sum::<f64>())
}

/// The Hessian `a_jk = (2Q³/(x_j² x_k²))(1 − δ_jk x_j/Q)` of `Q`.
pub fn q_hessian(x: &[f64]) -> Result<DMatrix<f64>> {
    let q = harmonic_q(x)?;
    let n = x.len();
    Ok(DMatrix::from_fn(n, n, |j, k| {
        let base = 2.0 * q.powi(3) / (x[j] * x[j] * x[k] * x[k]);
        if j == k {
            base * (1.0 - x[j] / q)
        } else {
            base
        }
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcavityReport {
    pub max_eigenvalue: f64,
    pub determinant: f64,
    /// Largest entry magnitude of the Hessian, the scale for the two numbers above.
    pub hessian_scale: f64,
    /// Smallest `Q((x+y)/2) − (Q(x)+Q(y))/2` over random `y`.
    pub min_midpoint_gap: f64,
    /// Smallest midpoint gap over random distinct pairs on the simplex.
    pub min_simplex_gap: f64,
    pub passed: bool,
}

/// Negative semidefiniteness and singularity of the Hessian of `Q` at `x`, midpoint
/// concavity against random partners, and strict concavity on the simplex.
pub fn q_concavity_check<R: Rng>(x: &[f64], trials: usize, rng: &mut R) -> Result<ConcavityReport> {
    let n = x.len();
    if !(1..=8).contains(&n) {
        return Err(Error::Domain(format!("dimension {n} is not in 1..=8")));
    }
    let h = q_hessian(x)?;
    let scale = h.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let eig = SymmetricEigen::new(h.clone()).eigenvalues;
    let max_eigenvalue = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let determinant = h.determinant();
    let qx = harmonic_q(x)?;
    let xmax = x.iter().cloned().fold(0.0, f64::max);
    let mut min_midpoint_gap = f64::INFINITY;
    let mut min_simplex_gap = f64::INFINITY;
    let mut ok = max_eigenvalue <= 1e-9 * scale.max(1.0) && determinant.abs() <= 1e-9 * scale.max(1.0).powi(n as i32);
    for _ in 0..trials {
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(1e-3..2.0) * xmax).collect();
        let mid: Vec<f64> = x.iter().zip(&y).map(|(a, b)| 0.5 * (a + b)).collect();
        let gap = harmonic_q(&mid)? - 0.5 * (qx + harmonic_q(&y)?);
        min_midpoint_gap = min_midpoint_gap.min(gap);
        ok &= gap >= -1e-12 * qx.max(1.0);
        if n >= 2 {
            let u = random_simplex(rng, n);
            let v = random_simplex(rng, n);
            let dist = u.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            let mid: Vec<f64> = u.iter().zip(&v).map(|(a, b)| 0.5 * (a + b)).collect();
            let gap = harmonic_q(&mid)? - 0.5 * (harmonic_q(&u)? + harmonic_q(&v)?);
            min_simplex_gap = min_simplex_gap.min(gap);
            if dist > 1e-3 {
                ok &= gap > 1e-12;
            }
        }
    }
    Ok(ConcavityReport { max_eigenvalue, determinant, hessian_scale: scale, min_midpoint_gap, min_simplex_gap, passed: ok })
}

fn random_simplex<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| -rng.gen_range(1e-6f64..1.0).ln()).collect();
    let s: f64 = e.iter().sum();
    e.iter().map(|v| v / s).collect()
}
