//! Sharp value regions of `(G(0), λ(G))`, `(λ(G), G''(0))` and `β(G)` over the class
//! fixed by a [`FixedPointConfig`], with the generators that realize boundary points.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::{FixedPointConfig, GeneratorSpec};
use crate::herglotz::{AtomicHerglotz, BoundaryPoint};
use crate::sampling::{indexed_spec, Regime};

/// Absolute membership tolerance in chart coordinates.
pub const REGION_TOL: f64 = 1e-10;

fn c0() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// A closed disk, possibly a single point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskRegion {
    #[serde(with = "crate::json::complex")]
    pub center: Complex64,
    pub radius: f64,
}

impl DiskRegion {
    pub fn new(center: Complex64, radius: f64) -> Self {
        assert!(radius >= 0.0, "disk radius must be >= 0");
        Self { center, radius }
    }

    /// `radius − |w − center|`, nonnegative exactly on the disk.
    pub fn slack(&self, w: Complex64) -> f64 {
        self.radius - (w - self.center).norm()
    }

    pub fn contains(&self, w: Complex64, tol: f64) -> bool {
        self.slack(w) >= -tol
    }

    pub fn boundary_point(&self, angle: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, angle)
    }
}

/// A closed real interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalRegion {
    pub lo: f64,
    pub hi: f64,
}

impl IntervalRegion {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval must satisfy lo <= hi");
        Self { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    /// Distance inside the interval, negative outside.
    pub fn slack(&self, x: f64) -> f64 {
        (x - self.lo).min(self.hi - x)
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.slack(x) >= -tol
    }
}

/// The coordinate change under which a value region is a disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Chart {
    Identity,
    /// `η = scale/w`.
    Reciprocal { scale: f64 },
    /// `η = w/(2ω²)`.
    HalfOverSquare {
        #[serde(with = "crate::json::complex")]
        omega: Complex64,
    },
}

impl Chart {
    pub fn forward(&self, w: Complex64) -> Option<Complex64> {
        match *self {
            Chart::Identity => Some(w),
            Chart::Reciprocal { scale } => (w.norm() > 0.0).then(|| scale / w),
            Chart::HalfOverSquare { omega } => Some(w / (2.0 * omega * omega)),
        }
    }

    pub fn inverse(&self, eta: Complex64) -> Option<Complex64> {
        match *self {
            Chart::Identity => Some(eta),
            Chart::Reciprocal { scale } => (eta.norm() > 0.0).then(|| scale / eta),
            Chart::HalfOverSquare { omega } => Some(eta * 2.0 * omega * omega),
        }
    }
}

/// A value region: either a single point, or the preimage of a disk under a chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ChartedRegion {
    Singleton {
        #[serde(with = "crate::json::complex")]
        point: Complex64,
    },
    Disk { disk: DiskRegion, chart: Chart },
}

impl ChartedRegion {
    /// Signed distance to the boundary, measured in chart coordinates.
    pub fn slack(&self, w: Complex64) -> f64 {
        match self {
            ChartedRegion::Singleton { point } => -(w - point).norm(),
            ChartedRegion::Disk { disk, chart } => match chart.forward(w) {
                Some(eta) => disk.slack(eta),
                None => f64::NEG_INFINITY,
            },
        }
    }

    pub fn contains(&self, w: Complex64, tol: f64) -> bool {
        self.slack(w) >= -tol
    }

    /// `n` boundary points in original coordinates, paired with their chart angle.
    pub fn boundary_samples(&self, n: usize) -> Vec<(f64, Complex64)> {
        (0..n)
            .map(|j| {
                let t = TAU * j as f64 / n as f64;
                let w = match self {
                    ChartedRegion::Singleton { point } => *point,
                    ChartedRegion::Disk { disk, chart } => {
                        chart.inverse(disk.boundary_point(t)).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
                    }
                };
                (t, w)
            })
            .collect()
    }
}

fn require_nonzero_tau(cfg: &FixedPointConfig) -> Result<()> {
    if cfg.is_origin() {
        return Err(Error::DegenerateConfig("the region Z is undefined for tau = 0".into()));
    }
    Ok(())
}

fn require_interior(cfg: &FixedPointConfig) -> Result<()> {
    if cfg.is_boundary() {
        return Err(Error::Domain("requires |tau| < 1".into()));
    }
    Ok(())
}

fn require_boundary(cfg: &FixedPointConfig) -> Result<()> {
    if !cfg.is_boundary() {
        return Err(Error::Domain("requires |tau| = 1".into()));
    }
    Ok(())
}

fn require_origin(cfg: &FixedPointConfig) -> Result<()> {
    if !cfg.is_origin() {
        return Err(Error::Domain("requires tau = 0".into()));
    }
    Ok(())
}

/// The disk `Z = {ζ : |2Aζ/τ − 1| ≤ 1}` of possible values `G(0)`.
pub fn region_z(cfg: &FixedPointConfig) -> Result<DiskRegion> {
    require_nonzero_tau(cfg)?;
    let a = cfg.cap_a();
    Ok(DiskRegion::new(cfg.tau() / (2.0 * a), cfg.tau().norm() / (2.0 * a)))
}

/// Where `ζ` sits relative to `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaPosition {
    Inside,
    /// On `∂Z` within tolerance, including `ζ = 0`.
    Boundary,
    Outside,
}

/// Classifies `ζ` by the chart value `|2Aζ/τ − 1| − 1`.
pub fn zeta_position(cfg: &FixedPointConfig, zeta: Complex64, tol: f64) -> Result<ZetaPosition> {
    require_nonzero_tau(cfg)?;
    if zeta.norm() == 0.0 {
        return Ok(ZetaPosition::Boundary);
    }
    let d = (2.0 * cfg.cap_a() * zeta / cfg.tau() - 1.0).norm() - 1.0;
    Ok(if d.abs() <= tol {
        ZetaPosition::Boundary
    } else if d < 0.0 {
        ZetaPosition::Inside
    } else {
        ZetaPosition::Outside
    })
}

/// `ℓ_ζ = τ/ζ − A`, the value `p(0)` of any generator with `G(0) = ζ`.
pub fn ell(cfg: &FixedPointConfig, zeta: Complex64) -> Result<Complex64> {
    if zeta.norm() == 0.0 {
        return Err(Error::DivisionByZero("ell is undefined at zeta = 0".into()));
    }
    Ok(cfg.tau() / zeta - cfg.cap_a())
}

/// `ℓ_ζ` with its real part clamped at 0 (for `ζ` on `∂Z` up to rounding).
fn ell_in_z(cfg: &FixedPointConfig, zeta: Complex64) -> Result<Complex64> {
    let l = ell(cfg, zeta)?;
    Ok(Complex64::new(l.re.max(0.0), l.im))
}

/// `Ω_ζ`, the values of `λ(G)` among generators with `G(0) = ζ` (`0 < |τ| < 1`).
///
/// A disk in the chart `η = (1 − |τ|²)/ω`; `Ω₀ = {0}`.
pub fn region_omega(cfg: &FixedPointConfig, zeta: Complex64) -> Result<ChartedRegion> {
    require_nonzero_tau(cfg)?;
    require_interior(cfg)?;
    if zeta.norm() == 0.0 {
        return Ok(ChartedRegion::Singleton { point: c0() });
    }
    if zeta_position(cfg, zeta, REGION_TOL)? == ZetaPosition::Outside {
        return Err(Error::Domain(format!("zeta = {zeta} lies outside Z")));
    }
    let t = cfg.tau().norm();
    let t2 = t * t;
    let l = ell_in_z(cfg, zeta)?;
    let center = (1.0 + t2) / (1.0 - t2) * l.re + Complex64::new(0.0, l.im) + cfg.p0_at_tau();
    let radius = 2.0 * t / (1.0 - t2) * l.re;
    Ok(ChartedRegion::Disk {
        disk: DiskRegion::new(center, radius),
        chart: Chart::Reciprocal { scale: 1.0 - t2 },
    })
}

/// `G_{ζ,σ}`: the generator with `G(0) = ζ` whose `λ` is the point of `∂Ω_ζ` selected by `σ`.
pub fn extremal_interior(cfg: &FixedPointConfig, zeta: Complex64, sigma: BoundaryPoint) -> Result<GeneratorSpec> {
    require_interior(cfg)?;
    if zeta_position(cfg, zeta, REGION_TOL)? != ZetaPosition::Inside {
        return Err(Error::Domain(format!("zeta = {zeta} is not in the interior of Z")));
    }
    let l = ell(cfg, zeta)?;
    let p = AtomicHerglotz::new([(sigma, l.re)], l.im)?;
    Ok(GeneratorSpec::new(cfg.clone(), p))
}

/// `G_ζ` for `ζ ∈ ∂Z∖{0}`: the only generator with `G(0) = ζ`.
pub fn extremal_boundary_of_z(cfg: &FixedPointConfig, zeta: Complex64) -> Result<GeneratorSpec> {
    if zeta.norm() == 0.0 || zeta_position(cfg, zeta, REGION_TOL)? != ZetaPosition::Boundary {
        return Err(Error::Domain(format!("zeta = {zeta} is not on the boundary of Z minus 0")));
    }
    let l = ell(cfg, zeta)?;
    Ok(GeneratorSpec::new(cfg.clone(), AtomicHerglotz::trivial(l.im)))
}

/// `Ω = {ω : |ω − r| ≤ r}`, `r = (Σ 1/|λ_k|)⁻¹`, the values of `λ(G)` when `τ = 0`.
pub fn region_omega_origin(cfg: &FixedPointConfig) -> Result<DiskRegion> {
    require_origin(cfg)?;
    Ok(DiskRegion::new(Complex64::new(cfg.r(), 0.0), cfg.r()))
}

/// `Z_ω`, the values of `G''(0)` among generators with `λ(G) = ω` (`τ = 0`).
///
/// A disk in the chart `ζ/(2ω²)` with center `Σ σ̄_k/|λ_k|` and radius
/// `2 Re(1/ω) − Σ 1/|λ_k|`; `Z₀ = {0}`.
pub fn region_z_omega(cfg: &FixedPointConfig, omega: Complex64) -> Result<ChartedRegion> {
    require_origin(cfg)?;
    if omega.norm() == 0.0 {
        return Ok(ChartedRegion::Singleton { point: c0() });
    }
    let radius = 2.0 * (1.0 / omega).re - cfg.inv_lambda_sum();
    if radius < -REGION_TOL {
        return Err(Error::Domain(format!("omega = {omega} lies outside the spectral disk")));
    }
    let center: Complex64 =
        cfg.sigmas().iter().zip(cfg.lambdas()).map(|(s, l)| s.point().conj() / l.abs()).sum();
    Ok(ChartedRegion::Disk {
        disk: DiskRegion::new(center, radius.max(0.0)),
        chart: Chart::HalfOverSquare { omega },
    })
}

/// `ℓ̂_ω = 1/ω − ½ Σ 1/|λ_k|`, the value `p(0)` of any generator with `λ(G) = ω` (`τ = 0`).
pub fn ell_hat(cfg: &FixedPointConfig, omega: Complex64) -> Result<Complex64> {
    if omega.norm() == 0.0 {
        return Err(Error::DivisionByZero("ell_hat is undefined at omega = 0".into()));
    }
    Ok(1.0 / omega - 0.5 * cfg.inv_lambda_sum())
}

/// `Ĝ_{ω,σ}` (`τ = 0`): `λ(G) = ω` and `G''(0)` on `∂Z_ω` at the point selected by `σ`.
pub fn extremal_origin(cfg: &FixedPointConfig, omega: Complex64, sigma: BoundaryPoint) -> Result<GeneratorSpec> {
    require_origin(cfg)?;
    let l = ell_hat(cfg, omega)?;
    if l.re < -REGION_TOL {
        return Err(Error::Domain(format!("omega = {omega} lies outside the spectral disk")));
    }
    let p = AtomicHerglotz::new([(sigma, l.re.max(0.0))], l.im)?;
    Ok(GeneratorSpec::new(cfg.clone(), p))
}

/// `f(w) = 2 Re w/(|w|² + 2 Re w Σ 1/|λ_k|)`.
pub fn boundary_f(cfg: &FixedPointConfig, w: Complex64) -> f64 {
    if w.re <= 0.0 {
        return 0.0;
    }
    2.0 * w.re / (w.norm_sqr() + 2.0 * w.re * cfg.inv_lambda_sum())
}

/// Relative residual of `1/ζ̄ = Σ (τ − σ_k)/|λ_k|`, which singles out the point of
/// `∂Z∖{0}` where `λ(G) = r` is possible.
pub fn boundary_coincidence_residual(cfg: &FixedPointConfig, zeta: Complex64) -> f64 {
    let target: Complex64 =
        cfg.sigmas().iter().zip(cfg.lambdas()).map(|(s, l)| (cfg.tau() - s.point()) / l.abs()).sum();
    let lhs = 1.0 / zeta.conj();
    (lhs - target).norm() / (1.0 + target.norm())
}

/// `I_ζ`, the values of `λ(G)` among generators with `G(0) = ζ` when `|τ| = 1`.
pub fn interval_i(cfg: &FixedPointConfig, zeta: Complex64) -> Result<IntervalRegion> {
    require_boundary(cfg)?;
    match zeta_position(cfg, zeta, REGION_TOL)? {
        ZetaPosition::Outside => Err(Error::Domain(format!("zeta = {zeta} lies outside Z"))),
        ZetaPosition::Inside => {
            let l = ell(cfg, zeta)?;
            Ok(IntervalRegion::new(0.0, boundary_f(cfg, l + Complex64::new(0.0, cfg.cap_b()))))
        }
        ZetaPosition::Boundary => {
            if zeta.norm() > 0.0 && boundary_coincidence_residual(cfg, zeta) <= REGION_TOL {
                Ok(IntervalRegion::point(cfg.r()))
            } else {
                Ok(IntervalRegion::point(0.0))
            }
        }
    }
}

/// `min q#(τ)` over the Carathéodory class subject to contact value `q(τ) = ia`, and the
/// point `σ` of the unique minimizer `K_σ`.
pub fn caratheodory_min_sharp(tau: BoundaryPoint, a: f64) -> (f64, BoundaryPoint) {
    let ia = Complex64::new(0.0, a);
    let sigma = -tau.point() * (1.0 + ia) / (1.0 - ia);
    ((1.0 + a * a) / 2.0, BoundaryPoint::from_complex(sigma))
}

/// `G̃_ζ` (`|τ| = 1`, `ζ ∈ int Z`): the unique generator with `G(0) = ζ` and `λ(G)` at the
/// right end of `I_ζ`.
pub fn extremal_hyperbolic(cfg: &FixedPointConfig, zeta: Complex64) -> Result<GeneratorSpec> {
    require_boundary(cfg)?;
    if zeta_position(cfg, zeta, REGION_TOL)? != ZetaPosition::Inside {
        return Err(Error::Domain(format!("zeta = {zeta} is not in the interior of Z")));
    }
    let l = ell(cfg, zeta)?;
    let a = -(l.im + cfg.cap_b()) / l.re;
    let (_, sigma) = caratheodory_min_sharp(cfg.tau_point().expect("boundary tau"), a);
    let p = AtomicHerglotz::new([(sigma, l.re)], l.im)?;
    Ok(GeneratorSpec::new(cfg.clone(), p))
}

/// `[0, 2 Re ℓ_ζ]`, the values of `β(G)` among generators with `G(0) = ζ` (`|τ| = 1`).
pub fn parabolic_region(cfg: &FixedPointConfig, zeta: Complex64) -> Result<IntervalRegion> {
    require_boundary(cfg)?;
    if zeta.norm() == 0.0 {
        return Err(Error::Domain("zeta must be nonzero".into()));
    }
    if zeta_position(cfg, zeta, REGION_TOL)? == ZetaPosition::Outside {
        return Err(Error::Domain(format!("zeta = {zeta} lies outside Z")));
    }
    Ok(IntervalRegion::new(0.0, 2.0 * ell_in_z(cfg, zeta)?.re))
}

/// `G_{ζ,τ}`: the generator with `G(0) = ζ` and `β(G) = 2 Re ℓ_ζ`.
pub fn extremal_parabolic(cfg: &FixedPointConfig, zeta: Complex64) -> Result<GeneratorSpec> {
    parabolic_region(cfg, zeta)?;
    let l = ell_in_z(cfg, zeta)?;
    let p = AtomicHerglotz::new([(cfg.tau_point().expect("boundary tau"), l.re)], l.im)?;
    Ok(GeneratorSpec::new(cfg.clone(), p))
}

/// Range of `λ(G)` over the whole class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum LambdaRange {
    Disk(DiskRegion),
    Interval(IntervalRegion),
}

/// The range of `λ(G)`: `{|ω − r| ≤ r}` for `|τ| < 1`, `[0, r]` for `|τ| = 1`, together
/// with the unique generator maximizing `Re λ` (`p = −iB`).
pub fn lambda_range(cfg: &FixedPointConfig) -> (LambdaRange, GeneratorSpec) {
    let r = cfg.r();
    let range = if cfg.is_boundary() {
        LambdaRange::Interval(IntervalRegion::new(0.0, r))
    } else {
        LambdaRange::Disk(DiskRegion::new(Complex64::new(r, 0.0), r))
    };
    (range, GeneratorSpec::new(cfg.clone(), AtomicHerglotz::trivial(-cfg.cap_b())))
}

/// One evaluated inequality `lhs (relation) rhs`, with `slack >= 0` when it holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub relation: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

impl InequalityCheck {
    fn le(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Self { name, relation: "<=", lhs, rhs, slack: rhs - lhs }
    }

    fn ge(name: &'static str, lhs: f64, rhs: f64) -> Self {
        Self { name, relation: ">=", lhs, rhs, slack: lhs - rhs }
    }

    /// Magnitude against which `slack` is compared.
    pub fn scale(&self) -> f64 {
        1.0f64.max(self.lhs.abs()).max(self.rhs.abs())
    }

    /// True when `slack < −tol·scale`.
    pub fn violated(&self, tol: f64) -> bool {
        self.slack < -tol * self.scale()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub checks: Vec<InequalityCheck>,
    /// Observations that are not violations (e.g. near-coincidences on `∂Z`).
    pub notes: Vec<String>,
}

impl InequalityReport {
    pub fn violations(&self, tol: f64) -> Vec<&InequalityCheck> {
        self.checks.iter().filter(|c| c.violated(tol)).collect()
    }
}

/// Evaluates every inequality that applies to `spec` (selected by the position of `τ`).
pub fn inequality_suite(spec: &GeneratorSpec) -> Result<InequalityReport> {
    if spec.is_trivial() {
        return Err(Error::TrivialGenerator);
    }
    let cfg = spec.config();
    let lambda = spec.dw_spectral_value();
    let g0 = spec.eval(c0())?;
    let s = cfg.inv_lambda_sum();
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    if cfg.is_origin() {
        checks.push(InequalityCheck::le("lambda-disk", (lambda - cfg.r()).norm(), cfg.r()));
        checks.push(InequalityCheck::ge("lambda-reciprocal", 2.0 * (1.0 / lambda).re, s));
        let g2 = spec.second_derivative(c0())?;
        let center: Complex64 =
            cfg.sigmas().iter().zip(cfg.lambdas()).map(|(s, l)| s.point().conj() / l.abs()).sum();
        let lhs = (g2 / (2.0 * lambda * lambda) - center).norm();
        checks.push(InequalityCheck::le("second-derivative-disk", lhs, 2.0 * (1.0 / lambda).re - s));
        return Ok(InequalityReport { checks, notes });
    }

    let tau = cfg.tau();
    let q = tau / g0;
    let x = q.re - cfg.cap_a();
    checks.push(InequalityCheck::ge("origin-value", q.re, cfg.cap_a()));

    if !cfg.is_boundary() {
        let t = tau.norm();
        let t2 = t * t;
        let eta = (1.0 - t2) / lambda;
        let shifted = eta.re - (1.0 - t2) * s / 2.0;
        checks.push(InequalityCheck::ge("eta-real-lower", shifted, (1.0 - t) / (1.0 + t) * x));
        checks.push(InequalityCheck::le("eta-real-upper", shifted, (1.0 + t) / (1.0 - t) * x));
        checks.push(InequalityCheck::le(
            "eta-imaginary",
            ((eta - q).im - cfg.cap_b()).abs(),
            2.0 * t * x / (1.0 - t2),
        ));
        if let ChartedRegion::Disk { disk, .. } = region_omega(cfg, g0)? {
            checks.push(InequalityCheck::le("omega-disk", (eta - disk.center).norm(), disk.radius));
        }
        checks.push(InequalityCheck::ge("lambda-reciprocal", 2.0 * (1.0 / lambda).re, s));
        return Ok(InequalityReport { checks, notes });
    }

    let lam = lambda.re;
    let r = cfg.r();
    checks.push(InequalityCheck::ge("lambda-nonnegative", lam, 0.0));
    checks.push(InequalityCheck::le("lambda-max", lam, r));
    let w = Complex64::new(x, q.im + cfg.cap_b());
    // Classification by tolerance can put a genuinely interior G(0) on ∂Z; a measure with
    // positive mass means ζ is interior and the continuous bound applies.
    let p = spec.p().expect("nontrivial");
    let massless = p.total_mass() == 0.0 && p.offset() == 0.0;
    match zeta_position(cfg, g0, REGION_TOL)? {
        ZetaPosition::Boundary if massless => {
            let res = boundary_coincidence_residual(cfg, g0);
            if res <= 1e-6 {
                notes.push(format!("G(0) is within {res:e} of the boundary coincidence point"));
            }
            let iz = interval_i(cfg, g0)?;
            checks.push(InequalityCheck::le("lambda-interval", lam, iz.hi));
        }
        _ => {
            checks.push(InequalityCheck::le("lambda-interval", lam, boundary_f(cfg, w)));
            if lam > 0.0 {
                checks.push(InequalityCheck::ge("hyperbolic-quadratic", 2.0 * x * (1.0 / lam - s), w.norm_sqr()));
            }
        }
    }
    let beta = spec.beta()?;
    checks.push(InequalityCheck::ge("beta-nonnegative", beta, 0.0));
    checks.push(InequalityCheck::le("beta-max", beta, 2.0 * x.max(0.0)));
    Ok(InequalityReport { checks, notes })
}

/// Tallies of one inequality over a seeded random run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteTally {
    pub name: &'static str,
    pub checks: usize,
    /// `slack < −warn_tol·scale`.
    pub warnings: usize,
    /// `slack < −fail_tol·scale`.
    pub violations: usize,
    /// Smallest `slack/scale` seen.
    pub min_scaled_slack: f64,
}

/// Result of [`random_suite`] for one regime.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub regime: &'static str,
    pub specs: usize,
    /// Sorted by inequality name.
    pub tallies: Vec<SuiteTally>,
    pub notes: usize,
}

impl SuiteSummary {
    pub fn violations(&self) -> usize {
        self.tallies.iter().map(|t| t.violations).sum()
    }

    pub fn warnings(&self) -> usize {
        self.tallies.iter().map(|t| t.warnings).sum()
    }
}

/// Runs [`inequality_suite`] on samples `0..count` of [`indexed_spec`], sharded across
/// threads. The summary does not depend on the number of threads.
///
/// [`indexed_spec`]: crate::sampling::indexed_spec
pub fn random_suite(seed: u64, regime: Regime, count: usize, warn_tol: f64, fail_tol: f64) -> Result<SuiteSummary> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(count.max(1));
    let chunk = count.div_ceil(workers.max(1)).max(1);
    type Shard = Result<(BTreeMap<&'static str, SuiteTally>, usize)>;
    let run = |lo: usize, hi: usize| -> Shard {
        let mut tallies: BTreeMap<&'static str, SuiteTally> = BTreeMap::new();
        let mut notes = 0;
        for i in lo..hi {
            let rep = inequality_suite(&indexed_spec(seed, regime, i as u64))?;
            notes += rep.notes.len();
            for c in &rep.checks {
                let t = tallies.entry(c.name).or_insert(SuiteTally {
                    name: c.name,
                    checks: 0,
                    warnings: 0,
                    violations: 0,
                    min_scaled_slack: f64::INFINITY,
                });
                t.checks += 1;
                t.warnings += usize::from(c.violated(warn_tol));
                t.violations += usize::from(c.violated(fail_tol));
                t.min_scaled_slack = t.min_scaled_slack.min(c.slack / c.scale());
            }
        }
        Ok((tallies, notes))
    };
    let shards: Vec<Shard> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..count)
            .step_by(chunk)
            .map(|lo| scope.spawn(move || run(lo, (lo + chunk).min(count))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut merged: BTreeMap<&'static str, SuiteTally> = BTreeMap::new();
    let mut notes = 0;
    for shard in shards {
        let (tallies, n) = shard?;
        notes += n;
        for (name, t) in tallies {
            match merged.get_mut(name) {
                Some(m) => {
                    m.checks += t.checks;
                    m.warnings += t.warnings;
                    m.violations += t.violations;
                    m.min_scaled_slack = m.min_scaled_slack.min(t.min_scaled_slack);
                }
                None => {
                    merged.insert(name, t);
                }
            }
        }
    }
    Ok(SuiteSummary { regime: regime.name(), specs: count, tallies: merged.into_values().collect(), notes })
}
