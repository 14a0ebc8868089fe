//! Generators with a prescribed Denjoy–Wolff point `τ` and boundary regular fixed
//! points `σ_k` with spectral values bounded below by `λ_k`:
//!
//! ```text
//! G(z) = (τ − z)(1 − τ̄z) / (p(z) + p₀(z)),    p₀ = Σ α_k K_{σ_k},  α_k = |τ − σ_k|²/(2|λ_k|)
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::herglotz::{check_in_disk, imag, AtomicHerglotz, BoundaryPoint, RationalHerglotz, ANGLE_TOL};

/// `|τ|` within this of 1 puts the Denjoy–Wolff point on the circle.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Angular tolerance for identifying reciprocal atoms with points of `F`.
const SNAP_TOL: f64 = 1e-7;

/// Relative tolerance for deciding that a boundary contact value vanishes.
pub const CONTACT_TOL: f64 = 1e-10;

/// A vector field on the unit disk with an analytic derivative.
pub trait VectorField: Sync {
    /// `G(z)`; callers guarantee `|z| < 1`.
    fn field(&self, z: Complex64) -> Complex64;
    /// `G'(z)`; callers guarantee `|z| < 1`.
    fn field_derivative(&self, z: Complex64) -> Complex64;
}

/// The data `(τ, F, Λ)` together with the derived constants `α_k`, `A`, `B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConfigJson", into = "ConfigJson")]
pub struct FixedPointConfig {
    tau: Complex64,
    sigmas: Vec<BoundaryPoint>,
    lambdas: Vec<f64>,
    alphas: Vec<f64>,
    cap_a: f64,
    cap_b: f64,
    inv_lambda_sum: f64,
}

impl FixedPointConfig {
    pub fn new(tau: Complex64, sigmas: Vec<BoundaryPoint>, lambdas: Vec<f64>) -> Result<Self> {
        if sigmas.is_empty() {
            return Err(Error::Invalid("at least one boundary fixed point is required".into()));
        }
        if sigmas.len() != lambdas.len() {
            return Err(Error::Invalid(format!(
                "{} boundary points but {} spectral bounds",
                sigmas.len(),
                lambdas.len()
            )));
        }
        if !(tau.re.is_finite() && tau.im.is_finite()) || tau.norm() > 1.0 + BOUNDARY_TOL {
            return Err(Error::Domain(format!("|tau| = {} exceeds 1", tau.norm())));
        }
        let tau = if (tau.norm() - 1.0).abs() <= BOUNDARY_TOL { tau / tau.norm() } else { tau };
        if let Some(l) = lambdas.iter().find(|l| !(l.is_finite() && **l < 0.0)) {
            return Err(Error::Invalid(format!("spectral bounds must be finite and < 0, got {l}")));
        }
        for i in 0..sigmas.len() {
            for j in 0..i {
                if sigmas[i] == sigmas[j] {
                    return Err(Error::Invalid(format!(
                        "boundary fixed points coincide at theta = {}",
                        sigmas[i].theta()
                    )));
                }
            }
            if (sigmas[i].point() - tau).norm() <= ANGLE_TOL {
                return Err(Error::Invalid("the Denjoy-Wolff point coincides with a boundary fixed point".into()));
            }
        }
        let alphas: Vec<f64> = sigmas
            .iter()
            .zip(&lambdas)
            .map(|(s, l)| (tau - s.point()).norm_sqr() / (2.0 * l.abs()))
            .collect();
        let cap_a = alphas.iter().sum();
        let cap_b = sigmas
            .iter()
            .zip(&lambdas)
            .map(|(s, l)| (s.point().conj() * tau).im / l.abs())
            .sum();
        let inv_lambda_sum = lambdas.iter().map(|l| 1.0 / l.abs()).sum();
        Ok(Self { tau, sigmas, lambdas, alphas, cap_a, cap_b, inv_lambda_sum })
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn sigmas(&self) -> &[BoundaryPoint] {
        &self.sigmas
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn n(&self) -> usize {
        self.sigmas.len()
    }

    /// `A = Σ α_k`.
    pub fn cap_a(&self) -> f64 {
        self.cap_a
    }

    /// `B = Σ Im(σ̄_k τ)/|λ_k|`.
    pub fn cap_b(&self) -> f64 {
        self.cap_b
    }

    /// `S = Σ 1/|λ_k|`, which is also `p₀#(τ)` when `|τ| = 1`.
    pub fn inv_lambda_sum(&self) -> f64 {
        self.inv_lambda_sum
    }

    /// `r = (Σ 1/|λ_k|)⁻¹`.
    pub fn r(&self) -> f64 {
        1.0 / self.inv_lambda_sum
    }

    pub fn is_boundary(&self) -> bool {
        (self.tau.norm() - 1.0).abs() <= BOUNDARY_TOL
    }

    pub fn is_origin(&self) -> bool {
        self.tau.norm() == 0.0
    }

    /// `τ` as a boundary point, when it lies on the circle.
    pub fn tau_point(&self) -> Option<BoundaryPoint> {
        self.is_boundary().then(|| BoundaryPoint::from_complex(self.tau))
    }

    /// `p₀` as a Herglotz function with atoms `(σ_k, α_k)`.
    pub fn p0(&self) -> AtomicHerglotz {
        AtomicHerglotz::new(self.sigmas.iter().copied().zip(self.alphas.iter().copied()), 0.0)
            .expect("alphas are positive")
    }

    pub fn eval_p0(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z)?;
        Ok(self.p0().eval_unchecked(z))
    }

    /// `p₀(τ)`: the interior value, or the contact value `iB` when `|τ| = 1`.
    pub fn p0_at_tau(&self) -> Complex64 {
        if self.is_boundary() {
            imag(self.cap_b)
        } else {
            self.p0().eval_unchecked(self.tau)
        }
    }

    /// The same `(τ, F)` with new spectral bounds.
    pub fn with_lambdas(&self, lambdas: Vec<f64>) -> Result<Self> {
        Self::new(self.tau, self.sigmas.clone(), lambdas)
    }
}

/// A generator `G = (τ − z)(1 − τ̄z)/(p + p₀)` of the class fixed by `config`,
/// or the trivial generator `G ≡ 0` (formally `p = ∞`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct GeneratorSpec {
    config: FixedPointConfig,
    p: Option<AtomicHerglotz>,
}

impl GeneratorSpec {
    pub fn new(config: FixedPointConfig, p: AtomicHerglotz) -> Self {
        Self { config, p: Some(p) }
    }

    /// The trivial generator `G ≡ 0`.
    pub fn zero(config: FixedPointConfig) -> Self {
        Self { config, p: None }
    }

    pub fn config(&self) -> &FixedPointConfig {
        &self.config
    }

    /// The Herglotz part `p`, `None` for the trivial generator.
    pub fn p(&self) -> Option<&AtomicHerglotz> {
        self.p.as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        self.p.is_none()
    }

    /// `p + p₀`, the reciprocal of the Berkson–Porta function.
    pub fn denominator(&self) -> Option<AtomicHerglotz> {
        self.p.as_ref().map(|p| p + &self.config.p0())
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z)?;
        Ok(self.field(z))
    }

    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z)?;
        Ok(self.field_derivative(z))
    }

    pub fn second_derivative(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z)?;
        let Some(p) = &self.p else { return Ok(Complex64::new(0.0, 0.0)) };
        let p0 = self.config.p0();
        let tau = self.config.tau;
        let n = (tau - z) * (1.0 - tau.conj() * z);
        let n1 = -1.0 - tau.norm_sqr() + 2.0 * tau.conj() * z;
        let n2 = 2.0 * tau.conj();
        let d = p.eval_unchecked(z) + p0.eval_unchecked(z);
        let d1 = p.derivative_unchecked(z) + p0.derivative_unchecked(z);
        let d2 = p.second_derivative_unchecked(z) + p0.second_derivative_unchecked(z);
        Ok(n2 / d - 2.0 * n1 * d1 / (d * d) - n * d2 / (d * d) + 2.0 * n * d1 * d1 / (d * d * d))
    }

    /// The spectral value `λ(G)` at the Denjoy–Wolff point.
    ///
    /// Interior `τ`: `(1 − |τ|²)/(p(τ) + p₀(τ)) = −G'(τ)`, complex with `Re ≥ 0`.
    /// Boundary `τ`: the real number `1/(p#(τ) + Σ|λ_k|⁻¹)` when `p + p₀` has a regular
    /// contact point at `τ` with vanishing contact value, and 0 otherwise.
    pub fn dw_spectral_value(&self) -> Complex64 {
        let Some(p) = &self.p else { return Complex64::new(0.0, 0.0) };
        let c = &self.config;
        if !c.is_boundary() {
            return (1.0 - c.tau.norm_sqr()) / (p.eval_unchecked(c.tau) + c.p0().eval_unchecked(c.tau));
        }
        let tp = c.tau_point().expect("boundary tau");
        let Ok(cv) = p.contact_value(&tp) else { return Complex64::new(0.0, 0.0) };
        let total = cv.im + c.cap_b;
        if total.abs() > CONTACT_TOL * contact_scale(p, c) {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::new(1.0 / (p.p_sharp(&tp) + c.inv_lambda_sum), 0.0)
    }

    /// The spectral value `λ'_k = −|λ_k|/(1 + p★(σ_k)/(2α_k))` at the k-th (0-based)
    /// boundary fixed point; 0 for the trivial generator.
    pub fn brfp_spectral_value(&self, k: usize) -> Result<f64> {
        let c = &self.config;
        if k >= c.n() {
            return Err(Error::Invalid(format!("index {k} out of range for {} fixed points", c.n())));
        }
        let Some(p) = &self.p else { return Ok(0.0) };
        let star = p.p_star(&c.sigmas[k]);
        if star == 0.0 {
            return Ok(c.lambdas[k]);
        }
        Ok(-c.lambdas[k].abs() / (1.0 + star / (2.0 * c.alphas[k])))
    }

    /// All boundary spectral values `λ'_1, …, λ'_n`.
    pub fn brfp_spectral_values(&self) -> Vec<f64> {
        (0..self.config.n()).map(|k| self.brfp_spectral_value(k).expect("index in range")).collect()
    }

    /// `β(G) = p★(τ)` for a boundary Denjoy–Wolff point.
    pub fn beta(&self) -> Result<f64> {
        let Some(tp) = self.config.tau_point() else {
            return Err(Error::Domain("beta requires |tau| = 1".into()));
        };
        let p = self.p.as_ref().ok_or(Error::TrivialGenerator)?;
        Ok(p.p_star(&tp))
    }

    /// The Berkson–Porta form `(τ − z)(1 − τ̄z)·p*` with `p* = 1/(p + p₀)`.
    pub fn to_berkson_porta(&self) -> Result<BerksonPortaSpec> {
        let Some(d) = self.denominator() else {
            return Ok(BerksonPortaSpec::new(self.config.tau, AtomicHerglotz::zero()));
        };
        let q = RationalHerglotz::try_from(d)?.reciprocal()?;
        Ok(BerksonPortaSpec::new(self.config.tau, q.into_herglotz()))
    }

    /// Recovers the representation over `config` from a Berkson–Porta pair, failing
    /// with `NotInClass` when `1/p*` does not dominate `p₀`.
    pub fn from_berkson_porta(config: &FixedPointConfig, bp: &BerksonPortaSpec) -> Result<Self> {
        if (bp.tau - config.tau).norm() > BOUNDARY_TOL {
            return Err(Error::NotInClass("Denjoy-Wolff points differ".into()));
        }
        if bp.pstar.is_trivial() && bp.pstar.gamma() == 0.0 {
            return Ok(Self::zero(config.clone()));
        }
        let d = RationalHerglotz::try_from(bp.pstar.clone())?.reciprocal()?.into_herglotz();
        let scale = 1.0 + d.total_mass();
        // Reciprocal roots are only accurate to the polishing tolerance, so snap them onto F.
        let snapped = d.atoms().iter().map(|x| {
            let p = config.sigmas.iter().find(|s| s.angular_distance(&x.point) < SNAP_TOL);
            (p.copied().unwrap_or(x.point), x.mass)
        });
        let mut rest = AtomicHerglotz::new(snapped, d.gamma())?;
        let mut extra = Vec::new();
        for (s, a) in config.sigmas.iter().zip(&config.alphas) {
            let (m, r) = rest.extract_atom(s);
            if m < a - 1e-9 * scale {
                return Err(Error::NotInClass(format!(
                    "mass {m} at theta = {} is below alpha = {a}",
                    s.theta()
                )));
            }
            if m - a > 1e-9 * scale {
                extra.push((*s, m - a));
            }
            rest = r;
        }
        let atoms = rest.atoms().iter().map(|x| (x.point, x.mass)).chain(extra);
        let p = AtomicHerglotz::new(atoms, rest.gamma())?;
        Ok(Self::new(config.clone(), p))
    }
}

impl GeneratorSpec {
    /// The pointwise combination `(1 − w)·self + w·other` as a Berkson–Porta pair.
    pub fn mix_berkson_porta(&self, other: &GeneratorSpec, w: f64) -> Result<BerksonPortaSpec> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::Weight(format!("mixing weight {w} is not in [0, 1]")));
        }
        if (self.config.tau - other.config.tau).norm() > BOUNDARY_TOL {
            return Err(Error::Invalid("generators have different Denjoy-Wolff points".into()));
        }
        let a = self.to_berkson_porta()?;
        let b = other.to_berkson_porta()?;
        Ok(BerksonPortaSpec::new(self.config.tau, a.pstar.lerp(&b.pstar, w)))
    }

    /// `(1 − w)·self + w·other` for two generators over the same configuration,
    /// represented again over that configuration.
    pub fn convex_combination(&self, other: &GeneratorSpec, w: f64) -> Result<GeneratorSpec> {
        if self.config != other.config {
            return Err(Error::Invalid("generators have different configurations".into()));
        }
        GeneratorSpec::from_berkson_porta(&self.config, &self.mix_berkson_porta(other, w)?)
    }
}

/// Magnitude scale of the terms entering a boundary contact value.
fn contact_scale(p: &AtomicHerglotz, c: &FixedPointConfig) -> f64 {
    let t = c.tau;
    let terms: f64 = p
        .atoms()
        .iter()
        .map(|a| a.mass * ((a.point.point() + t) / (a.point.point() - t)).norm())
        .sum();
    1.0 + terms + p.gamma().abs() + c.cap_b.abs()
}

impl VectorField for GeneratorSpec {
    fn field(&self, z: Complex64) -> Complex64 {
        let Some(p) = &self.p else { return Complex64::new(0.0, 0.0) };
        let tau = self.config.tau;
        (tau - z) * (1.0 - tau.conj() * z) / (p.eval_unchecked(z) + self.config.p0().eval_unchecked(z))
    }

    fn field_derivative(&self, z: Complex64) -> Complex64 {
        let Some(p) = &self.p else { return Complex64::new(0.0, 0.0) };
        let p0 = self.config.p0();
        let tau = self.config.tau;
        let n = (tau - z) * (1.0 - tau.conj() * z);
        let n1 = -1.0 - tau.norm_sqr() + 2.0 * tau.conj() * z;
        let d = p.eval_unchecked(z) + p0.eval_unchecked(z);
        let d1 = p.derivative_unchecked(z) + p0.derivative_unchecked(z);
        (n1 * d - n * d1) / (d * d)
    }
}

/// A generator in Berkson–Porta form `G(z) = (τ − z)(1 − τ̄z)·p*(z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BerksonPortaSpec {
    #[serde(with = "crate::json::complex")]
    tau: Complex64,
    pstar: AtomicHerglotz,
}

impl BerksonPortaSpec {
    pub fn new(tau: Complex64, pstar: AtomicHerglotz) -> Self {
        Self { tau, pstar }
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn pstar(&self) -> &AtomicHerglotz {
        &self.pstar
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z)?;
        Ok(self.field(z))
    }

    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z)?;
        Ok(self.field_derivative(z))
    }
}

impl VectorField for BerksonPortaSpec {
    fn field(&self, z: Complex64) -> Complex64 {
        (self.tau - z) * (1.0 - self.tau.conj() * z) * self.pstar.eval_unchecked(z)
    }

    fn field_derivative(&self, z: Complex64) -> Complex64 {
        let tau = self.tau;
        let n = (tau - z) * (1.0 - tau.conj() * z);
        let n1 = -1.0 - tau.norm_sqr() + 2.0 * tau.conj() * z;
        n1 * self.pstar.eval_unchecked(z) + n * self.pstar.derivative_unchecked(z)
    }
}

/// Every well-formed Berkson–Porta pair is a generator; this checks well-formedness
/// (`|τ| ≤ 1`, finite data).
pub fn is_generator(bp: &BerksonPortaSpec) -> bool {
    let finite = bp.tau.re.is_finite()
        && bp.tau.im.is_finite()
        && bp.pstar.gamma().is_finite()
        && bp.pstar.atoms().iter().all(|a| a.mass.is_finite() && a.mass >= 0.0);
    finite && bp.tau.norm() <= 1.0 + BOUNDARY_TOL
}

#[derive(Serialize, Deserialize)]
struct ConfigJson {
    #[serde(with = "crate::json::complex")]
    tau: Complex64,
    sigmas: Vec<f64>,
    lambdas: Vec<f64>,
}

impl TryFrom<ConfigJson> for FixedPointConfig {
    type Error = Error;

    fn try_from(j: ConfigJson) -> Result<Self> {
        if j.sigmas.iter().any(|s| !s.is_finite()) {
            return Err(Error::Invalid("boundary angles must be finite".into()));
        }
        FixedPointConfig::new(j.tau, j.sigmas.into_iter().map(BoundaryPoint::new).collect(), j.lambdas)
    }
}

impl From<FixedPointConfig> for ConfigJson {
    fn from(c: FixedPointConfig) -> Self {
        ConfigJson { tau: c.tau, sigmas: c.sigmas.iter().map(|s| s.theta()).collect(), lambdas: c.lambdas }
    }
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    #[serde(flatten)]
    config: FixedPointConfig,
    #[serde(default = "zero_p")]
    p: Option<AtomicHerglotz>,
}

fn zero_p() -> Option<AtomicHerglotz> {
    Some(AtomicHerglotz::zero())
}

impl TryFrom<SpecJson> for GeneratorSpec {
    type Error = Error;

    fn try_from(j: SpecJson) -> Result<Self> {
        Ok(GeneratorSpec { config: j.config, p: j.p })
    }
}

impl From<GeneratorSpec> for SpecJson {
    fn from(s: GeneratorSpec) -> Self {
        SpecJson { config: s.config, p: s.p }
    }
}
