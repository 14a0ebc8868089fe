//! Herglotz functions with finitely supported Riesz–Herglotz measures.
//!
//! A Herglotz function is a holomorphic `p` on the unit disk with `Re p >= 0`.
//! Every such function is
//!
//! ```text
//! p(z) = ∫ (ς + z)/(ς - z) dμ(ς) + iγ
//! ```
//!
//! for a positive Borel measure `μ` on the unit circle. [`AtomicHerglotz`] keeps
//! `μ` as a finite list of atoms, plus an optional multiple `c₀` of normalized arc
//! length (which contributes the real constant `c₀` to `p`).

mod counterexample;
mod roots;

use std::f64::consts::TAU;
use std::fmt;
use std::ops::Add;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use counterexample::{counterexample_bound, counterexample_divergence, counterexample_p};

/// Two boundary angles closer than this (mod 2π) denote the same point.
pub const ANGLE_TOL: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A point `σ = e^{iθ}` of the unit circle, stored by its angle `θ ∈ [0, 2π)`.
///
/// Equality is tolerant: two points compare equal when their angles agree
/// modulo `2π` within [`ANGLE_TOL`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(from = "f64", into = "f64")]
pub struct BoundaryPoint {
    theta: f64,
}

impl BoundaryPoint {
    pub fn new(theta: f64) -> Self {
        let mut t = theta.rem_euclid(TAU);
        if t >= TAU {
            t = 0.0;
        }
        Self { theta: t }
    }

    /// Radial projection of a nonzero complex number onto the circle.
    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z.im.atan2(z.re))
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn point(&self) -> Complex64 {
        Complex64::new(self.theta.cos(), self.theta.sin())
    }

    /// The antipodal point `-σ`.
    pub fn antipode(&self) -> Self {
        Self::new(self.theta + std::f64::consts::PI)
    }

    /// Angular distance on the circle, in `[0, π]`.
    pub fn angular_distance(&self, other: &BoundaryPoint) -> f64 {
        let d = (self.theta - other.theta).rem_euclid(TAU);
        d.min(TAU - d)
    }
}

impl PartialEq for BoundaryPoint {
    fn eq(&self, other: &Self) -> bool {
        self.angular_distance(other) <= ANGLE_TOL
    }
}

impl From<f64> for BoundaryPoint {
    fn from(theta: f64) -> Self {
        Self::new(theta)
    }
}

impl From<BoundaryPoint> for f64 {
    fn from(p: BoundaryPoint) -> f64 {
        p.theta
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^(i{})", self.theta)
    }
}

/// The circle kernel `K_ς(z) = (ς + z)/(ς − z)`.
#[inline]
pub fn kernel(s: Complex64, z: Complex64) -> Complex64 {
    (s + z) / (s - z)
}

#[inline]
fn kernel_d1(s: Complex64, z: Complex64) -> Complex64 {
    let d = s - z;
    2.0 * s / (d * d)
}

#[inline]
fn kernel_d2(s: Complex64, z: Complex64) -> Complex64 {
    let d = s - z;
    4.0 * s / (d * d * d)
}

pub(crate) fn check_in_disk(z: Complex64) -> Result<()> {
    if !(z.norm() < 1.0) {
        return Err(Error::Domain(format!("|z| = {} is not < 1", z.norm())));
    }
    Ok(())
}

/// A point mass of the Herglotz measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub point: BoundaryPoint,
    pub mass: f64,
}

/// A Herglotz function with finite atomic measure, imaginary constant `γ`, and a
/// nonnegative real constant `c₀` (`c₀` times normalized arc length in the measure).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HerglotzJson", into = "HerglotzJson")]
pub struct AtomicHerglotz {
    atoms: Vec<Atom>,
    gamma: f64,
    offset: f64,
}

impl AtomicHerglotz {
    /// Builds `Σ mass·K_σ + iγ`. Zero masses are dropped, coincident points merged.
    pub fn new<I>(atoms: I, gamma: f64) -> Result<Self>
    where
        I: IntoIterator<Item = (BoundaryPoint, f64)>,
    {
        if !gamma.is_finite() {
            return Err(Error::Invalid(format!("gamma must be finite, got {gamma}")));
        }
        let mut merged: Vec<Atom> = Vec::new();
        for (point, mass) in atoms {
            if !(mass.is_finite() && mass >= 0.0) {
                return Err(Error::Invalid(format!("atom mass must be finite and >= 0, got {mass}")));
            }
            if mass == 0.0 {
                continue;
            }
            match merged.iter_mut().find(|a| a.point == point) {
                Some(a) => a.mass += mass,
                None => merged.push(Atom { point, mass }),
            }
        }
        merged.sort_by(|a, b| a.point.theta.total_cmp(&b.point.theta));
        Ok(Self { atoms: merged, gamma, offset: 0.0 })
    }

    /// Adds the real constant `c₀ >= 0`.
    pub fn with_offset(mut self, offset: f64) -> Result<Self> {
        if !(offset.is_finite() && offset >= 0.0) {
            return Err(Error::Invalid(format!("offset must be finite and >= 0, got {offset}")));
        }
        self.offset = offset;
        Ok(self)
    }

    /// The trivial Herglotz function `iγ`.
    pub fn trivial(gamma: f64) -> Self {
        Self { atoms: Vec::new(), gamma, offset: 0.0 }
    }

    pub fn zero() -> Self {
        Self::trivial(0.0)
    }

    /// The constant function `c`, `Re c >= 0`.
    pub fn constant(c: Complex64) -> Result<Self> {
        Self::trivial(c.im).with_offset(c.re)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Total mass of the measure, equal to `Re p(0)`.
    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum::<f64>() + self.offset
    }

    /// True when `p` is a purely imaginary constant.
    pub fn is_trivial(&self) -> bool {
        self.atoms.is_empty() && self.offset == 0.0
    }

    pub fn mass_at(&self, sigma: &BoundaryPoint) -> f64 {
        self.atoms.iter().find(|a| a.point == *sigma).map_or(0.0, |a| a.mass)
    }

    pub fn has_atom_at(&self, sigma: &BoundaryPoint) -> bool {
        self.mass_at(sigma) > 0.0
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z)?;
        Ok(self.eval_unchecked(z))
    }

    /// Evaluation without the domain check; valid wherever no atom sits at `z`.
    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(self.offset, self.gamma);
        for a in &self.atoms {
            acc += a.mass * kernel(a.point.point(), z);
        }
        acc
    }

    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z)?;
        Ok(self.derivative_unchecked(z))
    }

    pub(crate) fn derivative_unchecked(&self, z: Complex64) -> Complex64 {
        self.atoms.iter().map(|a| a.mass * kernel_d1(a.point.point(), z)).sum()
    }

    pub(crate) fn second_derivative_unchecked(&self, z: Complex64) -> Complex64 {
        self.atoms.iter().map(|a| a.mass * kernel_d2(a.point.point(), z)).sum()
    }

    /// `p★(σ)`: the angular limit of `(1 − σ̄z)p(z)`, twice the atom mass at `σ`.
    pub fn p_star(&self, sigma: &BoundaryPoint) -> f64 {
        2.0 * self.mass_at(sigma)
    }

    /// `p#(σ) = 2∫|ς − σ|⁻² dμ(ς)`, `+∞` when the integral diverges.
    pub fn p_sharp(&self, sigma: &BoundaryPoint) -> f64 {
        if self.offset > 0.0 || self.has_atom_at(sigma) {
            return f64::INFINITY;
        }
        let s = sigma.point();
        2.0 * self
            .atoms
            .iter()
            .map(|a| a.mass / (a.point.point() - s).norm_sqr())
            .sum::<f64>()
    }

    /// The boundary value `p(σ)` at a point where `|ς − σ|⁻¹` is integrable.
    ///
    /// Computed from the kernel, so the result is purely imaginary up to rounding.
    pub fn contact_value(&self, sigma: &BoundaryPoint) -> Result<Complex64> {
        if self.has_atom_at(sigma) {
            return Err(Error::AtomAtPoint { theta: sigma.theta });
        }
        if self.offset > 0.0 {
            return Err(Error::NotContactPoint { theta: sigma.theta });
        }
        let s = sigma.point();
        let mut acc = Complex64::new(0.0, self.gamma);
        for a in &self.atoms {
            acc += a.mass * kernel(a.point.point(), s);
        }
        Ok(acc)
    }

    /// Splits off the atom at `σ`: returns `(mass, remainder)` with
    /// `p = remainder + mass·K_σ`.
    pub fn extract_atom(&self, sigma: &BoundaryPoint) -> (f64, AtomicHerglotz) {
        let mass = self.p_star(sigma) / 2.0;
        let mut rest = self.clone();
        rest.atoms.retain(|a| a.point != *sigma);
        (mass, rest)
    }

    /// `s·p` for `s >= 0`.
    pub fn scaled(&self, s: f64) -> AtomicHerglotz {
        assert!(s >= 0.0 && s.is_finite(), "scale factor must be finite and >= 0");
        if s == 0.0 {
            return Self::zero();
        }
        Self {
            atoms: self.atoms.iter().map(|a| Atom { point: a.point, mass: a.mass * s }).collect(),
            gamma: self.gamma * s,
            offset: self.offset * s,
        }
    }

    /// Convex combination `(1 − w)·self + w·other`.
    pub fn lerp(&self, other: &AtomicHerglotz, w: f64) -> AtomicHerglotz {
        &self.scaled(1.0 - w) + &other.scaled(w)
    }
}

impl Add for &AtomicHerglotz {
    type Output = AtomicHerglotz;

    fn add(self, rhs: &AtomicHerglotz) -> AtomicHerglotz {
        let atoms = self.atoms.iter().chain(&rhs.atoms).map(|a| (a.point, a.mass));
        let sum = AtomicHerglotz::new(atoms, self.gamma + rhs.gamma)
            .expect("sum of valid Herglotz functions is valid");
        AtomicHerglotz { offset: self.offset + rhs.offset, ..sum }
    }
}

/// The extreme point `K_ς` of the Carathéodory class (`p(0) = 1`).
///
/// The family `(σ − z)/(σ + z)` is the same set of functions: it equals `K_{−σ}`.
pub fn caratheodory_extreme(sigma: BoundaryPoint) -> AtomicHerglotz {
    AtomicHerglotz::new([(sigma, 1.0)], 0.0).expect("unit atom is valid")
}

/// A member of `𝒫_m`: `m >= 1` atoms, all masses strictly positive, no real constant.
///
/// Such a function is rational of degree `m` with simple poles on the circle, and
/// its reciprocal is again in `𝒫_m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AtomicHerglotz", into = "AtomicHerglotz")]
pub struct RationalHerglotz(AtomicHerglotz);

impl RationalHerglotz {
    pub fn as_herglotz(&self) -> &AtomicHerglotz {
        &self.0
    }

    pub fn into_herglotz(self) -> AtomicHerglotz {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.atoms.len()
    }

    /// The function `1/p`, again in `𝒫_m`.
    ///
    /// The atoms of `1/p` sit at the zeros `κ_j` of `p` (found as companion-matrix
    /// eigenvalues of the numerator) with masses `1/(2 p#(κ_j))`.
    pub fn reciprocal(&self) -> Result<RationalHerglotz> {
        let p = &self.0;
        let zeros = roots::unit_circle_zeros(p)?;
        let mut atoms = Vec::with_capacity(zeros.len());
        for kappa in zeros {
            let sharp = p.p_sharp(&kappa);
            if !(sharp.is_finite() && sharp > 0.0) {
                return Err(Error::RootFindingFailure(format!(
                    "zero at theta = {} collides with a pole",
                    kappa.theta()
                )));
            }
            atoms.push((kappa, 0.5 / sharp));
        }
        let inv0 = 1.0 / p.eval_unchecked(Complex64::new(0.0, 0.0));
        let q = AtomicHerglotz::new(atoms, inv0.im)?;
        if q.atoms.len() != self.degree() {
            return Err(Error::RootFindingFailure("zeros are not simple".into()));
        }
        Ok(RationalHerglotz(q))
    }
}

impl TryFrom<AtomicHerglotz> for RationalHerglotz {
    type Error = Error;

    fn try_from(p: AtomicHerglotz) -> Result<Self> {
        if p.atoms.is_empty() {
            return Err(Error::Invalid("a rational Herglotz function needs at least one atom".into()));
        }
        if p.offset != 0.0 {
            return Err(Error::Invalid("a rational Herglotz function has no real constant".into()));
        }
        Ok(Self(p))
    }
}

impl From<RationalHerglotz> for AtomicHerglotz {
    fn from(r: RationalHerglotz) -> Self {
        r.0
    }
}

#[derive(Serialize, Deserialize)]
struct AtomJson {
    theta: f64,
    mass: f64,
}

#[derive(Serialize, Deserialize)]
struct HerglotzJson {
    #[serde(default)]
    atoms: Vec<AtomJson>,
    #[serde(default)]
    gamma: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    offset: f64,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

impl TryFrom<HerglotzJson> for AtomicHerglotz {
    type Error = Error;

    fn try_from(j: HerglotzJson) -> Result<Self> {
        if j.atoms.iter().any(|a| !a.theta.is_finite()) {
            return Err(Error::Invalid("atom angle must be finite".into()));
        }
        AtomicHerglotz::new(j.atoms.into_iter().map(|a| (BoundaryPoint::new(a.theta), a.mass)), j.gamma)?
            .with_offset(j.offset)
    }
}

impl From<AtomicHerglotz> for HerglotzJson {
    fn from(p: AtomicHerglotz) -> Self {
        HerglotzJson {
            atoms: p.atoms.iter().map(|a| AtomJson { theta: a.point.theta, mass: a.mass }).collect(),
            gamma: p.gamma,
            offset: p.offset,
        }
    }
}

/// `i·x` as a complex number.
#[inline]
pub(crate) fn imag(x: f64) -> Complex64 {
    I * x
}
