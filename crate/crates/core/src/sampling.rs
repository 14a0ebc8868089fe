//! Random generators for property tests and the verification suite.
//!
//! `n` is uniform in `1..=4`, angles uniform, `λ_k = −exp(U[−2, 2])`, `p` has `0..=3`
//! atoms with masses `exp(U[−3, 1])` (a quarter of them placed on a point of `F`),
//! `γ ∼ U[−5, 5]`, and `τ` is uniform in the disk or on the circle.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::generator::{FixedPointConfig, GeneratorSpec};
use crate::herglotz::{AtomicHerglotz, BoundaryPoint};

/// Which theorem a random spec exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `0 < |τ| < 1`.
    Interior,
    /// `τ = 0`.
    Origin,
    /// `|τ| = 1` and `p + p₀` has vanishing contact value at `τ`, so `λ(G) > 0`.
    BoundaryHyperbolic,
    /// `|τ| = 1` and `λ(G) = 0`: either an atom of `p` at `τ` or a nonzero contact value.
    BoundaryParabolic,
}

impl Regime {
    pub const ALL: [Regime; 4] =
        [Regime::Interior, Regime::Origin, Regime::BoundaryHyperbolic, Regime::BoundaryParabolic];

    pub fn name(self) -> &'static str {
        match self {
            Regime::Interior => "interior",
            Regime::Origin => "origin",
            Regime::BoundaryHyperbolic => "boundary-hyperbolic",
            Regime::BoundaryParabolic => "boundary-parabolic",
        }
    }
}

/// The generator used for sample `index` of a run seeded with `seed`, independent of
/// how samples are distributed over threads.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_angle<R: Rng>(rng: &mut R) -> BoundaryPoint {
    BoundaryPoint::new(rng.gen_range(0.0..TAU))
}

pub fn random_config<R: Rng>(rng: &mut R, regime: Regime) -> FixedPointConfig {
    loop {
        let tau = match regime {
            Regime::Interior => Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU)),
            Regime::Origin => Complex64::new(0.0, 0.0),
            Regime::BoundaryHyperbolic | Regime::BoundaryParabolic => random_angle(rng).point(),
        };
        let n = rng.gen_range(1..=4);
        let sigmas = (0..n).map(|_| random_angle(rng)).collect();
        let lambdas = (0..n).map(|_| -rng.gen_range(-2.0f64..2.0).exp()).collect();
        if let Ok(cfg) = FixedPointConfig::new(tau, sigmas, lambdas) {
            if cfg.tau().norm() > 0.0 || regime == Regime::Origin {
                return cfg;
            }
        }
    }
}

/// A random Herglotz function; atoms land on a point of `sigmas` with probability 1/4.
pub fn random_herglotz<R: Rng>(rng: &mut R, sigmas: &[BoundaryPoint]) -> AtomicHerglotz {
    let m = rng.gen_range(0..=3);
    let atoms: Vec<_> = (0..m)
        .map(|_| {
            let point = if !sigmas.is_empty() && rng.gen_bool(0.25) {
                sigmas[rng.gen_range(0..sigmas.len())]
            } else {
                random_angle(rng)
            };
            (point, rng.gen_range(-3.0f64..1.0).exp())
        })
        .collect();
    AtomicHerglotz::new(atoms, rng.gen_range(-5.0..5.0)).expect("valid random data")
}

pub fn random_spec<R: Rng>(rng: &mut R, regime: Regime) -> GeneratorSpec {
    let cfg = random_config(rng, regime);
    let p = random_herglotz(rng, cfg.sigmas());
    let p = match regime {
        Regime::Interior | Regime::Origin => p,
        Regime::BoundaryHyperbolic => {
            let tp = cfg.tau_point().expect("boundary tau");
            let cv = p.contact_value(&tp).expect("no atom at a random point");
            let gamma = p.gamma() - (cv.im + cfg.cap_b());
            let atoms = p.atoms().iter().map(|a| (a.point, a.mass));
            AtomicHerglotz::new(atoms, gamma).expect("valid data")
        }
        Regime::BoundaryParabolic => {
            if rng.gen_bool(0.5) {
                let tp = cfg.tau_point().expect("boundary tau");
                let extra = AtomicHerglotz::new([(tp, rng.gen_range(-3.0f64..1.0).exp())], 0.0)
                    .expect("valid data");
                &p + &extra
            } else {
                p
            }
        }
    };
    GeneratorSpec::new(cfg, p)
}

/// Sample `index` of a seeded run.
pub fn indexed_spec(seed: u64, regime: Regime, index: u64) -> GeneratorSpec {
    random_spec(&mut sample_rng(seed, index), regime)
}
