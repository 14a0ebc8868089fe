use std::collections::BTreeMap;
use std::f64::consts::TAU;

use semigen::generator::{FixedPointConfig, GeneratorSpec};
use semigen::herglotz::BoundaryPoint;
use semigen::value_regions::{
    extremal_boundary_of_z, extremal_hyperbolic, extremal_interior, extremal_origin, extremal_parabolic,
    interval_i, lambda_range, parabolic_region, region_omega, region_omega_origin, region_z, region_z_omega,
    zeta_position, ChartedRegion, DiskRegion, IntervalRegion, LambdaRange, ZetaPosition, REGION_TOL,
};
use semigen::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::output::{curve_csv, formats, read_config, svg, to_json, Curve, Cx, Format, OutDir, CURVE_SAMPLES};
use crate::{Common, RegionKind};

#[derive(Debug, Deserialize)]
struct RegionConfig {
    #[serde(flatten)]
    config: FixedPointConfig,
    /// Prescribed `G(0)`.
    zeta: Option<Cx>,
    /// Prescribed `λ(G)` (`τ = 0`).
    omega: Option<Cx>,
    /// Selects the boundary point of the extremal (default angle 0).
    sigma: Option<BoundaryPoint>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum Region {
    Disk(DiskRegion),
    Charted(ChartedRegion),
    Interval(IntervalRegion),
    Lambda(LambdaRange),
}

#[derive(Serialize)]
struct Extremal {
    generator: GeneratorSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    second_derivative: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
}

impl Extremal {
    fn new(generator: GeneratorSpec) -> Self {
        Self { generator, lambda: None, second_derivative: None, beta: None }
    }

    fn with_lambda(generator: GeneratorSpec) -> Self {
        let lambda = Some(generator.dw_spectral_value().into());
        Self { lambda, ..Self::new(generator) }
    }
}

#[derive(Serialize)]
struct Descriptor {
    kind: &'static str,
    regions: BTreeMap<String, Region>,
    /// Position of `zeta` relative to `Z` at the membership tolerance.
    #[serde(skip_serializing_if = "Option::is_none")]
    zeta_position: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extremal: Option<Extremal>,
}

fn disk_curve(name: &str, d: &DiskRegion) -> Curve {
    let samples = (0..CURVE_SAMPLES)
        .map(|j| {
            let t = TAU * j as f64 / CURVE_SAMPLES as f64;
            (t, d.boundary_point(t))
        })
        .collect();
    Curve { name: name.into(), samples }
}

fn charted_curve(name: &str, r: &ChartedRegion) -> Curve {
    Curve { name: name.into(), samples: r.boundary_samples(CURVE_SAMPLES) }
}

/// Samples of `[lo, hi]` on the real axis, parametrized by `s ∈ [0, 1]`.
fn interval_curve(name: &str, i: &IntervalRegion) -> Curve {
    let samples = (0..CURVE_SAMPLES)
        .map(|j| {
            let s = j as f64 / (CURVE_SAMPLES - 1) as f64;
            (s, Complex64::new(i.lo + s * (i.hi - i.lo), 0.0))
        })
        .collect();
    Curve { name: name.into(), samples }
}

fn require(v: Option<Cx>, name: &str, kind: &str) -> Result<Complex64, CliError> {
    v.map(Complex64::from).ok_or_else(|| CliError::Parse(format!("region {kind} needs \"{name}\"")))
}

pub fn run(kind: RegionKind, common: &Common) -> Result<(), CliError> {
    let fmts = formats(common, &[Format::Csv, Format::Svg, Format::Json], &[Format::Csv, Format::Svg, Format::Json])?;
    let rc: RegionConfig = read_config(common)?;
    let cfg = &rc.config;
    let sigma = rc.sigma.unwrap_or(BoundaryPoint::new(0.0));
    let mut regions: BTreeMap<String, Region> = BTreeMap::new();
    let mut curves = Vec::new();
    let mut extremal = None;
    let tol = common.tolerance.unwrap_or(REGION_TOL);
    let position = match rc.zeta {
        Some(z) if !cfg.is_origin() => Some(match zeta_position(cfg, z.into(), tol)? {
            ZetaPosition::Inside => "inside",
            ZetaPosition::Boundary => "boundary",
            ZetaPosition::Outside => "outside",
        }),
        _ => None,
    };

    let name = match kind {
        RegionKind::Interior => {
            if cfg.is_boundary() {
                return Err(semigen::Error::Domain("region interior requires |tau| < 1".into()).into());
            }
            let z = region_z(cfg)?;
            curves.push(disk_curve("z", &z));
            regions.insert("z".into(), Region::Disk(z));
            if let Some(zeta) = rc.zeta.map(Complex64::from) {
                let omega = region_omega(cfg, zeta)?;
                curves.push(charted_curve("omega", &omega));
                regions.insert("omega".into(), Region::Charted(omega));
                extremal = match zeta_position(cfg, zeta, REGION_TOL)? {
                    ZetaPosition::Inside => Some(Extremal::with_lambda(extremal_interior(cfg, zeta, sigma)?)),
                    _ if zeta.norm() > 0.0 => Some(Extremal::with_lambda(extremal_boundary_of_z(cfg, zeta)?)),
                    _ => None,
                };
            }
            "interior"
        }
        RegionKind::Origin => {
            let omega_disk = region_omega_origin(cfg)?;
            curves.push(disk_curve("omega", &omega_disk));
            regions.insert("omega".into(), Region::Disk(omega_disk));
            if let Some(omega) = rc.omega.map(Complex64::from) {
                let zw = region_z_omega(cfg, omega)?;
                curves.push(charted_curve("z_omega", &zw));
                regions.insert("z_omega".into(), Region::Charted(zw));
                if omega.norm() > 0.0 {
                    let g = extremal_origin(cfg, omega, sigma)?;
                    let d2 = g.second_derivative(Complex64::new(0.0, 0.0))?;
                    extremal = Some(Extremal { second_derivative: Some(d2.into()), ..Extremal::with_lambda(g) });
                }
            }
            "origin"
        }
        RegionKind::Boundary => {
            let zeta = require(rc.zeta, "zeta", "boundary")?;
            let z = region_z(cfg)?;
            let i = interval_i(cfg, zeta)?;
            curves.push(disk_curve("z", &z));
            curves.push(interval_curve("interval", &i));
            regions.insert("z".into(), Region::Disk(z));
            regions.insert("interval".into(), Region::Interval(i));
            if zeta_position(cfg, zeta, REGION_TOL)? == ZetaPosition::Inside {
                extremal = Some(Extremal::with_lambda(extremal_hyperbolic(cfg, zeta)?));
            }
            "boundary"
        }
        RegionKind::Parabolic => {
            let zeta = require(rc.zeta, "zeta", "parabolic")?;
            let z = region_z(cfg)?;
            let i = parabolic_region(cfg, zeta)?;
            curves.push(disk_curve("z", &z));
            curves.push(interval_curve("beta", &i));
            regions.insert("z".into(), Region::Disk(z));
            regions.insert("beta".into(), Region::Interval(i));
            let g = extremal_parabolic(cfg, zeta)?;
            let beta = g.beta()?;
            extremal = Some(Extremal { beta: Some(beta), ..Extremal::new(g) });
            "parabolic"
        }
        RegionKind::Lambda => {
            let (range, g) = lambda_range(cfg);
            curves.push(match &range {
                LambdaRange::Disk(d) => disk_curve("lambda", d),
                LambdaRange::Interval(i) => interval_curve("lambda", i),
            });
            regions.insert("lambda".into(), Region::Lambda(range));
            extremal = Some(Extremal::with_lambda(g));
            "lambda"
        }
    };

    let out = OutDir::create(common)?;
    for f in fmts {
        match f {
            Format::Csv => {
                for c in &curves {
                    out.write(&format!("{name}_{}.csv", c.name), &curve_csv(c))?;
                }
            }
            Format::Svg => out.write(&format!("{name}.svg"), &svg(&curves, &[]))?,
            Format::Json => {
                let d = Descriptor {
                    kind: name,
                    regions: std::mem::take(&mut regions),
                    zeta_position: position,
                    extremal: extremal.take(),
                };
                out.write(&format!("{name}.json"), &to_json(&d))?;
            }
        }
    }
    Ok(())
}
