use std::f64::consts::TAU;
use std::fmt::Write as _;

use semigen::herglotz::BoundaryPoint;
use semigen::loewner::{
    cp_boundary_gamma, cp_experiment, cp_extremal_field, cp_interval, cp_region, random_cp_field, CpPoint, CpTarget,
    CP_SLACK_TOL,
};
use semigen::sampling::sample_rng;
use semigen::semiflow::OdeSettings;
use semigen::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::output::{formats, read_config, svg, to_json, Curve, Cx, Format, OutDir, CURVE_SAMPLES};
use crate::Common;

const DEFAULT_FIELDS: usize = 200;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CpConfig {
    /// Boundary derivatives `a_k > 1`.
    a: Vec<f64>,
    tau: Cx,
    sigmas: Vec<BoundaryPoint>,
    /// Constant of the extremal field; defaults to 0 (interior) or `iγ` (boundary).
    c: Option<Cx>,
    /// Number of random fields.
    fields: Option<usize>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum RegionJson {
    Disk { center: Cx, radius: f64 },
    Interval { lo: f64, hi: f64 },
}

#[derive(Serialize)]
struct PointJson {
    re: f64,
    im: f64,
    slack: f64,
}

impl From<&CpPoint> for PointJson {
    fn from(p: &CpPoint) -> Self {
        Self { re: p.point.re, im: p.point.im, slack: p.slack }
    }
}

#[derive(Serialize)]
struct ExtremalJson {
    c: Cx,
    point: PointJson,
    /// `−log φ'(τ)` from the variational equation (interior `τ`).
    ode: Option<Cx>,
}

#[derive(Serialize)]
struct Report {
    target: Vec<f64>,
    region: RegionJson,
    extremal: ExtremalJson,
    /// Random fields, in seed order.
    points: Vec<PointJson>,
    outside: usize,
}

pub fn run(common: &Common) -> Result<(), CliError> {
    let fmts = formats(common, &[Format::Json, Format::Svg], &[Format::Csv, Format::Svg, Format::Json])?;
    let cc: CpConfig = read_config(common)?;
    let tol = common.tolerance.unwrap_or(CP_SLACK_TOL);
    let target = CpTarget::new(cc.a.clone())?;
    let tau = Complex64::from(cc.tau);
    let boundary = (tau.norm() - 1.0).abs() <= semigen::generator::BOUNDARY_TOL;

    let c = match cc.c {
        Some(c) => Complex64::from(c),
        None if boundary => Complex64::new(0.0, cp_boundary_gamma(tau, &cc.sigmas, &target)),
        None => Complex64::new(0.0, 0.0),
    };
    let ext_field = cp_extremal_field(tau, cc.sigmas.clone(), &target, c)?;
    let settings = OdeSettings::default();
    let ext = cp_experiment(&ext_field, &target, Some(&settings))?;

    let n = common.samples.or(cc.fields).unwrap_or(DEFAULT_FIELDS);
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        let mut rng = sample_rng(common.seed, i as u64);
        let f = random_cp_field(&mut rng, tau, &cc.sigmas, &target)?;
        points.push(cp_experiment(&f, &target, None)?);
    }
    let outside = points.iter().filter(|p| p.slack < -tol).count();

    let (region, curve) = if boundary {
        let i = cp_interval(&target);
        let samples = (0..CURVE_SAMPLES)
            .map(|j| {
                let s = j as f64 / (CURVE_SAMPLES - 1) as f64;
                (s, Complex64::new(i.lo + s * (i.hi - i.lo), 0.0))
            })
            .collect();
        (RegionJson::Interval { lo: i.lo, hi: i.hi }, Curve { name: "interval".into(), samples })
    } else {
        let d = cp_region(&target);
        let samples = (0..CURVE_SAMPLES)
            .map(|j| {
                let t = TAU * j as f64 / CURVE_SAMPLES as f64;
                (t, d.boundary_point(t))
            })
            .collect();
        (RegionJson::Disk { center: d.center.into(), radius: d.radius }, Curve { name: "disk".into(), samples })
    };

    let report = Report {
        target: cc.a,
        region,
        extremal: ExtremalJson { c: c.into(), point: (&ext).into(), ode: ext.ode_point.map(Cx::from) },
        points: points.iter().map(PointJson::from).collect(),
        outside,
    };
    let out = OutDir::create(common)?;
    for f in fmts {
        match f {
            Format::Json => out.write("cowen_pommerenke.json", &to_json(&report))?,
            Format::Svg => {
                let dots: Vec<Complex64> = std::iter::once(ext.point).chain(points.iter().map(|p| p.point)).collect();
                out.write("cowen_pommerenke.svg", &svg(std::slice::from_ref(&curve), &dots))?;
            }
            Format::Csv => {
                let mut s = String::from("index,re,im,slack\n");
                for (i, p) in points.iter().enumerate() {
                    writeln!(s, "{i},{},{},{}", p.point.re, p.point.im, p.slack).expect("write to string");
                }
                out.write("cowen_pommerenke.csv", &s)?;
            }
        }
    }
    println!(
        "r(A) = {}, extremal -log phi'(tau) = {} + {}i (slack {:e}), {outside} of {n} random fields outside",
        target.r(),
        ext.point.re,
        ext.point.im,
        ext.slack
    );
    if outside > 0 || ext.slack < -tol {
        return Err(CliError::Verification(format!("{outside} points outside the region")));
    }
    Ok(())
}
