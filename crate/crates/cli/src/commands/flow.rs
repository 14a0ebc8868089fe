use std::fmt::Write as _;

use semigen::generator::{BerksonPortaSpec, GeneratorSpec};
use semigen::semiflow::{integrate_trajectory, OdeSettings, Trajectory};
use semigen::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::output::{formats, read_config, to_json, Cx, Format, OutDir};
use crate::Common;

const DEFAULT_SAMPLES: usize = 10;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FlowConfig {
    generator: Option<GeneratorSpec>,
    berkson_porta: Option<BerksonPortaSpec>,
    z0: Cx,
    t: f64,
    /// Sample intervals on `[0, t]`.
    samples: Option<usize>,
    #[serde(default = "yes")]
    derivative: bool,
    #[serde(default)]
    settings: Option<OdeSettingsJson>,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OdeSettingsJson {
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
    max_step: Option<f64>,
    boundary_guard: Option<f64>,
}

impl OdeSettingsJson {
    fn resolve(&self) -> OdeSettings {
        let d = OdeSettings::default();
        OdeSettings {
            rel_tol: self.rel_tol.unwrap_or(d.rel_tol),
            abs_tol: self.abs_tol.unwrap_or(d.abs_tol),
            max_step: self.max_step.unwrap_or(d.max_step),
            boundary_guard: self.boundary_guard.unwrap_or(d.boundary_guard),
        }
    }
}

#[derive(Serialize)]
struct Row {
    t: f64,
    re: f64,
    im: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    dphi: Option<Cx>,
}

fn csv(tr: &Trajectory) -> String {
    let mut s = String::from("t,re,im,dre,dim\n");
    for (j, (t, w)) in tr.times.iter().zip(&tr.points).enumerate() {
        match &tr.derivs {
            Some(d) => writeln!(s, "{t},{},{},{},{}", w.re, w.im, d[j].re, d[j].im),
            None => writeln!(s, "{t},{},{},,", w.re, w.im),
        }
        .expect("write to string");
    }
    s
}

pub fn run(common: &Common) -> Result<(), CliError> {
    let fmts = formats(common, &[Format::Csv], &[Format::Csv, Format::Json])?;
    let fc: FlowConfig = read_config(common)?;
    let samples = common.samples.or(fc.samples).unwrap_or(DEFAULT_SAMPLES);
    let settings = fc.settings.as_ref().map_or_else(OdeSettings::default, OdeSettingsJson::resolve);
    let z0 = Complex64::from(fc.z0);
    let tr = match (&fc.generator, &fc.berkson_porta) {
        (Some(g), None) => integrate_trajectory(g, z0, fc.t, samples, fc.derivative, &settings)?,
        (None, Some(bp)) => integrate_trajectory(bp, z0, fc.t, samples, fc.derivative, &settings)?,
        _ => return Err(CliError::Parse("give exactly one of \"generator\" and \"berkson_porta\"".into())),
    };
    let out = OutDir::create(common)?;
    for f in fmts {
        match f {
            Format::Csv => out.write("trajectory.csv", &csv(&tr))?,
            Format::Json => {
                let rows: Vec<Row> = tr
                    .times
                    .iter()
                    .zip(&tr.points)
                    .enumerate()
                    .map(|(j, (t, w))| Row { t: *t, re: w.re, im: w.im, dphi: tr.derivs.as_ref().map(|d| d[j].into()) })
                    .collect();
                out.write("trajectory.json", &to_json(&rows))?;
            }
            Format::Svg => unreachable!("filtered by formats"),
        }
    }
    Ok(())
}
