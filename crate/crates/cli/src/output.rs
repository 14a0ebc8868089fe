use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use semigen::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::Common;

/// Boundary samples per region curve.
pub const CURVE_SAMPLES: usize = 720;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Json,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Svg => "svg",
            Format::Json => "json",
        }
    }
}

/// The requested formats, or `defaults` when none were given. Requests outside
/// `supported` are a configuration error.
pub fn formats(common: &Common, defaults: &[Format], supported: &[Format]) -> Result<Vec<Format>, CliError> {
    let mut out = if common.format.is_empty() { defaults.to_vec() } else { common.format.clone() };
    if let Some(f) = out.iter().find(|f| !supported.contains(f)) {
        return Err(CliError::Parse(format!("format {} is not available for this command", f.name())));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `{"re": .., "im": ..}` in configs and reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Cx> for Complex64 {
    fn from(c: Cx) -> Self {
        Complex64::new(c.re, c.im)
    }
}

impl From<Complex64> for Cx {
    fn from(c: Complex64) -> Self {
        Cx { re: c.re, im: c.im }
    }
}

pub fn read_config<T: DeserializeOwned>(common: &Common) -> Result<T, CliError> {
    let path = common.config.as_ref().ok_or_else(|| CliError::Parse("--config is required".into()))?;
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub struct OutDir(PathBuf);

impl OutDir {
    pub fn create(common: &Common) -> Result<Self, CliError> {
        let dir = common.out.clone().unwrap_or_else(|| PathBuf::from("."));
        fs::create_dir_all(&dir).map_err(CliError::io(&dir))?;
        Ok(Self(dir))
    }

    pub fn write(&self, name: &str, contents: &str) -> Result<(), CliError> {
        let path = self.0.join(name);
        fs::write(&path, contents).map_err(CliError::io(&path))?;
        println!("wrote {}", display(&path));
        Ok(())
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// A sampled boundary curve, `(param, point)` pairs.
pub struct Curve {
    pub name: String,
    pub samples: Vec<(f64, Complex64)>,
}

pub fn curve_csv(curve: &Curve) -> String {
    let mut s = String::from("param,re,im\n");
    for (t, w) in &curve.samples {
        writeln!(s, "{t},{},{}", w.re, w.im).expect("write to string");
    }
    s
}

/// Closed paths for `curves` and dots for `points`, fitted into the view box by one
/// translation and uniform scaling (recorded in `<desc>`), with the imaginary axis up.
pub fn svg(curves: &[Curve], points: &[Complex64]) -> String {
    let all: Vec<Complex64> = curves
        .iter()
        .flat_map(|c| c.samples.iter().map(|s| s.1))
        .chain(points.iter().copied())
        .filter(|w| w.re.is_finite() && w.im.is_finite())
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for w in &all {
        x0 = x0.min(w.re);
        x1 = x1.max(w.re);
        y0 = y0.min(w.im);
        y1 = y1.max(w.im);
    }
    let (cx, cy) = if all.is_empty() { (0.0, 0.0) } else { (0.5 * (x0 + x1), 0.5 * (y0 + y1)) };
    let half = if all.is_empty() { 0.0 } else { 0.5 * (x1 - x0).max(y1 - y0) };
    let h = if half > 0.0 && half.is_finite() { half } else { 1.0 };
    let map = |w: Complex64| ((w.re - cx) / h, -(w.im - cy) / h);

    let mut s = String::new();
    s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.2 -1.2 2.4 2.4\">\n");
    writeln!(s, "<desc>x = (re - {cx}) / {h}, y = -(im - {cy}) / {h}</desc>").expect("write to string");
    for c in curves {
        let mut d = String::new();
        for (j, (_, w)) in c.samples.iter().filter(|s| s.1.re.is_finite() && s.1.im.is_finite()).enumerate() {
            let (x, y) = map(*w);
            write!(d, "{}{x:.6} {y:.6} ", if j == 0 { "M" } else { "L" }).expect("write to string");
        }
        d.push('Z');
        writeln!(s, "<path id=\"{}\" d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.01\"/>", c.name)
            .expect("write to string");
    }
    for w in points {
        let (x, y) = map(*w);
        writeln!(s, "<circle cx=\"{x:.6}\" cy=\"{y:.6}\" r=\"0.01\" fill=\"red\"/>").expect("write to string");
    }
    s.push_str("</svg>\n");
    s
}
