use std::fmt::Write as _;

use rand::Rng;
use semigen::loewner::q_concavity_check;
use semigen::sampling::{sample_rng, Regime};
use semigen::value_regions::{random_suite, SuiteSummary};
use serde::Serialize;

use crate::error::CliError;
use crate::output::{formats, to_json, Format, OutDir};
use crate::Common;

const DEFAULT_SAMPLES: usize = 10_000;
const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Violations beyond this (relative) always fail, whatever `--tolerance` says.
const FAIL_FLOOR: f64 = 1e-9;
const CONCAVITY_POINTS: usize = 100;

#[derive(Serialize)]
struct Concavity {
    dimension: usize,
    points: usize,
    failures: usize,
    max_eigenvalue: f64,
}

#[derive(Serialize)]
struct Report {
    seed: u64,
    samples: usize,
    tolerance: f64,
    regimes: Vec<SuiteSummary>,
    concavity: Vec<Concavity>,
    passed: bool,
}

fn text(r: &Report) -> String {
    let mut s = String::new();
    let w = &mut s;
    writeln!(w, "seed {} samples {} tolerance {:e}", r.seed, r.samples, r.tolerance).unwrap();
    for reg in &r.regimes {
        writeln!(
            w,
            "[{}] specs {} violations {} warnings {} notes {}",
            reg.regime,
            reg.specs,
            reg.violations(),
            reg.warnings(),
            reg.notes
        )
        .unwrap();
        for t in &reg.tallies {
            writeln!(
                w,
                "  {:<24} checks {:>6} violations {:>4} warnings {:>4} min slack {:.3e}",
                t.name, t.checks, t.violations, t.warnings, t.min_scaled_slack
            )
            .unwrap();
        }
    }
    for c in &r.concavity {
        writeln!(
            w,
            "[concavity n={}] points {} failures {} max eigenvalue {:.3e}",
            c.dimension, c.points, c.failures, c.max_eigenvalue
        )
        .unwrap();
    }
    writeln!(w, "{}", if r.passed { "PASS" } else { "FAIL" }).unwrap();
    s
}

pub fn run(common: &Common) -> Result<(), CliError> {
    let fmts = formats(common, &[], &[Format::Json])?;
    let samples = common.samples.unwrap_or(DEFAULT_SAMPLES);
    let tol = common.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(CliError::Parse(format!("tolerance must be finite and >= 0, got {tol}")));
    }
    let fail_tol = tol.max(FAIL_FLOOR);

    let mut regimes = Vec::new();
    for regime in Regime::ALL {
        regimes.push(random_suite(common.seed, regime, samples, tol, fail_tol)?);
    }
    let mut concavity = Vec::new();
    for n in 2..=6 {
        let mut rng = sample_rng(common.seed, n as u64);
        let mut c = Concavity { dimension: n, points: CONCAVITY_POINTS, failures: 0, max_eigenvalue: f64::NEG_INFINITY };
        for _ in 0..CONCAVITY_POINTS {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0f64..3.0).exp()).collect();
            let rep = q_concavity_check(&x, 20, &mut rng)?;
            c.failures += usize::from(!rep.passed);
            c.max_eigenvalue = c.max_eigenvalue.max(rep.max_eigenvalue);
        }
        concavity.push(c);
    }
    let passed = regimes.iter().all(|r| r.violations() == 0) && concavity.iter().all(|c| c.failures == 0);
    let report = Report { seed: common.seed, samples, tolerance: tol, regimes, concavity, passed };

    let body = text(&report);
    print!("{body}");
    if common.config.is_some() {
        eprintln!("note: verify takes no configuration; --config ignored");
    }
    if !fmts.is_empty() || common.out.is_some() {
        let out = OutDir::create(common)?;
        out.write("verify.txt", &body)?;
        if fmts.contains(&Format::Json) {
            out.write("verify.json", &to_json(&report))?;
        }
    }
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Verification("inequality violations or concavity failures, see report".into()))
    }
}
