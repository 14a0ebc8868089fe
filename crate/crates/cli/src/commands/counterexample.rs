use std::fmt::Write as _;

use semigen::herglotz::{counterexample_divergence, counterexample_p};

use crate::error::CliError;
use crate::output::{formats, Format, OutDir};
use crate::Common;

pub fn run(common: &Common) -> Result<(), CliError> {
    let fmts = formats(common, &[Format::Csv], &[Format::Csv])?;
    let mut p = String::from("y,value\n");
    let mut values = Vec::new();
    for k in 1..=6 {
        let y = 10f64.powi(-k);
        let v = counterexample_p(y)?;
        values.push(v);
        writeln!(p, "1e-{k},{v}").expect("write to string");
    }
    let mut d = String::from("delta,value,loglog\n");
    let mut divs = Vec::new();
    for k in 1..=4 {
        let delta = (-(k as f64).exp()).exp();
        let v = counterexample_divergence(delta)?;
        divs.push(v);
        writeln!(d, "{delta:e},{v},{}", (1.0 / delta).ln().ln()).expect("write to string");
    }
    print!("{p}\n{d}");
    if !fmts.is_empty() {
        let out = OutDir::create(common)?;
        out.write("counterexample_p.csv", &p)?;
        out.write("counterexample_divergence.csv", &d)?;
    }
    let decreasing = values.windows(2).all(|w| w[1] < w[0]);
    let increasing = divs.windows(2).all(|w| w[1] > w[0]);
    if !(decreasing && increasing) {
        return Err(CliError::Verification("table columns are not monotone".into()));
    }
    Ok(())
}
