//! CSV and text artifacts. Numbers use 17 significant digits so tables can
//! be diffed across runs; the first line of every CSV carries the version.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::runner::{ErrorTable, ExistenceProbe, PlotSeries, ProbeOutcome, RunOutput};
use crate::CliError;

pub const OUTPUT_DIR_ENV: &str = "FRH_OUTPUT_DIR";

pub fn version_header() -> String {
    format!("# frh-cli {}\n", env!("CARGO_PKG_VERSION"))
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn table_csv(table: &ErrorTable) -> String {
    let mut s = version_header();
    s.push_str("x,f_true,f_reconstructed,abs_err,rel_err,limit_error_estimate,variant\n");
    for r in &table.rows {
        let x: Vec<String> = r.x.iter().map(|&c| num(c)).collect();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            x.join(" "),
            num(r.f_true),
            num(r.f_reconstructed),
            num(r.abs_err),
            num(r.rel_err),
            num(r.limit_error_estimate),
            r.variant
        );
    }
    s
}

pub fn existence_csv(probes: &[ExistenceProbe]) -> String {
    let mut s = version_header();
    s.push_str(
        "r,status,value,condition,critical_exponent,margin,truncation_radius,partial_integral\n",
    );
    for p in probes {
        match &p.outcome {
            ProbeOutcome::Finite(v) => {
                let _ = writeln!(s, "{},finite,{},,,,,", num(p.r), num(*v));
            }
            ProbeOutcome::Divergent(rep) => {
                let status = if rep.numerically_confirmed() {
                    "divergence confirmed"
                } else {
                    "divergence predicted"
                };
                let condition = rep.condition.replace(',', ";");
                let head = format!(
                    "{},{status},,{condition},{},{}",
                    num(p.r),
                    num(rep.critical_exponent),
                    num(rep.margin)
                );
                if rep.partial_integrals.is_empty() {
                    let _ = writeln!(s, "{head},,");
                }
                for (big_r, v) in &rep.partial_integrals {
                    let _ = writeln!(s, "{head},{},{}", num(*big_r), num(*v));
                }
            }
        }
    }
    s
}

pub fn plot_csv(series: &[PlotSeries]) -> String {
    let mut s = version_header();
    s.push_str("point,variant,r,recovered_mean\n");
    for ser in series {
        for p in &ser.points {
            let _ = writeln!(
                s,
                "{},{},{},{}",
                p.point,
                ser.variant,
                num(p.r),
                num(p.mean)
            );
        }
    }
    s
}

/// Output directory: the environment override wins over the config.
pub fn resolve_dir(configured: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => configured.to_path_buf(),
    }
}

/// Writes `<name>.csv`, `<name>.summary.txt` and, when present, the
/// existence and plot tables. Returns the paths written.
pub fn write_run(out: &RunOutput, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut files = vec![
        (dir.join(format!("{}.csv", out.name)), table_csv(&out.table)),
        (
            dir.join(format!("{}.summary.txt", out.name)),
            format!("{}\n", out.summary()),
        ),
    ];
    if !out.existence.is_empty() {
        files.push((
            dir.join(format!("{}.existence.csv", out.name)),
            existence_csv(&out.existence),
        ));
    }
    if !out.plot.is_empty() {
        files.push((
            dir.join(format!("{}.plot.csv", out.name)),
            plot_csv(&out.plot),
        ));
    }
    let mut written = Vec::with_capacity(files.len());
    for (path, text) in files {
        fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(written)
}
