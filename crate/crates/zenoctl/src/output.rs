//! CSV encoding, a strict curve-CSV reader, and plot scripts.

use std::fmt::Write as _;

use thiserror::Error;
use zeno_core::engine::{CurveSample, Phase, ZenoResult};

pub const CURVE_HEADER: &str = "B,p_free,p_interaction,phase";
pub const ZENO_HEADER: &str = "n,survival,entropy_mean,mode";
pub const RATE_HEADER: &str = "b_first,overlap,rate_analytic,rate_numeric,rate_free";

/// Shortest decimal that round-trips to the same `f64`; negative zero prints as `0`.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}

pub fn curve_csv(samples: &[CurveSample]) -> String {
    let mut out = format!("{CURVE_HEADER}\n");
    for s in samples {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_num(s.b.0),
            fmt_num(s.p_free),
            fmt_num(s.p_interaction),
            s.phase.as_str()
        );
    }
    out
}

pub fn zeno_csv(results: &[ZenoResult]) -> String {
    let mut out = format!("{ZENO_HEADER}\n");
    for r in results {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.n,
            fmt_num(r.survival),
            fmt_num(r.entropy_mean()),
            r.mode.as_str()
        );
    }
    out
}

/// One row of the `rate` experiment. Overlap and analytic rate are absent
/// when the evaluation moves belief populations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRow {
    pub b_first: f64,
    pub overlap: Option<f64>,
    pub rate_analytic: Option<f64>,
    pub rate_numeric: f64,
    pub rate_free: f64,
}

pub fn rate_csv(row: &RateRow) -> String {
    let opt = |x: Option<f64>| x.map(fmt_num).unwrap_or_default();
    format!(
        "{RATE_HEADER}\n{},{},{},{},{}\n",
        fmt_num(row.b_first),
        opt(row.overlap),
        opt(row.rate_analytic),
        fmt_num(row.rate_numeric),
        fmt_num(row.rate_free)
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsvError {
    #[error("expected header `{CURVE_HEADER}`")]
    Header,
    #[error("line {line}: {message}")]
    Row { line: usize, message: String },
}

/// A parsed row of a curve CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub b: f64,
    pub p_free: f64,
    pub p_interaction: f64,
    pub phase: Phase,
}

/// Reads a curve CSV as written by [`curve_csv`]. Checks the header, field
/// count, numeric fields, probability range and the phase label.
pub fn parse_curve_csv(text: &str) -> Result<Vec<CurveRow>, CsvError> {
    let mut lines = text.split('\n');
    if lines.next() != Some(CURVE_HEADER) {
        return Err(CsvError::Header);
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        if line.is_empty() {
            continue;
        }
        let err = |message: String| CsvError::Row { line: line_no, message };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(err(format!("expected 4 fields, got {}", fields.len())));
        }
        let num = |k: usize| -> Result<f64, CsvError> {
            fields[k]
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| err(format!("field {} is not a finite number: `{}`", k + 1, fields[k])))
        };
        let (b, p_free, p_interaction) = (num(0)?, num(1)?, num(2)?);
        for p in [p_free, p_interaction] {
            if !(0.0..=1.0).contains(&p) {
                return Err(err(format!("probability {p} outside [0, 1]")));
            }
        }
        let phase = match fields[3] {
            "pre" => Phase::PreInteraction,
            "boundary" => Phase::PostInteractionBoundary,
            "post" => Phase::PostInteraction,
            other => return Err(err(format!("unknown phase `{other}`"))),
        };
        rows.push(CurveRow {
            b,
            p_free,
            p_interaction,
            phase,
        });
    }
    Ok(rows)
}

/// A matplotlib script plotting the curve CSV named `csv_name`, which is
/// looked up next to the script.
pub fn curve_plot_script(csv_name: &str, title: &str) -> String {
    format!(
        r#"import csv
import os

import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(here, {csv:?}), newline="") as f:
    rows = list(csv.DictReader(f))

b = [float(r["B"]) for r in rows]
fig, ax = plt.subplots()
ax.plot(b, [float(r["p_free"]) for r in rows], label="free evolution")
ax.plot(b, [float(r["p_interaction"]) for r in rows], "--", label="with interaction")
ax.set_xlabel("B")
ax.set_ylabel("P(innocent)")
ax.set_title({title:?})
ax.legend()
fig.savefig(os.path.join(here, {png:?}), dpi=150)
"#,
        csv = csv_name,
        title = title,
        png = png_name(csv_name),
    )
}

/// A matplotlib script plotting survival against `n` from a zeno CSV.
pub fn zeno_plot_script(csv_name: &str) -> String {
    format!(
        r#"import csv
import os

import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(here, {csv:?}), newline="") as f:
    rows = list(csv.DictReader(f))

fig, ax = plt.subplots()
ax.plot([int(r["n"]) for r in rows], [float(r["survival"]) for r in rows], "o")
ax.set_xlabel("n")
ax.set_ylabel("survival")
fig.savefig(os.path.join(here, {png:?}), dpi=150)
"#,
        csv = csv_name,
        png = png_name(csv_name),
    )
}

fn png_name(csv_name: &str) -> String {
    let stem = csv_name.strip_suffix(".csv").unwrap_or(csv_name);
    format!("{stem}.png")
}

#[cfg(test)]
mod tests {
    use super::*;
    use zeno_core::bae::RotationAngle;
    use zeno_core::engine::{curve_sweep, ExperimentSpec};

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, 0.9691685310936223, 1e-300, 2.5e-17, 1.0, 0.6] {
            assert_eq!(fmt_num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(0.2), "0.2");
    }

    #[test]
    fn curve_csv_round_trips() {
        let samples = curve_sweep(&ExperimentSpec::fig2()).unwrap();
        let text = curve_csv(&samples);
        assert!(text.starts_with("B,p_free,p_interaction,phase\n"));
        assert!(text.ends_with('\n') && !text.contains('\r'));
        let rows = parse_curve_csv(&text).unwrap();
        assert_eq!(rows.len(), samples.len());
        for (r, s) in rows.iter().zip(&samples) {
            assert_eq!(
                (RotationAngle(r.b), r.p_free, r.p_interaction, r.phase),
                (s.b, s.p_free, s.p_interaction, s.phase)
            );
        }
    }

    #[test]
    fn reader_rejects_malformed_rows() {
        let bad = [
            "B,p,q,phase\n",
            "B,p_free,p_interaction,phase\n0,1,1\n",
            "B,p_free,p_interaction,phase\n0,1,x,pre\n",
            "B,p_free,p_interaction,phase\n0,1,1.5,pre\n",
            "B,p_free,p_interaction,phase\n0,1,1,middle\n",
            "B,p_free,p_interaction,phase\nNaN,1,1,pre\n",
        ];
        for text in bad {
            assert!(parse_curve_csv(text).is_err(), "{text:?}");
        }
        assert_eq!(parse_curve_csv("B,p_free,p_interaction,phase\n").unwrap(), vec![]);
    }

    #[test]
    fn rate_csv_leaves_undefined_cells_empty() {
        let row = RateRow {
            b_first: 0.2,
            overlap: None,
            rate_analytic: None,
            rate_numeric: -0.5,
            rate_free: -0.25,
        };
        assert_eq!(rate_csv(&row), format!("{RATE_HEADER}\n0.2,,,-0.5,-0.25\n"));
    }

    #[test]
    fn plot_scripts_reference_the_csv() {
        let s = curve_plot_script("fig1.csv", "fig1");
        assert!(s.contains("\"fig1.csv\"") && s.contains("\"fig1.png\""));
        assert!(zeno_plot_script("z.csv").contains("\"z.csv\""));
    }
}
