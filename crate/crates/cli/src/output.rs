//! Number formatting, CSV writers and the JSON verification report.

use std::io::Write;

use num_complex::Complex;
use ptchain_core::verify::{Check, Report};
use serde::Serialize;

/// Formats a float with 12 significant digits.
///
/// The value is rounded to 12 significant digits and then printed in the
/// shortest form that reads back as the rounded value, so `225.0` prints as
/// `225`. Very small or very large magnitudes use exponent notation. Signed
/// zero prints as `0`.
pub fn number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        return "0".into();
    }
    let mag = rounded.abs();
    if (1e-4..1e15).contains(&mag) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

/// `re_E1,im_E1,...` headers for `n` complex columns named `prefix`.
pub fn complex_headers(prefix: &str, n: usize) -> Vec<String> {
    (1..=n)
        .flat_map(|k| [format!("re_{prefix}{k}"), format!("im_{prefix}{k}")])
        .collect()
}

pub fn complex_cells(values: &[Complex<f64>]) -> Vec<String> {
    values.iter().flat_map(|z| [number(z.re), number(z.im)]).collect()
}

#[derive(Debug, Serialize)]
pub struct JsonCheck<'a> {
    pub name: &'a str,
    pub status: &'static str,
    pub expected: &'a str,
    pub actual: &'a str,
}

#[derive(Debug, Serialize)]
pub struct JsonReport<'a> {
    pub dimension: Option<usize>,
    pub checks: Vec<JsonCheck<'a>>,
}

fn status(check: &Check) -> &'static str {
    if check.passed {
        "pass"
    } else {
        "fail"
    }
}

pub fn json_report(dimension: Option<usize>, checks: &[Check]) -> JsonReport<'_> {
    JsonReport {
        dimension,
        checks: checks
            .iter()
            .map(|c| JsonCheck {
                name: &c.name,
                status: status(c),
                expected: &c.expected,
                actual: &c.actual,
            })
            .collect(),
    }
}

/// Merges several reports into one list, prefixing each check name with the
/// dimension it belongs to.
pub fn merge_reports(reports: &[Report]) -> Vec<Check> {
    reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().map(move |c| Check {
                name: match r.dimension {
                    Some(n) => format!("N={n}: {}", c.name),
                    None => c.name.clone(),
                },
                ..c.clone()
            })
        })
        .collect()
}

pub fn text_report<W: Write + ?Sized>(out: &mut W, checks: &[Check]) -> std::io::Result<()> {
    for c in checks {
        if c.passed {
            writeln!(out, "pass  {}", c.name)?;
        } else {
            writeln!(out, "FAIL  {}: expected {}, got {}", c.name, c.expected, c.actual)?;
        }
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    writeln!(out, "{} checks, {} failed", checks.len(), failed)
}
