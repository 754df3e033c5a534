//! Command-line driver for `ptchain-core`.
//!
//! Every numeric argument is read as an exact rational (`4/9`, `0.2444`,
//! `-1e-3`), and coupling vectors are given in coupling order `g_1 ... g_J`.
//! Tabular output is CSV with a header row; `verify` can also emit JSON.

pub mod output;
pub mod sweep;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use ptchain_core::domain::ScanOptions;
use ptchain_core::leading::linearized_critical_shifts;
use ptchain_core::rational::to_f64;
use ptchain_core::verify::Report;
use ptchain_core::{
    boundary_n4, classify_regime, critical_shifts, eep_couplings, energies, parse_rational,
    shift_functional, thresholds, verify_eep_degeneracy, verify_factorization, verify_tables,
    ChainModel, LeadingOrderPolynomial, Rational, RescaledPoint,
};

use output::{complex_cells, complex_headers, csv_writer, number};

/// Exit code for malformed arguments and rejected inputs.
pub const EXIT_USAGE: i32 = 1;
/// Exit code when a verification check fails.
pub const EXIT_VERIFY: i32 = 2;
/// Exit code when the root finder does not converge.
pub const EXIT_NONCONVERGENCE: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(ptchain_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{failed} of {total} checks failed")]
    Verification { failed: usize, total: usize },
}

impl From<ptchain_core::Error> for CliError {
    fn from(e: ptchain_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(ptchain_core::Error::NonConvergence { .. }) => EXIT_NONCONVERGENCE,
            CliError::Verification { .. } => EXIT_VERIFY,
            _ => EXIT_USAGE,
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let q = rational_arg(s)?;
    let x = to_f64(&q);
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{s}` must be positive"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "ptchain", version, about = "Spectra, thresholds and exact checks for PT-symmetric chain models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Squared couplings at the maximal-coupling vertex.
    Eep {
        #[arg(long)]
        dim: usize,
    },
    /// Energies of one chain model.
    Spectrum(SpectrumArgs),
    /// Energies along t for fixed rescaled couplings.
    Curve(CurveArgs),
    /// Roots of the leading-order polynomial in L.
    Leading(LeadingArgs),
    /// Shifts at which the leading-order spectrum degenerates.
    Critical {
        #[arg(long)]
        dim: usize,
        /// Also list the first-order estimates from the linearized roots.
        #[arg(long)]
        linearized: bool,
        /// Isolation width for the stationary points.
        #[arg(long, default_value = "1e-12", value_parser = positive_f64)]
        tol: f64,
    },
    /// Closed-form boundary branches of the four-level chain.
    #[command(name = "boundary-n4")]
    BoundaryN4 {
        #[arg(long, value_parser = rational_arg)]
        beta_max: Rational,
        #[arg(long)]
        steps: usize,
    },
    /// Reality-loss points along a ray `scale * direction` at fixed t.
    Scan(ScanArgs),
    /// The thresholds t_QH, t_PH and t_H of one ray.
    Thresholds {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rational_arg)]
        g: Vec<Rational>,
        /// Upper end of the t interval scanned for t_QH.
        #[arg(long, default_value = "1", value_parser = positive_f64)]
        t_hi: f64,
    },
    /// Exact checks of the tables, the vertex degeneracy and the factorization.
    Verify {
        #[arg(long)]
        dim_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("couplings").required(true).args(["g", "raw"])))]
pub struct SpectrumArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, requires = "g", value_parser = rational_arg, allow_hyphen_values = true)]
    pub t: Option<Rational>,
    #[arg(long, requires = "t", value_delimiter = ',', allow_hyphen_values = true, value_parser = rational_arg)]
    pub g: Vec<Rational>,
    /// Squared couplings c_1 ... c_J given directly.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rational_arg)]
    pub raw: Vec<Rational>,
    #[arg(long, default_value = "1e-9", value_parser = positive_f64)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rational_arg)]
    pub g: Vec<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub t_min: Rational,
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub t_max: Rational,
    #[arg(long)]
    pub steps: usize,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "1e-9", value_parser = positive_f64)]
    pub tol: f64,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["g", "shift"])))]
pub struct LeadingArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rational_arg)]
    pub g: Vec<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub shift: Option<Rational>,
    #[arg(long, default_value = "1e-9", value_parser = positive_f64)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub dim: usize,
    /// Ray direction in rescaled couplings, coupling order.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rational_arg)]
    pub direction: Vec<Rational>,
    #[arg(long, value_parser = rational_arg)]
    pub t: Rational,
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub scale_min: Rational,
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub scale_max: Rational,
    #[arg(long, default_value_t = 400)]
    pub steps: usize,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Eep { dim } => eep(*dim, out),
        Command::Spectrum(args) => spectrum(args, out),
        Command::Curve(args) => curve(args, out),
        Command::Leading(args) => leading(args, out),
        Command::Critical { dim, linearized, tol } => critical(*dim, *linearized, *tol, out),
        Command::BoundaryN4 { beta_max, steps } => boundary(beta_max, *steps, out),
        Command::Scan(args) => scan(args, out),
        Command::Thresholds { dim, g, t_hi } => threshold_row(*dim, g, *t_hi, out),
        Command::Verify { dim_max, format } => verify(*dim_max, *format, out),
    }
}

fn eep(dim: usize, out: &mut dyn Write) -> CliResult {
    let c = eep_couplings(dim)?;
    let mut w = csv_writer(out);
    w.write_record(["n", "c_n", "g_n"])?;
    for (n, c) in c.iter().enumerate() {
        w.write_record([(n + 1).to_string(), c.to_string(), number(to_f64(c).sqrt())])?;
    }
    w.flush()?;
    Ok(())
}

fn spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> CliResult {
    let (model, regime) = match &args.t {
        Some(t) => {
            let point = RescaledPoint::new(args.dim, t.clone(), args.g.clone())?;
            let regime = classify_regime(&point, args.tol)?;
            (point.to_model(), Some(regime))
        }
        None => (ChainModel::new(args.dim, args.raw.clone())?, None),
    };
    let levels = energies(&model, args.tol)?;
    let mut w = csv_writer(out);
    w.write_record(["level", "re_E", "im_E", "all_real", "regime"])?;
    let regime = regime.map_or("", |r| r.as_str());
    for (k, e) in levels.eigenvalues.iter().enumerate() {
        w.write_record([
            (k + 1).to_string(),
            number(e.re),
            number(e.im),
            levels.all_real.to_string(),
            regime.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn curve(args: &CurveArgs, out: &mut dyn Write) -> CliResult {
    let rows = sweep::energy_curve(
        args.dim,
        &args.g,
        to_f64(&args.t_min),
        to_f64(&args.t_max),
        args.steps,
        args.tol,
    )?;
    let mut header = vec!["t".to_string()];
    header.extend(complex_headers("E", args.dim));
    let mut records = Vec::with_capacity(rows.len());
    for row in rows {
        let energies = row.energies?;
        let mut rec = vec![number(row.t)];
        rec.extend(complex_cells(&energies));
        records.push(rec);
    }
    let write = |sink: &mut dyn Write| -> CliResult {
        let mut w = csv_writer(sink);
        w.write_record(&header)?;
        for rec in &records {
            w.write_record(rec)?;
        }
        w.flush()?;
        Ok(())
    };
    match &args.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write(&mut file)?;
            file.flush()?;
            Ok(())
        }
        None => write(out),
    }
}

fn leading(args: &LeadingArgs, out: &mut dyn Write) -> CliResult {
    let shift = match &args.shift {
        Some(w) => w.clone(),
        None => shift_functional(args.dim, &args.g)?,
    };
    let poly = LeadingOrderPolynomial::new(args.dim, shift.clone())?;
    let roots = poly.leading_roots(args.tol)?;
    let lin = poly.linearized_roots();
    let mut w = csv_writer(out);
    w.write_record(["k", "shift", "base", "re_L", "im_L", "linearized_L"])?;
    for (k, (root, l)) in roots.iter().zip(&lin).enumerate() {
        w.write_record([
            (k + 1).to_string(),
            shift.to_string(),
            l.base.to_string(),
            number(root.re),
            number(root.im),
            number(to_f64(&l.at(&shift))),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn critical(dim: usize, linearized: bool, tol: f64, out: &mut dyn Write) -> CliResult {
    let mut w = csv_writer(out);
    w.write_record(["method", "kind", "shift", "l_star", "energy"])?;
    let mut rows: Vec<(&str, _)> = critical_shifts(dim, tol)?.into_iter().map(|c| ("exact", c)).collect();
    if linearized {
        rows.extend(linearized_critical_shifts(dim)?.into_iter().map(|c| ("linearized", c)));
    }
    for (method, c) in rows {
        w.write_record([
            method.to_string(),
            c.kind.as_str().to_string(),
            number(c.shift_f64()),
            number(c.l_star_f64()),
            number(c.energy()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn boundary(beta_max: &Rational, steps: usize, out: &mut dyn Write) -> CliResult {
    if steps == 0 {
        return Err(CliError::Usage("--steps must be positive".into()));
    }
    let beta_max = to_f64(beta_max);
    let grid: Vec<f64> = (1..=steps).map(|i| beta_max * i as f64 / steps as f64).collect();
    let rows = boundary_n4(&grid)?;
    let mut w = csv_writer(out);
    w.write_record(["beta", "alpha_lower", "alpha_upper"])?;
    for r in rows {
        w.write_record([number(r.beta), number(r.alpha_lower), number(r.alpha_upper)])?;
    }
    w.flush()?;
    Ok(())
}

fn scan(args: &ScanArgs, out: &mut dyn Write) -> CliResult {
    if args.steps < 2 {
        return Err(CliError::Usage("--steps must be at least 2".into()));
    }
    let lo = to_f64(&args.scale_min);
    let hi = to_f64(&args.scale_max);
    let scales: Vec<f64> = (0..args.steps)
        .map(|i| if i + 1 == args.steps { hi } else { lo + (hi - lo) * i as f64 / (args.steps - 1) as f64 })
        .collect();
    let points = sweep::boundary_scan(args.dim, &args.direction, &scales, to_f64(&args.t), &ScanOptions::default())?;
    let mut w = csv_writer(out);
    let mut header = vec!["t".to_string(), "scale".to_string()];
    header.extend((1..=args.direction.len()).map(|n| format!("G{n}")));
    header.extend(["pair".to_string(), "real_side".to_string()]);
    w.write_record(&header)?;
    for p in points {
        let mut rec = vec![number(p.t), number(p.scale)];
        rec.extend(p.rescaled.iter().map(|&g| number(g)));
        rec.push(p.colliding_pair.map_or_else(String::new, |(a, b)| format!("{}-{}", a + 1, b + 1)));
        rec.push(match p.real_side {
            Some(ptchain_core::domain::RealSide::Below) => "below".into(),
            Some(ptchain_core::domain::RealSide::Above) => "above".into(),
            None => String::new(),
        });
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn threshold_row(dim: usize, g: &[Rational], t_hi: f64, out: &mut dyn Write) -> CliResult {
    let th = thresholds(dim, g, t_hi, &ScanOptions::default())?;
    let cell = |x: Option<f64>| x.map_or_else(String::new, number);
    let mut w = csv_writer(out);
    w.write_record(["t_qh", "t_ph", "t_h"])?;
    w.write_record([cell(th.t_qh), cell(th.t_ph), cell(th.t_h)])?;
    w.flush()?;
    Ok(())
}

fn verify(dim_max: usize, format: Format, out: &mut dyn Write) -> CliResult {
    if dim_max < 4 {
        return Err(CliError::Usage("--dim-max must be at least 4".into()));
    }
    let mut reports: Vec<Report> = vec![verify_tables(dim_max / 2)?, verify_eep_degeneracy(dim_max)?];
    let factorization = (4..=dim_max)
        .into_par_iter()
        .map(verify_factorization)
        .collect::<Result<Vec<Report>, _>>()?;
    reports.extend(factorization);
    let checks = output::merge_reports(&reports);
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &output::json_report(Some(dim_max), &checks))?;
            writeln!(out)?;
        }
        Format::Text => output::text_report(out, &checks)?,
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(CliError::Verification { failed, total: checks.len() });
    }
    Ok(())
}

/// Convenience for tests and callers that want the whole output as text.
pub fn run_capture<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(args, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Core(ptchain_core::Error::NonConvergence { iterations: 5 }).exit_code(), 3);
        assert_eq!(CliError::Verification { failed: 1, total: 2 }.exit_code(), 2);
        assert_eq!(CliError::Core(ptchain_core::Error::NoPositiveRoot).exit_code(), 1);
    }

    #[test]
    fn rational_arguments() {
        assert_eq!(rational_arg("4/9").unwrap(), Rational::new(4.into(), 9.into()));
        assert!(rational_arg("x").is_err());
        assert!(positive_f64("-1").is_err());
    }
}
