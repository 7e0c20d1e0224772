//! Subcommand implementations. Every dataset lands in the output directory
//! as a CSV with a manifest beside it; report commands additionally render
//! to stdout in the chosen format.

use std::fmt::Write as _;
use std::path::PathBuf;

use num_complex::Complex64;
use picorr::propagator::reference;
use picorr::{
    build_block8, build_full16, decompose, intensity_pi, match_multiset, pathway_probabilities,
    report_eigenvalues, steady_analytic, steady_numeric, tolerances, EigenReport, Error,
    SystemParams, TauGrid, UnitMode,
};
use serde_json::json;

use crate::cli::{Cli, CorrArgs, DriveArgs, DumpArgs, FigArgs, Format, SweepArgs, Variant};
use crate::config;
use crate::manifest::{RunManifest, SolverPath};
use crate::output::{fmt, CsvTable};

/// Failure modes mapped to process exit codes in `main`.
#[derive(Debug)]
pub enum CmdError {
    /// Exit 3: the request itself is invalid.
    Parameter(String),
    /// Exit 2: a comparison against pinned expectations failed.
    Validation(String),
    /// Exit 1: anything else (I/O, internal numerics).
    Other(anyhow::Error),
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::NegativeTau(_)
            | Error::SlotOutOfRange(_)
            | Error::DimensionMismatch { .. }
            | Error::DegenerateKernel
            | Error::UndefinedNormalization => CmdError::Parameter(e.to_string()),
            Error::NumericalValidation(_) => CmdError::Validation(e.to_string()),
            other => CmdError::Other(anyhow::anyhow!(other)),
        }
    }
}

impl From<anyhow::Error> for CmdError {
    fn from(e: anyhow::Error) -> Self {
        CmdError::Other(e)
    }
}

pub type CmdResult = Result<(), CmdError>;

/// Resolved global context.
pub struct Context {
    pub out_dir: PathBuf,
    pub format: Format,
    pub units: UnitMode,
    pub reduced_units: bool,
    gamma0: Option<f64>,
    config: config::ConfigFile,
}

impl Context {
    pub fn from_cli(cli: &Cli) -> Result<Self, CmdError> {
        let config = match &cli.config {
            Some(path) => config::load(path).map_err(|e| CmdError::Parameter(e.to_string()))?,
            None => config::ConfigFile::default(),
        };
        let units = if cli.reduced_units {
            UnitMode::Reduced
        } else {
            UnitMode::Physical(Default::default())
        };
        Ok(Self {
            out_dir: cli.out_dir.clone(),
            format: cli.format,
            units,
            reduced_units: cli.reduced_units,
            gamma0: cli.gamma0,
            config,
        })
    }

    /// Flag > config file > built-in default.
    pub fn params(&self, drive: &DriveArgs) -> Result<SystemParams, CmdError> {
        let gamma0 = self.gamma0.or(self.config.gamma0).unwrap_or(1.0);
        let rabi_re = drive.omega.or(self.config.rabi_re).unwrap_or(0.5);
        let rabi_im = self.config.rabi_im.unwrap_or(0.0);
        let detuning = drive.delta.or(self.config.detuning).unwrap_or(0.0);
        let vic = match (drive.vic, &self.config.vic) {
            (Some(v), _) => v,
            (None, Some(switch)) => {
                switch.as_bool().map_err(|e| CmdError::Parameter(e.to_string()))?
            }
            (None, None) => true,
        };
        SystemParams::new(gamma0, Complex64::new(rabi_re, rabi_im), detuning, vic)
            .map_err(CmdError::from)
    }

    fn write_csv(&self, name: &str, table: &CsvTable, manifest: &mut RunManifest) -> CmdResult {
        let path = self.out_dir.join(name);
        table.write(&path).map_err(CmdError::Other)?;
        manifest.record_output(&path);
        Ok(())
    }

    fn write_json(
        &self,
        name: &str,
        value: &serde_json::Value,
        manifest: &mut RunManifest,
    ) -> CmdResult {
        let path = self.out_dir.join(name);
        std::fs::create_dir_all(&self.out_dir).map_err(|e| CmdError::Other(e.into()))?;
        std::fs::write(&path, serde_json::to_string_pretty(value).unwrap() + "\n")
            .map_err(|e| CmdError::Other(e.into()))?;
        manifest.record_output(&path);
        Ok(())
    }

    fn finish(&self, stem: &str, manifest: &RunManifest) -> CmdResult {
        let path = manifest.write(&self.out_dir, stem).map_err(CmdError::Other)?;
        eprintln!("wrote {} (+ {})", manifest.outputs.join(", "), path.display());
        Ok(())
    }
}

pub fn steady(ctx: &Context, args: &DriveArgs) -> CmdResult {
    let params = ctx.params(args)?;
    let analytic = steady_analytic(&params);
    let numeric = steady_numeric(&build_full16(&params))?;

    // The two routes must agree before anything is emitted.
    let worst = (analytic.rho11() - numeric.rho11())
        .abs()
        .max((analytic.rho33() - numeric.rho33()).abs())
        .max((analytic.rho13() - numeric.rho13()).norm());
    if worst > tolerances::STEADY_MATCH {
        return Err(CmdError::Validation(format!(
            "closed-form and null-space steady states disagree by {worst:.3e}"
        )));
    }

    let intensity = intensity_pi(&params, &ctx.units);
    let mut table = CsvTable::new(["component", "re", "im"]);
    for (label, value) in [
        ("rho11", Complex64::new(analytic.rho11(), 0.0)),
        ("rho22", Complex64::new(analytic.rho22(), 0.0)),
        ("rho33", Complex64::new(analytic.rho33(), 0.0)),
        ("rho44", Complex64::new(analytic.rho44(), 0.0)),
        ("rho13", analytic.rho13()),
        ("rho31", analytic.rho13().conj()),
        ("rho24", analytic.rho24()),
        ("rho42", analytic.rho24().conj()),
    ] {
        table.push_row([label.to_string(), fmt(value.re), fmt(value.im)]);
    }

    let report = json!({
        "parameters": params,
        "rho11": analytic.rho11(),
        "rho33": analytic.rho33(),
        "rho13_re": analytic.rho13().re,
        "rho13_im": analytic.rho13().im,
        "population_sum": analytic.population_sum(),
        "intensity_pi_reduced": intensity.reduced,
        "intensity_pi_physical": intensity.physical,
        "numeric_agreement": worst,
    });

    match ctx.format {
        Format::Csv => print!("{}", table.to_csv()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
    }

    let mut manifest = RunManifest::new("steady", Some(&params), ctx.reduced_units);
    ctx.write_csv("steady.csv", &table, &mut manifest)?;
    ctx.write_json("steady.json", &report, &mut manifest)?;
    ctx.finish("steady", &manifest)
}

fn eigen_table(report: &EigenReport) -> CsvTable {
    let mut table = CsvTable::new(["re", "im"]);
    for v in &report.eigenvalues {
        table.push_floats([v.re, v.im]);
    }
    table
}

pub fn eigs(ctx: &Context, args: &DriveArgs) -> CmdResult {
    let params = ctx.params(args)?;
    let report = report_eigenvalues(&params)?;
    if !report.conjugate_pairs_ok() {
        return Err(CmdError::Validation("eigenvalues not in conjugate pairs".into()));
    }
    let table = eigen_table(&report);
    let report_json = serde_json::to_value(&report).unwrap();

    match ctx.format {
        Format::Csv => print!("{}", table.to_csv()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report_json).unwrap()),
    }

    let mut manifest = RunManifest::new("eigs", Some(&params), ctx.reduced_units)
        .with_solver_path(SolverPath::from_fallback_flag(report.used_fallback));
    ctx.write_csv("eigs.csv", &table, &mut manifest)?;
    ctx.write_json("eigs.json", &report_json, &mut manifest)?;
    ctx.finish("eigs", &manifest)
}

pub fn table1(ctx: &Context) -> CmdResult {
    struct Reading {
        name: &'static str,
        omega: f64,
        delta: f64,
        reference: Vec<Complex64>,
        expect_match: bool,
    }
    let readings = [
        Reading {
            name: "omega3.0_delta0.0",
            omega: 3.0,
            delta: 0.0,
            reference: reference::drive_30(),
            expect_match: true,
        },
        Reading {
            name: "omega0.5_delta0.5",
            omega: 0.5,
            delta: 0.5,
            reference: reference::drive_05(),
            expect_match: true,
        },
        Reading {
            name: "omega0.5_delta0.0",
            omega: 0.5,
            delta: 0.0,
            reference: reference::drive_05(),
            expect_match: false,
        },
    ];

    let gamma0 = ctx.gamma0.unwrap_or(1.0);
    if gamma0 != 1.0 {
        return Err(CmdError::Parameter("the reference table is defined for gamma0 = 1".into()));
    }

    let mut table = CsvTable::new([
        "reading",
        "verdict",
        "ref_re",
        "ref_im",
        "computed_re",
        "computed_im",
        "delta",
    ]);
    let mut rows_json = Vec::new();
    let mut failures = Vec::new();
    let mut text = String::new();
    let mut any_fallback = false;

    for reading in &readings {
        let params = SystemParams::reduced(reading.omega, reading.delta).map_err(CmdError::from)?;
        let report = report_eigenvalues(&params)?;
        any_fallback |= report.used_fallback;
        let matched = match_multiset(&report.values(), &reading.reference);
        let is_match = matched.max_delta <= tolerances::REFERENCE_EIG_ABS;
        let verdict = if is_match { "MATCH" } else { "NO-MATCH" };
        if reading.expect_match && !is_match {
            failures.push(format!(
                "{}: max delta {:.3e} exceeds {:.1e}",
                reading.name,
                matched.max_delta,
                tolerances::REFERENCE_EIG_ABS
            ));
        }
        if !reading.expect_match && is_match {
            eprintln!("warning: {} matched the reference column unexpectedly", reading.name);
        }
        writeln!(
            text,
            "{:<20} {:>8}  (max delta {:.3e}, expected {})",
            reading.name,
            verdict,
            matched.max_delta,
            if reading.expect_match { "MATCH" } else { "NO-MATCH" }
        )
        .unwrap();
        for pair in &matched.pairs {
            table.push_row([
                reading.name.to_string(),
                verdict.to_string(),
                fmt(pair.reference.re),
                fmt(pair.reference.im),
                fmt(pair.computed.re),
                fmt(pair.computed.im),
                fmt(pair.delta),
            ]);
        }
        rows_json.push(json!({
            "reading": reading.name,
            "omega": reading.omega,
            "delta": reading.delta,
            "expected_match": reading.expect_match,
            "verdict": verdict,
            "max_delta": matched.max_delta,
            "pairs": matched.pairs,
        }));
    }

    let report_json = json!({
        "tolerance": tolerances::REFERENCE_EIG_ABS,
        "readings": rows_json,
    });
    match ctx.format {
        Format::Csv => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report_json).unwrap()),
    }

    let mut manifest = RunManifest::new("table1", None, ctx.reduced_units)
        .with_solver_path(SolverPath::from_fallback_flag(any_fallback));
    ctx.write_csv("table1.csv", &table, &mut manifest)?;
    ctx.write_json("table1.json", &report_json, &mut manifest)?;
    ctx.finish("table1", &manifest)?;

    if !failures.is_empty() {
        return Err(CmdError::Validation(failures.join("; ")));
    }
    Ok(())
}

pub fn corr(ctx: &Context, args: &CorrArgs) -> CmdResult {
    let drive = DriveArgs { omega: args.omega, delta: args.delta, vic: None };
    let params = ctx.params(&drive)?;
    let grid = TauGrid::span(args.tmax, args.dt)?;
    let series = picorr::correlation_series(&params, &grid, &ctx.units)?;

    let want_vic = matches!(args.vic, Variant::Both | Variant::On);
    let want_novic = matches!(args.vic, Variant::Both | Variant::Off);
    let normalized_available = series.g2_vic_normalized.is_some();
    if args.normalized && !normalized_available {
        return Err(CmdError::Parameter(
            "normalized correlations are undefined for zero drive".into(),
        ));
    }

    let mut header: Vec<&str> = vec!["tau"];
    if !args.normalized {
        if want_vic {
            header.push("G2_vic");
        }
        if want_novic {
            header.push("G2_novic");
        }
    }
    if normalized_available {
        if want_vic {
            header.push("g2_vic");
        }
        if want_novic {
            header.push("g2_novic");
        }
    }

    let mut table = CsvTable::new(header);
    for i in 0..series.tau.len() {
        let mut row = vec![series.tau[i]];
        if !args.normalized {
            if want_vic {
                row.push(series.g2_vic[i]);
            }
            if want_novic {
                row.push(series.g2_novic[i]);
            }
        }
        if normalized_available {
            if want_vic {
                row.push(series.g2_vic_normalized.as_ref().unwrap()[i]);
            }
            if want_novic {
                row.push(series.g2_novic_normalized.as_ref().unwrap()[i]);
            }
        }
        table.push_floats(row);
    }

    let fallback = decompose(&build_block8(&params))?.uses_fallback();
    let mut manifest = RunManifest::new("corr", Some(&params), ctx.reduced_units)
        .with_solver_path(SolverPath::from_fallback_flag(fallback))
        .with_extra_parameters(&[
            ("tmax", json!(args.tmax)),
            ("dt", json!(args.dt)),
            ("vic_columns", json!(format!("{:?}", args.vic).to_lowercase())),
            ("normalized_only", json!(args.normalized)),
        ]);
    ctx.write_csv("corr.csv", &table, &mut manifest)?;
    ctx.finish("corr", &manifest)
}

/// Frozen parameter bindings of the figure datasets.
pub struct FigureSpec {
    pub id: u8,
    pub omega: f64,
    pub delta: f64,
    pub columns: &'static [&'static str],
}

pub const FIGURES: [FigureSpec; 5] = [
    FigureSpec { id: 2, omega: 0.5, delta: 0.0, columns: &["tau", "G2_vic", "G2_novic"] },
    FigureSpec { id: 3, omega: 0.5, delta: 0.5, columns: &["tau", "G2_vic", "G2_novic"] },
    FigureSpec { id: 4, omega: 3.0, delta: 0.0, columns: &["tau", "G2_vic", "G2_novic"] },
    FigureSpec { id: 5, omega: 0.5, delta: 0.5, columns: &["tau", "f12", "f52"] },
    FigureSpec { id: 6, omega: 0.5, delta: 0.0, columns: &["tau", "g2_vic", "g2_novic"] },
];

pub fn fig(ctx: &Context, args: &FigArgs) -> CmdResult {
    let spec = FIGURES
        .iter()
        .find(|f| f.id == args.id)
        .ok_or_else(|| CmdError::Parameter(format!("unknown figure id {}", args.id)))?;
    let gamma0 = ctx.gamma0.unwrap_or(1.0);
    let params = SystemParams::new(gamma0, Complex64::new(spec.omega, 0.0), spec.delta, true)
        .map_err(CmdError::from)?;
    let grid = TauGrid::default();

    let mut table = CsvTable::new(spec.columns.iter().copied());
    let fallback;
    match spec.id {
        5 => {
            let series = pathway_probabilities(&params, &grid)?;
            fallback = decompose(&build_block8(&params))?.uses_fallback();
            for i in 0..series.tau.len() {
                table.push_floats([series.tau[i], series.f12[i], series.f52[i]]);
            }
        }
        6 => {
            let series = picorr::correlation_series(&params, &grid, &ctx.units)?;
            fallback = decompose(&build_block8(&params))?.uses_fallback();
            let vic = series.g2_vic_normalized.as_ref().expect("nonzero drive");
            let novic = series.g2_novic_normalized.as_ref().expect("nonzero drive");
            for i in 0..series.tau.len() {
                table.push_floats([series.tau[i], vic[i], novic[i]]);
            }
        }
        _ => {
            let series = picorr::correlation_series(&params, &grid, &ctx.units)?;
            fallback = decompose(&build_block8(&params))?.uses_fallback();
            for i in 0..series.tau.len() {
                table.push_floats([series.tau[i], series.g2_vic[i], series.g2_novic[i]]);
            }
        }
    }

    let name = format!("fig{}.csv", spec.id);
    let mut manifest = RunManifest::new("fig", Some(&params), ctx.reduced_units)
        .with_solver_path(SolverPath::from_fallback_flag(fallback))
        .with_extra_parameters(&[
            ("figure", json!(spec.id)),
            ("tmax", json!(tolerances::DEFAULT_TAU_MAX)),
            ("dt", json!(tolerances::DEFAULT_TAU_STEP)),
        ]);
    ctx.write_csv(&name, &table, &mut manifest)?;
    ctx.finish(&format!("fig{}", spec.id), &manifest)
}

pub fn sweep(ctx: &Context, args: &SweepArgs) -> CmdResult {
    if args.omega.is_empty() || args.delta.is_empty() {
        return Err(CmdError::Parameter("sweep grid must be non-empty".into()));
    }
    if let Some(bad) = args.omega.iter().find(|o| **o < 0.0 || !o.is_finite()) {
        return Err(CmdError::Parameter(format!("drive amplitudes must be >= 0, got {bad}")));
    }

    let mut header = vec![
        "omega".to_string(),
        "delta".to_string(),
        "rho11".to_string(),
        "rho33".to_string(),
        "rho13_re".to_string(),
        "rho13_im".to_string(),
        "intensity_pi".to_string(),
    ];
    for i in 1..=8 {
        header.push(format!("eig{i}_re"));
        header.push(format!("eig{i}_im"));
    }
    header.extend(
        [
            "tau_checkpoint",
            "g2_vic_limit",
            "g2_novic_limit",
            "measured_ratio",
            "g2_vic_inf",
            "g2_novic_inf",
        ]
        .map(String::from),
    );

    let gamma0 = ctx.gamma0.unwrap_or(1.0);
    let mut table = CsvTable::new(header);
    let mut any_fallback = false;
    // Drive-major row order.
    for &omega in &args.omega {
        for &delta in &args.delta {
            let params = SystemParams::new(gamma0, Complex64::new(omega, 0.0), delta, true)
                .map_err(CmdError::from)?;
            let s = steady_analytic(&params);
            let intensity = intensity_pi(&params, &ctx.units);
            let report = report_eigenvalues(&params)?;
            any_fallback |= report.used_fallback;

            let mut row = vec![
                omega,
                delta,
                s.rho11(),
                s.rho33(),
                s.rho13().re,
                s.rho13().im,
                intensity.physical.unwrap_or(intensity.reduced),
            ];
            for v in &report.eigenvalues {
                row.push(v.re);
                row.push(v.im);
            }
            if omega > 0.0 {
                // The long-delay contracts need the slowest relaxation mode
                // to have decayed; extend the checkpoint to ten e-foldings
                // of the spectral gap when the requested one is too short.
                let gap = report
                    .eigenvalues
                    .iter()
                    .filter(|l| (l.re * l.re + l.im * l.im).sqrt() > tolerances::ZERO_MODE_ABS)
                    .map(|l| l.re.abs())
                    .fold(f64::MAX, f64::min);
                let checkpoint = args.tau_checkpoint.max(10.0 / gap * params.gamma0());
                let a = picorr::asymptote_report(&params, checkpoint)?;
                row.extend([
                    checkpoint,
                    a.vic_limit,
                    a.novic_limit,
                    a.measured_ratio,
                    a.measured_g2_vic,
                    a.measured_g2_novic,
                ]);
            } else {
                row.extend([args.tau_checkpoint, 0.0, 0.0, f64::NAN, f64::NAN, f64::NAN]);
            }
            table.push_floats(row);
        }
    }

    let mut manifest = RunManifest::new("sweep", None, ctx.reduced_units)
        .with_solver_path(SolverPath::from_fallback_flag(any_fallback))
        .with_extra_parameters(&[
            ("gamma0", json!(gamma0)),
            ("omega", json!(args.omega)),
            ("delta", json!(args.delta)),
            ("tau_checkpoint", json!(args.tau_checkpoint)),
        ]);
    ctx.write_csv("sweep.csv", &table, &mut manifest)?;
    ctx.finish("sweep", &manifest)
}

pub fn dump_generator(ctx: &Context, args: &DumpArgs) -> CmdResult {
    let params = ctx.params(&args.drive)?;
    let generator = if args.dim == 8 { build_block8(&params) } else { build_full16(&params) };
    let m = generator.matrix();

    let mut table = CsvTable::new(["row", "col", "re", "im"]);
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            table.push_row([
                (r + 1).to_string(),
                (c + 1).to_string(),
                fmt(m[(r, c)].re),
                fmt(m[(r, c)].im),
            ]);
        }
    }

    let name = format!("generator{}.csv", args.dim);
    let mut manifest = RunManifest::new("dump-generator", Some(&params), ctx.reduced_units)
        .with_extra_parameters(&[("dim", json!(args.dim))]);
    ctx.write_csv(&name, &table, &mut manifest)?;
    ctx.finish(&format!("generator{}", args.dim), &manifest)
}
