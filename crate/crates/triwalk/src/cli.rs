//! Command-line front end.
//!
//! Subcommands: `coin build|classify`, `scan`, `simulate`, `verify`. All
//! angles are radians unless `--degrees` is passed. CSV output uses 12
//! significant digits, '.' decimals, and '\n' line endings, and is
//! byte-deterministic for identical invocations.
//!
//! Exit codes: 0 success, 1 failed verification check, 2 malformed input or
//! invalid parameters, 3 non-unitary matrix, 4 lattice overflow.

use crate::coins::{
    classify_coin, extract_dispersion_params, sample_c1, sample_c2, C1Params, C2Params, CoinClass,
    CoinFile, UnitaryCoin, CLASSIFY_TOL,
};
use crate::kinematics::{c2_dispersion_params, peak_velocity, DispersionParams, PeakMethod};
use crate::linalg::{CoinAxis, Vec3C};
use crate::simulator::{decay_exponent, simulate_on_lattice, Initial};
use crate::spectrum::{spectral_scan, verify_dispersion};
use crate::trapping::{limiting_amplitudes, p_infinity_quadrature, FamilyParams};
use crate::Error;
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "triwalk",
    version,
    about = "Three-state quantum walks on the line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or classify coin operators.
    Coin {
        #[command(subcommand)]
        action: CoinAction,
    },
    /// Sweep family parameters and write velocity/trapping datasets.
    Scan(ScanArgs),
    /// Evolve a walk in position space and summarize it.
    Simulate(SimulateArgs),
    /// Run the cross-validation suites on a coin or a family.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum CoinAction {
    /// Print the coin matrix as JSON.
    Build(BuildArgs),
    /// Classify a coin matrix from a JSON file.
    Classify(ClassifyArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Coin family: c1, c2, or general.
    #[arg(long)]
    family: String,
    #[command(flatten)]
    angles: AngleArgs,
    /// Interpret all angle flags as degrees.
    #[arg(long)]
    degrees: bool,
}

#[derive(Args, Default, Clone)]
struct AngleArgs {
    #[arg(long, allow_hyphen_values = true)]
    theta12: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    theta13: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    theta23: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma3: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma4: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma5: Option<f64>,
    /// κ = γ₂+γ₄−γ₁ shortcut for c2 scans (sets γ₂ = κ).
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<f64>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Coin JSON file ({"matrix": ...} or {"class": ..., "params": ...}).
    #[arg(long)]
    matrix: PathBuf,
    /// Classification tolerance.
    #[arg(long, default_value_t = CLASSIFY_TOL)]
    tol: f64,
    /// Brillouin-zone samples for the optional spectral-scan CSV.
    #[arg(long, default_value_t = 256)]
    samples: usize,
    /// Write the spectral scan (k, re_lambda0, im_lambda0, omega_plus,
    /// omega_minus) to this CSV file.
    #[arg(long)]
    scan_out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    /// Family to sweep: c1 or c2.
    #[arg(long)]
    family: String,
    /// Dataset: velocity, trapping, or both.
    #[arg(long, default_value = "velocity")]
    output: String,
    /// Swept axis as name:start:stop:count (repeat for a 2-D grid; c1 names:
    /// theta13, theta23; c2 names: delta, theta23, kappa).
    #[arg(long)]
    sweep: Vec<String>,
    /// Fixed parameter as name=value.
    #[arg(long = "set")]
    fixed: Vec<String>,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also simulate each grid point this many steps and add P_simulated.
    #[arg(long)]
    simulate_steps: Option<usize>,
    /// Interpret swept/fixed angles as degrees.
    #[arg(long)]
    degrees: bool,
}

#[derive(Args)]
struct SimulateArgs {
    /// Coin JSON file; alternative to --family.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Coin family (c1, c2, general) built from the angle flags.
    #[arg(long)]
    family: Option<String>,
    #[command(flatten)]
    angles: AngleArgs,
    #[arg(long)]
    degrees: bool,
    /// Number of steps.
    #[arg(long, default_value_t = 2000)]
    steps: usize,
    /// Initial coin state: L, S, R, or mixed.
    #[arg(long, default_value = "mixed")]
    initial: String,
    /// Prefix for the distribution/origin-series CSV files.
    #[arg(long, default_value = "walk")]
    out_prefix: String,
    /// Lattice half-size override (defaults to steps; smaller values can
    /// overflow).
    #[arg(long)]
    lattice: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify a coin matrix from a JSON file.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Verify family coins: c1 or c2.
    #[arg(long)]
    family: Option<String>,
    #[command(flatten)]
    angles: AngleArgs,
    #[arg(long)]
    degrees: bool,
    /// Number of random parameter draws (0 = use the explicit angles).
    #[arg(long, default_value_t = 0)]
    random: usize,
    /// RNG seed for --random.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Simulation steps for the cross-oracle check (0 skips it).
    #[arg(long, default_value_t = 0)]
    steps: usize,
}

struct CmdOutput {
    stdout: String,
    code: i32,
}

#[derive(Debug)]
struct CliFailure {
    code: i32,
    message: String,
}

impl From<Error> for CliFailure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotUnitary(_) => 3,
            Error::LatticeOverflow => 4,
            _ => 2,
        };
        CliFailure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliFailure {
    fn from(e: std::io::Error) -> Self {
        CliFailure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn fail(message: impl Into<String>) -> CliFailure {
    CliFailure {
        code: 2,
        message: message.into(),
    }
}

/// 12 significant digits, deterministic.
fn fmt_float(x: f64) -> String {
    format!("{:.11e}", x)
}

/// Entry point used by the binary.
pub fn run() -> i32 {
    run_from(std::env::args().collect())
}

/// Parses and executes `args` (including the program name), printing results
/// to stdout and a single `error:<code>:` line to stderr on failure.
pub fn run_from(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let first_line = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("bad arguments")
                .to_string();
            eprintln!("error:2:{first_line}");
            return 2;
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            if !out.stdout.is_empty() {
                print!("{}", out.stdout);
            }
            out.code
        }
        Err(f) => {
            eprintln!("error:{}:{}", f.code, f.message);
            f.code
        }
    }
}

fn dispatch(cli: Cli) -> Result<CmdOutput, CliFailure> {
    match cli.command {
        Command::Coin { action } => match action {
            CoinAction::Build(args) => cmd_coin_build(args),
            CoinAction::Classify(args) => cmd_coin_classify(args),
        },
        Command::Scan(args) => cmd_scan(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

impl AngleArgs {
    fn get(&self, name: &str) -> Option<f64> {
        match name {
            "theta12" => self.theta12,
            "theta13" => self.theta13,
            "theta23" => self.theta23,
            "delta" => self.delta,
            "gamma1" => self.gamma1,
            "gamma2" => self.gamma2,
            "gamma3" => self.gamma3,
            "gamma4" => self.gamma4,
            "gamma5" => self.gamma5,
            "kappa" => self.kappa,
            _ => None,
        }
    }

    fn value(&self, name: &str, degrees: bool) -> f64 {
        let v = self.get(name).unwrap_or(0.0);
        if degrees {
            v.to_radians()
        } else {
            v
        }
    }

    fn reject_outside(&self, allowed: &[&str]) -> Result<(), CliFailure> {
        const ALL: [&str; 10] = [
            "theta12", "theta13", "theta23", "delta", "gamma1", "gamma2", "gamma3", "gamma4",
            "gamma5", "kappa",
        ];
        for name in ALL {
            if self.get(name).is_some() && !allowed.contains(&name) {
                return Err(fail(format!(
                    "flag --{name} is not a parameter of this family"
                )));
            }
        }
        Ok(())
    }
}

fn family_coin(family: &str, angles: &AngleArgs, degrees: bool) -> Result<UnitaryCoin, CliFailure> {
    let a = |n: &str| angles.value(n, degrees);
    match family {
        "c1" => {
            angles.reject_outside(&["theta13", "theta23", "gamma2", "gamma4", "gamma5"])?;
            Ok(crate::coins::build_c1(&C1Params {
                gamma2: a("gamma2"),
                gamma4: a("gamma4"),
                gamma5: a("gamma5"),
                theta13: a("theta13"),
                theta23: a("theta23"),
            }))
        }
        "c2" => {
            angles.reject_outside(&[
                "theta23", "delta", "gamma1", "gamma2", "gamma4", "gamma5", "kappa",
            ])?;
            let mut gamma2 = a("gamma2");
            if angles.kappa.is_some() {
                if angles.gamma1.is_some() || angles.gamma2.is_some() || angles.gamma4.is_some() {
                    return Err(fail("--kappa replaces the gamma1/gamma2/gamma4 flags"));
                }
                gamma2 = a("kappa");
            }
            Ok(crate::coins::build_c2(&C2Params {
                gamma1: a("gamma1"),
                gamma2,
                gamma4: a("gamma4"),
                gamma5: a("gamma5"),
                delta: a("delta"),
                theta23: a("theta23"),
            })?)
        }
        "general" => {
            angles.reject_outside(&[
                "theta12", "theta13", "theta23", "delta", "gamma1", "gamma2", "gamma3", "gamma4",
                "gamma5",
            ])?;
            Ok(crate::coins::build_unitary(&crate::coins::CoinParams {
                theta12: a("theta12"),
                theta13: a("theta13"),
                theta23: a("theta23"),
                delta: a("delta"),
                gamma1: a("gamma1"),
                gamma2: a("gamma2"),
                gamma3: a("gamma3"),
                gamma4: a("gamma4"),
                gamma5: a("gamma5"),
            }))
        }
        other => Err(fail(format!(
            "unknown family '{other}' (want c1, c2, or general)"
        ))),
    }
}

fn cmd_coin_build(args: BuildArgs) -> Result<CmdOutput, CliFailure> {
    let coin = family_coin(&args.family, &args.angles, args.degrees)?;
    let json = serde_json::to_string_pretty(&CoinFile::from_coin(&coin))
        .map_err(|e| fail(e.to_string()))?;
    Ok(CmdOutput {
        stdout: format!("{json}\n"),
        code: 0,
    })
}

fn load_coin(path: &PathBuf) -> Result<UnitaryCoin, CliFailure> {
    let text = std::fs::read_to_string(path)?;
    let file: CoinFile =
        serde_json::from_str(&text).map_err(|e| fail(format!("bad coin JSON: {e}")))?;
    Ok(file.to_coin()?)
}

fn cmd_coin_classify(args: ClassifyArgs) -> Result<CmdOutput, CliFailure> {
    let coin = load_coin(&args.matrix)?;
    let cls = classify_coin(&coin, args.tol)?;
    let mut doc = serde_json::Map::new();
    doc.insert("class".into(), serde_json::to_value(cls.class).unwrap());
    doc.insert("det_phase".into(), cls.det_phase.into());
    if cls.class != CoinClass::NoPointSpectrum {
        if let Ok(info) = extract_dispersion_params(&coin) {
            doc.insert("rho".into(), info.rho.into());
            doc.insert("mu".into(), info.mu.into());
            doc.insert("gamma".into(), info.gamma.into());
        }
    }
    if cls.class2_equivalent {
        doc.insert("class2_equivalent".into(), true.into());
    }
    if let Some(path) = &args.scan_out {
        let scan = spectral_scan(&coin, args.samples.max(64))?;
        let mut csv = String::from("k,re_lambda0,im_lambda0,omega_plus,omega_minus\n");
        let bands = scan.band_tracks();
        // no constant track: leave the lambda0 cells empty, keep the two
        // most dispersive tracks in the omega columns
        let lambda0 = scan.constant_track_index;
        for (i, &k) in scan.k_grid.iter().enumerate() {
            let (re0, im0) = match lambda0 {
                Some(t) => (
                    fmt_float(scan.tracks[t][i].re),
                    fmt_float(scan.tracks[t][i].im),
                ),
                None => (String::new(), String::new()),
            };
            let _ = writeln!(
                csv,
                "{},{},{},{},{}",
                fmt_float(k),
                re0,
                im0,
                fmt_float(scan.tracks[bands[0]][i].arg()),
                fmt_float(scan.tracks[bands[1]][i].arg()),
            );
        }
        std::fs::write(path, csv)?;
    }
    Ok(CmdOutput {
        stdout: format!("{}\n", serde_json::Value::Object(doc)),
        code: 0,
    })
}

// ---------------------------------------------------------------- scan

struct Sweep {
    name: String,
    values: Vec<f64>,
}

fn parse_sweep(spec: &str, degrees: bool) -> Result<Sweep, CliFailure> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 4 {
        return Err(fail(format!("sweep '{spec}' is not name:start:stop:count")));
    }
    let name = parts[0].to_string();
    let start: f64 = parts[1].parse().map_err(|_| fail("bad sweep start"))?;
    let stop: f64 = parts[2].parse().map_err(|_| fail("bad sweep stop"))?;
    let count: usize = parts[3].parse().map_err(|_| fail("bad sweep count"))?;
    if count < 2 {
        return Err(fail("sweep count must be at least 2"));
    }
    let conv = |x: f64| if degrees { x.to_radians() } else { x };
    let values = (0..count)
        .map(|i| conv(start + (stop - start) * i as f64 / (count - 1) as f64))
        .collect();
    Ok(Sweep { name, values })
}

fn parse_fixed(spec: &str, degrees: bool) -> Result<(String, f64), CliFailure> {
    let (name, value) = spec
        .split_once('=')
        .ok_or_else(|| fail(format!("fixed parameter '{spec}' is not name=value")))?;
    let v: f64 = value
        .parse()
        .map_err(|_| fail(format!("bad value in '{spec}'")))?;
    Ok((name.to_string(), if degrees { v.to_radians() } else { v }))
}

struct ScanPoint {
    axes: Vec<(String, f64)>,
}

impl ScanPoint {
    fn get(&self, name: &str) -> f64 {
        self.axes
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
            .unwrap_or(0.0)
    }
}

fn cmd_scan(args: ScanArgs) -> Result<CmdOutput, CliFailure> {
    let family = args.family.as_str();
    let allowed: &[&str] = match family {
        "c1" => &["theta13", "theta23"],
        "c2" => &["delta", "theta23", "kappa"],
        other => return Err(fail(format!("unknown family '{other}' (want c1 or c2)"))),
    };
    let want_velocity = matches!(args.output.as_str(), "velocity" | "both");
    let want_trapping = matches!(args.output.as_str(), "trapping" | "both");
    if !want_velocity && !want_trapping {
        return Err(fail("output must be velocity, trapping, or both"));
    }
    if args.sweep.is_empty() || args.sweep.len() > 2 {
        return Err(fail("need one or two --sweep axes"));
    }
    let sweeps: Vec<Sweep> = args
        .sweep
        .iter()
        .map(|s| parse_sweep(s, args.degrees))
        .collect::<Result<_, _>>()?;
    let fixed: Vec<(String, f64)> = args
        .fixed
        .iter()
        .map(|s| parse_fixed(s, args.degrees))
        .collect::<Result<_, _>>()?;
    let mut seen: Vec<&str> = Vec::new();
    for name in sweeps
        .iter()
        .map(|s| &s.name)
        .chain(fixed.iter().map(|(n, _)| n))
    {
        if !allowed.contains(&name.as_str()) {
            return Err(fail(format!(
                "parameter '{name}' is not scannable for {family} (allowed: {})",
                allowed.join(", ")
            )));
        }
        if seen.contains(&name.as_str()) {
            return Err(fail(format!("parameter '{name}' given more than once")));
        }
        seen.push(name);
    }

    let mut header: Vec<String> = allowed.iter().map(|s| s.to_string()).collect();
    if want_velocity {
        header.push("v_peak".into());
        header.push("method".into());
    }
    if want_trapping {
        header.push("P_infinity".into());
        header.push("P_quadrature".into());
        if args.simulate_steps.is_some() {
            header.push("P_simulated".into());
        }
    }
    header.push("valid".into());
    let mut csv = header.join(",");
    csv.push('\n');

    let outer = &sweeps[0];
    let inner: Option<&Sweep> = sweeps.get(1);
    let mut points = Vec::new();
    for &a in &outer.values {
        match inner {
            Some(s) => {
                for &b in &s.values {
                    points.push(vec![(outer.name.clone(), a), (s.name.clone(), b)]);
                }
            }
            None => points.push(vec![(outer.name.clone(), a)]),
        }
    }

    for axes in points {
        let mut point = ScanPoint { axes };
        for (n, v) in &fixed {
            point.axes.push((n.clone(), *v));
        }
        let mut row: Vec<String> = allowed.iter().map(|n| fmt_float(point.get(n))).collect();
        let mut valid = true;
        if want_velocity {
            match scan_velocity_cells(family, &point) {
                Ok(cells) => row.extend(cells),
                Err(_) => {
                    valid = false;
                    row.extend([String::new(), String::new()]);
                }
            }
        }
        if want_trapping {
            match scan_trapping_cells(family, &point, args.simulate_steps) {
                Ok(cells) => row.extend(cells),
                Err(_) => {
                    valid = false;
                    let blanks = 2 + usize::from(args.simulate_steps.is_some());
                    row.extend(std::iter::repeat(String::new()).take(blanks));
                }
            }
        }
        row.push(if valid { "1" } else { "0" }.into());
        csv.push_str(&row.join(","));
        csv.push('\n');
    }

    match &args.out {
        Some(path) => {
            std::fs::write(path, csv)?;
            Ok(CmdOutput {
                stdout: String::new(),
                code: 0,
            })
        }
        None => Ok(CmdOutput {
            stdout: csv,
            code: 0,
        }),
    }
}

fn scan_family_point(family: &str, point: &ScanPoint) -> FamilyParams {
    match family {
        "c1" => FamilyParams::C1(C1Params {
            theta13: point.get("theta13"),
            theta23: point.get("theta23"),
            ..Default::default()
        }),
        _ => FamilyParams::C2(C2Params {
            gamma2: point.get("kappa"),
            delta: point.get("delta"),
            theta23: point.get("theta23"),
            ..Default::default()
        }),
    }
}

fn scan_velocity_cells(family: &str, point: &ScanPoint) -> crate::Result<Vec<String>> {
    let disp: DispersionParams = match family {
        "c1" => crate::kinematics::c1_dispersion_params(point.get("theta13"), point.get("theta23")),
        _ => c2_dispersion_params(point.get("delta"), point.get("kappa"), point.get("theta23"))?,
    };
    let pv = peak_velocity(&disp);
    Ok(vec![
        fmt_float(pv.v_peak),
        match pv.method {
            PeakMethod::ClosedForm => "closed_form",
            PeakMethod::NumericFallback => "numeric_fallback",
        }
        .to_string(),
    ])
}

fn scan_trapping_cells(
    family: &str,
    point: &ScanPoint,
    simulate_steps: Option<usize>,
) -> crate::Result<Vec<String>> {
    let fam = scan_family_point(family, point);
    let tr = limiting_amplitudes(&fam)?;
    let mut values = vec![
        fmt_float(tr.p_infinity),
        fmt_float(p_infinity_quadrature(&fam)?),
    ];
    if let Some(steps) = simulate_steps {
        let coin = fam.coin()?;
        let summary = crate::simulator::simulate(&coin, &Initial::Mixed, steps.max(16))?;
        values.push(fmt_float(summary.tail_average_trapping));
    }
    Ok(values)
}

// ---------------------------------------------------------------- simulate

fn cmd_simulate(args: SimulateArgs) -> Result<CmdOutput, CliFailure> {
    let (coin, family): (UnitaryCoin, Option<FamilyParams>) = match (&args.matrix, &args.family) {
        (Some(path), None) => (load_coin(path)?, None),
        (None, Some(fam)) => {
            let coin = family_coin(fam, &args.angles, args.degrees)?;
            let a = |n: &str| args.angles.value(n, args.degrees);
            let family = match fam.as_str() {
                "c1" => Some(FamilyParams::C1(C1Params {
                    gamma2: a("gamma2"),
                    gamma4: a("gamma4"),
                    gamma5: a("gamma5"),
                    theta13: a("theta13"),
                    theta23: a("theta23"),
                })),
                "c2" => Some(FamilyParams::C2(C2Params {
                    gamma1: a("gamma1"),
                    gamma2: if args.angles.kappa.is_some() {
                        a("kappa")
                    } else {
                        a("gamma2")
                    },
                    gamma4: a("gamma4"),
                    gamma5: a("gamma5"),
                    delta: a("delta"),
                    theta23: a("theta23"),
                })),
                _ => None,
            };
            (coin, family)
        }
        _ => return Err(fail("give exactly one of --matrix or --family")),
    };

    let initial = match args.initial.as_str() {
        "L" => Initial::Pure(Vec3C::basis(CoinAxis::L)),
        "S" => Initial::Pure(Vec3C::basis(CoinAxis::S)),
        "R" => Initial::Pure(Vec3C::basis(CoinAxis::R)),
        "mixed" => Initial::Mixed,
        other => return Err(fail(format!("unknown initial state '{other}'"))),
    };
    if args.steps < 16 {
        return Err(fail("--steps must be at least 16"));
    }
    let t_max = args.lattice.unwrap_or(args.steps);
    let summary = simulate_on_lattice(&coin, &initial, args.steps, t_max)?;

    let mut dist = String::from("x,P_L,P_S,P_R,P_total\n");
    for (i, &x) in summary.positions.iter().enumerate() {
        let p = summary.final_distribution[i];
        let _ = writeln!(
            dist,
            "{x},{},{},{},{}",
            fmt_float(p[0]),
            fmt_float(p[1]),
            fmt_float(p[2]),
            fmt_float(p[0] + p[1] + p[2]),
        );
    }
    std::fs::write(format!("{}.distribution.csv", args.out_prefix), dist)?;

    let mut origin = String::from("t,P_origin\n");
    for (t, &p) in summary.origin_series.iter().enumerate() {
        let _ = writeln!(origin, "{t},{}", fmt_float(p));
    }
    std::fs::write(format!("{}.origin.csv", args.out_prefix), origin)?;

    // trapping value to subtract in the decay fit: closed form when family
    // parameters are known, the tail average otherwise
    let p_trapped = match &family {
        Some(fam) => match limiting_amplitudes(fam) {
            Ok(tr) => match &initial {
                Initial::Mixed => tr.p_infinity,
                Initial::Pure(v) => {
                    // basis states only reach here
                    if v.0[0].norm() > 0.5 {
                        tr.trapping_for(CoinAxis::L)
                    } else if v.0[1].norm() > 0.5 {
                        tr.trapping_for(CoinAxis::S)
                    } else {
                        tr.trapping_for(CoinAxis::R)
                    }
                }
            },
            Err(_) => 0.0,
        },
        None => {
            let localizes = matches!(
                classify_coin(&coin, CLASSIFY_TOL).map(|c| c.class),
                Ok(CoinClass::Class1
                    | CoinClass::Class2
                    | CoinClass::Decoupled
                    | CoinClass::PurePointTheta13
                    | CoinClass::PurePointTheta12Theta23)
            );
            if localizes {
                summary.tail_average_trapping
            } else {
                0.0
            }
        }
    };
    let decay = if summary.origin_series.len() >= 256 {
        decay_exponent(&summary.origin_series, p_trapped).ok()
    } else {
        None
    };

    let doc = serde_json::json!({
        "trapping_estimate": summary.tail_average_trapping,
        "front_velocity": summary.front_velocity_estimate,
        "decay_exponent": decay,
    });
    Ok(CmdOutput {
        stdout: format!("{doc}\n"),
        code: 0,
    })
}

// ---------------------------------------------------------------- verify

struct Report {
    lines: Vec<String>,
    failures: usize,
}

impl Report {
    fn new() -> Self {
        Report {
            lines: Vec::new(),
            failures: 0,
        }
    }

    fn check(&mut self, name: &str, pass: bool, detail: String) {
        if !pass {
            self.failures += 1;
        }
        self.lines.push(format!(
            "[{}] {name}: {detail}",
            if pass { "pass" } else { "FAIL" }
        ));
    }

    fn note(&mut self, text: String) {
        self.lines.push(text);
    }
}

fn verify_family_point(
    params: &FamilyParams,
    steps: usize,
    report: &mut Report,
) -> crate::Result<()> {
    let label = match params {
        FamilyParams::C1(p) => format!("c1(θ13={:.3}, θ23={:.3})", p.theta13, p.theta23),
        FamilyParams::C2(p) => format!(
            "c2(δ={:.3}, κ={:.3}, θ23={:.3})",
            p.delta,
            p.kappa(),
            p.theta23
        ),
    };
    let coin = params.coin()?;
    let cls = classify_coin(&coin, CLASSIFY_TOL)?;
    report.check(
        &format!("{label} classified as point spectrum"),
        cls.class != CoinClass::NoPointSpectrum,
        format!("{:?}", cls.class),
    );

    let scan = spectral_scan(&coin, 256)?;
    let want = crate::linalg::Complex::from_polar(1.0, coin.det_phase());
    let const_ok = scan
        .constant_track_index
        .map(|t| (scan.track_mean(t) - want).norm() < 1e-8)
        .unwrap_or(false);
    report.check(
        &format!("{label} constant eigenvalue = e^(i arg det C)"),
        const_ok,
        format!("{} constant track(s)", scan.n_constant_tracks),
    );

    if matches!(cls.class, CoinClass::Class1 | CoinClass::Class2) {
        let err = verify_dispersion(&coin, &scan)?;
        report.check(
            &format!("{label} dispersion identity"),
            err < 1e-8,
            format!("max error {err:.2e}"),
        );
    }

    let nf = crate::trapping::norm_factors(params)?;
    if nf.a - 2.0 * nf.b.abs() > 1e-6 {
        let tr = limiting_amplitudes(params)?; // embeds the quadrature gate
        report.check(
            &format!("{label} trapping closed form vs quadrature"),
            (0.0..=1.0 + 1e-12).contains(&tr.p_infinity),
            format!("P_inf = {:.6}", tr.p_infinity),
        );
        if steps >= 500 {
            let info = extract_dispersion_params(&coin)?;
            let disp = DispersionParams::new(info.rho, info.mu, info.gamma);
            let v = peak_velocity(&disp).v_peak;
            let summary = crate::simulator::simulate(&coin, &Initial::Mixed, steps)?;
            report.check(
                &format!("{label} simulation trapping (T={steps})"),
                (summary.tail_average_trapping - tr.p_infinity).abs() < 0.02,
                format!(
                    "tail {:.5} vs closed {:.5}",
                    summary.tail_average_trapping, tr.p_infinity
                ),
            );
            if v > 0.1 {
                report.check(
                    &format!("{label} simulation front velocity (T={steps})"),
                    (summary.front_velocity_estimate - v).abs() < 0.03,
                    format!(
                        "front {:.4} vs v_peak {v:.4}",
                        summary.front_velocity_estimate
                    ),
                );
            }
        }
    } else {
        report.note(format!(
            "[skip] {label}: stationary norm pole (a−2|b| ≈ 0), trapping checks skipped"
        ));
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<CmdOutput, CliFailure> {
    let mut report = Report::new();
    match (&args.matrix, &args.family) {
        (Some(path), None) => {
            let coin = load_coin(path)?;
            let cls = classify_coin(&coin, CLASSIFY_TOL)?;
            let scan = spectral_scan(&coin, 256)?;
            let scan_says_point = scan.n_constant_tracks > 0;
            let classifier_says_point = cls.class != CoinClass::NoPointSpectrum;
            report.check(
                "classifier agrees with spectral scan",
                scan_says_point == classifier_says_point,
                format!(
                    "{:?} vs {} constant track(s)",
                    cls.class, scan.n_constant_tracks
                ),
            );
            if !classifier_says_point {
                report
                    .note("NoPointSpectrum: trapping checks skipped, decay check run".to_string());
                let steps = if args.steps >= 256 { args.steps } else { 1024 };
                let summary = crate::simulator::simulate(&coin, &Initial::Mixed, steps)?;
                report.check(
                    "origin probability decays",
                    summary.tail_average_trapping < 0.01,
                    format!("tail average {:.2e}", summary.tail_average_trapping),
                );
                if let Ok(slope) = decay_exponent(&summary.origin_series, 0.0) {
                    report.note(format!("decay exponent {slope:.3}"));
                }
            } else {
                if matches!(cls.class, CoinClass::Class1 | CoinClass::Class2) {
                    let err = verify_dispersion(&coin, &scan)?;
                    report.check(
                        "dispersion identity",
                        err < 1e-8,
                        format!("max error {err:.2e}"),
                    );
                }
                report.note(
                    "matrix-only input: family trapping closed forms not applicable".to_string(),
                );
            }
        }
        (None, Some(family)) => {
            if args.random > 0 {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
                for _ in 0..args.random {
                    let params = match family.as_str() {
                        "c1" => FamilyParams::C1(sample_c1(&mut rng)),
                        "c2" => FamilyParams::C2(sample_c2(&mut rng)),
                        other => return Err(fail(format!("unknown family '{other}'"))),
                    };
                    verify_family_point(&params, args.steps, &mut report)?;
                }
            } else {
                let a = |n: &str| args.angles.value(n, args.degrees);
                let params = match family.as_str() {
                    "c1" => FamilyParams::C1(C1Params {
                        gamma2: a("gamma2"),
                        gamma4: a("gamma4"),
                        gamma5: a("gamma5"),
                        theta13: a("theta13"),
                        theta23: a("theta23"),
                    }),
                    "c2" => FamilyParams::C2(C2Params {
                        gamma1: a("gamma1"),
                        gamma2: if args.angles.kappa.is_some() {
                            a("kappa")
                        } else {
                            a("gamma2")
                        },
                        gamma4: a("gamma4"),
                        gamma5: a("gamma5"),
                        delta: a("delta"),
                        theta23: a("theta23"),
                    }),
                    other => return Err(fail(format!("unknown family '{other}'"))),
                };
                if let FamilyParams::C2(p) = &params {
                    p.validate()?;
                }
                verify_family_point(&params, args.steps, &mut report)?;
            }
        }
        _ => return Err(fail("give exactly one of --matrix or --family")),
    }

    let mut out = report.lines.join("\n");
    out.push('\n');
    let _ = writeln!(
        out,
        "{} checks, {} failures",
        report.lines.len(),
        report.failures
    );
    Ok(CmdOutput {
        stdout: out,
        code: if report.failures == 0 { 0 } else { 1 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parsing() {
        let s = parse_sweep("theta13:-1.5:1.5:4", false).unwrap();
        assert_eq!(s.name, "theta13");
        assert_eq!(s.values.len(), 4);
        assert!((s.values[0] + 1.5).abs() < 1e-15);
        assert!((s.values[3] - 1.5).abs() < 1e-15);
        assert!(parse_sweep("x:0:1:1", false).is_err());
        assert!(parse_sweep("x:0:1", false).is_err());
        // degree conversion
        let s = parse_sweep("theta23:0:180:3", true).unwrap();
        assert!((s.values[2] - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn float_format_is_twelve_significant_digits() {
        assert_eq!(fmt_float(0.5), "5.00000000000e-1");
        assert_eq!(fmt_float(-1.0 / 3.0), "-3.33333333333e-1");
        assert_eq!(fmt_float(0.0), "0.00000000000e0");
    }
}
