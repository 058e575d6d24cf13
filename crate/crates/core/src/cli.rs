//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 validity violation, 3 infeasible
//! search.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{GeodesicError, SearchError, SwitchError};
use crate::geodesic::{diametral_crossing_time, null_crossing_time, sample_orbit, Orbit, OrbitPoint};
use crate::output::{to_json_string, Cell, CsvTable};
use crate::search::{find_meeting_radius, period_ratio_curve, solve_switch_configuration, SearchConfig};
use crate::spacetime::{ShellSpacetime, SpacetimeConfig, SurfaceStress, DEFAULT_HORIZON_MARGIN};
use crate::switch::{
    basis_state, lambda_controlled_slots, measure_control_diagonal, norm_sq, order_summary, run_general_protocol,
    schedule, switch_slots, OperatorSpec, Sign, TbPolicy, C64,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "shellswitch",
    version,
    about = "Thin-shell spacetimes, radial geodesics and the gravitational quantum switch"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a spacetime config: shells, lapses, junction gaps, stress.
    Validate(SpacetimeArgs),
    /// Surface stress-energy of every shell.
    Stress(SpacetimeArgs),
    /// Oscillation period of a particle dropped from rest.
    Period(PeriodArgs),
    /// Radial light-ray crossing times, one row per spacetime.
    Lightray(LightrayArgs),
    /// Solve for the switch geometry; writes curve.csv and solution.json.
    Search(SearchArgs),
    /// Trajectories of both geodesics and the meeting event.
    Trace(TraceArgs),
    /// Evolve the control⊗target state through the switch.
    Switch(SwitchArgs),
}

#[derive(Debug, Args)]
struct SpacetimeArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Relative horizon margin for shells.
    #[arg(long, default_value_t = DEFAULT_HORIZON_MARGIN)]
    margin: f64,
}

#[derive(Debug, Args)]
struct PeriodArgs {
    #[command(flatten)]
    spacetime: SpacetimeArgs,
    /// Release radius in the exterior patch.
    #[arg(long)]
    release: f64,
}

#[derive(Debug, Args)]
struct LightrayArgs {
    /// Spacetime config; repeat for each branch.
    #[arg(long, required = true)]
    config: Vec<PathBuf>,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    /// Ray passes through the center: `from` and `to` on opposite sides.
    #[arg(long)]
    diametral: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, default_value_t = DEFAULT_HORIZON_MARGIN)]
    margin: f64,
}

#[derive(Debug, Args)]
struct SearchCommon {
    #[arg(long)]
    config: PathBuf,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Residual tolerance, overriding the config.
    #[arg(long)]
    tol: Option<f64>,
    /// Worker threads for the R1 scan (0: all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Target period ratio `p/q`, overriding the config.
    #[arg(long)]
    ratio: Option<String>,
    #[arg(long)]
    margin: Option<f64>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[command(flatten)]
    common: SearchCommon,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct TraceArgs {
    #[command(flatten)]
    common: SearchCommon,
    /// Samples per trajectory.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// End of the sampled interval in global time (default: the rejoin time).
    #[arg(long)]
    t_max: Option<f64>,
    /// Radii per far-side table.
    #[arg(long, default_value_t = 200)]
    far_samples: usize,
}

#[derive(Debug, Args)]
struct SwitchArgs {
    #[command(flatten)]
    common: SearchCommon,
    /// Operator A: preset (X, Y, Z, H, I) or path to a JSON matrix.
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    /// Agent A's operator in M1 when it depends on the geometry (needs --d).
    #[arg(long, requires = "d")]
    c: Option<String>,
    /// Agent A's operator in M2 when it depends on the geometry (needs --c).
    #[arg(long, requires = "c")]
    d: Option<String>,
    /// Target state: basis index or path to a JSON vector `[[re, im], …]`.
    #[arg(long, default_value = "0")]
    psi: String,
    /// Place t_B at this fraction of (t_A1, t_A2).
    #[arg(long)]
    tb_fraction: Option<f64>,
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let code = match e {
            SearchError::Config(_) => EXIT_INPUT,
            _ => EXIT_INFEASIBLE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<GeodesicError> for Failure {
    fn from(e: GeodesicError) -> Self {
        let code = match e {
            GeodesicError::SampleCount => EXIT_INPUT,
            _ => EXIT_INVALID,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<SwitchError> for Failure {
    fn from(e: SwitchError) -> Self {
        let code = match e {
            SwitchError::Dimension { .. } | SwitchError::Shape | SwitchError::NotNormalized(_) => EXIT_INPUT,
            _ => EXIT_INVALID,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<(), Failure>;

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Validate(a) => cmd_validate(&a, out),
        Command::Stress(a) => cmd_stress(&a, out),
        Command::Period(a) => cmd_period(&a, out),
        Command::Lightray(a) => cmd_lightray(&a, out),
        Command::Search(a) => cmd_search(&a, out),
        Command::Trace(a) => cmd_trace(&a, out),
        Command::Switch(a) => cmd_switch(&a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Writes `text` to `--out` when given, else to stdout.
fn emit(out: &mut dyn Write, target: Option<&Path>, text: &str) -> CliResult {
    match target {
        Some(path) => write_file(path, text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::input(format!("stdout: {e}"))),
    }
}

fn json<T: Serialize>(record: &T) -> Result<String, Failure> {
    to_json_string(record).map_err(|e| Failure::input(format!("serialization: {e}")))
}

fn load_spacetime(path: &Path, margin: f64) -> Result<ShellSpacetime, Failure> {
    let text = read_file(path)?;
    let config = SpacetimeConfig::from_json(&text)
        .map_err(|e| Failure::input(format!("{}: invalid spacetime config: {e}", path.display())))?;
    config
        .build_with_margin(margin)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct ShellReport {
    index: usize,
    radius: f64,
    inner_mass: f64,
    outer_mass: f64,
    induced_metric_gap: f64,
    rho: f64,
    p_tangential: f64,
}

#[derive(Serialize)]
struct ValidateReport<'a> {
    valid: bool,
    patches: usize,
    shells: Vec<ShellReport>,
    lapses: &'a [f64],
    diagnostics: &'a [crate::spacetime::Diagnostic],
}

fn cmd_validate(args: &SpacetimeArgs, out: &mut dyn Write) -> CliResult {
    let st = load_spacetime(&args.config, args.margin)?;
    let mut shells = Vec::new();
    for j in 0..st.shells().len() {
        let s = st.shell_stress(j).map_err(|e| Failure::invalid(e.to_string()))?;
        shells.push(ShellReport {
            index: j,
            radius: s.shell_radius,
            inner_mass: s.inner_mass,
            outer_mass: s.outer_mass,
            induced_metric_gap: st.induced_metric_gap(j).map_err(|e| Failure::invalid(e.to_string()))?,
            rho: s.rho,
            p_tangential: s.p_tangential,
        });
    }
    let text = match args.format.unwrap_or(Format::Json) {
        Format::Json => json(&ValidateReport {
            valid: true,
            patches: st.patches().len(),
            shells,
            lapses: st.lapses(),
            diagnostics: st.diagnostics(),
        })?,
        Format::Csv => {
            let mut t = CsvTable::new(&[
                "shell",
                "R",
                "inner_mass",
                "outer_mass",
                "gap",
                "rho",
                "P",
                "lapse_inside",
            ]);
            for s in &shells {
                t.push(&[
                    Cell::Int(s.index as i64),
                    Cell::Num(s.radius),
                    Cell::Num(s.inner_mass),
                    Cell::Num(s.outer_mass),
                    Cell::Num(s.induced_metric_gap),
                    Cell::Num(s.rho),
                    Cell::Num(s.p_tangential),
                    Cell::Num(st.lapses()[s.index]),
                ]);
            }
            t.to_string()
        }
    };
    emit(out, args.out.as_deref(), &text)
}

fn cmd_stress(args: &SpacetimeArgs, out: &mut dyn Write) -> CliResult {
    let st = load_spacetime(&args.config, args.margin)?;
    let stresses: Vec<SurfaceStress> = (0..st.shells().len())
        .map(|j| st.shell_stress(j))
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::invalid(e.to_string()))?;
    let text = match args.format.unwrap_or(Format::Json) {
        Format::Json => json(&stresses)?,
        Format::Csv => {
            let mut t = CsvTable::new(&[
                "R",
                "inner_mass",
                "outer_mass",
                "K_tt",
                "K_thth",
                "K_phph",
                "S_tt",
                "S_thth",
                "S_phph",
                "rho",
                "P",
                "P_radial",
            ]);
            for s in &stresses {
                let mut row = vec![
                    Cell::Num(s.shell_radius),
                    Cell::Num(s.inner_mass),
                    Cell::Num(s.outer_mass),
                ];
                row.extend(s.k_jump.iter().map(|&x| Cell::Num(x)));
                row.extend(s.s.iter().map(|&x| Cell::Num(x)));
                row.extend([Cell::Num(s.rho), Cell::Num(s.p_tangential), Cell::Num(s.p_radial)]);
                t.push(&row);
            }
            t.to_string()
        }
    };
    emit(out, args.out.as_deref(), &text)
}

fn cmd_period(args: &PeriodArgs, out: &mut dyn Write) -> CliResult {
    let st = load_spacetime(&args.spacetime.config, args.spacetime.margin)?;
    let period = Orbit::new(&st, args.release)?.period();
    let text = match args.spacetime.format.unwrap_or(Format::Json) {
        Format::Json => json(&period)?,
        Format::Csv => {
            let mut t = CsvTable::new(&[
                "patch",
                "mass",
                "lapse",
                "r_start",
                "r_end",
                "dt_local",
                "dt_global",
                "dtau",
            ]);
            for s in &period.quarter {
                t.push(&[
                    Cell::Int(s.patch_index as i64),
                    Cell::Num(s.mass),
                    Cell::Num(s.lapse),
                    Cell::Num(s.r_start),
                    Cell::Num(s.r_end),
                    Cell::Num(s.dt_local),
                    Cell::Num(s.dt_global),
                    Cell::Num(s.dtau),
                ]);
            }
            t.to_string()
        }
    };
    emit(out, args.spacetime.out.as_deref(), &text)
}

fn branch_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

#[derive(Serialize)]
struct LightrayRow {
    branch: String,
    from: f64,
    to: f64,
    diametral: bool,
    dt_global: f64,
}

fn cmd_lightray(args: &LightrayArgs, out: &mut dyn Write) -> CliResult {
    let mut rows = Vec::new();
    for path in &args.config {
        let st = load_spacetime(path, args.margin)?;
        let dt = if args.diametral {
            diametral_crossing_time(&st, args.from, args.to)?
        } else {
            null_crossing_time(&st, args.from, args.to)?
        };
        rows.push(LightrayRow {
            branch: branch_name(path),
            from: args.from,
            to: args.to,
            diametral: args.diametral,
            dt_global: dt,
        });
    }
    let text = match args.format.unwrap_or(Format::Csv) {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut t = CsvTable::new(&["branch", "from", "to", "diametral", "dt_global"]);
            for r in &rows {
                t.push(&[
                    Cell::Text(&r.branch),
                    Cell::Num(r.from),
                    Cell::Num(r.to),
                    Cell::Text(if r.diametral { "true" } else { "false" }),
                    Cell::Num(r.dt_global),
                ]);
            }
            t.to_string()
        }
    };
    emit(out, args.out.as_deref(), &text)
}

fn parse_ratio(text: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::input(format!("--ratio expects p/q with positive integers, got {text:?}"));
    let (p, q) = text.split_once('/').ok_or_else(bad)?;
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let q: u64 = q.trim().parse().map_err(|_| bad())?;
    if p == 0 || q == 0 {
        return Err(bad());
    }
    Ok((p, q))
}

fn load_search_config(args: &SearchCommon) -> Result<SearchConfig, Failure> {
    let text = read_file(&args.config)?;
    let mut config = SearchConfig::from_json(&text)
        .map_err(|e| Failure::input(format!("{}: invalid search config: {e}", args.config.display())))?;
    if let Some(tol) = args.tol {
        config.tol = tol;
    }
    if let Some(margin) = args.margin {
        config.margin = margin;
    }
    if let Some(ratio) = &args.ratio {
        (config.p, config.q) = parse_ratio(ratio)?;
    }
    config.validate()?;
    Ok(config)
}

fn ensure_dir(path: &Path) -> CliResult {
    fs::create_dir_all(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn curve_csv(curve: &[crate::search::CurvePoint]) -> String {
    let mut t = CsvTable::new(&["R1", "f", "ratio"]);
    for c in curve {
        t.push(&[Cell::Num(c.r1), Cell::Num(c.f), Cell::Num(c.ratio)]);
    }
    t.to_string()
}

fn cmd_search(args: &SearchArgs, out: &mut dyn Write) -> CliResult {
    let config = load_search_config(&args.common)?;
    let outcome = match solve_switch_configuration(&config, args.common.jobs) {
        Ok(o) => o,
        Err(e) => {
            // Still leave the curve behind for inspection.
            if let Some(dir) = &args.common.out {
                if let Ok(curve) = period_ratio_curve(&config, args.common.jobs) {
                    ensure_dir(dir)?;
                    write_file(&dir.join("curve.csv"), &curve_csv(&curve))?;
                }
            }
            return Err(e.into());
        }
    };
    let solution = json(&outcome.solution)?;
    match &args.common.out {
        Some(dir) => {
            ensure_dir(dir)?;
            write_file(&dir.join("curve.csv"), &curve_csv(&outcome.curve))?;
            write_file(&dir.join("solution.json"), &solution)
        }
        None => match args.format.unwrap_or(Format::Json) {
            Format::Json => emit(out, None, &solution),
            Format::Csv => emit(out, None, &curve_csv(&outcome.curve)),
        },
    }
}

fn trajectory_csv(points: &[OrbitPoint], branch: &str) -> String {
    let mut t = CsvTable::new(&["t_global", "r", "tau", "branch"]);
    for p in points {
        t.push(&[
            Cell::Num(p.t_global),
            Cell::Num(p.r),
            Cell::Num(p.tau),
            Cell::Text(branch),
        ]);
    }
    t.to_string()
}

/// First far-side exterior excursion of both geodesics: `(r, τ, t)` going out
/// and coming back.
fn far_side_csv(o1: &Orbit, o2: &Orbit, samples: usize) -> Result<String, Failure> {
    let mut t = CsvTable::new(&["branch", "leg", "r", "tau", "t_global"]);
    for (name, orbit) in [("M1", o1), ("M2", o2)] {
        let r_lo = orbit.segments()[0].r_end;
        let r_hi = orbit.release_radius();
        let radii: Vec<f64> = (0..samples)
            .map(|k| {
                if k + 1 == samples {
                    r_hi
                } else {
                    r_lo + (r_hi - r_lo) * k as f64 / (samples - 1).max(1) as f64
                }
            })
            .collect();
        let crossings: Vec<[(f64, f64); 2]> = radii
            .iter()
            .map(|&r| orbit.far_side_crossings(r))
            .collect::<Result<_, _>>()?;
        for (&r, c) in radii.iter().zip(&crossings) {
            t.push(&[
                Cell::Text(name),
                Cell::Text("outbound"),
                Cell::Num(r),
                Cell::Num(c[0].1),
                Cell::Num(c[0].0),
            ]);
        }
        for (&r, c) in radii.iter().zip(&crossings).rev() {
            t.push(&[
                Cell::Text(name),
                Cell::Text("inbound"),
                Cell::Num(r),
                Cell::Num(c[1].1),
                Cell::Num(c[1].0),
            ]);
        }
    }
    Ok(t.to_string())
}

fn cmd_trace(args: &TraceArgs, out: &mut dyn Write) -> CliResult {
    if args.samples == 0 {
        return Err(GeodesicError::SampleCount.into());
    }
    if args.far_samples < 2 {
        return Err(Failure::input("--far-samples must be at least 2"));
    }
    let config = load_search_config(&args.common)?;
    let solution = solve_switch_configuration(&config, args.common.jobs)?.solution;
    let meeting = find_meeting_radius(&solution, &config)?;
    let o1 = config.m1_orbit(solution.r1, solution.f)?;
    let o2 = config.m2_orbit(solution.r1)?;
    let t_max = args.t_max.unwrap_or(solution.t_f);
    if !(t_max >= 0.0) {
        return Err(Failure::input(format!("--t-max must be non-negative, got {t_max}")));
    }
    let g1 = sample_orbit(&o1, t_max, args.samples)?;
    let g2 = sample_orbit(&o2, t_max, args.samples)?;
    let meeting_json = json(&meeting)?;
    match &args.common.out {
        Some(dir) => {
            ensure_dir(dir)?;
            write_file(&dir.join("gamma1.csv"), &trajectory_csv(&g1, "M1"))?;
            write_file(&dir.join("gamma2.csv"), &trajectory_csv(&g2, "M2"))?;
            write_file(&dir.join("far_side.csv"), &far_side_csv(&o1, &o2, args.far_samples)?)?;
            write_file(&dir.join("meeting.json"), &meeting_json)
        }
        None => emit(out, None, &meeting_json),
    }
}

fn load_operator(spec: &str) -> Result<OperatorSpec, Failure> {
    if let Some(op) = OperatorSpec::preset(spec) {
        return Ok(op);
    }
    let text = read_file(Path::new(spec))?;
    OperatorSpec::from_json(&text).map_err(|e| Failure::input(format!("{spec}: invalid operator: {e}")))
}

fn load_target(spec: &str, dim: usize) -> Result<Vec<C64>, Failure> {
    if let Ok(k) = spec.parse::<usize>() {
        if k >= dim {
            return Err(Failure::input(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        return Ok(basis_state(dim, k));
    }
    let text = read_file(Path::new(spec))?;
    let raw: Vec<[f64; 2]> =
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("{spec}: invalid state: {e}")))?;
    let psi: Vec<C64> = raw.into_iter().map(|[re, im]| C64::new(re, im)).collect();
    if psi.len() != dim {
        return Err(SwitchError::Dimension {
            expected: dim,
            found: psi.len(),
        }
        .into());
    }
    let n = norm_sq(&psi).sqrt();
    if (n - 1.0).abs() > 1e-12 {
        return Err(SwitchError::NotNormalized(n).into());
    }
    Ok(psi)
}

#[derive(Serialize)]
struct MeasurementRecord {
    sign: String,
    probability: f64,
    impossible: bool,
    target: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct SwitchRecord {
    schedule: crate::switch::EventSchedule,
    order: Vec<String>,
    state: serde_json::Value,
    schmidt_rank: usize,
    measurements: Vec<MeasurementRecord>,
}

fn cmd_switch(args: &SwitchArgs, out: &mut dyn Write) -> CliResult {
    let a = load_operator(&args.a)?;
    let b = load_operator(&args.b)?;
    if a.dim() != b.dim() {
        return Err(SwitchError::Dimension {
            expected: a.dim(),
            found: b.dim(),
        }
        .into());
    }
    let psi = load_target(&args.psi, a.dim())?;
    let config = load_search_config(&args.common)?;
    let solution = solve_switch_configuration(&config, args.common.jobs)?.solution;
    let meeting = find_meeting_radius(&solution, &config)?;
    let policy = args.tb_fraction.map_or(TbPolicy::Midpoint, TbPolicy::Fraction);
    let sched = schedule(&solution, &meeting, policy)?;
    let slots = match (&args.c, &args.d) {
        (Some(c), Some(d)) => lambda_controlled_slots(&load_operator(c)?, &load_operator(d)?, &b, &sched),
        _ => switch_slots(&a, &b, &sched),
    };
    let joint = run_general_protocol(&slots, &psi)?;
    let measurements = [Sign::Plus, Sign::Minus]
        .into_iter()
        .map(|s| {
            let m = measure_control_diagonal(&joint, s);
            MeasurementRecord {
                sign: s.symbol().to_string(),
                probability: m.probability,
                impossible: m.impossible,
                target: m.target.iter().map(|z| [z.re, z.im]).collect(),
            }
        })
        .collect();
    let record = SwitchRecord {
        schedule: sched,
        order: order_summary(&slots).lines().map(str::to_string).collect(),
        state: joint.to_json_value(),
        schmidt_rank: joint.schmidt_rank(1e-12),
        measurements,
    };
    let text = json(&record)?;
    match &args.common.out {
        Some(path) => write_file(path, &text),
        None => emit(out, None, &text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_parsing() {
        assert_eq!(parse_ratio("9/10").unwrap(), (9, 10));
        assert_eq!(parse_ratio(" 18 / 20 ").unwrap(), (18, 20));
        assert!(parse_ratio("0.9").is_err());
        assert!(parse_ratio("0/3").is_err());
    }

    #[test]
    fn help_exits_zero() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run(["shellswitch", "--help"], &mut o, &mut e), EXIT_OK);
        assert!(String::from_utf8(o).unwrap().contains("search"));
    }

    #[test]
    fn unknown_subcommand_is_input_error() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run(["shellswitch", "frobnicate"], &mut o, &mut e), EXIT_INPUT);
    }
}
