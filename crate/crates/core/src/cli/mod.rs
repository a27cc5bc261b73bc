//! The `qclock` command line: spectrum files in, reports out.
//!
//! Exit codes: 0 ok, 1 verify failure, 2 malformed input, 3 incompatible
//! spectrum, 4 bad dimension, 5 internal consistency failure.

pub mod format;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;

use crate::dynamics::{clock_run, evolve_density, DensityMatrix};
use crate::error::Error;
use crate::numerics::{is_odd_prime, ComplexMatrix, ComplexVector};
use crate::phase_space::{OperatorBasis, WignerGrid};
use crate::schwinger::SchwingerPair;
use crate::spectrum::{
    analyze_energies, EnergyInput, FloatAnalysis, Spectrum, SpectrumDecomposition, Verdict,
};
use crate::verify::{measure_conventions, run_suite, Bound, SuiteReport, MAX_SUITE_DIM};

use self::format::sig;
use self::report::{
    rationalization_reports, AnalysisReport, ClockReport, GridReport, SpectrumFile,
    VerdictReport, TOOL_VERSION,
};

pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const MALFORMED: i32 = 2;
    pub const INCOMPATIBLE: i32 = 3;
    pub const BAD_DIMENSION: i32 = 4;
    pub const INTERNAL: i32 = 5;
}

const DEFAULT_TOLERANCE: f64 = 1e-9;
const DEFAULT_MAX_DENOMINATOR: u64 = 1_000_000;
const REALITY_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "qclock", version, about = "Time-interval operators and stroboscopic quantum clocks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a spectrum admits a clock period and report it.
    Analyze(AnalyzeArgs),
    /// Run the stroboscopic clock from a shift eigenstate.
    Clock(ClockArgs),
    /// Dump the discrete Wigner function of an evolved state.
    Wigner(WignerArgs),
    /// Run the self-check suite at one dimension.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Debug, clap::Args)]
struct AnalyzeArgs {
    #[arg(long)]
    spectrum: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_DENOMINATOR)]
    max_denominator: u64,
    /// Also analyze E_m - E_0.
    #[arg(long)]
    shift_ground: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
}

#[derive(Debug, clap::Args)]
struct ClockArgs {
    #[arg(long)]
    spectrum: PathBuf,
    #[arg(long, default_value_t = 0)]
    initial: usize,
    /// Number of periods; defaults to 2N.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, value_enum, default_value_t = TableFormat::Json)]
    format: TableFormat,
}

#[derive(Debug, clap::Args)]
struct WignerArgs {
    #[arg(long)]
    spectrum: PathBuf,
    /// `v:INT`, `u:INT` or `mixed`.
    #[arg(long)]
    state: String,
    #[arg(long, conflicts_with = "step")]
    time: Option<f64>,
    /// Multiple of the clock period (requires a compatible spectrum).
    #[arg(long)]
    step: Option<u64>,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn malformed(message: impl Into<String>) -> Self {
        Self::new(exit::MALFORMED, message)
    }

    fn internal(e: impl std::fmt::Display) -> Self {
        Self::new(exit::INTERNAL, format!("internal error: {e}"))
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::MALFORMED } else { exit::OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => cmd_analyze(&a, out),
        Command::Clock(a) => cmd_clock(&a, out),
        Command::Wigner(a) => cmd_wigner(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "qclock: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> std::result::Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::internal(format!("write failed: {e}")))
}

fn to_json<T: serde::Serialize>(value: &T) -> std::result::Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(Failure::internal)?;
    s.push('\n');
    Ok(s)
}

/// Reads and validates a spectrum file.
pub fn load_spectrum_file(path: &Path) -> std::result::Result<SpectrumFile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> std::result::Result<(SpectrumFile, Vec<EnergyInput>), Failure> {
    let file = load_spectrum_file(path).map_err(Failure::malformed)?;
    if !is_odd_prime(file.n) {
        return Err(Failure::new(
            exit::BAD_DIMENSION,
            format!("n: {} is not an odd prime", file.n),
        ));
    }
    if file.energies.len() != file.n {
        return Err(Failure::malformed(format!(
            "energies: expected {} entries, found {}",
            file.n,
            file.energies.len()
        )));
    }
    let inputs = file.energy_inputs().map_err(Failure::malformed)?;
    Ok((file, inputs))
}

fn analyze(inputs: &[EnergyInput], tol: f64, max_den: u64) -> std::result::Result<FloatAnalysis, Failure> {
    analyze_energies(inputs, tol, max_den).map_err(|e| match e {
        Error::DegenerateSpectrum => Failure::new(exit::INCOMPATIBLE, e.to_string()),
        Error::InvalidArgument(m) => Failure::malformed(m),
        Error::DimensionNotOddPrime(_) => Failure::new(exit::BAD_DIMENSION, e.to_string()),
        other => Failure::internal(other),
    })
}

fn verdict_report(analysis: &FloatAnalysis) -> std::result::Result<VerdictReport, Failure> {
    match (&analysis.verdict, &analysis.spectrum) {
        (Verdict::Compatible(d), Some(spec)) => {
            let pair = SchwingerPair::new(d.dim()).map_err(Failure::internal)?;
            let basis = OperatorBasis::new(&pair);
            let notes = measure_conventions(&pair, &basis, d, spec).map_err(Failure::internal)?;
            Ok(VerdictReport::compatible(d, notes))
        }
        (Verdict::Compatible(_), None) => Err(Failure::internal("compatible verdict without spectrum")),
        (Verdict::Incompatible(c), _) => Ok(VerdictReport::incompatible(c)),
    }
}

fn shifted_inputs(inputs: &[EnergyInput]) -> Vec<EnergyInput> {
    let ground = &inputs[0];
    inputs
        .iter()
        .map(|e| match (e, ground) {
            (EnergyInput::Exact(a), EnergyInput::Exact(b)) => EnergyInput::Exact(a - b),
            _ => EnergyInput::Float(e.approx() - ground.approx()),
        })
        .collect()
}

fn cmd_analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> CmdResult {
    let (file, inputs) = load(&args.spectrum)?;
    let analysis = analyze(&inputs, args.tolerance, args.max_denominator)?;
    let verdict = verdict_report(&analysis)?;
    let shifted_ground = if args.shift_ground {
        let shifted = analyze(&shifted_inputs(&inputs), args.tolerance, args.max_denominator)?;
        Some(verdict_report(&shifted)?)
    } else {
        None
    };
    let code = if verdict.compatible { exit::OK } else { exit::INCOMPATIBLE };
    let report = AnalysisReport {
        tool_version: TOOL_VERSION.into(),
        input: file,
        verdict,
        rationalization: rationalization_reports(&analysis),
        shifted_ground,
    };
    let text = match args.format {
        ReportFormat::Json => to_json(&report)?,
        ReportFormat::Text => analysis_text(&report),
    };
    emit(out, &text)?;
    Ok(code)
}

fn verdict_text(v: &VerdictReport, prefix: &str, s: &mut String) {
    use std::fmt::Write as _;
    if v.compatible {
        let _ = writeln!(s, "{prefix}compatible: yes");
        let _ = writeln!(s, "{prefix}omega: {}", v.omega.as_deref().unwrap_or("?"));
        let _ = writeln!(s, "{prefix}k: {}", v.k.unwrap_or(0));
        let _ = writeln!(s, "{prefix}delta_tau: {}", sig(v.delta_tau.unwrap_or(f64::NAN)));
        let _ = writeln!(s, "{prefix}f: {}", v.f.as_deref().unwrap_or(&[]).join(" "));
        if let Some(c) = &v.convention_notes {
            let _ = writeln!(
                s,
                "{prefix}signs: commutation {:+}, shift direction {:+}, weyl pair {:+}",
                c.commutation_sign, c.shift_direction_sign, c.weyl_pair_sign
            );
        }
    } else {
        let _ = writeln!(s, "{prefix}compatible: no");
        if let Some(c) = &v.certificate {
            let _ = writeln!(s, "{prefix}reason: {}", c.reason);
            if !c.residues.is_empty() {
                let r: Vec<String> = c.residues.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "{prefix}residues: {}", r.join(" "));
            }
            if let Some(i) = c.first_failing_index {
                let _ = writeln!(s, "{prefix}first failing index: {i}");
            }
        }
    }
}

fn analysis_text(r: &AnalysisReport) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let label = r.input.label.as_deref().unwrap_or("(unlabelled)");
    let _ = writeln!(s, "spectrum: {label} (n = {})", r.input.n);
    verdict_text(&r.verdict, "", &mut s);
    for q in &r.rationalization {
        let _ = writeln!(
            s,
            "rationalized E[{}] = {} -> {} (residual {})",
            q.index,
            sig(q.input),
            q.value.as_deref().unwrap_or("none"),
            q.residual.map_or("-".to_string(), sig)
        );
    }
    if let Some(g) = &r.shifted_ground {
        let _ = writeln!(s, "shifted to ground:");
        verdict_text(g, "  ", &mut s);
    }
    s
}

fn require_compatible(
    analysis: &FloatAnalysis,
) -> std::result::Result<(&SpectrumDecomposition, &Spectrum), Failure> {
    match (&analysis.verdict, &analysis.spectrum) {
        (Verdict::Compatible(d), Some(s)) => Ok((d, s)),
        (Verdict::Incompatible(c), _) => Err(Failure::new(
            exit::INCOMPATIBLE,
            format!(
                "spectrum admits no clock period ({})",
                report::CertificateReport::from(c).reason
            ),
        )),
        _ => Err(Failure::internal("compatible verdict without spectrum")),
    }
}

fn cmd_clock(args: &ClockArgs, out: &mut dyn Write) -> CmdResult {
    let (file, inputs) = load(&args.spectrum)?;
    let n = file.n;
    if args.initial >= n {
        return Err(Failure::malformed(format!("--initial: {} is not below n = {n}", args.initial)));
    }
    let steps = args.steps.unwrap_or(2 * n);
    if steps == 0 {
        return Err(Failure::malformed("--steps: must be at least 1"));
    }
    let analysis = analyze(&inputs, DEFAULT_TOLERANCE, DEFAULT_MAX_DENOMINATOR)?;
    let (decomp, spec) = require_compatible(&analysis)?;
    let pair = SchwingerPair::new(n).map_err(Failure::internal)?;
    let basis = OperatorBasis::new(&pair);
    let trace = clock_run(&pair, &basis, decomp, spec, args.initial, steps).map_err(Failure::internal)?;
    let report = ClockReport::new(file, decomp, &trace);
    let text = match args.format {
        TableFormat::Json => to_json(&report)?,
        TableFormat::Csv => clock_csv(&report)?,
    };
    emit(out, &text)?;
    Ok(exit::OK)
}

fn csv_string(rows: Vec<Vec<String>>) -> std::result::Result<String, Failure> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).map_err(Failure::internal)?;
    }
    let bytes = w.into_inner().map_err(Failure::internal)?;
    String::from_utf8(bytes).map_err(Failure::internal)
}

fn clock_csv(r: &ClockReport) -> std::result::Result<String, Failure> {
    let mut rows = vec![[
        "j",
        "time",
        "occupied_index",
        "occupied_probability",
        "max_offsite",
        "direction_sign",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()];
    for s in &r.steps {
        rows.push(vec![
            s.j.to_string(),
            sig(s.time),
            s.occupied_index.to_string(),
            sig(s.occupied_probability),
            sig(s.max_offsite),
            r.direction_sign.to_string(),
        ]);
    }
    csv_string(rows)
}

enum StateSpec {
    V(usize),
    U(usize),
    Mixed,
}

fn parse_state(s: &str, n: usize) -> std::result::Result<StateSpec, Failure> {
    let bad = || Failure::malformed(format!("--state: expected v:INT, u:INT or mixed, got {s:?}"));
    if s == "mixed" {
        return Ok(StateSpec::Mixed);
    }
    let (kind, idx) = s.split_once(':').ok_or_else(bad)?;
    let idx: usize = idx.parse().map_err(|_| bad())?;
    if idx >= n {
        return Err(Failure::malformed(format!("--state: index {idx} is not below n = {n}")));
    }
    match kind {
        "v" => Ok(StateSpec::V(idx)),
        "u" => Ok(StateSpec::U(idx)),
        _ => Err(bad()),
    }
}

fn cmd_wigner(args: &WignerArgs, out: &mut dyn Write) -> CmdResult {
    let (file, inputs) = load(&args.spectrum)?;
    let n = file.n;
    let state = parse_state(&args.state, n)?;
    let analysis = analyze(&inputs, DEFAULT_TOLERANCE, DEFAULT_MAX_DENOMINATOR)?;
    let time = match args.step {
        Some(step) => step as f64 * require_compatible(&analysis)?.0.delta_tau(),
        None => args.time.unwrap_or(0.0),
    };
    if !time.is_finite() {
        return Err(Failure::malformed("--time: must be finite"));
    }
    let h = match &analysis.spectrum {
        Some(spec) => spec.hamiltonian(),
        None => ComplexMatrix::from_real_diagonal(&inputs.iter().map(EnergyInput::approx).collect::<Vec<_>>()),
    };
    let pair = SchwingerPair::new(n).map_err(Failure::internal)?;
    let basis = OperatorBasis::new(&pair);
    let rho = match state {
        StateSpec::V(i) => DensityMatrix::pure(&pair.v_eigenvector(i).map_err(Failure::internal)?),
        StateSpec::U(i) => DensityMatrix::pure(&ComplexVector::basis(n, i)),
        StateSpec::Mixed => Ok(DensityMatrix::maximally_mixed(n)),
    }
    .map_err(Failure::internal)?;
    let evolved = evolve_density(&rho, &h, time).map_err(Failure::internal)?;
    let grid = basis.wigner_of_density(evolved.matrix()).map_err(Failure::internal)?;
    let real = grid.max_imag() < REALITY_TOL;

    let report = GridReport {
        tool_version: TOOL_VERSION.into(),
        input: file,
        n,
        state: args.state.clone(),
        time,
        step: args.step,
        values: grid.real_rows(),
        imag: (!real).then(|| imag_rows(&grid)),
    };
    let text = match args.format {
        TableFormat::Json => to_json(&report)?,
        TableFormat::Csv => grid_csv(&grid, real)?,
    };
    emit(out, &text)?;
    if real {
        Ok(exit::OK)
    } else {
        Err(Failure::new(
            exit::INTERNAL,
            format!("grid imaginary part {:e} exceeds {REALITY_TOL:e}", grid.max_imag()),
        ))
    }
}

fn imag_rows(grid: &WignerGrid) -> Vec<Vec<f64>> {
    let n = grid.dim();
    (0..n)
        .map(|m| (0..n).map(|c| grid.get(m, c).im).collect())
        .collect()
}

fn complex_cell(z: C64) -> String {
    let sign = if z.im < 0.0 { "-" } else { "+" };
    format!("{}{}{}i", sig(z.re), sign, sig(z.im.abs()))
}

fn grid_csv(grid: &WignerGrid, real: bool) -> std::result::Result<String, Failure> {
    let n = grid.dim();
    let mut header = vec!["m\\n".to_string()];
    header.extend((0..n).map(|c| c.to_string()));
    let mut rows = vec![header];
    for m in 0..n {
        let mut row = vec![m.to_string()];
        row.extend((0..n).map(|c| {
            let z = grid.get(m, c);
            if real {
                sig(z.re)
            } else {
                complex_cell(z)
            }
        }));
        rows.push(row);
    }
    csv_string(rows)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    if !is_odd_prime(args.n) {
        return Err(Failure::new(
            exit::BAD_DIMENSION,
            format!("--n: {} is not an odd prime", args.n),
        ));
    }
    if args.n > MAX_SUITE_DIM {
        return Err(Failure::new(
            exit::BAD_DIMENSION,
            format!("--n: {} exceeds the suite limit {MAX_SUITE_DIM}", args.n),
        ));
    }
    let report = run_suite(args.n, args.seed).map_err(Failure::internal)?;
    let text = match args.format {
        ReportFormat::Json => to_json(&report)?,
        ReportFormat::Text => suite_text(&report),
    };
    emit(out, &text)?;
    Ok(if report.passed() { exit::OK } else { exit::VERIFY_FAILED })
}

fn suite_text(r: &SuiteReport) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = writeln!(s, "verify n = {} seed = {}", r.n, r.seed);
    for c in &r.checks {
        let op = match c.bound {
            Bound::AtMost => "<=",
            Bound::Above => ">",
        };
        let _ = writeln!(
            s,
            "{} {} {} {} {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            sig(c.value),
            op,
            sig(c.threshold)
        );
    }
    let _ = writeln!(
        s,
        "signs: commutation {:+}, shift direction {:+}, weyl pair {:+}",
        r.conventions.commutation_sign, r.conventions.shift_direction_sign, r.conventions.weyl_pair_sign
    );
    for note in &r.notes {
        let _ = writeln!(s, "note: {note}");
    }
    let failed = r.checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(s, "{} of {} checks passed", r.checks.len() - failed, r.checks.len());
    s
}
