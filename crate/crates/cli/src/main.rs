mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, ColorChoice, CommandFactory, FromArgMatches, Parser, Subcommand};
use dirac_core::clifford::{run_verification, LieBasis, VerifyOptions};
use dirac_core::inflation::{slow_roll_params, sweep, SlowRollConfig, SlowRollPoint};
use dirac_core::rep_theory::Weight;
use dirac_core::spectral_action::{
    plateau_expansion, potential_v, potential_w, product_trace_asymptotic, product_trace_asymptotic_printed,
    product_trace_direct, rel_diff, shifted_trace_asymptotic, shifted_trace_direct, trace_asymptotic_su2,
    trace_direct_su2, ActionResult, ProductGeometry, DEFAULT_TAIL_EPS,
};
use dirac_core::spectrum::{su2_spectrum, su3_tt_lines, Provenance, SpectrumQuery};
use dirac_core::test_function::TestFunction;
use serde_json::json;

use output::{Cell, Format, Table};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

/// Spectra, spectral actions and slow-roll parameters of the one-parameter
/// family of Dirac operators D_t on SU(2) (t=0 trivial, 1/3 cubic,
/// 1/2 Levi-Civita).
#[derive(Parser, Debug)]
#[command(name = "dirac-spectra", version)]
struct Cli {
    /// Output format [default: csv for tables, json for single records]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to PATH instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form spectrum of D_t^2: columns n,eigenvalue,multiplicity
    Spectrum(SpectrumArgs),
    /// Run the Clifford-matrix oracle and algebraic identity checks
    Verify(VerifyArgs),
    /// SU(2) spectral action: direct sum against the asymptotic expansion
    Action(ActionArgs),
    /// Spectral action on S^3 x S^1: direct 2D sum against the expansion
    ProductAction(ProductArgs),
    /// Spectral action of D^2 + phi^2 on S^3 x S^1 (polyexp cutoffs)
    ShiftedAction(ShiftedArgs),
    /// Plateau-cutoff expansion: stated form, re-derived form and direct sum
    Plateau(PlateauArgs),
    /// Tabulate curlyV, curlyW and the slow-roll potential with derivatives
    Potential(PotentialArgs),
    /// Tabulate slow-roll parameters epsilon and eta
    Slowroll(SlowrollArgs),
}

#[derive(Args, Debug, Clone, Copy)]
struct TArg {
    /// Connection parameter in [0, 1]: a decimal or one of levi-civita (1/2),
    /// cubic (1/3), trivial (0)
    #[arg(long, default_value = "levi-civita", value_parser = parse_t, allow_hyphen_values = true)]
    t: f64,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[command(flatten)]
    t: TArg,
    /// Largest index n; the default window is n in [-(nmax+2), nmax], which
    /// covers the Peter-Weyl blocks m <= nmax
    #[arg(long, default_value_t = 10, conflicts_with = "emax", allow_hyphen_values = true)]
    nmax: i64,
    /// Smallest index n [default: -(nmax+2)]
    #[arg(long, allow_hyphen_values = true, conflicts_with = "emax")]
    nmin: Option<i64>,
    /// List all lines with eigenvalue <= EMAX instead of an index window
    #[arg(long, value_parser = parse_positive, allow_hyphen_values = true)]
    emax: Option<f64>,
    /// SU(3) highest weight p,q: list T_t eigenvalues on V_rho (x) V_(p,q)
    /// (columns sign,gamma,eigenvalue,multiplicity)
    #[arg(long, value_parser = parse_weight, conflicts_with_all = ["emax", "nmin"])]
    weight: Option<Weight>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Largest block index m checked against the closed form
    #[arg(long, default_value_t = 12)]
    mmax: u32,
    /// t values to check (comma separated or repeated) [default: 0,1/4,1/3,1/2,2/3,1]
    #[arg(long, value_parser = parse_t, value_delimiter = ',', allow_hyphen_values = true)]
    t: Vec<f64>,
    /// Negative control: add DELTA to the structure constant f_123
    #[arg(long, hide = true, value_name = "DELTA", allow_hyphen_values = true)]
    corrupt_structure_constant: Option<f64>,
}

#[derive(Args, Debug)]
struct ActionArgs {
    #[command(flatten)]
    t: TArg,
    /// Cutoff scale Lambda
    #[arg(long, default_value_t = 10.0, value_parser = parse_positive, allow_hyphen_values = true)]
    lambda: f64,
    /// Test function: gaussian, polyexp:c0[,c1,...] or plateau:c,w
    #[arg(long, default_value = "gaussian", value_parser = parse_function)]
    f: TestFunction,
    /// Absolute truncation target for the direct sum
    #[arg(long, default_value_t = DEFAULT_TAIL_EPS, value_parser = parse_positive, allow_hyphen_values = true)]
    tail_eps: f64,
}

#[derive(Args, Debug, Clone, Copy)]
struct GeometryArgs {
    #[command(flatten)]
    t: TArg,
    /// Cutoff scale Lambda
    #[arg(long, default_value_t = 5.0, value_parser = parse_positive, allow_hyphen_values = true)]
    lambda: f64,
    /// Radius a of S^3
    #[arg(long, default_value_t = 1.0, value_parser = parse_positive, allow_hyphen_values = true)]
    a: f64,
    /// Radius beta of S^1
    #[arg(long, default_value_t = 1.0, value_parser = parse_positive, allow_hyphen_values = true)]
    beta: f64,
    /// Shorthand for --lambda L --a 1
    #[arg(long, value_parser = parse_positive, conflicts_with_all = ["lambda", "a"], value_name = "L", allow_hyphen_values = true)]
    lambda_a: Option<f64>,
}

impl GeometryArgs {
    fn lambda_and_a(&self) -> (f64, f64) {
        match self.lambda_a {
            Some(l) => (l, 1.0),
            None => (self.lambda, self.a),
        }
    }

    fn product(&self, s: f64) -> dirac_core::Result<ProductGeometry> {
        let (lambda, a) = self.lambda_and_a();
        ProductGeometry::new(a, self.beta, s, self.t.t, lambda)
    }
}

#[derive(Args, Debug)]
struct ProductArgs {
    #[command(flatten)]
    geom: GeometryArgs,
    /// Line-bundle parameter s (taken mod 1)
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    s: f64,
    /// Test function: gaussian, polyexp:c0[,c1,...] or plateau:c,w
    #[arg(long, default_value = "gaussian", value_parser = parse_function)]
    h: TestFunction,
    #[arg(long, default_value_t = DEFAULT_TAIL_EPS, value_parser = parse_positive, allow_hyphen_values = true)]
    tail_eps: f64,
}

#[derive(Args, Debug)]
struct ShiftedArgs {
    #[command(flatten)]
    geom: GeometryArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    s: f64,
    /// Test function h(x) = P(pi x) e^(-pi x): polyexp:c0[,c1,...]
    #[arg(long, default_value = "polyexp:1", value_parser = parse_function)]
    h: TestFunction,
    /// Field value phi
    #[arg(long, default_value_t = 0.0, value_parser = parse_non_negative, conflicts_with = "x", allow_hyphen_values = true)]
    phi: f64,
    /// Shift x = phi^2 / Lambda^2 (alternative to --phi)
    #[arg(long, value_parser = parse_non_negative, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_TAIL_EPS, value_parser = parse_positive, allow_hyphen_values = true)]
    tail_eps: f64,
}

#[derive(Args, Debug)]
struct PlateauArgs {
    #[command(flatten)]
    geom: GeometryArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    s: f64,
    /// Plateau length: h is constant on [0, c]
    #[arg(long, default_value_t = 1.0, value_parser = parse_positive, allow_hyphen_values = true)]
    c: f64,
    /// Width of the smooth decay on [c, c+w]
    #[arg(long, default_value_t = 0.5, value_parser = parse_positive, allow_hyphen_values = true)]
    w: f64,
    /// Field value phi; requires phi^2/Lambda^2 <= c
    #[arg(long, default_value_t = 0.0, value_parser = parse_non_negative, conflicts_with = "x", allow_hyphen_values = true)]
    phi: f64,
    /// Shift x = phi^2 / Lambda^2 (alternative to --phi)
    #[arg(long, value_parser = parse_non_negative, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_TAIL_EPS, value_parser = parse_positive, allow_hyphen_values = true)]
    tail_eps: f64,
}

#[derive(Args, Debug)]
struct PotentialArgs {
    #[command(flatten)]
    geom: GeometryArgs,
    /// Test function h(x) = P(pi x) e^(-pi x): polyexp:c0[,c1,...]
    #[arg(long, default_value = "polyexp:1", value_parser = parse_function)]
    h: TestFunction,
    /// Grid of x = phi^2/Lambda^2: start:stop:step or a comma list
    #[arg(long, default_value = "0:2:0.25", value_parser = parse_grid, allow_hyphen_values = true)]
    x: Grid,
}

#[derive(Args, Debug)]
struct SlowrollArgs {
    #[command(flatten)]
    geom: GeometryArgs,
    /// Test function h(x) = P(pi x) e^(-pi x): polyexp:c0[,c1,...]
    #[arg(long, default_value = "polyexp:1", value_parser = parse_function)]
    h: TestFunction,
    /// Grid of x = phi^2/Lambda^2: start:stop:step or a comma list
    #[arg(long, default_value = "0.25:2:0.25", value_parser = parse_grid, allow_hyphen_values = true)]
    x: Grid,
    /// Planck mass
    #[arg(long, default_value_t = 1.0, value_parser = parse_positive, allow_hyphen_values = true)]
    m_pl: f64,
    /// Sweep over these t values as well (adds a leading t column)
    #[arg(long, value_parser = parse_t, value_delimiter = ',', allow_hyphen_values = true)]
    ts: Vec<f64>,
}

#[derive(Debug, Clone)]
struct Grid(Vec<f64>);

fn parse_t(s: &str) -> Result<f64, String> {
    let t = match s.trim().to_ascii_lowercase().as_str() {
        "levi-civita" => 0.5,
        "cubic" => 1.0 / 3.0,
        "trivial" => 0.0,
        other => other
            .parse::<f64>()
            .map_err(|_| format!("`{s}` is not a number or one of levi-civita, cubic, trivial"))?,
    };
    if (0.0..=1.0).contains(&t) {
        Ok(t)
    } else {
        Err(format!("t must lie in [0, 1], got {s}"))
    }
}

fn parse_number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v = parse_number(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be positive, got {s}"))
    }
}

fn parse_non_negative(s: &str) -> Result<f64, String> {
    let v = parse_number(s)?;
    if v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("must be non-negative, got {s}"))
    }
}

fn parse_function(s: &str) -> Result<TestFunction, String> {
    s.parse::<TestFunction>().map_err(|e| e.to_string())
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [p, q] => {
            let p = p
                .parse::<u32>()
                .map_err(|_| format!("`{p}` is not a non-negative integer"))?;
            let q = q
                .parse::<u32>()
                .map_err(|_| format!("`{q}` is not a non-negative integer"))?;
            Ok(Weight::su3(p, q))
        }
        _ => Err(format!("expected p,q, got `{s}`")),
    }
}

const MAX_GRID: usize = 1_000_000;

fn parse_grid(s: &str) -> Result<Grid, String> {
    let values = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, step] = parts.as_slice() else {
            return Err(format!("expected start:stop:step, got `{s}`"));
        };
        let (start, stop, step) = (parse_non_negative(start)?, parse_number(stop)?, parse_positive(step)?);
        if stop < start {
            return Err(format!("stop {stop} is below start {start}"));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        if count > MAX_GRID {
            return Err(format!("grid has {count} points, limit is {MAX_GRID}"));
        }
        (0..count).map(|i| start + i as f64 * step).collect()
    } else {
        s.split(',')
            .map(parse_non_negative)
            .collect::<Result<Vec<f64>, String>>()?
    };
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err("grid must be strictly increasing".into());
    }
    Ok(Grid(values))
}

enum Failure {
    Verification(String),
    Core(dirac_core::Error),
    Io(String),
}

impl From<dirac_core::Error> for Failure {
    fn from(e: dirac_core::Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(Table, Format), Failure>;

fn cmd_spectrum(args: &SpectrumArgs, format: Option<Format>) -> Outcome {
    let t = args.t.t;
    let fmt = format.unwrap_or(Format::Csv);
    if let Some(weight) = args.weight {
        let mut table = Table::new(&["sign", "gamma", "eigenvalue", "multiplicity"]);
        for line in su3_tt_lines(t, weight)? {
            if let Provenance::Su3 { gamma, sign, .. } = line.provenance {
                table.push(vec![
                    sign.as_char().to_string().into(),
                    gamma.to_string().into(),
                    line.eigenvalue.into(),
                    line.multiplicity.into(),
                ]);
            }
        }
        return Ok((table, fmt));
    }
    let query = match args.emax {
        Some(e) => SpectrumQuery::cutoff(e)?,
        None => SpectrumQuery::window(args.nmin.unwrap_or(-args.nmax - 2), args.nmax)?,
    };
    let mut table = Table::new(&["n", "eigenvalue", "multiplicity"]);
    for line in su2_spectrum(t, query)? {
        table.push(vec![
            line.index().expect("SU(2) line").into(),
            line.eigenvalue.into(),
            line.multiplicity.into(),
        ]);
    }
    Ok((table, fmt))
}

fn cmd_verify(args: &VerifyArgs, format: Option<Format>) -> Outcome {
    let mut opts = VerifyOptions {
        m_max: args.mmax,
        ..VerifyOptions::default()
    };
    if !args.t.is_empty() {
        opts.ts = args.t.clone();
    }
    if let Some(delta) = args.corrupt_structure_constant {
        opts.basis = LieBasis::su2().with_perturbed_constant(0, 1, 2, delta);
    }
    let report = run_verification(&opts)?;
    let mut table = Table::new(&["check", "residual", "threshold", "status"]);
    for c in &report.checks {
        table.push(vec![
            c.name.clone().into(),
            c.residual.into(),
            c.threshold.into(),
            if c.passed { "pass" } else { "fail" }.into(),
        ]);
    }
    let fmt = format.unwrap_or(Format::Csv);
    if report.all_passed() {
        Ok((table, fmt))
    } else {
        let failed: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
        emit(&table, fmt, None).ok();
        Err(Failure::Verification(failed.join("; ")))
    }
}

const COMPARISON: [&str; 6] = [
    "direct",
    "asymptotic",
    "abs_diff",
    "rel_diff",
    "tail_bound",
    "term_count",
];

fn comparison_row(direct: &ActionResult, asymptotic: f64) -> Vec<Cell> {
    vec![
        direct.value.into(),
        asymptotic.into(),
        (direct.value - asymptotic).abs().into(),
        rel_diff(direct.value, asymptotic).into(),
        direct.tail_bound.into(),
        direct.term_count.into(),
    ]
}

fn cmd_action(args: &ActionArgs, format: Option<Format>) -> Outcome {
    let d = trace_direct_su2(args.t.t, args.lambda, &args.f, args.tail_eps)?;
    let a = trace_asymptotic_su2(args.t.t, args.lambda, &args.f)?;
    Ok((
        Table::record(&COMPARISON, comparison_row(&d, a.value)),
        format.unwrap_or(Format::Json),
    ))
}

fn cmd_product_action(args: &ProductArgs, format: Option<Format>) -> Outcome {
    let geom = args.geom.product(args.s)?;
    let d = product_trace_direct(&geom, &args.h, args.tail_eps)?;
    let a = product_trace_asymptotic(&geom, &args.h)?;
    let printed = product_trace_asymptotic_printed(&geom, &args.h)?;
    let mut columns = COMPARISON.to_vec();
    columns.extend(["asymptotic_printed", "printed_rel_diff"]);
    let mut row = comparison_row(&d, a.value);
    row.extend([printed.value.into(), rel_diff(d.value, printed.value).into()]);
    Ok((Table::record(&columns, row), format.unwrap_or(Format::Json)))
}

fn shift_phi(geom: &ProductGeometry, phi: f64, x: Option<f64>) -> f64 {
    x.map_or(phi, |x| geom.lambda * x.sqrt())
}

fn cmd_shifted_action(args: &ShiftedArgs, format: Option<Format>) -> Outcome {
    let geom = args.geom.product(args.s)?;
    let phi = shift_phi(&geom, args.phi, args.x);
    let a = shifted_trace_asymptotic(&geom, &args.h, phi)?;
    let d = shifted_trace_direct(&geom, &args.h, phi, args.tail_eps)?;
    let mut columns = vec!["phi", "x"];
    columns.extend(COMPARISON);
    let mut row: Vec<Cell> = vec![phi.into(), geom.shift_of(phi).into()];
    row.extend(comparison_row(&d, a.value));
    Ok((Table::record(&columns, row), format.unwrap_or(Format::Json)))
}

fn cmd_plateau(args: &PlateauArgs, format: Option<Format>) -> Outcome {
    let geom = args.geom.product(args.s)?;
    let h = TestFunction::plateau(args.c, args.w)?;
    let phi = shift_phi(&geom, args.phi, args.x);
    let p = plateau_expansion(&geom, &h, phi, args.tail_eps)?;
    let mut table = Table::record(
        &[
            "phi",
            "x",
            "direct",
            "rederived",
            "verbatim",
            "rederived_rel_diff",
            "verbatim_rel_diff",
            "tail_bound",
        ],
        vec![
            phi.into(),
            geom.shift_of(phi).into(),
            p.direct.value.into(),
            p.rederived.into(),
            p.verbatim.into(),
            p.rederived_rel_diff.into(),
            p.verbatim_rel_diff.into(),
            p.direct.tail_bound.into(),
        ],
    );
    let terms = |ts: &[dirac_core::spectral_action::Term]| {
        ts.iter()
            .map(|t| json!({ "term": t.name, "value": t.value }))
            .collect::<Vec<_>>()
    };
    table
        .extra
        .push(("rederived_terms".into(), json!(terms(&p.rederived_terms))));
    table
        .extra
        .push(("verbatim_terms".into(), json!(terms(&p.verbatim_terms))));
    Ok((table, format.unwrap_or(Format::Json)))
}

fn slow_roll_config(geom: &GeometryArgs, h: &TestFunction, m_pl: f64) -> dirac_core::Result<SlowRollConfig> {
    let (lambda, a) = geom.lambda_and_a();
    SlowRollConfig::new(geom.t.t, lambda, a, geom.beta, h.clone())?.with_m_pl(m_pl)
}

fn cmd_potential(args: &PotentialArgs, format: Option<Format>) -> Outcome {
    let cfg = slow_roll_config(&args.geom, &args.h, 1.0)?.with_grid(args.x.0.clone())?;
    let mut table = Table::new(&["x", "curlyV", "curlyW", "V", "Vp", "Vpp"]);
    for p in sweep(&cfg)? {
        table.push(vec![
            p.x.into(),
            potential_v(&cfg.h, p.x)?.into(),
            potential_w(&cfg.h, p.x)?.into(),
            p.v.into(),
            p.vp.into(),
            p.vpp.into(),
        ]);
    }
    Ok((table, format.unwrap_or(Format::Csv)))
}

const SLOW_ROLL_COLUMNS: [&str; 10] = [
    "x",
    "V",
    "Vp",
    "Vpp",
    "A",
    "B",
    "epsilon",
    "eta",
    "status",
    "eta_conventional",
];

fn slow_roll_row(p: &SlowRollPoint) -> Vec<Cell> {
    vec![
        p.x.into(),
        p.v.into(),
        p.vp.into(),
        p.vpp.into(),
        p.a.into(),
        p.b.into(),
        p.epsilon.into(),
        p.eta.into(),
        p.status.as_str().into(),
        p.eta_conventional.into(),
    ]
}

fn cmd_slowroll(args: &SlowrollArgs, format: Option<Format>) -> Outcome {
    let cfg = slow_roll_config(&args.geom, &args.h, args.m_pl)?.with_grid(args.x.0.clone())?;
    let fmt = format.unwrap_or(Format::Csv);
    if args.ts.is_empty() {
        let mut table = Table::new(&SLOW_ROLL_COLUMNS);
        for p in sweep(&cfg)? {
            table.push(slow_roll_row(&p));
        }
        return Ok((table, fmt));
    }
    let mut columns = vec!["t"];
    columns.extend(SLOW_ROLL_COLUMNS);
    let mut table = Table::new(&columns);
    for &t in &args.ts {
        let c = SlowRollConfig { t, ..cfg.clone() };
        for &x in &c.x_grid {
            let mut row: Vec<Cell> = vec![t.into()];
            row.extend(slow_roll_row(&slow_roll_params(&c, x)?));
            table.push(row);
        }
    }
    Ok((table, fmt))
}

fn emit(table: &Table, format: Format, out: Option<&PathBuf>) -> Result<(), Failure> {
    let text = table.render(format);
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Io(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let mut cmd = Cli::command();
    if std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty()) {
        cmd = cmd.color(ColorChoice::Never);
    }
    let cli = match cmd.try_get_matches().and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };

    let result = match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a, cli.format),
        Command::Verify(a) => cmd_verify(a, cli.format),
        Command::Action(a) => cmd_action(a, cli.format),
        Command::ProductAction(a) => cmd_product_action(a, cli.format),
        Command::ShiftedAction(a) => cmd_shifted_action(a, cli.format),
        Command::Plateau(a) => cmd_plateau(a, cli.format),
        Command::Potential(a) => cmd_potential(a, cli.format),
        Command::Slowroll(a) => cmd_slowroll(a, cli.format),
    }
    .and_then(|(table, fmt)| emit(&table, fmt, cli.out.as_ref()));

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(names)) => {
            eprintln!("verification failed: {names}");
            ExitCode::from(EXIT_VERIFY_FAILED)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn t_aliases() {
        assert_eq!(parse_t("cubic").unwrap(), 1.0 / 3.0);
        assert_eq!(parse_t("Levi-Civita").unwrap(), 0.5);
        assert_eq!(parse_t("trivial").unwrap(), 0.0);
        assert_eq!(parse_t("0.25").unwrap(), 0.25);
        assert!(parse_t("-1").is_err());
        assert!(parse_t("1.5").is_err());
        assert!(parse_t("abc").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0.5:2.0:0.5").unwrap().0, vec![0.5, 1.0, 1.5, 2.0]);
        assert_eq!(parse_grid("0:1:0.1").unwrap().0.len(), 11);
        assert_eq!(parse_grid("1,2,5").unwrap().0, vec![1.0, 2.0, 5.0]);
        assert!(parse_grid("2,1").is_err());
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("-1,2").is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(parse_weight("1,2").unwrap(), Weight::su3(1, 2));
        assert!(parse_weight("1").is_err());
        assert!(parse_weight("-1,0").is_err());
    }
}
