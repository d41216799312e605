//! `triprod`: run catalog identities, evaluate P_b and list zeros of
//! e^{i√3z} + 2cosh z.
//!
//! Exit status: 0 when every executed verification passes, 1 on a failed
//! verification, 2 on malformed arguments.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use triprod_core::catalog::{self, default_quad_config, grid_with, run_selected, verify_with_tol};
use triprod_core::product::{product_gamma_form, ProductParams};
use triprod_core::report::{from_json, to_json, to_table, IdentityReport, Summary};
use triprod_core::{find_roots_upper, Complex64, ParamValue, Params, QuadConfig};

#[derive(Parser, Debug)]
#[command(name = "triprod", version, about = "Numerical checks of identities for the triple-Gamma product")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify one identity over its default grid or at the given parameters.
    Verify(VerifyArgs),
    /// Verify every identity (optionally filtered by id or group).
    VerifyAll(VerifyAllArgs),
    /// Evaluate P_b(x + iy).
    EvalProduct(EvalArgs),
    /// Zeros of e^{i√3z} + 2cosh z in the upper half plane.
    Roots(RootsArgs),
    /// Re-render a saved machine-format report.
    Report(ReportArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Machine,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the output here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Pass threshold; defaults to each entry's own tolerance. Also tightens
    /// quadrature to min(1e-12, tol/100).
    #[arg(long, value_parser = finite)]
    tol: Option<f64>,
    /// Zero the timing field so repeated runs give identical output.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    id: String,
    #[arg(long, value_parser = finite)]
    b: Option<f64>,
    #[arg(long, value_parser = finite)]
    x: Option<f64>,
    #[arg(long, value_parser = finite)]
    alpha: Option<f64>,
    /// Real part of the parameter a.
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Imaginary part of the parameter a.
    #[arg(long, value_parser = finite, allow_negative_numbers = true, requires = "a")]
    a_im: Option<f64>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Debug)]
struct VerifyAllArgs {
    /// Identity id or group name; empty runs everything.
    #[arg(long, default_value = "")]
    filter: String,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, value_parser = finite)]
    b: f64,
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    x: f64,
    #[arg(long, value_parser = finite, allow_negative_numbers = true, default_value_t = 0.0)]
    y: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct RootsArgs {
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..=200))]
    count: u32,
    /// Residual target for Newton.
    #[arg(long, value_parser = finite, default_value_t = 1e-13)]
    tol: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Machine-format report produced by `verify` or `verify-all`.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    out: OutputArgs,
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

/// Failure modes mapped onto exit statuses.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl Failure {
    fn exit(self) -> ExitCode {
        match self {
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            Failure::Runtime(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
        }
    }
}

type Outcome = Result<bool, Failure>;

fn emit(out: &OutputArgs, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Runtime(format!("writing output: {e}")))
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Runtime(format!("writing {}: {e}", path.display())))
}

fn quad_config(tol: Option<f64>) -> QuadConfig {
    match tol {
        Some(t) => {
            let q = (t * 1e-2).min(1e-12);
            QuadConfig::default().with_tol(q, q)
        }
        None => default_quad_config(),
    }
}

fn render(reports: &mut [IdentityReport], run: &RunArgs) -> Outcome {
    if run.no_timing {
        reports.iter_mut().for_each(|r| r.wall_time_ms = 0.0);
    }
    let summary = Summary::of(reports);
    let text = match run.out.format {
        Format::Table => to_table(reports),
        Format::Machine => to_json(reports) + "\n",
    };
    emit(&run.out, &text)?;
    if run.out.output.is_some() || run.out.format == Format::Machine {
        eprintln!("{} passed, {} failed, {} total", summary.passed, summary.failed, summary.total);
    }
    Ok(summary.all_pass())
}

fn check_tol(tol: Option<f64>) -> Result<(), Failure> {
    match tol {
        Some(t) if t <= 0.0 => Err(Failure::Usage(format!("--tol must be positive, got {t}"))),
        _ => Ok(()),
    }
}

fn verify(args: VerifyArgs) -> Outcome {
    check_tol(args.run.tol)?;
    if catalog::lookup(&args.id).is_err() {
        return Err(Failure::Usage(format!(
            "unknown identity `{}`; known ids: {}",
            args.id,
            catalog::CATALOG_IDS.join(", ")
        )));
    }
    let mut overrides = Params::new();
    for (name, value) in [("b", args.b), ("x", args.x), ("alpha", args.alpha)] {
        if let Some(v) = value {
            overrides.insert(name.into(), v.into());
        }
    }
    if let Some(re) = args.a {
        let a = Complex64::new(re, args.a_im.unwrap_or(0.0));
        overrides.insert("a".into(), ParamValue::from(a));
    }
    let points = grid_with(&args.id, &overrides).map_err(|e| Failure::Usage(e.to_string()))?;
    let cfg = quad_config(args.run.tol);
    let default_tol = catalog::lookup(&args.id).map(|c| c.tol).unwrap_or(1e-8);
    let mut reports = points
        .iter()
        .map(|p| verify_with_tol(&args.id, p, &cfg, args.run.tol.unwrap_or(default_tol)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    render(&mut reports, &args.run)
}

fn verify_all(args: VerifyAllArgs) -> Outcome {
    check_tol(args.run.tol)?;
    let mut reports = run_selected(&quad_config(args.run.tol), &args.filter, args.run.tol);
    if reports.is_empty() {
        return Err(Failure::Usage(format!("filter `{}` matches no identity", args.filter)));
    }
    render(&mut reports, &args.run)
}

fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn eval_product(args: EvalArgs) -> Outcome {
    let params = ProductParams::new(args.b).map_err(|e| Failure::Usage(e.to_string()))?;
    let z = Complex64::new(args.x, args.y);
    let value = product_gamma_form(params, z).map_err(|e| Failure::Runtime(e.to_string()))?;
    let text = match args.out.format {
        Format::Table => format_complex(value) + "\n",
        Format::Machine => format!(
            "{{\"b\": {}, \"z\": {{\"re\": {}, \"im\": {}}}, \"value\": {{\"re\": {}, \"im\": {}}}}}\n",
            args.b, z.re, z.im, value.re, value.im
        ),
    };
    emit(&args.out, &text)?;
    Ok(true)
}

fn roots(args: RootsArgs) -> Outcome {
    if !(args.tol > 0.0) {
        return Err(Failure::Usage(format!("--tol must be positive, got {}", args.tol)));
    }
    let records = find_roots_upper(args.count as usize, args.tol).map_err(|e| Failure::Runtime(e.to_string()))?;
    let text = match args.out.format {
        Format::Table => {
            let mut s = format!("{:>5}  {:>22}  {:>22}  {:>9}  {:>5}\n", "n", "Re", "Im", "residual", "iter");
            for r in &records {
                s += &format!(
                    "{:>5}  {:>22.15e}  {:>22.15}  {:>9.2e}  {:>5}\n",
                    r.index, r.root.re, r.root.im, r.residual, r.iterations
                );
            }
            s
        }
        Format::Machine => {
            let mut s = serde_json::to_string_pretty(&records).map_err(|e| Failure::Runtime(e.to_string()))?;
            s.push('\n');
            s
        }
    };
    emit(&args.out, &text)?;
    Ok(true)
}

fn report(args: ReportArgs) -> Outcome {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| Failure::Usage(format!("reading {}: {e}", args.input.display())))?;
    let reports = from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", args.input.display())))?;
    let rendered = match args.out.format {
        Format::Table => to_table(&reports),
        Format::Machine => to_json(&reports) + "\n",
    };
    emit(&args.out, &rendered)?;
    Ok(Summary::of(&reports).all_pass())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(a) => verify(a),
        Command::VerifyAll(a) => verify_all(a),
        Command::EvalProduct(a) => eval_product(a),
        Command::Roots(a) => roots(a),
        Command::Report(a) => report(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => f.exit(),
    }
}
