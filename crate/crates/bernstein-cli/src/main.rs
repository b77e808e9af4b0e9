//! Command-line front end: closed-form constants, single best-approximation
//! errors, convergence tables, the type-equation root, the sup-norm decay
//! bound suite, and the interval-scaling identity check.
//!
//! Exit codes: 0 success, 1 numerical non-convergence (the report is still
//! emitted with its convergence flags), 2 usage or domain errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bernstein::asymptotics::{
    decay_bound_check, grid_for, needs_discretized_sup, scaled_error_table,
    scaling_identity_check, BandLimited, DecayBoundParams, SolverOptions,
};
use bernstein::best_approx::{ApproxProblem, SymmetryHint};
use bernstein::constants::{bernstein_l1, bernstein_l2, bernstein_linf_log, mu_constant};
use bernstein::functions::{FunctionSpec, Variant};
use bernstein::numerics::{PNorm, QuadratureGrid};
use bernstein::Error;

#[derive(Parser)]
#[command(name = "bernstein", version, about = "Best polynomial approximation laboratory for |x|^(alpha+i*beta)")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Full,
    Cos,
    Sin,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Full => Variant::Full,
            VariantArg::Cos => Variant::CosPart,
            VariantArg::Sin => Variant::SinPart,
        }
    }
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Full => "full",
        Variant::CosPart => "cos",
        Variant::SinPart => "sin",
    }
}

/// Flags shared by every solver-backed subcommand.
#[derive(Args)]
struct GridArgs {
    /// Smallest panel edge of the origin-graded grid, relative to the
    /// interval scale.
    #[arg(long, default_value_t = QuadratureGrid::DEFAULT_ORIGIN_FLOOR)]
    grid_floor: f64,

    /// Gauss-Legendre nodes per panel.
    #[arg(long, default_value_t = QuadratureGrid::DEFAULT_NODES_PER_PANEL)]
    nodes_per_panel: usize,

    /// Run table rows sequentially instead of in parallel.
    #[arg(long)]
    sequential: bool,
}

impl GridArgs {
    fn options(&self) -> SolverOptions {
        SolverOptions {
            nodes_per_panel: self.nodes_per_panel,
            origin_floor: self.grid_floor,
            parallel: !self.sequential,
        }
    }
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long)]
    alpha: f64,

    #[arg(long, default_value_t = 0.0)]
    beta: f64,

    #[arg(long, value_enum, default_value_t = VariantArg::Full)]
    variant: VariantArg,
}

impl SpecArgs {
    fn spec(&self) -> Result<FunctionSpec, Error> {
        FunctionSpec::new(self.alpha, self.beta, self.variant.into())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form limit constants: p = 1 (beta = 0), p = 2, or p = inf
    /// (alpha = 0, the oscillatory log family).
    Constant {
        /// 1, 2, or inf.
        #[arg(long)]
        p: PNorm,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        /// Exponential type parameter for the p = inf constant.
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
    },

    /// Best approximation error E_n(f, L_p[-1, 1]) for one degree.
    Error {
        #[command(flatten)]
        spec: SpecArgs,
        /// 1, 2, inf, or any real >= 1.
        #[arg(long)]
        p: PNorm,
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        grid: GridArgs,
    },

    /// Scaled-error convergence table n^(alpha+1/p) E_n with extrapolated
    /// limit and closed-form reference when one exists.
    Converge {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        p: PNorm,
        /// Comma-separated degree list; defaults to 8,16,32,64 (finite p)
        /// or 8,16,32 (p = inf).
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        #[command(flatten)]
        grid: GridArgs,
    },

    /// The positive root of sqrt(x^2+1)/x = log(sqrt(x^2+1)+x) on [1, 2].
    Mu {
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },

    /// Checks E_n(cos(sigma x), sup on [-n tau/sigma, n tau/sigma]) against
    /// the explicit exponential decay bound.
    BoundCheck {
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// Center-offset constant of the bound.
        #[arg(long, default_value_t = 0.0)]
        c: f64,
        /// Comma-separated degree list; defaults to 4..=20.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
        #[command(flatten)]
        grid: GridArgs,
    },

    /// Checks the interval-scaling identity
    /// E_n(f, L_p[-1,1]) = eta^(1/p) E_n(f(eta .), L_p[-1/eta, 1/eta]).
    ScalingCheck {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        p: PNorm,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        eta: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            let code = match e {
                Error::Stalled { .. } => 1u8,
                _ => 2u8,
            };
            if cli.format == Format::Json {
                println!("{{\"error\":{}}}", serde_json::json!(e.to_string()));
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Constant {
            p,
            alpha,
            beta,
            sigma,
        } => {
            echo(&format!(
                "constant --p {} --alpha {alpha} --beta {beta} --sigma {sigma}",
                p_text(*p)
            ));
            let constant = match p {
                PNorm::Finite(q) if *q == 1.0 => {
                    if *beta != 0.0 {
                        return Err(Error::Domain(
                            "the p = 1 constant is only available for beta = 0".into(),
                        ));
                    }
                    bernstein_l1(*alpha)?
                }
                PNorm::Finite(q) if *q == 2.0 => bernstein_l2(*alpha, *beta)?,
                PNorm::Infinity => bernstein_linf_log(*beta, *sigma)?,
                PNorm::Finite(q) => {
                    return Err(Error::Domain(format!(
                        "no closed-form constant for p = {q}; use 1, 2, or inf"
                    )));
                }
            };
            let value = constant.value;
            let json = serde_json::json!({
                "p": p,
                "alpha": constant.alpha,
                "beta": constant.beta,
                "value": value,
                "provenance": constant.provenance,
            });
            emit(cli, &json, || format!("{value:.16}\n"), None)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Error {
            spec,
            p,
            degree,
            grid,
        } => {
            let options = grid.options();
            echo(&format!(
                "error {} --p {} --degree {degree} {}",
                spec_text(spec),
                p_text(*p),
                grid_text(grid)
            ));
            let fspec = spec.spec()?;
            let interval = (-1.0, 1.0);
            let problem = ApproxProblem {
                target: &fspec,
                interval,
                degree: *degree,
                pnorm: *p,
                grid: grid_for(interval, &options)?,
                symmetry_hint: if fspec.is_even_symmetric() {
                    SymmetryHint::Even
                } else {
                    SymmetryHint::None
                },
                discretize_sup: needs_discretized_sup(&fspec),
            };
            let result = problem.solve()?;
            let json = serde_json::json!({
                "p": p,
                "n": degree,
                "interval": [interval.0, interval.1],
                "error": result.error,
                "converged": result.diagnostics.converged,
                "discretized": result.discretized,
                "polynomial": result.polynomial,
                "diagnostics": result.diagnostics,
            });
            emit(
                cli,
                &json,
                || {
                    format!(
                        "E_{degree} = {:.16}\nconverged: {}\ndiscretized: {}\n",
                        result.error, result.diagnostics.converged, result.discretized
                    )
                },
                None,
            )?;
            Ok(exit_by_convergence(result.diagnostics.converged))
        }

        Command::Converge {
            spec,
            p,
            degrees,
            grid,
        } => {
            let options = grid.options();
            let degrees = degrees.clone().unwrap_or_else(|| {
                if p.is_infinite() {
                    vec![8, 16, 32]
                } else {
                    vec![8, 16, 32, 64]
                }
            });
            echo(&format!(
                "converge {} --p {} --degrees {} {}",
                spec_text(spec),
                p_text(*p),
                degrees
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                grid_text(grid)
            ));
            let fspec = spec.spec()?;
            let report = scaled_error_table(&fspec, *p, &degrees, &options)?;
            let json = serde_json::to_value(&report).expect("report serializes");
            let csv = report.to_csv();
            let plain = || {
                let mut out = String::new();
                for row in &report.rows {
                    out.push_str(&format!(
                        "n = {:>4}  E_n = {:.10e}  scaled = {:.10}\n",
                        row.n, row.error, row.scaled
                    ));
                }
                if let Some(l) = &report.limit_estimate {
                    out.push_str(&format!("limit estimate: {:.10}\n", l.value));
                }
                if let Some(r) = &report.reference {
                    out.push_str(&format!("closed form:    {:.10}\n", r.value));
                }
                if let Some(g) = report.relative_gap {
                    out.push_str(&format!("relative gap:   {:.3e}\n", g));
                }
                out
            };
            emit(cli, &json, plain, Some(csv))?;
            let stable = report.limit_estimate.as_ref().is_none_or(|l| l.stable);
            Ok(exit_by_convergence(stable))
        }

        Command::Mu { tol } => {
            echo(&format!("mu --tol {tol}"));
            let value = mu_constant(*tol)?;
            let json = serde_json::json!({ "value": value, "tolerance": tol });
            emit(cli, &json, || format!("{value:.12}\n"), None)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::BoundCheck {
            tau,
            sigma,
            c,
            degrees,
            grid,
        } => {
            let options = grid.options();
            let degrees = degrees.clone().unwrap_or_else(|| (4..=20).collect());
            echo(&format!(
                "bound-check --tau {tau} --sigma {sigma} --c {c} --degrees {} {}",
                degrees
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                grid_text(grid)
            ));
            let params = DecayBoundParams::new(*sigma, *tau, *c)?;
            let rows =
                decay_bound_check(BandLimited::Cosine { sigma: *sigma }, &params, &degrees, &options)?;
            let all_pass = rows.iter().all(|r| r.pass);
            let json = serde_json::json!({
                "tau": tau,
                "sigma": sigma,
                "c": c,
                "c7": params.c7,
                "c8": params.c8,
                "rows": rows,
                "pass": all_pass,
            });
            let mut csv = String::from("n,interval_halfwidth,error,bound,margin,pass\n");
            for r in &rows {
                csv.push_str(&format!(
                    "{},{:.17e},{:.17e},{:.17e},{:.17e},{}\n",
                    r.n, r.interval_halfwidth, r.error, r.bound, r.margin, r.pass
                ));
            }
            let plain = || {
                let mut out = String::new();
                for r in &rows {
                    out.push_str(&format!(
                        "n = {:>3}  error = {:.6e}  bound = {:.6e}  margin = {:>8.2}  {}\n",
                        r.n,
                        r.error,
                        r.bound,
                        r.margin,
                        if r.pass { "ok" } else { "VIOLATED" }
                    ));
                }
                out
            };
            emit(cli, &json, plain, Some(csv))?;
            Ok(exit_by_convergence(all_pass))
        }

        Command::ScalingCheck {
            spec,
            p,
            degree,
            eta,
            grid,
        } => {
            let options = grid.options();
            echo(&format!(
                "scaling-check {} --p {} --degree {degree} --eta {eta} {}",
                spec_text(spec),
                p_text(*p),
                grid_text(grid)
            ));
            let fspec = spec.spec()?;
            let check = scaling_identity_check(&fspec, *p, *degree, *eta, &options)?;
            let json = serde_json::json!({
                "p": p,
                "n": degree,
                "eta": eta,
                "lhs": check.lhs,
                "rhs": check.rhs,
                "relative_gap": check.relative_gap,
            });
            emit(
                cli,
                &json,
                || {
                    format!(
                        "lhs = {:.16e}\nrhs = {:.16e}\nrelative gap = {:.3e}\n",
                        check.lhs, check.rhs, check.relative_gap
                    )
                },
                None,
            )?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Prints the fully materialized parameter echo to stderr so every run is
/// reproducible from its log without polluting machine-readable stdout.
fn echo(line: &str) {
    eprintln!("# bernstein {line}");
}

fn p_text(p: PNorm) -> String {
    match p {
        PNorm::Finite(q) => format!("{q}"),
        PNorm::Infinity => "inf".into(),
    }
}

fn spec_text(spec: &SpecArgs) -> String {
    format!(
        "--alpha {} --beta {} --variant {}",
        spec.alpha,
        spec.beta,
        variant_name(spec.variant.into())
    )
}

fn grid_text(grid: &GridArgs) -> String {
    format!(
        "--grid-floor {:e} --nodes-per-panel {}{}",
        grid.grid_floor,
        grid.nodes_per_panel,
        if grid.sequential { " --sequential" } else { "" }
    )
}

fn exit_by_convergence(converged: bool) -> ExitCode {
    if converged {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Writes the report in the requested format. CSV is only defined for the
/// table-shaped subcommands; others reject it as a usage error.
fn emit(
    cli: &Cli,
    json: &serde_json::Value,
    plain: impl FnOnce() -> String,
    csv: Option<String>,
) -> Result<(), Error> {
    let body = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(json).expect("value serializes");
            s.push('\n');
            s
        }
        Format::Csv => csv.ok_or_else(|| {
            Error::Domain("csv output is only available for converge and bound-check".into())
        })?,
        Format::Plain => plain(),
    };
    match &cli.output {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
            f.write_all(body.as_bytes())
                .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
        }
        None => print!("{body}"),
    }
    Ok(())
}
