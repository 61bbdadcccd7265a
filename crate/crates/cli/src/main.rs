//! `ccov`: command-line front end for the canonical cover computations.

mod args;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use canonical_covers::audit::AuditReport;
use canonical_covers::collisions::{
    p2_solutions, verify_moduli_examples, xi_candidates, AcceptAll, ConfiguredPredicate, FeasibilityPredicate,
};
use canonical_covers::export::{points_csv, render_svg};
use canonical_covers::geography::{enumerate_points_with, figure_dataset, line_dataset, Figure, ScanConfig, Window};
use canonical_covers::invariants::{normal_sheaf_h0, tangent_chi_constant};
use canonical_covers::{
    audit, cohomology, invariants, moduli_dimension, serre_dual, DivisorClass, Error, Polarization,
};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use serde::Serialize;
use serde_json::{json, Value};

use args::{Base, ClassArgs, Cli, Command, GeoFormat, PolarizationArgs, TextFormat};

const VERSION: &str = env!("CARGO_PKG_VERSION");

enum Failure {
    Usage(String),
    Domain(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Domain(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Internal(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

#[derive(Serialize)]
struct Envelope<'a> {
    version: &'a str,
    command: String,
    payload: Value,
    warnings: Vec<String>,
}

struct Output {
    command: String,
    stdout: String,
    /// Warnings for non-JSON formats, reported on stderr.
    warnings: Vec<String>,
}

impl Output {
    fn envelope(&mut self, payload: impl Serialize, warnings: Vec<String>) -> Outcome {
        let payload = to_value(payload)?;
        let env = Envelope { version: VERSION, command: self.command.clone(), payload, warnings };
        let text = serde_json::to_string_pretty(&env).map_err(|e| Failure::Internal(e.to_string()))?;
        self.stdout.push_str(&text);
        self.stdout.push('\n');
        Ok(())
    }
}

fn to_value(v: impl Serialize) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure::Internal(format!("serialization: {e}")))
}

fn usage(kind: ErrorKind, msg: impl Into<String>) -> Failure {
    let err = Cli::command().error(kind, msg.into());
    Failure::Usage(err.render().to_string())
}

fn require<T>(v: Option<T>, flag: &str, base: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(ErrorKind::MissingRequiredArgument, format!("--base {base} requires {flag}")))
}

fn polarization(args: &PolarizationArgs) -> Result<Polarization, Failure> {
    let p = match args.base {
        Base::P2 => Polarization::plane(require(args.d, "--d", "p2")?),
        Base::Fe => Polarization::hirzebruch(
            require(args.e, "--e", "fe")?,
            require(args.a, "--a", "fe")?,
            require(args.b, "--b", "fe")?,
        ),
    };
    Ok(p?)
}

fn divisor_class(args: &ClassArgs) -> Result<DivisorClass, Failure> {
    Ok(match args.base {
        Base::P2 => DivisorClass::plane(require(args.d, "--d", "p2")?),
        Base::Fe => DivisorClass::hirzebruch(
            require(args.e, "--e", "fe")?,
            require(args.alpha, "--alpha", "fe")?,
            require(args.beta, "--beta", "fe")?,
        ),
    })
}

fn parse_window(s: &str) -> Result<Window, Failure> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| usage(ErrorKind::ValueValidation, format!("invalid --window '{s}': {e}")))?;
    let [x0, x1, y0, y1] = parts[..] else {
        return Err(usage(ErrorKind::ValueValidation, format!("--window needs four values x0,x1,y0,y1, got '{s}'")));
    };
    Ok(Window::new(x0, x1, y0, y1)?)
}

fn write_file(path: &Path, contents: &str) -> Outcome {
    fs::write(path, contents).map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display())))
}

fn text_lines(pairs: &[(&str, String)]) -> String {
    let mut s = String::new();
    for (k, v) in pairs {
        let _ = writeln!(s, "{k}: {v}");
    }
    s
}

fn audit_text(report: &AuditReport) -> String {
    let mut s = format!("{}\n", report.polarization);
    for c in &report.conditions {
        let _ = writeln!(s, "  {} [{}] {}", c.id, if c.pass { "pass" } else { "FAIL" }, c.description);
    }
    let _ = writeln!(s, "verdict: {}", if report.verdict { "pass" } else { "fail" });
    s
}

fn run(cli: Cli, out: &mut Output) -> Outcome {
    match cli.command {
        Command::Invariants { pol, format } => {
            let p = polarization(&pol)?;
            let inv = invariants(&p)?;
            let report = audit(&p)?;
            let mut warnings = Vec::new();
            let mu = if report.verdict {
                Some(moduli_dimension(&p)?)
            } else {
                let failing: Vec<String> = report.failing().iter().map(|c| c.to_string()).collect();
                warnings.push(format!("audit fails ({}); mu withheld", failing.join(", ")));
                None
            };
            match format {
                TextFormat::Json => out.envelope(
                    json!({
                        "polarization": to_value(p)?,
                        "p_g": inv.p_g,
                        "q": inv.q,
                        "chi": inv.chi,
                        "c1_sq": inv.c1_sq,
                        "c2": inv.c2,
                        "chern_ratio": inv.chern_ratio.to_string(),
                        "audit_pass": report.verdict,
                        "mu": mu,
                    }),
                    warnings,
                ),
                TextFormat::Text => {
                    out.stdout = text_lines(&[
                        ("polarization", p.to_string()),
                        ("p_g", inv.p_g.to_string()),
                        ("q", inv.q.to_string()),
                        ("chi", inv.chi.to_string()),
                        ("c1^2", inv.c1_sq.to_string()),
                        ("c2", inv.c2.to_string()),
                        ("c1^2/c2", inv.chern_ratio.to_string()),
                        ("mu", mu.map_or_else(|| "withheld".to_string(), |m| m.to_string())),
                    ]);
                    Ok(())
                }
            }
        }
        Command::Cohomology { class, format } => {
            let d = divisor_class(&class)?;
            let table = cohomology(&d)?;
            let dual = serre_dual(&d)?;
            match format {
                TextFormat::Json => out.envelope(
                    json!({
                        "class": to_value(d)?,
                        "h0": table.h0,
                        "h1": table.h1,
                        "h2": table.h2,
                        "chi": table.chi,
                        "serre_dual": to_value(dual)?,
                    }),
                    Vec::new(),
                ),
                TextFormat::Text => {
                    out.stdout = text_lines(&[
                        ("class", d.to_string()),
                        ("h0", table.h0.to_string()),
                        ("h1", table.h1.to_string()),
                        ("h2", table.h2.to_string()),
                        ("chi", table.chi.to_string()),
                        ("K - D", dual.to_string()),
                    ]);
                    Ok(())
                }
            }
        }
        Command::ModuliDim { pol, format } => {
            let p = polarization(&pol)?;
            let mu = moduli_dimension(&p)?;
            let h0_n = normal_sheaf_h0(&p)?;
            let tangent = tangent_chi_constant(p.base());
            match format {
                TextFormat::Json => out.envelope(
                    json!({
                        "polarization": to_value(p)?,
                        "mu": mu,
                        "h0_normal_sheaf": h0_n,
                        "tangent_chi": tangent,
                    }),
                    Vec::new(),
                ),
                TextFormat::Text => {
                    out.stdout = text_lines(&[
                        ("polarization", p.to_string()),
                        ("mu", mu.to_string()),
                        ("h0(N)", h0_n.to_string()),
                        ("chi(T_Y)", tangent.to_string()),
                    ]);
                    Ok(())
                }
            }
        }
        Command::Audit { pol, format } => {
            let p = polarization(&pol)?;
            let report = audit(&p)?;
            match format {
                TextFormat::Json => out.envelope(&report, Vec::new()),
                TextFormat::Text => {
                    out.stdout = audit_text(&report);
                    Ok(())
                }
            }
        }
        Command::Geography { a, x_max, no_f1, format, out: path } => {
            let config = ScanConfig { include_f1: !no_f1, ..ScanConfig::default() };
            let run = enumerate_points_with(a, x_max, &config)?;
            let body = match format {
                GeoFormat::Json => {
                    let mut inner =
                        Output { command: out.command.clone(), stdout: String::new(), warnings: Vec::new() };
                    inner.envelope(
                        json!({ "a": a, "x_max": x_max, "include_f1": !no_f1, "points": to_value(&run.points)? }),
                        run.warnings.clone(),
                    )?;
                    inner.stdout
                }
                GeoFormat::Csv => points_csv(&run.points)?,
                GeoFormat::Svg => {
                    let ceiling = run.points.iter().map(|p| p.y).max().unwrap_or(0).max(10);
                    let window = Window::new(
                        0,
                        i64::try_from(x_max).map_err(|_| Failure::Domain("x-max too large for a window".into()))?,
                        0,
                        i64::try_from(ceiling + ceiling / 10)
                            .map_err(|_| Failure::Domain("y range too large".into()))?,
                    )?;
                    let a = u64::try_from(a).map_err(|_| Failure::Domain(format!("a = {a} must be positive")))?;
                    render_svg(&line_dataset(a, run.points, window))
                }
            };
            if format != GeoFormat::Json {
                out.warnings.extend(run.warnings.iter().cloned());
            }
            match path {
                Some(path) => write_file(&path, &body),
                None => {
                    out.stdout = body;
                    Ok(())
                }
            }
        }
        Command::Figure { n, window, out: path } => {
            let figure = Figure::from_number(n)?;
            let window = window.as_deref().map(parse_window).transpose()?;
            let data = figure_dataset(figure, window)?;
            write_file(&path, &render_svg(&data))?;
            let solid = data.lines.iter().filter(|l| !l.dashed).count();
            out.envelope(
                json!({
                    "figure": n,
                    "window": to_value(data.window)?,
                    "out": path.display().to_string(),
                    "solid_lines": solid,
                    "dashed_lines": data.lines.len() - solid,
                    "points": data.points.iter().map(|p| [p.x, p.y]).collect::<Vec<_>>(),
                }),
                Vec::new(),
            )
        }
        Command::Collisions { m, bound, feas_config, format: _ } => {
            let predicate: Box<dyn FeasibilityPredicate> = match feas_config {
                None => Box::new(AcceptAll),
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| Failure::Domain(format!("cannot read {}: {e}", path.display())))?;
                    let cfg: ConfiguredPredicate = serde_json::from_str(&text)
                        .map_err(|e| Failure::Domain(format!("invalid feasibility config {}: {e}", path.display())))?;
                    Box::new(cfg)
                }
            };
            let candidates = xi_candidates(m, bound, predicate.as_ref())?;
            let mut warnings = Vec::new();
            let unverified = candidates.iter().filter(|c| !c.s_side_verified).count();
            if unverified > 0 {
                warnings.push(format!("{unverified} candidate(s) have an unverified S side"));
            }
            out.envelope(
                json!({
                    "m": m,
                    "bound": bound,
                    "predicate": predicate.name(),
                    "candidates": to_value(&candidates)?,
                    "p2_solutions": p2_solutions(m)?,
                }),
                warnings,
            )
        }
        Command::VerifyExamples => {
            let report = verify_moduli_examples()?;
            let all_pass = report.all_pass;
            out.envelope(&report, Vec::new())?;
            if all_pass {
                Ok(())
            } else {
                Err(Failure::Internal("worked examples do not reproduce".into()))
            }
        }
    }
}

/// Result of one invocation: exit code and the two output streams.
pub struct Execution {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn execute(argv: &[String]) -> Execution {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Execution { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Execution { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    let mut out = Output { command: argv[1..].join(" "), stdout: String::new(), warnings: Vec::new() };
    let result = run(cli, &mut out);
    let mut stderr: String = out.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    match result {
        Ok(()) => Execution { code: 0, stdout: out.stdout, stderr },
        Err(f) => {
            let code = f.code();
            stderr += &match f {
                Failure::Usage(msg) => msg,
                Failure::Domain(msg) | Failure::Internal(msg) => format!("error: {msg}\n"),
            };
            Execution { code, stdout: out.stdout, stderr }
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let run = execute(&argv);
    print!("{}", run.stdout);
    eprint!("{}", run.stderr);
    ExitCode::from(run.code)
}

#[cfg(test)]
mod tests;
