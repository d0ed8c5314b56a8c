use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pencil::derham::{eigenbasis, EigenForm};
use pencil::families::{verify, FamilyKind, VerificationReport};
use pencil::report::{CurveReport, SCHEMA_VERSION};
use pencil::syzygy::Curve;
use pencil::{families, Error};

/// Exact invariants of reduced plane curves.
#[derive(Parser)]
#[command(name = "pencil", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze an arbitrary homogeneous polynomial in x, y, z.
    Analyze {
        #[arg(long)]
        poly: String,
        /// Number of irreducible components over the complex numbers.
        #[arg(long)]
        components: Option<u32>,
        #[command(flatten)]
        out: Output,
        /// Include per-stage wall-clock times.
        #[arg(long)]
        timing: bool,
    },
    /// Verify or report one member of a family.
    Family {
        #[arg(long)]
        kind: FamilyKind,
        #[arg(long)]
        degree: u32,
        #[arg(long, conflicts_with = "report")]
        verify: bool,
        #[arg(long)]
        report: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Emit the eigenbasis of H^{1,0}(F) for lambda = exp(-2*pi*i*k/d).
    Forms {
        #[arg(long)]
        kind: FamilyKind,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = FormFormat::Json)]
        format: FormFormat,
    },
    /// Verify every family member up to the given degree.
    Suite {
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Output {
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormFormat {
    Json,
    Latex,
}

#[derive(Serialize)]
struct FormsOutput {
    schema_version: u32,
    kind: FamilyKind,
    degree: u32,
    k: u32,
    lambda: String,
    forms: Vec<EigenForm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

#[derive(Serialize)]
struct SuiteOutput {
    schema_version: u32,
    max_degree: u32,
    pass: bool,
    reports: Vec<VerificationReport>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if e.is_internal() { 3 } else { 2 })
}

fn verdict(pass: bool) -> ExitCode {
    ExitCode::from(if pass { 0 } else { 1 })
}

fn run(cli: Cli, out: &mut String) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Analyze {
            poly,
            components,
            out: fmt,
            timing,
        } => {
            let r = CurveReport::analyze(&poly, components, timing)?;
            if fmt.json {
                let _ = writeln!(out, "{}", to_json(&r));
            } else {
                let _ = write!(out, "{r}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Family {
            kind,
            degree,
            report,
            out: fmt,
            ..
        } => {
            if report {
                let f = families::generate(kind, degree)?;
                let curve = Curve::new(f)?;
                let c = families::components(kind, degree)?;
                let r = CurveReport::for_curve(&curve.f().to_string(), &curve, Some(c), false)?;
                if fmt.json {
                    let _ = writeln!(out, "{}", to_json(&r));
                } else {
                    let _ = write!(out, "{r}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let r = verify(kind, degree)?;
            if fmt.json {
                let _ = writeln!(out, "{}", to_json(&r));
            } else {
                let _ = writeln!(out, "{r}");
            }
            Ok(verdict(r.pass))
        }
        Cmd::Forms {
            kind,
            degree,
            k,
            format,
        } => {
            let forms = eigenbasis(kind, degree, k)?;
            let note = forms.is_empty().then(|| {
                format!(
                    "{} has n_{} = 0: no eigenforms for this eigenvalue",
                    kind.label(degree),
                    k - 2
                )
            });
            let lambda = format!("exp(-2*pi*i*{k}/{degree})");
            match format {
                FormFormat::Json => {
                    let doc = FormsOutput {
                        schema_version: SCHEMA_VERSION,
                        kind,
                        degree,
                        k,
                        lambda,
                        forms,
                        note,
                    };
                    let _ = writeln!(out, "{}", to_json(&doc));
                }
                FormFormat::Latex => {
                    let _ = writeln!(out, "% \\lambda = \\exp(-2\\pi i \\cdot {k}/{degree})");
                    if let Some(n) = note {
                        let _ = writeln!(out, "% {n}");
                    }
                    for f in forms {
                        let _ = writeln!(out, "{}", f.form.to_latex());
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Suite { max_degree, json } => {
            let jobs: Vec<(FamilyKind, u32)> = FamilyKind::ALL
                .into_iter()
                .flat_map(|kind| (kind.min_degree()..=max_degree).map(move |d| (kind, d)))
                .collect();
            let reports = run_parallel(&jobs)?;
            let pass = reports.iter().all(|r| r.pass);
            if json {
                let doc = SuiteOutput {
                    schema_version: SCHEMA_VERSION,
                    max_degree,
                    pass,
                    reports,
                };
                let _ = writeln!(out, "{}", to_json(&doc));
            } else {
                for r in &reports {
                    let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
                    if failed.is_empty() {
                        let _ = writeln!(out, "{:<8} PASS  ({} claims)", r.label, r.claims.len());
                    } else {
                        let _ = writeln!(out, "{:<8} FAIL  {}", r.label, failed.join("; "));
                    }
                }
                let _ = writeln!(out, "suite: {}", if pass { "PASS" } else { "FAIL" });
            }
            Ok(verdict(pass))
        }
    }
}

/// Verifies the jobs on all available cores; results keep the job order.
fn run_parallel(jobs: &[(FamilyKind, u32)]) -> Result<Vec<VerificationReport>, Error> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<VerificationReport, Error>>>> =
        Mutex::new(vec![None; jobs.len()]);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    std::thread::scope(|s| {
        for _ in 0..workers.min(jobs.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(kind, d)) = jobs.get(i) else { break };
                let r = verify(kind, d);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every job ran"))
        .collect()
}

fn main() -> ExitCode {
    let mut out = String::new();
    let code = match run(Cli::parse(), &mut out) {
        Ok(code) => code,
        Err(e) => fail(e),
    };
    // A closed pipe downstream is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    code
}
