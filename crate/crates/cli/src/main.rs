//! Command-line front end: evaluate the generalized L-functions, the
//! Eisenstein and resolvent kernels, run the verification suite, and sweep
//! grids to CSV/JSON.

mod output;

use clap::{Parser, Subcommand, ValueEnum};
use lzfun::eisenstein::{eval_e_real_analytic, LatticeTruncation};
use lzfun::harness::{run_checks, SmallRng, VerifyBudget, SUITES};
use lzfun::lfun::{LzContext, QuadratureSpec};
use lzfun::modforms::HalfPlanePoint;
use lzfun::resolvent::{cal_gw, gw_truncated};
use num_complex::Complex64;
use output::{complex_json, emit, fmt_complex_csv, fmt_f64, Format, Report};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BudgetPreset {
    /// Loose tolerances and small truncation radii (CI-grade).
    Fast,
    /// Desk-verification defaults.
    Default,
    /// Tight tolerances and doubled radii.
    Paranoid,
}

impl BudgetPreset {
    fn verify_budget(self, seed: u64) -> VerifyBudget {
        let mut b = match self {
            BudgetPreset::Fast => VerifyBudget::fast(),
            BudgetPreset::Default => VerifyBudget::standard(),
            BudgetPreset::Paranoid => VerifyBudget::paranoid(),
        };
        b.seed = seed;
        b
    }

    fn quad(self) -> QuadratureSpec {
        self.verify_budget(0).quad
    }

    fn default_radius(self) -> u32 {
        match self {
            BudgetPreset::Fast => 60,
            BudgetPreset::Default => 120,
            BudgetPreset::Paranoid => 320,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "lzfun",
    version,
    about = "Generalized L-functions attached to points of the upper half-plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Output file; stdout if omitted. Relative paths resolve against
    /// LZFUN_OUTPUT_DIR when that variable is set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Budget preset scaling tolerances and truncation radii together.
    #[arg(long, global = true, value_enum, default_value = "default")]
    budget: BudgetPreset,
    /// Seed for randomized grids (verify, sweep).
    #[arg(long, global = true, default_value_t = 20240901)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the generalized L-function L_z(s).
    EvalLz {
        /// Point z = x+iy of the upper half-plane, e.g. "0.27+1.31i".
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Complex argument s, e.g. "1.4" or "1.5+0.3i".
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Split point t0 of the regularized integrals.
        #[arg(long, default_value_t = 1.0)]
        t0: f64,
    },
    /// Evaluate the completed Eisenstein L-function L(E2hat, s).
    EvalLe2 {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 1.0)]
        t0: f64,
    },
    /// Evaluate the real-analytic Eisenstein series E_k(w; tau).
    EvalEisenstein {
        /// Even weight k (0 or 2).
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// Coset enumeration radius; preset default if omitted.
        #[arg(long)]
        radius: Option<u32>,
    },
    /// Evaluate the resolvent kernel G_w(z, tau) or its raised form.
    EvalResolvent {
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long)]
        radius: Option<u32>,
        /// Evaluate cal G_w = (1/2i) R_0 G_w instead of G_w.
        #[arg(long, default_value_t = false)]
        raised: bool,
    },
    /// Run the theorem verification suite; exit 0 iff every check passes.
    Verify {
        /// Restrict to one suite (see --suite list).
        #[arg(long)]
        suite: Option<String>,
        /// List available suites and exit.
        #[arg(long, default_value_t = false)]
        list: bool,
    },
    /// Run the y-ladder limit experiment toward the zeta-product target.
    Limit {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// Comma-separated y ladder, e.g. "16,32,64".
        #[arg(long, default_value = "16,32,64")]
        y: String,
    },
    /// Sweep L_z(s) over a seeded random z-grid.
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Number of grid points.
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim().replace(' ', "");
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Some(body) = t.strip_suffix('i') {
        // find the split between real and imaginary parts: the last +/-
        // that is not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let b = bytes[idx];
            if (b == b'+' || b == b'-') && bytes[idx - 1] != b'e' && bytes[idx - 1] != b'E' {
                split = Some(idx);
                break;
            }
        }
        match split {
            Some(idx) => {
                let re: f64 = body[..idx].parse().map_err(|e| format!("{e}"))?;
                let im_text = &body[idx..];
                let im: f64 = if im_text == "+" {
                    1.0
                } else if im_text == "-" {
                    -1.0
                } else {
                    im_text.parse().map_err(|e| format!("{e}"))?
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if body.is_empty() {
                    1.0
                } else {
                    body.parse().map_err(|e| format!("{e}"))?
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = t.parse().map_err(|e| format!("{e}"))?;
        Ok(Complex64::new(re, 0.0))
    }
}

fn parse_point(text: &str) -> Result<HalfPlanePoint, String> {
    let z = parse_complex(text)?;
    HalfPlanePoint::from_complex(z).map_err(|e| format!("{e}"))
}

fn eval_report(
    command: &'static str,
    label: String,
    value: Complex64,
    err_est: f64,
    extra: Vec<(String, String)>,
) -> Report {
    let mut text = format!(
        "{command}: {label}\n  value   = {}\n  err_est = {}\n",
        fmt_complex_csv(value),
        fmt_f64(err_est)
    );
    for (k, v) in &extra {
        text.push_str(&format!("  {k} = {v}\n"));
    }
    Report {
        command,
        csv_header: vec!["label", "value", "err_est"],
        csv_rows: vec![vec![label.clone(), fmt_complex_csv(value), fmt_f64(err_est)]],
        json_records: vec![json!({
            "label": label,
            "value": complex_json(value),
            "err_est": err_est,
            "extra": extra.iter().map(|(k, v)| json!({"key": k, "value": v})).collect::<Vec<_>>(),
        })],
        text,
    }
}

fn failure_report(command: &'static str, err: &lzfun::MathError, format: Format) -> String {
    match format {
        Format::Json => {
            let doc = json!({
                "schema_version": 1,
                "command": command,
                "error": format!("{err}"),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
        _ => format!("error: {err}\n"),
    }
}

fn run(cli: &Cli) -> Result<(Report, bool), String> {
    let preset = cli.budget;
    match &cli.command {
        Command::EvalLz { z, s, t0 } => {
            let zp = parse_point(z)?;
            let sv = parse_complex(s)?;
            let cx = LzContext::default();
            // warn (do not reject) when z sits close to the singular set
            if let Ok(d) = cx.forms.singular_set_distance(zp) {
                if d.distance_to_ray < 1e-3 * (1.0 + d.j_value.norm()) {
                    eprintln!(
                        "warning: z is within {:.2e} of the singular set ray; \
                         the defining integral is near a pole",
                        d.distance_to_ray
                    );
                }
            }
            let q = QuadratureSpec { t0: *t0, ..preset.quad() };
            let out = cx.l_z(zp, sv, &q).map_err(|e| failure_to_string(&e, cli))?;
            Ok((
                eval_report(
                    "eval-lz",
                    format!("L_z(s) at z={z}, s={s}"),
                    out.value,
                    out.err_est,
                    diag_pairs(&out),
                ),
                true,
            ))
        }
        Command::EvalLe2 { s, t0 } => {
            let sv = parse_complex(s)?;
            let cx = LzContext::default();
            let q = QuadratureSpec { t0: *t0, ..preset.quad() };
            let out = cx.l_e2hat(sv, &q).map_err(|e| failure_to_string(&e, cli))?;
            let closed = cx
                .l_e2hat_closed_form(sv)
                .map_err(|e| failure_to_string(&e, cli))?;
            Ok((
                eval_report(
                    "eval-le2",
                    format!("L(E2hat, s) at s={s}"),
                    out.value,
                    out.err_est,
                    vec![("closed_form".into(), fmt_complex_csv(closed))],
                ),
                true,
            ))
        }
        Command::EvalEisenstein { k, w, tau, radius } => {
            let wv = parse_complex(w)?;
            let tp = parse_point(tau)?;
            let tr = LatticeTruncation::new(radius.unwrap_or(preset.default_radius()));
            let out =
                eval_e_real_analytic(*k, wv, tp, &tr).map_err(|e| failure_to_string(&e, cli))?;
            Ok((
                eval_report(
                    "eval-eisenstein",
                    format!("E_{k}(w; tau) at w={w}, tau={tau}, R={}", tr.radius),
                    out.value,
                    out.err_est,
                    diag_pairs(&out),
                ),
                true,
            ))
        }
        Command::EvalResolvent { w, z, tau, radius, raised } => {
            let wv = parse_complex(w)?;
            let zp = parse_point(z)?;
            let tp = parse_point(tau)?;
            let tr = LatticeTruncation::new(radius.unwrap_or(preset.default_radius().min(160)));
            let out = if *raised {
                cal_gw(wv, zp, tp, &tr)
            } else {
                gw_truncated(wv, zp, tp, &tr)
            }
            .map_err(|e| failure_to_string(&e, cli))?;
            let name = if *raised { "cal G_w" } else { "G_w" };
            Ok((
                eval_report(
                    "eval-resolvent",
                    format!("{name} at w={w}, z={z}, tau={tau}, R={}", tr.radius),
                    out.value,
                    out.err_est,
                    diag_pairs(&out),
                ),
                true,
            ))
        }
        Command::Verify { suite, list } => {
            if *list {
                let text = SUITES.join("\n") + "\n";
                return Ok((
                    Report {
                        command: "verify",
                        csv_header: vec!["suite"],
                        csv_rows: SUITES.iter().map(|s| vec![s.to_string()]).collect(),
                        json_records: SUITES.iter().map(|s| json!({ "suite": s })).collect(),
                        text,
                    },
                    true,
                ));
            }
            if let Some(key) = suite {
                if !SUITES.contains(&key.as_str()) {
                    return Err(format!(
                        "unknown suite '{key}'; available: {}",
                        SUITES.join(", ")
                    ));
                }
            }
            let cx = LzContext::default();
            let budget = preset.verify_budget(cli.seed);
            let checks = run_checks(&cx, &budget, suite.as_deref());
            let all_pass = checks.iter().all(|c| c.pass);
            let mut text = String::new();
            text.push_str(&format!(
                "{:<6} {:<16} {:<52} {:>12} {:>9}\n",
                "status", "check", "statement", "residual", "tol"
            ));
            for c in &checks {
                text.push_str(&c.line());
                text.push('\n');
            }
            text.push_str(&format!(
                "{} of {} checks passed\n",
                checks.iter().filter(|c| c.pass).count(),
                checks.len()
            ));
            let report = Report {
                command: "verify",
                csv_header: vec!["check", "suite", "statement", "status", "residual", "tolerance"],
                csv_rows: checks
                    .iter()
                    .map(|c| {
                        vec![
                            c.id.to_string(),
                            c.suite.to_string(),
                            c.statement.to_string(),
                            if c.pass { "pass" } else { "fail" }.to_string(),
                            fmt_f64(c.residual),
                            fmt_f64(c.tolerance),
                        ]
                    })
                    .collect(),
                json_records: checks
                    .iter()
                    .map(|c| {
                        json!({
                            "check": c.id,
                            "suite": c.suite,
                            "statement": c.statement,
                            "pass": c.pass,
                            "residual": c.residual,
                            "tolerance": c.tolerance,
                            "detail": c.detail,
                        })
                    })
                    .collect(),
                text,
            };
            Ok((report, all_pass))
        }
        Command::Limit { s, x, y } => {
            let sv = parse_complex(s)?;
            let ladder: Result<Vec<f64>, _> = y.split(',').map(|p| p.trim().parse::<f64>()).collect();
            let ladder = ladder.map_err(|e| format!("bad y ladder: {e}"))?;
            let cx = LzContext::default();
            let rep = cx
                .limit_experiment(sv, *x, &ladder, &preset.quad())
                .map_err(|e| failure_to_string(&e, cli))?;
            let mut text = format!(
                "limit experiment at s={s}, x={x}\n  exponents: y^-{:.3}, y^-{:.3}\n",
                rep.exponents.0, rep.exponents.1
            );
            for r in &rep.rows {
                text.push_str(&format!(
                    "  y={:>7}: L_z = {}  R(y) = {}\n",
                    r.y,
                    fmt_complex_csv(r.l_value),
                    fmt_complex_csv(r.subtracted)
                ));
            }
            text.push_str(&format!(
                "  fit A    = {}\n  target   = {}\n  rel_error = {}\n",
                fmt_complex_csv(rep.fitted_limit),
                fmt_complex_csv(rep.target),
                fmt_f64(rep.rel_error)
            ));
            let report = Report {
                command: "limit",
                csv_header: vec!["y", "l_z", "subtracted_residual", "fit_a", "target", "rel_error"],
                csv_rows: rep
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            fmt_f64(r.y),
                            fmt_complex_csv(r.l_value),
                            fmt_complex_csv(r.subtracted),
                            fmt_complex_csv(rep.fitted_limit),
                            fmt_complex_csv(rep.target),
                            fmt_f64(rep.rel_error),
                        ]
                    })
                    .collect(),
                json_records: vec![json!({
                    "s": complex_json(sv),
                    "x": x,
                    "rows": rep.rows.iter().map(|r| json!({
                        "y": r.y,
                        "l_z": complex_json(r.l_value),
                        "subtracted": complex_json(r.subtracted),
                    })).collect::<Vec<_>>(),
                    "fit_a": complex_json(rep.fitted_limit),
                    "target": complex_json(rep.target),
                    "rel_error": rep.rel_error,
                })],
                text,
            };
            Ok((report, true))
        }
        Command::Sweep { s, count } => {
            let sv = parse_complex(s)?;
            let cx = LzContext::default();
            let q = preset.quad();
            let mut rng = SmallRng::new(cli.seed);
            let mut rows = Vec::new();
            let mut records = Vec::new();
            let mut text = format!("sweep of L_z(s) at s={s}, {count} seeded points\n");
            let mut produced = 0usize;
            while produced < *count {
                let z = HalfPlanePoint::new(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 2.5))
                    .expect("grid point valid");
                // stay clear of the singular set
                match cx.forms.singular_set_distance(z) {
                    Ok(d) if d.distance_to_ray > 1e-2 * (1.0 + d.j_value.norm()) => {}
                    _ => continue,
                }
                let out = cx.l_z(z, sv, &q).map_err(|e| failure_to_string(&e, cli))?;
                rows.push(vec![
                    fmt_f64(z.u()),
                    fmt_f64(z.v()),
                    fmt_complex_csv(out.value),
                    fmt_f64(out.err_est),
                ]);
                records.push(json!({
                    "z": complex_json(z.to_complex()),
                    "value": complex_json(out.value),
                    "err_est": out.err_est,
                }));
                text.push_str(&format!(
                    "  z = {:+.6}{:+.6}i: L_z = {}\n",
                    z.u(),
                    z.v(),
                    fmt_complex_csv(out.value)
                ));
                produced += 1;
            }
            Ok((
                Report {
                    command: "sweep",
                    csv_header: vec!["z_re", "z_im", "value", "err_est"],
                    csv_rows: rows,
                    json_records: records,
                    text,
                },
                true,
            ))
        }
    }
}

fn diag_pairs(out: &lzfun::EvalResult) -> Vec<(String, String)> {
    out.diagnostics
        .iter()
        .map(|(k, v)| (k.clone(), fmt_f64(*v)))
        .collect()
}

fn failure_to_string(err: &lzfun::MathError, cli: &Cli) -> String {
    let body = failure_report("eval", err, cli.format);
    let _ = emit(&cli.output, &body);
    format!("__emitted__:{err}")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, all_pass)) => {
            let body = report.render(cli.format);
            if let Err(e) = emit(&cli.output, &body) {
                eprintln!("error writing output: {e}");
                return ExitCode::from(3);
            }
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            if let Some(stripped) = msg.strip_prefix("__emitted__:") {
                eprintln!("error: {stripped}");
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}
