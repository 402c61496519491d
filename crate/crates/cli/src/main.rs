//! Command-line front end: solve, scan, profile, limit, einstein-check and
//! table subcommands with deterministic JSON/CSV emission.
//!
//! Exit codes: 0 success, 2 domain error, 3 numerical error. Errors are
//! written to stderr as one JSON object. CSV numbers carry 17 significant
//! digits so every value round-trips to the exact binary64; JSON numbers use
//! the shortest round-trip representation.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use calabi_edge::{
    boundary_check, convergence_report, einstein_residual, fiber_length, fiber_volume,
    integrate_curve, sample_chart_points, solve_eta, solve_xi, validate_params, ConvergenceReport,
    Error, FamilyTag, ManifoldParams, ModelMetric, Profile, SProfile,
};

#[derive(Parser)]
#[command(
    name = "calabi-edge",
    about = "Kähler–Einstein edge metric profiles on Calabi–Hirzebruch manifolds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Eta,
    Xi,
}

impl From<FamilyArg> for FamilyTag {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Eta => FamilyTag::Eta,
            FamilyArg::Xi => FamilyTag::Xi,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Eh,
    Orb,
    Cylinder,
    Fs,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct CommonArgs {
    /// Complex dimension n of the manifold (n >= 2)
    #[arg(long)]
    n: i64,
    /// Twist k of the line bundle (k >= 1)
    #[arg(long)]
    k: i64,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one profile and print its invariants
    Solve {
        #[command(flatten)]
        common: CommonArgs,
        /// Profile family (eta or xi)
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Free cone-angle parameter of the family
        #[arg(long)]
        beta: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep the free angle over a range, one CSV row per value
    Scan {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// First angle of the sweep
        #[arg(long)]
        beta_start: f64,
        /// Last angle of the sweep (inclusive)
        #[arg(long)]
        beta_end: f64,
        /// Number of sweep points
        #[arg(long, default_value_t = 16)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Integrate and sample the momentum curve tau(s), phi(s)
    Profile {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        beta: f64,
        /// Anchor value tau(0); defaults to 2^{1/n} (eta) or 1/2 (xi),
        /// falling back to the interval midpoint when outside
        #[arg(long)]
        anchor: Option<f64>,
        #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
        s_min: f64,
        #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
        s_max: f64,
        #[arg(long, default_value_t = 201)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Convergence report toward a limit model over a list of angles
    Limit {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Limit model: eh, orb, cylinder, fs
        #[arg(long, value_enum)]
        target: TargetArg,
        /// Comma-separated angle list, ordered toward the limit endpoint
        #[arg(long, value_delimiter = ',')]
        betas: Vec<f64>,
        /// Window lower edge (s for eh/orb/fs, rescaled x for cylinder)
        #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
        s_min: f64,
        #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
        s_max: f64,
        #[arg(long, default_value_t = 501)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Finite-difference Einstein residual at sample chart points
    EinsteinCheck {
        #[command(flatten)]
        common: CommonArgs,
        /// Check a solved profile of this family (requires --beta)
        #[arg(long, value_enum, conflicts_with = "target")]
        family: Option<FamilyArg>,
        #[arg(long, requires = "family")]
        beta: Option<f64>,
        /// Check a closed-form model instead: eh or orb
        #[arg(long, value_enum)]
        target: Option<TargetArg>,
        /// Finite-difference step
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
        /// Number of sample points
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Numerically evaluated endpoint-regime table for one manifold
    Table {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let (kind, code) = match err {
                Error::Domain(_) => ("domain", 2),
                Error::Numerical(_) => ("numerical", 3),
            };
            let payload = serde_json::json!({"error": kind, "message": err.to_string()});
            eprintln!("{payload}");
            ExitCode::from(code)
        }
    }
}

fn emit(output: &OutputArgs, text: String) -> Result<(), Error> {
    match &output.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::Domain(format!("cannot write stdout: {e}")))
        }
    }
}

/// 17 significant digits: enough to round-trip any binary64.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Numerical(format!("serialization failed: {e}")))
}

#[derive(Serialize)]
struct SolveRecord {
    n: u32,
    k: u32,
    family: FamilyTag,
    beta1: f64,
    beta2: f64,
    t_or_t: f64,
    ricci: f64,
    extra_roots: Vec<[f64; 2]>,
    fiber_length: f64,
    fiber_volume: f64,
    boundary_max_dev: f64,
}

fn solve_record(
    params: ManifoldParams,
    family: FamilyTag,
    beta: f64,
) -> Result<SolveRecord, Error> {
    let profile = match family {
        FamilyTag::Eta => Profile::Eta(solve_eta(params, beta)?),
        FamilyTag::Xi => Profile::Xi(solve_xi(params, beta)?),
    };
    let (left, right) = profile.interval();
    let endpoint = match family {
        FamilyTag::Eta => right,
        FamilyTag::Xi => left,
    };
    let mut roots: Vec<[f64; 2]> = profile.extra_roots().iter().map(|r| [r.re, r.im]).collect();
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(SolveRecord {
        n: params.n(),
        k: params.k(),
        family,
        beta1: profile.beta1(),
        beta2: profile.beta2(),
        t_or_t: endpoint,
        ricci: profile.ricci(),
        extra_roots: roots,
        fiber_length: fiber_length(&profile)?,
        fiber_volume: fiber_volume(&profile),
        boundary_max_dev: boundary_check(&profile).max(),
    })
}

fn solve_csv(rec: &SolveRecord) -> String {
    let roots = rec
        .extra_roots
        .iter()
        .map(|r| {
            format!(
                "{}{}{}i",
                fmt_f64(r[0]),
                if r[1] >= 0.0 { "+" } else { "-" },
                fmt_f64(r[1].abs())
            )
        })
        .collect::<Vec<_>>()
        .join("|");
    format!(
        "n,k,family,beta1,beta2,T_or_t,ricci,fiber_length,fiber_volume,extra_roots\n{},{},{},{},{},{},{},{},{},{}\n",
        rec.n,
        rec.k,
        rec.family,
        fmt_f64(rec.beta1),
        fmt_f64(rec.beta2),
        fmt_f64(rec.t_or_t),
        fmt_f64(rec.ricci),
        fmt_f64(rec.fiber_length),
        fmt_f64(rec.fiber_volume),
        roots
    )
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Solve {
            common,
            family,
            beta,
            output,
        } => {
            let family = FamilyTag::from(family);
            let (params, half) = validate_params(common.n, common.k, family, beta)?;
            let rec = solve_record(params, family, half.beta)?;
            let text = match output.format {
                FormatArg::Csv => solve_csv(&rec),
                _ => to_json(&rec)?,
            };
            emit(&output, text)
        }
        Command::Scan {
            common,
            family,
            beta_start,
            beta_end,
            steps,
            output,
        } => {
            let family = FamilyTag::from(family);
            if steps < 2 {
                return Err(Error::Domain("steps must be at least 2".to_string()));
            }
            let (params, _) = validate_params(common.n, common.k, family, beta_start)?;
            validate_params(common.n, common.k, family, beta_end)?;
            let betas: Vec<f64> = (0..steps)
                .map(|i| beta_start + (beta_end - beta_start) * i as f64 / (steps - 1) as f64)
                .collect();
            let rows = calabi_edge::par::map(&betas, |&beta| -> Result<SolveRecord, Error> {
                solve_record(params, family, beta)
            });
            match output.format {
                FormatArg::Json => {
                    let rows: Result<Vec<SolveRecord>, Error> = rows.into_iter().collect();
                    emit(&output, to_json(&rows?)?)
                }
                _ => {
                    let mut text =
                        String::from("beta1,beta2,T_or_t,ricci,fiber_length,fiber_volume\n");
                    for row in rows {
                        let r = row?;
                        text.push_str(&format!(
                            "{},{},{},{},{},{}\n",
                            fmt_f64(r.beta1),
                            fmt_f64(r.beta2),
                            fmt_f64(r.t_or_t),
                            fmt_f64(r.ricci),
                            fmt_f64(r.fiber_length),
                            fmt_f64(r.fiber_volume)
                        ));
                    }
                    emit(&output, text)
                }
            }
        }
        Command::Profile {
            common,
            family,
            beta,
            anchor,
            s_min,
            s_max,
            samples,
            output,
        } => {
            let family = FamilyTag::from(family);
            let (params, half) = validate_params(common.n, common.k, family, beta)?;
            let profile = match family {
                FamilyTag::Eta => Profile::Eta(solve_eta(params, half.beta)?),
                FamilyTag::Xi => Profile::Xi(solve_xi(params, half.beta)?),
            };
            let (left, right) = profile.interval();
            let anchor = anchor.unwrap_or_else(|| {
                let default = match family {
                    FamilyTag::Eta => 2f64.powf(1.0 / params.nf()),
                    FamilyTag::Xi => 0.5,
                };
                let margin = 1e-6 * (right - left);
                if default > left + margin && default < right - margin {
                    default
                } else {
                    0.5 * (left + right)
                }
            });
            let curve = integrate_curve(&profile, anchor, s_min, s_max, samples)?;
            match output.format {
                FormatArg::Json => {
                    #[derive(Serialize)]
                    struct CurveRecord {
                        n: u32,
                        k: u32,
                        family: FamilyTag,
                        beta1: f64,
                        beta2: f64,
                        anchor_tau: f64,
                        tail_coeffs: (f64, f64),
                        s: Vec<f64>,
                        tau: Vec<f64>,
                        phi: Vec<f64>,
                    }
                    let rec = CurveRecord {
                        n: params.n(),
                        k: params.k(),
                        family,
                        beta1: profile.beta1(),
                        beta2: profile.beta2(),
                        anchor_tau: curve.anchor_tau,
                        tail_coeffs: curve.tail_coeffs,
                        s: curve.s_grid.clone(),
                        tau: curve.tau_values.clone(),
                        phi: curve.phi_values.clone(),
                    };
                    emit(&output, to_json(&rec)?)
                }
                _ => {
                    let mut text = String::from("s,tau,phi\n");
                    for i in 0..curve.s_grid.len() {
                        text.push_str(&format!(
                            "{},{},{}\n",
                            fmt_f64(curve.s_grid[i]),
                            fmt_f64(curve.tau_values[i]),
                            fmt_f64(curve.phi_values[i])
                        ));
                    }
                    emit(&output, text)
                }
            }
        }
        Command::Limit {
            common,
            family,
            target,
            betas,
            s_min,
            s_max,
            samples,
            output,
        } => {
            let family = FamilyTag::from(family);
            if betas.is_empty() {
                return Err(Error::Domain("at least one beta is required".to_string()));
            }
            let params = ManifoldParams::new(common.n, common.k)?;
            let target = match target {
                TargetArg::Eh => ModelMetric::Eh(params),
                TargetArg::Orb => ModelMetric::Orb(params),
                TargetArg::Cylinder => ModelMetric::Cylinder(params),
                TargetArg::Fs => ModelMetric::FsCollapse(params),
            };
            let report =
                convergence_report(params, family, &target, &betas, (s_min, s_max), samples)?;
            #[derive(Serialize)]
            struct LimitRecord {
                #[serde(flatten)]
                report: ConvergenceReport,
                monotone_decreasing: bool,
            }
            let monotone = report.monotone_decreasing();
            emit(
                &output,
                to_json(&LimitRecord {
                    report,
                    monotone_decreasing: monotone,
                })?,
            )
        }
        Command::EinsteinCheck {
            common,
            family,
            beta,
            target,
            h,
            samples,
            output,
        } => {
            let params = ManifoldParams::new(common.n, common.k)?;
            #[derive(Serialize)]
            struct EinsteinRecord {
                n: u32,
                k: u32,
                subject: String,
                ricci: f64,
                h: f64,
                points: usize,
                max_residual: f64,
            }
            let (subject, ricci, residuals): (String, f64, Vec<f64>) = match (family, target) {
                (Some(family), None) => {
                    let family = FamilyTag::from(family);
                    let beta = beta.ok_or_else(|| {
                        Error::Domain("--beta is required with --family".to_string())
                    })?;
                    let (params, half) = validate_params(common.n, common.k, family, beta)?;
                    let profile = match family {
                        FamilyTag::Eta => Profile::Eta(solve_eta(params, half.beta)?),
                        FamilyTag::Xi => Profile::Xi(solve_xi(params, half.beta)?),
                    };
                    let ricci = profile.ricci();
                    let (left, right) = profile.interval();
                    let curve = integrate_curve(&profile, 0.5 * (left + right), -8.0, 8.0, 257)?;
                    let pts = sample_chart_points(params, family, samples, (-1.5, 1.5), 42);
                    let res: Result<Vec<f64>, Error> = pts
                        .iter()
                        .map(|(z, w)| einstein_residual(params, &curve, ricci, z, *w, h))
                        .collect();
                    (format!("{family}(beta={beta})"), ricci, res?)
                }
                (None, Some(target)) => {
                    let model = match target {
                        TargetArg::Eh => ModelMetric::Eh(params),
                        TargetArg::Orb => ModelMetric::Orb(params),
                        _ => {
                            return Err(Error::Domain(
                                "einstein-check targets are eh and orb".to_string(),
                            ))
                        }
                    };
                    let ricci = model.ricci();
                    let pts = sample_chart_points(params, model.family(), samples, (-1.5, 1.5), 42);
                    let res: Result<Vec<f64>, Error> = pts
                        .iter()
                        .map(|(z, w)| einstein_residual(params, &model, ricci, z, *w, h))
                        .collect();
                    (model.name().to_string(), ricci, res?)
                }
                _ => {
                    return Err(Error::Domain(
                        "pass either --family with --beta, or --target".to_string(),
                    ))
                }
            };
            let rec = EinsteinRecord {
                n: params.n(),
                k: params.k(),
                subject,
                ricci,
                h,
                points: residuals.len(),
                max_residual: residuals.iter().cloned().fold(0.0, f64::max),
            };
            emit(&output, to_json(&rec)?)
        }
        Command::Table { common, output } => {
            let params = ManifoldParams::new(common.n, common.k)?;
            let table = regime_table(params)?;
            match output.format {
                FormatArg::Text => {
                    let mut text = format!(
                        "endpoint regimes for n={}, k={}\n{:<22} {:<8} {:>14} {:>14} {:>11} {}\n",
                        params.n(),
                        params.k(),
                        "regime",
                        "family",
                        "beta_other",
                        "tau_endpoint",
                        "length",
                        "limit_model"
                    );
                    for row in &table.rows {
                        text.push_str(&format!(
                            "{:<22} {:<8} {:>14.6e} {:>14.6e} {:>11} {}\n",
                            row.regime,
                            row.family,
                            row.derived_beta,
                            row.tau_endpoint_gap,
                            row.length_behavior,
                            row.limit_model
                        ));
                    }
                    emit(&output, text)
                }
                _ => emit(&output, to_json(&table)?),
            }
        }
    }
}

#[derive(Serialize)]
struct RegimeRow {
    /// Which endpoint of which angle is approached.
    regime: String,
    family: FamilyTag,
    /// Angle at which the regime was evaluated (gap 1e-6 from the endpoint).
    beta_probe: f64,
    /// The derived second angle at the probe.
    derived_beta: f64,
    /// Limit of the derived angle predicted by the endpoint identities.
    derived_beta_limit: f64,
    /// Distance of the movable τ-endpoint from its collapse/expansion value:
    /// T − 1 for small angles, 1/T for large eta angles, t for large xi angles.
    tau_endpoint_gap: f64,
    /// "diverges" or "converges", decided from fiber lengths at gaps 1e-3/1e-6.
    length_behavior: String,
    fiber_length_gap3: f64,
    fiber_length_gap6: f64,
    limit_model: String,
}

#[derive(Serialize)]
struct RegimeTable {
    n: u32,
    k: u32,
    beta1_sup: f64,
    beta2_sup: f64,
    rows: Vec<RegimeRow>,
}

/// One row per endpoint regime, each evaluated at a fixed gap of 1e-6 from
/// the angle endpoint (lengths additionally at 1e-3 to classify growth).
fn regime_table(params: ManifoldParams) -> Result<RegimeTable, Error> {
    const GAP: f64 = 1e-6;
    const GAP3: f64 = 1e-3;
    let n = params.n();
    let k = params.k();

    let eh_model_name = if n == 2 && k == 2 {
        "eguchi-hanson (eps=1)".to_string()
    } else if n == k {
        format!("calabi ricci-flat on -{k}H")
    } else {
        format!("ricci-flat edge metric on -{k}H (angle 2pi n/k)")
    };
    let orb_model_name = if k == 1 {
        format!("fubini-study on P^{n}")
    } else {
        format!("orbifold KE edge metric on P^{n}(1,..,1,{k})")
    };
    let base_name = format!("collapsed base (P^{}, {k} x fubini-study)", n - 1);
    let cylinder_name = format!("cylinder P^{} x C* with fiber coefficient {k}/{n}", n - 1);

    let mut rows = Vec::new();

    // eta, beta1 -> 0: base collapse.
    {
        let p = solve_eta(params, GAP)?;
        let p3 = solve_eta(params, GAP3)?;
        rows.push(RegimeRow {
            regime: "beta1->0".to_string(),
            family: FamilyTag::Eta,
            beta_probe: GAP,
            derived_beta: p.beta2,
            derived_beta_limit: 0.0,
            tau_endpoint_gap: p.tau_max - 1.0,
            length_behavior: length_flag(
                fiber_length(&Profile::Eta(p3.clone()))?,
                fiber_length(&Profile::Eta(p.clone()))?,
            ),
            fiber_length_gap3: fiber_length(&Profile::Eta(p3))?,
            fiber_length_gap6: fiber_length(&Profile::Eta(p))?,
            limit_model: base_name.clone(),
        });
    }
    // eta, beta1 -> 0, fiberwise rescaled: cylinder.
    {
        let p = solve_eta(params, GAP)?;
        let p3 = solve_eta(params, GAP3)?;
        rows.push(RegimeRow {
            regime: "beta1->0 rescaled".to_string(),
            family: FamilyTag::Eta,
            beta_probe: GAP,
            derived_beta: p.beta2,
            derived_beta_limit: 0.0,
            tau_endpoint_gap: p.tau_max - 1.0,
            length_behavior: "diverges".to_string(),
            fiber_length_gap3: fiber_length(&Profile::Eta(p3))? / GAP3,
            fiber_length_gap6: fiber_length(&Profile::Eta(p))? / GAP,
            limit_model: cylinder_name.clone(),
        });
    }
    // eta, beta1 -> n/k: Ricci-flat edge model.
    {
        let b6 = params.beta1_sup() - GAP;
        let b3 = params.beta1_sup() - GAP3;
        let p = solve_eta(params, b6)?;
        let p3 = solve_eta(params, b3)?;
        let l3 = fiber_length(&Profile::Eta(p3))?;
        let l6 = fiber_length(&Profile::Eta(p.clone()))?;
        rows.push(RegimeRow {
            regime: "beta1->n/k".to_string(),
            family: FamilyTag::Eta,
            beta_probe: b6,
            derived_beta: p.beta2,
            derived_beta_limit: params.beta2_sup(),
            tau_endpoint_gap: 1.0 / p.tau_max,
            length_behavior: length_flag(l3, l6),
            fiber_length_gap3: l3,
            fiber_length_gap6: l6,
            limit_model: eh_model_name.clone(),
        });
    }
    // xi, beta2 -> 0: base collapse.
    {
        let p = solve_xi(params, GAP)?;
        let p3 = solve_xi(params, GAP3)?;
        rows.push(RegimeRow {
            regime: "beta2->0".to_string(),
            family: FamilyTag::Xi,
            beta_probe: GAP,
            derived_beta: p.beta1,
            derived_beta_limit: 0.0,
            tau_endpoint_gap: 1.0 - p.tau_min,
            length_behavior: length_flag(
                fiber_length(&Profile::Xi(p3.clone()))?,
                fiber_length(&Profile::Xi(p.clone()))?,
            ),
            fiber_length_gap3: fiber_length(&Profile::Xi(p3))?,
            fiber_length_gap6: fiber_length(&Profile::Xi(p))?,
            limit_model: base_name.clone(),
        });
    }
    // xi, beta2 -> 0, fiberwise rescaled: cylinder.
    {
        let p = solve_xi(params, GAP)?;
        rows.push(RegimeRow {
            regime: "beta2->0 rescaled".to_string(),
            family: FamilyTag::Xi,
            beta_probe: GAP,
            derived_beta: p.beta1,
            derived_beta_limit: 0.0,
            tau_endpoint_gap: 1.0 - p.tau_min,
            length_behavior: "diverges".to_string(),
            fiber_length_gap3: f64::NAN,
            fiber_length_gap6: f64::NAN,
            limit_model: cylinder_name.clone(),
        });
    }
    // xi, beta2 -> 1/k: orbifold model.
    {
        let b6 = params.beta2_sup() - GAP;
        let b3 = params.beta2_sup() - GAP3;
        let p = solve_xi(params, b6)?;
        let p3 = solve_xi(params, b3)?;
        let l3 = fiber_length(&Profile::Xi(p3))?;
        let l6 = fiber_length(&Profile::Xi(p.clone()))?;
        rows.push(RegimeRow {
            regime: "beta2->1/k".to_string(),
            family: FamilyTag::Xi,
            beta_probe: b6,
            derived_beta: p.beta1,
            derived_beta_limit: params.beta1_sup(),
            tau_endpoint_gap: p.tau_min,
            length_behavior: length_flag(l3, l6),
            fiber_length_gap3: l3,
            fiber_length_gap6: l6,
            limit_model: orb_model_name.clone(),
        });
    }
    // xi, beta2 -> 1/k, rescaled by the blow-up factor: same Ricci-flat model.
    {
        let b6 = params.beta2_sup() - GAP;
        let p = solve_xi(params, b6)?;
        rows.push(RegimeRow {
            regime: "beta2->1/k rescaled".to_string(),
            family: FamilyTag::Xi,
            beta_probe: b6,
            derived_beta: p.beta1,
            derived_beta_limit: params.beta1_sup(),
            tau_endpoint_gap: p.tau_min,
            length_behavior: "diverges".to_string(),
            fiber_length_gap3: f64::NAN,
            fiber_length_gap6: f64::NAN,
            limit_model: eh_model_name.clone(),
        });
    }

    Ok(RegimeTable {
        n,
        k,
        beta1_sup: params.beta1_sup(),
        beta2_sup: params.beta2_sup(),
        rows,
    })
}

fn length_flag(l_gap3: f64, l_gap6: f64) -> String {
    if l_gap6 > 5.0 * l_gap3 {
        "diverges".to_string()
    } else {
        "converges".to_string()
    }
}
