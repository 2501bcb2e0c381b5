//! Command-line front end: evaluate kernels and weights, run transforms,
//! and drive the verification suites.
//!
//! Configuration comes from (lowest to highest precedence) built-in
//! defaults, a JSON config file (`--config`, falling back to the
//! `AWFT_CONFIG` environment variable), and individual flags. Exit codes:
//! 0 success, 1 verification/computation failure, 2 invalid configuration
//! or parameters.

use awft_core::awcore::{self, AWParams, Representation};
use awft_core::measure::{self, Faults, Measure, MeasureSpec, TestFunction};
use awft_core::suites::{self, VerifyConfig};
use awft_core::transform;
use awft_core::AwError;
use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::Deserialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "awft",
    about = "Askey-Wilson function transform: kernels, weights, transforms, verification",
    version
)]
struct Cli {
    /// JSON config file; AWFT_CONFIG is used when the flag is absent.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    q: Option<f64>,
    #[arg(long, global = true)]
    a: Option<f64>,
    #[arg(long, global = true)]
    b: Option<f64>,
    #[arg(long, global = true)]
    c: Option<f64>,
    #[arg(long, global = true)]
    d: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    t: Option<f64>,
    /// Target relative accuracy of series evaluations.
    #[arg(long, global = true)]
    eps: Option<f64>,
    /// Trapezoid subdivisions of the half circle.
    #[arg(long, global = true)]
    quad_points: Option<usize>,
    /// Truncation index of the unbounded discrete support.
    #[arg(long, global = true, allow_hyphen_values = true)]
    k_min: Option<i64>,
    /// Truncation index on the dual side.
    #[arg(long, global = true, allow_hyphen_values = true)]
    dual_k_min: Option<i64>,
    /// Output path (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_parser = ["json", "csv"])]
    format: Option<String>,
    /// Multiply a constant or weight family by a factor (test only):
    /// `TARGET[:FACTOR]` with TARGET in {k, c0, m, weight-plus,
    /// weight-minus}, default factor 1.01.
    #[arg(long, global = true)]
    fault_inject: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one kernel at a point.
    Eval {
        /// One of: phi, poly, c, weightW, weightDelta, theta.
        #[arg(long)]
        kind: String,
        /// Spectral point, e.g. "1.5" or "0.5+0.866i".
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        /// Geometric point.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Polynomial degree (kind = poly).
        #[arg(long)]
        n: Option<u32>,
    },
    /// Print the dual parameter tuple and its domain membership.
    Dual,
    /// Tabulate the measure: circle density and discrete atoms.
    Weights,
    /// Transform a test function and sample it on the dual grid.
    Transform {
        /// Atom component of the input, repeatable: K=VALUE (lattice index).
        #[arg(long = "atom", allow_hyphen_values = true)]
        atoms: Vec<String>,
        /// Raised-cosine circle component: CENTER,WIDTH in (0, pi).
        #[arg(long)]
        bump: Option<String>,
    },
    /// Run a verification suite and stream one JSON report per line.
    Verify {
        /// One of the named suites, or "all".
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Flat JSON config schema; every field optional.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    q: Option<f64>,
    a: Option<f64>,
    b: Option<f64>,
    c: Option<f64>,
    d: Option<f64>,
    t: Option<f64>,
    eps: Option<f64>,
    quad_points: Option<usize>,
    k_min: Option<i64>,
    dual_k_min: Option<i64>,
    format: Option<String>,
    out: Option<String>,
}

struct RunConfig {
    params: AWParams,
    eps: f64,
    quad_points: usize,
    k_min: i64,
    dual_k_min: i64,
    format: String,
    out: Option<PathBuf>,
    faults: Faults,
}

impl RunConfig {
    fn spec(&self) -> MeasureSpec {
        let mut s = MeasureSpec::new(self.params, self.quad_points, self.k_min, self.eps);
        s.faults = self.faults;
        s
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!(
        "{}",
        serde_json::json!({ "error": msg.to_string() })
    );
    ExitCode::from(code)
}

fn parse_fault(spec: &str) -> Result<Faults, String> {
    let (target, factor) = match spec.split_once(':') {
        Some((t, f)) => (
            t,
            f.parse::<f64>().map_err(|e| format!("bad fault factor {f:?}: {e}"))?,
        ),
        None => (spec, 1.01),
    };
    let mut faults = Faults::none();
    match target {
        "k" => faults.k = factor,
        "c0" => faults.c0 = factor,
        "m" => faults.m = factor,
        "weight-plus" => faults.weight_plus = factor,
        "weight-minus" => faults.weight_minus = factor,
        other => return Err(format!("unknown fault target {other:?}")),
    }
    Ok(faults)
}

/// Accepts "1.5", "-2", "0.5+0.866i", "1e-3-2i", "2i", "i".
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s = s.trim();
    if let Ok(re) = s.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    let body = s
        .strip_suffix('i')
        .ok_or_else(|| format!("cannot parse complex number {s:?}"))?;
    // Split the imaginary tail off at the last +/- that is not an exponent
    // sign and not the leading sign.
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let ch = bytes[i];
        if (ch == b'+' || ch == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    let (re_s, im_s) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let re = if re_s.is_empty() { 0.0 } else { re_s.parse::<f64>().map_err(|e| e.to_string())? };
    let im = match im_s {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().map_err(|e| e.to_string())?,
    };
    Ok(Complex64::new(re, im))
}

fn load_config(cli: &Cli) -> Result<RunConfig, (u8, String)> {
    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os("AWFT_CONFIG").map(PathBuf::from));
    let file: FileConfig = match path {
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| (2u8, format!("cannot read config {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| (2u8, format!("bad config {}: {e}", p.display())))?
        }
        None => FileConfig::default(),
    };
    let std = awcore::standard_params();
    let params = AWParams::new(
        cli.q.or(file.q).unwrap_or(std.q),
        cli.a.or(file.a).unwrap_or(std.a),
        cli.b.or(file.b).unwrap_or(std.b),
        cli.c.or(file.c).unwrap_or(std.c),
        cli.d.or(file.d).unwrap_or(std.d),
        cli.t.or(file.t).unwrap_or(std.t),
    )
    .map_err(|e| (2u8, e.to_string()))?;
    let (ok, violations) = awcore::validate_v(&params);
    if !ok {
        return Err((
            2,
            format!("parameters outside the admissible domain: {violations:?}"),
        ));
    }
    let faults = match &cli.fault_inject {
        Some(s) => parse_fault(s).map_err(|e| (2u8, e))?,
        None => Faults::none(),
    };
    Ok(RunConfig {
        params,
        eps: cli.eps.or(file.eps).unwrap_or(1e-12),
        quad_points: cli.quad_points.or(file.quad_points).unwrap_or(512),
        k_min: cli.k_min.or(file.k_min).unwrap_or(-40),
        dual_k_min: cli.dual_k_min.or(file.dual_k_min).unwrap_or(-40),
        format: cli.format.clone().or(file.format).unwrap_or_else(|| "json".into()),
        out: cli.out.clone().or(file.out.map(PathBuf::from)),
        faults,
    })
}

fn emit(cfg: &RunConfig, text: String) -> std::io::Result<()> {
    match &cfg.out {
        Some(p) => std::fs::write(p, text),
        None => {
            if text.ends_with('\n') {
                print!("{text}");
            } else {
                println!("{text}");
            }
            Ok(())
        }
    }
}

fn cmd_eval(
    cfg: &RunConfig,
    kind: &str,
    gamma: Option<String>,
    x: Option<String>,
    n: Option<u32>,
) -> Result<ExitCode, (u8, String)> {
    let p = cfg.params;
    let q = p.qbase();
    let need = |arg: &Option<String>, name: &str| -> Result<Complex64, (u8, String)> {
        let s = arg
            .as_ref()
            .ok_or_else(|| (2u8, format!("eval --kind {kind} requires --{name}")))?;
        parse_complex(s).map_err(|e| (2u8, e))
    };
    let record = match kind {
        "phi" => {
            let g = need(&gamma, "gamma")?;
            let xx = need(&x, "x")?;
            let v = awcore::aw_function_repr(&p, g, xx, cfg.eps, Representation::Auto)
                .map_err(|e| (1u8, e.to_string()))?;
            serde_json::json!({
                "kind": "phi", "gamma": [g.re, g.im], "x": [xx.re, xx.im],
                "value": [v.value.re, v.value.im], "err_bound": v.err_bound,
                "representation": v.representation,
            })
        }
        "poly" => {
            let nn = n.ok_or((2u8, "eval --kind poly requires --n".to_string()))?;
            let xx = need(&x, "x")?;
            let v = awcore::aw_polynomial(&p, nn, xx).map_err(|e| (1u8, e.to_string()))?;
            serde_json::json!({
                "kind": "poly", "n": nn, "x": [xx.re, xx.im],
                "value": [v.re, v.im], "err_bound": 0.0,
                "representation": "terminating series",
            })
        }
        "c" => {
            let g = need(&gamma, "gamma")?;
            let v = awcore::c_function(&p, g, cfg.eps).map_err(|e| (1u8, e.to_string()))?;
            serde_json::json!({
                "kind": "c", "gamma": [g.re, g.im],
                "value": [v.value.re, v.value.im], "err_bound": v.err_bound,
                "representation": "product form",
            })
        }
        "weightW" | "weightDelta" => {
            let xx = need(&x, "x")?;
            let v = if kind == "weightW" {
                measure::weight_w(&p, xx, cfg.eps)
            } else {
                measure::weight_delta(&p, xx, cfg.eps)
            }
            .map_err(|e| (1u8, e.to_string()))?;
            serde_json::json!({
                "kind": kind, "x": [xx.re, xx.im],
                "value": [v.value.re, v.value.im], "err_bound": v.err_bound,
                "representation": "product form",
            })
        }
        "theta" => {
            let xx = need(&x, "x")?;
            let v = awft_core::qseries::theta(xx, q, cfg.eps).map_err(|e| (1u8, e.to_string()))?;
            serde_json::json!({
                "kind": "theta", "x": [xx.re, xx.im],
                "value": [v.value.re, v.value.im], "err_bound": v.err_bound,
                "representation": "product form",
            })
        }
        other => return Err((2, format!("unknown eval kind {other:?}"))),
    };
    let text = if cfg.format == "csv" {
        let v = &record["value"];
        format!(
            "kind,value_re,value_im,err_bound,representation\n{},{:.16e},{:.16e},{:.3e},{}\n",
            kind,
            v[0].as_f64().unwrap_or(f64::NAN),
            v[1].as_f64().unwrap_or(f64::NAN),
            record["err_bound"].as_f64().unwrap_or(f64::NAN),
            record["representation"].as_str().unwrap_or("")
        )
    } else {
        serde_json::to_string_pretty(&record).unwrap()
    };
    emit(cfg, text).map_err(|e| (1u8, e.to_string()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_dual(cfg: &RunConfig) -> Result<ExitCode, (u8, String)> {
    let pd = cfg.params.dual();
    let (ok, violations) = awcore::validate_v(&pd);
    let record = serde_json::json!({
        "params": cfg.params,
        "dual": pd,
        "dual_in_v": ok,
        "violations": violations,
    });
    emit(cfg, serde_json::to_string_pretty(&record).unwrap()).map_err(|e| (1u8, e.to_string()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_weights(cfg: &RunConfig) -> Result<ExitCode, (u8, String)> {
    let meas = Measure::build(&cfg.spec()).map_err(|e| (1u8, e.to_string()))?;
    if cfg.format == "csv" {
        let text = format!("{}\n{}", measure::density_csv(&meas), measure::atoms_csv(&meas));
        emit(cfg, text).map_err(|e| (1u8, e.to_string()))?;
    } else {
        let text = serde_json::to_string_pretty(&measure::weights_json(&meas)).unwrap();
        emit(cfg, text).map_err(|e| (1u8, e.to_string()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_test_function(atoms: &[String], bump: &Option<String>) -> Result<TestFunction, String> {
    let mut f = TestFunction::zero();
    for spec in atoms {
        let (k, v) = spec
            .split_once('=')
            .ok_or_else(|| format!("--atom expects K=VALUE, got {spec:?}"))?;
        let k: i64 = k.trim().parse().map_err(|e| format!("bad atom index {k:?}: {e}"))?;
        let v: f64 = v.trim().parse().map_err(|e| format!("bad atom value {v:?}: {e}"))?;
        f.minus.insert(k, v);
    }
    if let Some(b) = bump {
        let (c, w) = b
            .split_once(',')
            .ok_or_else(|| format!("--bump expects CENTER,WIDTH, got {b:?}"))?;
        let c: f64 = c.trim().parse().map_err(|e| format!("bad bump center: {e}"))?;
        let w: f64 = w.trim().parse().map_err(|e| format!("bad bump width: {e}"))?;
        let bump_fn = TestFunction::cos2_bump(c, w);
        f.circle = bump_fn.circle;
    }
    if f.is_zero() {
        return Err("transform input is empty; pass --atom and/or --bump".into());
    }
    Ok(f)
}

fn cmd_transform(
    cfg: &RunConfig,
    atoms: &[String],
    bump: &Option<String>,
) -> Result<ExitCode, (u8, String)> {
    let f = parse_test_function(atoms, bump).map_err(|e| (2u8, e))?;
    let spec = cfg.spec();
    let meas = Measure::build(&spec).map_err(|e| (1u8, e.to_string()))?;
    let dual_meas =
        Measure::build(&spec.dual(cfg.dual_k_min)).map_err(|e| (1u8, e.to_string()))?;
    let sf = transform::forward_sample(&cfg.params, &f, &meas, &dual_meas, cfg.eps)
        .map_err(|e| (1u8, e.to_string()))?;
    if cfg.format == "csv" {
        let mut text = String::from("theta,gamma_re,gamma_im,value\n");
        for (j, &th) in dual_meas.theta_nodes.iter().enumerate() {
            text.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e}\n",
                th,
                th.cos(),
                th.sin(),
                sf.circle[j]
            ));
        }
        text.push_str("\nk,gamma,value\n");
        for (i, a) in dual_meas.plus.iter().enumerate() {
            text.push_str(&format!("{},{:.16e},{:.16e}\n", a.k, a.x, sf.plus[i]));
        }
        for (i, a) in dual_meas.minus.iter().enumerate() {
            text.push_str(&format!("{},{:.16e},{:.16e}\n", a.k, a.x, sf.minus[i]));
        }
        emit(cfg, text).map_err(|e| (1u8, e.to_string()))?;
    } else {
        let record = serde_json::json!({
            "spec": spec,
            "dual_k_min": cfg.dual_k_min,
            "gamma_circle": dual_meas.theta_nodes.iter().zip(sf.circle.iter())
                .map(|(&t, &v)| serde_json::json!([t, v])).collect::<Vec<_>>(),
            "gamma_atoms": dual_meas.plus.iter().zip(sf.plus.iter())
                .chain(dual_meas.minus.iter().zip(sf.minus.iter()))
                .map(|(a, &v)| serde_json::json!({"k": a.k, "gamma": a.x, "value": v}))
                .collect::<Vec<_>>(),
        });
        emit(cfg, serde_json::to_string_pretty(&record).unwrap())
            .map_err(|e| (1u8, e.to_string()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cfg: &RunConfig, suite: &str) -> Result<ExitCode, (u8, String)> {
    let vcfg = VerifyConfig {
        params: cfg.params,
        eps: cfg.eps,
        quad_points: cfg.quad_points,
        k_min: cfg.k_min,
        dual_k_min: cfg.dual_k_min,
        faults: cfg.faults,
    };
    let reports = suites::run_suite(suite, &vcfg).map_err(|e| match e {
        AwError::InvalidInput(_) | AwError::InvalidParams(_) => (2u8, e.to_string()),
        other => (1u8, other.to_string()),
    })?;
    let mut lines = String::new();
    let mut failures = 0usize;
    for r in &reports {
        if !r.pass {
            failures += 1;
        }
        lines.push_str(&serde_json::to_string(r).unwrap());
        lines.push('\n');
    }
    match &cfg.out {
        Some(p) => std::fs::write(p, &lines).map_err(|e| (1u8, e.to_string()))?,
        None => print!("{lines}"),
    }
    eprintln!(
        "{} checks, {} failed ({} suite{})",
        reports.len(),
        failures,
        suite,
        if suite == "all" { "s" } else { "" }
    );
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load_config(&cli) {
        Ok(c) => c,
        Err((code, msg)) => return fail(code, msg),
    };
    let result = match &cli.cmd {
        Cmd::Eval { kind, gamma, x, n } => cmd_eval(&cfg, kind, gamma.clone(), x.clone(), *n),
        Cmd::Dual => cmd_dual(&cfg),
        Cmd::Weights => cmd_weights(&cfg),
        Cmd::Transform { atoms, bump } => cmd_transform(&cfg, atoms, bump),
        Cmd::Verify { suite } => cmd_verify(&cfg, suite),
    };
    match result {
        Ok(code) => code,
        Err((code, msg)) => fail(code, msg),
    }
}
