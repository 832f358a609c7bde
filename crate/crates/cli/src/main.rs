//! Experiment driver: runs the constructions and counts, emits CSV tables
//! and JSON artifacts.
//!
//! Exit codes: 0 success, 1 usage error, 2 construction/search failure
//! (with a machine-readable JSON error on stderr).

mod spec;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use lcl_core::affine::{affine_length_sup_seeded, DEFAULT_SUP_SEED};
use lcl_core::cf::find_suitable;
use lcl_core::chain::{build_chain, max_vertex_bound, verify_abc_broken_line};
use lcl_core::curve::{count_on_curve, synthesize};
use lcl_core::enumeration::{enumerate_with_girths, VectorClass};
use lcl_core::equidist::{count_pairs_bruteforce, count_pairs_fast, prediction, special_point_count};
use lcl_core::error::Error as CoreError;
use lcl_core::jsonio::{BrokenLineJson, CurveJson, SuitableTriangleJson, SCHEMA_VERSION};
use lcl_core::num::{cbrt, format_rational, to_f64, Rat};

#[derive(Parser)]
#[command(name = "lcl", about = "Lattice geometry of convex curves: experiments and counts", version)]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FrameArg {
    /// Frame vertices Ax,Ay,Bx,By,Cx,Cy (rationals as p/q)
    #[arg(long, value_name = "COORDS", allow_hyphen_values = true)]
    frame: String,
}

#[derive(Subcommand)]
enum Command {
    /// Girth sums of the k least-girth vectors against the asymptotic law
    GirthSum {
        #[command(flatten)]
        frame: FrameArg,
        #[arg(long)]
        k: usize,
    },
    /// Build the girth-greedy broken line on (Z/n)² and certify it
    Jarnik {
        #[command(flatten)]
        frame: FrameArg,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0.01)]
        c: f64,
        /// Re-verify all chain invariants and report the result
        #[arg(long)]
        verify: bool,
    },
    /// Count vector pairs with pseudoscalar product m in scaled domains
    Equidist {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: u64,
        /// Domain spec: tri:a or poly:x1,y1;x2,y2;…
        #[arg(long)]
        domain1: String,
        #[arg(long)]
        domain2: String,
        /// Cross-check against the brute-force counter (n <= 60)
        #[arg(long)]
        oracle: bool,
    },
    /// Count special girth-coordinate points of pairs with x×y = m
    SpecialPoints {
        #[command(flatten)]
        frame: FrameArg,
        #[arg(long)]
        m: i64,
        #[arg(long = "N")]
        n_scale: u64,
        /// Girth-space domain spec, in the open first quadrant
        #[arg(long)]
        omega: String,
    },
    /// Search for an ε-suitable basic triangle crossing the ray y = αx
    CfSuitable {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        bound: u64,
    },
    /// Synthesize a convex curve with per-stage lattice-point certificates
    Synth {
        /// Series spec: geometric:R or list:c1,c2,…
        #[arg(long)]
        series: String,
        #[arg(long)]
        stages: usize,
        /// Admissible lattice densities: all or list:q1,q2,…
        #[arg(long, default_value = "all")]
        admissible: String,
        /// Where to write the curve JSON
        #[arg(long, default_value = "curve.json")]
        out: String,
    },
    /// Count lattice points of (Z/n)² on a synthesized curve
    Count {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        n: u64,
        /// Emit the k(γ,n)/n^(2/3) decay table over a doubling schedule
        #[arg(long)]
        table: bool,
    },
    /// Affine-length deficit of girth-greedy chains over a doubling schedule
    Deficit {
        #[command(flatten)]
        frame: FrameArg,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0.01)]
        c: f64,
    },
}

#[derive(Serialize)]
struct JsonError<'a> {
    error: &'a str,
    kind: &'a str,
}

#[derive(Serialize)]
struct JarnikJson {
    schema_version: u32,
    line: BrokenLineJson,
    certificate: JarnikCertificate,
}

#[derive(Serialize)]
struct JarnikCertificate {
    intermediate_count: u64,
    required: u64,
    vertex_bound: f64,
    verified: Option<bool>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap would exit 2; usage problems are exit 1 here
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    if let Some(t) = cli.threads {
        if rayon::ThreadPoolBuilder::new().num_threads(t).build_global().is_err() {
            eprintln!("warning: thread pool already initialized");
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(RunError::Failed { kind, msg }) => {
            let payload = serde_json::to_string(&JsonError { error: &msg, kind }).unwrap();
            eprintln!("{payload}");
            ExitCode::from(2)
        }
    }
}

enum RunError {
    Usage(String),
    Failed { kind: &'static str, msg: String },
}

/// Writes a line to stdout, quietly ending the run on a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {
        if writeln!($($arg)*).is_err() {
            return Ok(());
        }
    };
}

impl From<CoreError> for RunError {
    fn from(e: CoreError) -> RunError {
        match e {
            CoreError::Construction(_) | CoreError::NoCrossing => {
                RunError::Failed { kind: "construction", msg: e.to_string() }
            }
            CoreError::SearchExhausted(_) => {
                RunError::Failed { kind: "search", msg: e.to_string() }
            }
            other => RunError::Usage(other.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> RunError {
    RunError::Usage(msg.into())
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.9}")
}

/// 1, 2, 4, …, then `n` itself when it is not a power of two.
fn doubling_schedule(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut v = 1u64;
    while v <= n {
        out.push(v);
        match v.checked_mul(2) {
            Some(next) => v = next,
            None => break,
        }
    }
    if *out.last().unwrap_or(&0) != n {
        out.push(n);
    }
    out
}

fn run(cmd: Command) -> Result<(), RunError> {
    let mut stdout = std::io::stdout().lock();
    match cmd {
        Command::GirthSum { frame, k } => {
            let f = spec::parse_frame(&frame.frame).map_err(usage)?;
            if k == 0 {
                return Err(usage("k must be at least 1"));
            }
            let with_girths = enumerate_with_girths(&f, k, VectorClass::All);
            let s_inv_sqrt = 1.0 / to_f64(f.doubled_area()).sqrt();
            let c = 2.0 * 2.0_f64.sqrt() / 3.0;
            out!(stdout, "k,sum,bound,ratio");
            let mut sum = Rat::from_integer(0.into());
            let mut next = 0usize;
            let schedule = doubling_schedule(k as u64);
            for (i, (_, g)) in with_girths.iter().enumerate() {
                sum += g;
                let kk = (i + 1) as u64;
                if next < schedule.len() && kk == schedule[next] {
                    next += 1;
                    let bound = c * s_inv_sqrt * (kk as f64).powf(1.5);
                    let ratio = to_f64(&sum) / bound;
                    out!(
                        stdout,
                        "{},{},{},{}",
                        kk,
                        format_rational(&sum),
                        fmt_f64(bound),
                        fmt_f64(ratio)
                    );
                }
            }
        }
        Command::Jarnik { frame, n, c, verify } => {
            let f = spec::parse_frame(&frame.frame).map_err(usage)?;
            let line = build_chain(&f, n, c)?;
            let required = (c * (to_f64(f.doubled_area()) * (n as f64) * (n as f64)).cbrt())
                .floor()
                .max(0.0) as u64;
            let verified = if verify {
                Some(verify_abc_broken_line(&line).is_ok())
            } else {
                None
            };
            let out = JarnikJson {
                schema_version: SCHEMA_VERSION,
                line: BrokenLineJson::from_line(&line),
                certificate: JarnikCertificate {
                    intermediate_count: line.intermediate_count() as u64,
                    required,
                    vertex_bound: max_vertex_bound(f.doubled_area(), n),
                    verified,
                },
            };
            out!(stdout, "{}", serde_json::to_string_pretty(&out).unwrap());
            if verified == Some(false) {
                return Err(RunError::Failed {
                    kind: "construction",
                    msg: "constructed chain failed verification".into(),
                });
            }
        }
        Command::Equidist { m, n, domain1, domain2, oracle } => {
            if m == 0 {
                return Err(usage("m must be nonzero"));
            }
            if oracle && n > 60 {
                return Err(usage("--oracle requires n <= 60"));
            }
            let om1 = spec::parse_domain(&domain1).map_err(usage)?;
            let om2 = spec::parse_domain(&domain2).map_err(usage)?;
            if oracle {
                out!(stdout, "n,count,oracle,prediction,ratio");
            } else {
                out!(stdout, "n,count,prediction,ratio");
            }
            for nn in doubling_schedule(n) {
                let count = count_pairs_fast(&om1, &om2, m, nn);
                let pred = prediction(&om1, &om2, m, nn);
                let ratio = if pred > 0.0 { count as f64 / pred } else { f64::NAN };
                if oracle {
                    let brute = count_pairs_bruteforce(&om1, &om2, m, nn);
                    if brute != count {
                        return Err(RunError::Failed {
                            kind: "construction",
                            msg: format!(
                                "fast counter disagrees with oracle at n={nn}: {count} vs {brute}"
                            ),
                        });
                    }
                    out!(
                        stdout,
                        "{nn},{count},{brute},{},{}",
                        fmt_f64(pred),
                        fmt_f64(ratio)
                    );
                } else {
                    out!(stdout, "{nn},{count},{},{}", fmt_f64(pred), fmt_f64(ratio));
                }
            }
        }
        Command::SpecialPoints { frame, m, n_scale, omega } => {
            let f = spec::parse_frame(&frame.frame).map_err(usage)?;
            let om = spec::parse_domain(&omega).map_err(usage)?;
            out!(stdout, "N,count,prediction,ratio");
            for nn in doubling_schedule(n_scale) {
                let pc = special_point_count(&f, m, nn, &om)?;
                let ratio = if pc.prediction > 0.0 {
                    pc.count as f64 / pc.prediction
                } else {
                    f64::NAN
                };
                out!(
                    stdout,
                    "{nn},{},{},{}",
                    pc.count,
                    fmt_f64(pc.prediction),
                    fmt_f64(ratio)
                );
            }
        }
        Command::CfSuitable { alpha, eps, bound } => {
            let ray = spec::parse_ray(&alpha).map_err(usage)?;
            let out = match find_suitable(&ray, eps, bound)? {
                Some(s) => SuitableTriangleJson::from_suitable(&s),
                None => SuitableTriangleJson::not_found(),
            };
            out!(stdout, "{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Command::Synth { series, stages, admissible, out } => {
            if stages == 0 {
                return Err(usage("stages must be at least 1"));
            }
            let series = spec::parse_series(&series, stages).map_err(usage)?;
            let adm = spec::parse_admissible(&admissible).map_err(usage)?;
            let curve = synthesize(&series, &adm, stages)?;
            let json = CurveJson::from_curve(&curve);
            std::fs::write(&out, serde_json::to_string_pretty(&json).unwrap())
                .map_err(|e| usage(format!("cannot write {out}: {e}")))?;
            out!(stdout, "stage,q,c,certified,required,count_on_curve");
            for (i, stage) in curve.stages.iter().enumerate() {
                let required = stage.c * (stage.q as f64).powf(2.0 / 3.0);
                let count = count_on_curve(&curve, stage.q);
                out!(
                    stdout,
                    "{},{},{},{},{},{}",
                    i + 1,
                    stage.q,
                    stage.c,
                    stage.certified_count,
                    fmt_f64(required),
                    count
                );
            }
        }
        Command::Count { curve, n, table } => {
            let text = std::fs::read_to_string(&curve)
                .map_err(|e| usage(format!("cannot read {curve}: {e}")))?;
            let json: CurveJson = serde_json::from_str(&text)
                .map_err(|e| usage(format!("invalid curve JSON: {e}")))?;
            let curve = json.to_curve()?;
            if table {
                out!(stdout, "n,count,normalized");
                for nn in doubling_schedule(n) {
                    let count = count_on_curve(&curve, nn);
                    let norm = to_f64(&Rat::from_integer(count.clone()))
                        / (nn as f64).powf(2.0 / 3.0);
                    out!(stdout, "{nn},{count},{}", fmt_f64(norm));
                }
            } else {
                out!(stdout, "{}", count_on_curve(&curve, n));
            }
        }
        Command::Deficit { frame, n, c } => {
            let f = spec::parse_frame(&frame.frame).map_err(usage)?;
            let seed = std::env::var("LCL_SEED")
                .ok()
                .and_then(|s| s.parse::<u64>().ok())
                .unwrap_or(DEFAULT_SUP_SEED);
            out!(stdout, "n,k,l_A,deficit");
            let s_cbrt = cbrt(f.doubled_area());
            for nn in doubling_schedule(n) {
                let line = match build_chain(&f, nn, c) {
                    Ok(line) => line,
                    Err(CoreError::InvalidInput(_)) => continue, // n too small for c
                    Err(e) => return Err(e.into()),
                };
                let est = affine_length_sup_seeded(&line, 1e-9, seed);
                out!(
                    stdout,
                    "{nn},{},{},{}",
                    line.intermediate_count(),
                    fmt_f64(est.value),
                    fmt_f64(s_cbrt - est.value)
                );
            }
        }
    }
    Ok(())
}
