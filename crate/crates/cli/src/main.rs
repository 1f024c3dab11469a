use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use blockade_cli::api::{self, ServiceConfig, BUDGET_ENV};
use blockade_cli::ops::{self, CertifyEpsilonRequest, CertifyLbRequest, ConstructRequest, SolveRequest};
use blockade_cli::svg::{self, Scene};
use blockade_core::lb::Construction;
use blockade_core::{certify_construction, conjecture_probe, regular_ngon, Error, PointSet, SolverConfig};
use clap::{Parser, Subcommand};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "blockade", version, about = "Blocking sets of Delaunay triangulations, in exact arithmetic")]
struct Cli {
    /// Print JSON on one line.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a construction: p0, c0prime or alt3k.
    Construct {
        kind: String,
        #[arg(long)]
        k: i64,
        /// Perturbation for c0prime; `auto` certifies one.
        #[arg(long)]
        tau: Option<String>,
        /// Also write a drawing.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Certify a perturbation parameter for k gadgets.
    Certify {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        emit_polys: bool,
        #[arg(long)]
        resume_tau: Option<String>,
    },
    /// Lower-bound certificate for a named construction.
    CertifyLb {
        #[arg(long)]
        construction: Construction,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        tau: Option<String>,
        /// Include per-group bounds, the overlap graph and the cells.
        #[arg(long)]
        explain: bool,
    },
    /// Search for a small blocking set of a point set.
    Solve {
        /// PointSet JSON, `-` for stdin.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        exterior: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of greedy rounds.
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = 4)]
        density: usize,
    },
    /// Look for a blocking set of size |P| for a convex point set.
    Probe {
        /// Regular polygon with this many vertices.
        #[arg(long, conflicts_with_all = ["input", "construction"])]
        ngon: Option<usize>,
        #[arg(long, conflicts_with = "construction")]
        input: Option<PathBuf>,
        /// Probe a construction and report its certified exterior bound.
        #[arg(long, requires = "k")]
        construction: Option<Construction>,
        #[arg(long)]
        k: Option<i64>,
        /// Number of strategies to try.
        #[arg(long, default_value_t = 6)]
        budget: usize,
    },
    /// Draw a scene (PointSet JSON with optional circles and Q) or a construction as SVG.
    Render {
        #[arg(long, conflicts_with = "kind")]
        input: Option<PathBuf>,
        #[arg(long, requires = "k")]
        kind: Option<String>,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        tau: Option<String>,
        /// Destination file; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long)]
        static_dir: Option<PathBuf>,
    },
}

fn read_input(path: &PathBuf) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("input does not match the schema: {e}")))
}

fn deadline() -> Option<Instant> {
    std::env::var(BUDGET_ENV).ok()?;
    Some(Instant::now() + api::budget_from_env())
}

fn emit<T: Serialize>(v: &T, compact: bool) -> anyhow::Result<()> {
    let s = if compact { serde_json::to_string(v)? } else { serde_json::to_string_pretty(v)? };
    println!("{s}");
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let compact = cli.compact;
    match cli.cmd {
        Cmd::Construct { kind, k, tau, svg: svg_path } => {
            let out = ops::construct(&ConstructRequest { kind, k, tau }, deadline())?;
            if let Some(path) = svg_path {
                let scene = Scene { points: out.set.clone(), family: out.family.clone(), q: None, hull: true };
                std::fs::write(&path, svg::render(&scene)).with_context(|| format!("writing {}", path.display()))?;
            }
            emit(&out, compact)
        }
        Cmd::Certify { k, emit_polys, resume_tau } => {
            let out = ops::certify_epsilon(&CertifyEpsilonRequest { k, resume_tau, emit_polys }, deadline())?;
            emit(&out, compact)
        }
        Cmd::CertifyLb { construction, k, tau, explain } => {
            let out = ops::certify_lb(&CertifyLbRequest { construction, k, tau, explain }, deadline())?;
            emit(&out, compact)
        }
        Cmd::Solve { input, exterior, seed, budget, density } => {
            let p: PointSet = parse_json(&read_input(&input)?)?;
            let config = SolverConfig { exterior_only: exterior, candidate_density: density, max_rounds: budget, seed };
            emit(&ops::solve(&SolveRequest { p, config })?, compact)
        }
        Cmd::Probe { ngon, input, construction, k, budget } => {
            let (p, bound) = match (ngon, input, construction) {
                (Some(n), _, _) => (regular_ngon(n), None),
                (_, Some(path), _) => (parse_json(&read_input(&path)?)?, None),
                (_, _, Some(c)) => {
                    let cert = certify_construction(c, k.expect("clap requires k"), None)?;
                    (cert.points, Some(cert.bound))
                }
                _ => anyhow::bail!("one of --ngon, --input or --construction is required"),
            };
            let mut report = conjecture_probe(&p, budget)?;
            report.certified_exterior_bound = bound;
            emit(&report, compact)
        }
        Cmd::Render { input, kind, k, tau, output } => {
            let scene = match (input, kind) {
                (Some(path), _) => parse_json::<Scene>(&read_input(&path)?)?,
                (_, Some(kind)) => {
                    let out =
                        ops::construct(&ConstructRequest { kind, k: k.expect("clap requires k"), tau }, deadline())?;
                    Scene { points: out.set, family: out.family, q: None, hull: true }
                }
                _ => anyhow::bail!("one of --input or --kind is required"),
            };
            let doc = svg::render(&scene);
            match output {
                Some(path) => std::fs::write(&path, doc).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{doc}"),
            }
            Ok(())
        }
        Cmd::Serve { port, static_dir } => {
            let cfg = ServiceConfig { budget: api::budget_from_env(), static_dir };
            let rt = tokio::runtime::Runtime::new()?;
            eprintln!("listening on port {port}");
            rt.block_on(api::serve(port, cfg))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let body = match e.downcast_ref::<Error>() {
                Some(err) => api::error_body(err),
                None => serde_json::json!({
                    "ok": false,
                    "error": { "code": "Io", "message": format!("{e:#}"), "detail": null }
                }),
            };
            eprintln!("{body}");
            ExitCode::FAILURE
        }
    }
}
