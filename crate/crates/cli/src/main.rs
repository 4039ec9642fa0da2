//! Command-line front end: query commands over polygon files with text or
//! SVG output. All output is deterministic for a fixed input and flag set.

mod svg;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use repulse_core::decomp::decompose;
use repulse_core::flow::flow_diagram;
use repulse_core::generate::random_convex_polygon;
use repulse_core::io;
use repulse_core::planner::plan_gather;
use repulse_core::sim::{
    initial_particles, simulate_activation, ActivationTrace, ParticleMode,
};
use repulse_core::sweep::find_1_gather_point;
use repulse_core::{pt, ConvexPolygon, Error, Tol};

#[derive(Parser)]
#[command(
    name = "repulse",
    version,
    about = "Particle gathering by repulsion in convex polygons"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Emit an SVG figure instead of text
    #[arg(long, global = true)]
    svg: bool,

    /// Write output to this file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Absolute geometric tolerance override (must be positive)
    #[arg(long, global = true, value_name = "X")]
    tol: Option<f64>,

    /// Simulated particles per edge; 1 places them on vertices only
    #[arg(long, global = true, value_name = "K", default_value_t = 1)]
    samples: usize,

    /// Generate the polygon from this seed; POLYGON then gives the vertex
    /// count (default 8) instead of a file path
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Flow diagram for an actuator inside the polygon
    Flow {
        /// Polygon file (or vertex count under --seed)
        polygon: String,
        /// Actuator x coordinate
        x: f64,
        /// Actuator y coordinate
        y: f64,
    },
    /// Slab decomposition cells that gather in one activation
    Kernel { polygon: String },
    /// Search the boundary for a one-activation gather point
    Check1 { polygon: String },
    /// Produce a gather plan with at most two activations
    Plan { polygon: String },
    /// Run a plan file against a fresh particle system
    Simulate { polygon: String, plan: String },
}

/// Bad invocation (exit 2), as opposed to a domain failure (exit 1).
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for Usage {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Internal(_)) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn load_polygon(cli: &Cli, arg: &str) -> Result<ConvexPolygon> {
    let verts = match cli.seed {
        Some(seed) => {
            let n: usize = arg
                .parse()
                .map_err(|_| Usage(format!("--seed expects a vertex count, got `{arg}`")))?;
            if n < 3 {
                return Err(Usage(format!("vertex count {n} is below 3")).into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_convex_polygon(&mut rng, n).vertices().to_vec()
        }
        None => {
            let text = fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
            io::parse_polygon(&text)?.vertices().to_vec()
        }
    };
    let poly = match cli.tol {
        Some(x) if x > 0.0 => {
            ConvexPolygon::with_tol(verts, Tol { abs: x, ..Tol::default() })?
        }
        Some(x) => return Err(Usage(format!("--tol must be positive, got {x}")).into()),
        None => ConvexPolygon::new(verts)?,
    };
    Ok(poly)
}

fn particle_mode(cli: &Cli) -> Result<ParticleMode> {
    match cli.samples {
        0 => Err(Usage("--samples must be at least 1".into()).into()),
        1 => Ok(ParticleMode::VerticesOnly),
        k => Ok(ParticleMode::BoundarySampled(k)),
    }
}

fn emit(cli: &Cli, text: String) -> Result<()> {
    match &cli.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    let output = match &cli.cmd {
        Cmd::Flow { polygon, x, y } => {
            let poly = load_polygon(cli, polygon)?;
            let fd = flow_diagram(&poly, pt(*x, *y))?;
            if cli.svg {
                svg::flow_figure(&poly, &fd)
            } else {
                io::write_flow(&poly, &fd)
            }
        }
        Cmd::Kernel { polygon } => {
            let poly = load_polygon(cli, polygon)?;
            let d = decompose(&poly)?;
            if cli.svg {
                svg::kernel_figure(&poly, &d)
            } else {
                let mut out = String::new();
                for (rank, cell) in d.kernel_cells().enumerate() {
                    let slabs: Vec<String> =
                        cell.slabs.iter().map(|s| s.to_string()).collect();
                    out.push_str(&format!(
                        "# kernel cell {rank}, slab {}\n",
                        slabs.join(",")
                    ));
                    for v in &cell.verts {
                        out.push_str(&format!("{} {}\n", v.x, v.y));
                    }
                    out.push('\n');
                }
                if d.kernel.is_empty() {
                    out.push_str(
                        "# kernel is empty: no interior point gathers in one \
                         activation\n# boundary witnesses may still exist; try \
                         `check1`\n",
                    );
                }
                out
            }
        }
        Cmd::Check1 { polygon } => {
            let poly = load_polygon(cli, polygon)?;
            let witness = find_1_gather_point(&poly)?;
            if cli.svg {
                svg::check1_figure(&poly, witness.as_ref())
            } else {
                match witness {
                    Some(w) => {
                        let p = poly.boundary_eval(w.location);
                        format!(
                            "witness edge {} t {} at {} {} gathers vertex {}\n",
                            w.location.edge, w.location.t, p.x, p.y, w.gather_vertex
                        )
                    }
                    None => "none\n".to_string(),
                }
            }
        }
        Cmd::Plan { polygon } => {
            let poly = load_polygon(cli, polygon)?;
            let plan = plan_gather(&poly)?;
            if cli.svg {
                svg::plan_figure(&poly, &plan)
            } else {
                io::write_plan(&poly, &plan)
            }
        }
        Cmd::Simulate { polygon, plan } => {
            let poly = load_polygon(cli, polygon)?;
            let text = fs::read_to_string(plan).with_context(|| format!("reading {plan}"))?;
            let plan = io::parse_plan(&text)?;
            if plan.activations.is_empty() {
                return Err(Error::EmptyPlan.into());
            }
            let mode = particle_mode(cli)?;
            let mut system = initial_particles(&poly, mode);
            let mut traces: Vec<ActivationTrace> = Vec::new();
            for (i, w) in plan.activations.iter().enumerate() {
                let (next, trace) = simulate_activation(&poly, &system, *w, i == 0)?;
                system = next;
                traces.push(trace);
            }
            let verdict = if system.len() == 1 {
                let at = system.occupied(&poly)[0];
                format!("gathered {} {}", at.x, at.y)
            } else {
                format!("not gathered: {} particles remain", system.len())
            };
            if cli.svg {
                svg::trace_figure(&poly, &traces, &verdict)
            } else {
                let mut out = format!("{verdict}\n");
                out.push_str(&io::write_traces(&poly, &traces));
                out
            }
        }
    };
    emit(cli, output)
}
