use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use multisurf::analysis::convergence_slopes;
use multisurf::integrators::SchemeConfig;
use multisurf::mlcp::Solver;
use multisurf_cli::registry::{parse_param, parse_vector};
/// Parsed as one comma-separated value rather than a repeated flag.
type Floats = Vec<f64>;

use multisurf_cli::{registry, run_named, Overrides, RunOutcome, Scheme};

#[derive(Parser)]
#[command(
    name = "multisurf",
    version,
    about = "Time-stepping of sign-switching systems through box complementarity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a registered experiment and check its properties.
    Run {
        name: String,
        #[arg(long)]
        h: Option<f64>,
        /// Final time.
        #[arg(long = "T")]
        t_end: Option<f64>,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        /// implicit, explicit, zoh-implicit or zoh-explicit.
        #[arg(long)]
        scheme: Option<Scheme>,
        /// Initial state as v1,v2,...
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        x0: Option<Floats>,
        /// Output directory [default: out/<name>].
        #[arg(long)]
        out: Option<PathBuf>,
        /// enumerative, psor, pivot or auto.
        #[arg(long)]
        solver: Option<Solver>,
        /// Model constant override, key=value; repeatable.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, f64)>,
    },
    /// List registered experiments.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Step-size sweep of the scalar example.
    Convergence {
        #[arg(long, default_value_t = 1e-3)]
        h_min: f64,
        #[arg(long, default_value_t = 1e-1)]
        h_max: f64,
        #[arg(long, default_value_t = 8)]
        points: usize,
        #[arg(long, default_value = "out/convergence")]
        out: PathBuf,
    },
    /// Integrate a linear system given as JSON with keys E, a, B, C, D.
    Simulate {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        x0: Floats,
        #[arg(long)]
        h: f64,
        #[arg(long = "T")]
        t_end: f64,
        #[arg(long, default_value_t = 1.0)]
        theta: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value = "implicit")]
        scheme: Scheme,
        #[arg(long, default_value = "auto")]
        solver: Solver,
        #[arg(long, default_value = "out/simulate")]
        out: PathBuf,
    },
}

fn report(outcome: &RunOutcome) {
    let c = &outcome.config;
    println!(
        "{}: scheme {} h={} T={} theta={} gamma={} x0={:?}",
        c.name, c.scheme, c.h, c.t_end, c.theta, c.gamma, c.x0
    );
    if let Some(f) = &outcome.failure {
        println!("  stopped early: {f}");
    }
    for p in &outcome.properties {
        println!("  {} {}: {}", if p.pass { "PASS" } else { "FAIL" }, p.tag, p.detail);
    }
}

fn verdict(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main_inner(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Run {
            name,
            h,
            t_end,
            theta,
            gamma,
            scheme,
            x0,
            out,
            solver,
            params,
        } => {
            let ov = Overrides {
                h,
                t_end,
                theta,
                gamma,
                scheme,
                x0,
                solver,
                params,
            };
            let outcome = run_named(&name, &ov)?;
            let dir = out.unwrap_or_else(|| PathBuf::from("out").join(outcome.config.name));
            report(&outcome);
            for path in outcome.write(&dir)? {
                println!("  wrote {}", path.display());
            }
            Ok(verdict(outcome.passed()))
        }
        Command::List { json } => {
            let entries = registry();
            if json {
                println!("{}", serde_json::to_string_pretty(&entries)?);
            } else {
                for e in &entries {
                    println!("{:<14} {} [{}]", e.name, e.description, e.tags.join(", "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Convergence {
            h_min,
            h_max,
            points,
            out,
        } => {
            let ov = Overrides {
                params: vec![
                    ("h_min".into(), h_min),
                    ("h_max".into(), h_max),
                    ("points".into(), points as f64),
                ],
                ..Overrides::default()
            };
            let outcome = run_named("convergence", &ov)?;
            report(&outcome);
            if let Some(pts) = &outcome.convergence {
                let s = convergence_slopes(pts)?;
                println!("  slopes: inf {:.4} l1 {:.4} l2 {:.4}", s.inf, s.l1, s.l2);
            }
            for path in outcome.write(&out)? {
                println!("  wrote {}", path.display());
            }
            Ok(verdict(outcome.passed()))
        }
        Command::Simulate {
            system,
            x0,
            h,
            t_end,
            theta,
            gamma,
            scheme,
            solver,
            out,
        } => {
            let cfg = SchemeConfig::implicit(h)
                .with_theta(theta)
                .with_gamma(gamma)
                .with_solver(solver);
            let sim = multisurf_cli::simulate_file(&system, &x0, t_end, scheme, cfg)?;
            if let Some(f) = &sim.failure {
                println!("stopped early: {f}");
            }
            std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let path = out.join("traj.csv");
            sim.trajectory
                .write_csv(std::io::BufWriter::new(std::fs::File::create(&path)?))?;
            println!("{} steps, wrote {}", sim.trajectory.steps(), path.display());
            Ok(verdict(sim.completed()))
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
