//! Resolving overrides, running an experiment and writing its files.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context};
use multisurf::analysis::{
    error_norms, log_spaced, simple_selection_reference, simple_state_reference, write_convergence_csv,
    ConvergencePoint,
};
use multisurf::controllers::{EcbSmcController, LyapunovLoop};
use multisurf::integrators::{
    simulate, LinearExplicit, LinearImplicit, NewtonStepper, SchemeConfig, Simulation, Stepper, ZohMode,
};
use multisurf::mlcp::Solver;
use multisurf::systems::LinearSignSystem;
use multisurf::TrajectoryF64;
use nalgebra::DVector;

use crate::models;
use crate::properties::{evaluate, expected_tags, Evidence, Property};
use crate::registry::{ExperimentSpec, Model, Scheme};

/// Per-run flags; `None` keeps the registry default.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub h: Option<f64>,
    pub t_end: Option<f64>,
    pub theta: Option<f64>,
    pub gamma: Option<f64>,
    pub scheme: Option<Scheme>,
    pub x0: Option<Vec<f64>>,
    pub solver: Option<Solver>,
    pub params: Vec<(String, f64)>,
}

/// Effective parameters of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub name: &'static str,
    pub model: Model,
    pub h: f64,
    pub t_end: f64,
    pub x0: Vec<f64>,
    pub scheme: Scheme,
    pub theta: f64,
    pub gamma: f64,
    pub solver: Solver,
    pub params: BTreeMap<&'static str, f64>,
}

impl RunConfig {
    pub fn resolve(spec: &ExperimentSpec, ov: &Overrides) -> anyhow::Result<Self> {
        let mut params = spec.params.clone();
        for (k, v) in &ov.params {
            let Some(slot) = params.iter_mut().find(|(name, _)| **name == k.as_str()).map(|(_, v)| v) else {
                let known: Vec<_> = spec.params.keys().collect();
                bail!("experiment '{}' has no parameter '{k}' (known: {known:?})", spec.name);
            };
            *slot = *v;
        }
        let cfg = RunConfig {
            name: spec.name,
            model: spec.model,
            h: ov.h.unwrap_or(spec.h),
            t_end: ov.t_end.unwrap_or(spec.t_end),
            x0: ov.x0.clone().unwrap_or_else(|| spec.x0.clone()),
            scheme: ov.scheme.unwrap_or(spec.scheme),
            theta: ov.theta.unwrap_or(spec.theta),
            gamma: ov.gamma.unwrap_or(spec.gamma),
            solver: ov.solver.unwrap_or_default(),
            params,
        };
        ensure!(
            cfg.h.is_finite() && cfg.h > 0.0,
            "step size must be positive, got {}",
            cfg.h
        );
        ensure!(
            cfg.t_end.is_finite() && cfg.t_end > 0.0,
            "horizon must be positive, got {}",
            cfg.t_end
        );
        ensure!(
            (0.0..=1.0).contains(&cfg.theta),
            "theta must lie in [0, 1], got {}",
            cfg.theta
        );
        ensure!(
            (0.0..=1.0).contains(&cfg.gamma),
            "gamma must lie in [0, 1], got {}",
            cfg.gamma
        );
        ensure!(
            cfg.x0.len() == spec.x0.len(),
            "experiment '{}' has {} states, got x0 of length {}",
            spec.name,
            spec.x0.len(),
            cfg.x0.len()
        );
        let scheme_ok = match cfg.model {
            Model::Convergence | Model::Hypomonotone => cfg.scheme == Scheme::Implicit,
            Model::ZohSiso | Model::ZohMimo | Model::Lyapunov => true,
            _ => matches!(cfg.scheme, Scheme::Implicit | Scheme::Explicit),
        };
        ensure!(
            scheme_ok,
            "experiment '{}' does not support scheme {}",
            spec.name,
            cfg.scheme
        );
        if cfg.model == Model::Convergence {
            ensure!(
                ov.h.is_none(),
                "the convergence sweep takes --param h_min=.. h_max=.. points=.. instead of --h"
            );
            let points = cfg.params["points"];
            ensure!(
                points >= 3.0 && points.fract() == 0.0,
                "points must be an integer of at least 3"
            );
        }
        if cfg.model == Model::Observer {
            ensure!(
                cfg.params["tau"] > 0.0 && cfg.params["k"] > 0.0,
                "observer needs tau > 0 and k > 0"
            );
        }
        Ok(cfg)
    }

    fn scheme_config(&self) -> SchemeConfig<f64> {
        SchemeConfig::implicit(self.h)
            .with_theta(self.theta)
            .with_gamma(self.gamma)
            .with_solver(self.solver)
    }

    fn zoh_mode(&self) -> ZohMode {
        if self.scheme.is_explicit() {
            ZohMode::Explicit
        } else {
            ZohMode::Implicit
        }
    }

    pub fn tags(&self) -> Vec<&'static str> {
        expected_tags(self.model, self.scheme, self.theta, self.gamma, self.h, &self.params)
    }
}

/// Everything a run produced.
#[derive(Debug)]
pub struct RunOutcome {
    pub config: RunConfig,
    pub trajectory: Option<TrajectoryF64>,
    /// Message of the step that stopped the run early.
    pub failure: Option<String>,
    pub convergence: Option<Vec<ConvergencePoint<f64>>>,
    pub errors_csv: Option<String>,
    pub properties: Vec<Property>,
}

impl RunOutcome {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.pass)
    }

    /// Writes `traj.csv`, `errors.csv` or `convergence.csv` as available.
    pub fn write(&self, dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut written = Vec::new();
        if let Some(traj) = &self.trajectory {
            let path = dir.join("traj.csv");
            traj.write_csv(BufWriter::new(File::create(&path)?))?;
            written.push(path);
        }
        if let Some(errors) = &self.errors_csv {
            let path = dir.join("errors.csv");
            fs::write(&path, errors)?;
            written.push(path);
        }
        if let Some(points) = &self.convergence {
            let path = dir.join("convergence.csv");
            write_convergence_csv(points, BufWriter::new(File::create(&path)?))?;
            written.push(path);
        }
        Ok(written)
    }
}

fn run_stepper<S: Stepper<f64> + ?Sized>(stepper: &mut S, cfg: &RunConfig) -> anyhow::Result<Simulation<f64>> {
    let x0 = DVector::from_column_slice(&cfg.x0);
    Ok(simulate(stepper, &x0, 0.0, cfg.t_end, cfg.h)?)
}

fn run_linear(sys: &LinearSignSystem<f64>, cfg: &RunConfig) -> anyhow::Result<Simulation<f64>> {
    if cfg.scheme == Scheme::Explicit {
        run_stepper(&mut LinearExplicit { sys, h: cfg.h }, cfg)
    } else {
        run_stepper(
            &mut LinearImplicit {
                sys,
                cfg: cfg.scheme_config(),
            },
            cfg,
        )
    }
}

fn simulate_model(cfg: &RunConfig) -> anyhow::Result<Simulation<f64>> {
    match cfg.model {
        Model::Simple => run_linear(&models::simple()?, cfg),
        Model::SingleSurface => run_linear(&models::single_surface(&cfg.params)?, cfg),
        Model::Multisurface => run_linear(&models::multisurface()?, cfg),
        Model::Filippov => run_linear(&models::filippov()?, cfg),
        Model::Observer => run_linear(&models::observer(&cfg.params)?, cfg),
        Model::ZohSiso | Model::ZohMimo => {
            let (f, g, c) = models::plant(cfg.model, &cfg.params);
            let mut ctl = EcbSmcController::new(f, g, c, cfg.params["alpha"], cfg.h, cfg.zoh_mode())?;
            ctl.solver = cfg.solver;
            run_stepper(&mut ctl, cfg)
        }
        Model::Lyapunov => {
            let sys = models::lyapunov(&cfg.params)?;
            let mut lp = LyapunovLoop {
                sys: &sys,
                cfg: cfg.scheme_config(),
                mode: cfg.zoh_mode(),
            };
            run_stepper(&mut lp, cfg)
        }
        Model::Hypomonotone => {
            let sys = models::hypomonotone()?;
            run_stepper(
                &mut NewtonStepper {
                    sys: &sys,
                    cfg: cfg.scheme_config(),
                },
                cfg,
            )
        }
        Model::Convergence => unreachable!("handled by the sweep"),
    }
}

/// Errors of the scalar example against its exact solution, as CSV.
fn simple_errors_csv(traj: &TrajectoryF64, x0: f64, h: f64) -> anyhow::Result<String> {
    let xs = traj.state_channel(0);
    let ss = traj.selection_channel(0);
    let ex: Vec<f64> = traj
        .times
        .iter()
        .zip(&xs)
        .map(|(&t, x)| x - simple_state_reference(x0, t))
        .collect();
    let es: Vec<f64> = traj
        .times
        .iter()
        .zip(&ss)
        .map(|(&t, s)| s - simple_selection_reference(x0, t))
        .collect();
    let mut out = String::from("t,e_x,e_s\n");
    for ((t, a), b) in traj.times.iter().zip(&ex).zip(&es) {
        out += &format!("{t:.16e},{a:.16e},{b:.16e}\n");
    }
    for (name, vals, reference) in [
        ("e_x", &xs, simple_state_reference as fn(f64, f64) -> f64),
        ("e_s", &ss, simple_selection_reference),
    ] {
        let r = error_norms(&traj.times, vals, h, |t| reference(x0, t))?;
        out += &format!(
            "# {name} inf={:.16e} l1={:.16e} l2={:.16e}\n",
            r.inf_norm, r.l1_norm, r.l2_norm
        );
    }
    Ok(out)
}

/// Selection error of the scalar example at each step size, one thread per point.
pub fn convergence_sweep(
    x0: f64,
    t_end: f64,
    hs: &[f64],
    solver: Solver,
) -> anyhow::Result<Vec<ConvergencePoint<f64>>> {
    let sys = models::simple()?;
    let x = DVector::from_element(1, x0);
    std::thread::scope(|scope| {
        let handles: Vec<_> = hs
            .iter()
            .map(|&h| {
                let (sys, x) = (&sys, &x);
                scope.spawn(move || -> anyhow::Result<ConvergencePoint<f64>> {
                    let mut st = LinearImplicit {
                        sys,
                        cfg: SchemeConfig::implicit(h).with_solver(solver),
                    };
                    let traj = simulate(&mut st, x, 0.0, t_end, h)?.into_result()?;
                    let report = error_norms(&traj.times, &traj.selection_channel(0), h, |t| {
                        simple_selection_reference(x0, t)
                    })?;
                    Ok(ConvergencePoint { h, report })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|hd| hd.join().expect("sweep worker panicked"))
            .collect()
    })
}

pub fn run(spec: &ExperimentSpec, ov: &Overrides) -> anyhow::Result<RunOutcome> {
    let config = RunConfig::resolve(spec, ov)?;
    let mut outcome = RunOutcome {
        config,
        trajectory: None,
        failure: None,
        convergence: None,
        errors_csv: None,
        properties: Vec::new(),
    };
    let cfg = &outcome.config;
    let mut completed = true;
    if cfg.model == Model::Convergence {
        let hs = log_spaced(cfg.params["h_min"], cfg.params["h_max"], cfg.params["points"] as usize)?;
        outcome.convergence = Some(convergence_sweep(cfg.x0[0], cfg.t_end, &hs, cfg.solver)?);
    } else {
        let sim = simulate_model(cfg)?;
        completed = sim.completed();
        outcome.failure = sim.failure.as_ref().map(ToString::to_string);
        if cfg.model == Model::Simple {
            outcome.errors_csv = Some(simple_errors_csv(&sim.trajectory, cfg.x0[0], cfg.h)?);
        }
        outcome.trajectory = Some(sim.trajectory);
    }
    let cfg = &outcome.config;
    let ev = Evidence {
        model: cfg.model,
        h: cfg.h,
        x0: &cfg.x0,
        params: &cfg.params,
        trajectory: outcome.trajectory.as_ref(),
        completed,
        convergence: outcome.convergence.as_deref(),
    };
    let properties = cfg.tags().into_iter().map(|t| evaluate(t, &ev)).collect();
    outcome.properties = properties;
    Ok(outcome)
}

pub fn run_named(name: &str, ov: &Overrides) -> anyhow::Result<RunOutcome> {
    let spec = crate::registry::find(name).with_context(|| {
        let names: Vec<_> = crate::registry::registry().iter().map(|e| e.name).collect();
        format!("unknown experiment '{name}' (available: {})", names.join(", "))
    })?;
    run(&spec, ov)
}

/// Integrates a linear system read from a JSON file; no properties are checked.
pub fn simulate_file(
    path: &Path,
    x0: &[f64],
    t_end: f64,
    scheme: Scheme,
    cfg: SchemeConfig<f64>,
) -> anyhow::Result<Simulation<f64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let sys = LinearSignSystem::<f64>::from_json_str(&text)?;
    ensure!(
        x0.len() == sys.n(),
        "system has {} states, got x0 of length {}",
        sys.n(),
        x0.len()
    );
    ensure!(t_end.is_finite() && t_end > 0.0, "horizon must be positive");
    cfg.validate()?;
    let x0 = DVector::from_column_slice(x0);
    let sim = match scheme {
        Scheme::Implicit => simulate(&mut LinearImplicit { sys: &sys, cfg }, &x0, 0.0, t_end, cfg.h)?,
        Scheme::Explicit => simulate(&mut LinearExplicit { sys: &sys, h: cfg.h }, &x0, 0.0, t_end, cfg.h)?,
        other => bail!("a system file supports implicit or explicit only, got {other}"),
    };
    Ok(sim)
}
