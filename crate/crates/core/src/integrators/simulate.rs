use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::mlcp::{Solver, SolverOptions};
use crate::scalar::Scalar;
use crate::systems::{LinearSignSystem, SignSystem};

use super::{step_explicit, step_linear, step_newton, step_zoh, SchemeConfig, StepOutcome, ZohMode, ZohPair};

/// A one-step map advanced by [`simulate`].
pub trait Stepper<T: Scalar> {
    fn state_dim(&self) -> usize;
    fn surface_dim(&self) -> usize;
    /// Width of the control columns, `None` when the loop has no controller.
    fn control_dim(&self) -> Option<usize> {
        None
    }
    fn output(&self, x: &DVector<T>) -> Result<DVector<T>>;
    /// Advances from `(t_k, x_k)`; `s_k` is the previous selection.
    fn step(&mut self, k: usize, t_k: T, x_k: &DVector<T>, s_k: &DVector<T>) -> Result<StepOutcome<T>>;
}

/// θ-scheme for a linear system, one MLCP per step.
pub struct LinearImplicit<'a, T: Scalar> {
    pub sys: &'a LinearSignSystem<T>,
    pub cfg: SchemeConfig<T>,
}

impl<T: Scalar> Stepper<T> for LinearImplicit<'_, T> {
    fn state_dim(&self) -> usize {
        self.sys.n()
    }
    fn surface_dim(&self) -> usize {
        self.sys.m()
    }
    fn output(&self, x: &DVector<T>) -> Result<DVector<T>> {
        self.sys.output(x)
    }
    fn step(&mut self, _k: usize, _t: T, x_k: &DVector<T>, s_k: &DVector<T>) -> Result<StepOutcome<T>> {
        step_linear(self.sys, x_k, &self.cfg, Some(s_k))
    }
}

/// Forward Euler with `sgn(0) = 0`.
pub struct LinearExplicit<'a, T: Scalar> {
    pub sys: &'a LinearSignSystem<T>,
    pub h: T,
}

impl<T: Scalar> Stepper<T> for LinearExplicit<'_, T> {
    fn state_dim(&self) -> usize {
        self.sys.n()
    }
    fn surface_dim(&self) -> usize {
        self.sys.m()
    }
    fn output(&self, x: &DVector<T>) -> Result<DVector<T>> {
        self.sys.output(x)
    }
    fn step(&mut self, _k: usize, _t: T, x_k: &DVector<T>, _s: &DVector<T>) -> Result<StepOutcome<T>> {
        let (x, s) = step_explicit(self.sys, x_k, self.h)?;
        let y = self.sys.output(&x)?;
        Ok(StepOutcome {
            x,
            s,
            y,
            u: None,
            iterations: 0,
        })
    }
}

/// Newton + MLCP scheme for any [`SignSystem`].
pub struct NewtonStepper<'a, T: Scalar, S: SignSystem<T> + ?Sized> {
    pub sys: &'a S,
    pub cfg: SchemeConfig<T>,
}

impl<T: Scalar, S: SignSystem<T> + ?Sized> Stepper<T> for NewtonStepper<'_, T, S> {
    fn state_dim(&self) -> usize {
        self.sys.state_dim()
    }
    fn surface_dim(&self) -> usize {
        self.sys.surface_dim()
    }
    fn output(&self, x: &DVector<T>) -> Result<DVector<T>> {
        self.sys.output(x)
    }
    fn step(&mut self, _k: usize, t_k: T, x_k: &DVector<T>, s_k: &DVector<T>) -> Result<StepOutcome<T>> {
        step_newton(self.sys, x_k, s_k, t_k, &self.cfg)
    }
}

/// Sampled loop `x_{k+1} = Φx_k − Γs` with surfaces `Cx + D`.
pub struct ZohStepper<'a, T: Scalar> {
    pub pair: &'a ZohPair<T>,
    pub c: nalgebra::DMatrix<T>,
    pub d: DVector<T>,
    pub mode: ZohMode,
    pub solver: Solver,
    pub opts: SolverOptions<T>,
}

impl<T: Scalar> Stepper<T> for ZohStepper<'_, T> {
    fn state_dim(&self) -> usize {
        self.pair.state_dim()
    }
    fn surface_dim(&self) -> usize {
        self.c.nrows()
    }
    fn output(&self, x: &DVector<T>) -> Result<DVector<T>> {
        if x.len() != self.c.ncols() {
            return Err(Error::dims("state", self.c.ncols(), x.len()));
        }
        Ok(&self.c * x + &self.d)
    }
    fn step(&mut self, _k: usize, _t: T, x_k: &DVector<T>, s_k: &DVector<T>) -> Result<StepOutcome<T>> {
        step_zoh(
            self.pair,
            &self.c,
            &self.d,
            x_k,
            self.mode,
            self.solver,
            &self.opts,
            Some(s_k),
        )
    }
}

/// Result of a time loop: the trajectory up to the last successful step and
/// the error that stopped it early, if any.
#[derive(Debug)]
pub struct Simulation<T: Scalar> {
    pub trajectory: super::Trajectory<T>,
    pub failure: Option<Error>,
}

impl<T: Scalar> Simulation<T> {
    pub fn completed(&self) -> bool {
        self.failure.is_none()
    }

    /// The trajectory, or the failure if the run stopped early.
    pub fn into_result(self) -> Result<super::Trajectory<T>> {
        match self.failure {
            None => Ok(self.trajectory),
            Some(e) => Err(e),
        }
    }
}

/// Number of uniform steps covering `[t0, t_end]`: `⌈(t_end − t0)/h⌉`, with a
/// relative slack of `1e-9` so that a horizon that is an exact multiple of `h`
/// in decimal is not pushed one step further by rounding.
pub fn step_count<T: Scalar>(t0: T, t_end: T, h: T) -> usize {
    let ratio = ((t_end - t0) / h).to_f64_lossy();
    (ratio - 1e-9 * ratio.abs().max(1.0)).ceil().max(0.0) as usize
}

/// Runs `stepper` on the grid `t_k = t0 + k h`, `k = 0..=N`.
pub fn simulate<T: Scalar, S: Stepper<T> + ?Sized>(
    stepper: &mut S,
    x0: &DVector<T>,
    t0: T,
    t_end: T,
    h: T,
) -> Result<Simulation<T>> {
    if !(h > T::zero()) {
        return Err(Error::InvalidConfig("step size must be positive".into()));
    }
    if t_end < t0 {
        return Err(Error::InvalidConfig(format!(
            "final time {t_end} precedes initial time {t0}"
        )));
    }
    if x0.len() != stepper.state_dim() {
        return Err(Error::dims("initial state", stepper.state_dim(), x0.len()));
    }
    let steps = step_count(t0, t_end, h);
    let y0 = stepper.output(x0)?;
    let mut traj = super::Trajectory::start(t0, x0.clone(), y0, stepper.control_dim());
    for k in 0..steps {
        let t_k = t0 + h * T::from_usize(k).expect("step index fits scalar");
        let x_k = traj.states[k].clone();
        let s_k = traj.selections[k].clone();
        match stepper.step(k, t_k, &x_k, &s_k) {
            Ok(o) => {
                let t_next = t0 + h * T::from_usize(k + 1).expect("step index fits scalar");
                traj.push(t_next, o.x, o.s, o.y, o.u, o.iterations);
            }
            Err(e) => {
                log::warn!("step {k} at t = {t_k} failed: {e}");
                return Ok(Simulation {
                    trajectory: traj,
                    failure: Some(Error::Step {
                        step: k,
                        time: t_k.to_f64_lossy(),
                        source: Box::new(e),
                    }),
                });
            }
        }
    }
    Ok(Simulation {
        trajectory: traj,
        failure: None,
    })
}
