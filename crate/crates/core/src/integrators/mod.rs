//! Time-stepping schemes for sign systems and their sampled-data variants.

mod config;
mod linear;
mod newton;
mod simulate;
mod trajectory;
mod zoh;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::mlcp::{self, from_sign_step, SignStepProblem, Solver, SolverOptions};
use crate::scalar::Scalar;

pub use config::SchemeConfig;
pub use linear::{step_explicit, step_linear};
pub use newton::step_newton;
pub use simulate::{
    simulate, step_count, LinearExplicit, LinearImplicit, NewtonStepper, Simulation, Stepper, ZohStepper,
};
pub use trajectory::Trajectory;
pub use zoh::{exp_and_integral, step_zoh, zoh_discretize, zoh_discretize_scaled, ZohMode, ZohPair};

/// State, selection and output after one step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome<T: Scalar> {
    pub x: DVector<T>,
    pub s: DVector<T>,
    pub y: DVector<T>,
    /// Control applied over the step, when a controller produced one.
    pub u: Option<DVector<T>>,
    pub iterations: usize,
}

/// Solves `y = −Ws + b`, `s ∈ Sgn(y)` and returns `s`.
pub fn solve_selection<T: Scalar>(
    w: DMatrix<T>,
    b: DVector<T>,
    solver: Solver,
    opts: &SolverOptions<T>,
    warm: Option<&DVector<T>>,
) -> Result<DVector<T>> {
    let problem = from_sign_step(&SignStepProblem::new(w, b)?);
    let sol = mlcp::solve(&problem, solver, opts, warm)?;
    if !sol.is_solved() {
        return Err(Error::Mlcp {
            status: sol.status,
            dump: problem.dump(),
        });
    }
    Ok(sol.z)
}
