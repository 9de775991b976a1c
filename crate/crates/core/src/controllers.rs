//! Discrete-time sliding-mode controllers built on the integrators.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::integrators::{
    solve_selection, step_explicit, step_linear, SchemeConfig, StepOutcome, Stepper, ZohMode, ZohPair,
};
use crate::mlcp::{Solver, SolverOptions};
use crate::scalar::{clamp, sign0, Scalar};
use crate::systems::DisturbedLinearSystem;

/// Implicit controller of the scalar integrator `ẋ = u`:
/// `u_k = −proj_[−1,1](x_k / h)`.
pub fn iec_control<T: Scalar>(x_k: T, h: T) -> T {
    -clamp(x_k / h, -T::one(), T::one())
}

/// Control held over one sampling interval and the selection it consumed.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlRecord<T: Scalar> {
    pub u: DVector<T>,
    pub s_used: DVector<T>,
}

/// Equivalent-control sliding mode `u = −(CG)⁻¹(CFx + α Sgn(Cx))` under
/// zero-order hold on `ẋ = Fx + Gu`.
///
/// `α` is folded into `Γ`, so the selection stays in the unit box and the
/// realised control is `u_k = −(CG)⁻¹(CFx_k + α s)`.
#[derive(Debug, Clone)]
pub struct EcbSmcController<T: Scalar> {
    f: DMatrix<T>,
    g: DMatrix<T>,
    c: DMatrix<T>,
    alpha: T,
    cg_inv: DMatrix<T>,
    pair: ZohPair<T>,
    mode: ZohMode,
    pub solver: Solver,
    pub opts: SolverOptions<T>,
    warm: DVector<T>,
}

impl<T: Scalar> EcbSmcController<T> {
    pub fn new(f: DMatrix<T>, g: DMatrix<T>, c: DMatrix<T>, alpha: T, h: T, mode: ZohMode) -> Result<Self> {
        if !(alpha > T::zero()) {
            return Err(Error::InvalidConfig(format!(
                "controller gain must be positive, got {alpha}"
            )));
        }
        let pair = crate::integrators::zoh_discretize_scaled(&f, &g, &c, h, alpha)?;
        let cg_inv = (&c * &g).try_inverse().ok_or(Error::Singular("CG"))?;
        let m = g.ncols();
        Ok(Self {
            f,
            g,
            c,
            alpha,
            cg_inv,
            pair,
            mode,
            solver: Solver::Auto,
            opts: SolverOptions::default(),
            warm: DVector::zeros(m),
        })
    }

    pub fn pair(&self) -> &ZohPair<T> {
        &self.pair
    }

    pub fn mode(&self) -> ZohMode {
        self.mode
    }

    pub fn surface(&self) -> &DMatrix<T> {
        &self.c
    }

    pub fn plant(&self) -> (&DMatrix<T>, &DMatrix<T>) {
        (&self.f, &self.g)
    }

    /// Selection for the step leaving `x_k`.
    pub fn selection(&self, x_k: &DVector<T>) -> Result<DVector<T>> {
        let n = self.pair.state_dim();
        if x_k.len() != n {
            return Err(Error::dims("state", n, x_k.len()));
        }
        match self.mode {
            ZohMode::Explicit => Ok((&self.c * x_k).map(sign0)),
            ZohMode::Implicit => {
                let w = &self.c * &self.pair.gamma;
                let b = &self.c * &self.pair.phi * x_k;
                solve_selection(w, b, self.solver, &self.opts, Some(&self.warm))
            }
        }
    }

    /// Control law evaluated at `x_k` with selection `s`.
    pub fn control(&self, x_k: &DVector<T>, s: &DVector<T>) -> DVector<T> {
        -(&self.cg_inv * (&self.c * &self.f * x_k + s * self.alpha))
    }

    pub fn ecb_step(&mut self, x_k: &DVector<T>) -> Result<(DVector<T>, ControlRecord<T>)> {
        let s = self.selection(x_k)?;
        let x = &self.pair.phi * x_k - &self.pair.gamma * &s;
        let u = self.control(x_k, &s);
        self.warm = s.clone();
        Ok((x, ControlRecord { u, s_used: s }))
    }
}

impl<T: Scalar> Stepper<T> for EcbSmcController<T> {
    fn state_dim(&self) -> usize {
        self.pair.state_dim()
    }
    fn surface_dim(&self) -> usize {
        self.c.nrows()
    }
    fn control_dim(&self) -> Option<usize> {
        Some(self.g.ncols())
    }
    fn output(&self, x: &DVector<T>) -> Result<DVector<T>> {
        if x.len() != self.c.ncols() {
            return Err(Error::dims("state", self.c.ncols(), x.len()));
        }
        Ok(&self.c * x)
    }
    fn step(&mut self, _k: usize, _t: T, x_k: &DVector<T>, _s: &DVector<T>) -> Result<StepOutcome<T>> {
        let (x, rec) = self.ecb_step(x_k)?;
        let y = &self.c * &x;
        Ok(StepOutcome {
            x,
            s: rec.s_used,
            y,
            u: Some(rec.u),
            iterations: 1,
        })
    }
}

/// One step of `ẋ = Ex − B u + B γ(t)`, `u ∈ ρ∘Sgn(BᵀPx)`, with `γ` evaluated
/// at `t_k`. Implicit mode solves the one-step MLCP; explicit mode uses
/// `sgn(BᵀPx_k)` with `sgn(0) = 0`. The outcome's `u` is the realised control
/// `ρ∘s`.
pub fn lyapunov_control_step<T: Scalar>(
    sys: &DisturbedLinearSystem<T>,
    x_k: &DVector<T>,
    t_k: T,
    cfg: &SchemeConfig<T>,
    mode: ZohMode,
    warm: Option<&DVector<T>>,
) -> Result<StepOutcome<T>> {
    let frozen = sys.frozen_at(t_k)?;
    let mut out = match mode {
        ZohMode::Implicit => step_linear(&frozen, x_k, cfg, warm)?,
        ZohMode::Explicit => {
            cfg.validate()?;
            let (x, s) = step_explicit(&frozen, x_k, cfg.h)?;
            let y = frozen.output(&x)?;
            StepOutcome {
                x,
                s,
                y,
                u: None,
                iterations: 0,
            }
        }
    };
    out.u = Some(out.s.component_mul(sys.rho()));
    Ok(out)
}

/// [`lyapunov_control_step`] as a [`Stepper`].
pub struct LyapunovLoop<'a, T: Scalar> {
    pub sys: &'a DisturbedLinearSystem<T>,
    pub cfg: SchemeConfig<T>,
    pub mode: ZohMode,
}

impl<T: Scalar> Stepper<T> for LyapunovLoop<'_, T> {
    fn state_dim(&self) -> usize {
        self.sys.n()
    }
    fn surface_dim(&self) -> usize {
        self.sys.m()
    }
    fn control_dim(&self) -> Option<usize> {
        Some(self.sys.m())
    }
    fn output(&self, x: &DVector<T>) -> Result<DVector<T>> {
        if x.len() != self.sys.n() {
            return Err(Error::dims("state", self.sys.n(), x.len()));
        }
        Ok(self.sys.surface_map() * x)
    }
    fn step(&mut self, _k: usize, t_k: T, x_k: &DVector<T>, s_k: &DVector<T>) -> Result<StepOutcome<T>> {
        lyapunov_control_step(self.sys, x_k, t_k, &self.cfg, self.mode, Some(s_k))
    }
}
