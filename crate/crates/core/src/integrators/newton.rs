use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::systems::SignSystem;

use super::{solve_selection, SchemeConfig, StepOutcome};

/// One implicit step of `ẋ ∈ f(x, t) − g(x) Sgn(h(x))` by an outer Newton
/// loop with an MLCP solve per iteration.
///
/// The residual is
/// `R(x, s) = (1 + hρ)(x − x_k) − h f(x_θ, t_k + θh) + h g(x_γ) s`,
/// where `x_θ = θx + (1−θ)x_k`, `x_γ = γx + (1−γ)x_k` and `ρ` is the system's
/// hypomonotone shift. Each iteration linearises `R` and `h` at the current
/// iterate, solves `y = −Ws + b`, `s ∈ Sgn(y)` for the new selection and
/// updates `x`. The loop stops once both `‖R‖∞` and the gap between `h(x)` and
/// its linearisation fall below `cfg.newton_tol`; at least one iteration is
/// always made, so affine data finishes in exactly one.
pub fn step_newton<T: Scalar, S: SignSystem<T> + ?Sized>(
    sys: &S,
    x_k: &DVector<T>,
    s_prev: &DVector<T>,
    t_k: T,
    cfg: &SchemeConfig<T>,
) -> Result<StepOutcome<T>> {
    cfg.validate()?;
    let n = sys.state_dim();
    let m = sys.surface_dim();
    if x_k.len() != n {
        return Err(Error::dims("state", n, x_k.len()));
    }
    if s_prev.len() != m {
        return Err(Error::dims("warm-start selection", m, s_prev.len()));
    }
    let (h, theta, gamma) = (cfg.h, cfg.theta, cfg.gamma);
    let shift = T::one() + h * sys.hypomonotone_shift();
    let t_theta = t_k + theta * h;
    let blend = |x: &DVector<T>, w: T| x * w + x_k * (T::one() - w);

    let mut x = x_k.clone();
    let mut s = s_prev.clone();
    let mut last = T::zero();
    for iter in 1..=cfg.newton_max_iter {
        let x_theta = blend(&x, theta);
        let x_gamma = blend(&x, gamma);
        let f = sys.drift(&x_theta, t_theta)?;
        let g = sys.gain(&x_gamma)?;
        let jac_h = sys.output_jacobian(&x)?;
        let iteration_matrix = DMatrix::<T>::identity(n, n) * shift
            - sys.drift_jacobian(&x_theta, t_theta)? * (h * theta)
            + sys.gain_jacobian(&x_gamma)?.contract(&s) * (h * gamma);
        let lu = iteration_matrix.lu();
        let r0 = (&x - x_k) * shift - f * h;
        let minv_r0 = lu.solve(&r0).ok_or(Error::Singular("newton iteration matrix"))?;
        let minv_g = lu.solve(&g).ok_or(Error::Singular("newton iteration matrix"))?;
        let w = &jac_h * &minv_g * h;
        let b = sys.output(&x)? - &jac_h * &minv_r0;
        let s_new = solve_selection(w.clone(), b.clone(), cfg.solver, &cfg.mlcp, Some(&s))?;
        let x_new = &x - minv_r0 - minv_g * (&s_new * h);
        let y_lin = b - w * &s_new;
        let y_new = sys.output(&x_new)?;
        let res = residual(sys, &x_new, &s_new, x_k, t_theta, cfg, shift)?;
        last = res.max((&y_new - y_lin).amax());
        x = x_new;
        s = s_new;
        if last < cfg.newton_tol {
            return Ok(StepOutcome {
                x,
                s,
                y: y_new,
                u: None,
                iterations: iter,
            });
        }
    }
    Err(Error::NewtonDiverged {
        iterations: cfg.newton_max_iter,
        residual: last.to_f64_lossy(),
    })
}

/// `‖R(x, s)‖∞` for the residual used by [`step_newton`].
fn residual<T: Scalar, S: SignSystem<T> + ?Sized>(
    sys: &S,
    x: &DVector<T>,
    s: &DVector<T>,
    x_k: &DVector<T>,
    t_theta: T,
    cfg: &SchemeConfig<T>,
    shift: T,
) -> Result<T> {
    let x_theta = x * cfg.theta + x_k * (T::one() - cfg.theta);
    let x_gamma = x * cfg.gamma + x_k * (T::one() - cfg.gamma);
    let r = (x - x_k) * shift - sys.drift(&x_theta, t_theta)? * cfg.h + sys.gain(&x_gamma)? * s * cfg.h;
    Ok(r.amax())
}
