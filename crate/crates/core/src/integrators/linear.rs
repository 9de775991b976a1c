use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::{sign0, Scalar};
use crate::systems::LinearSignSystem;

use super::{solve_selection, SchemeConfig, StepOutcome};

/// One θ-step of `ẋ ∈ Ex + a − B Sgn(Cx + D)`.
///
/// With `A = I − hθE` the one-step problem is affine, so a single MLCP solve
/// with `W = hCA⁻¹B`, `b = CA⁻¹((I + h(1−θ)E)x_k + ha) + D` gives the
/// selection and `x_{k+1} = A⁻¹((I + h(1−θ)E)x_k + ha − hBs)`.
pub fn step_linear<T: Scalar>(
    sys: &LinearSignSystem<T>,
    x_k: &DVector<T>,
    cfg: &SchemeConfig<T>,
    warm: Option<&DVector<T>>,
) -> Result<StepOutcome<T>> {
    cfg.validate()?;
    let n = sys.n();
    if x_k.len() != n {
        return Err(Error::dims("state", n, x_k.len()));
    }
    let h = cfg.h;
    let id = DMatrix::<T>::identity(n, n);
    let lu = (&id - sys.e() * (h * cfg.theta)).lu();
    let free = (&id + sys.e() * (h * (T::one() - cfg.theta))) * x_k + sys.a() * h;
    let a_free = lu.solve(&free).ok_or(Error::Singular("I - h theta E"))?;
    let a_b = lu.solve(sys.b()).ok_or(Error::Singular("I - h theta E"))?;
    let w = sys.c() * &a_b * h;
    let b = sys.c() * &a_free + sys.d();
    let s = solve_selection(w, b, cfg.solver, &cfg.mlcp, warm)?;
    let x = a_free - a_b * (&s * h);
    let y = sys.output(&x)?;
    Ok(StepOutcome {
        x,
        s,
        y,
        u: None,
        iterations: 1,
    })
}

/// Forward Euler with the single-valued sign `sgn(0) = 0` evaluated at `x_k`.
/// Returns `x_{k+1}` and the selection `s_k` that was used.
pub fn step_explicit<T: Scalar>(sys: &LinearSignSystem<T>, x_k: &DVector<T>, h: T) -> Result<(DVector<T>, DVector<T>)> {
    let s = sys.output(x_k)?.map(sign0);
    let x = x_k + (sys.e() * x_k + sys.a()) * h - sys.b() * (&s * h);
    Ok((x, s))
}
