use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::mlcp::{Solver, SolverOptions};
use crate::scalar::{sign0, Scalar};

use super::{solve_selection, StepOutcome};

/// Sampled closed loop `x_{k+1} = Φ x_k − Γ s`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZohPair<T: Scalar> {
    pub phi: DMatrix<T>,
    pub gamma: DMatrix<T>,
}

impl<T: Scalar> ZohPair<T> {
    pub fn new(phi: DMatrix<T>, gamma: DMatrix<T>) -> Result<Self> {
        let n = phi.nrows();
        if phi.ncols() != n {
            return Err(Error::dims("Phi", format!("{n}x{n}"), format!("{n}x{}", phi.ncols())));
        }
        if gamma.nrows() != n {
            return Err(Error::dims("Gamma rows", n, gamma.nrows()));
        }
        Ok(Self { phi, gamma })
    }

    pub fn state_dim(&self) -> usize {
        self.phi.nrows()
    }

    pub fn input_dim(&self) -> usize {
        self.gamma.ncols()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZohMode {
    /// `s_k = sgn(Cx_k + D)` with `sgn(0) = 0`.
    Explicit,
    /// `s_{k+1} ∈ Sgn(Cx_{k+1} + D)` solved as an MLCP.
    Implicit,
}

/// `exp(Fh)` and `∫₀ʰ exp(Fτ) dτ`, read off the exponential of the augmented
/// matrix `[[F, I], [0, 0]]·h`.
pub fn exp_and_integral<T: Scalar>(f: &DMatrix<T>, h: T) -> Result<(DMatrix<T>, DMatrix<T>)> {
    let n = f.nrows();
    if f.ncols() != n {
        return Err(Error::dims("F", format!("{n}x{n}"), format!("{n}x{}", f.ncols())));
    }
    let mut aug = DMatrix::<T>::zeros(2 * n, 2 * n);
    aug.view_mut((0, 0), (n, n)).copy_from(&(f * h));
    aug.view_mut((0, n), (n, n)).fill_with_identity();
    aug.view_mut((0, n), (n, n)).scale_mut(h);
    let e = aug.exp();
    Ok((e.view((0, 0), (n, n)).into_owned(), e.view((0, n), (n, n)).into_owned()))
}

/// Sampled equivalent-control loop `u = −(CG)⁻¹(CFx + α s)` held over each
/// interval of length `h`:
/// `Φ = exp(Fh) − ∫exp·G(CG)⁻¹CF`, `Γ = α ∫exp·G(CG)⁻¹`.
pub fn zoh_discretize_scaled<T: Scalar>(
    f: &DMatrix<T>,
    g: &DMatrix<T>,
    c: &DMatrix<T>,
    h: T,
    alpha: T,
) -> Result<ZohPair<T>> {
    let n = f.nrows();
    let m = g.ncols();
    if g.nrows() != n {
        return Err(Error::dims("G rows", n, g.nrows()));
    }
    if c.nrows() != m || c.ncols() != n {
        return Err(Error::dims(
            "C",
            format!("{m}x{n}"),
            format!("{}x{}", c.nrows(), c.ncols()),
        ));
    }
    if !(h > T::zero()) {
        return Err(Error::InvalidConfig("sampling period must be positive".into()));
    }
    let cg_inv = (c * g).try_inverse().ok_or(Error::Singular("CG"))?;
    let (expo, integral) = exp_and_integral(f, h)?;
    let k = integral * g * cg_inv;
    let phi = expo - &k * c * f;
    ZohPair::new(phi, k * alpha)
}

pub fn zoh_discretize<T: Scalar>(f: &DMatrix<T>, g: &DMatrix<T>, c: &DMatrix<T>, h: T) -> Result<ZohPair<T>> {
    zoh_discretize_scaled(f, g, c, h, T::one())
}

/// One step of the sampled loop. Implicit mode solves `y = −CΓ s + CΦx_k + D`,
/// `s ∈ Sgn(y)`; both modes return `x_{k+1} = Φx_k − Γs`.
#[allow(clippy::too_many_arguments)]
pub fn step_zoh<T: Scalar>(
    pair: &ZohPair<T>,
    c: &DMatrix<T>,
    d: &DVector<T>,
    x_k: &DVector<T>,
    mode: ZohMode,
    solver: Solver,
    opts: &SolverOptions<T>,
    warm: Option<&DVector<T>>,
) -> Result<StepOutcome<T>> {
    let n = pair.state_dim();
    let m = pair.input_dim();
    if x_k.len() != n {
        return Err(Error::dims("state", n, x_k.len()));
    }
    if c.nrows() != m || c.ncols() != n || d.len() != m {
        return Err(Error::dims(
            "surface map",
            format!("{m}x{n} and {m}"),
            format!("{}x{} and {}", c.nrows(), c.ncols(), d.len()),
        ));
    }
    let free = &pair.phi * x_k;
    let s = match mode {
        ZohMode::Explicit => (c * x_k + d).map(sign0),
        ZohMode::Implicit => solve_selection(c * &pair.gamma, c * &free + d, solver, opts, warm)?,
    };
    let x = free - &pair.gamma * &s;
    let y = c * &x + d;
    Ok(StepOutcome {
        x,
        s,
        y,
        u: None,
        iterations: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_drift_is_pure_integration() {
        let one = DMatrix::identity(1, 1);
        let p = zoh_discretize::<f64>(&DMatrix::zeros(1, 1), &one, &one, 0.25).unwrap();
        assert_eq!(p.phi[(0, 0)], 1.0);
        assert!((p.gamma[(0, 0)] - 0.25).abs() < 1e-16);
    }

    #[test]
    fn nilpotent_drift_matches_truncated_series() {
        let f = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let (e, i) = exp_and_integral(&f, 0.3).unwrap();
        let e_ref = DMatrix::from_row_slice(2, 2, &[1.0, 0.3, 0.0, 1.0]);
        let i_ref = DMatrix::from_row_slice(2, 2, &[0.3, 0.045, 0.0, 0.3]);
        assert!((e - e_ref).amax() < 1e-15);
        assert!((i - i_ref).amax() < 1e-15);

        let g = DMatrix::from_row_slice(2, 1, &[0.0, 1.0]);
        let c = DMatrix::from_row_slice(1, 2, &[1.0, 1.0]);
        let p = zoh_discretize(&f, &g, &c, 0.3).unwrap();
        // CG = 1, CF = (0, 1)
        let k = DMatrix::from_row_slice(2, 1, &[0.045, 0.3]);
        let phi_ref = DMatrix::from_row_slice(2, 2, &[1.0, 0.3 - 0.045, 0.0, 1.0 - 0.3]);
        assert!((&p.gamma - &k).amax() < 1e-15);
        assert!((p.phi - phi_ref).amax() < 1e-15);
    }

    #[test]
    fn singular_cg_rejected() {
        let g = DMatrix::from_row_slice(2, 1, &[1.0, 0.0]);
        let c = DMatrix::from_row_slice(1, 2, &[0.0, 1.0]);
        assert!(matches!(
            zoh_discretize(&DMatrix::<f64>::zeros(2, 2), &g, &c, 0.1),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn gain_scaling_only_touches_gamma() {
        let f = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 2.0, -2.0]);
        let g = DMatrix::from_row_slice(2, 1, &[0.0, 1.0]);
        let c = DMatrix::from_row_slice(1, 2, &[1.0, 1.0]);
        let a = zoh_discretize(&f, &g, &c, 0.3).unwrap();
        let b = zoh_discretize_scaled(&f, &g, &c, 0.3, 2.5).unwrap();
        assert_eq!(a.phi, b.phi);
        assert!((a.gamma * 2.5 - b.gamma).amax() < 1e-15);
    }

    #[test]
    fn identity_pair_reduces_to_euler_step() {
        let h: f64 = 0.2;
        let pair = ZohPair::new(DMatrix::identity(1, 1), DMatrix::identity(1, 1) * h).unwrap();
        let c = DMatrix::identity(1, 1);
        let d = DVector::zeros(1);
        let o = step_zoh(
            &pair,
            &c,
            &d,
            &DVector::from_element(1, 0.01),
            ZohMode::Implicit,
            Solver::Auto,
            &SolverOptions::default(),
            None,
        )
        .unwrap();
        assert!(o.x[0].abs() < 1e-17);
        assert!((o.s[0] - 0.05).abs() < 1e-15);
        let o = step_zoh(
            &pair,
            &c,
            &d,
            &DVector::from_element(1, 0.01),
            ZohMode::Explicit,
            Solver::Auto,
            &SolverOptions::default(),
            None,
        )
        .unwrap();
        assert!((o.x[0] + 0.19).abs() < 1e-15);
    }
}
