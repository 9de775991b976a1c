use crate::error::{Error, Result};
use crate::mlcp::{Solver, SolverOptions};
use crate::scalar::Scalar;

/// Step size, implicitness weights and Newton/MLCP settings for one run.
///
/// `theta` weights the smooth drift between `x_k` and `x_{k+1}`, `gamma` does
/// the same for the gain `g` in front of the sign term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig<T: Scalar> {
    pub h: T,
    pub theta: T,
    pub gamma: T,
    pub newton_tol: T,
    pub newton_max_iter: usize,
    pub solver: Solver,
    pub mlcp: SolverOptions<T>,
}

impl<T: Scalar> SchemeConfig<T> {
    /// Fully implicit scheme (`θ = γ = 1`) with default tolerances.
    pub fn implicit(h: T) -> Self {
        Self {
            h,
            theta: T::one(),
            gamma: T::one(),
            newton_tol: T::default_tolerance(),
            newton_max_iter: 50,
            solver: Solver::Auto,
            mlcp: SolverOptions::default(),
        }
    }

    pub fn with_theta(mut self, theta: T) -> Self {
        self.theta = theta;
        self
    }

    pub fn with_gamma(mut self, gamma: T) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_solver(mut self, solver: Solver) -> Self {
        self.solver = solver;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > T::zero()) || !self.h.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "step size must be positive, got {}",
                self.h
            )));
        }
        let unit = |v: T| v >= T::zero() && v <= T::one();
        if !unit(self.theta) {
            return Err(Error::InvalidConfig(format!(
                "theta must lie in [0, 1], got {}",
                self.theta
            )));
        }
        if !unit(self.gamma) {
            return Err(Error::InvalidConfig(format!(
                "gamma must lie in [0, 1], got {}",
                self.gamma
            )));
        }
        if !(self.newton_tol > T::zero()) {
            return Err(Error::InvalidConfig("newton tolerance must be positive".into()));
        }
        if self.newton_max_iter == 0 {
            return Err(Error::InvalidConfig("newton iteration cap must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        assert!(SchemeConfig::implicit(0.1_f64).validate().is_ok());
        assert!(SchemeConfig::implicit(0.1_f32).validate().is_ok());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(SchemeConfig::implicit(0.0_f64).validate().is_err());
        assert!(SchemeConfig::implicit(f64::NAN).validate().is_err());
        assert!(SchemeConfig::implicit(0.1_f64).with_theta(1.5).validate().is_err());
        assert!(SchemeConfig::implicit(0.1_f64).with_gamma(-0.1).validate().is_err());
        let mut c = SchemeConfig::implicit(0.1_f64);
        c.newton_tol = 0.0;
        assert!(c.validate().is_err());
    }
}
