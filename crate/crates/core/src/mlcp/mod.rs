//! Box-constrained mixed linear complementarity problems.
//!
//! Find `z` with `l ≤ z ≤ u` and `w, v ≥ 0` such that
//!
//! ```text
//! Mz + q = w − v,   (z − l)ᵀw = 0,   (u − z)ᵀv = 0.
//! ```
//!
//! Bounds may be infinite (IEEE infinities are the sentinel). Three solvers
//! are provided: an exhaustive active-set enumeration used as the reference
//! oracle, projected SOR, and a least-index principal pivoting method.

mod enumerative;
mod pivoting;
mod psor;

use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use enumerative::solve_enumerative;
pub use pivoting::solve_pivoting;
pub use psor::solve_psor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlcpStatus {
    Solved,
    Infeasible,
    MaxIterations,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MlcpProblem<T: Scalar> {
    m: DMatrix<T>,
    q: DVector<T>,
    l: DVector<T>,
    u: DVector<T>,
}

impl<T: Scalar> MlcpProblem<T> {
    pub fn new(m: DMatrix<T>, q: DVector<T>, l: DVector<T>, u: DVector<T>) -> Result<Self> {
        let dim = q.len();
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::dims(
                "MLCP matrix",
                format!("{dim}x{dim}"),
                format!("{}x{}", m.nrows(), m.ncols()),
            ));
        }
        if l.len() != dim || u.len() != dim {
            return Err(Error::dims("MLCP bounds", dim, format!("{}/{}", l.len(), u.len())));
        }
        for i in 0..dim {
            if l[i] > u[i] {
                return Err(Error::InvalidInput(format!(
                    "lower bound exceeds upper bound at index {i}"
                )));
            }
            if !l[i].is_finite() && l[i] > T::zero() {
                return Err(Error::InvalidInput(format!("lower bound is +inf at index {i}")));
            }
            if !u[i].is_finite() && u[i] < T::zero() {
                return Err(Error::InvalidInput(format!("upper bound is -inf at index {i}")));
            }
        }
        Ok(Self { m, q, l, u })
    }

    /// Problem on the box `[-1, 1]^dim`.
    pub fn unit_box(m: DMatrix<T>, q: DVector<T>) -> Result<Self> {
        let dim = q.len();
        Self::new(
            m,
            q,
            DVector::from_element(dim, -T::one()),
            DVector::from_element(dim, T::one()),
        )
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.m
    }

    pub fn q(&self) -> &DVector<T> {
        &self.q
    }

    pub fn lower(&self) -> &DVector<T> {
        &self.l
    }

    pub fn upper(&self) -> &DVector<T> {
        &self.u
    }

    /// Same problem with `M` and `q` multiplied by `alpha`.
    pub fn scaled(&self, alpha: T) -> Self {
        Self {
            m: &self.m * alpha,
            q: &self.q * alpha,
            ..self.clone()
        }
    }

    /// Plain text dump used in failure diagnostics.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "M");
        for i in 0..self.dim() {
            let row: Vec<String> = self.m.row(i).iter().map(|v| format!("{v:.17e}")).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        for (name, v) in [("q", &self.q), ("l", &self.l), ("u", &self.u)] {
            let _ = writeln!(s, "{name}");
            let row: Vec<String> = v.iter().map(|v| format!("{v:.17e}")).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MlcpSolution<T: Scalar> {
    pub z: DVector<T>,
    pub w: DVector<T>,
    pub v: DVector<T>,
    pub residual: T,
    pub status: MlcpStatus,
    pub iterations: usize,
}

impl<T: Scalar> MlcpSolution<T> {
    fn empty() -> Self {
        Self {
            z: DVector::zeros(0),
            w: DVector::zeros(0),
            v: DVector::zeros(0),
            residual: T::zero(),
            status: MlcpStatus::Solved,
            iterations: 0,
        }
    }

    fn failed(dim: usize, status: MlcpStatus, iterations: usize) -> Self {
        Self {
            z: DVector::zeros(dim),
            w: DVector::zeros(dim),
            v: DVector::zeros(dim),
            residual: T::max_value().unwrap_or_else(|| T::lit(f64::MAX)),
            status,
            iterations,
        }
    }

    /// Builds `w`, `v` as the positive and negative parts of `Mz + q`.
    fn from_iterate(p: &MlcpProblem<T>, z: DVector<T>, status: MlcpStatus, iterations: usize) -> Self {
        let r = &p.m * &z + &p.q;
        let w = r.map(|v| v.max(T::zero()));
        let v = r.map(|v| (-v).max(T::zero()));
        let mut sol = Self {
            z,
            w,
            v,
            residual: T::zero(),
            status,
            iterations,
        };
        sol.residual = certify(p, &sol);
        sol
    }

    pub fn is_solved(&self) -> bool {
        self.status == MlcpStatus::Solved
    }
}

/// Index classification shared by the enumerative and pivoting solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Active {
    Interior,
    Lower,
    Upper,
}

/// Solves the square system for the interior block of an active-set
/// assignment and returns the full `z`. `None` when the block is singular.
pub(crate) fn solve_assignment<T: Scalar>(p: &MlcpProblem<T>, set: &[Active]) -> Option<DVector<T>> {
    let (z, interior) = fixed_part(p, set);
    if interior.is_empty() {
        return Some(z);
    }
    let (mii, rhs) = interior_system(p, &z, &interior);
    let zi = mii.lu().solve(&rhs)?;
    if zi.iter().any(|v| !v.is_finite()) {
        return None;
    }
    Some(scatter(z, &interior, &zi))
}

/// Minimum-norm solve of the interior block, accepted only when consistent.
pub(crate) fn solve_assignment_min_norm<T: Scalar>(p: &MlcpProblem<T>, set: &[Active], tol: T) -> Option<DVector<T>> {
    let (z, interior) = fixed_part(p, set);
    if interior.is_empty() {
        return Some(z);
    }
    let (mii, rhs) = interior_system(p, &z, &interior);
    let zi = mii.clone().svd(true, true).solve(&rhs, tol).ok()?;
    if (&mii * &zi - &rhs).amax() > tol {
        return None;
    }
    Some(scatter(z, &interior, &zi))
}

fn fixed_part<T: Scalar>(p: &MlcpProblem<T>, set: &[Active]) -> (DVector<T>, Vec<usize>) {
    let mut z = DVector::zeros(p.dim());
    let mut interior = Vec::new();
    for (i, a) in set.iter().enumerate() {
        match a {
            Active::Interior => interior.push(i),
            Active::Lower => z[i] = p.l[i],
            Active::Upper => z[i] = p.u[i],
        }
    }
    (z, interior)
}

fn interior_system<T: Scalar>(p: &MlcpProblem<T>, z: &DVector<T>, interior: &[usize]) -> (DMatrix<T>, DVector<T>) {
    let k = interior.len();
    let mii = DMatrix::from_fn(k, k, |a, b| p.m[(interior[a], interior[b])]);
    // z is zero on the interior entries here, so M z only carries the fixed part
    let r = &p.m * z + &p.q;
    let rhs = DVector::from_fn(k, |a, _| -r[interior[a]]);
    (mii, rhs)
}

fn scatter<T: Scalar>(mut z: DVector<T>, interior: &[usize], zi: &DVector<T>) -> DVector<T> {
    for (a, &i) in interior.iter().enumerate() {
        z[i] = zi[a];
    }
    z
}

/// Builds the solution record for an assignment, splitting `Mz + q` into
/// `w` / `v` according to which bound is active.
pub(crate) fn assignment_solution<T: Scalar>(
    p: &MlcpProblem<T>,
    set: &[Active],
    z: DVector<T>,
    iterations: usize,
) -> MlcpSolution<T> {
    let r = &p.m * &z + &p.q;
    let dim = p.dim();
    let mut w = DVector::zeros(dim);
    let mut v = DVector::zeros(dim);
    for i in 0..dim {
        match set[i] {
            Active::Interior => {}
            Active::Lower => w[i] = r[i],
            Active::Upper => v[i] = -r[i],
        }
    }
    let mut sol = MlcpSolution {
        z,
        w,
        v,
        residual: T::zero(),
        status: MlcpStatus::Solved,
        iterations,
    };
    sol.residual = certify(p, &sol);
    sol
}

/// Largest violation of the problem's conditions by `s`: box bounds,
/// `Mz + q − w + v`, both complementarity products, and negativity of `w`, `v`.
pub fn certify<T: Scalar>(p: &MlcpProblem<T>, s: &MlcpSolution<T>) -> T {
    let dim = p.dim();
    if s.z.len() != dim || s.w.len() != dim || s.v.len() != dim {
        return T::max_value().unwrap_or_else(|| T::lit(f64::MAX));
    }
    let mut worst = T::zero();
    let eq = &p.m * &s.z + &p.q - &s.w + &s.v;
    worst = worst.max(eq.amax());
    let mut comp_l = T::zero();
    let mut comp_u = T::zero();
    for i in 0..dim {
        let (z, l, u) = (s.z[i], p.l[i], p.u[i]);
        worst = worst.max(l - z).max(z - u);
        worst = worst.max(-s.w[i]).max(-s.v[i]);
        if l.is_finite() {
            comp_l += (z - l) * s.w[i];
        } else {
            worst = worst.max(s.w[i].abs());
        }
        if u.is_finite() {
            comp_u += (u - z) * s.v[i];
        } else {
            worst = worst.max(s.v[i].abs());
        }
    }
    worst.max(comp_l.abs()).max(comp_u.abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions<T: Scalar> {
    /// Feasibility tolerance used to accept an active set.
    pub tol: T,
    /// Stopping tolerance on successive PSOR iterates.
    pub psor_tol: T,
    pub omega: T,
    pub max_iter: usize,
    pub enumerative_cap: usize,
}

impl<T: Scalar> Default for SolverOptions<T> {
    fn default() -> Self {
        let tol = T::default_tolerance();
        Self {
            tol,
            psor_tol: tol * T::lit(1e-2),
            omega: T::one(),
            max_iter: 5000,
            enumerative_cap: 12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Solver {
    Enumerative,
    Psor,
    Pivoting,
    /// Pivoting, then PSOR, then enumeration.
    #[default]
    Auto,
}

impl std::str::FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enumerative" => Ok(Solver::Enumerative),
            "psor" => Ok(Solver::Psor),
            "pivot" | "pivoting" => Ok(Solver::Pivoting),
            "auto" => Ok(Solver::Auto),
            other => Err(Error::InvalidInput(format!("unknown solver '{other}'"))),
        }
    }
}

/// Dispatches to the selected solver; `warm` seeds PSOR.
pub fn solve<T: Scalar>(
    p: &MlcpProblem<T>,
    solver: Solver,
    opts: &SolverOptions<T>,
    warm: Option<&DVector<T>>,
) -> Result<MlcpSolution<T>> {
    match solver {
        Solver::Enumerative => solve_enumerative(p, opts),
        Solver::Psor => Ok(solve_psor(p, opts.omega, opts.max_iter, opts.psor_tol, warm)),
        Solver::Pivoting => Ok(solve_pivoting(p, opts)),
        Solver::Auto => {
            let sol = solve_pivoting(p, opts);
            if sol.is_solved() {
                return Ok(sol);
            }
            if (0..p.dim()).all(|i| p.m[(i, i)] != T::zero()) {
                let sol = solve_psor(p, opts.omega, opts.max_iter, opts.psor_tol, warm);
                if sol.is_solved() && sol.residual <= opts.tol {
                    return Ok(sol);
                }
            }
            if p.dim() <= opts.enumerative_cap {
                return solve_enumerative(p, opts);
            }
            Ok(sol)
        }
    }
}

/// Inclusion `s ∈ Sgn(y)` with `y = −W s + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignStepProblem<T: Scalar> {
    pub w: DMatrix<T>,
    pub b: DVector<T>,
}

impl<T: Scalar> SignStepProblem<T> {
    pub fn new(w: DMatrix<T>, b: DVector<T>) -> Result<Self> {
        if w.nrows() != b.len() || w.ncols() != b.len() {
            return Err(Error::dims(
                "sign step",
                format!("{0}x{0}", b.len()),
                format!("{}x{}", w.nrows(), w.ncols()),
            ));
        }
        Ok(Self { w, b })
    }

    /// `y = b − W s` for a selection `s`.
    pub fn output(&self, s: &DVector<T>) -> DVector<T> {
        &self.b - &self.w * s
    }
}

/// Normal-cone encoding of `s ∈ Sgn(b − W s)`: `M = W`, `q = −b`, box `[-1, 1]`.
/// The unknown `z` is the selection and `y = −(Mz + q) = v − w`.
pub fn from_sign_step<T: Scalar>(p: &SignStepProblem<T>) -> MlcpProblem<T> {
    MlcpProblem::unit_box(p.w.clone(), -&p.b).expect("sign step dimensions checked at construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(m: f64, q: f64) -> MlcpProblem<f64> {
        MlcpProblem::unit_box(DMatrix::from_element(1, 1, m), DVector::from_element(1, q)).unwrap()
    }

    #[test]
    fn sign_step_mapping() {
        let p = from_sign_step(
            &SignStepProblem::new(DMatrix::from_element(1, 1, 0.2), DVector::from_element(1, 0.1)).unwrap(),
        );
        assert_eq!(p.matrix()[(0, 0)], 0.2);
        assert_eq!(p.q()[0], -0.1);
        assert_eq!(p.lower()[0], -1.0);
        assert_eq!(p.upper()[0], 1.0);
    }

    #[test]
    fn two_surface_step_is_box_problem() {
        let w = DMatrix::identity(2, 2) * (0.02 * 5.0);
        let b = DVector::from_vec(vec![-1.0, 3.0]);
        let p = from_sign_step(&SignStepProblem::new(w, b).unwrap());
        assert_eq!(p.dim(), 2);
        assert!(p.lower().iter().all(|&v| v == -1.0));
        assert!(p.upper().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn empty_problem_is_solved() {
        let p = from_sign_step(&SignStepProblem::<f64>::new(DMatrix::zeros(0, 0), DVector::zeros(0)).unwrap());
        let opts = SolverOptions::default();
        for solver in [Solver::Enumerative, Solver::Psor, Solver::Pivoting, Solver::Auto] {
            let s = solve(&p, solver, &opts, None).unwrap();
            assert!(s.is_solved());
            assert_eq!(s.z.len(), 0);
        }
    }

    #[test]
    fn rejects_bad_bounds() {
        let m = DMatrix::from_element(1, 1, 1.0);
        let q = DVector::from_element(1, 0.0);
        assert!(MlcpProblem::new(
            m.clone(),
            q.clone(),
            DVector::from_element(1, 1.0),
            DVector::from_element(1, -1.0)
        )
        .is_err());
        assert!(MlcpProblem::new(
            m.clone(),
            q.clone(),
            DVector::from_element(1, f64::INFINITY),
            DVector::from_element(1, f64::INFINITY)
        )
        .is_err());
        assert!(MlcpProblem::new(
            m,
            q,
            DVector::from_element(1, f64::NEG_INFINITY),
            DVector::from_element(1, f64::NEG_INFINITY)
        )
        .is_err());
    }

    #[test]
    fn certify_exact_solution_is_zero() {
        let p = scalar(1.0, -2.0);
        let s = MlcpSolution {
            z: DVector::from_element(1, 1.0),
            w: DVector::from_element(1, 0.0),
            v: DVector::from_element(1, 1.0),
            residual: 0.0,
            status: MlcpStatus::Solved,
            iterations: 0,
        };
        assert!(certify(&p, &s) <= 1e-14);
    }

    #[test]
    fn certify_detects_interior_perturbation() {
        let p = MlcpProblem::unit_box(DMatrix::from_element(1, 1, 2.0), DVector::from_element(1, -0.5)).unwrap();
        let s = MlcpSolution {
            z: DVector::from_element(1, 0.25 + 1e-3),
            w: DVector::zeros(1),
            v: DVector::zeros(1),
            residual: 0.0,
            status: MlcpStatus::Solved,
            iterations: 0,
        };
        let r = certify(&p, &s);
        assert!((r - 2.0e-3_f64).abs() < 1e-12, "residual {r}");
    }

    #[test]
    fn certify_detects_negated_w() {
        // M = 1, q = 2: lower bound active with w = 1
        let p = scalar(1.0, 2.0);
        let good = MlcpSolution {
            z: DVector::from_element(1, -1.0),
            w: DVector::from_element(1, 1.0),
            v: DVector::zeros(1),
            residual: 0.0,
            status: MlcpStatus::Solved,
            iterations: 0,
        };
        assert_eq!(certify(&p, &good), 0.0);
        let bad = MlcpSolution {
            w: -&good.w,
            ..good.clone()
        };
        // sign violation |w| plus the broken equation Mz + q - w + v = 2|w|
        let r = certify(&p, &bad);
        assert!(r >= good.w.amax());
        assert_eq!(r, 2.0);
    }

    #[test]
    fn dump_lists_all_blocks() {
        let d = scalar(0.2, -0.01).dump();
        for tag in ["M\n", "q\n", "l\n", "u\n"] {
            assert!(d.contains(tag));
        }
    }
}
