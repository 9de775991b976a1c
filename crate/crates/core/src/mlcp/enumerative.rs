use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{assignment_solution, solve_assignment, Active, MlcpProblem, MlcpSolution, MlcpStatus, SolverOptions};

/// Exhaustive active-set search over all `3^m` assignments.
///
/// Assignments are visited in lexicographic order with index 0 most
/// significant and `Interior < Lower < Upper`; the first one satisfying every
/// sign condition within `opts.tol` is returned. Sides with an infinite bound
/// are never made active. Singular interior blocks are skipped.
pub fn solve_enumerative<T: Scalar>(p: &MlcpProblem<T>, opts: &SolverOptions<T>) -> Result<MlcpSolution<T>> {
    let dim = p.dim();
    if dim == 0 {
        return Ok(MlcpSolution::empty());
    }
    if dim > opts.enumerative_cap {
        return Err(Error::InvalidInput(format!(
            "enumerative solver limited to {} unknowns, problem has {dim}",
            opts.enumerative_cap
        )));
    }
    let choices: Vec<Vec<Active>> = (0..dim)
        .map(|i| {
            let mut c = vec![Active::Interior];
            if p.l[i].is_finite() {
                c.push(Active::Lower);
            }
            if p.u[i].is_finite() {
                c.push(Active::Upper);
            }
            c
        })
        .collect();

    let mut digits = vec![0usize; dim];
    let mut set = vec![Active::Interior; dim];
    let mut visited = 0usize;
    loop {
        for i in 0..dim {
            set[i] = choices[i][digits[i]];
        }
        visited += 1;
        if let Some(z) = solve_assignment(p, &set) {
            if feasible(p, &set, &z, opts.tol) {
                return Ok(assignment_solution(p, &set, z, visited));
            }
        }
        // odometer increment, last index fastest
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok(MlcpSolution::failed(dim, MlcpStatus::Infeasible, visited));
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < choices[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

pub(crate) fn feasible<T: Scalar>(p: &MlcpProblem<T>, set: &[Active], z: &nalgebra::DVector<T>, tol: T) -> bool {
    let r = &p.m * z + &p.q;
    set.iter().enumerate().all(|(i, a)| match a {
        Active::Interior => z[i] >= p.l[i] - tol && z[i] <= p.u[i] + tol,
        Active::Lower => r[i] >= -tol,
        Active::Upper => r[i] <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, DVector};

    fn scalar(m: f64, q: f64) -> MlcpProblem<f64> {
        MlcpProblem::unit_box(DMatrix::from_element(1, 1, m), DVector::from_element(1, q)).unwrap()
    }

    #[test]
    fn interior_root() {
        let s = solve_enumerative(&scalar(1.0, -0.5), &SolverOptions::default()).unwrap();
        assert!(s.is_solved());
        assert_eq!(s.z[0], 0.5);
        assert_eq!((s.w[0], s.v[0]), (0.0, 0.0));
    }

    #[test]
    fn upper_bound_active() {
        let s = solve_enumerative(&scalar(1.0, -2.0), &SolverOptions::default()).unwrap();
        assert_eq!(s.z[0], 1.0);
        assert_eq!(s.w[0], 0.0);
        assert_eq!(s.v[0], 1.0);
        assert_eq!(s.residual, 0.0);
    }

    #[test]
    fn small_state_threshold_step() {
        // z = -q / M = 0.01 / 0.2
        let s = solve_enumerative(&scalar(0.2, -0.01), &SolverOptions::default()).unwrap();
        assert!((s.z[0] - 0.05).abs() < 1e-15);
        assert_eq!((s.w[0], s.v[0]), (0.0, 0.0));
    }

    #[test]
    fn infeasible_problem_reported() {
        // M = -1, q = 0 on [-1, 1] is solvable; M = 0, q = 1 with no lower
        // bound cannot be balanced
        let p = MlcpProblem::new(
            DMatrix::from_element(1, 1, 0.0),
            DVector::from_element(1, 1.0),
            DVector::from_element(1, f64::NEG_INFINITY),
            DVector::from_element(1, 1.0),
        )
        .unwrap();
        let s = solve_enumerative(&p, &SolverOptions::default()).unwrap();
        assert_eq!(s.status, MlcpStatus::Infeasible);
    }

    #[test]
    fn free_variable_is_plain_linear_solve() {
        let p = MlcpProblem::new(
            DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 3.0]),
            DVector::from_vec(vec![-3.0, -5.0]),
            DVector::from_element(2, f64::NEG_INFINITY),
            DVector::from_element(2, f64::INFINITY),
        )
        .unwrap();
        let s = solve_enumerative(&p, &SolverOptions::default()).unwrap();
        assert!(s.is_solved());
        assert!((s.z[0] - 0.8).abs() < 1e-14 && (s.z[1] - 1.4).abs() < 1e-14);
        assert_eq!(s.iterations, 1);
    }

    #[test]
    fn cap_enforced() {
        let p = MlcpProblem::<f64>::unit_box(DMatrix::identity(13, 13), DVector::zeros(13)).unwrap();
        assert!(solve_enumerative(&p, &SolverOptions::default()).is_err());
    }
}
