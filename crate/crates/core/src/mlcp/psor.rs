use nalgebra::DVector;

use crate::scalar::{clamp, Scalar};

use super::{MlcpProblem, MlcpSolution, MlcpStatus};

/// Projected successive over-relaxation.
///
/// Each sweep updates `z_i ← clamp(z_i − ω (M_i· z + q_i) / M_ii)` in place and
/// stops once the sweep moved no coordinate by more than `tol`. Infinite bounds
/// simply never clamp. `w` and `v` are the positive and negative parts of the
/// final `Mz + q`.
pub fn solve_psor<T: Scalar>(
    p: &MlcpProblem<T>,
    omega: T,
    max_iter: usize,
    tol: T,
    warm: Option<&DVector<T>>,
) -> MlcpSolution<T> {
    let dim = p.dim();
    if dim == 0 {
        return MlcpSolution::empty();
    }
    if (0..dim).any(|i| p.m[(i, i)] == T::zero()) {
        return MlcpSolution::failed(dim, MlcpStatus::Infeasible, 0);
    }
    let mut z = match warm {
        Some(w) if w.len() == dim => w.clone(),
        _ => DVector::zeros(dim),
    };
    for i in 0..dim {
        z[i] = clamp(z[i], p.l[i], p.u[i]);
    }

    for sweep in 1..=max_iter {
        let mut delta = T::zero();
        for i in 0..dim {
            let r = p.m.row(i).dot(&z.transpose()) + p.q[i];
            let zi = clamp(z[i] - omega * r / p.m[(i, i)], p.l[i], p.u[i]);
            delta = delta.max((zi - z[i]).abs());
            z[i] = zi;
        }
        if delta < tol {
            return MlcpSolution::from_iterate(p, z, MlcpStatus::Solved, sweep);
        }
    }
    MlcpSolution::from_iterate(p, z, MlcpStatus::MaxIterations, max_iter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    #[test]
    fn diagonal_problem_converges_to_scaled_q() {
        let q = DVector::from_vec(vec![3.0_f64, -4.5]);
        let p = MlcpProblem::unit_box(DMatrix::identity(2, 2) * 5.0, q.clone()).unwrap();
        let s = solve_psor(&p, 1.0, 50, 1e-12, None);
        assert!(s.is_solved());
        assert!(s.iterations <= 50);
        for i in 0..2 {
            assert!((s.z[i] + q[i] / 5.0).abs() < 1e-15);
        }
    }

    #[test]
    fn saturates_at_upper_bound() {
        let p = MlcpProblem::unit_box(DMatrix::from_element(1, 1, 1.0), DVector::from_element(1, -2.0)).unwrap();
        let s = solve_psor(&p, 1.0, 100, 1e-12, None);
        assert_eq!(s.z[0], 1.0);
        assert_eq!(s.v[0], 1.0);
    }

    #[test]
    fn iteration_cap_reported() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.99, 0.99, 1.0]);
        let p = MlcpProblem::unit_box(m, DVector::from_vec(vec![0.3, -0.2])).unwrap();
        let s = solve_psor(&p, 1.0, 2, 1e-14, None);
        assert_eq!(s.status, MlcpStatus::MaxIterations);
    }

    #[test]
    fn zero_diagonal_rejected() {
        let p = MlcpProblem::unit_box(DMatrix::from_element(1, 1, 0.0), DVector::from_element(1, 0.0)).unwrap();
        assert_eq!(solve_psor(&p, 1.0, 10, 1e-12, None).status, MlcpStatus::Infeasible);
    }
}
