use std::collections::HashSet;

use crate::scalar::Scalar;

use super::{
    assignment_solution, solve_assignment, solve_assignment_min_norm, Active, MlcpProblem, MlcpSolution, MlcpStatus,
    SolverOptions,
};

/// Least-index principal pivoting on the box.
///
/// Starts with every index interior and, at each step, flips the smallest
/// index whose condition is violated: an interior value outside its bounds
/// becomes active at the bound it crossed, and an active index whose
/// multiplier has the wrong sign becomes interior again. Singular interior
/// blocks fall back to a consistent minimum-norm solve; if that fails the
/// smallest interior index with a finite bound is fixed. A repeated active
/// set or exhausting `opts.max_iter` yields `Infeasible`.
pub fn solve_pivoting<T: Scalar>(p: &MlcpProblem<T>, opts: &SolverOptions<T>) -> MlcpSolution<T> {
    let dim = p.dim();
    if dim == 0 {
        return MlcpSolution::empty();
    }
    let tol = opts.tol;
    let mut set = vec![Active::Interior; dim];
    let mut seen: HashSet<Vec<Active>> = HashSet::new();

    for iter in 1..=opts.max_iter {
        if !seen.insert(set.clone()) {
            return MlcpSolution::failed(dim, MlcpStatus::Infeasible, iter);
        }
        let z = match solve_assignment(p, &set).or_else(|| solve_assignment_min_norm(p, &set, tol)) {
            Some(z) => z,
            None => {
                let fix = (0..dim).find(|&i| set[i] == Active::Interior && (p.l[i].is_finite() || p.u[i].is_finite()));
                match fix {
                    Some(i) => {
                        set[i] = if p.l[i].is_finite() {
                            Active::Lower
                        } else {
                            Active::Upper
                        };
                        continue;
                    }
                    None => return MlcpSolution::failed(dim, MlcpStatus::Infeasible, iter),
                }
            }
        };
        let r = &p.m * &z + &p.q;
        let flip = (0..dim).find_map(|i| match set[i] {
            Active::Interior if z[i] < p.l[i] - tol => Some((i, Active::Lower)),
            Active::Interior if z[i] > p.u[i] + tol => Some((i, Active::Upper)),
            Active::Lower if r[i] < -tol => Some((i, Active::Interior)),
            Active::Upper if r[i] > tol => Some((i, Active::Interior)),
            _ => None,
        });
        match flip {
            Some((i, a)) => set[i] = a,
            None => return assignment_solution(p, &set, z, iter),
        }
    }
    MlcpSolution::failed(dim, MlcpStatus::MaxIterations, opts.max_iter)
}
