use multisurf::controllers::iec_control;
use multisurf::mlcp::{
    certify, from_sign_step, solve, solve_enumerative, solve_pivoting, solve_psor, MlcpProblem, SignStepProblem,
    Solver, SolverOptions,
};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spd(m: usize, entries: &[f64]) -> DMatrix<f64> {
    let a = DMatrix::from_fn(m, m, |i, j| entries[i * 6 + j]);
    &a * a.transpose() + DMatrix::identity(m, m) * 0.3
}

fn psor_opts() -> SolverOptions<f64> {
    SolverOptions {
        psor_tol: 1e-13,
        max_iter: 100_000,
        ..SolverOptions::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solvers_agree_on_spd_box_problems(
        m in 1usize..=6,
        entries in prop::collection::vec(-1.0..1.0f64, 36),
        q in prop::collection::vec(-3.0..3.0f64, 6),
        half_width in prop::collection::vec(0.1..2.0f64, 6),
    ) {
        let opts = psor_opts();
        let p = MlcpProblem::new(
            spd(m, &entries),
            DVector::from_column_slice(&q[..m]),
            DVector::from_iterator(m, half_width[..m].iter().map(|w| -w)),
            DVector::from_column_slice(&half_width[..m]),
        ).unwrap();
        let oracle = solve_enumerative(&p, &opts).unwrap();
        prop_assert!(oracle.is_solved());
        prop_assert!(certify(&p, &oracle) <= 1e-9);
        let piv = solve_pivoting(&p, &opts);
        let psor = solve_psor(&p, opts.omega, opts.max_iter, opts.psor_tol, None);
        for s in [&piv, &psor] {
            prop_assert!(s.is_solved());
            prop_assert!(certify(&p, s) <= 1e-9);
            prop_assert!((&s.z - &oracle.z).amax() <= 1e-8);
        }
    }

    #[test]
    fn sign_encoding_is_sound(
        m in 1usize..=5,
        entries in prop::collection::vec(-1.0..1.0f64, 36),
        b in prop::collection::vec(-4.0..4.0f64, 6),
        h in 0.01..1.0f64,
    ) {
        let w = spd(m, &entries) * h;
        let step = SignStepProblem::new(w, DVector::from_column_slice(&b[..m])).unwrap();
        let sol = solve(&from_sign_step(&step), Solver::Auto, &SolverOptions::default(), None).unwrap();
        prop_assert!(sol.is_solved());
        let y = step.output(&sol.z);
        for i in 0..m {
            let z = sol.z[i];
            prop_assert!(z.abs() <= 1.0);
            if z.abs() < 1.0 - 1e-9 {
                prop_assert!(y[i].abs() <= 1e-9);
            } else if z == 1.0 {
                prop_assert!(y[i] >= -1e-9);
            } else if z == -1.0 {
                prop_assert!(y[i] <= 1e-9);
            }
        }
    }

    #[test]
    fn scaling_leaves_z_unchanged(
        m in 1usize..=5,
        entries in prop::collection::vec(-1.0..1.0f64, 36),
        q in prop::collection::vec(-3.0..3.0f64, 6),
        alpha in 0.05..20.0f64,
    ) {
        let p = MlcpProblem::unit_box(spd(m, &entries), DVector::from_column_slice(&q[..m])).unwrap();
        let opts = SolverOptions::default();
        let base = solve_enumerative(&p, &opts).unwrap();
        let scaled = solve_enumerative(&p.scaled(alpha), &opts).unwrap();
        prop_assert!((&base.z - &scaled.z).amax() <= 1e-9);
        prop_assert!((&base.w * alpha - &scaled.w).amax() <= 1e-9 * alpha.max(1.0));
        prop_assert!((&base.v * alpha - &scaled.v).amax() <= 1e-9 * alpha.max(1.0));
    }
}

#[test]
fn iec_matches_scalar_one_step_problem() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let opts = SolverOptions::default();
    for _ in 0..100 {
        let x_k: f64 = rng.gen_range(-2.0..2.0);
        let h: f64 = rng.gen_range(0.01..1.0);
        // x_{k+1} = x_k − h s, s ∈ Sgn(x_{k+1}): W = h, b = x_k
        let step = SignStepProblem::new(DMatrix::from_element(1, 1, h), DVector::from_element(1, x_k)).unwrap();
        let s = solve_enumerative(&from_sign_step(&step), &opts).unwrap().z[0];
        assert!((iec_control(x_k, h) + s).abs() < 1e-12, "x_k={x_k} h={h}");
    }
}

#[test]
fn auto_policy_solves_non_monotone_scalar() {
    let p = MlcpProblem::unit_box(DMatrix::from_element(1, 1, -1.0), DVector::from_element(1, 0.5)).unwrap();
    let sol = solve(&p, Solver::Auto, &SolverOptions::default(), None).unwrap();
    assert!(sol.is_solved());
    assert!(certify(&p, &sol) <= 1e-12);
}

#[test]
fn single_precision_solvers_run() {
    let p = MlcpProblem::<f32>::unit_box(DMatrix::identity(2, 2) * 2.0, DVector::from_vec(vec![-1.0, 5.0])).unwrap();
    let opts = SolverOptions::<f32>::default();
    for sol in [solve_enumerative(&p, &opts).unwrap(), solve_pivoting(&p, &opts)] {
        assert!(sol.is_solved());
        assert!((sol.z[0] - 0.5).abs() < 1e-6 && sol.z[1] == -1.0);
    }
}
