//! Concrete systems behind the registry entries.

use std::collections::BTreeMap;

use multisurf::systems::{AffineGainSignSystem, DisturbedLinearSystem, Drift, LinearSignSystem};
use multisurf::Result;
use nalgebra::{DMatrix, DVector};

use crate::registry::Model;

type Params = BTreeMap<&'static str, f64>;

fn rows(r: usize, c: usize, v: &[f64]) -> DMatrix<f64> {
    DMatrix::from_row_slice(r, c, v)
}

pub fn simple() -> Result<LinearSignSystem<f64>> {
    LinearSignSystem::driftless(DMatrix::identity(1, 1), DMatrix::identity(1, 1))
}

/// `x1' = x2`, `x2' = -x2 - α sgn(c1 x1 + x2)`.
pub fn single_surface(p: &Params) -> Result<LinearSignSystem<f64>> {
    LinearSignSystem::new(
        rows(2, 2, &[0.0, 1.0, 0.0, -1.0]),
        DVector::zeros(2),
        rows(2, 1, &[0.0, p["alpha"]]),
        rows(1, 2, &[p["c1"], 1.0]),
        DVector::zeros(1),
    )
}

pub fn multisurface() -> Result<LinearSignSystem<f64>> {
    let b = rows(2, 2, &[1.0, 2.0, 2.0, -1.0]);
    LinearSignSystem::driftless(b.clone(), b)
}

pub fn filippov() -> Result<LinearSignSystem<f64>> {
    LinearSignSystem::driftless(rows(2, 2, &[1.0, -2.0, 2.0, 1.0]), DMatrix::identity(2, 2))
}

/// Observer loop on `(x, x̂, z, ż)`: plant `x' = -sgn(x - x̂)`, observer gain `k`,
/// and a critically damped second-order filter with time constant `τ`.
pub fn observer(p: &Params) -> Result<LinearSignSystem<f64>> {
    let (k, tau) = (p["k"], p["tau"]);
    let w = 1.0 / (tau * tau);
    LinearSignSystem::new(
        rows(
            4,
            4,
            &[
                0.0,
                0.0,
                0.0,
                0.0,
                k,
                -k,
                -k,
                0.0,
                0.0,
                0.0,
                0.0,
                1.0,
                w,
                0.0,
                -w,
                -2.0 / tau,
            ],
        ),
        DVector::zeros(4),
        rows(4, 1, &[1.0, 0.0, 0.0, 0.0]),
        rows(1, 4, &[1.0, -1.0, 0.0, 0.0]),
        DVector::zeros(1),
    )
}

/// `(F, G, C)` of the sampled-data plants.
pub fn plant(model: Model, p: &Params) -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
    match model {
        Model::ZohSiso => (
            rows(2, 2, &[0.0, 1.0, -p["a1"], -p["a2"]]),
            rows(2, 1, &[0.0, 1.0]),
            rows(1, 2, &[p["c1"], 1.0]),
        ),
        _ => (
            rows(3, 3, &[0.0, 0.0, 1.0, 1.0, 1.0, 1.0, -1.0, -3.0, 1.0]),
            rows(3, 2, &[0.0, 0.0, 1.0, 0.0, 0.0, 1.0]),
            rows(2, 3, &[1.0, 0.0, 1.0, 0.0, 1.0, 1.0]),
        ),
    }
}

/// `x' = -x + u + α sin t`, `u = -ρ sgn(x)`.
pub fn lyapunov(p: &Params) -> Result<DisturbedLinearSystem<f64>> {
    let (alpha, rho) = (p["alpha"], p["rho"]);
    DisturbedLinearSystem::new(
        DMatrix::from_element(1, 1, -1.0),
        DMatrix::identity(1, 1),
        DVector::from_element(1, rho),
        DMatrix::identity(1, 1),
        move |t: f64| DVector::from_element(1, alpha * t.sin()),
        DVector::from_element(1, rho),
    )
}

/// `x' ∈ -(x + 1) sgn(x)`.
pub fn hypomonotone() -> Result<AffineGainSignSystem<f64>> {
    AffineGainSignSystem::new(
        vec![DMatrix::identity(1, 1)],
        vec![DVector::from_element(1, 1.0)],
        DMatrix::identity(1, 1),
        DVector::zeros(1),
        Drift::zero(1),
    )
}
