#![allow(dead_code)]

use nalgebra::DMatrix;

/// `exp(Fh)` and `∫₀ʰ exp(Fτ)dτ` by classical RK4 on `Ė = FE`, `İ = E` with
/// `steps` uniform substeps.
pub fn rk4_exp_and_integral(f: &DMatrix<f64>, h: f64, steps: usize) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = f.nrows();
    let dt = h / steps as f64;
    let mut e = DMatrix::<f64>::identity(n, n);
    let mut i = DMatrix::<f64>::zeros(n, n);
    for _ in 0..steps {
        let k1e = f * &e;
        let k1i = e.clone();
        let e2 = &e + &k1e * (dt / 2.0);
        let k2e = f * &e2;
        let k2i = e2;
        let e3 = &e + &k2e * (dt / 2.0);
        let k3e = f * &e3;
        let k3i = e3;
        let e4 = &e + &k3e * dt;
        let k4e = f * &e4;
        let k4i = e4;
        e += (k1e + &k2e * 2.0 + &k3e * 2.0 + k4e) * (dt / 6.0);
        i += (k1i + k2i * 2.0 + k3i * 2.0 + k4i) * (dt / 6.0);
    }
    (e, i)
}

/// Sampled equivalent-control pair assembled from the RK oracle.
pub fn rk4_zoh(f: &DMatrix<f64>, g: &DMatrix<f64>, c: &DMatrix<f64>, h: f64) -> (DMatrix<f64>, DMatrix<f64>) {
    let (e, i) = rk4_exp_and_integral(f, h, 10_000);
    let k = i * g * (c * g).try_inverse().unwrap();
    let phi = e - &k * c * f;
    (phi, k)
}

/// Closed-form implicit Euler of `ẋ ∈ −Sgn(x)`: states and selections for
/// `steps` steps from `x0`.
pub fn simple_closed_form(x0: f64, h: f64, steps: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![x0];
    let mut ss = vec![0.0];
    for _ in 0..steps {
        let x = *xs.last().unwrap();
        let (xn, s) = if x.abs() > h {
            (x - h * x.signum(), x.signum())
        } else {
            (0.0, x / h)
        };
        xs.push(xn);
        ss.push(s);
    }
    (xs, ss)
}

/// Writes straight to stderr so the line shows even when output is captured.
pub fn report(criterion: u32, pass: bool, detail: String) {
    use std::io::Write;
    let line = format!(
        "criterion {criterion:>2}: {} {detail}\n",
        if pass { "PASS" } else { "FAIL" }
    );
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
}
