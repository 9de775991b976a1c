//! Error norms, convergence rates, chattering and arrival detection.

use std::io::Write;

use crate::error::{Error, Result};
use crate::integrators::Trajectory;
use crate::scalar::{sign0, Scalar};

/// Threshold below which a surface value counts as exactly zero.
pub const ZERO_TOL: f64 = 1e-12;

/// Discrete error norms of a sampled signal against a reference.
///
/// `inf_norm` is the largest pointwise error; `l1_norm` and `l2_norm` are
/// `(h Σ_k |e_k|^p)^{1/p}` over every sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport<T: Scalar> {
    pub inf_norm: T,
    pub l1_norm: T,
    pub l2_norm: T,
}

pub fn norms_of_errors<T: Scalar>(errors: &[T], h: T) -> ErrorReport<T> {
    let mut inf = T::zero();
    let mut l1 = T::zero();
    let mut l2 = T::zero();
    for e in errors.iter().map(|e| e.abs()) {
        inf = inf.max(e);
        l1 += e;
        l2 += e * e;
    }
    ErrorReport {
        inf_norm: inf,
        l1_norm: h * l1,
        l2_norm: (h * l2).sqrt(),
    }
}

/// Norms of `values[k] − reference(times[k])`.
pub fn error_norms<T: Scalar>(times: &[T], values: &[T], h: T, reference: impl Fn(T) -> T) -> Result<ErrorReport<T>> {
    if times.len() != values.len() {
        return Err(Error::dims("error samples", times.len(), values.len()));
    }
    let errors: Vec<T> = times.iter().zip(values).map(|(&t, &v)| v - reference(t)).collect();
    Ok(norms_of_errors(&errors, h))
}

/// Exact state of `ẋ ∈ −Sgn(x)`: `sgn(x0)·max(|x0| − t, 0)`.
pub fn simple_state_reference<T: Scalar>(x0: T, t: T) -> T {
    sign0(x0) * (x0.abs() - t).max(T::zero())
}

/// Exact selection of `ẋ ∈ −Sgn(x)`: `sgn(x0)` before arrival, 0 after.
pub fn simple_selection_reference<T: Scalar>(x0: T, t: T) -> T {
    if t < x0.abs() {
        sign0(x0)
    } else {
        T::zero()
    }
}

/// Least-squares slope of `log(error)` against `log(h)`.
pub fn convergence_slope<T: Scalar>(points: &[(T, T)]) -> Result<T> {
    if points.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|&(h, e)| !(h > T::zero()) || !(e > T::zero())) {
        return Err(Error::InvalidInput("step sizes and errors must be positive".into()));
    }
    let n = T::from_usize(points.len()).expect("point count fits scalar");
    let (lx, ly): (Vec<T>, Vec<T>) = points.iter().map(|&(h, e)| (h.ln(), e.ln())).unzip();
    let mx = lx.iter().fold(T::zero(), |a, &v| a + v) / n;
    let my = ly.iter().fold(T::zero(), |a, &v| a + v) / n;
    let mut sxy = T::zero();
    let mut sxx = T::zero();
    for (x, y) in lx.iter().zip(&ly) {
        sxy += (*x - mx) * (*y - my);
        sxx += (*x - mx) * (*x - mx);
    }
    if sxx == T::zero() {
        return Err(Error::InvalidInput("all step sizes are equal".into()));
    }
    Ok(sxy / sxx)
}

/// Last quarter of `values`, but at least 8 samples (or all of them).
pub fn tail_window<T>(values: &[T]) -> &[T] {
    let len = (values.len() / 4).max(8).min(values.len());
    &values[values.len() - len..]
}

/// True when `values` alternates between two distinct levels:
/// `|v_{k+2} − v_k| ≤ tol` everywhere and `|v_{k+1} − v_k| > 10·tol`.
pub fn detect_period2<T: Scalar>(values: &[T], tol: T) -> bool {
    if values.len() < 8 {
        return false;
    }
    let ten = T::lit(10.0) * tol;
    values.windows(3).all(|w| (w[2] - w[0]).abs() <= tol) && values.windows(2).all(|w| (w[1] - w[0]).abs() > ten)
}

/// [`detect_period2`] on the [`tail_window`] of a channel.
pub fn detect_period2_tail<T: Scalar>(values: &[T], tol: T) -> bool {
    detect_period2(tail_window(values), tol)
}

/// Smallest `k` with `|v_j| ≤ tol` for every `j ≥ k`.
pub fn arrival_index<T: Scalar>(values: &[T], tol: T) -> Option<usize> {
    let last_off = values.iter().rposition(|v| !(v.abs() <= tol));
    match last_off {
        None if values.is_empty() => None,
        None => Some(0),
        Some(k) if k + 1 == values.len() => None,
        Some(k) => Some(k + 1),
    }
}

/// [`arrival_index`] on output channel `surface`.
pub fn arrival_step<T: Scalar>(traj: &Trajectory<T>, surface: usize, tol: T) -> Result<Option<usize>> {
    let m = traj.outputs.first().map_or(0, |y| y.len());
    if surface >= m {
        return Err(Error::InvalidInput(format!(
            "surface index {surface} out of range for {m} surfaces"
        )));
    }
    Ok(arrival_index(&traj.output_channel(surface), tol))
}

/// One row of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergencePoint<T: Scalar> {
    pub h: T,
    pub report: ErrorReport<T>,
}

/// Fitted slopes of the three norms; `inf` is usually meaningless here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceSlopes<T: Scalar> {
    pub inf: T,
    pub l1: T,
    pub l2: T,
}

pub fn convergence_slopes<T: Scalar>(points: &[ConvergencePoint<T>]) -> Result<ConvergenceSlopes<T>> {
    let col = |f: fn(&ErrorReport<T>) -> T| points.iter().map(|p| (p.h, f(&p.report))).collect::<Vec<_>>();
    let inf = convergence_slope(&col(|r| r.inf_norm))?;
    Ok(ConvergenceSlopes {
        inf,
        l1: convergence_slope(&col(|r| r.l1_norm))?,
        l2: convergence_slope(&col(|r| r.l2_norm))?,
    })
}

/// `h,inf,l1,l2` rows followed by a `# slopes` comment line when at least
/// three points are present.
pub fn write_convergence_csv<T: Scalar, W: Write>(points: &[ConvergencePoint<T>], mut out: W) -> Result<()> {
    writeln!(out, "h,inf,l1,l2")?;
    for p in points {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            p.h, p.report.inf_norm, p.report.l1_norm, p.report.l2_norm
        )?;
    }
    if let Ok(s) = convergence_slopes(points) {
        writeln!(out, "# slopes inf={:.6} l1={:.6} l2={:.6}", s.inf, s.l1, s.l2)?;
    }
    Ok(())
}

/// Geometric grid of `points` step sizes from `h_max` down to `h_min`.
pub fn log_spaced<T: Scalar>(h_min: T, h_max: T, points: usize) -> Result<Vec<T>> {
    if !(h_min > T::zero()) || h_max < h_min || points < 2 {
        return Err(Error::InvalidInput(
            "need 0 < h_min <= h_max and at least 2 points".into(),
        ));
    }
    let (a, b) = (h_max.ln(), h_min.ln());
    let last = T::from_usize(points - 1).expect("point count fits scalar");
    Ok((0..points)
        .map(|i| (a + (b - a) * T::from_usize(i).expect("index fits scalar") / last).exp())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_signals_have_zero_error() {
        let t = [0.0, 0.1, 0.2];
        let r = error_norms(&t, &t, 0.1, |t| t).unwrap();
        assert_eq!((r.inf_norm, r.l1_norm, r.l2_norm), (0.0, 0.0, 0.0));
    }

    #[test]
    fn constant_error_closed_form() {
        let (c, h, n) = (0.3_f64, 0.05, 40);
        let r = norms_of_errors(&vec![c; n], h);
        assert!((r.inf_norm - c).abs() < 1e-15);
        assert!((r.l1_norm - h * n as f64 * c).abs() < 1e-14);
        assert!((r.l2_norm - c * (h * n as f64).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn slope_of_power_laws() {
        let hs = [0.1, 0.05, 0.02, 0.01, 0.001_f64];
        let lin: Vec<_> = hs.iter().map(|&h| (h, 3.0 * h)).collect();
        let half: Vec<_> = hs.iter().map(|&h| (h, 0.7 * h.sqrt())).collect();
        assert!((convergence_slope(&lin).unwrap() - 1.0).abs() < 1e-12);
        assert!((convergence_slope(&half).unwrap() - 0.5).abs() < 1e-12);
        assert!(convergence_slope(&lin[..2]).is_err());
        assert!(convergence_slope(&[(0.1, 0.0), (0.2, 1.0), (0.3, 1.0)]).is_err());
    }

    #[test]
    fn period_two_examples() {
        let alt: Vec<f64> = (0..20).map(|k| if k % 2 == 0 { 0.01 } else { -0.19 }).collect();
        assert!(detect_period2(&alt, 1e-12));
        assert!(!detect_period2(&[0.0; 20], 1e-12));
        assert!(!detect_period2(&alt[..6], 1e-12));
    }

    #[test]
    fn tail_window_sizes() {
        let v: Vec<usize> = (0..100).collect();
        assert_eq!(tail_window(&v), &v[75..]);
        assert_eq!(tail_window(&v[..20]).len(), 8);
        assert_eq!(tail_window(&v[..5]).len(), 5);
    }

    #[test]
    fn arrival_cases() {
        assert_eq!(arrival_index(&[1.0, 0.5, 0.0, 0.0], 1e-13), Some(2));
        assert_eq!(arrival_index(&[0.0, 0.0], 1e-13), Some(0));
        assert_eq!(arrival_index(&[0.0, 0.1], 1e-13), None);
        assert_eq!(arrival_index(&[0.0, 0.1, 0.0], 1e-13), Some(2));
        assert_eq!(arrival_index::<f64>(&[], 1e-13), None);
    }

    #[test]
    fn simple_references() {
        assert_eq!(simple_state_reference(1.01, 0.5), 1.01 - 0.5);
        assert_eq!(simple_state_reference(-0.3, 1.0), 0.0);
        assert_eq!(simple_selection_reference(-0.3, 0.1), -1.0);
        assert_eq!(simple_selection_reference(-0.3, 0.3), 0.0);
        assert_eq!(simple_selection_reference(0.0, 0.0), 0.0);
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_spaced(1e-3, 1e-1, 8).unwrap();
        assert_eq!(g.len(), 8);
        assert!((g[0] - 1e-1_f64).abs() < 1e-15 && (g[7] - 1e-3_f64).abs() < 1e-15);
    }

    #[test]
    fn convergence_csv_has_summary() {
        let pts: Vec<_> = [0.1_f64, 0.01, 0.001]
            .iter()
            .map(|&h| ConvergencePoint {
                h,
                report: ErrorReport {
                    inf_norm: 1.0,
                    l1_norm: h,
                    l2_norm: h.sqrt(),
                },
            })
            .collect();
        let mut buf = Vec::new();
        write_convergence_csv(&pts, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("h,inf,l1,l2\n"));
        assert!(s.contains("l1=1.000000 l2=0.500000"));
    }
}
