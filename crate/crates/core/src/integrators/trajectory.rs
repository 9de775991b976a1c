use std::io::Write;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Time-indexed record of a simulation.
///
/// Row `k` holds `t_k`, `x_k`, the selection `s_k` that produced `x_k` (zero
/// for the initial row), `y_k`, the control applied over `[t_{k-1}, t_k)` when
/// a controller is in the loop, and the number of Newton iterations spent on
/// that step.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T: Scalar> {
    pub times: Vec<T>,
    pub states: Vec<DVector<T>>,
    pub selections: Vec<DVector<T>>,
    pub outputs: Vec<DVector<T>>,
    pub controls: Option<Vec<DVector<T>>>,
    pub newton_iters: Vec<usize>,
}

impl<T: Scalar> Trajectory<T> {
    pub fn start(t0: T, x0: DVector<T>, y0: DVector<T>, control_dim: Option<usize>) -> Self {
        let m = y0.len();
        Self {
            times: vec![t0],
            states: vec![x0],
            selections: vec![DVector::zeros(m)],
            outputs: vec![y0],
            controls: control_dim.map(|c| vec![DVector::zeros(c)]),
            newton_iters: vec![0],
        }
    }

    pub fn push(&mut self, t: T, x: DVector<T>, s: DVector<T>, y: DVector<T>, u: Option<DVector<T>>, iters: usize) {
        self.times.push(t);
        self.states.push(x);
        self.selections.push(s);
        self.outputs.push(y);
        if let Some(c) = self.controls.as_mut() {
            let dim = c.first().map_or(0, |v| v.len());
            c.push(u.unwrap_or_else(|| DVector::zeros(dim)));
        }
        self.newton_iters.push(iters);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Number of steps taken, one less than the number of rows.
    pub fn steps(&self) -> usize {
        self.len().saturating_sub(1)
    }

    pub fn last_state(&self) -> Option<&DVector<T>> {
        self.states.last()
    }

    pub fn state_channel(&self, i: usize) -> Vec<T> {
        self.states.iter().map(|x| x[i]).collect()
    }

    pub fn output_channel(&self, i: usize) -> Vec<T> {
        self.outputs.iter().map(|y| y[i]).collect()
    }

    pub fn selection_channel(&self, i: usize) -> Vec<T> {
        self.selections.iter().map(|s| s[i]).collect()
    }

    pub fn control_channel(&self, i: usize) -> Option<Vec<T>> {
        self.controls.as_ref().map(|c| c.iter().map(|u| u[i]).collect())
    }

    /// Checks equal lengths, uniform spacing `h` within `1e-12` (relative to
    /// the largest time), and `|s_k|∞ ≤ 1 + 1e-9`.
    pub fn check_invariants(&self, h: T) -> Result<()> {
        let n = self.len();
        let lens = [
            self.states.len(),
            self.selections.len(),
            self.outputs.len(),
            self.newton_iters.len(),
        ];
        if lens.iter().any(|&l| l != n) || self.controls.as_ref().is_some_and(|c| c.len() != n) {
            return Err(Error::InvalidInput("trajectory columns have unequal lengths".into()));
        }
        let scale = self.times.iter().fold(T::one(), |a, t| a.max(t.abs()));
        let tol = T::lit(1e-12) * scale;
        for w in self.times.windows(2) {
            if !(w[1] > w[0]) || ((w[1] - w[0]) - h).abs() > tol {
                return Err(Error::InvalidInput(format!("non-uniform time grid at t = {}", w[0])));
            }
        }
        let bound = T::one() + T::lit(1e-9);
        if let Some(k) = self.selections.iter().position(|s| s.iter().any(|v| v.abs() > bound)) {
            return Err(Error::InvalidInput(format!("selection leaves the unit box at row {k}")));
        }
        Ok(())
    }

    /// Header `t,x0..,s0..,y0..[,u0..]`; values in `{:.16e}`, which carries
    /// the 17 significant digits needed to round-trip an `f64`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let n = self.states.first().map_or(0, |v| v.len());
        let m = self.outputs.first().map_or(0, |v| v.len());
        let c = self.controls.as_ref().and_then(|c| c.first()).map_or(0, |v| v.len());
        let mut header = vec!["t".to_string()];
        header.extend((0..n).map(|i| format!("x{i}")));
        header.extend((0..m).map(|i| format!("s{i}")));
        header.extend((0..m).map(|i| format!("y{i}")));
        if self.controls.is_some() {
            header.extend((0..c).map(|i| format!("u{i}")));
        }
        writeln!(out, "{}", header.join(","))?;
        for k in 0..self.len() {
            let mut row = vec![format!("{:.16e}", self.times[k])];
            let mut cols = |v: &DVector<T>| row.extend(v.iter().map(|x| format!("{x:.16e}")));
            cols(&self.states[k]);
            cols(&self.selections[k]);
            cols(&self.outputs[k]);
            if let Some(u) = &self.controls {
                cols(&u[k]);
            }
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv output is ascii")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Trajectory<f64> {
        let mut t = Trajectory::start(
            0.0,
            DVector::from_vec(vec![1.0, 2.0]),
            DVector::from_vec(vec![3.0]),
            None,
        );
        t.push(
            0.5,
            DVector::from_vec(vec![0.5, 1.0]),
            DVector::from_vec(vec![1.0]),
            DVector::from_vec(vec![1.5]),
            None,
            1,
        );
        t
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv_string();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t,x0,x1,s0,y0");
        assert_eq!(lines.len(), 3);
        let back: Vec<f64> = lines[2].split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(back, vec![0.5, 0.5, 1.0, 1.0, 1.5]);
    }

    #[test]
    fn csv_roundtrips_doubles_exactly() {
        let v = 0.1_f64 + 0.2;
        let t = Trajectory::start(v, DVector::from_element(1, v), DVector::from_element(1, v), Some(1));
        let csv = t.to_csv_string();
        assert!(csv.starts_with("t,x0,s0,y0,u0\n"));
        let first: f64 = csv.lines().nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
        assert_eq!(first.to_bits(), v.to_bits());
    }

    #[test]
    fn invariants() {
        let t = sample();
        assert!(t.check_invariants(0.5).is_ok());
        assert!(t.check_invariants(0.4).is_err());
        let mut bad = t.clone();
        bad.selections[1][0] = 1.1;
        assert!(bad.check_invariants(0.5).is_err());
        let mut short = t;
        short.outputs.pop();
        assert!(short.check_invariants(0.5).is_err());
    }
}
