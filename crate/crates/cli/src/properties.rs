//! Property tags and their checks.

use std::collections::BTreeMap;

use multisurf::analysis::{
    arrival_index, convergence_slopes, detect_period2_tail, tail_window, ConvergencePoint, ZERO_TOL,
};
use multisurf::TrajectoryF64;
use serde::Serialize;

use crate::registry::{Model, Scheme};

/// Period-2 matching tolerance on surface values.
pub const PERIOD2_TOL: f64 = 1e-9;
/// A state beyond this magnitude counts as blown up.
pub const BLOW_UP: f64 = 1e6;
/// Final-state tolerance for `origin-reached`.
pub const ORIGIN_TOL: f64 = 1e-10;

/// Verdict on one tag.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Property {
    pub tag: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Per-step amplification of `x' = λx` under the θ-scheme.
fn amplification(lambda: f64, h: f64, theta: f64) -> f64 {
    ((1.0 + h * (1.0 - theta) * lambda) / (1.0 - h * theta * lambda)).abs()
}

/// Whether the observer's linear part is unstable under the given scheme.
pub fn observer_unstable(scheme: Scheme, theta: f64, h: f64, params: &BTreeMap<&'static str, f64>) -> bool {
    let theta = if scheme.is_explicit() { 0.0 } else { theta };
    let poles = [-1.0 / params["tau"], -params["k"]];
    poles.iter().any(|&l| amplification(l, h, theta) > 1.0)
}

/// Tags a run is expected to satisfy.
pub fn expected_tags(
    model: Model,
    scheme: Scheme,
    theta: f64,
    gamma: f64,
    h: f64,
    params: &BTreeMap<&'static str, f64>,
) -> Vec<&'static str> {
    let explicit = scheme.is_explicit();
    match model {
        Model::Simple if explicit => vec!["chattering"],
        Model::Simple => vec!["finite-time-zero"],
        Model::Convergence => vec!["sup-norm-constant", "l1-order-one", "l2-order-half"],
        Model::SingleSurface | Model::ZohSiso if explicit => vec!["period2-detected"],
        Model::SingleSurface | Model::ZohSiso => vec!["surface-reached", "no-period2"],
        Model::Multisurface if explicit => vec!["chattering"],
        Model::Multisurface => vec!["surfaces-in-order", "surface-reached", "origin-reached"],
        Model::Filippov if explicit => vec!["chattering"],
        Model::Filippov => vec!["surface-reached", "origin-reached"],
        Model::ZohMimo if explicit => vec!["surface-not-reached"],
        Model::ZohMimo => vec!["surface-reached"],
        Model::Lyapunov if explicit => vec!["control-alternates"],
        Model::Lyapunov => vec!["finite-time-zero", "control-tracks-disturbance"],
        Model::Observer if observer_unstable(scheme, theta, h, params) => vec!["unstable-expected"],
        Model::Observer if !explicit && theta == 1.0 => vec!["bounded", "no-period2"],
        Model::Observer => vec!["bounded"],
        Model::Hypomonotone if theta == 1.0 && gamma == 1.0 => vec!["finite-time-zero", "closed-form-match"],
        Model::Hypomonotone => vec!["finite-time-zero"],
    }
}

/// What a run produced, as seen by the checks.
pub struct Evidence<'a> {
    pub model: Model,
    pub h: f64,
    pub x0: &'a [f64],
    pub params: &'a BTreeMap<&'static str, f64>,
    pub trajectory: Option<&'a TrajectoryF64>,
    /// False when a step failed before the horizon.
    pub completed: bool,
    pub convergence: Option<&'a [ConvergencePoint<f64>]>,
}

fn prop(tag: &'static str, pass: bool, detail: String) -> Property {
    Property { tag, pass, detail }
}

fn reached(values: &[f64]) -> Option<usize> {
    arrival_index(values, ZERO_TOL).filter(|&k| k + 1 < values.len())
}

fn peak(traj: &TrajectoryF64) -> f64 {
    traj.states
        .iter()
        .flat_map(|x| x.iter())
        .map(|v| if v.is_finite() { v.abs() } else { f64::INFINITY })
        .fold(0.0, f64::max)
}

fn surface_peaks(traj: &TrajectoryF64) -> Vec<f64> {
    traj.outputs.iter().map(|y| y.amax()).collect()
}

pub fn evaluate(tag: &'static str, ev: &Evidence<'_>) -> Property {
    if let Some(points) = ev.convergence {
        return evaluate_convergence(tag, points);
    }
    let Some(traj) = ev.trajectory else {
        return prop(tag, false, "no trajectory".into());
    };
    let h = ev.h;
    let m = traj.outputs.first().map_or(0, |y| y.len());
    match tag {
        "finite-time-zero" => {
            let n = traj.states.first().map_or(0, |x| x.len());
            let k = (0..n)
                .map(|i| reached(&traj.state_channel(i)))
                .collect::<Option<Vec<_>>>();
            let k0 = k.and_then(|k| k.into_iter().max());
            let bound = (ev.model == Model::Simple).then(|| (ev.x0[0].abs() / h).ceil() as usize);
            let pass = ev.completed && k0.is_some_and(|k| bound.is_none_or(|b| k <= b));
            let bound_txt = bound.map_or(String::new(), |b| format!(" (bound {b})"));
            prop(tag, pass, format!("state exactly zero from step {k0:?}{bound_txt}"))
        }
        "surface-reached" => {
            let k: Vec<_> = (0..m).map(|i| reached(&traj.output_channel(i))).collect();
            let pass = ev.completed && m > 0 && k.iter().all(Option::is_some);
            prop(tag, pass, format!("surface arrivals {k:?}"))
        }
        "surfaces-in-order" => {
            let k: Vec<_> = (0..m).map(|i| reached(&traj.output_channel(i))).collect();
            let pass = k.len() >= 2
                && k.windows(2)
                    .all(|w| matches!((w[0], w[1]), (Some(a), Some(b)) if a < b));
            prop(tag, pass, format!("surface arrivals {k:?}"))
        }
        "origin-reached" => {
            let last = traj.last_state().map_or(f64::INFINITY, |x| x.amax());
            prop(
                tag,
                ev.completed && last <= ORIGIN_TOL,
                format!("final |x| = {last:.3e}"),
            )
        }
        "no-period2" => {
            let cyc: Vec<_> = (0..m)
                .filter(|&i| detect_period2_tail(&traj.output_channel(i), PERIOD2_TOL))
                .collect();
            prop(
                tag,
                ev.completed && cyc.is_empty(),
                format!("period-2 surface channels {cyc:?}"),
            )
        }
        "period2-detected" => {
            let cyc = m > 0 && detect_period2_tail(&traj.output_channel(0), PERIOD2_TOL);
            let tail = tail_window(&traj.outputs)
                .iter()
                .map(|y| y[0])
                .take(2)
                .collect::<Vec<_>>();
            prop(tag, cyc, format!("tail starts {tail:?}"))
        }
        "chattering" => {
            let k: Vec<_> = (0..m).map(|i| reached(&traj.output_channel(i))).collect();
            prop(tag, k.iter().any(Option::is_none), format!("surface arrivals {k:?}"))
        }
        "surface-not-reached" => {
            let peaks = surface_peaks(traj);
            let tail = tail_window(&peaks);
            let above = tail.iter().filter(|&&v| v > h / 10.0).count();
            prop(
                tag,
                above * 2 >= tail.len(),
                format!("{above}/{} tail samples with |y| > h/10", tail.len()),
            )
        }
        "bounded" => {
            let p = peak(traj);
            prop(
                tag,
                ev.completed && p <= BLOW_UP,
                format!("peak |x| = {p:.3e}, completed {}", ev.completed),
            )
        }
        "unstable-expected" => {
            let p = peak(traj);
            let pass = !ev.completed || p > BLOW_UP;
            prop(tag, pass, format!("peak |x| = {p:.3e}, completed {}", ev.completed))
        }
        "control-tracks-disturbance" => control_tracks(traj, h, ev.params["alpha"]),
        "control-alternates" => control_alternates(traj, ev.params["rho"]),
        "closed-form-match" => hypomonotone_closed_form(traj, h),
        other => prop(other, false, "unknown property".into()),
    }
}

/// Row `j` holds the control applied over `[t_{j-1}, t_j)`, computed from `x_{j-1}`.
fn control_tracks(traj: &TrajectoryF64, h: f64, alpha: f64) -> Property {
    let tag = "control-tracks-disturbance";
    let (Some(us), xs) = (traj.control_channel(0), traj.state_channel(0)) else {
        return prop(tag, false, "no control recorded".into());
    };
    let Some(k) = reached(&xs) else {
        return prop(tag, false, "state never reaches zero".into());
    };
    let err = (k.max(1)..xs.len())
        .filter(|&j| xs[j - 1].abs() <= ZERO_TOL)
        .map(|j| (us[j] - alpha * traj.times[j - 1].sin()).abs())
        .fold(0.0, f64::max);
    prop(
        tag,
        err <= 2.0 * h,
        format!("max |u - alpha sin t| on the sliding tail = {err:.3e}"),
    )
}

/// Saturated control whose sign never repeats three times in a row on the tail.
fn control_alternates(traj: &TrajectoryF64, rho: f64) -> Property {
    let tag = "control-alternates";
    let Some(us) = traj.control_channel(0) else {
        return prop(tag, false, "no control recorded".into());
    };
    let tail = tail_window(&us);
    let saturated = tail.iter().all(|u| (u.abs() - rho).abs() <= 1e-12);
    let switching = tail.windows(3).all(|w| w[0] * w[1] < 0.0 || w[1] * w[2] < 0.0);
    prop(
        tag,
        saturated && switching,
        format!("tail saturated {saturated}, switching {switching}"),
    )
}

/// Outside the band `[-h, h]` the scalar hypomonotone step is `(x - h σ)/(1 + h σ)`.
fn hypomonotone_closed_form(traj: &TrajectoryF64, h: f64) -> Property {
    let xs = traj.state_channel(0);
    let ss = traj.selection_channel(0);
    let mut dev = 0.0_f64;
    for k in 0..xs.len().saturating_sub(1) {
        let x = xs[k];
        if x.abs() <= h {
            break;
        }
        let sg = x.signum();
        dev = dev.max((xs[k + 1] - (x - h * sg) / (1.0 + h * sg)).abs());
        dev = dev.max((ss[k + 1] - sg).abs());
    }
    prop("closed-form-match", dev <= 1e-12, format!("max deviation {dev:.3e}"))
}

fn evaluate_convergence(tag: &'static str, points: &[ConvergencePoint<f64>]) -> Property {
    let slopes = convergence_slopes(points);
    match (tag, slopes) {
        ("sup-norm-constant", _) => {
            let worst = points
                .iter()
                .map(|p| (p.report.inf_norm - 1.0).abs())
                .fold(0.0, f64::max);
            prop(
                tag,
                !points.is_empty() && worst <= 1e-9,
                format!("max | |e|inf - 1 | = {worst:.3e}"),
            )
        }
        ("l1-order-one", Ok(s)) => prop(tag, (0.85..=1.15).contains(&s.l1), format!("L1 slope {:.4}", s.l1)),
        ("l2-order-half", Ok(s)) => prop(tag, (0.4..=0.6).contains(&s.l2), format!("L2 slope {:.4}", s.l2)),
        (_, Err(e)) => prop(tag, false, e.to_string()),
        (other, _) => prop(other, false, "unknown property".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn observer_params(tau: f64) -> BTreeMap<&'static str, f64> {
        [("k", 1.0), ("tau", tau)].into_iter().collect()
    }

    #[test]
    fn observer_stability_follows_the_theta_scheme() {
        let p = observer_params(0.001);
        assert!(observer_unstable(Scheme::Implicit, 0.0, 0.1, &p));
        assert!(observer_unstable(Scheme::Implicit, 0.0, 0.004, &p));
        assert!(!observer_unstable(Scheme::Implicit, 0.0, 0.0015, &p));
        assert!(!observer_unstable(Scheme::Implicit, 1.0, 0.1, &p));
        assert!(!observer_unstable(Scheme::Implicit, 0.5, 0.1, &p));
        assert!(!observer_unstable(Scheme::Implicit, 0.0, 0.1, &observer_params(0.5)));
        assert!(observer_unstable(Scheme::Explicit, 1.0, 0.1, &p));
    }

    #[test]
    fn tags_depend_on_scheme() {
        let none = BTreeMap::new();
        assert_eq!(
            expected_tags(Model::SingleSurface, Scheme::Explicit, 1.0, 1.0, 0.3, &none),
            vec!["period2-detected"]
        );
        assert_eq!(
            expected_tags(Model::Simple, Scheme::Implicit, 1.0, 1.0, 0.2, &none),
            vec!["finite-time-zero"]
        );
        assert_eq!(
            expected_tags(Model::Hypomonotone, Scheme::Implicit, 0.5, 1.0, 0.1, &none),
            vec!["finite-time-zero"]
        );
    }
}
