//! The bundled experiments and their default parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// Discretization used by a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// θ-γ scheme with one complementarity problem per step.
    Implicit,
    /// Forward Euler with `sgn(0) = 0`.
    Explicit,
    ZohImplicit,
    ZohExplicit,
}

impl Scheme {
    /// Implicit and explicit collapse onto their ZOH counterparts for sampled-data loops.
    pub fn as_zoh(self) -> Scheme {
        match self {
            Scheme::Implicit | Scheme::ZohImplicit => Scheme::ZohImplicit,
            Scheme::Explicit | Scheme::ZohExplicit => Scheme::ZohExplicit,
        }
    }

    pub fn is_explicit(self) -> bool {
        matches!(self, Scheme::Explicit | Scheme::ZohExplicit)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Implicit => "implicit",
            Scheme::Explicit => "explicit",
            Scheme::ZohImplicit => "zoh-implicit",
            Scheme::ZohExplicit => "zoh-explicit",
        })
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "implicit" => Ok(Scheme::Implicit),
            "explicit" => Ok(Scheme::Explicit),
            "zoh-implicit" => Ok(Scheme::ZohImplicit),
            "zoh-explicit" => Ok(Scheme::ZohExplicit),
            other => Err(format!(
                "unknown scheme '{other}' (expected implicit, explicit, zoh-implicit or zoh-explicit)"
            )),
        }
    }
}

/// Which model an entry builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Simple,
    Convergence,
    SingleSurface,
    Multisurface,
    Filippov,
    ZohSiso,
    ZohMimo,
    Lyapunov,
    Observer,
    Hypomonotone,
}

/// A registered experiment at its default parameters.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentSpec {
    pub name: &'static str,
    pub description: &'static str,
    #[serde(skip)]
    pub model: Model,
    pub h: f64,
    #[serde(rename = "T")]
    pub t_end: f64,
    pub x0: Vec<f64>,
    pub scheme: Scheme,
    pub theta: f64,
    pub gamma: f64,
    /// Model constants that `--param key=value` may override.
    pub params: BTreeMap<&'static str, f64>,
    /// Properties checked at the default parameters.
    pub tags: Vec<&'static str>,
}

fn params(pairs: &[(&'static str, f64)]) -> BTreeMap<&'static str, f64> {
    pairs.iter().copied().collect()
}

#[allow(clippy::too_many_arguments)]
fn entry(
    name: &'static str,
    description: &'static str,
    model: Model,
    h: f64,
    t_end: f64,
    x0: &[f64],
    scheme: Scheme,
    p: &[(&'static str, f64)],
) -> ExperimentSpec {
    let mut spec = ExperimentSpec {
        name,
        description,
        model,
        h,
        t_end,
        x0: x0.to_vec(),
        scheme,
        theta: 1.0,
        gamma: 1.0,
        params: params(p),
        tags: Vec::new(),
    };
    spec.tags = crate::properties::expected_tags(model, scheme, spec.theta, spec.gamma, h, &spec.params);
    spec
}

/// All experiments, in listing order.
pub fn registry() -> Vec<ExperimentSpec> {
    use Model::*;
    use Scheme::*;
    vec![
        entry(
            "simple",
            "scalar x' in -sgn(x); exact zero after finitely many implicit steps",
            Simple,
            0.2,
            3.0,
            &[1.01],
            Implicit,
            &[],
        ),
        entry(
            "convergence",
            "step-size sweep of the scalar example; error of the selection in sup, L1 and L2 norms",
            Convergence,
            0.1,
            2.0,
            &[1.01],
            Implicit,
            &[("h_min", 1e-3), ("h_max", 1e-1), ("points", 8.0)],
        ),
        entry(
            "galias2007",
            "second-order plant with one switching surface c1 x1 + x2",
            SingleSurface,
            0.3,
            20.0,
            &[0.0, 2.21],
            Implicit,
            &[("c1", 1.0), ("alpha", 1.0)],
        ),
        entry(
            "multisurface",
            "two coupled switching surfaces with B = C = [[1,2],[2,-1]]",
            Multisurface,
            0.02,
            1.0,
            &[1.0, -1.0],
            Implicit,
            &[],
        ),
        entry(
            "filippov",
            "two surfaces C = I with non-symmetric gain B = [[1,-2],[2,1]]",
            Filippov,
            0.002,
            2.0,
            &[1.0, -1.0],
            Implicit,
            &[],
        ),
        entry(
            "zoh-siso",
            "sampled-data equivalent-control SMC of a second-order SISO plant",
            ZohSiso,
            0.3,
            60.0,
            &[0.55, 0.55],
            ZohImplicit,
            &[("a1", -2.0), ("a2", 2.0), ("c1", 1.0), ("alpha", 1.0)],
        ),
        entry(
            "zoh-mimo",
            "sampled-data equivalent-control SMC of a three-state, two-input plant",
            ZohMimo,
            0.3,
            15.0,
            &[0.05, -0.5, 0.02],
            ZohImplicit,
            &[("alpha", 1.0)],
        ),
        entry(
            "lyapunov",
            "scalar plant x' = -x + u + 0.1 sin t with discontinuous control u = -rho sgn(x)",
            Lyapunov,
            0.1,
            10.0,
            &[1.0],
            ZohImplicit,
            &[("alpha", 0.1), ("rho", 1.0)],
        ),
        entry(
            "observer",
            "sliding-mode loop with a second-order filtered state observer",
            Observer,
            0.1,
            10.0,
            &[2.0, 0.0, 0.0, 0.0],
            Implicit,
            &[("k", 1.0), ("tau", 0.001)],
        ),
        entry(
            "hypomonotone",
            "scalar x' in -(x + 1) sgn(x), solved by semismooth Newton",
            Hypomonotone,
            0.1,
            3.0,
            &[1.01],
            Implicit,
            &[],
        ),
    ]
}

pub fn find(name: &str) -> Option<ExperimentSpec> {
    registry().into_iter().find(|e| e.name == name)
}

/// Parses `v1,v2,...`.
pub fn parse_vector(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("'{part}' is not a finite number"))
        })
        .collect()
}

/// Parses `key=value`.
pub fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got '{s}'"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("'{v}' is not a number"))?;
    if !v.is_finite() {
        return Err(format!("parameter {k} must be finite"));
    }
    Ok((k.trim().to_string(), v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = registry().iter().map(|e| e.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 10);
    }

    #[test]
    fn vector_and_param_syntax() {
        assert_eq!(parse_vector("1,-1.5, 2").unwrap(), vec![1.0, -1.5, 2.0]);
        assert!(parse_vector("1,,2").is_err());
        assert!(parse_vector("nan").is_err());
        assert_eq!(parse_param("tau=0.5").unwrap(), ("tau".to_string(), 0.5));
        assert!(parse_param("tau").is_err());
        assert!(parse_param("tau=x").is_err());
    }

    #[test]
    fn scheme_round_trip() {
        for s in [
            Scheme::Implicit,
            Scheme::Explicit,
            Scheme::ZohImplicit,
            Scheme::ZohExplicit,
        ] {
            assert_eq!(s.to_string().parse::<Scheme>().unwrap(), s);
        }
        assert!("rk4".parse::<Scheme>().is_err());
    }
}
