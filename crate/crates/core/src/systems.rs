//! Continuous-time sign systems.
//!
//! Three classes are supported, all of the form `ẋ ∈ f(x, t) − g(x) Sgn(h(x))`:
//!
//! * [`LinearSignSystem`]: `f = Ex + a`, `g = B`, `h = Cx + D`.
//! * [`AffineGainSignSystem`]: column `i` of `g` is `A_i x + B_i`, `h` affine.
//! * [`NonlinearSignSystem`]: user supplied `f`, `g`, `h` with analytic Jacobians.
//!
//! The implicit Newton stepper only talks to the [`SignSystem`] trait, which
//! every class implements.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{sign0, Scalar};

pub type VectorField<T> = Box<dyn Fn(&DVector<T>, T) -> DVector<T> + Send + Sync>;
pub type MatrixField<T> = Box<dyn Fn(&DVector<T>, T) -> DMatrix<T> + Send + Sync>;
pub type StateMap<T> = Box<dyn Fn(&DVector<T>) -> DVector<T> + Send + Sync>;
pub type StateMatrixMap<T> = Box<dyn Fn(&DVector<T>) -> DMatrix<T> + Send + Sync>;
pub type StateTensorMap<T> = Box<dyn Fn(&DVector<T>) -> GainTensor<T> + Send + Sync>;
pub type Disturbance<T> = Box<dyn Fn(T) -> DVector<T> + Send + Sync>;

fn check_len<T: Scalar>(context: &'static str, v: &DVector<T>, n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::dims(context, n, v.len()));
    }
    Ok(())
}

fn check_shape<T: Scalar>(context: &'static str, m: &DMatrix<T>, rows: usize, cols: usize) -> Result<()> {
    if m.nrows() != rows || m.ncols() != cols {
        return Err(Error::dims(
            context,
            format!("{rows}x{cols}"),
            format!("{}x{}", m.nrows(), m.ncols()),
        ));
    }
    Ok(())
}

/// Third-order Jacobian of the gain map, `(∇g)_{klp} = ∂g_{kl}/∂x_p`.
///
/// Stored as one `n × m` slice per state direction `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct GainTensor<T: Scalar> {
    slices: Vec<DMatrix<T>>,
}

impl<T: Scalar> GainTensor<T> {
    pub fn new(slices: Vec<DMatrix<T>>) -> Self {
        Self { slices }
    }

    pub fn zeros(n: usize, m: usize) -> Self {
        Self {
            slices: vec![DMatrix::zeros(n, m); n],
        }
    }

    pub fn get(&self, k: usize, l: usize, p: usize) -> T {
        self.slices[p][(k, l)]
    }

    pub fn slice(&self, p: usize) -> &DMatrix<T> {
        &self.slices[p]
    }

    pub fn directions(&self) -> usize {
        self.slices.len()
    }

    /// Contracted product `∇g ⊗̄ s`: the `n × n` matrix with entries
    /// `Σ_l (∇g)_{klp} s_l`.
    pub fn contract(&self, s: &DVector<T>) -> DMatrix<T> {
        let n = self.slices.len();
        let rows = self.slices.first().map_or(0, |sl| sl.nrows());
        let mut out = DMatrix::zeros(rows, n);
        for (p, slice) in self.slices.iter().enumerate() {
            out.set_column(p, &(slice * s));
        }
        out
    }

    fn check(&self, context: &'static str, n: usize, m: usize) -> Result<()> {
        if self.slices.len() != n {
            return Err(Error::dims(context, n, self.slices.len()));
        }
        for s in &self.slices {
            check_shape(context, s, n, m)?;
        }
        Ok(())
    }
}

/// Uniform evaluation interface used by the Newton stepper.
pub trait SignSystem<T: Scalar> {
    fn state_dim(&self) -> usize;
    fn surface_dim(&self) -> usize;
    fn drift(&self, x: &DVector<T>, t: T) -> Result<DVector<T>>;
    fn drift_jacobian(&self, x: &DVector<T>, t: T) -> Result<DMatrix<T>>;
    /// `g(x)`, an `n × m` matrix.
    fn gain(&self, x: &DVector<T>) -> Result<DMatrix<T>>;
    fn gain_jacobian(&self, x: &DVector<T>) -> Result<GainTensor<T>>;
    /// `h(x)`, the surface values.
    fn output(&self, x: &DVector<T>) -> Result<DVector<T>>;
    fn output_jacobian(&self, x: &DVector<T>) -> Result<DMatrix<T>>;
    /// Aggregate hypomonotonicity constant `ρ` (0 for monotone systems).
    fn hypomonotone_shift(&self) -> T {
        T::zero()
    }
}

/// Smooth drift `f(x, t)` together with its state Jacobian.
pub struct Drift<T: Scalar> {
    f: VectorField<T>,
    jac: MatrixField<T>,
}

impl<T: Scalar> Drift<T> {
    pub fn new(
        f: impl Fn(&DVector<T>, T) -> DVector<T> + Send + Sync + 'static,
        jac: impl Fn(&DVector<T>, T) -> DMatrix<T> + Send + Sync + 'static,
    ) -> Self {
        Self {
            f: Box::new(f),
            jac: Box::new(jac),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(move |_, _| DVector::zeros(n), move |_, _| DMatrix::zeros(n, n))
    }

    pub fn affine(e: DMatrix<T>, a: DVector<T>) -> Self {
        let e2 = e.clone();
        Self::new(move |x, _| &e * x + &a, move |_, _| e2.clone())
    }

    fn eval(&self, x: &DVector<T>, t: T, n: usize) -> Result<DVector<T>> {
        let v = (self.f)(x, t);
        check_len("drift value", &v, n)?;
        Ok(v)
    }

    fn eval_jacobian(&self, x: &DVector<T>, t: T, n: usize) -> Result<DMatrix<T>> {
        let j = (self.jac)(x, t);
        check_shape("drift jacobian", &j, n, n)?;
        Ok(j)
    }
}

// ---------------------------------------------------------------------------
// Linear class
// ---------------------------------------------------------------------------

/// `ẋ ∈ Ex + a − B Sgn(Cx + D)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSignSystem<T: Scalar> {
    e: DMatrix<T>,
    a: DVector<T>,
    b: DMatrix<T>,
    c: DMatrix<T>,
    d: DVector<T>,
}

impl<T: Scalar> LinearSignSystem<T> {
    pub fn new(e: DMatrix<T>, a: DVector<T>, b: DMatrix<T>, c: DMatrix<T>, d: DVector<T>) -> Result<Self> {
        let n = e.nrows();
        let m = c.nrows();
        if n == 0 || m == 0 {
            return Err(Error::InvalidInput(
                "state and surface dimensions must be at least 1".into(),
            ));
        }
        check_shape("E", &e, n, n)?;
        check_len("a", &a, n)?;
        check_shape("B", &b, n, m)?;
        check_shape("C", &c, m, n)?;
        check_len("D", &d, m)?;
        Ok(Self { e, a, b, c, d })
    }

    /// Pure switching system `ẋ ∈ −B Sgn(Cx)` with no drift.
    pub fn driftless(b: DMatrix<T>, c: DMatrix<T>) -> Result<Self> {
        let n = b.nrows();
        let m = c.nrows();
        Self::new(DMatrix::zeros(n, n), DVector::zeros(n), b, c, DVector::zeros(m))
    }

    pub fn n(&self) -> usize {
        self.e.nrows()
    }

    pub fn m(&self) -> usize {
        self.c.nrows()
    }

    pub fn e(&self) -> &DMatrix<T> {
        &self.e
    }

    pub fn a(&self) -> &DVector<T> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<T> {
        &self.b
    }

    pub fn c(&self) -> &DMatrix<T> {
        &self.c
    }

    pub fn d(&self) -> &DVector<T> {
        &self.d
    }

    /// Same system with the constant drift term replaced.
    pub fn with_offset(&self, a: DVector<T>) -> Result<Self> {
        check_len("a", &a, self.n())?;
        Ok(Self { a, ..self.clone() })
    }

    /// `y = Cx + D`.
    pub fn output(&self, x: &DVector<T>) -> Result<DVector<T>> {
        check_len("state", x, self.n())?;
        Ok(&self.c * x + &self.d)
    }

    pub fn check_cb_positive(&self) -> CbReport<T> {
        CbReport::from_product(&self.c * &self.b)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: LinearSystemFile = serde_json::from_str(s)?;
        file.into_system()
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&LinearSystemFile::from_system(self))?)
    }
}

impl<T: Scalar> SignSystem<T> for LinearSignSystem<T> {
    fn state_dim(&self) -> usize {
        self.n()
    }

    fn surface_dim(&self) -> usize {
        self.m()
    }

    fn drift(&self, x: &DVector<T>, _t: T) -> Result<DVector<T>> {
        check_len("state", x, self.n())?;
        Ok(&self.e * x + &self.a)
    }

    fn drift_jacobian(&self, _x: &DVector<T>, _t: T) -> Result<DMatrix<T>> {
        Ok(self.e.clone())
    }

    fn gain(&self, _x: &DVector<T>) -> Result<DMatrix<T>> {
        Ok(self.b.clone())
    }

    fn gain_jacobian(&self, _x: &DVector<T>) -> Result<GainTensor<T>> {
        Ok(GainTensor::zeros(self.n(), self.m()))
    }

    fn output(&self, x: &DVector<T>) -> Result<DVector<T>> {
        LinearSignSystem::output(self, x)
    }

    fn output_jacobian(&self, _x: &DVector<T>) -> Result<DMatrix<T>> {
        Ok(self.c.clone())
    }
}

/// On-disk form of a linear system: row-major nested arrays.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct LinearSystemFile {
    pub E: Vec<Vec<f64>>,
    pub a: Vec<f64>,
    pub B: Vec<Vec<f64>>,
    pub C: Vec<Vec<f64>>,
    pub D: Vec<f64>,
}

fn matrix_from_rows<T: Scalar>(name: &'static str, rows: &[Vec<f64>]) -> Result<DMatrix<T>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::InvalidInput(format!("matrix {name} has ragged rows")));
    }
    Ok(DMatrix::from_fn(nrows, ncols, |i, j| T::lit(rows[i][j])))
}

fn matrix_to_rows<T: Scalar>(m: &DMatrix<T>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].to_f64_lossy()).collect())
        .collect()
}

impl LinearSystemFile {
    pub fn into_system<T: Scalar>(self) -> Result<LinearSignSystem<T>> {
        let e = matrix_from_rows("E", &self.E)?;
        let b = matrix_from_rows("B", &self.B)?;
        let c = matrix_from_rows("C", &self.C)?;
        let a = DVector::from_iterator(self.a.len(), self.a.iter().map(|&v| T::lit(v)));
        let d = DVector::from_iterator(self.D.len(), self.D.iter().map(|&v| T::lit(v)));
        LinearSignSystem::new(e, a, b, c, d)
    }

    pub fn from_system<T: Scalar>(sys: &LinearSignSystem<T>) -> Self {
        Self {
            E: matrix_to_rows(&sys.e),
            a: sys.a.iter().map(|v| v.to_f64_lossy()).collect(),
            B: matrix_to_rows(&sys.b),
            C: matrix_to_rows(&sys.c),
            D: sys.d.iter().map(|v| v.to_f64_lossy()).collect(),
        }
    }
}

/// Result of the advisory `CB > 0` test.
#[derive(Debug, Clone, PartialEq)]
pub struct CbReport<T: Scalar> {
    pub cb: DMatrix<T>,
    pub is_positive_definite: bool,
}

impl<T: Scalar> CbReport<T> {
    fn from_product(cb: DMatrix<T>) -> Self {
        let sym = (&cb + cb.transpose()) * T::lit(0.5);
        let is_positive_definite = leading_minors_positive(&sym);
        if !is_positive_definite {
            log::warn!("CB is not positive definite; finite-time sliding is not guaranteed");
        }
        Self {
            cb,
            is_positive_definite,
        }
    }
}

fn leading_minors_positive<T: Scalar>(a: &DMatrix<T>) -> bool {
    (1..=a.nrows()).all(|k| a.view((0, 0), (k, k)).into_owned().determinant() > T::zero())
}

// ---------------------------------------------------------------------------
// Affine-gain class
// ---------------------------------------------------------------------------

/// `ẋ ∈ f(x, t) − Σ_i (A_i x + B_i) sgn(C_i x + D_i)`.
pub struct AffineGainSignSystem<T: Scalar> {
    a_list: Vec<DMatrix<T>>,
    b_list: Vec<DVector<T>>,
    c_rows: DMatrix<T>,
    d: DVector<T>,
    drift: Drift<T>,
    rho: Vec<T>,
}

impl<T: Scalar> AffineGainSignSystem<T> {
    pub fn new(
        a_list: Vec<DMatrix<T>>,
        b_list: Vec<DVector<T>>,
        c_rows: DMatrix<T>,
        d: DVector<T>,
        drift: Drift<T>,
    ) -> Result<Self> {
        let m = c_rows.nrows();
        let n = c_rows.ncols();
        if n == 0 || m == 0 {
            return Err(Error::InvalidInput(
                "state and surface dimensions must be at least 1".into(),
            ));
        }
        if a_list.len() != m {
            return Err(Error::dims("A list", m, a_list.len()));
        }
        if b_list.len() != m {
            return Err(Error::dims("B list", m, b_list.len()));
        }
        for a in &a_list {
            check_shape("A_i", a, n, n)?;
        }
        for b in &b_list {
            check_len("B_i", b, n)?;
        }
        check_len("D", &d, m)?;
        Ok(Self {
            a_list,
            b_list,
            c_rows,
            d,
            drift,
            rho: vec![T::zero(); m],
        })
    }

    /// Sets the per-surface hypomonotonicity constants `ρ_i`.
    pub fn with_rho(mut self, rho: Vec<T>) -> Result<Self> {
        if rho.len() != self.m() {
            return Err(Error::dims("rho list", self.m(), rho.len()));
        }
        if rho.iter().any(|&r| r < T::zero()) {
            return Err(Error::InvalidInput(
                "hypomonotonicity constants must be non-negative".into(),
            ));
        }
        self.rho = rho;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.c_rows.ncols()
    }

    pub fn m(&self) -> usize {
        self.c_rows.nrows()
    }

    pub fn rho(&self) -> &[T] {
        &self.rho
    }

    /// `CB` with `B` the matrix whose columns are the constant gain parts `B_i`.
    pub fn check_cb_positive(&self) -> CbReport<T> {
        let b = DMatrix::from_columns(&self.b_list);
        CbReport::from_product(&self.c_rows * b)
    }
}

impl<T: Scalar> SignSystem<T> for AffineGainSignSystem<T> {
    fn state_dim(&self) -> usize {
        self.n()
    }

    fn surface_dim(&self) -> usize {
        self.m()
    }

    fn drift(&self, x: &DVector<T>, t: T) -> Result<DVector<T>> {
        check_len("state", x, self.n())?;
        self.drift.eval(x, t, self.n())
    }

    fn drift_jacobian(&self, x: &DVector<T>, t: T) -> Result<DMatrix<T>> {
        check_len("state", x, self.n())?;
        self.drift.eval_jacobian(x, t, self.n())
    }

    fn gain(&self, x: &DVector<T>) -> Result<DMatrix<T>> {
        check_len("state", x, self.n())?;
        let cols: Vec<DVector<T>> = self.a_list.iter().zip(&self.b_list).map(|(a, b)| a * x + b).collect();
        Ok(DMatrix::from_columns(&cols))
    }

    fn gain_jacobian(&self, _x: &DVector<T>) -> Result<GainTensor<T>> {
        // (∇g)_{klp} = (A_l)_{kp}
        let (n, m) = (self.n(), self.m());
        let slices = (0..n)
            .map(|p| DMatrix::from_fn(n, m, |k, l| self.a_list[l][(k, p)]))
            .collect();
        Ok(GainTensor::new(slices))
    }

    fn output(&self, x: &DVector<T>) -> Result<DVector<T>> {
        check_len("state", x, self.n())?;
        Ok(&self.c_rows * x + &self.d)
    }

    fn output_jacobian(&self, _x: &DVector<T>) -> Result<DMatrix<T>> {
        Ok(self.c_rows.clone())
    }

    fn hypomonotone_shift(&self) -> T {
        self.rho.iter().fold(T::zero(), |acc, &r| acc + r)
    }
}

// ---------------------------------------------------------------------------
// Nonlinear class
// ---------------------------------------------------------------------------

/// `ẋ ∈ f(x, t) − g(x) Sgn(h(x))` with every Jacobian supplied analytically.
pub struct NonlinearSignSystem<T: Scalar> {
    n: usize,
    m: usize,
    drift: Drift<T>,
    g: StateMatrixMap<T>,
    jac_g: StateTensorMap<T>,
    h: StateMap<T>,
    jac_h: StateMatrixMap<T>,
    rho: T,
}

impl<T: Scalar> NonlinearSignSystem<T> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n: usize,
        m: usize,
        drift: Drift<T>,
        g: impl Fn(&DVector<T>) -> DMatrix<T> + Send + Sync + 'static,
        jac_g: impl Fn(&DVector<T>) -> GainTensor<T> + Send + Sync + 'static,
        h: impl Fn(&DVector<T>) -> DVector<T> + Send + Sync + 'static,
        jac_h: impl Fn(&DVector<T>) -> DMatrix<T> + Send + Sync + 'static,
    ) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidInput(
                "state and surface dimensions must be at least 1".into(),
            ));
        }
        Ok(Self {
            n,
            m,
            drift,
            g: Box::new(g),
            jac_g: Box::new(jac_g),
            h: Box::new(h),
            jac_h: Box::new(jac_h),
            rho: T::zero(),
        })
    }

    pub fn with_rho(mut self, rho: T) -> Result<Self> {
        if rho < T::zero() {
            return Err(Error::InvalidInput(
                "hypomonotonicity constant must be non-negative".into(),
            ));
        }
        self.rho = rho;
        Ok(self)
    }
}

impl<T: Scalar> SignSystem<T> for NonlinearSignSystem<T> {
    fn state_dim(&self) -> usize {
        self.n
    }

    fn surface_dim(&self) -> usize {
        self.m
    }

    fn drift(&self, x: &DVector<T>, t: T) -> Result<DVector<T>> {
        check_len("state", x, self.n)?;
        self.drift.eval(x, t, self.n)
    }

    fn drift_jacobian(&self, x: &DVector<T>, t: T) -> Result<DMatrix<T>> {
        check_len("state", x, self.n)?;
        self.drift.eval_jacobian(x, t, self.n)
    }

    fn gain(&self, x: &DVector<T>) -> Result<DMatrix<T>> {
        check_len("state", x, self.n)?;
        let g = (self.g)(x);
        check_shape("gain value", &g, self.n, self.m)?;
        Ok(g)
    }

    fn gain_jacobian(&self, x: &DVector<T>) -> Result<GainTensor<T>> {
        check_len("state", x, self.n)?;
        let j = (self.jac_g)(x);
        j.check("gain jacobian", self.n, self.m)?;
        Ok(j)
    }

    fn output(&self, x: &DVector<T>) -> Result<DVector<T>> {
        check_len("state", x, self.n)?;
        let y = (self.h)(x);
        check_len("output value", &y, self.m)?;
        Ok(y)
    }

    fn output_jacobian(&self, x: &DVector<T>) -> Result<DMatrix<T>> {
        check_len("state", x, self.n)?;
        let j = (self.jac_h)(x);
        check_shape("output jacobian", &j, self.m, self.n)?;
        Ok(j)
    }

    fn hypomonotone_shift(&self) -> T {
        self.rho
    }
}

// ---------------------------------------------------------------------------
// Lyapunov-based robust control
// ---------------------------------------------------------------------------

/// `ẋ ∈ Ex − Σ_i ρ_i B_i sgn(B_iᵀ P x) + B γ(t)`, the closed loop of the
/// discontinuous controller `u_i = −ρ_i sgn(∇V(x)ᵀ B_i)` with `V = ½ xᵀPx`.
pub struct DisturbedLinearSystem<T: Scalar> {
    e: DMatrix<T>,
    b: DMatrix<T>,
    rho: DVector<T>,
    p: DMatrix<T>,
    gamma: Disturbance<T>,
    rho_bounds: DVector<T>,
}

impl<T: Scalar> DisturbedLinearSystem<T> {
    pub fn new(
        e: DMatrix<T>,
        b: DMatrix<T>,
        rho: DVector<T>,
        p: DMatrix<T>,
        gamma: impl Fn(T) -> DVector<T> + Send + Sync + 'static,
        rho_bounds: DVector<T>,
    ) -> Result<Self> {
        let n = e.nrows();
        let m = b.ncols();
        if n == 0 || m == 0 {
            return Err(Error::InvalidInput(
                "state and input dimensions must be at least 1".into(),
            ));
        }
        check_shape("E", &e, n, n)?;
        check_shape("B", &b, n, m)?;
        check_len("rho", &rho, m)?;
        check_len("rho bounds", &rho_bounds, m)?;
        check_shape("P", &p, n, n)?;
        let asym = (&p - p.transpose()).amax();
        if asym > T::lit(1e-12) * (T::one() + p.amax()) {
            return Err(Error::InvalidInput("Lyapunov weight P must be symmetric".into()));
        }
        if p.clone().cholesky().is_none() {
            return Err(Error::InvalidInput(
                "Lyapunov weight P must be positive definite".into(),
            ));
        }
        if rho.iter().any(|&r| r < T::zero()) {
            return Err(Error::InvalidInput("control magnitudes must be non-negative".into()));
        }
        Ok(Self {
            e,
            b,
            rho,
            p,
            gamma: Box::new(gamma),
            rho_bounds,
        })
    }

    pub fn n(&self) -> usize {
        self.e.nrows()
    }

    pub fn m(&self) -> usize {
        self.b.ncols()
    }

    pub fn rho(&self) -> &DVector<T> {
        &self.rho
    }

    pub fn disturbance(&self, t: T) -> Result<DVector<T>> {
        let g = (self.gamma)(t);
        check_len("disturbance", &g, self.m())?;
        Ok(g)
    }

    /// Surface map `BᵀP`; the switching variable is `∇V(x)ᵀ B = BᵀPx`.
    pub fn surface_map(&self) -> DMatrix<T> {
        self.b.transpose() * &self.p
    }

    /// `|γ_i(t)| < ρ̄_i` on every sample of `times`.
    pub fn disturbance_within_bounds(&self, times: impl IntoIterator<Item = T>) -> Result<bool> {
        for t in times {
            let g = self.disturbance(t)?;
            if g.iter().zip(self.rho_bounds.iter()).any(|(gi, bi)| gi.abs() >= *bi) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Right-hand side at a point where every switching variable is nonzero,
    /// `None` on a switching surface where the inclusion is set-valued.
    pub fn rhs(&self, x: &DVector<T>, t: T) -> Result<Option<DVector<T>>> {
        check_len("state", x, self.n())?;
        let sv = self.surface_map() * x;
        if sv.iter().any(|v| *v == T::zero()) {
            return Ok(None);
        }
        let sel = sv.map(sign0).component_mul(&self.rho);
        Ok(Some(&self.e * x - &self.b * sel + &self.b * self.disturbance(t)?))
    }

    /// Linear sign system obtained by freezing the disturbance at time `t`:
    /// `a = Bγ(t)`, gain `B diag(ρ)`, surfaces `BᵀP x`.
    pub fn frozen_at(&self, t: T) -> Result<LinearSignSystem<T>> {
        let gain = &self.b * DMatrix::from_diagonal(&self.rho);
        LinearSignSystem::new(
            self.e.clone(),
            &self.b * self.disturbance(t)?,
            gain,
            self.surface_map(),
            DVector::zeros(self.m()),
        )
    }
}
