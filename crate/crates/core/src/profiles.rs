//! Momentum profiles of the two Kähler–Einstein edge families.
//!
//! The Calabi ansatz reduces the Einstein equation on the manifold to a first
//! order ODE for the momentum profile φ(τ). Solving it in closed form gives
//!
//! ```text
//! eta family:  φ(τ) = (1/k)(τⁿ−1)/τⁿ⁻¹ + (β₁ − n/k)/(n+1) · (τⁿ⁺¹−1)/τⁿ⁻¹,  τ ∈ [1, T]
//! xi  family:  φ(τ) = (1/k)(τⁿ−1)/τⁿ⁻¹ − (n/k + β₂)/(n+1) · (τⁿ⁺¹−1)/τⁿ⁻¹,  τ ∈ [t, 1]
//! ```
//!
//! The interval endpoint (`T` above 1, or `t` below 1) is the unique positive
//! root of the polynomial left after dividing out the known factor `(τ − 1)`;
//! by Descartes' rule of signs that root is unique, so bracketing cannot fail
//! for admissible angles. The second angle then follows from the algebraic
//! endpoint identity rather than from the derivative, which is exact and free
//! of cancellation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{AnglePair, FamilyTag, ManifoldParams};

/// Dense real polynomial, ascending coefficients (`coeffs[j]` multiplies τ^j).
#[derive(Clone, Debug)]
pub(crate) struct Poly {
    pub coeffs: Vec<f64>,
}

impl Poly {
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_deriv(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for (j, &c) in self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .take_while(|(j, _)| *j >= 1)
        {
            acc = acc * x + c * j as f64;
        }
        acc
    }

    /// Quotient after synthetic division by `(x - root)`; the remainder is
    /// dropped (callers divide by a computed root).
    pub fn deflate(&self, root: f64) -> Poly {
        let n = self.coeffs.len() - 1;
        let mut quotient = vec![0.0; n];
        let mut carry = 0.0;
        for j in (0..n).rev() {
            carry = self.coeffs[j + 1] + root * carry;
            quotient[j] = carry;
        }
        Poly { coeffs: quotient }
    }

    /// All complex roots via companion-matrix eigenvalues.
    pub fn roots(&self) -> Vec<Complex64> {
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| *c == 0.0) && coeffs.len() > 1 {
            coeffs.pop();
        }
        let deg = coeffs.len() - 1;
        if deg == 0 {
            return Vec::new();
        }
        if deg == 1 {
            return vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)];
        }
        let lead = coeffs[deg];
        let companion = nalgebra::DMatrix::<f64>::from_fn(deg, deg, |i, j| {
            if j == deg - 1 {
                -coeffs[i] / lead
            } else if i == j + 1 {
                1.0
            } else {
                0.0
            }
        });
        let eig = companion.complex_eigenvalues();
        let mut out: Vec<Complex64> = eig.iter().map(|c| Complex64::new(c.re, c.im)).collect();
        out.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        out
    }
}

fn phi_ab(n: i32, a: f64, b: f64, tau: f64) -> f64 {
    let tp = tau.powi(1 - n);
    a * (tau - tp) + b * (tau * tau - tp)
}

fn dphi_ab(n: i32, a: f64, b: f64, tau: f64) -> f64 {
    let tp = (n as f64 - 1.0) * tau.powi(-n);
    a * (1.0 + tp) + b * (2.0 * tau + tp)
}

fn eta_b_coeff(params: ManifoldParams, beta1: f64) -> f64 {
    (beta1 - params.beta1_sup()) / (params.nf() + 1.0)
}

fn xi_b_coeff(params: ManifoldParams, beta2: f64) -> f64 {
    -(params.beta1_sup() + beta2) / (params.nf() + 1.0)
}

/// φ(τ) of the eta family. Defined for every τ > 0; the metric interval is [1, T].
pub fn phi_eta(params: ManifoldParams, beta1: f64, tau: f64) -> Result<f64> {
    if !(tau > 0.0) {
        return Err(Error::domain(format!("tau must be positive, got {tau}")));
    }
    Ok(phi_ab(
        params.n() as i32,
        1.0 / params.kf(),
        eta_b_coeff(params, beta1),
        tau,
    ))
}

/// φ(τ) of the xi family. Defined for every τ > 0; the metric interval is [t, 1].
pub fn phi_xi(params: ManifoldParams, beta2: f64, tau: f64) -> Result<f64> {
    if !(tau > 0.0) {
        return Err(Error::domain(format!("tau must be positive, got {tau}")));
    }
    Ok(phi_ab(
        params.n() as i32,
        1.0 / params.kf(),
        xi_b_coeff(params, beta2),
        tau,
    ))
}

/// Deflated endpoint polynomial of the eta family:
/// `D(τ) = (β₁ − n/k) τⁿ + (1/k + β₁)(τⁿ⁻¹ + … + 1)`, with `φ·τⁿ⁻¹·(n+1) = (τ−1)·D(τ)`.
pub(crate) fn eta_deflated(params: ManifoldParams, beta1: f64) -> Poly {
    let n = params.n() as usize;
    let mut coeffs = vec![1.0 / params.kf() + beta1; n + 1];
    coeffs[n] = beta1 - params.beta1_sup();
    Poly { coeffs }
}

/// Deflated endpoint polynomial of the xi family:
/// `D(τ) = −(n/k + β₂) τⁿ + (1/k − β₂)(τⁿ⁻¹ + … + 1)`.
pub(crate) fn xi_deflated(params: ManifoldParams, beta2: f64) -> Poly {
    let n = params.n() as usize;
    let mut coeffs = vec![1.0 / params.kf() - beta2; n + 1];
    coeffs[n] = -(params.beta1_sup() + beta2);
    Poly { coeffs }
}

/// Bisects `[lo, hi]` (with `d(lo) > 0 > d(hi)`) to relative width 1e-14,
/// then polishes with two clamped Newton steps.
fn bracketed_root(d: &Poly, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        if hi - lo <= 1e-14 * hi.max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if d.eval(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..2 {
        let df = d.eval_deriv(x);
        if df != 0.0 {
            let next = x - d.eval(x) / df;
            if next > lo && next < hi {
                x = next;
            }
        }
    }
    x
}

/// A solved eta-family profile on τ ∈ [1, T].
#[derive(Clone, Debug)]
pub struct EtaProfile {
    pub params: ManifoldParams,
    pub beta1: f64,
    /// Derived angle along the infinity section.
    pub beta2: f64,
    /// Upper endpoint T of the τ-interval.
    pub tau_max: f64,
    /// Ricci constant `n/k − β₁`.
    pub lambda: f64,
    /// Roots of the deflated endpoint polynomial other than T.
    pub extra_roots: Vec<Complex64>,
}

/// A solved xi-family profile on τ ∈ [t, 1].
#[derive(Clone, Debug)]
pub struct XiProfile {
    pub params: ManifoldParams,
    pub beta2: f64,
    /// Derived angle along the zero section.
    pub beta1: f64,
    /// Lower endpoint t of the τ-interval.
    pub tau_min: f64,
    /// Ricci constant `n/k + β₂`.
    pub mu: f64,
    /// Roots of the deflated endpoint polynomial other than t.
    pub extra_roots: Vec<Complex64>,
}

/// Solves the eta family for a given β₁ ∈ (0, n/k).
///
/// T is isolated as the unique real root of the deflated polynomial above 1
/// (doubling bracket, bisection, Newton polish); β₂ then comes from the exact
/// endpoint identity `(1/k − β₂) Tⁿ = β₁ + 1/k`.
pub fn solve_eta(params: ManifoldParams, beta1: f64) -> Result<EtaProfile> {
    let sup = params.beta1_sup();
    if !beta1.is_finite() || !(beta1 > 0.0 && beta1 < sup) {
        return Err(Error::domain(format!(
            "beta1 = {beta1} outside the open interval (0, {sup})"
        )));
    }
    let d = eta_deflated(params, beta1);
    debug_assert!(d.eval(1.0) > 0.0);
    let mut hi = 2.0;
    while d.eval(hi) > 0.0 {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::numerical(
                "no sign change found while bracketing T".to_string(),
            ));
        }
    }
    let tau_max = bracketed_root(&d, 1.0, hi);
    let k = params.kf();
    let beta2 = 1.0 / k - (beta1 + 1.0 / k) / tau_max.powi(params.n() as i32);
    let extra_roots = d.deflate(tau_max).roots();
    Ok(EtaProfile {
        params,
        beta1,
        beta2,
        tau_max,
        lambda: sup - beta1,
        extra_roots,
    })
}

/// Solves the xi family for a given β₂ ∈ (0, 1/k).
///
/// t is the unique positive root of the deflated polynomial, located in (0, 1);
/// β₁ comes from the exact identity `(1/k + β₁) tⁿ = 1/k − β₂`.
pub fn solve_xi(params: ManifoldParams, beta2: f64) -> Result<XiProfile> {
    let sup = params.beta2_sup();
    if !beta2.is_finite() || !(beta2 > 0.0 && beta2 < sup) {
        return Err(Error::domain(format!(
            "beta2 = {beta2} outside the open interval (0, {sup})"
        )));
    }
    let d = xi_deflated(params, beta2);
    debug_assert!(d.eval(0.0) > 0.0 && d.eval(1.0) < 0.0);
    let tau_min = bracketed_root(&d, 0.0, 1.0);
    let k = params.kf();
    let beta1 = (1.0 / k - beta2) / tau_min.powi(params.n() as i32) - 1.0 / k;
    let extra_roots = d.deflate(tau_min).roots();
    Ok(XiProfile {
        params,
        beta2,
        beta1,
        tau_min,
        mu: params.beta1_sup() + beta2,
        extra_roots,
    })
}

/// Either family, behind one interface.
#[derive(Clone, Debug)]
pub enum Profile {
    Eta(EtaProfile),
    Xi(XiProfile),
}

impl From<EtaProfile> for Profile {
    fn from(p: EtaProfile) -> Self {
        Profile::Eta(p)
    }
}

impl From<XiProfile> for Profile {
    fn from(p: XiProfile) -> Self {
        Profile::Xi(p)
    }
}

impl Profile {
    pub fn solve(params: ManifoldParams, family: FamilyTag, beta: f64) -> Result<Self> {
        Ok(match family {
            FamilyTag::Eta => Profile::Eta(solve_eta(params, beta)?),
            FamilyTag::Xi => Profile::Xi(solve_xi(params, beta)?),
        })
    }

    pub fn family(&self) -> FamilyTag {
        match self {
            Profile::Eta(_) => FamilyTag::Eta,
            Profile::Xi(_) => FamilyTag::Xi,
        }
    }

    pub fn params(&self) -> ManifoldParams {
        match self {
            Profile::Eta(p) => p.params,
            Profile::Xi(p) => p.params,
        }
    }

    /// τ-interval `(left, right)`: `[1, T]` for eta, `[t, 1]` for xi.
    pub fn interval(&self) -> (f64, f64) {
        match self {
            Profile::Eta(p) => (1.0, p.tau_max),
            Profile::Xi(p) => (p.tau_min, 1.0),
        }
    }

    pub fn beta1(&self) -> f64 {
        match self {
            Profile::Eta(p) => p.beta1,
            Profile::Xi(p) => p.beta1,
        }
    }

    pub fn beta2(&self) -> f64 {
        match self {
            Profile::Eta(p) => p.beta2,
            Profile::Xi(p) => p.beta2,
        }
    }

    pub fn angles(&self) -> AnglePair {
        AnglePair {
            beta1: self.beta1(),
            beta2: self.beta2(),
        }
    }

    /// Ricci constant: `n/k − β₁` for eta, `n/k + β₂` for xi.
    pub fn ricci(&self) -> f64 {
        match self {
            Profile::Eta(p) => p.lambda,
            Profile::Xi(p) => p.mu,
        }
    }

    pub fn extra_roots(&self) -> &[Complex64] {
        match self {
            Profile::Eta(p) => &p.extra_roots,
            Profile::Xi(p) => &p.extra_roots,
        }
    }

    fn ab(&self) -> (f64, f64) {
        match self {
            Profile::Eta(p) => (1.0 / p.params.kf(), eta_b_coeff(p.params, p.beta1)),
            Profile::Xi(p) => (1.0 / p.params.kf(), xi_b_coeff(p.params, p.beta2)),
        }
    }

    pub fn phi(&self, tau: f64) -> f64 {
        let (a, b) = self.ab();
        phi_ab(self.params().n() as i32, a, b, tau)
    }

    /// Analytic dφ/dτ (hand-differentiated closed form, no finite differences).
    pub fn dphi(&self, tau: f64) -> f64 {
        let (a, b) = self.ab();
        dphi_ab(self.params().n() as i32, a, b, tau)
    }

    pub(crate) fn deflated(&self) -> Poly {
        match self {
            Profile::Eta(p) => eta_deflated(p.params, p.beta1),
            Profile::Xi(p) => xi_deflated(p.params, p.beta2),
        }
    }

    /// The interval endpoint that is a root of the deflated polynomial
    /// (T for eta, t for xi).
    pub(crate) fn solved_endpoint(&self) -> f64 {
        match self {
            Profile::Eta(p) => p.tau_max,
            Profile::Xi(p) => p.tau_min,
        }
    }
}

/// Residual of the first-order Einstein ODE
/// `n − k(n−1) φ/τ − k dφ/dτ − ρ k τ`; identically zero on a solved profile.
pub fn kee_residual(params: ManifoldParams, ricci: f64, tau: f64, phi: f64, dphi: f64) -> f64 {
    let n = params.nf();
    let k = params.kf();
    n - k * (n - 1.0) * phi / tau - k * dphi - ricci * k * tau
}

/// Absolute deviations of a solved profile from its four boundary conditions:
/// φ and its slope at each endpoint of the τ-interval.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryReport {
    /// |φ(left)|
    pub phi_left: f64,
    /// |φ(right)|
    pub phi_right: f64,
    /// |dφ/dτ(left) − β₁|
    pub slope_left: f64,
    /// |dφ/dτ(right) + β₂|
    pub slope_right: f64,
}

impl BoundaryReport {
    pub fn max(&self) -> f64 {
        self.phi_left
            .max(self.phi_right)
            .max(self.slope_left)
            .max(self.slope_right)
    }
}

pub fn boundary_check(profile: &Profile) -> BoundaryReport {
    let (left, right) = profile.interval();
    let angles = profile.angles();
    BoundaryReport {
        phi_left: profile.phi(left).abs(),
        phi_right: profile.phi(right).abs(),
        slope_left: (profile.dphi(left) - angles.beta1).abs(),
        slope_right: (profile.dphi(right) + angles.beta2).abs(),
    }
}

/// Closed forms for (n, k) = (2, 1): returns `(T, α₁, β₂)` as functions of β₁.
pub fn closed_form_n2k1(beta1: f64) -> Result<(f64, f64, f64)> {
    if !(beta1 > 0.0 && beta1 < 2.0) {
        return Err(Error::domain(format!("beta1 = {beta1} outside (0, 2)")));
    }
    let root = (1.0 + 2.0 / 3.0 * beta1 - beta1 * beta1 / 3.0).sqrt();
    let t = 1.0 + 3.0 * (root + beta1 - 1.0) / (4.0 - 2.0 * beta1);
    let alpha1 = 1.0 + 3.0 * (-root + beta1 - 1.0) / (4.0 - 2.0 * beta1);
    let beta2 = (beta1 - 3.0 + 3.0 * root) / 2.0;
    Ok((t, alpha1, beta2))
}

/// Closed form for β₂(β₁) on (n, k) = (2, 2).
pub fn closed_form_n2k2_beta2(beta1: f64) -> Result<f64> {
    if !(beta1 > 0.0 && beta1 < 1.0) {
        return Err(Error::domain(format!("beta1 = {beta1} outside (0, 1)")));
    }
    Ok((2.0 * beta1 - 3.0 + (9.0 + 12.0 * beta1 - 12.0 * beta1 * beta1).sqrt()) / 4.0)
}
