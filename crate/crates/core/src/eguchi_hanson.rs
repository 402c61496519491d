//! The Eguchi–Hanson metric in potential, complex, and real-frame form, and
//! its identification with the n = k = 2 large-angle limit.
//!
//! Ricci-flatness is certified pointwise through the determinant of the
//! complex metric matrix, which equals 1 identically: the Ricci form is
//! `−i ∂∂̄ log det g`, so a unit determinant is an exact curvature
//! certificate with no differentiation involved.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::MetricSample;

/// Scale parameter of the Eguchi–Hanson metric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EhParams {
    pub epsilon: f64,
}

impl EhParams {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(Error::domain(format!(
                "epsilon = {epsilon} must be positive"
            )));
        }
        Ok(EhParams { epsilon })
    }
}

/// Kähler potential `sqrt(r⁴+ε⁴) + log r² − log(ε² + sqrt(r⁴+ε⁴))`.
pub fn eh_potential(eps: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::domain(format!("r = {r} must be positive")));
    }
    if !(eps > 0.0) {
        return Err(Error::domain(format!("epsilon = {eps} must be positive")));
    }
    let root = (r.powi(4) + eps.powi(4)).sqrt();
    Ok(root + (r * r).ln() - (eps * eps + root).ln())
}

/// The 2×2 Hermitian matrix of the Eguchi–Hanson metric at `(z₁, z₂) ≠ 0`:
/// `g_{ab̄} = (r²/sqrt(r⁴+ε⁴)) δ_{ab} + (ε⁴/sqrt(r⁴+ε⁴)) (δ_{ab} r² − z̄_a z_b)/r⁴`
/// with `r² = |z₁|² + |z₂|²`. Its determinant is exactly 1.
pub fn eh_metric(eps: f64, z1: Complex64, z2: Complex64) -> Result<MetricSample> {
    if !(eps > 0.0) {
        return Err(Error::domain(format!("epsilon = {eps} must be positive")));
    }
    let r2 = z1.norm_sqr() + z2.norm_sqr();
    if r2 == 0.0 {
        return Err(Error::domain(
            "the origin is excluded from the chart".to_string(),
        ));
    }
    let root = (r2 * r2 + eps.powi(4)).sqrt();
    let a = r2 / root;
    let b = eps.powi(4) / (root * r2 * r2);
    let z = [z1, z2];
    let mut matrix = nalgebra::DMatrix::<Complex64>::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            let delta = if i == j { r2 } else { 0.0 };
            matrix[(i, j)] = Complex64::new(if i == j { a } else { 0.0 }, 0.0)
                + Complex64::new(b, 0.0) * (Complex64::new(delta, 0.0) - z[i].conj() * z[j]);
        }
    }
    Ok(MetricSample {
        coords: vec![z1, z2],
        matrix,
    })
}

/// Coefficients of the invariant real form
/// `g = coeff_dr2 · dr² + coeff_sigma1 · σ₁² + coeff_sigma2 · σ₂² + coeff_sigma3 · σ₃²`.
#[derive(Clone, Copy, Debug)]
pub struct EhRealFrame {
    pub r: f64,
    pub coeff_dr2: f64,
    pub coeff_sigma1: f64,
    pub coeff_sigma2: f64,
    pub coeff_sigma3: f64,
}

/// Frame coefficients at radius `r ≥ 0`. The bolt `r = 0` is included: the
/// coefficients extend continuously with σ₁, σ₂ of size ε².
pub fn eh_real_frame(eps: f64, r: f64) -> Result<EhRealFrame> {
    if !(eps > 0.0) {
        return Err(Error::domain(format!("epsilon = {eps} must be positive")));
    }
    if r < 0.0 {
        return Err(Error::domain(format!("r = {r} must be nonnegative")));
    }
    let root = (eps.powi(4) + r.powi(4)).sqrt();
    Ok(EhRealFrame {
        r,
        coeff_dr2: r * r / root,
        coeff_sigma1: root,
        coeff_sigma2: root,
        coeff_sigma3: r.powi(4) / root,
    })
}

/// The n = k = 2 large-angle limit against the Eguchi–Hanson family.
#[derive(Clone, Copy, Debug)]
pub struct EhLimitMatch {
    /// Limit profile `τ∞(r) = C^{-1/2} (C + r⁴)^{1/2}`.
    pub tau_infinity: f64,
    /// Overall factor `2 C^{-1/2}` relating the limit metric to g_EH.
    pub scale: f64,
    /// Equivalent Eguchi–Hanson parameter `C^{1/4}`.
    pub eps_equiv: f64,
    /// Max relative deviation across the four frame coefficients.
    pub max_coeff_dev: f64,
}

/// Certifies that the n = k = 2 limit metric equals `2 C^{-1/2} · g_EH,C^{1/4}`.
///
/// The limit side is assembled from the profile route: frame dictionary
/// `g = 2τ(σ₁² + σ₂²) + φ (4/r²)(dr² + r² σ₃²)` with `τ = τ∞(r)` and
/// `φ = (τ² − 1)/(2τ)`; the other side is [`eh_real_frame`] scaled by
/// `2 C^{-1/2}`. The four coefficients agree identically.
pub fn eh_match_limit_n2k2(c: f64, r: f64) -> Result<EhLimitMatch> {
    if !(c > 0.0) {
        return Err(Error::domain(format!("C = {c} must be positive")));
    }
    if !(r > 0.0) {
        return Err(Error::domain(format!("r = {r} must be positive")));
    }
    let tau = ((c + r.powi(4)) / c).sqrt();
    let phi = (tau * tau - 1.0) / (2.0 * tau);
    let profile_frame = [
        phi * 4.0 / (r * r), // dr²
        2.0 * tau,           // σ₁²
        2.0 * tau,           // σ₂²
        4.0 * phi,           // σ₃² (the r² of the dictionary times r² σ₃²/r²)
    ];
    let scale = 2.0 / c.sqrt();
    let eps_equiv = c.powf(0.25);
    let frame = eh_real_frame(eps_equiv, r)?;
    let eh_frame = [
        scale * frame.coeff_dr2,
        scale * frame.coeff_sigma1,
        scale * frame.coeff_sigma2,
        scale * frame.coeff_sigma3,
    ];
    let mut max_dev: f64 = 0.0;
    for (p, e) in profile_frame.iter().zip(&eh_frame) {
        max_dev = max_dev.max((p - e).abs() / e.abs().max(1e-300));
    }
    Ok(EhLimitMatch {
        tau_infinity: tau,
        scale,
        eps_equiv,
        max_coeff_dev: max_dev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::ModelMetric;
    use crate::params::ManifoldParams;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;

    #[test]
    fn potential_reference_value() {
        let v = eh_potential(1.0, 1.0).unwrap();
        assert_relative_eq!(v, 2f64.sqrt() - (1.0 + 2f64.sqrt()).ln(), epsilon = 1e-14);
        assert_relative_eq!(v, 0.5328400, epsilon = 1e-6);
        assert!(eh_potential(1.0, 0.0).is_err());
        assert!(eh_potential(0.0, 1.0).is_err());
    }

    #[test]
    fn potential_is_asymptotically_euclidean() {
        // potential − r² → 0 as r → ∞.
        let mut prev = f64::INFINITY;
        for r in [5.0, 20.0, 100.0] {
            let dev = (eh_potential(1.0, r).unwrap() - r * r).abs();
            assert!(dev < prev);
            prev = dev;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn potential_matches_model_potential_up_to_constant() {
        // With ε = 1 and r = e^{s/4}, twice the potential differs from the
        // (2,2) model potential at Λ(s) = (e^s + 1)^{1/2} only by a constant.
        // The factor 2 is the overall scale 2C^{-1/2} at C = 1 of the limit
        // identification (see eh_match_limit_n2k2); radial derivative check:
        // d(model)/dρ = 2λ/ρ while d(potential)/dρ = λ/ρ with ρ = r².
        let params = ManifoldParams::new(2, 2).unwrap();
        let diff_at = |s: f64| {
            let r = (s / 4.0).exp();
            let lambda = (s.exp() + 1.0).sqrt();
            crate::limits::eh_model_potential(params, lambda).unwrap()
                - 2.0 * eh_potential(1.0, r).unwrap()
        };
        let d0 = diff_at(-1.0);
        for s in [-0.5, 0.0, 0.8, 2.0, 4.0] {
            assert_abs_diff_eq!(diff_at(s), d0, epsilon = 1e-9);
        }
    }

    #[test]
    fn metric_at_unit_point() {
        let m = eh_metric(1.0, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
        assert_relative_eq!(m.matrix[(0, 0)].re, 1.0 / 2f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(m.matrix[(1, 1)].re, 2f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(m.matrix[(0, 1)].norm(), 0.0, epsilon = 1e-15);
        assert_relative_eq!(m.determinant().re, 1.0, epsilon = 1e-14);
        assert!(eh_metric(1.0, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn unit_determinant_everywhere() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let scale = rng.gen_range(0.1..10.0);
            let dir = rng.gen_range(0.0..std::f64::consts::TAU);
            let z1 = Complex64::from_polar(
                scale * dir.cos().abs().max(1e-3),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let z2 = Complex64::from_polar(
                scale * dir.sin().abs().max(1e-3),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let m = eh_metric(0.7, z1, z2).unwrap();
            assert_relative_eq!(m.determinant().re, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(m.determinant().im, 0.0, epsilon = 1e-12);
            assert!(m.is_positive_definite());
        }
    }

    #[test]
    fn metric_is_hessian_of_potential() {
        // The full central-difference complex Hessian of the potential
        // reproduces every matrix entry within 1e-6 at h = 1e-3.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let eps = 1.0;
        let h = 1e-3;
        for _ in 0..20 {
            let z = [
                Complex64::new(rng.gen_range(0.3..1.5), rng.gen_range(-1.0..1.0)),
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.3..1.5)),
            ];
            let m = eh_metric(eps, z[0], z[1]).unwrap();
            // Potential as a function of the four real coordinates.
            let f = |off: [f64; 4]| {
                let a = z[0] + Complex64::new(off[0], off[1]);
                let b = z[1] + Complex64::new(off[2], off[3]);
                eh_potential(eps, (a.norm_sqr() + b.norm_sqr()).sqrt()).unwrap()
            };
            let f0 = f([0.0; 4]);
            let mut real_hess = [[0.0f64; 4]; 4];
            for p in 0..4 {
                let mut off = [0.0; 4];
                off[p] = h;
                let fp = f(off);
                off[p] = -h;
                let fm = f(off);
                real_hess[p][p] = (fp - 2.0 * f0 + fm) / (h * h);
                for q in (p + 1)..4 {
                    let mut acc = 0.0;
                    for (sp, sq) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                        let mut off = [0.0; 4];
                        off[p] = sp * h;
                        off[q] = sq * h;
                        acc += sp * sq * f(off);
                    }
                    real_hess[p][q] = acc / (4.0 * h * h);
                    real_hess[q][p] = real_hess[p][q];
                }
            }
            for a in 0..2 {
                for b in 0..2 {
                    let re = 0.25 * (real_hess[2 * a][2 * b] + real_hess[2 * a + 1][2 * b + 1]);
                    let im = 0.25 * (real_hess[2 * a][2 * b + 1] - real_hess[2 * a + 1][2 * b]);
                    let fd = Complex64::new(re, im);
                    assert_abs_diff_eq!((fd - m.matrix[(a, b)]).norm(), 0.0, epsilon = 1e-6);
                }
            }
        }
    }

    #[test]
    fn hopf_radius_matches_chart_norm() {
        // r² = |w| (1 + |z|²): with s = log|w|² + 2 log(1 + |z|²) on the
        // n = k = 2 chart, e^{s/2} is exactly that product.
        let w = Complex64::new(0.3, -0.4);
        let z = Complex64::new(0.8, 0.1);
        let s = w.norm_sqr().ln() + 2.0 * (1.0 + z.norm_sqr()).ln();
        assert_relative_eq!(
            (s / 2.0).exp(),
            w.norm() * (1.0 + z.norm_sqr()),
            epsilon = 1e-14
        );
    }

    #[test]
    fn real_frame_reference_values() {
        let bolt = eh_real_frame(2.0, 0.0).unwrap();
        assert_relative_eq!(bolt.coeff_sigma1, 4.0, epsilon = 1e-14);
        assert_eq!(bolt.coeff_dr2, 0.0);
        assert_eq!(bolt.coeff_sigma3, 0.0);

        let f = eh_real_frame(1.0, 1.0).unwrap();
        assert_relative_eq!(f.coeff_dr2, 1.0 / 2f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(f.coeff_sigma3, 1.0 / 2f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(f.coeff_sigma1, 2f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn real_frame_matches_xi_radial_form() {
        // With ξ⁴ = r⁴ + ε⁴ the radial coefficient is (1 − ε⁴/ξ⁴)^{-1}(dξ/dr)².
        let eps = 1.3;
        for i in 1..=20 {
            let r = 0.3 * i as f64;
            let f = eh_real_frame(eps, r).unwrap();
            let xi4 = r.powi(4) + eps.powi(4);
            let xi = xi4.powf(0.25);
            let dxi_dr = r.powi(3) / xi.powi(3);
            let radial = (1.0 - eps.powi(4) / xi4).recip() * dxi_dr * dxi_dr;
            assert_relative_eq!(f.coeff_dr2, radial, epsilon = 1e-10);
            assert_relative_eq!(f.coeff_sigma1, xi * xi, epsilon = 1e-10);
            assert_relative_eq!(
                f.coeff_sigma3,
                xi * xi * (1.0 - eps.powi(4) / xi4),
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn frame_coefficients_monotone() {
        let eps = 1.0;
        let mut prev = eh_real_frame(eps, 0.0).unwrap();
        for i in 1..=100 {
            let f = eh_real_frame(eps, 0.1 * i as f64).unwrap();
            assert!(f.coeff_sigma1 > prev.coeff_sigma1);
            assert!(f.coeff_sigma3 >= prev.coeff_sigma3);
            prev = f;
        }
        // Radial coefficient tends to 1 (asymptotically Euclidean).
        assert_relative_eq!(
            eh_real_frame(eps, 1e3).unwrap().coeff_dr2,
            1.0,
            epsilon = 1e-10
        );
    }

    #[test]
    fn limit_match_at_unit_scale() {
        let m = eh_match_limit_n2k2(1.0, 1.0).unwrap();
        assert_relative_eq!(m.tau_infinity, 2f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(m.scale, 2.0, epsilon = 1e-14);
        assert_relative_eq!(m.eps_equiv, 1.0, epsilon = 1e-14);
        assert!(m.max_coeff_dev < 1e-14);
        // Against the frame directly: 2 × eh_real_frame(1, 1).
        let f = eh_real_frame(1.0, 1.0).unwrap();
        assert_relative_eq!(2.0 * m.tau_infinity, 2.0 * f.coeff_sigma1, epsilon = 1e-14);
    }

    #[test]
    fn limit_match_over_scales() {
        for &c in &[0.3, 1.0, 2.7] {
            for i in 1..=50 {
                let r = 0.2 * i as f64;
                let m = eh_match_limit_n2k2(c, r).unwrap();
                assert!(
                    m.max_coeff_dev < 1e-12,
                    "dev {} at C={c}, r={r}",
                    m.max_coeff_dev
                );
            }
        }
        assert!(eh_match_limit_n2k2(0.0, 1.0).is_err());
    }

    #[test]
    fn model_profile_reproduces_frame_under_r_substitution() {
        // EhModel(2,2) with r = e^{s/4}: the frame dictionary coefficients
        // from (τ∞, φ∞) match 2 × eh_real_frame(1, r).
        let params = ManifoldParams::new(2, 2).unwrap();
        let eh = ModelMetric::Eh(params);
        for i in 0..=100 {
            let s = -8.0 + 16.0 * i as f64 / 100.0;
            let r = (s / 4.0).exp();
            let (tau, phi) = crate::limits::model_profile(&eh, s);
            let f = eh_real_frame(1.0, r).unwrap();
            assert_relative_eq!(2.0 * tau, 2.0 * f.coeff_sigma1, epsilon = 1e-10);
            assert_relative_eq!(phi * 4.0 / (r * r), 2.0 * f.coeff_dr2, epsilon = 1e-10);
            assert_relative_eq!(4.0 * phi, 2.0 * f.coeff_sigma3, epsilon = 1e-10);
        }
    }
}
