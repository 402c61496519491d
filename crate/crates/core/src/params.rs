//! Manifold parameters and cone-angle bookkeeping.
//!
//! A Calabi–Hirzebruch manifold is fixed by the pair `(n, k)`: `n` is the
//! complex dimension of the total space and `k` the twist of the line bundle
//! over the projective base. The edge metrics carry two cone angles, `2πβ₁`
//! along the zero section and `2πβ₂` along the infinity section; exactly one
//! of the two is free depending on the normalization ([`FamilyTag`]).

use serde::Serialize;

use crate::error::{Error, Result};

/// The pair `(n, k)` defining the manifold. Requires `n ≥ 2`, `k ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ManifoldParams {
    n: u32,
    k: u32,
}

impl ManifoldParams {
    pub fn new(n: i64, k: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("n must be at least 2, got {n}")));
        }
        if k < 1 {
            return Err(Error::domain(format!("k must be at least 1, got {k}")));
        }
        Ok(ManifoldParams {
            n: n as u32,
            k: k as u32,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn nf(&self) -> f64 {
        f64::from(self.n)
    }

    pub fn kf(&self) -> f64 {
        f64::from(self.k)
    }

    /// Upper endpoint of the admissible β₁ range, `n/k`.
    pub fn beta1_sup(&self) -> f64 {
        self.nf() / self.kf()
    }

    /// Upper endpoint of the admissible β₂ range, `1/k`.
    pub fn beta2_sup(&self) -> f64 {
        1.0 / self.kf()
    }

    pub fn beta_sup(&self, family: FamilyTag) -> f64 {
        match family {
            FamilyTag::Eta => self.beta1_sup(),
            FamilyTag::Xi => self.beta2_sup(),
        }
    }
}

/// Selects the profile normalization: `Eta` puts τ on `[1, T]` with β₁ free,
/// `Xi` puts τ on `[t, 1]` with β₂ free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyTag {
    Eta,
    Xi,
}

impl FamilyTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyTag::Eta => "eta",
            FamilyTag::Xi => "xi",
        }
    }
}

impl std::fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A validated free angle for one family.
#[derive(Clone, Copy, Debug)]
pub struct AngleHalf {
    pub family: FamilyTag,
    pub beta: f64,
}

/// Both cone angles of a solved metric, each inside its open interval.
#[derive(Clone, Copy, Debug)]
pub struct AnglePair {
    pub beta1: f64,
    pub beta2: f64,
}

impl AnglePair {
    pub fn new(params: ManifoldParams, beta1: f64, beta2: f64) -> Result<Self> {
        if !(beta1 > 0.0 && beta1 < params.beta1_sup()) {
            return Err(Error::domain(format!(
                "beta1 = {beta1} outside (0, {})",
                params.beta1_sup()
            )));
        }
        if !(beta2 > 0.0 && beta2 < params.beta2_sup()) {
            return Err(Error::domain(format!(
                "beta2 = {beta2} outside (0, {})",
                params.beta2_sup()
            )));
        }
        Ok(AnglePair { beta1, beta2 })
    }
}

/// Validates `(n, k)` and the free angle of the chosen family.
///
/// The angle must lie strictly inside the open interval: `(0, n/k)` for the
/// eta family, `(0, 1/k)` for the xi family. Endpoints are rejected.
pub fn validate_params(
    n: i64,
    k: i64,
    family: FamilyTag,
    beta: f64,
) -> Result<(ManifoldParams, AngleHalf)> {
    let params = ManifoldParams::new(n, k)?;
    let sup = params.beta_sup(family);
    if !beta.is_finite() || !(beta > 0.0 && beta < sup) {
        return Err(Error::domain(format!(
            "beta = {beta} outside the open interval (0, {sup}) for the {family} family"
        )));
    }
    Ok((params, AngleHalf { family, beta }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_interior_angles() {
        let (p, a) = validate_params(2, 2, FamilyTag::Eta, 0.5).unwrap();
        assert_eq!((p.n(), p.k()), (2, 2));
        assert_eq!(a.beta, 0.5);

        let (p, a) = validate_params(3, 1, FamilyTag::Xi, 0.999).unwrap();
        assert_eq!(p.beta2_sup(), 1.0);
        assert_eq!(a.family, FamilyTag::Xi);
    }

    #[test]
    fn rejects_interval_endpoints() {
        // n/k = 1 for (2, 2); the endpoint itself is excluded.
        assert!(validate_params(2, 2, FamilyTag::Eta, 1.0).is_err());
        assert!(validate_params(2, 2, FamilyTag::Eta, 0.0).is_err());
        assert!(validate_params(2, 1, FamilyTag::Xi, 1.0).is_err());
    }

    #[test]
    fn rejects_bad_manifold_params() {
        assert!(ManifoldParams::new(1, 1).is_err());
        assert!(ManifoldParams::new(2, 0).is_err());
        assert!(validate_params(1, 1, FamilyTag::Eta, 0.5).is_err());
    }

    #[test]
    fn rejects_non_finite_beta() {
        assert!(validate_params(2, 1, FamilyTag::Eta, f64::NAN).is_err());
        assert!(validate_params(2, 1, FamilyTag::Eta, f64::INFINITY).is_err());
    }
}
