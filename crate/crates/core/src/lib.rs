//! Kähler–Einstein edge metric profiles on Calabi–Hirzebruch manifolds.
//!
//! The Calabi ansatz turns the Einstein equation on the projectivized bundle
//! `P(-kH ⊕ C)` over projective space into a one-dimensional problem for the
//! momentum profile φ(τ). This crate solves that problem in closed form for
//! the two natural normalizations (the `eta` family with the angle β₁ along
//! the zero section free, the `xi` family with β₂ along the infinity section
//! free), integrates the associated arclength coordinate, evaluates the
//! metric tensor in chart coordinates, and quantifies convergence toward the
//! four degeneration models: the Ricci-flat edge metric on the bundle total
//! space (Eguchi–Hanson for n = k = 2, Calabi's Ricci-flat metric for n = k),
//! the orbifold metric on weighted projective space, the product cylinder,
//! and collapse onto the base.
//!
//! Modules:
//! - [`params`]: manifold parameters `(n, k)`, family tags, angle validation;
//! - [`profiles`]: closed-form momentum profiles, endpoint root solving, the
//!   coupled angle relations, boundary and ODE residual checks;
//! - [`geometry`]: the arclength coordinate s, fiber lengths and volumes,
//!   pointwise Hermitian metric evaluation, finite-difference Einstein
//!   residuals, the rescaled small- and large-angle coordinates;
//! - [`limits`]: closed-form limit models and convergence reports;
//! - [`eguchi_hanson`]: the Eguchi–Hanson metric in its three forms and the
//!   identification with the n = k = 2 limit;
//! - [`par`]: order-preserving map helpers, parallel under the `parallel`
//!   feature (default) and sequential otherwise.

// Negated comparisons like `!(x > 0.0)` are used on purpose: they reject NaN
// along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geometry;
pub mod limits;
pub mod par;
pub mod params;
pub mod profiles;
pub mod quad;

pub mod eguchi_hanson;

pub use error::{Error, Result};
pub use geometry::{
    cylinder_phi_pred, einstein_residual, evaluate_metric, fiber_length, fiber_volume,
    integrate_curve, rescaled_radial_length, rescaled_x, rescaled_y, sample_chart_points,
    tau_of_rescaled_x, MetricSample, ProfileCurve, RescaledY, SProfile,
};
pub use limits::{
    convergence_report, cylinder_report, eh_model_potential, model_profile, ConvergenceReport,
    ModelMetric,
};
pub use params::{validate_params, AngleHalf, AnglePair, FamilyTag, ManifoldParams};
pub use profiles::{
    boundary_check, closed_form_n2k1, closed_form_n2k2_beta2, kee_residual, phi_eta, phi_xi,
    solve_eta, solve_xi, BoundaryReport, EtaProfile, Profile, XiProfile,
};
