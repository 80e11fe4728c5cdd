//! Second-order cone complementarity: projection calculus and normal cones
//! of the complementarity set.
//!
//! The Lorentz cone is `K = {x in R^m : x1 >= |x2|}`, `m >= 2`, and the
//! complementarity set is `Omega = {(x, y) : x, y in K, <x, y> = 0}`.
//!
//! - [`soc`]: vectors, spectral decomposition, projection, point and pair classification
//! - [`calculus`]: directional derivatives, Jacobians, B-subdifferential, coderivatives
//! - [`cones`]: proximal, regular and limiting normal cone membership
//! - [`oracles`]: definition-level numerical checks of the closed forms

pub mod calculus;
pub mod cones;
mod error;
mod linalg;
pub mod oracles;
pub mod soc;
mod verdict;

pub use calculus::{
    b_subdif_elements_at_zero, calmness_report, dir_derivative, dir_derivative_with, jacobian, jacobian_with,
    limiting_coderivative_contains, BSubdifElement, BSubdifKind, CalmnessReport, ProjJacobian,
};
pub use cones::{
    distance_to_regular_cone, graph_normal_contains, limiting_normal_contains, normal_contains, omega_from_difference,
    proximal_normal_contains, regular_normal_contains, regular_normal_contains_via_system, sample_omega_near,
    sample_regular_normal, solve_origin_branch, variational_inequality_sup, NormalCandidate, OmegaSample,
    OriginCertificate, VariationalSup,
};
pub use error::{Result, SoccError};
pub use soc::{
    classify_pair, classify_point, classify_point_checked, project_polar, project_soc, ray_membership, reflect,
    spectral_decompose, CaseTag, ConeRegion, OmegaPair, RayFit, RayMode, SocVector, SpectralDecomp, Tolerances,
};
pub use verdict::{CertValue, ConeKind, MembershipVerdict};
