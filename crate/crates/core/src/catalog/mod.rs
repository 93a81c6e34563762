//! Explicit discs: the Yu-domain witnesses, the exact Kobayashi disc on the
//! normal line, and the extremal maps of the complex ellipsoid.

mod ellipsoid;
mod names;
mod yu;

pub use ellipsoid::{
    automorphism_disc, ellipsoid_automorphism, ellipsoid_kind1, ellipsoid_kind2, kth_roots, lift_kind1, perturbed_kind1,
    sample_ellipsoid_point, EllipsoidKind1Params, EllipsoidKind2Params, KIND1_TOL, KIND2_TOL,
};
pub use names::{parse_complex, CatalogEntry, CatalogItem, CatalogName};
pub use yu::{
    exact_kobayashi_disc, odd_order_lift, yu_optimal_bound, yu_parametric_disc, yu_simple_disc, ExactKobayashiDisc,
    ExactKobayashiParams, YuDisc, YuDiscParams,
};

use crate::domains::DomainError;
use crate::holo::HoloError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("unknown catalog name '{0}'")]
    UnknownName(String),
    #[error(transparent)]
    Holo(#[from] HoloError),
    #[error(transparent)]
    Domain(#[from] DomainError),
}
