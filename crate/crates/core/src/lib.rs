//! Higher-order Kobayashi pseudometrics `K^k_Ω(p, v)` by explicit discs,
//! certified containment and numerical extremal search.
//!
//! * [`holo`]: power series, closed-form holomorphic functions and analytic discs.
//! * [`domains`]: model domains by defining function, and grid containment certificates.
//! * [`catalog`]: explicit witnesses (Yu domain, exact normal-line disc, ellipsoid extremals).
//! * [`metrics`]: jet checks, closed forms and the penalized upper-bound search.
//! * [`schwarz`]: higher-order Schwarz and Schwarz–Pick inequalities with samplers.
//! * [`stationarity`]: weight solve certifying k-stationary boundary discs.

pub mod catalog;
pub mod domains;
pub mod holo;
pub mod metrics;
pub mod schwarz;
pub mod stationarity;

pub use domains::{contains_disc, ContainmentConfig, ContainmentReport, ModelDomain, Verdict};
pub use holo::{c64, AnalyticDisc, HoloFn, C64};
pub use metrics::{JetTarget, MetricEstimate};
