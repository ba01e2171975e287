//! Sharp concavity radii for families of analytic functions on the unit
//! disk, with numerical verification.
//!
//! The crate has three layers:
//!
//! * evaluation -- second-order complex jets ([`jet`]), truncated power
//!   series ([`series`]) and a catalog of closed-form extremal functions
//!   ([`catalog`]), all feeding the concavity functionals `T` and `P`
//!   ([`functional`]);
//! * solving -- the five radius-defining functions and their least-root
//!   solver ([`phi`]), plus circle scans that measure the empirical radius
//!   of a concrete function ([`scan`]);
//! * verification -- randomized class witnesses with their inequality
//!   suites ([`witness`]) and quoted reference expressions kept as
//!   cross-checks ([`reference`]).
//!
//! The `concavity` binary exposes all of this as `radius`, `scan`, `verify`,
//! `grid` and `witness-test` subcommands; [`report`] holds its record types
//! and emitters.

pub mod catalog;
pub mod error;
pub mod function;
pub mod functional;
pub mod jet;
pub mod phi;
pub mod reference;
pub mod report;
pub mod scan;
pub mod series;
pub mod witness;

pub use catalog::CatalogFunction;
pub use error::{Error, Result};
pub use function::FunctionSpec;
pub use functional::{
    eval_kp, eval_pf, eval_tf, limit_pf_at_pole, ConcavityParam, PoleLimit, PoleParam,
};
pub use jet::Jet2;
pub use phi::{closed_form_root, least_root, radius_of_convexity, PhiSpec, RadiusResult};
pub use scan::{
    empirical_concavity_radius, empirical_concavity_radius_with, min_re_tf_on_circle, CircleScan,
    ScanOptions,
};
pub use series::SeriesFunction;
