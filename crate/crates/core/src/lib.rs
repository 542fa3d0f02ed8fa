//! Bernstein and Bernstein-Stancu operators on `[0,1]`.
//!
//! * [`operators`]: basis evaluation, the operators themselves and the
//!   closed-form images of `1`, `t`, `t²`.
//! * [`nodes`]: node sets and checks of their geometry (gap bound,
//!   clustering around `α/β`, nesting for equal ratios).
//! * [`bounds`]: modulus of continuity, the two-term error bound, uniform
//!   error scans and the large-parameter experiment at fixed `n`.
//! * [`cli`]: the `stancu-lab` front end, CSV and SVG output.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod function;
pub mod nodes;
pub mod operators;

pub use bounds::{
    corollary2_bound, derive_c, grid_slack, modulus_of_continuity, operator_distance, sup_error,
    theorem4_experiment, BoundConfig, RatioFamily, RatioReport,
};
pub use error::{Error, Result};
pub use function::{Builtin, FunctionSpec};
pub use nodes::{
    check_theorem1, check_theorem2, check_theorem3, node_gap, stancu_nodes, ClusterReport,
    GapReport, NestingReport, NodeSet,
};
pub use operators::{
    apply_operator, apply_operator_curve, basis_row, bernstein_basis, moment_closed_form,
    SampledCurve, StancuOperator, StancuParams,
};
