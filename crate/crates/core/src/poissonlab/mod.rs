//! Concrete Poisson models, graph flows on them, and solvers around those flows.

mod flow;
mod invariance;
mod lift;
mod model;
mod nambu;
mod trivialize;

pub use flow::{apply_symmetry, picard_integrate, series, series_coefficient, verify_picard, Flow, DEFAULT_PICARD_ORDER, MAX_PICARD_ORDER};
pub use invariance::{bind_params, invariance_conditions};
pub use lift::{nambu_lift_conditions, LiftOptions, LiftReport, MAX_ANSATZ};
pub use model::{linear_bracket, so3_constants, PoissonModel, StructureConstants};
pub use nambu::{nambu_bivector, NambuDatum};
pub use trivialize::{euler_field, trivialize, Trivialization, MAX_TRIVIALIZE_DEGREE};
