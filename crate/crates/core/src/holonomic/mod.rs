//! Fast coefficient extraction for `U_j` and `V_0`: second-order ODEs from
//! the quadratic algebraicity of `X(t)`, turned into P-recurrences in the
//! coefficient index and run forward exactly.

mod fit;
mod ode;
mod quadratic;
mod recurrence;
mod runner;

pub use fit::{
    fit_recurrence, u_samples, Ansatz, SeqData, MIN_EXCESS, MIN_HOLDOUT, VALIDATION_TAIL,
};
pub use ode::{
    derive_ode, derive_ode_u, derive_ode_u_at, derive_ode_v, is_left_multiple, u_kernel, v_kernel,
    OdeOperator,
};
pub use quadratic::{QElem, QuadraticModel};
pub use recurrence::{derive_rec_u, derive_rec_v, ode_to_rec, preload, RecurrenceOp};
pub use runner::{run_dyadic, run_rational, run_rec_u, run_rec_v, u_values, v_values, Dyadic};
