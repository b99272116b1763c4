//! Fractional Poisson-type counting processes.
//!
//! * [`special`]: Mittag-Leffler, Prabhakar and Wright functions.
//! * [`models`]: exact distributions of the first-type, second-type and
//!   n-th order processes.
//! * [`simulate`]: renewal simulation by Mittag-Leffler interarrival sampling.
//! * [`verify`]: independent numerical cross-checks of the closed forms.
//! * [`cli`]: the `fracpois` command-line front end.

// NaN must fail parameter checks, so `!(x > 0.0)` is deliberate
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod check;
pub mod cli;
pub mod error;
pub mod models;
pub mod quad;
pub mod simulate;
pub mod special;
pub mod verify;

pub use check::CheckReport;
pub use error::{Error, Result};
pub use models::ProcessSpec;
pub use special::{MLSpec, SeriesPolicy};
