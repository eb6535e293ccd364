//! Self-contained special functions: Airy Ai with derivative and zeros,
//! Bessel J of arbitrary real order with stable ladder evaluation, the
//! order-derivative of J, and log-gamma.
//!
//! Everything is pure and reentrant; no tables are built at runtime and no
//! global state exists.

mod airy;
mod bessel;
mod gamma;
mod scaled;

pub use airy::{airy_ai, airy_ai_prime, airy_pair, airy_zero, airy_zero_approx};
pub use bessel::{bessel_j, bessel_j_dnu, bessel_j_sequence, BesselSequence, MAX_ARGUMENT};
pub(crate) use bessel::{j_any, ladder};
pub use gamma::log_gamma;
pub use scaled::ScaledFloat;
