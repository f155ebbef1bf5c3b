//! Characteristic polynomials, the Routh table, interval polynomials.

mod kharitonov;
mod kosov;
mod poly;
mod routh;

pub use kharitonov::{kharitonov_polys, kharitonov_stable};
pub use kosov::{kosov_interval_dstability, KosovMode};
pub use poly::{char_poly, IntervalPoly, Poly};
pub use routh::{routh_hurwitz, ROUTH_EPS};
