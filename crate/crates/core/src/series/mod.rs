//! Exact truncated Laurent series over `Q`, `Q(i)` and `Q(w)`.

mod eta;
mod laurent;
mod scalar;

pub use eta::eta_power_product;
pub use laurent::{series_arith, LaurentSeries, SeriesOp};
pub use scalar::{Cyclotomic, CyclotomicElement, Eisenstein, Gaussian, Rational, Scalar};

/// Default working precision in `z`.
pub const DEFAULT_PRECISION: i64 = 12;
