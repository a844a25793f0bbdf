//! Exact rational scalars and univariate polynomial arithmetic over the
//! rationals: gcd via integer subresultant remainder sequences, square-free
//! decomposition (Yun), and Sturm-sequence real-root isolation.

mod poly;
mod rational;
mod roots;

pub use poly::{Poly, PolyError};
pub use rational::{ParseRationalError, Rational};
pub use roots::{isolate_real_roots, refine_interval, Interval};
pub(crate) use roots::count_real_roots;
