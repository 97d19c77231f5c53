//! Exact spectral quantities of simple connected graphs: Kemeny's constant,
//! effective resistances, vertex moments, their behavior across 1-separations,
//! and detection of Braess edges and Braess sets.
//!
//! Everything numeric is generic over a [`scalar::Scalar`]; the default is
//! arbitrary-precision [`Rational`] arithmetic, so every identity in this
//! crate is checked by equality, not tolerance. A fixed-width exact scalar
//! ([`Rational128`]) and plain `f64` are available for bounded sweeps and for
//! the floating mode on large graphs.
//!
//! ```
//! use kemeny::{families::make_path, constant::kemeny_resistance, Rational};
//!
//! let p5 = make_path(5).unwrap();
//! let report = kemeny_resistance::<Rational>(&p5).unwrap();
//! assert_eq!(report.kemeny.to_string(), "11/2");
//! ```

pub mod braess;
pub mod closed_forms;
pub mod constant;
pub mod enumeration;
mod error;
pub mod families;
pub mod fast;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod resistance;
pub mod scalar;
pub mod separation;
pub mod verify;

pub use error::{Error, Result};
pub use graph::Graph;
pub use scalar::Scalar;

/// The default exact scalar: arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;

/// Fixed-width exact scalar for bounded exhaustive sweeps.
pub type Rational128 = num_rational::Ratio<i128>;

/// Dense matrix over the default exact scalar.
pub type RationalMatrix = matrix::Matrix<Rational>;

/// Number of vertices above which the CLI switches to floating point unless
/// exact arithmetic is forced.
pub const DEFAULT_FLOAT_CUTOFF: usize = 64;

/// Sizes the global thread pool from the `KEMENY_THREADS` environment
/// variable (or an explicit override); silently keeps the default pool if it
/// was already initialized.
pub fn init_thread_pool(threads: Option<usize>) {
    let requested = threads.or_else(|| {
        std::env::var("KEMENY_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    });
    if let Some(count) = requested {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(count.max(1))
            .build_global();
    }
}
