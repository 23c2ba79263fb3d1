//! Exact lower and upper bounds for multi-point Seshadri constants
//! `eps(X, L, r)` on smooth projective surfaces of Picard number one, and a
//! brute-force engine that checks the case analysis behind them.
//!
//! - [`exact`]: big rationals, integer square roots, exactly ordered surds.
//! - [`pell`]: fundamental Pell solutions and single-point bounds.
//! - [`bounds`]: every named bound and their exact comparison.
//! - [`oracle`]: enumeration of multiplicity vectors and the verifiers.
//! - [`catalog`]: stock Picard-number-one surfaces.
//! - [`cli`]: the `seshadri` command-line front end.

pub mod bounds;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod par;
pub mod pell;

pub use error::{Error, Result};
pub use exact::{Rational, RenderMode, Surd};
pub use par::Execution;
