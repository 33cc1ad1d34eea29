//! Tight dimension-dependent lower bounds on relative entropy in terms of
//! entropy differences, the maximal surprisal variance in finite dimension,
//! and their consequences for channel capacity, hypothesis testing, coding
//! and stepwise thermalization.
//!
//! States are finite probability vectors ([`ProbVector`]); every quantity here
//! depends only on spectra, so commuting (classical) states cover all cases.
//! All entropic quantities are in nats.
//!
//! ```
//! use relent_core::mbound::compute_m;
//!
//! let m = compute_m(1000, 6.0).unwrap();
//! assert!((m.value_f64() - 2.30).abs() < 0.01);
//! ```

pub mod apps;
pub mod entropy;
mod error;
pub mod exec;
pub mod figure;
pub mod mbound;
pub mod oracle;
mod prob;
pub mod search;
pub mod thermal;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use prob::{ExtReal, ProbVector, NEGATIVE_TOL, NORMALIZATION_TOL};
