//! Window statistics of modular inverses and multiples of small integers,
//! and Sato-Tate statistics of Kloosterman sum angles averaged over short
//! ranges of parameters.
//!
//! * [`modmath`]: gcd, inverses, totients, sieve, primitive roots.
//! * [`counting`]: the counts `M`, `N`, `N*`, their variance sums and
//!   exceptional sets.
//! * [`kloosterman`]: sums, full per-prime tables, angles.
//! * [`satotate`]: Sato-Tate measure, discrepancy, `#Q`, `Pi`, `Delta`.
//! * [`oracle`]: brute-force references used to cross-check all of the above.

pub mod cache;
pub mod chirp;
pub mod counting;
pub mod error;
pub mod kloosterman;
pub mod modmath;
pub mod oracle;
pub mod satotate;

pub use counting::{CountMode, DeviationReport, SampleSet, Window, WindowHistogram};
pub use error::{Error, Result};
pub use kloosterman::{BuildOnDemand, KloostermanTable, Method, TableProvider};
pub use modmath::PrimeList;
pub use satotate::{AngleWindow, PairCounts, STStats};
