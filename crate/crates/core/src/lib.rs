//! Exact machinery for proving binomial sums with harmonic numbers:
//! partial fractions in a parameter, Gosper's algorithm, WZ-style
//! certificates and first-order recurrences, all over exact rationals.
//!
//! The [`catalog`] module ties these together for eight identities of the
//! form `Σ_k C(n,k)·C(n+k,k)·(-1)^{n-k}·X(k)`.

pub mod catalog;
pub mod exact;
pub mod partfrac;
pub mod polyrat;
pub mod telescope;

pub use catalog::{CatalogError, Level, VerificationReport};
pub use exact::{ExactError, ExactRational, GammaDual};
pub use partfrac::{Decomposition, PartfracError, PoleSpec};
pub use polyrat::{PolyError, Polynomial, RationalFunction};
pub use telescope::{Certificate, GosperOutcome, TelescopeError, WzRelation};
