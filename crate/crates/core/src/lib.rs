//! Character theory of commutative fusion rings, with certified arithmetic.

pub mod analysis;
pub mod chars;
pub mod document;
pub mod dual;
pub mod error;
pub mod isaacs;
pub mod lattice;
pub mod modular;
pub mod poly;
pub mod report;
pub mod ring;
pub mod scalar;
pub mod suite;

pub use analysis::{Analysis, Frame};
pub use chars::{CharacterTable, IdentityCheck};
pub use document::RingDocument;
pub use error::{Error, Result};
pub use modular::ModularData;
pub use num_rational::Ratio;
pub use report::{Assumptions, Flag, Outcome, TheoremReport, Verdict};
pub use ring::FusionRing;
pub use scalar::{Equality, IntegralityTier, IntegralityVerdict, PowerProduct, Scalar};
pub use suite::{Request, Subject};

/// Exponent `s` of the Isaacs-type statements.
pub type Exponent = Ratio<i64>;
