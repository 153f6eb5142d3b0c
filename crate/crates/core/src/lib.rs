//! Rainbow labelings of three-spine caterpillars over `Z_p^k`.
//!
//! A labeling of the caterpillar `C(h1,h2,h3)` assigns every group element to
//! exactly one vertex so that the edge sums are pairwise distinct.

pub mod cli;
pub mod constructor;
pub mod dot;
pub mod error;
pub mod group;
pub mod labeling;
pub mod oracle;

pub use constructor::{construct, feasibility, ExceptionTag, FeasibilityVerdict};
pub use error::{Error, Result};
pub use group::{Element, GroupParams, Matrix};
pub use labeling::{verify, Hair, Labeling, LabelingDocument, Partition, Role, Shape, VerifyReport};
pub use oracle::{search, OracleVerdict, Outcome, SearchBudget};
