//! Exact q-series, Lerch sum coefficients, theta-function integral representations
//! and identity verification.

pub mod divisor;
pub mod error;
pub mod integral;
pub mod lerch;
pub mod numeric;
pub mod qseries;
pub mod quad;
pub mod report;
pub mod series;
pub mod theta_product;
pub mod verify;

pub use divisor::DivisorTable;
pub use error::{Error, Result};
pub use numeric::{Certified, HalfPlanePoint, C64};
pub use report::{IdentityReport, Mode, Status};
pub use quad::{ContourSpec, QuadResult, TailEnvelope};
pub use series::{Exponent, FormalSeries};
