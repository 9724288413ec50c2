//! abckit: a toolkit for hunting and grading abc triples.
//!
//! The crate combines an exact integer kernel (`arith`), the triple/quality
//! data model (`abc`), curve-group-order recursions and Hasse-interval scans
//! (`curves`), nearest-power representations and their remainder statistics
//! (`krep`), distribution diagnostics (`equidist`), and an auditor for a
//! previously published table of triples (`table`).
//!
//! ```
//! use abckit::{make_triple, quality, FactorConfig};
//!
//! let t = make_triple(2, 6_436_341, "demo").unwrap();
//! let report = quality(&t, &FactorConfig::default()).unwrap();
//! assert_eq!(report.rad_abc, 15042);
//! assert!(report.is_high_quality); // c = 23^5 exceeds rad(abc)
//! ```

pub mod abc;
pub mod arith;
pub mod curves;
pub mod equidist;
pub mod error;
pub mod krep;
pub mod serial;
pub mod table;

pub use abc::{claim2_bound, make_triple, quality, QualityReport, Triple};
pub use arith::{FactorConfig, Factorization, Interval, MAGNITUDE_CAP};
pub use error::{Error, Result};
