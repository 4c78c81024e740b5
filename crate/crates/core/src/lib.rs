//! Enumeration, normal forms and invariants of full intrinsic quadric
//! surfaces of Picard number one to three, indexed by Gorenstein index.
//!
//! ```
//! use fiqs::series::{enumerate_all, Rho};
//! use fiqs::invariants::SurfaceRecord;
//!
//! let surfaces = enumerate_all(Rho::One, 3).unwrap();
//! assert_eq!(surfaces.len(), 2);
//! let rec = SurfaceRecord::from_key(&surfaces[0].0).unwrap();
//! assert_eq!(rec.gorenstein_index, 3);
//! ```

pub mod arith;
pub mod canon;
pub mod census;
pub mod invariants;
pub mod kaehler;
pub mod series;

pub use arith::{IntMatrix, Rational};
pub use series::{DefiningMatrix, Rho, SeriesId, SeriesKey, Tag};
