//! Finite skew lattices given by their operation tables.
//!
//! An algebra is a [`FiniteSkewLattice`] (parse one with
//! [`format::parse_algebra`], check the laws with [`validate::validate`]).
//! [`order::Structure`] computes the natural orders and Green's relations,
//! [`coset`] the cosets and coset bijections between comparable D-classes,
//! and [`classify`] decides the categorical hierarchy, each property by
//! several independent procedures that [`classify_report`] compares.
//!
//! ```
//! use skewlat::{classify_report, find_forbidden, gen_xn};
//!
//! let x2 = gen_xn(2).unwrap();
//! let report = classify_report(&x2).unwrap();
//! assert!(!report.property("categorical") && report.all_agree());
//! assert_eq!(find_forbidden(&x2).unwrap().unwrap().n, 2);
//! ```

pub mod algebra;
pub mod classify;
pub mod cli;
pub mod construct;
pub mod coset;
pub mod crosscheck;
pub mod error;
pub mod format;
pub mod order;
pub mod partition;
pub mod validate;

pub use algebra::{direct_product, FiniteSkewLattice};
pub use classify::{classify_report, find_forbidden, ClassificationReport};
pub use construct::{gen_chain, gen_rectangular, gen_xn, gen_yn};
pub use error::{Result, SklError};
pub use format::{parse_algebra, serialize_algebra};
pub use order::Structure;
pub use validate::validate;
