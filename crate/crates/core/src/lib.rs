//! Finite construction schemes and the combinatorics built on them.
//!
//! Build a scheme from a type prefix, query `ρ`, `Δ`, `Ξ`, norms and
//! closures, search for captured systems, derive Hausdorff and Todorčević
//! gaps, run finite-condition posets, and check every finitely checkable law
//! by brute force.
//!
//! ```
//! use schemelab::{build_scheme, make_type_prefix};
//!
//! let ty = make_type_prefix(&[(1, 2, 0), (2, 2, 1)]).unwrap();
//! let s = build_scheme(&ty);
//! assert_eq!(s.rho(1, 2).unwrap(), 2);
//! ```

pub mod capture;
pub mod cli;
pub mod finset;
pub mod gaps;
pub mod laws;
pub mod oracle;
pub mod posets;
pub mod scheme;
pub mod typeseq;
pub mod verify;

pub use finset::{FinSet, Ordinal};
pub use scheme::{build_scheme, DeltaLevel, Level, Scheme};
pub use typeseq::{make_type_prefix, TypeSequence};
