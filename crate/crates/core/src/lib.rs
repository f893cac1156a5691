//! Exact-arithmetic engine for the involution induced on a projective line by
//! a pencil of quadrics, over any field of characteristic ≠ 2.
//!
//! The crate is `no_std` (alloc required). All values are immutable and all
//! operations are pure, so everything here is safe to share across threads.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod binform;
pub mod error;
pub mod field;
pub mod harness;
pub mod involution;
pub mod linalg;
pub mod pencil;
pub mod projline;

pub use binform::{Classification, SymForm2};
pub use error::{Error, Result};
pub use field::{FieldDescriptor, Scalar};
pub use harness::{AffineConfig, Check, FuzzTally, ScenarioReport};
pub use involution::Involution;
pub use pencil::{Diagnosis, LineInPV, MemberCheck, Pencil, SymFormN};
pub use projline::{CrossRatio, ProjPoint};
