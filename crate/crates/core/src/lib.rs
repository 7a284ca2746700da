//! Fundamental group lattices of finite abelian groups.
//!
//! A finite abelian group `G ≅ Z_{d1} × … × Z_{dk}` (with `d1 | d2 | … | dk`)
//! has a subgroup lattice that can be described purely arithmetically: its
//! elements are upper-triangular integer matrices whose rows generate a
//! subgroup of `Z^k` containing `d1 Z × … × dk Z`. This crate builds that
//! lattice ([`fundamental`]), checks it against a brute-force subgroup
//! enumeration ([`oracle`]), decides lattice isomorphism between two groups
//! from their invariant factors alone ([`equivalence`]) and runs catalog-wide
//! verification sweeps ([`theorems`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod equivalence;
mod error;
pub mod fundamental;
pub mod oracle;
pub mod poset;
pub mod signature;
pub mod theorems;

pub use error::{Error, ErrorKind, Result};
pub use signature::GroupSignature;
