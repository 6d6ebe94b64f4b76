//! Generalized secret sharing over arbitrary access structures.
//!
//! Each participant receives a distinct prime. Every authorized set is
//! characterized by the product of its members' primes, and the dealer
//! publishes `y(x) = Π(x - c_i) + S`. A coalition whose product is one of the
//! `c_i` evaluates `y` to the secret; any other coalition gets an unrelated
//! integer.
//!
//! Modules:
//! - [`polyarith`]: exact integer polynomials and seeded prime generation
//! - [`access`]: participants, access structures, monotone closure
//! - [`scheme`]: dealing and reconstruction, share and public file formats
//! - [`shamir`]: the (n, t) threshold baseline over GF(q)
//! - [`attack`]: the vertical-shift attacker and a hardening report
//! - [`bundle`]: the on-disk layout of a dealt instance
//! - [`bench`]: evaluation timing used by `gsss bench`
//!
//! ```
//! use gsss::{coalition_product, deal, reconstruct, AccessStructure, Secret};
//!
//! let structure = AccessStructure::new(["A", "B", "C"], [vec!["A", "B"], vec!["B", "C"]])?;
//! let dealing = deal(&structure, &Secret::from(42), 128, b"seed")?;
//! let ab = structure.coalition(["A", "B"])?;
//! let r = coalition_product(&dealing.shares_of(&structure, ab))?;
//! assert_eq!(reconstruct(&dealing.public, &r), 42.into());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod access;
pub mod attack;
pub mod bench;
pub mod bundle;
pub mod polyarith;
pub mod scheme;
pub mod shamir;

pub use access::{AccessError, AccessStructure, AccessStructureFile, Coalition, Participant};
pub use attack::{delta_interval, hardening_report, AttackError, Bound, DeltaInterval};
pub use polyarith::{BigInt, BigRational, BigUint, Polynomial};
pub use scheme::{
    coalition_product, deal, reconstruct, Dealing, PrimeShare, PublicPolynomial, SchemeError,
    Secret,
};
