//! Exact finite-field hypergeometric functions and their evaluation through
//! Hecke characters of CM elliptic curves.
//!
//! The crate is layered bottom-up:
//!
//! * [`field`]: prime contexts, discrete logarithms, and the root choices that
//!   fix a prime ideal above `p`;
//! * [`cyclotomic`]: exact arithmetic in `Z[zeta_N]`, `N | 24`;
//! * [`characters`]: multiplicative characters, Jacobi sums, binomials;
//! * [`hypergeometric`]: the character sums `F_eta`, `S_eta` and exact `2F1`
//!   (plus a floating-point oracle over all characters);
//! * [`curves`]: point counts for the curve families and the Jacobi-sum
//!   formula for `D_{N,c,d}`;
//! * [`hecke`]: Cornacchia and the four CM Hecke characters;
//! * [`verify`]: theorem and lemma checks, campaigns, CSV/JSON reports.

pub mod characters;
pub mod curves;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod hecke;
pub mod hypergeometric;
pub mod par;
pub mod verify;

pub use characters::{greene_binomial, jacobi_sum, MulChar};
pub use cyclotomic::CycInt;
pub use error::{Error, Result};
pub use field::{PrimeContext, Subfield};
pub use hecke::{CmCurve, HeckeValue, QuadInt, QuadRing};
pub use hypergeometric::HgValue;
