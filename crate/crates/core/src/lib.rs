//! Syzygies, Auslander transposes, Ext/Tor and local-ring invariants over
//! graded quotients R = S/I of polynomial rings over a prime field, plus a
//! dense linear-algebra oracle for artinian rings and verification routines
//! for the dimension formulas relating them.

pub mod error;
pub mod field;
pub mod groebner;
pub mod homalg;
pub mod matrix;
pub mod monomial;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod stable;
pub mod text;
pub mod verifier;

pub use error::{Error, Result};
pub use field::{Fp, PrimeField, DEFAULT_CHARACTERISTIC};
pub use groebner::{Dim, FreeVector, GroebnerBasis};
pub use homalg::{FreeResolution, ModulePresentation};
pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use ring::{Ring, RingDescriptor};
