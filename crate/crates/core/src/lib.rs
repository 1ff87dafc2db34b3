//! Splitting of rational quaternion algebras H(a,b) over Q and over
//! quadratic fields Q(√d), and non-split certificates for symbol algebras
//! of degree n over the n-th cyclotomic field inside Q_p.
//!
//! The algebras are never materialized; only their splitting behavior is
//! computed, through local Hilbert symbols, prime decomposition in
//! quadratic fields, power-residue checks, and factorization in F_p[x].
//!
//! - [`arith`] — modular exponentiation, deterministic primality,
//!   factorization, Legendre/Kronecker symbols
//! - [`quadfield`] — discriminants and split/inert/ramified decomposition
//! - [`quatalg`] — Hilbert symbols, ramified places, splitting decisions,
//!   and the sufficient-condition checkers
//! - [`fppoly`] — F_p[x] irreducibility and factorization, the
//!   extension-degree oracle
//! - [`symbolalg`] — residue conditions, alpha search, certificates

pub mod arith;
pub mod error;
pub mod fppoly;
pub mod quadfield;
pub mod quatalg;
pub mod symbolalg;

pub use error::{Error, Result};
pub use fppoly::{ExtensionDegrees, FpPolynomial, PolyFactorization};
pub use quadfield::{InfinitePlaceType, QuadraticField, SplittingType};
pub use quatalg::{
    FailureReason, Place, QuaternionAlgebra, RamificationData, Sufficiency,
};
pub use symbolalg::{NonSplitCertificate, ResidueCheck, SymbolAlgebraSpec, Verdict};
