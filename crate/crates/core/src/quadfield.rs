//! Quadratic fields Q(√d): field discriminant and the decomposition type of
//! rational primes and of the infinite place.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, kronecker};
use crate::error::{Error, Result};

/// The quadratic field Q(√d) for a squarefree d outside {0, 1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticField {
    d: i64,
    discriminant: i64,
}

/// How a rational prime decomposes in the ring of integers of Q(√d).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplittingType::Split => write!(f, "split"),
            SplittingType::Inert => write!(f, "inert"),
            SplittingType::Ramified => write!(f, "ramified"),
        }
    }
}

/// Behavior of the infinite place of Q in Q(√d): two real embeddings when
/// d > 0, one pair of complex embeddings when d < 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InfinitePlaceType {
    RealSplit,
    Complex,
}

impl fmt::Display for InfinitePlaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfinitePlaceType::RealSplit => write!(f, "real-split"),
            InfinitePlaceType::Complex => write!(f, "complex"),
        }
    }
}

impl QuadraticField {
    /// Build Q(√d). Rejects d ∈ {0, 1} and non-squarefree d rather than
    /// normalizing, so caller bugs surface immediately.
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(Error::domain("d = 0 and d = 1 are excluded"));
        }
        if factorize(d)?.factors.iter().any(|&(_, e)| e > 1) {
            return Err(Error::domain("d must be squarefree"));
        }
        let discriminant = if d.rem_euclid(4) == 1 {
            d
        } else {
            4i64.checked_mul(d)
                .ok_or_else(|| Error::domain("d is too large"))?
        };
        Ok(QuadraticField { d, discriminant })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Field discriminant: d when d ≡ 1 (mod 4), 4d otherwise.
    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    /// Decomposition type of the prime p in the ring of integers.
    ///
    /// For odd p this reads off the Kronecker symbol of the discriminant;
    /// for p = 2 the classical statement classifies by d mod 8.
    pub fn splitting_type(&self, p: i64) -> Result<SplittingType> {
        if p < 2 || !is_prime(p) {
            return Err(Error::domain("p must be prime"));
        }
        if p == 2 {
            return Ok(if self.discriminant % 2 == 0 {
                SplittingType::Ramified
            } else if self.d.rem_euclid(8) == 1 {
                SplittingType::Split
            } else {
                // odd discriminant forces d ≡ 1 (mod 4), so d ≡ 5 (mod 8) here
                SplittingType::Inert
            });
        }
        if self.discriminant % p == 0 {
            return Ok(SplittingType::Ramified);
        }
        Ok(match kronecker(self.discriminant, p)? {
            1 => SplittingType::Split,
            -1 => SplittingType::Inert,
            _ => unreachable!("p does not divide the discriminant"),
        })
    }

    /// Type of the infinite place: real-split for d > 0, complex for d < 0.
    pub fn infinite_place_type(&self) -> InfinitePlaceType {
        if self.d > 0 {
            InfinitePlaceType::RealSplit
        } else {
            InfinitePlaceType::Complex
        }
    }
}
