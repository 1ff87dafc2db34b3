//! Rational quaternion algebras H(a,b): local Hilbert symbols, ramified
//! places, splitting over Q and over quadratic fields, and the
//! sufficient-condition checkers for splitting over Q(√d).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{factorize, is_prime, legendre, p_adic_valuation};
use crate::arith::kronecker;
use crate::error::{Error, Result};
use crate::quadfield::{InfinitePlaceType, QuadraticField, SplittingType};

/// Upper bound on p^m for the brute-force local solvability search.
pub const ORACLE_BUDGET: u64 = 10_000_000;

/// The quaternion algebra over Q with parameters (a, b), both nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuaternionAlgebra {
    a: i64,
    b: i64,
}

impl QuaternionAlgebra {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::domain("parameters a and b must be nonzero"));
        }
        Ok(QuaternionAlgebra { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }
}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{})", self.a, self.b)
    }
}

/// A place of Q: a finite prime or the infinite place.
///
/// `Finite` sorts before `Infinite`, so ordered place sets list primes
/// ascending with "inf" last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(Place::Infinite);
        }
        let p: i64 = s
            .parse()
            .map_err(|_| Error::domain(format!("not a place: {s:?}")))?;
        if p < 2 || !is_prime(p) {
            return Err(Error::domain(format!("{p} is not a prime")));
        }
        Ok(Place::Finite(p))
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Ramification data of H(a,b): the places where the local symbol is -1,
/// plus the candidate set that was examined (the infinite place and every
/// prime dividing 2ab).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationData {
    pub algebra: QuaternionAlgebra,
    pub ramified: BTreeSet<Place>,
    pub candidates_checked: BTreeSet<Place>,
}

fn unit_part(x: i64, p: i64, val: u32) -> i64 {
    x / p.pow(val)
}

/// ε(u) = (u-1)/2 mod 2 for odd u.
fn eps2(u: i64) -> u32 {
    if u.rem_euclid(4) == 3 {
        1
    } else {
        0
    }
}

/// ω(u) = (u²-1)/8 mod 2 for odd u.
fn omega2(u: i64) -> u32 {
    match u.rem_euclid(8) {
        1 | 7 => 0,
        3 | 5 => 1,
        _ => unreachable!("u is odd"),
    }
}

/// Hilbert symbol (a,b)_v ∈ {±1} at a place of Q, by the classical closed
/// forms: sign inspection at the infinite place, the Legendre-symbol formula
/// at odd p, and the ε/ω formula at p = 2.
pub fn hilbert_symbol(a: i64, b: i64, v: Place) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(Error::domain("parameters a and b must be nonzero"));
    }
    match v {
        Place::Infinite => Ok(if a < 0 && b < 0 { -1 } else { 1 }),
        Place::Finite(p) if p == 2 => {
            let alpha = p_adic_valuation(a, 2)?;
            let beta = p_adic_valuation(b, 2)?;
            let u = unit_part(a, 2, alpha);
            let w = unit_part(b, 2, beta);
            let exp = eps2(u) * eps2(w) + (alpha % 2) * omega2(w) + (beta % 2) * omega2(u);
            Ok(if exp % 2 == 1 { -1 } else { 1 })
        }
        Place::Finite(p) => {
            if p < 2 || !is_prime(p) {
                return Err(Error::domain("finite place must carry a prime"));
            }
            let alpha = p_adic_valuation(a, p)?;
            let beta = p_adic_valuation(b, p)?;
            let u = unit_part(a, p, alpha);
            let w = unit_part(b, p, beta);
            let eps_p = ((p - 1) / 2) % 2;
            let mut sign: i8 = 1;
            if alpha % 2 == 1 && beta % 2 == 1 && eps_p == 1 {
                sign = -sign;
            }
            if beta % 2 == 1 {
                sign *= legendre(u, p)?;
            }
            if alpha % 2 == 1 {
                sign *= legendre(w, p)?;
            }
            Ok(sign)
        }
    }
}

/// Values c·y² + offset (mod m) for y = 0, 1, 2, ... by forward differences,
/// so the scan loops need no multiplication or division.
struct QuadraticScan {
    value: u64,
    diff: u64,
    step: u64,
    m: u64,
}

impl QuadraticScan {
    fn new(c: u64, offset: u64, m: u64) -> Self {
        let c = c % m;
        QuadraticScan {
            value: offset % m,
            diff: c,
            step: (c + c) % m,
            m,
        }
    }

    fn next(&mut self) -> u64 {
        let current = self.value;
        self.value += self.diff;
        if self.value >= self.m {
            self.value -= self.m;
        }
        self.diff += self.step;
        if self.diff >= self.m {
            self.diff -= self.m;
        }
        current
    }
}

fn squares_table(modulus: u64) -> Vec<bool> {
    let mut table = vec![false; modulus as usize];
    let mut squares = QuadraticScan::new(1, 0, modulus);
    for _ in 0..=modulus / 2 {
        table[squares.next() as usize] = true;
    }
    table
}

/// Brute-force verifier for the finite Hilbert symbol: 1 iff
/// z² ≡ a·x² + b·y² (mod p^m) has a solution with min(v_p(x), v_p(y), v_p(z)) = 0,
/// where m = v_p(4ab) + 3.
///
/// Dividing the congruence by the square of whichever coordinate is a unit
/// reduces the primitive search to three single-variable scans against a
/// table of squares mod p^m, so the whole check costs O(p^m). Exceeding the
/// 10^7 budget is a capacity error.
pub fn hilbert_symbol_oracle(a: i64, b: i64, p: i64) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(Error::domain("parameters a and b must be nonzero"));
    }
    if p < 2 || !is_prime(p) {
        return Err(Error::domain("p must be prime"));
    }
    let m = if p == 2 { 2 } else { 0 } + p_adic_valuation(a, p)? + p_adic_valuation(b, p)? + 3;
    let mut modulus: u64 = 1;
    for _ in 0..m {
        modulus = modulus.saturating_mul(p as u64);
        if modulus > ORACLE_BUDGET {
            return Err(Error::capacity(format!(
                "p^m = {p}^{m} exceeds the 10^7 search budget"
            )));
        }
    }

    let aa = a.rem_euclid(modulus as i64) as u64;
    let bb = b.rem_euclid(modulus as i64) as u64;
    let sq = squares_table(modulus);

    // x a unit: divide by x² and search z² ≡ a + b·y²
    let mut scan = QuadraticScan::new(bb, aa, modulus);
    for _ in 0..=modulus / 2 {
        if sq[scan.next() as usize] {
            return Ok(1);
        }
    }
    // y a unit: z² ≡ a·x² + b
    let mut scan = QuadraticScan::new(aa, bb, modulus);
    for _ in 0..=modulus / 2 {
        if sq[scan.next() as usize] {
            return Ok(1);
        }
    }
    // z a unit: a·x² + b·y² ≡ 1
    let mut b_squares = vec![false; modulus as usize];
    let mut scan = QuadraticScan::new(bb, 0, modulus);
    for _ in 0..=modulus / 2 {
        b_squares[scan.next() as usize] = true;
    }
    let mut scan = QuadraticScan::new(aa, 0, modulus);
    for _ in 0..=modulus / 2 {
        let mut t = 1 + modulus - scan.next();
        if t >= modulus {
            t -= modulus;
        }
        if b_squares[t as usize] {
            return Ok(1);
        }
    }
    Ok(-1)
}

/// Evaluate the Hilbert symbol at the infinite place and at every prime
/// dividing 2ab; collect the places where it is -1.
pub fn ramified_places(alg: &QuaternionAlgebra) -> Result<RamificationData> {
    let mut candidates: BTreeSet<Place> = BTreeSet::new();
    candidates.insert(Place::Infinite);
    candidates.insert(Place::Finite(2));
    for p in factorize(alg.a)?.primes() {
        candidates.insert(Place::Finite(p));
    }
    for p in factorize(alg.b)?.primes() {
        candidates.insert(Place::Finite(p));
    }
    let mut ramified = BTreeSet::new();
    for &v in &candidates {
        if hilbert_symbol(alg.a, alg.b, v)? == -1 {
            ramified.insert(v);
        }
    }
    Ok(RamificationData {
        algebra: *alg,
        ramified,
        candidates_checked: candidates,
    })
}

/// H(a,b) splits over Q iff its ramified set is empty.
pub fn splits_over_q(alg: &QuaternionAlgebra) -> Result<bool> {
    Ok(ramified_places(alg)?.ramified.is_empty())
}

/// H(a,b) ⊗ Q(√d) splits iff no ramified place of H(a,b) splits in Q(√d):
/// every ramified prime must be inert or ramified in the field, and a
/// ramified infinite place needs d < 0.
pub fn splits_over_quadratic(alg: &QuaternionAlgebra, field: &QuadraticField) -> Result<bool> {
    let data = ramified_places(alg)?;
    for &v in &data.ramified {
        let local_degree_two = match v {
            Place::Infinite => field.infinite_place_type() == InfinitePlaceType::Complex,
            Place::Finite(p) => field.splitting_type(p)? != SplittingType::Split,
        };
        if !local_degree_two {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First reason a sufficient-condition check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureReason {
    /// p = q is excluded by hypothesis.
    #[serde(rename = "hypothesis_p_eq_q")]
    HypothesisPEqQ,
    /// q must be odd.
    #[serde(rename = "hypothesis_q_eq_2")]
    HypothesisQEq2,
    /// p must be odd.
    #[serde(rename = "hypothesis_p_eq_2")]
    HypothesisPEq2,
    /// d ≡ 1 (mod 8) is excluded by hypothesis (2 would split in the field).
    #[serde(rename = "hypothesis_d_mod8")]
    HypothesisDMod8,
    /// (Δ_K/p) = 1.
    #[serde(rename = "legendre_p")]
    LegendreP,
    /// (Δ_K/q) = 1 for q itself or for some odd prime divisor q of alpha.
    #[serde(rename = "legendre_q")]
    LegendreQ,
}

impl FailureReason {
    pub fn code(&self) -> &'static str {
        match self {
            FailureReason::HypothesisPEqQ => "hypothesis_p_eq_q",
            FailureReason::HypothesisQEq2 => "hypothesis_q_eq_2",
            FailureReason::HypothesisPEq2 => "hypothesis_p_eq_2",
            FailureReason::HypothesisDMod8 => "hypothesis_d_mod8",
            FailureReason::LegendreP => "legendre_p",
            FailureReason::LegendreQ => "legendre_q",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Outcome of a sufficient-condition check. Hypothesis violations are
/// reported here rather than as errors so batch sweeps can tabulate the
/// gap between the sufficient conditions and actual splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sufficiency {
    pub holds: bool,
    pub reason: Option<FailureReason>,
}

impl Sufficiency {
    fn holds() -> Self {
        Sufficiency {
            holds: true,
            reason: None,
        }
    }

    fn fails(reason: FailureReason) -> Self {
        Sufficiency {
            holds: false,
            reason: Some(reason),
        }
    }
}

/// Sufficient condition for H(p,q) to split over Q(√d), for primes p, q
/// with q odd and p ≠ q, d squarefree, d ∉ {0,1}, d ≢ 1 (mod 8):
/// (Δ_K/q) ≠ 1 and, when p is odd, (Δ_K/p) ≠ 1.
///
/// When this returns `holds`, `splits_over_quadratic(H(p,q), Q(√d))` is
/// guaranteed true. The converse fails; see `Sufficiency`.
pub fn theorem31_sufficient(p: i64, q: i64, d: i64) -> Result<Sufficiency> {
    if p < 2 || !is_prime(p) {
        return Err(Error::domain("p must be prime"));
    }
    if q < 2 || !is_prime(q) {
        return Err(Error::domain("q must be prime"));
    }
    let field = QuadraticField::new(d)?;
    if p == q {
        return Ok(Sufficiency::fails(FailureReason::HypothesisPEqQ));
    }
    if q == 2 {
        return Ok(Sufficiency::fails(FailureReason::HypothesisQEq2));
    }
    if d.rem_euclid(8) == 1 {
        return Ok(Sufficiency::fails(FailureReason::HypothesisDMod8));
    }
    if p != 2 && kronecker(field.discriminant(), p)? == 1 {
        return Ok(Sufficiency::fails(FailureReason::LegendreP));
    }
    if kronecker(field.discriminant(), q)? == 1 {
        return Ok(Sufficiency::fails(FailureReason::LegendreQ));
    }
    Ok(Sufficiency::holds())
}

/// Sufficient condition for H(alpha,p) to split over Q(√d), for an arbitrary
/// nonzero integer alpha and an odd prime p: the theorem's Legendre condition
/// must hold at p and at every odd prime divisor q of alpha.
pub fn corollary31_sufficient(alpha: i64, p: i64, d: i64) -> Result<Sufficiency> {
    if alpha == 0 {
        return Err(Error::domain("alpha must be nonzero"));
    }
    if p < 2 || !is_prime(p) {
        return Err(Error::domain("p must be prime"));
    }
    let field = QuadraticField::new(d)?;
    if p == 2 {
        return Ok(Sufficiency::fails(FailureReason::HypothesisPEq2));
    }
    if d.rem_euclid(8) == 1 {
        return Ok(Sufficiency::fails(FailureReason::HypothesisDMod8));
    }
    if kronecker(field.discriminant(), p)? == 1 {
        return Ok(Sufficiency::fails(FailureReason::LegendreP));
    }
    for q in factorize(alpha)?.odd_primes() {
        if kronecker(field.discriminant(), q)? == 1 {
            return Ok(Sufficiency::fails(FailureReason::LegendreQ));
        }
    }
    Ok(Sufficiency::holds())
}
