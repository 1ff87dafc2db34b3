//! Power-residue conditions and non-split certificates for symbol algebras
//! of degree n over the n-th cyclotomic field embedded in Q_p.
//!
//! Nothing here materializes the algebra itself; every check happens in F_p
//! and F_p[x]. A certificate records the congruence p ≡ 1 (mod n), one
//! Euler-criterion value per prime divisor of n, the Kummer unramifiedness
//! predicate, and the residue-field extension degree computed from the
//! factorization of x^n - alpha. The verdict is NonSplit or Inconclusive;
//! splitness in the other direction is never claimed.

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, mod_pow};
use crate::error::{Error, Result};
use crate::fppoly::extension_degree;

/// Parameters (n, p, alpha) of the degree-n symbol algebra (alpha, p / K, ξ),
/// with n ≥ 3, p prime, p ≡ 1 (mod n), and p not dividing alpha. The
/// primitive n-th root of unity ξ is carried implicitly by n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolAlgebraSpec {
    n: i64,
    p: i64,
    alpha: i64,
}

impl SymbolAlgebraSpec {
    pub fn new(n: i64, p: i64, alpha: i64) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain("n must be at least 3"));
        }
        if p < 2 || !is_prime(p) {
            return Err(Error::domain("p must be prime"));
        }
        if p.rem_euclid(n) != 1 {
            return Err(Error::domain("p must be congruent to 1 mod n"));
        }
        if alpha.rem_euclid(p) == 0 {
            return Err(Error::domain("alpha must not be divisible by p"));
        }
        Ok(SymbolAlgebraSpec { n, p, alpha })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }
}

/// True iff alpha is an l-th power residue mod p, by the Euler-type
/// criterion alpha^((p-1)/l) ≡ 1, valid because l divides p - 1.
pub fn is_l_power_residue(alpha: i64, l: i64, p: i64) -> Result<bool> {
    if p < 2 || !is_prime(p) {
        return Err(Error::domain("p must be prime"));
    }
    if alpha.rem_euclid(p) == 0 {
        return Err(Error::domain("alpha must not be divisible by p"));
    }
    if l < 2 {
        return Err(Error::domain("l must be at least 2"));
    }
    if (p - 1) % l != 0 {
        return Err(Error::domain("l must divide p - 1"));
    }
    Ok(mod_pow(alpha, ((p - 1) / l) as u64, p)? == 1)
}

/// True iff alpha is not an l-th power residue mod p for any prime divisor
/// l of n. Prime divisors suffice: an l-th power residue for composite l | n
/// is in particular an l'-th power residue for every prime l' | l.
pub fn residue_conditions_hold(alpha: i64, n: i64, p: i64) -> Result<bool> {
    if n < 3 {
        return Err(Error::domain("n must be at least 3"));
    }
    if p < 2 || !is_prime(p) {
        return Err(Error::domain("p must be prime"));
    }
    if p.rem_euclid(n) != 1 {
        return Err(Error::domain("p must be congruent to 1 mod n"));
    }
    for l in factorize(n)?.primes() {
        if is_l_power_residue(alpha, l, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest alpha ≥ 2 (skipping multiples of p) satisfying
/// `residue_conditions_hold`. A primitive root mod p always qualifies, so
/// the scan stays below p.
pub fn find_alpha(n: i64, p: i64) -> Result<i64> {
    if n < 3 {
        return Err(Error::domain("n must be at least 3"));
    }
    if p < 2 || !is_prime(p) {
        return Err(Error::domain("p must be prime"));
    }
    if p.rem_euclid(n) != 1 {
        return Err(Error::domain("p must be congruent to 1 mod n"));
    }
    let mut alpha = 2i64;
    while alpha < p {
        if residue_conditions_hold(alpha, n, p)? {
            return Ok(alpha);
        }
        alpha += 1;
    }
    unreachable!("a qualifying alpha below p always exists");
}

/// Kummer criterion for p to be unramified in the splitting field of
/// x^n - a: true iff p divides neither n nor a.
pub fn kummer_unramified(p: i64, n: i64, a: i64) -> Result<bool> {
    if p < 2 || !is_prime(p) {
        return Err(Error::domain("p must be prime"));
    }
    if n < 1 {
        return Err(Error::domain("n must be positive"));
    }
    if a == 0 {
        return Err(Error::domain("a must be nonzero"));
    }
    Ok(n % p != 0 && a % p != 0)
}

/// One Euler-criterion check: alpha^((p-1)/l) mod p for a prime l | n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueCheck {
    pub l: i64,
    pub value: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    NonSplit,
    Inconclusive,
}

/// Verifiable evidence that the symbol algebra does not split. The verdict
/// is NonSplit exactly when the congruence holds, every residue check
/// differs from 1, and x^n - alpha generates a degree-n residue extension.
///
/// Serialized field order is fixed, so identical parameters always produce
/// byte-identical certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonSplitCertificate {
    pub n: i64,
    pub p: i64,
    pub alpha: i64,
    pub residue_checks: Vec<ResidueCheck>,
    pub unramified: bool,
    pub congruence_ok: bool,
    pub extension_degree: u32,
    pub verdict: Verdict,
}

impl NonSplitCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Assemble the certificate for a validated (n, p, alpha).
pub fn nonsplit_certificate(spec: &SymbolAlgebraSpec) -> Result<NonSplitCertificate> {
    let (n, p, alpha) = (spec.n(), spec.p(), spec.alpha());
    let mut residue_checks = Vec::new();
    for l in factorize(n)?.primes() {
        let value = mod_pow(alpha, ((p - 1) / l) as u64, p)?;
        residue_checks.push(ResidueCheck { l, value });
    }
    let unramified = kummer_unramified(p, n, alpha)?;
    let congruence_ok = p.rem_euclid(n) == 1;
    let n_deg = u32::try_from(n)
        .map_err(|_| Error::capacity("n exceeds the polynomial degree budget"))?;
    let degrees = extension_degree(alpha, n_deg, p)?;
    let all_nonresidues = residue_checks.iter().all(|rc| rc.value != 1);
    let verdict = if congruence_ok && all_nonresidues && i64::from(degrees.minimum) == n {
        Verdict::NonSplit
    } else {
        Verdict::Inconclusive
    };
    Ok(NonSplitCertificate {
        n,
        p,
        alpha,
        residue_checks,
        unramified,
        congruence_ok,
        extension_degree: degrees.minimum,
        verdict,
    })
}
