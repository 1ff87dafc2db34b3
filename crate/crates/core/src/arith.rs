//! Exact integer and modular arithmetic primitives: modular exponentiation,
//! deterministic primality, factorization, and the Legendre / Kronecker
//! symbols. Everything is a pure function of its arguments.
//!
//! All public operations accept magnitudes up to `i64::MAX`; intermediate
//! products are carried in 128-bit integers so nothing overflows.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Witnesses making the strong-pseudoprime test deterministic below 2^64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Trial-division bound used by `factorize` before switching to Pollard rho.
const TRIAL_LIMIT: u64 = 1_000_000;

pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// base^exp mod m by repeated squaring, result in [0, m).
pub fn mod_pow(base: i64, exp: u64, m: i64) -> Result<i64> {
    if m < 2 {
        return Err(Error::domain("modulus must be at least 2"));
    }
    let b = base.rem_euclid(m) as u64;
    Ok(pow_mod_u64(b, exp, m as u64) as i64)
}

/// Deterministic primality test: true iff |n| is prime.
///
/// Small divisors are tried first; survivors go through the strong
/// pseudoprime battery with a witness set valid for every n < 2^64.
pub fn is_prime(n: i64) -> bool {
    is_prime_u64(n.unsigned_abs())
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_WITNESSES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for w in MR_WITNESSES {
        let mut x = pow_mod_u64(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Signed prime factorization of a nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// The integer that was factored.
    pub value: i64,
    /// +1 or -1.
    pub sign: i8,
    /// (prime, exponent) pairs with primes strictly increasing.
    pub factors: Vec<(i64, u32)>,
}

impl Factorization {
    /// Multiply sign and prime powers back together.
    pub fn reassemble(&self) -> i64 {
        let mut acc = self.sign as i64;
        for &(p, e) in &self.factors {
            for _ in 0..e {
                acc *= p;
            }
        }
        acc
    }

    /// Distinct prime divisors, ascending.
    pub fn primes(&self) -> impl Iterator<Item = i64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Distinct odd prime divisors, ascending.
    pub fn odd_primes(&self) -> impl Iterator<Item = i64> + '_ {
        self.primes().filter(|&p| p != 2)
    }
}

/// Complete prime factorization of n ≠ 0: trial division up to 10^6,
/// then Pollard rho (Brent) with a deterministic parameter sequence.
pub fn factorize(n: i64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("cannot factor zero"));
    }
    let sign: i8 = if n < 0 { -1 } else { 1 };
    let mut m = n.unsigned_abs();
    let mut counts: BTreeMap<u64, u32> = BTreeMap::new();

    for p in [2u64, 3, 5] {
        while m % p == 0 {
            *counts.entry(p).or_insert(0) += 1;
            m /= p;
        }
    }
    // 2-3-5 wheel.
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut d = 7u64;
    let mut i = 0;
    while d <= TRIAL_LIMIT && d * d <= m {
        while m % d == 0 {
            *counts.entry(d).or_insert(0) += 1;
            m /= d;
        }
        d += WHEEL[i];
        i = (i + 1) & 7;
    }
    if m > 1 {
        if d * d > m {
            // trial division already proved m prime
            *counts.entry(m).or_insert(0) += 1;
        } else {
            split_with_rho(m, &mut counts);
        }
    }

    let factors = counts
        .into_iter()
        .map(|(p, e)| (p as i64, e))
        .collect::<Vec<_>>();
    Ok(Factorization {
        value: n,
        sign,
        factors,
    })
}

fn split_with_rho(m: u64, counts: &mut BTreeMap<u64, u32>) {
    if m == 1 {
        return;
    }
    if is_prime_u64(m) {
        *counts.entry(m).or_insert(0) += 1;
        return;
    }
    let d = pollard_brent(m);
    split_with_rho(d, counts);
    split_with_rho(m / d, counts);
}

/// Brent's cycle-finding variant of Pollard rho. The caller guarantees n is
/// composite, odd, and free of factors below `TRIAL_LIMIT`; the polynomial
/// offset c is tried in the fixed order 1, 2, 3, ... so runs are repeatable.
fn pollard_brent(n: u64) -> u64 {
    for c in 1u64.. {
        if let Some(d) = brent_attempt(n, c) {
            return d;
        }
    }
    unreachable!("composite n must eventually split");
}

fn brent_attempt(n: u64, c: u64) -> Option<u64> {
    let step = |x: u64| {
        let y = mul_mod_u64(x, x, n) + c;
        if y >= n {
            y - n
        } else {
            y
        }
    };
    let mut y = 2u64;
    let mut x = y;
    let mut ys = y;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut r = 1u64;
    const BATCH: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = step(y);
                q = mul_mod_u64(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = step(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    if g == n {
        None
    } else {
        Some(g)
    }
}

/// Legendre symbol (a/p) for an odd prime p, by Euler's criterion.
pub fn legendre(a: i64, p: i64) -> Result<i8> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::domain("p must be an odd prime"));
    }
    let r = mod_pow(a, ((p - 1) / 2) as u64, p)?;
    Ok(if r == 0 {
        0
    } else if r == 1 {
        1
    } else {
        -1
    })
}

/// (2/a) for odd a, indexed by a mod 8.
const TAB2: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];

/// Kronecker symbol (a/n) for n ≠ 0. Agrees with the Legendre symbol when n
/// is an odd prime; (a/2) is 0 for even a and ±1 by a mod 8 otherwise;
/// (a/-1) is -1 exactly when a < 0.
pub fn kronecker(a: i64, n: i64) -> Result<i8> {
    if n == 0 {
        return Err(Error::domain("n must be nonzero"));
    }
    let mut a = a;
    let mut b = n;
    if a % 2 == 0 && b % 2 == 0 {
        return Ok(0);
    }
    let mut k: i8 = 1;
    let mut v = 0u32;
    while b % 2 == 0 {
        b /= 2;
        v += 1;
    }
    if v % 2 == 1 {
        k = TAB2[(a & 7) as usize];
    }
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    loop {
        // b odd and positive from here on
        if a == 0 {
            return Ok(if b > 1 { 0 } else { k });
        }
        let mut v = 0u32;
        while a % 2 == 0 {
            a /= 2;
            v += 1;
        }
        if v % 2 == 1 {
            k *= TAB2[(b & 7) as usize];
        }
        if a & b & 2 != 0 {
            // both ≡ 3 (mod 4): reciprocity flips the sign
            k = -k;
        }
        let r = a.abs();
        a = b % r;
        b = r;
    }
}

/// Largest e with p^e dividing a, for a ≠ 0 and p prime.
pub fn p_adic_valuation(a: i64, p: i64) -> Result<u32> {
    if a == 0 {
        return Err(Error::domain("valuation of zero is undefined"));
    }
    if p < 2 || !is_prime(p) {
        return Err(Error::domain("p must be prime"));
    }
    let p = p as u64;
    let mut m = a.unsigned_abs();
    let mut e = 0u32;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_pow_basics() {
        assert_eq!(mod_pow(2, 3, 7).unwrap(), 1);
        assert_eq!(mod_pow(5, 0, 7).unwrap(), 1);
        assert_eq!(mod_pow(3, 3, 7).unwrap(), 6);
        assert_eq!(mod_pow(-3, 2, 7).unwrap(), 2);
        assert_eq!(mod_pow(10, 18_446_744_073_709_551_615, 2).unwrap(), 0);
    }

    #[test]
    fn mod_pow_rejects_small_modulus() {
        assert!(mod_pow(2, 3, 1).is_err());
        assert!(mod_pow(2, 3, 0).is_err());
        assert!(mod_pow(2, 3, -7).is_err());
    }

    #[test]
    fn mod_pow_near_word_size() {
        // (m-1)^2 must not overflow the accumulator
        let m = i64::MAX;
        assert_eq!(mod_pow(m - 1, 2, m).unwrap(), 1);
    }

    #[test]
    fn primality_small_and_known() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(47));
        assert!(is_prime(-47));
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(!is_prime(-1));
        assert!(!is_prime(561)); // Carmichael
        assert!(!is_prime(2047)); // strong pseudoprime base 2
        assert!(is_prime(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime(i64::MAX)); // 2^63 - 1 = 7 * 73 * 127 * ...
    }

    #[test]
    fn primality_matches_trial_division_below_10000() {
        let naive = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..10_000u64 {
            assert_eq!(is_prime_u64(n), naive(n), "n = {n}");
        }
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(21).unwrap();
        assert_eq!(f.sign, 1);
        assert_eq!(f.factors, vec![(3, 1), (7, 1)]);

        let f = factorize(-4).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, vec![(2, 2)]);

        let f = factorize(1034).unwrap();
        assert_eq!(f.factors, vec![(2, 1), (11, 1), (47, 1)]);

        let f = factorize(1).unwrap();
        assert_eq!(f.factors, vec![]);
        assert_eq!(f.reassemble(), 1);

        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorize_needs_rho_for_large_semiprimes() {
        // both factors above the trial-division bound
        let n = 1_000_003i64 * 1_000_033;
        let f = factorize(n).unwrap();
        assert_eq!(f.factors, vec![(1_000_003, 1), (1_000_033, 1)]);
        assert_eq!(f.reassemble(), n);
    }

    #[test]
    fn factorize_extremes() {
        let f = factorize(i64::MIN).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, vec![(2, 63)]);
        assert_eq!(f.reassemble(), i64::MIN);

        let f = factorize(i64::MAX).unwrap();
        assert_eq!(f.reassemble(), i64::MAX);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(2, 7).unwrap(), 1);
        assert_eq!(legendre(14, 7).unwrap(), 0);
        assert_eq!(legendre(3, 7).unwrap(), -1);
        assert_eq!(legendre(-1, 7).unwrap(), -1);
        assert_eq!(legendre(-1, 5).unwrap(), 1);
    }

    #[test]
    fn legendre_rejects_bad_modulus() {
        assert!(legendre(3, 2).is_err());
        assert!(legendre(3, 9).is_err());
        assert!(legendre(3, -7).is_err());
        assert!(legendre(3, 1).is_err());
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-4, 3).unwrap(), -1);
        assert_eq!(kronecker(7, 1).unwrap(), 1);
        assert_eq!(kronecker(-7, 1).unwrap(), 1);
        assert_eq!(kronecker(0, 1).unwrap(), 1);
        assert_eq!(kronecker(12, 47).unwrap(), 1);
        assert!(kronecker(5, 0).is_err());
    }

    #[test]
    fn kronecker_two_and_minus_one() {
        // (a/2) by a mod 8
        for (a, want) in [(1, 1), (7, 1), (-1, 1), (3, -1), (5, -1), (-3, -1)] {
            assert_eq!(kronecker(a, 2).unwrap(), want, "a = {a}");
        }
        assert_eq!(kronecker(4, 2).unwrap(), 0);
        // (a/-1) by sign
        assert_eq!(kronecker(5, -1).unwrap(), 1);
        assert_eq!(kronecker(-5, -1).unwrap(), -1);
    }

    #[test]
    fn kronecker_multiplicative_in_denominator() {
        for a in -30..=30i64 {
            for n1 in [-9i64, -5, -2, -1, 1, 2, 3, 15, 21] {
                for n2 in [-7i64, -1, 1, 2, 5, 9] {
                    let lhs = kronecker(a, n1 * n2).unwrap();
                    let rhs = kronecker(a, n1).unwrap() * kronecker(a, n2).unwrap();
                    assert_eq!(lhs, rhs, "a={a} n1={n1} n2={n2}");
                }
            }
        }
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(p_adic_valuation(12, 2).unwrap(), 2);
        assert_eq!(p_adic_valuation(47, 11).unwrap(), 0);
        assert_eq!(p_adic_valuation(-56, 2).unwrap(), 3);
        assert!(p_adic_valuation(0, 2).is_err());
        assert!(p_adic_valuation(12, 4).is_err());
    }
}
