//! Dense polynomials over prime fields F_p: arithmetic, Rabin's
//! irreducibility test, and complete factorization via squarefree,
//! distinct-degree, and equal-degree stages. Equal-degree splitting walks a
//! fixed sequence of trial elements instead of sampling, so factor lists are
//! reproducible run to run.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, mod_pow};
use crate::error::{Error, Result};

/// A polynomial over F_p. Coefficients are least nonnegative residues,
/// stored lowest degree first with trailing zeros removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpPolynomial {
    p: i64,
    coeffs: Vec<i64>,
}

fn mul_mod(a: i64, b: i64, p: i64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(p as i128)) as i64
}

impl FpPolynomial {
    /// Build a polynomial from coefficients (lowest degree first); the
    /// coefficients are reduced mod p and trailing zeros trimmed.
    pub fn new(p: i64, coeffs: Vec<i64>) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::domain("modulus must be prime"));
        }
        let mut c: Vec<i64> = coeffs.into_iter().map(|x| x.rem_euclid(p)).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Ok(FpPolynomial { p, coeffs: c })
    }

    fn from_reduced(p: i64, mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPolynomial { p, coeffs }
    }

    pub fn zero(p: i64) -> Self {
        FpPolynomial { p, coeffs: vec![] }
    }

    pub fn constant(p: i64, c: i64) -> Self {
        Self::from_reduced(p, vec![c.rem_euclid(p)])
    }

    /// The monomial x.
    pub fn x(p: i64) -> Self {
        FpPolynomial {
            p,
            coeffs: vec![0, 1],
        }
    }

    pub fn modulus(&self) -> i64 {
        self.p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> i64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Evaluate at a point by Horner's rule.
    pub fn eval(&self, x: i64) -> i64 {
        let x = x.rem_euclid(self.p);
        let mut acc = 0i64;
        for &c in self.coeffs.iter().rev() {
            acc = (mul_mod(acc, x, self.p) + c) % self.p;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed moduli");
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.p)
            .collect();
        Self::from_reduced(self.p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed moduli");
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) - other.coeff(i)).rem_euclid(self.p))
            .collect();
        Self::from_reduced(self.p, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed moduli");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Self::from_reduced(self.p, coeffs)
    }

    pub fn mul_scalar(&self, s: i64) -> Self {
        let s = s.rem_euclid(self.p);
        let coeffs = self.coeffs.iter().map(|&c| mul_mod(c, s, self.p)).collect();
        Self::from_reduced(self.p, coeffs)
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        assert_eq!(self.p, divisor.p, "mixed moduli");
        let d = divisor
            .degree()
            .ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        let p = self.p;
        let mut rem = self.coeffs.clone();
        if rem.len() < d + 1 {
            return Ok((Self::zero(p), self.clone()));
        }
        let lc_inv = mod_pow(divisor.leading_coeff(), (p - 2) as u64, p)?;
        let mut quo = vec![0i64; rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = mul_mod(rem[i], lc_inv, p);
            if c == 0 {
                continue;
            }
            quo[i - d] = c;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i - d + j] = (rem[i - d + j] - mul_mod(c, dc, p)).rem_euclid(p);
            }
        }
        rem.truncate(d);
        Ok((Self::from_reduced(p, quo), Self::from_reduced(p, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divmod(divisor).expect("nonzero divisor").1
    }

    fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.divmod(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "division was not exact");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed moduli");
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scale to leading coefficient 1; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() || self.leading_coeff() == 1 {
            return self.clone();
        }
        let inv = mod_pow(self.leading_coeff(), (self.p - 2) as u64, self.p)
            .expect("modulus is prime");
        self.mul_scalar(inv)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(i as i64 % self.p, c, self.p))
            .collect();
        Self::from_reduced(self.p, coeffs)
    }

    fn mul_rem(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    /// self^exp mod `modulus`, by repeated squaring.
    pub fn pow_mod(&self, exp: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = FpPolynomial::constant(self.p, 1).rem(modulus);
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_rem(&base, modulus);
            }
            base = base.mul_rem(&base.clone(), modulus);
            e >>= 1;
        }
        acc
    }

    /// Render with the paper-style balanced coefficients, e.g. "x^3 - 3"
    /// instead of the canonical "x^3 + 4".
    pub fn to_signed_string(&self) -> String {
        self.render(true)
    }

    fn render(&self, signed: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let c = if signed && 2 * c > self.p { c - self.p } else { c };
            let mag = c.abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else if c < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = mag != 1 || k == 0;
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if k > 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push('x');
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for FpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// The polynomial x^n - a over F_p.
pub fn poly_binomial(n: u32, a: i64, p: i64) -> Result<FpPolynomial> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    if n > 10_000_000 {
        return Err(Error::capacity("degree exceeds the 10^7 budget"));
    }
    if p < 2 || !is_prime(p) {
        return Err(Error::domain("modulus must be prime"));
    }
    let mut coeffs = vec![0i64; n as usize + 1];
    coeffs[0] = (-a).rem_euclid(p);
    coeffs[n as usize] = 1;
    Ok(FpPolynomial::from_reduced(p, coeffs))
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test: f is irreducible over F_p iff
/// x^(p^d) ≡ x (mod f) and gcd(x^(p^(d/l)) - x, f) is constant for every
/// prime l dividing d = deg f.
pub fn is_irreducible(f: &FpPolynomial) -> Result<bool> {
    let d = match f.degree() {
        None | Some(0) => return Err(Error::domain("degree must be at least 1")),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let p = f.modulus();
    let x = FpPolynomial::x(p);

    // frobenius[k] = x^(p^k) mod f
    let mut frobenius = Vec::with_capacity(d + 1);
    frobenius.push(x.clone());
    for k in 0..d {
        frobenius.push(frobenius[k].pow_mod(p as u64, &f));
    }
    if frobenius[d] != x {
        return Ok(false);
    }
    for l in prime_divisors(d) {
        let g = frobenius[d / l].sub(&x).gcd(&f);
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pairwise-coprime squarefree parts with multiplicities (input monic,
/// degree ≥ 1); handles the vanishing-derivative case by p-th roots.
fn squarefree_parts(f: &FpPolynomial) -> Vec<(FpPolynomial, u32)> {
    let p = f.modulus();
    let mut out = Vec::new();
    let df = f.derivative();
    if df.is_zero() {
        // f = u(x^p); in F_p the coefficients are their own p-th roots
        let root = pth_root(f);
        for (g, m) in squarefree_parts(&root) {
            out.push((g, m * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while w.degree() != Some(0) {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.degree() != Some(0) {
            out.push((z, i));
        }
        c = c.div_exact(&y);
        w = y;
        i += 1;
    }
    if c.degree() != Some(0) {
        let root = pth_root(&c);
        for (g, m) in squarefree_parts(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

fn pth_root(f: &FpPolynomial) -> FpPolynomial {
    // only reachable when deg f ≥ p, so p fits in usize
    let step = f.modulus() as usize;
    let coeffs = f.coeffs().iter().step_by(step).copied().collect();
    FpPolynomial::from_reduced(f.modulus(), coeffs)
}

/// Distinct-degree stage: split a monic squarefree polynomial into
/// (product of all irreducible factors of degree d, d) pairs.
fn distinct_degree_parts(f: &FpPolynomial) -> Vec<(FpPolynomial, usize)> {
    let p = f.modulus();
    let x = FpPolynomial::x(p);
    let mut f = f.clone();
    let mut h = x.rem(&f);
    let mut out = Vec::new();
    let mut d = 0usize;
    while f.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(p as u64, &f);
        let g = h.sub(&x).gcd(&f);
        if g.degree() != Some(0) {
            out.push((g.clone(), d));
            f = f.div_exact(&g);
            h = h.rem(&f);
        }
    }
    if f.degree().unwrap_or(0) > 0 {
        let d = f.degree().unwrap();
        out.push((f, d));
    }
    out
}

/// Fixed enumeration of monic trial elements: degree 1 upward, non-leading
/// coefficients counting in base p from the low end.
struct TrialElements {
    p: i64,
    lower: Vec<i64>,
}

impl Iterator for TrialElements {
    type Item = FpPolynomial;

    fn next(&mut self) -> Option<FpPolynomial> {
        let mut coeffs = self.lower.clone();
        coeffs.push(1);
        let item = FpPolynomial {
            p: self.p,
            coeffs,
        };
        let mut i = 0;
        loop {
            if i == self.lower.len() {
                self.lower = vec![0; self.lower.len() + 1];
                break;
            }
            self.lower[i] += 1;
            if self.lower[i] < self.p {
                break;
            }
            self.lower[i] = 0;
            i += 1;
        }
        Some(item)
    }
}

fn trial_elements(p: i64) -> TrialElements {
    TrialElements { p, lower: vec![0] }
}

/// t^((p^d - 1)/2) mod h, computed as the norm t^(1 + p + ... + p^(d-1))
/// followed by a (p-1)/2 power, so no exponent ever exceeds 64 bits.
fn half_norm(t: &FpPolynomial, h: &FpPolynomial, d: usize) -> FpPolynomial {
    let p = h.modulus();
    let mut frob = t.rem(h);
    let mut norm = frob.clone();
    for _ in 1..d {
        frob = frob.pow_mod(p as u64, h);
        norm = norm.mul_rem(&frob, h);
    }
    norm.pow_mod(((p - 1) / 2) as u64, h)
}

/// Trace map t + t^2 + t^4 + ... + t^(2^(d-1)) mod h, the F_2 splitting
/// functional.
fn trace_map(t: &FpPolynomial, h: &FpPolynomial, d: usize) -> FpPolynomial {
    let mut term = t.rem(h);
    let mut sum = term.clone();
    for _ in 1..d {
        term = term.mul_rem(&term.clone(), h);
        sum = sum.add(&term);
    }
    sum
}

fn is_proper_divisor(g: &FpPolynomial, h: &FpPolynomial) -> bool {
    match (g.degree(), h.degree()) {
        (Some(dg), Some(dh)) => dg > 0 && dg < dh,
        _ => false,
    }
}

/// Equal-degree stage: h is monic squarefree with all irreducible factors of
/// degree d; push them all.
fn equal_degree_factor(h: &FpPolynomial, d: usize, out: &mut Vec<FpPolynomial>) {
    if h.degree() == Some(d) {
        out.push(h.monic());
        return;
    }
    let p = h.modulus();
    let one = FpPolynomial::constant(p, 1);
    for t in trial_elements(p) {
        // a trial element sharing a factor with h splits it directly
        let shared = t.gcd(h);
        if is_proper_divisor(&shared, h) {
            equal_degree_factor(&shared, d, out);
            equal_degree_factor(&h.div_exact(&shared), d, out);
            return;
        }
        let g = if p == 2 {
            trace_map(&t, h, d).gcd(h)
        } else {
            half_norm(&t, h, d).sub(&one).gcd(h)
        };
        if is_proper_divisor(&g, h) {
            equal_degree_factor(&g, d, out);
            equal_degree_factor(&h.div_exact(&g), d, out);
            return;
        }
    }
    unreachable!("a separating trial element exists for every composite h");
}

/// A complete factorization: unit · Π factor^multiplicity, with monic
/// irreducible factors sorted by (degree, coefficient list).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyFactorization {
    pub unit: i64,
    pub factors: Vec<(FpPolynomial, u32)>,
}

impl PolyFactorization {
    /// Multiply the unit and factor powers back together.
    pub fn reassemble(&self) -> FpPolynomial {
        let p = self
            .factors
            .first()
            .expect("factorization of a nonconstant polynomial")
            .0
            .modulus();
        let mut acc = FpPolynomial::constant(p, self.unit);
        for (g, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }
}

/// Factor f (degree ≥ 1) into monic irreducibles with multiplicities.
pub fn factor(f: &FpPolynomial) -> Result<PolyFactorization> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::domain("degree must be at least 1"));
    }
    let unit = f.leading_coeff();
    let monic = f.monic();
    let mut factors: Vec<(FpPolynomial, u32)> = Vec::new();
    for (part, mult) in squarefree_parts(&monic) {
        for (product, d) in distinct_degree_parts(&part) {
            let mut irreducibles = Vec::new();
            equal_degree_factor(&product, d, &mut irreducibles);
            for g in irreducibles {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|(g1, _), (g2, _)| {
        (g1.degree(), g1.coeffs()).cmp(&(g2.degree(), g2.coeffs()))
    });
    Ok(PolyFactorization { unit, factors })
}

/// Factor degrees of x^n - a over F_p: the degree of F_p(β)/F_p for a root β
/// of the factor of least degree, together with the full degree multiset so
/// callers can see every possible root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDegrees {
    /// Degrees of all irreducible factors, with multiplicity, ascending.
    pub degrees: Vec<u32>,
    /// The least factor degree.
    pub minimum: u32,
}

pub fn extension_degree(a: i64, n: u32, p: i64) -> Result<ExtensionDegrees> {
    if p < 2 || !is_prime(p) {
        return Err(Error::domain("modulus must be prime"));
    }
    if a.rem_euclid(p) == 0 {
        return Err(Error::domain("a must not be divisible by p"));
    }
    let f = poly_binomial(n, a, p)?;
    let factorization = factor(&f)?;
    let mut degrees = Vec::new();
    for (g, m) in &factorization.factors {
        let d = g.degree().expect("factors are nonconstant") as u32;
        for _ in 0..*m {
            degrees.push(d);
        }
    }
    degrees.sort_unstable();
    let minimum = degrees[0];
    Ok(ExtensionDegrees { degrees, minimum })
}
