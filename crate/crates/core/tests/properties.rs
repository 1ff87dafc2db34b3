//! Cross-module invariants: algebraic identities of the symbols, oracle
//! consistency for prime decomposition, reassembly of factorizations, and
//! the residue-condition / extension-degree equivalence.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quatsplit::arith::{factorize, is_prime, kronecker, legendre, mod_pow};
use quatsplit::fppoly::{factor, is_irreducible, FpPolynomial};
use quatsplit::quadfield::{QuadraticField, SplittingType};
use quatsplit::quatalg::{
    corollary31_sufficient, hilbert_symbol, ramified_places, splits_over_quadratic,
    theorem31_sufficient, Place, QuaternionAlgebra,
};
use quatsplit::symbolalg::{
    find_alpha, is_l_power_residue, nonsplit_certificate, residue_conditions_hold,
    SymbolAlgebraSpec, Verdict,
};

const SMALL_ODD_PRIMES: [i64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

proptest! {
    #[test]
    fn mod_pow_matches_repeated_multiplication(
        base in -500i64..=500,
        exp in 0u64..=16,
        m in 2i64..=2000,
    ) {
        let mut acc = 1i64;
        for _ in 0..exp {
            acc = acc * base.rem_euclid(m) % m;
        }
        prop_assert_eq!(mod_pow(base, exp, m).unwrap(), acc);
    }

    #[test]
    fn legendre_is_completely_multiplicative(
        a in -1000i64..=1000,
        b in -1000i64..=1000,
        idx in 0usize..SMALL_ODD_PRIMES.len(),
    ) {
        let p = SMALL_ODD_PRIMES[idx];
        let lhs = legendre(a * b, p).unwrap();
        let rhs = legendre(a, p).unwrap() * legendre(b, p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_criterion_matches_legendre(
        a in -1000i64..=1000,
        idx in 0usize..SMALL_ODD_PRIMES.len(),
    ) {
        let p = SMALL_ODD_PRIMES[idx];
        prop_assume!(a.rem_euclid(p) != 0);
        let e = mod_pow(a, ((p - 1) / 2) as u64, p).unwrap();
        let mapped = if e == 1 { 1 } else { -1 };
        prop_assert_eq!(legendre(a, p).unwrap(), mapped);
    }

    #[test]
    fn factorize_reassembles(n in prop::num::i64::ANY) {
        prop_assume!(n != 0);
        let f = factorize(n).unwrap();
        prop_assert_eq!(f.reassemble(), n);
        for &(p, _) in &f.factors {
            prop_assert!(is_prime(p));
        }
        for w in f.factors.windows(2) {
            prop_assert!(w[0].0 < w[1].0);
        }
    }

    #[test]
    fn hilbert_symbol_is_symmetric(
        a in -2000i64..=2000,
        b in -2000i64..=2000,
        idx in 0usize..7,
    ) {
        prop_assume!(a != 0 && b != 0);
        let v = [
            Place::Infinite,
            Place::Finite(2),
            Place::Finite(3),
            Place::Finite(5),
            Place::Finite(7),
            Place::Finite(11),
            Place::Finite(13),
        ][idx];
        prop_assert_eq!(
            hilbert_symbol(a, b, v).unwrap(),
            hilbert_symbol(b, a, v).unwrap()
        );
    }

    #[test]
    fn hilbert_symbol_ignores_square_factors(
        a in -300i64..=300,
        b in -300i64..=300,
        t in 1i64..=50,
        idx in 0usize..5,
    ) {
        prop_assume!(a != 0 && b != 0);
        let v = [
            Place::Infinite,
            Place::Finite(2),
            Place::Finite(3),
            Place::Finite(5),
            Place::Finite(7),
        ][idx];
        prop_assert_eq!(
            hilbert_symbol(a * t * t, b, v).unwrap(),
            hilbert_symbol(a, b, v).unwrap()
        );
    }
}

#[test]
fn kronecker_agrees_with_legendre_on_odd_primes() {
    for p in (3..=200i64).filter(|&p| p % 2 == 1 && is_prime(p)) {
        for a in -200..=200i64 {
            assert_eq!(
                kronecker(a, p).unwrap(),
                legendre(a, p).unwrap(),
                "a = {a}, p = {p}"
            );
        }
    }
}

#[test]
fn splitting_types_partition_primes() {
    for d in -50..=50i64 {
        let Ok(field) = QuadraticField::new(d) else {
            continue;
        };
        for p in (2..=200i64).filter(|&p| is_prime(p)) {
            let ty = field.splitting_type(p).unwrap();
            let divides = field.discriminant() % p == 0;
            assert_eq!(ty == SplittingType::Ramified, divides, "d = {d}, p = {p}");
        }
    }
}

#[test]
fn odd_prime_splits_iff_d_is_square_mod_p() {
    for d in -50..=50i64 {
        let Ok(field) = QuadraticField::new(d) else {
            continue;
        };
        for p in (3..=200i64).filter(|&p| p % 2 == 1 && is_prime(p)) {
            if d % p == 0 {
                continue;
            }
            let solvable = (0..p).any(|x| (x * x - d).rem_euclid(p) == 0);
            let split = field.splitting_type(p).unwrap() == SplittingType::Split;
            assert_eq!(split, solvable, "d = {d}, p = {p}");
        }
    }
}

#[test]
fn ramified_sets_are_even_and_divide_2ab() {
    for a in -30..=30i64 {
        for b in -30..=30i64 {
            if a == 0 || b == 0 {
                continue;
            }
            let alg = QuaternionAlgebra::new(a, b).unwrap();
            let data = ramified_places(&alg).unwrap();
            assert_eq!(data.ramified.len() % 2, 0, "H({a},{b})");
            for v in &data.ramified {
                if let Place::Finite(p) = v {
                    assert_eq!((2 * a * b) % p, 0, "H({a},{b}) at {p}");
                }
            }
        }
    }
}

#[test]
fn product_of_local_symbols_is_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let a = loop {
            let x = rng.random_range(-10_000i64..=10_000);
            if x != 0 {
                break x;
            }
        };
        let b = loop {
            let x = rng.random_range(-10_000i64..=10_000);
            if x != 0 {
                break x;
            }
        };
        let alg = QuaternionAlgebra::new(a, b).unwrap();
        let data = ramified_places(&alg).unwrap();
        let mut product = 1i64;
        for &v in &data.candidates_checked {
            product *= hilbert_symbol(a, b, v).unwrap() as i64;
        }
        assert_eq!(product, 1, "H({a},{b})");
    }
}

#[test]
fn sufficiency_implies_splitting_small_grid() {
    let primes: Vec<i64> = (2..=30).filter(|&p| is_prime(p)).collect();
    for &d in &[-1i64, 2, -2, 3, -7] {
        let field = QuadraticField::new(d).unwrap();
        for &p in &primes {
            for &q in &primes {
                let s = theorem31_sufficient(p, q, d).unwrap();
                if s.holds {
                    let alg = QuaternionAlgebra::new(p, q).unwrap();
                    assert!(
                        splits_over_quadratic(&alg, &field).unwrap(),
                        "H({p},{q}) over d = {d}"
                    );
                }
            }
            for alpha in -30..=30i64 {
                if alpha == 0 {
                    continue;
                }
                let s = corollary31_sufficient(alpha, p, d).unwrap();
                if s.holds {
                    let alg = QuaternionAlgebra::new(alpha, p).unwrap();
                    assert!(
                        splits_over_quadratic(&alg, &field).unwrap(),
                        "H({alpha},{p}) over d = {d}"
                    );
                }
            }
        }
    }
}

#[test]
fn factor_output_reassembles_and_is_irreducible() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for &p in &[2i64, 3, 5, 7, 11] {
        for _ in 0..40 {
            let deg = rng.random_range(1..=8usize);
            let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.random_range(0..p)).collect();
            if coeffs[deg] == 0 {
                coeffs[deg] = 1;
            }
            let f = FpPolynomial::new(p, coeffs).unwrap();
            let fact = factor(&f).unwrap();
            assert_eq!(fact.reassemble(), f, "p = {p}, f = {f}");
            let mut degree_sum = 0usize;
            for (g, m) in &fact.factors {
                assert!(is_irreducible(g).unwrap(), "p = {p}, g = {g}");
                assert_eq!(g.leading_coeff(), 1);
                degree_sum += g.degree().unwrap() * *m as usize;
            }
            assert_eq!(degree_sum, f.degree().unwrap());
            for w in fact.factors.windows(2) {
                let k0 = (w[0].0.degree(), w[0].0.coeffs().to_vec());
                let k1 = (w[1].0.degree(), w[1].0.coeffs().to_vec());
                assert!(k0 < k1, "factors out of order for f = {f}");
            }
        }
    }
}

#[test]
fn residue_conditions_match_extension_degree() {
    for n in 3..=10i64 {
        for p in (3..=200i64).filter(|&p| is_prime(p) && p % n == 1) {
            for alpha in 2..p.min(40) {
                let holds = residue_conditions_hold(alpha, n, p).unwrap();
                let e = quatsplit::fppoly::extension_degree(alpha, n as u32, p).unwrap();
                if holds {
                    assert_eq!(e.minimum as i64, n, "n = {n}, p = {p}, alpha = {alpha}");
                } else {
                    assert!(
                        (e.minimum as i64) < n,
                        "n = {n}, p = {p}, alpha = {alpha}"
                    );
                }
            }
        }
    }
}

#[test]
fn found_alpha_is_minimal_and_below_p() {
    for n in 3..=12i64 {
        for p in (3..=300i64).filter(|&p| is_prime(p) && p % n == 1) {
            let alpha = find_alpha(n, p).unwrap();
            assert!(alpha >= 2 && alpha < p, "n = {n}, p = {p}");
            for smaller in 2..alpha {
                assert!(
                    !residue_conditions_hold(smaller, n, p).unwrap(),
                    "n = {n}, p = {p}: {smaller} already qualifies"
                );
            }
        }
    }
}

#[test]
fn certificates_are_deterministic_and_unramified() {
    for n in 3..=10i64 {
        for p in (3..=200i64).filter(|&p| is_prime(p) && p % n == 1) {
            let alpha = find_alpha(n, p).unwrap();
            let spec = SymbolAlgebraSpec::new(n, p, alpha).unwrap();
            let c1 = nonsplit_certificate(&spec).unwrap();
            let c2 = nonsplit_certificate(&spec).unwrap();
            assert_eq!(c1.to_json(), c2.to_json());
            assert_eq!(c1.verdict, Verdict::NonSplit);
            assert!(c1.unramified);
            let divisors: Vec<i64> = factorize(n).unwrap().primes().collect();
            assert_eq!(
                c1.residue_checks.iter().map(|rc| rc.l).collect::<Vec<_>>(),
                divisors
            );
        }
    }
}

#[test]
fn composite_power_residues_descend_to_prime_divisors() {
    // an l-th power residue for composite l | n is an l'-th power residue
    // for every prime l' | l
    for p in [7i64, 13, 31, 61] {
        for alpha in 2..p {
            for l in 2..p {
                if (p - 1) % l != 0 || !is_prime(l) {
                    continue;
                }
                for k in 2..=3i64 {
                    let lk = l * k;
                    if (p - 1) % lk != 0 {
                        continue;
                    }
                    if is_l_power_residue(alpha, lk, p).unwrap() {
                        assert!(
                            is_l_power_residue(alpha, l, p).unwrap(),
                            "p = {p}, alpha = {alpha}, l = {l}, lk = {lk}"
                        );
                    }
                }
            }
        }
    }
}
