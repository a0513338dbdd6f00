//! Elementary modular number theory: primality, multiplicative orders,
//! the Wieferich-type condition `2^(p-1) ≡ 1 (mod p^2)`, and the bundle
//! of hypotheses a prime must satisfy before the nonexistence machinery
//! applies to the types `[t_p, 2p^e]`.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from order and condition computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
}

/// Modular multiplication with a 128-bit intermediate.
fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Modular exponentiation by repeated squaring.
pub fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus > 0, "modulus must be positive");
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, modulus);
        }
        base = mod_mul(base, base, modulus);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10^24
/// (covers the full u64 range).
const MILLER_RABIN_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for u64 inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let trailing = (n - 1).trailing_zeros();
    let odd_part = (n - 1) >> trailing;
    'witness: for &a in &MILLER_RABIN_BASES {
        let mut x = mod_pow(a, odd_part, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..trailing {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A positive integer with its primality established once at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeCandidate {
    value: u64,
    prime: bool,
}

impl PrimeCandidate {
    pub fn new(value: u64) -> Self {
        PrimeCandidate {
            value,
            prime: is_prime(value),
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Cached primality verdict.
    pub fn is_prime(&self) -> bool {
        self.prime
    }
}

/// All primes up to and including `limit`, by sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Pollard's rho with Brent's cycle detection. `n` must be odd, composite,
/// and free of factors below the trial division bound.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let step = |v: u64| ((mod_mul(v, v, n) as u128 + c as u128) % n as u128) as u64;
        while d == 1 {
            x = step(x);
            y = step(step(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Prime factorization of `n` as (prime, exponent) pairs in ascending order.
///
/// Trial division up to 10^6, then Pollard rho for any remaining cofactor,
/// so small inputs are fast and larger u64 inputs still terminate.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, factors: &mut Vec<(u64, u32)>| match factors.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += 1,
        None => factors.push((p, 1)),
    };
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND && d.saturating_mul(d) <= n {
        while n % d == 0 {
            push(d, &mut factors);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // Remaining cofactor is 1, prime, or a product of primes > 10^6.
    let mut stack = Vec::new();
    if n > 1 {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_prime(m) {
            push(m, &mut factors);
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    factors.sort_unstable();
    factors
}

/// The least k >= 1 with 2^k ≡ 1 (mod p), for an odd prime p.
///
/// Computed by factoring p - 1 and descending through its prime factors,
/// then re-verified by direct powering.
pub fn ord2_mod(p: u64) -> Result<u64, ModularError> {
    if p < 3 || !is_prime(p) {
        return Err(ModularError::NotOddPrime(p));
    }
    let mut ord = p - 1;
    for (ell, _) in factorize(p - 1) {
        while ord % ell == 0 && mod_pow(2, ord / ell, p) == 1 {
            ord /= ell;
        }
    }
    assert_eq!(mod_pow(2, ord, p), 1, "order verification failed for p={p}");
    Ok(ord)
}

/// True iff the order of 2 modulo p is (p-1)/2.
pub fn half_order_condition(p: u64) -> Result<bool, ModularError> {
    Ok(ord2_mod(p)? == (p - 1) / 2)
}

/// True iff 2^(p-1) is NOT ≡ 1 (mod p^2), i.e. p is not a Wieferich prime.
pub fn wieferich_ok(p: u64) -> Result<bool, ModularError> {
    if p < 3 || !is_prime(p) {
        return Err(ModularError::NotOddPrime(p));
    }
    let p = BigUint::from(p);
    let p_squared = &p * &p;
    let residue = BigUint::from(2u32).modpow(&(&p - 1u32), &p_squared);
    Ok(!residue.is_one())
}

/// Largest exponent range `e` for which the nonexistence of types
/// `[t_p, 2p^e]` is certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MaxExponent {
    /// All e >= 1: residue, half-order, and Wieferich conditions all hold.
    #[serde(rename = "all e >= 1")]
    AllExponents,
    /// Only e = 1: residue and half-order hold but p is a Wieferich prime.
    #[serde(rename = "e = 1 only")]
    ExponentOneOnly,
    /// The hypotheses fail; nothing is certified.
    #[serde(rename = "none")]
    NotApplicable,
}

impl std::fmt::Display for MaxExponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MaxExponent::AllExponents => write!(f, "all e >= 1"),
            MaxExponent::ExponentOneOnly => write!(f, "e = 1 only"),
            MaxExponent::NotApplicable => write!(f, "none"),
        }
    }
}

/// The full hypothesis bundle for a candidate prime.
///
/// Never fails on composite or wrong-residue input; the report carries the
/// negative verdict instead so scans can feed it arbitrary integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApplicabilityReport {
    pub p: u64,
    pub prime: bool,
    /// p ≡ 7 (mod 8).
    pub residue_ok: bool,
    /// ord_p(2) = (p-1)/2.
    pub half_order_ok: bool,
    /// 2^(p-1) not ≡ 1 (mod p^2).
    pub wieferich_ok: bool,
    /// Order of 2 mod p, when p is an odd prime.
    pub ord2: Option<u64>,
    pub max_e: MaxExponent,
}

impl ApplicabilityReport {
    /// True when at least q = 2p is covered (half-order and residue hold).
    pub fn applicable(&self) -> bool {
        !matches!(self.max_e, MaxExponent::NotApplicable)
    }

    /// Human-readable list of the failed required hypotheses.
    pub fn failed_hypotheses(&self) -> Vec<String> {
        let mut failed = Vec::new();
        if !self.prime {
            failed.push(format!("{} is not prime", self.p));
        } else {
            if !self.residue_ok {
                failed.push(format!("{} !== 7 (mod 8)", self.p));
            }
            if !self.half_order_ok {
                match self.ord2 {
                    Some(ord) => failed.push(format!(
                        "ord_{}(2) = {} != (p-1)/2 = {}",
                        self.p,
                        ord,
                        (self.p - 1) / 2
                    )),
                    None => failed.push(format!("2 has no multiplicative order mod {}", self.p)),
                }
            }
        }
        failed
    }
}

/// Assemble the hypothesis bundle for an arbitrary integer.
pub fn applicability(p: u64) -> ApplicabilityReport {
    let candidate = PrimeCandidate::new(p);
    let prime = candidate.is_prime();
    let odd_prime = prime && p % 2 == 1;
    let residue_ok = prime && p % 8 == 7;
    let (ord2, half_order_ok, wieferich) = if odd_prime {
        let ord = ord2_mod(p).expect("odd prime");
        let wief = wieferich_ok(p).expect("odd prime");
        (Some(ord), ord == (p - 1) / 2, wief)
    } else {
        (None, false, false)
    };
    let max_e = if residue_ok && half_order_ok && wieferich {
        MaxExponent::AllExponents
    } else if residue_ok && half_order_ok {
        MaxExponent::ExponentOneOnly
    } else {
        MaxExponent::NotApplicable
    };
    ApplicabilityReport {
        p,
        prime,
        residue_ok,
        half_order_ok,
        wieferich_ok: wieferich,
        ord2,
        max_e,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial-division oracle, independent of the Miller-Rabin path.
    fn is_prime_trial(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    /// Repeated-squaring oracle for the order of 2: step through k = 1, 2, ...
    fn ord2_oracle(p: u64) -> u64 {
        let mut acc = 2 % p;
        let mut k = 1;
        while acc != 1 {
            acc = acc * 2 % p;
            k += 1;
        }
        k
    }

    #[test]
    fn is_prime_examples() {
        assert!(is_prime(7));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime(2));
        assert!(is_prime(3511), "3511 is prime by trial division oracle");
        assert!(is_prime_trial(3511));
        assert!(!is_prime(3511 * 3));
    }

    #[test]
    fn is_prime_agrees_with_trial_division() {
        for n in 0..10_000u64 {
            assert_eq!(is_prime(n), is_prime_trial(n), "mismatch at n={n}");
        }
        // Sampled coverage of the rest of the spec'd 10^6 window.
        let mut x = 10_007u64;
        for _ in 0..2_000 {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let n = 10_000 + x % (1_000_000 - 10_000);
            assert_eq!(is_prime(n), is_prime_trial(n), "mismatch at n={n}");
        }
    }

    #[test]
    fn prime_candidate_caches_verdict() {
        let c = PrimeCandidate::new(199);
        assert!(c.is_prime());
        assert_eq!(c.value(), 199);
        assert!(!PrimeCandidate::new(200).is_prime());
    }

    #[test]
    fn primes_up_to_matches_sieve_expectations() {
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        assert_eq!(primes_up_to(13), vec![2, 3, 5, 7, 11, 13]);
        assert_eq!(primes_up_to(100_000).len(), 9592);
    }

    #[test]
    fn factorize_small_and_rho_path() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(3510), vec![(2, 1), (3, 3), (5, 1), (13, 1)]);
        // Forces the Pollard rho path: both factors exceed the trial bound.
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        assert_eq!(factorize(p * q), vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn ord2_examples() {
        assert_eq!(ord2_mod(7), Ok(3)); // 2^3 = 8 = 7 + 1
        assert_eq!(ord2_mod(23), Ok(ord2_oracle(23)));
        assert_eq!(ord2_mod(23), Ok(11));
        assert_eq!(ord2_mod(31), Ok(ord2_oracle(31)));
        assert_eq!(ord2_mod(31), Ok(5));
    }

    #[test]
    fn ord2_rejects_non_odd_primes() {
        assert_eq!(ord2_mod(2), Err(ModularError::NotOddPrime(2)));
        assert_eq!(ord2_mod(9), Err(ModularError::NotOddPrime(9)));
        assert_eq!(ord2_mod(0), Err(ModularError::NotOddPrime(0)));
    }

    #[test]
    fn ord2_is_minimal_with_correct_power() {
        for p in primes_up_to(500).into_iter().filter(|&p| p > 2) {
            let k = ord2_mod(p).unwrap();
            assert_eq!(mod_pow(2, k, p), 1, "2^k != 1 mod {p}");
            for (ell, _) in factorize(k) {
                assert_ne!(mod_pow(2, k / ell, p), 1, "order of 2 mod {p} not minimal at k={k}");
            }
        }
    }

    #[test]
    fn order_divides_half_group_for_7_mod_8() {
        // 2 is a quadratic residue mod p when p ≡ ±1 (mod 8).
        for p in primes_up_to(2000).into_iter().filter(|&p| p % 8 == 7) {
            let k = ord2_mod(p).unwrap();
            assert_eq!((p - 1) / 2 % k, 0, "ord2({p}) = {k} does not divide (p-1)/2");
        }
    }

    #[test]
    fn half_order_examples() {
        assert_eq!(half_order_condition(23), Ok(true));
        assert_eq!(half_order_condition(31), Ok(false));
        assert_eq!(half_order_condition(7), Ok(true));
    }

    #[test]
    fn wieferich_examples() {
        // Oracle for 7: 2^6 mod 49 = 64 - 49 = 15.
        assert_eq!(64 % 49, 15);
        assert_eq!(wieferich_ok(7), Ok(true));
        assert_eq!(wieferich_ok(3511), Ok(false));
        assert_eq!(wieferich_ok(1093), Ok(false)); // classical Wieferich prime, 1093 ≡ 5 (mod 8)
        assert_eq!(wieferich_ok(4), Err(ModularError::NotOddPrime(4)));
    }

    #[test]
    fn applicability_p23_all_exponents() {
        let r = applicability(23);
        assert!(r.prime && r.residue_ok && r.half_order_ok && r.wieferich_ok);
        assert_eq!(r.ord2, Some(11));
        assert_eq!(r.max_e, MaxExponent::AllExponents);
        assert!(r.applicable());
        assert!(r.failed_hypotheses().is_empty());
    }

    #[test]
    fn applicability_p31_half_order_fails() {
        let r = applicability(31);
        assert!(r.prime && r.residue_ok);
        assert!(!r.half_order_ok);
        assert_eq!(r.max_e, MaxExponent::NotApplicable);
        assert_eq!(r.failed_hypotheses().len(), 1);
    }

    #[test]
    fn applicability_p17_residue_fails() {
        let r = applicability(17);
        assert!(r.prime);
        assert!(!r.residue_ok);
        assert_eq!(r.max_e, MaxExponent::NotApplicable);
    }

    #[test]
    fn applicability_handles_composites_and_small_inputs() {
        for p in [0u64, 1, 2, 15, 49] {
            let r = applicability(p);
            assert_eq!(r.max_e, MaxExponent::NotApplicable, "p={p}");
            assert!(!r.failed_hypotheses().is_empty() || p == 2, "p={p}");
        }
        // p = 2: prime but not ≡ 7 (mod 8).
        assert!(!applicability(2).residue_ok);
    }

    #[test]
    fn nine_primes_below_200_pass_everything() {
        let expected = [7u64, 23, 47, 71, 79, 103, 167, 191, 199];
        let full: Vec<u64> = (0..200)
            .filter(|&p| applicability(p).max_e == MaxExponent::AllExponents)
            .collect();
        assert_eq!(full, expected);
    }

    #[test]
    fn max_exponent_serde_strings() {
        assert_eq!(
            serde_json::to_string(&MaxExponent::AllExponents).unwrap(),
            "\"all e >= 1\""
        );
        assert_eq!(
            serde_json::to_string(&MaxExponent::ExponentOneOnly).unwrap(),
            "\"e = 1 only\""
        );
        let back: MaxExponent = serde_json::from_str("\"none\"").unwrap();
        assert_eq!(back, MaxExponent::NotApplicable);
    }
}
