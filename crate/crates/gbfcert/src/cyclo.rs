//! Exact arithmetic in the ring of cyclotomic integers Z[zeta_q].
//!
//! Elements are stored as integer coefficient vectors on the full power
//! basis `1, zeta, ..., zeta^(q-1)`, reducing exponents mod q only
//! (`zeta^q = 1`). The representation is deliberately non-canonical:
//! Fourier sums become coefficient scatter-adds with no reduction cost,
//! and equality is decided semantically by exact division against the
//! q-th cyclotomic polynomial. No floating point is involved anywhere in
//! a decision; [`CycloElt::float_approx`] exists only as a cross-check
//! channel.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, LazyLock, Mutex};

/// An element of Z[zeta_q] on the power basis; `coeffs[i]` multiplies
/// `zeta_q^i`. Two elements are equal iff their difference reduces to
/// zero modulo the q-th cyclotomic polynomial.
#[derive(Debug, Clone)]
pub struct CycloElt {
    modulus: u64,
    coeffs: Vec<BigInt>,
}

impl CycloElt {
    /// The zero element of Z[zeta_q].
    pub fn zero(q: u64) -> Self {
        assert!(q >= 2, "cyclotomic modulus must be >= 2");
        CycloElt {
            modulus: q,
            coeffs: vec![BigInt::zero(); q as usize],
        }
    }

    /// The rational integer `n` as an element of Z[zeta_q].
    pub fn from_integer(q: u64, n: impl Into<BigInt>) -> Self {
        let mut elt = CycloElt::zero(q);
        elt.coeffs[0] = n.into();
        elt
    }

    /// Build from a coefficient vector, folding exponents mod q.
    pub fn from_coeffs(q: u64, coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        let mut elt = CycloElt::zero(q);
        for (i, c) in coeffs.into_iter().enumerate() {
            elt.coeffs[i % q as usize] += c;
        }
        elt
    }

    /// The root of unity power zeta_q^i, for any (possibly negative) i.
    pub fn root_power(q: u64, i: i64) -> Self {
        let mut elt = CycloElt::zero(q);
        let idx = i.rem_euclid(q as i64) as usize;
        elt.coeffs[idx] = BigInt::one();
        elt
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// In-place `self += sign * zeta_q^exponent`; the spectrum hot path.
    pub(crate) fn accumulate_root_power(&mut self, exponent: u64, sign: i64) {
        let idx = (exponent % self.modulus) as usize;
        self.coeffs[idx] += sign;
    }

    /// Complex conjugation: zeta |-> zeta^(-1), so the coefficient at
    /// exponent i moves to exponent -i mod q.
    pub fn conj(&self) -> Self {
        let q = self.modulus as usize;
        let mut out = CycloElt::zero(self.modulus);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(q - i) % q] = c.clone();
        }
        out
    }

    /// `self * conj(self)`; for spectrum entries this is the squared
    /// modulus as an exact cyclotomic integer.
    pub fn abs_square(&self) -> Self {
        self * &self.conj()
    }

    /// Canonical zero test: true iff the coefficient polynomial is
    /// divisible by the cyclotomic polynomial of the modulus.
    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(Zero::is_zero) {
            return true;
        }
        let phi = cyclotomic_poly(self.modulus);
        poly_rem_monic(&self.coeffs, phi.coeffs())
            .iter()
            .all(Zero::is_zero)
    }

    /// True iff `self` equals the rational integer `n` in Z[zeta_q].
    pub fn equals_integer(&self, n: impl Into<BigInt>) -> bool {
        let mut diff = self.clone();
        diff.coeffs[0] -= n.into();
        diff.is_zero()
    }

    /// The canonical representative: coefficients reduced modulo the
    /// cyclotomic polynomial (degree below phi(q)), padded back to the
    /// power-basis length.
    pub fn canonical(&self) -> Self {
        let phi = cyclotomic_poly(self.modulus);
        let mut rem = poly_rem_monic(&self.coeffs, phi.coeffs());
        rem.resize(self.modulus as usize, BigInt::zero());
        CycloElt {
            modulus: self.modulus,
            coeffs: rem,
        }
    }

    /// Double-precision evaluation at zeta_q = exp(2*pi*i/q).
    ///
    /// Diagnostic channel only; decisions are never taken from it.
    pub fn float_approx(&self) -> Complex64 {
        let q = self.modulus as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * i as f64 / q;
            acc += Complex64::from_polar(1.0, angle) * c.to_f64().unwrap_or(f64::INFINITY);
        }
        acc
    }
}

/// Canonical (semantic) equality.
impl PartialEq for CycloElt {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && (self - other).is_zero()
    }
}

impl Eq for CycloElt {}

fn check_moduli(a: &CycloElt, b: &CycloElt) {
    assert_eq!(
        a.modulus, b.modulus,
        "cyclotomic modulus mismatch: {} vs {}",
        a.modulus, b.modulus
    );
}

impl Add for &CycloElt {
    type Output = CycloElt;
    fn add(self, rhs: &CycloElt) -> CycloElt {
        check_moduli(self, rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycloElt {
            modulus: self.modulus,
            coeffs,
        }
    }
}

impl Sub for &CycloElt {
    type Output = CycloElt;
    fn sub(self, rhs: &CycloElt) -> CycloElt {
        check_moduli(self, rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycloElt {
            modulus: self.modulus,
            coeffs,
        }
    }
}

impl Mul for &CycloElt {
    type Output = CycloElt;
    fn mul(self, rhs: &CycloElt) -> CycloElt {
        check_moduli(self, rhs);
        let q = self.modulus as usize;
        let mut coeffs = vec![BigInt::zero(); q];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[(i + j) % q] += a * b;
            }
        }
        CycloElt {
            modulus: self.modulus,
            coeffs,
        }
    }
}

impl Neg for &CycloElt {
    type Output = CycloElt;
    fn neg(self) -> CycloElt {
        CycloElt {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for CycloElt {
    type Output = CycloElt;
    fn add(self, rhs: CycloElt) -> CycloElt {
        &self + &rhs
    }
}

impl Sub for CycloElt {
    type Output = CycloElt;
    fn sub(self, rhs: CycloElt) -> CycloElt {
        &self - &rhs
    }
}

impl Mul for CycloElt {
    type Output = CycloElt;
    fn mul(self, rhs: CycloElt) -> CycloElt {
        &self * &rhs
    }
}

impl Neg for CycloElt {
    type Output = CycloElt;
    fn neg(self) -> CycloElt {
        -&self
    }
}

impl std::fmt::Display for CycloElt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The q-th cyclotomic polynomial, monic of degree phi(q), with
/// `coeffs[i]` the coefficient of x^i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloPoly {
    modulus: u64,
    coeffs: Vec<BigInt>,
}

impl CycloPoly {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }
}

static PHI_CACHE: LazyLock<Mutex<HashMap<u64, Arc<CycloPoly>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// All divisors of n in ascending order.
fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// The q-th cyclotomic polynomial Phi_q, computed by exact recursive
/// division `Phi_q = (x^q - 1) / prod_{d | q, d < q} Phi_d` and cached
/// per modulus behind a lock.
pub fn cyclotomic_poly(q: u64) -> Arc<CycloPoly> {
    assert!(q >= 1, "cyclotomic index must be >= 1");
    let mut cache = PHI_CACHE.lock().expect("phi cache poisoned");
    if let Some(hit) = cache.get(&q) {
        return hit.clone();
    }
    for d in divisors(q) {
        if cache.contains_key(&d) {
            continue;
        }
        // x^d - 1
        let mut numerator = vec![BigInt::zero(); d as usize + 1];
        numerator[0] = -BigInt::one();
        numerator[d as usize] = BigInt::one();
        for e in divisors(d) {
            if e < d {
                let phi_e = cache.get(&e).expect("divisors visited ascending");
                numerator = poly_div_exact(&numerator, phi_e.coeffs());
            }
        }
        cache.insert(
            d,
            Arc::new(CycloPoly {
                modulus: d,
                coeffs: numerator,
            }),
        );
    }
    cache.get(&q).expect("just inserted").clone()
}

/// Length of the coefficient slice after dropping trailing zeros.
fn trimmed_len(coeffs: &[BigInt]) -> usize {
    let mut len = coeffs.len();
    while len > 0 && coeffs[len - 1].is_zero() {
        len -= 1;
    }
    len
}

/// Exact division of integer polynomials by a monic divisor;
/// panics if the remainder is nonzero.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let (quot, rem) = poly_divmod_monic(num, den);
    assert!(
        rem.iter().all(Zero::is_zero),
        "polynomial division was not exact"
    );
    quot
}

/// Remainder of integer polynomial division by a monic divisor.
fn poly_rem_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    poly_divmod_monic(num, den).1
}

fn poly_divmod_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let den_len = trimmed_len(den);
    assert!(den_len >= 2, "divisor must be nonconstant");
    let d = den_len - 1; // degree of the divisor
    assert!(den[d].is_one(), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    let num_len = trimmed_len(&rem);
    if num_len < den_len {
        rem.truncate(num_len.max(1));
        return (vec![BigInt::zero()], rem);
    }
    let mut quot = vec![BigInt::zero(); num_len - d];
    for k in (d..num_len).rev() {
        let lead = std::mem::take(&mut rem[k]);
        if lead.is_zero() {
            continue;
        }
        for (j, den_j) in den.iter().take(d).enumerate() {
            if !den_j.is_zero() {
                rem[k - d + j] -= &lead * den_j;
            }
        }
        quot[k - d] = lead;
    }
    rem.truncate(d);
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zeta(q: u64, i: i64) -> CycloElt {
        CycloElt::root_power(q, i)
    }

    fn euler_phi(n: u64) -> u64 {
        (1..=n).filter(|&k| crate::modular::factorize(n).iter().all(|(p, _)| k % p != 0)).count() as u64
    }

    #[test]
    fn root_power_reduces_exponents() {
        assert_eq!(zeta(4, 0), CycloElt::from_integer(4, 1));
        assert_eq!(zeta(4, 6), zeta(4, 2));
        assert_eq!(zeta(7, -1), zeta(7, 6));
    }

    #[test]
    fn mul_convolves_exponents() {
        assert_eq!(&zeta(4, 1) * &zeta(4, 1), zeta(4, 2));
        let alpha = CycloElt::from_coeffs(3, [1, 1, 1].map(BigInt::from));
        // 1 + zeta_3 + zeta_3^2 is zero in the ring; multiplying by one keeps it zero.
        assert!((&alpha * &CycloElt::from_integer(3, 1)).is_zero());
        assert!(alpha.equals_integer(0));
    }

    #[test]
    fn additive_inverse_cancels() {
        let alpha = CycloElt::from_coeffs(6, [3, -2, 0, 5, 1, 7].map(BigInt::from));
        assert!((&alpha + &(-&alpha)).is_zero());
    }

    #[test]
    #[should_panic(expected = "modulus mismatch")]
    fn mixed_moduli_panic() {
        let _ = &zeta(4, 1) + &zeta(5, 1);
    }

    #[test]
    fn conj_examples() {
        assert_eq!(zeta(7, 1).conj(), zeta(7, 6));
        let c = CycloElt::from_integer(9, 42);
        assert_eq!(c.conj(), c);
    }

    #[test]
    fn cyclotomic_poly_small_cases() {
        let to_i64 = |p: &CycloPoly| -> Vec<i64> {
            p.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
        };
        assert_eq!(to_i64(&cyclotomic_poly(3)), vec![1, 1, 1]); // x^2 + x + 1
        assert_eq!(to_i64(&cyclotomic_poly(8)), vec![1, 0, 0, 0, 1]); // x^4 + 1
        // Frozen from the recursive-division oracle below.
        assert_eq!(to_i64(&cyclotomic_poly(14)), vec![1, -1, 1, -1, 1, -1, 1]);
        assert_eq!(to_i64(&cyclotomic_poly(1)), vec![-1, 1]); // x - 1
    }

    #[test]
    fn cyclotomic_polys_multiply_back_to_xn_minus_1() {
        // Oracle: prod_{d | q} Phi_d = x^q - 1 exactly.
        for q in 1..=60u64 {
            let mut acc = vec![BigInt::one()];
            for d in divisors(q) {
                let phi = cyclotomic_poly(d);
                let mut next = vec![BigInt::zero(); acc.len() + phi.coeffs().len() - 1];
                for (i, a) in acc.iter().enumerate() {
                    for (j, b) in phi.coeffs().iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                acc = next;
            }
            let mut expected = vec![BigInt::zero(); q as usize + 1];
            expected[0] = -BigInt::one();
            expected[q as usize] = BigInt::one();
            assert_eq!(acc, expected, "product of Phi_d over d | {q}");
        }
    }

    #[test]
    fn cyclotomic_poly_degree_is_euler_phi() {
        for q in 1..=100u64 {
            assert_eq!(
                cyclotomic_poly(q).degree() as u64,
                if q == 1 { 1 } else { euler_phi(q) },
                "degree of Phi_{q}"
            );
        }
    }

    #[test]
    fn is_zero_examples() {
        assert!(CycloElt::from_coeffs(3, [1, 1, 1].map(BigInt::from)).is_zero());
        let i_squared_plus_1 = &(&zeta(4, 1) * &zeta(4, 1)) + &CycloElt::from_integer(4, 1);
        assert!(i_squared_plus_1.is_zero());
        assert!(!zeta(7, 1).is_zero());
        // Sum of all 7th roots of unity vanishes.
        let all7 = CycloElt::from_coeffs(7, vec![BigInt::one(); 7]);
        assert!(all7.is_zero());
        assert!(all7.abs_square().is_zero());
    }

    #[test]
    fn equals_integer_examples() {
        let one_plus_i = &CycloElt::from_integer(4, 1) + &zeta(4, 1);
        assert!((&one_plus_i * &one_plus_i.conj()).equals_integer(2));
        assert!(!zeta(7, 1).equals_integer(0));
        assert!(CycloElt::from_integer(23, 3).abs_square().equals_integer(9));
    }

    #[test]
    fn abs_square_of_roots_is_one() {
        for q in [14u64, 46] {
            for i in 0..q {
                assert!(
                    zeta(q, i as i64).abs_square().equals_integer(1),
                    "zeta_{q}^{i} not unimodular"
                );
            }
        }
    }

    #[test]
    fn float_approx_examples() {
        let one_plus_i = &CycloElt::from_integer(4, 1) + &zeta(4, 1);
        let v = one_plus_i.float_approx();
        assert!((v.re - 1.0).abs() < 1e-12 && (v.im - 1.0).abs() < 1e-12);

        // Phi_7 evaluated at zeta_7 is zero.
        let phi7 = cyclotomic_poly(7);
        let at_zeta = CycloElt::from_coeffs(7, phi7.coeffs().to_vec());
        assert!(at_zeta.float_approx().norm() < 1e-9);
        assert!(at_zeta.is_zero());
    }

    #[test]
    fn display_is_compact_ascii() {
        let e = CycloElt::from_coeffs(5, [2, -1, 0, 3, 0].map(BigInt::from));
        assert_eq!(e.to_string(), "2 - z + 3*z^3");
        assert_eq!(CycloElt::zero(5).to_string(), "0");
    }

    #[test]
    fn canonical_reduces_representatives() {
        // 3 + z at q = 2 is the integer 2 (z = -1).
        let e = CycloElt::from_coeffs(2, [3, 1].map(BigInt::from));
        let c = e.canonical();
        assert_eq!(c.coeffs(), [BigInt::from(2), BigInt::from(0)]);
        assert_eq!(c, e, "canonical form is the same ring element");
        assert_eq!(c.canonical(), c, "idempotent");
        assert_eq!(CycloElt::from_coeffs(3, [1, 1, 1].map(BigInt::from))
            .canonical()
            .to_string(), "0");
    }

    fn arb_elt(max_q: u64) -> impl Strategy<Value = CycloElt> {
        (2..=max_q).prop_flat_map(|q| {
            proptest::collection::vec(-10i64..=10, q as usize)
                .prop_map(move |v| CycloElt::from_coeffs(q, v.into_iter().map(BigInt::from)))
        })
    }

    fn arb_triple(max_q: u64) -> impl Strategy<Value = (CycloElt, CycloElt, CycloElt)> {
        (2..=max_q).prop_flat_map(|q| {
            let one = move || {
                proptest::collection::vec(-10i64..=10, q as usize)
                    .prop_map(move |v| CycloElt::from_coeffs(q, v.into_iter().map(BigInt::from)))
            };
            (one(), one(), one())
        })
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in arb_triple(12)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn conj_is_ring_involution((a, b, _c) in arb_triple(12)) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        }

        #[test]
        fn abs_square_is_conj_invariant_and_nonnegative(a in arb_elt(40)) {
            let sq = a.abs_square();
            prop_assert_eq!(sq.conj(), sq.clone());
            let approx = sq.float_approx();
            prop_assert!(approx.im.abs() < 1e-9);
            prop_assert!(approx.re > -1e-9);
        }

        #[test]
        fn float_approx_consistent_with_abs_square(a in arb_elt(100)) {
            let exact = a.abs_square().float_approx();
            let float = a.float_approx().norm_sqr();
            let scale = float.abs().max(1.0);
            prop_assert!((exact.re - float).abs() / scale < 1e-9);
            prop_assert!(exact.im.abs() / scale < 1e-9);
        }
    }
}
