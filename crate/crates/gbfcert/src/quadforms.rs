//! Binary quadratic forms of discriminant -p and the invariant t_p.
//!
//! For a prime p ≡ 7 (mod 8), the prime 2 splits in Q(sqrt(-p)) and the
//! class of a prime ideal above 2 is represented by the form
//! (2, 1, (p+1)/8). Its order t_p in the form class group is computed
//! here by two independent routes:
//!
//! * the order of that class under Gauss composition of reduced forms;
//! * the smallest odd t such that x^2 + p*y^2 = 2^(t+2) has an integer
//!   solution, found by direct scan with an explicit witness (x, y).
//!
//! [`tp_certificate`] runs both routes and packages the agreement plus
//! the witness. Everything is exact integer arithmetic.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::modular::is_prime;

/// Default upper bound on the odd exponent scanned by the Diophantine
/// route; far above any t_p reachable at desk scale.
pub const DEFAULT_SCAN_CEILING: u32 = 201;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadFormError {
    #[error("form ({a}, {b}, {c}) is not positive definite")]
    NotPositiveDefinite { a: BigInt, b: BigInt, c: BigInt },
    #[error("form ({a}, {b}, {c}) is not primitive")]
    NotPrimitive { a: BigInt, b: BigInt, c: BigInt },
    #[error("discriminant mismatch: {left} vs {right}")]
    DiscriminantMismatch { left: BigInt, right: BigInt },
    #[error("{0} is not a prime congruent to 7 mod 8")]
    InvalidPrime(u64),
    #[error("no odd t <= {ceiling} with x^2 + {p}y^2 = 2^(t+2) solvable")]
    ScanCeilingExceeded { p: u64, ceiling: u32 },
    #[error("t_p routes disagree for p = {p}: class order {class_order}, diophantine {diophantine}")]
    RouteDisagreement {
        p: u64,
        class_order: u32,
        diophantine: u32,
    },
    #[error("certificate invariants fail for p = {p} (witness equation, oddness, or log bound)")]
    InvalidCertificate { p: u64 },
}

/// A primitive positive-definite integral binary quadratic form
/// a*x^2 + b*x*y + c*y^2. Both invariants are checked at construction,
/// so every live `QuadForm` is valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadForm {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl QuadForm {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
    ) -> Result<Self, QuadFormError> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        let disc = &b * &b - &a * &c * 4u32;
        if !a.is_positive() || !disc.is_negative() {
            return Err(QuadFormError::NotPositiveDefinite { a, b, c });
        }
        if a.gcd(&b).gcd(&c) != BigInt::one() {
            return Err(QuadFormError::NotPrimitive { a, b, c });
        }
        Ok(QuadForm { a, b, c })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - &self.a * &self.c * 4u32
    }

    /// The principal (identity) form of discriminant -p, for p ≡ 3 (mod 4).
    pub fn principal(p: u64) -> QuadForm {
        assert_eq!(p % 4, 3, "principal form (1, 1, (1+p)/4) needs p ≡ 3 (mod 4)");
        QuadForm {
            a: BigInt::one(),
            b: BigInt::one(),
            c: BigInt::from((1 + p) / 4),
        }
    }

    /// The form (2, 1, (p+1)/8) of discriminant -p representing the class
    /// of a prime ideal above 2, for p ≡ 7 (mod 8).
    pub fn above_two(p: u64) -> QuadForm {
        assert_eq!(p % 8, 7, "2 splits only for p ≡ 7 (mod 8)");
        QuadForm {
            a: BigInt::from(2),
            b: BigInt::one(),
            c: BigInt::from((p + 1) / 8),
        }
    }

    /// |b| <= a <= c, with b >= 0 when |b| = a or a = c.
    pub fn is_reduced(&self) -> bool {
        let abs_b = self.b.abs();
        if abs_b > self.a || self.a > self.c {
            return false;
        }
        if (abs_b == self.a || self.a == self.c) && self.b.is_negative() {
            return false;
        }
        true
    }

    /// The unique reduced form equivalent to `self`.
    pub fn reduce(&self) -> QuadForm {
        let disc = self.discriminant();
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        let mut c = self.c.clone();
        loop {
            if c < a {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if b.abs() > a {
                // Translate b into (-a, a]; c follows from the discriminant.
                let two_a = &a * 2u32;
                let mut r = b.mod_floor(&two_a);
                if r > a {
                    r -= &two_a;
                }
                c = (&r * &r - &disc) / (&a * 4u32);
                b = r;
                continue;
            }
            if (b.abs() == a || a == c) && b.is_negative() {
                b = -b;
                continue;
            }
            break;
        }
        QuadForm { a, b, c }
    }

    /// The inverse class: (a, -b, c).
    pub fn inverse(&self) -> QuadForm {
        QuadForm {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
        }
    }

    /// Gauss composition; returns the reduced representative of the
    /// product class.
    pub fn compose(&self, other: &QuadForm) -> Result<QuadForm, QuadFormError> {
        let disc = self.discriminant();
        let other_disc = other.discriminant();
        if disc != other_disc {
            return Err(QuadFormError::DiscriminantMismatch {
                left: disc,
                right: other_disc,
            });
        }
        let s = (&self.b + &other.b) / 2i32;
        let n = (&self.b - &other.b) / 2i32;
        let (g, _u, v, w) = ext_gcd3(&self.a, &other.a, &s);
        let big_a = &self.a * &other.a / (&g * &g);
        let offset = (&other.a * 2u32 / &g) * (&v * &n - &w * &other.c);
        let two_a = &big_a * 2u32;
        let mut big_b = (&other.b + offset).mod_floor(&two_a);
        if big_b > big_a {
            big_b -= &two_a;
        }
        let (big_c, rem) = (&big_b * &big_b - &disc).div_rem(&(&big_a * 4u32));
        assert!(rem.is_zero(), "composition produced a non-integral form");
        Ok(QuadForm {
            a: big_a,
            b: big_b,
            c: big_c,
        }
        .reduce())
    }
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Extended gcd: returns (g, u, v) with g = u*a + v*b, g >= 0.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        r0 -= &q * &r1;
        std::mem::swap(&mut r0, &mut r1);
        s0 -= &q * &s1;
        std::mem::swap(&mut s0, &mut s1);
        t0 -= &q * &t1;
        std::mem::swap(&mut t0, &mut t1);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Three-term extended gcd: (g, u, v, w) with g = u*a + v*b + w*c.
fn ext_gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    let (g1, u1, v1) = ext_gcd(a, b);
    let (g, x, w) = ext_gcd(&g1, c);
    (g, &x * &u1, &x * &v1, w)
}

/// The form class group of discriminant -p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroupSummary {
    pub p: u64,
    /// Class number: the number of reduced forms.
    pub h: u64,
    /// All reduced primitive forms of discriminant -p, ordered by (a, b).
    pub reduced_forms: Vec<QuadForm>,
}

fn require_7_mod_8_prime(p: u64) -> Result<(), QuadFormError> {
    if p % 8 == 7 && is_prime(p) {
        Ok(())
    } else {
        Err(QuadFormError::InvalidPrime(p))
    }
}

/// Enumerate all reduced primitive forms of discriminant -p by the
/// bounded scan |b| <= a <= sqrt(p/3); the class number h is their count.
pub fn class_group(p: u64) -> Result<ClassGroupSummary, QuadFormError> {
    require_7_mod_8_prime(p)?;
    let p_i = p as i128;
    let mut forms = Vec::new();
    let mut a: i128 = 1;
    while 3 * a * a <= p_i {
        let mut b = -a + 1;
        while b <= a {
            // -p ≡ 1 (mod 4), so b is odd for every form of discriminant -p.
            if b.rem_euclid(2) == 1 {
                let four_ac = b * b + p_i;
                if four_ac % (4 * a) == 0 {
                    let c = four_ac / (4 * a);
                    let reduced_sign = b >= 0 || (b.abs() != a && a != c);
                    if c >= a && reduced_sign && gcd3_i128(a, b, c) == 1 {
                        forms.push(QuadForm {
                            a: BigInt::from(a),
                            b: BigInt::from(b),
                            c: BigInt::from(c),
                        });
                    }
                }
            }
            b += 1;
        }
        a += 1;
    }
    Ok(ClassGroupSummary {
        p,
        h: forms.len() as u64,
        reduced_forms: forms,
    })
}

fn gcd3_i128(a: i128, b: i128, c: i128) -> i128 {
    fn gcd(x: i128, y: i128) -> i128 {
        if y == 0 {
            x.abs()
        } else {
            gcd(y, x % y)
        }
    }
    gcd(gcd(a, b), c)
}

/// t_p as the order of the class of (2, 1, (p+1)/8) under composition.
pub fn tp_via_class_order(p: u64) -> Result<u32, QuadFormError> {
    require_7_mod_8_prime(p)?;
    let generator = QuadForm::above_two(p);
    let principal = QuadForm::principal(p);
    let mut acc = generator.reduce();
    let mut order: u32 = 1;
    while acc != principal {
        acc = acc.compose(&generator).expect("same discriminant");
        order += 1;
        assert!(order < 1_000_000, "runaway order computation for p={p}");
    }
    Ok(order)
}

/// A solution witness from the Diophantine route: the smallest odd t with
/// x^2 + p*y^2 = 2^(t+2) solvable, together with one solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiophantineWitness {
    pub t: u32,
    pub x: BigUint,
    pub y: BigUint,
}

/// t_p by direct scan of x^2 + p*y^2 = 2^(t+2) over odd t, starting at
/// the least odd t with 2^(t+2) > p (smaller levels are provably empty)
/// and stopping at the default ceiling.
pub fn tp_via_diophantine(p: u64) -> Result<DiophantineWitness, QuadFormError> {
    tp_via_diophantine_with_ceiling(p, DEFAULT_SCAN_CEILING)
}

/// As [`tp_via_diophantine`] with an explicit scan ceiling.
pub fn tp_via_diophantine_with_ceiling(
    p: u64,
    ceiling: u32,
) -> Result<DiophantineWitness, QuadFormError> {
    require_7_mod_8_prime(p)?;
    let p_big = BigUint::from(p);
    // Least odd m with 2^(m+2) > p.
    let mut m: u32 = 1;
    while (BigUint::one() << (m + 2)) <= p_big {
        m += 2;
    }
    while m <= ceiling {
        let target = BigUint::one() << (m + 2);
        let mut y = BigUint::zero();
        loop {
            let py2 = &p_big * &y * &y;
            if py2 > target {
                break;
            }
            let remainder = &target - py2;
            let root = remainder.sqrt();
            if &root * &root == remainder {
                return Ok(DiophantineWitness { t: m, x: root, y });
            }
            y += 1u32;
        }
        m += 2;
    }
    Err(QuadFormError::ScanCeilingExceeded { p, ceiling })
}

/// True iff x^2 + p*y^2 = 2^(t+2).
pub fn verify_witness(p: u64, t: u32, x: &BigUint, y: &BigUint) -> bool {
    x * x + BigUint::from(p) * y * y == BigUint::one() << (t + 2)
}

/// The invariant t_p with its witness and both computation routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TpCertificate {
    pub p: u64,
    pub t_p: u32,
    pub witness_x: BigUint,
    pub witness_y: BigUint,
    pub route_class_order: u32,
    pub route_diophantine: u32,
}

impl TpCertificate {
    /// Re-check every certificate invariant: route agreement, oddness,
    /// the witness equation, and the lower bound t_p > log2(p) - 2.
    pub fn validate(&self) -> Result<(), QuadFormError> {
        if self.route_class_order != self.route_diophantine
            || self.t_p != self.route_class_order
        {
            return Err(QuadFormError::RouteDisagreement {
                p: self.p,
                class_order: self.route_class_order,
                diophantine: self.route_diophantine,
            });
        }
        let witness_ok = verify_witness(self.p, self.t_p, &self.witness_x, &self.witness_y);
        let odd = self.t_p % 2 == 1;
        let above_log_bound = BigUint::one() << (self.t_p + 2) > BigUint::from(self.p);
        if witness_ok && odd && above_log_bound {
            Ok(())
        } else {
            Err(QuadFormError::InvalidCertificate { p: self.p })
        }
    }
}

/// Compute t_p by both routes, assert agreement, and package the witness.
pub fn tp_certificate(p: u64) -> Result<TpCertificate, QuadFormError> {
    let class_order = tp_via_class_order(p)?;
    let dioph = tp_via_diophantine(p)?;
    if class_order != dioph.t {
        return Err(QuadFormError::RouteDisagreement {
            p,
            class_order,
            diophantine: dioph.t,
        });
    }
    let cert = TpCertificate {
        p,
        t_p: class_order,
        witness_x: dioph.x,
        witness_y: dioph.y,
        route_class_order: class_order,
        route_diophantine: dioph.t,
    };
    cert.validate()?;
    Ok(cert)
}
