//! Exact-arithmetic toolkit for generalized bent functions.
//!
//! A generalized bent function (GBF) is a function whose exact Fourier
//! spectrum has constant modulus equal to the square root of the domain
//! size. Two families are supported: maps `Z_q^n -> Z_q` and maps
//! `Z_2^n -> Z_m`. Everything decision-relevant is computed over the
//! integers (cyclotomic integers, binary quadratic forms, exact
//! rationals); floating point appears only as a diagnostic cross-check.
//!
//! The crate has three layers:
//!
//! * number-theoretic groundwork: [`modular`] (orders, the Wieferich-type
//!   condition, the hypothesis bundle for a prime `p ≡ 7 (mod 8)`) and
//!   [`quadforms`] (the form class group of discriminant `-p`, and the
//!   invariant `t_p` computed by two independent routes with a solution
//!   witness for `x^2 + p*y^2 = 2^(t_p+2)`);
//! * exact analysis of concrete functions: [`cyclo`] (arithmetic in
//!   `Z[zeta_q]`), [`gbf`] (spectra, the bent test, partition diagnostics
//!   for order-2 shifts, and the parity counting argument that rules out
//!   types `[t_p, 2p^e]`), and [`search`] (exhaustive and randomized
//!   searches over tiny types with deterministic sharding);
//! * [`cli`], a thin command front end producing stable text and JSON.
//!
//! See the crate examples for runnable walkthroughs of each capability.

pub mod cli;
pub mod cyclo;
pub mod gbf;
pub mod modular;
pub mod quadforms;
pub mod search;
