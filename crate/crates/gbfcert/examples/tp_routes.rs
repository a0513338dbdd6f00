//! Compute t_p two independent ways and cross-validate them:
//! as the order of the class of (2, 1, (p+1)/8) in the form class group
//! of discriminant -p, and as the smallest odd t such that
//! x^2 + p*y^2 = 2^(t+2) has an integer solution.
//!
//! Usage: cargo run --example tp_routes [P]

use gbfcert::quadforms::{class_group, tp_certificate, QuadForm};

fn main() {
    let p: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("P must be an integer"))
        .unwrap_or(23);

    let summary = class_group(p).expect("P must be a prime = 7 (mod 8)");
    println!("class group of discriminant -{p}: h = {}", summary.h);
    for form in &summary.reduced_forms {
        println!("  reduced form {form}");
    }

    // Route 1: walk the powers of the class of the ideal above 2.
    let generator = QuadForm::above_two(p);
    println!("\nclass of 2 is represented by {generator} ~ {}", generator.reduce());
    let mut acc = generator.reduce();
    let mut k = 1;
    while acc != QuadForm::principal(p) {
        acc = acc.compose(&generator).unwrap();
        k += 1;
        println!("  power {k}: {acc}");
    }
    println!("class order route: t_{p} = {k}");

    // Route 2 runs inside the certificate, which also checks agreement,
    // oddness, and the growth bound t_p > log2(p) - 2.
    let cert = tp_certificate(p).unwrap();
    println!(
        "diophantine route: t_{p} = {} with witness {}^2 + {p}*{}^2 = 2^{}",
        cert.route_diophantine,
        cert.witness_x,
        cert.witness_y,
        cert.t_p + 2
    );
    assert_eq!(cert.route_class_order, cert.route_diophantine);
    println!("routes agree; t_{p} divides h = {}: {}", summary.h, summary.h % cert.t_p as u64 == 0);
}
