//! Reproduce the table of admissible primes below a limit: for every
//! prime p = 7 (mod 8) compute t_p, the class number h(-p), and the
//! hypothesis flags that decide which types [t_p, 2p^e] are ruled out.
//!
//! Usage: cargo run --example scan_table [LIMIT]

use gbfcert::modular::{applicability, primes_up_to};
use gbfcert::quadforms::{class_group, tp_certificate};

fn main() {
    let limit: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("LIMIT must be an integer"))
        .unwrap_or(200);

    println!("primes p = 7 (mod 8) up to {limit}:");
    println!("{:>8} {:>5} {:>6}  conditions", "p", "t_p", "h");
    for p in primes_up_to(limit).into_iter().filter(|p| p % 8 == 7) {
        let report = applicability(p);
        let cert = tp_certificate(p).expect("p = 7 (mod 8) always has a t_p");
        let h = class_group(p).unwrap().h;
        let verdict = if report.applicable() {
            format!("no GBF of type [{}, 2*{}^e], {}", cert.t_p, p, report.max_e)
        } else {
            format!("not applicable ({})", report.failed_hypotheses().join("; "))
        };
        println!("{:>8} {:>5} {:>6}  {verdict}", p, cert.t_p, h);
    }
}
