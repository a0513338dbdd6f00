//! Sweep the Wieferich-type condition 2^(p-1) = 1 (mod p^2) over primes
//! p = 7 (mod 8). A failure of the condition limits the certified
//! exponent range to e = 1; the sweep shows how rare that is.
//!
//! Usage: cargo run --example wieferich_scan [LIMIT]

use gbfcert::modular::{primes_up_to, wieferich_ok};

fn main() {
    let limit: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("LIMIT must be an integer"))
        .unwrap_or(100_000);

    let mut scanned = 0u64;
    let mut wieferich = Vec::new();
    for p in primes_up_to(limit).into_iter().filter(|p| p % 8 == 7) {
        scanned += 1;
        if !wieferich_ok(p).unwrap() {
            wieferich.push(p);
        }
    }
    println!("primes p = 7 (mod 8) scanned up to {limit}: {scanned}");
    match wieferich.as_slice() {
        [] => println!("no Wieferich primes in range"),
        ps => {
            for p in ps {
                println!("Wieferich prime: {p} (2^(p-1) = 1 mod p^2); only e = 1 is certified");
            }
        }
    }
}
