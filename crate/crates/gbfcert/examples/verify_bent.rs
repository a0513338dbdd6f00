//! Exact bent verification with spectrum dumps for two classical
//! functions: x1*x2 on Z_2^2 (family qq) and the identity map
//! Z_2 -> Z_4 (family 2m). Everything is decided in Z[zeta] with no
//! floating point; the double-precision check runs only as a cross-check.

use gbfcert::gbf::{fourier, is_gbf, is_gbf_float, Family, GbfFunction, GbfType};

fn inspect(label: &str, f: &GbfFunction) {
    let ty = f.gbf_type();
    println!("{label}: type {ty}, values {:?}", f.values());
    let spectrum = fourier(f);
    for (lambda, entry) in spectrum.entries().iter().enumerate() {
        println!(
            "  F({lambda}) = {}   |F|^2 = {}",
            entry.canonical(),
            entry.abs_square().canonical()
        );
    }
    let exact = is_gbf(f);
    println!("  bent (exact): {exact}");
    assert_eq!(exact, is_gbf_float(f, 1e-6), "float cross-check must agree");
    println!();
}

fn main() {
    let rothaus = GbfFunction::new(
        GbfType::new(Family::QtoQ, 2, 2).unwrap(),
        vec![0, 0, 0, 1],
    )
    .unwrap();
    inspect("f(x1, x2) = x1*x2 over Z_2", &rothaus);

    let identity = GbfFunction::new(
        GbfType::new(Family::TwoToM, 1, 4).unwrap(),
        vec![0, 1],
    )
    .unwrap();
    inspect("f(x) = x from Z_2 to Z_4", &identity);

    // A non-bent function for contrast: any table on Z_2^1 -> Z_2.
    let constant = GbfFunction::new(
        GbfType::new(Family::QtoQ, 1, 2).unwrap(),
        vec![0, 0],
    )
    .unwrap();
    inspect("f = 0 on Z_2 (never bent: n is odd)", &constant);
}
