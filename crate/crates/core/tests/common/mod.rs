#![allow(dead_code)]

use std::path::PathBuf;

use serde_json::Value;

pub fn fixture(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Weierstrass coefficients `[a1, a2, a3, a4, a6]`.
pub type Curve = [i64; 5];

pub const E11A1: Curve = [0, -1, 1, -10, -20];
pub const E37A1: Curve = [0, 0, 1, -1, 0];
pub const E37B1: Curve = [0, 1, 1, -23, -50];

/// `a_l = l + 1 - #E(F_l)` by brute force, for `l` of good reduction.
pub fn frobenius_trace(e: &Curve, l: i64) -> i64 {
    let r = |x: i64| x.rem_euclid(l);
    let [a1, a2, a3, a4, a6] = e.map(r);
    let mut affine = 0;
    for x in 0..l {
        let rhs = r(r(r(x * x) * x) + r(a2 * r(x * x)) + r(a4 * x) + a6);
        for y in 0..l {
            if r(r(y * y) + r(a1 * r(x * y)) + r(a3 * y)) == rhs {
                affine += 1;
            }
        }
    }
    l + 1 - (affine + 1)
}

pub fn small_primes(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&q| (2..q).all(|d| q % d != 0)).collect()
}
