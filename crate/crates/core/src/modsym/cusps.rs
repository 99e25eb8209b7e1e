//! Cusp equivalence and the classical genus formula, used both to build
//! boundary maps and as an independent check on computed dimensions.

use serde::{Deserialize, Serialize};

use super::{GroupKind, GroupSpec};
use crate::arith::{divisors, euler_phi, factorize, gcd, kronecker, xgcd};

/// Canonical key of the cusp `a/c` (with `gcd(a, c) = 1`) under the group.
///
/// For `Gamma0(N)` the key is `(gcd(c, N), a * c/gcd(c, N) mod gcd(d, N/d))`.
/// For `Gamma1(N)` it is `(c mod N, a mod gcd(c, N))` up to a global sign.
pub fn cusp_key(group: &GroupSpec, a: i64, c: i64) -> (u64, u64) {
    let n = group.level;
    if effective_kind(group) == GroupKind::Gamma0 {
        let d = gcd(c.unsigned_abs(), n);
        let g = gcd(d, n / d);
        let x = if g == 1 {
            0
        } else {
            ((a as i128 * (c / d as i64) as i128).rem_euclid(g as i128)) as u64
        };
        return (d, x);
    }
    let g = gcd(c.unsigned_abs(), n);
    let key = |s: i64| ((s * c).rem_euclid(n as i64) as u64, (s * a).rem_euclid(g as i64) as u64);
    key(1).min(key(-1))
}

/// `+-Gamma1(N)` equals `+-Gamma0(N)` exactly when `(Z/N)^* = {+-1}`.
pub fn effective_kind(group: &GroupSpec) -> GroupKind {
    match group.kind {
        GroupKind::Gamma1 if euler_phi(group.level) <= 2 => GroupKind::Gamma0,
        k => k,
    }
}

/// Lift a residue pair `(c, d)` with `gcd(c, d, N) = 1` to a matrix
/// `[[a, b], [c', d']]` in `SL2(Z)` with `(c', d') = (c, d) mod N`.
pub fn lift_to_sl2(c: u64, d: u64, n: u64) -> [i64; 4] {
    let n = n as i64;
    let c0 = if c == 0 { n } else { c as i64 };
    let mut d0 = d as i64;
    while gcd(c0.unsigned_abs(), d0.unsigned_abs()) != 1 {
        d0 += n;
    }
    // a d0 - b c0 = 1
    let (_, x, y) = xgcd(d0, c0);
    [x, -y, c0, d0]
}

/// Index, elliptic points, cusps and genus from the classical formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusData {
    /// Index of the image of the group in `PSL2(Z)`.
    pub index_psl: u64,
    /// Index of the group in `SL2(Z)`.
    pub index_sl: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub cusps: u64,
    pub genus: u64,
}

pub fn genus_data(group: &GroupSpec) -> GenusData {
    let n = group.level;
    let primes: Vec<u64> = factorize(n).into_iter().map(|(q, _)| q).collect();
    let index_sl = match group.kind {
        GroupKind::Gamma0 => primes.iter().fold(n, |acc, &q| acc / q * (q + 1)),
        GroupKind::Gamma1 => primes.iter().fold(n * n, |acc, &q| acc / (q * q) * (q * q - 1)),
    };
    let contains_minus_one = group.kind == GroupKind::Gamma0 || n <= 2;
    let index_psl = if contains_minus_one { index_sl } else { index_sl / 2 };

    let (nu2, nu3, cusps) = if effective_kind(group) == GroupKind::Gamma0 {
        let nu2 = if n.is_multiple_of(4) {
            0
        } else {
            primes.iter().map(|&q| (1 + kronecker(-4, q)) as u64).product()
        };
        let nu3 = if n.is_multiple_of(9) {
            0
        } else {
            primes.iter().map(|&q| (1 + kronecker(-3, q)) as u64).product()
        };
        let cusps = divisors(n).iter().map(|&d| euler_phi(gcd(d, n / d))).sum();
        (nu2, nu3, cusps)
    } else {
        let cusps = divisors(n)
            .iter()
            .map(|&d| euler_phi(d) * euler_phi(n / d))
            .sum::<u64>()
            / 2;
        (0, 0, cusps)
    };
    // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 c
    let twelve_g = 12 + index_psl as i64 - 3 * nu2 as i64 - 4 * nu3 as i64 - 6 * cusps as i64;
    debug_assert!(twelve_g >= 0 && twelve_g % 12 == 0, "genus formula gave {twelve_g}/12");
    GenusData {
        index_psl,
        index_sl,
        nu2,
        nu3,
        cusps,
        genus: (twelve_g / 12) as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_genera() {
        let g0 = |n| genus_data(&GroupSpec::gamma0(n)).genus;
        let g1 = |n| genus_data(&GroupSpec::gamma1(n)).genus;
        assert_eq!((g0(11), g0(23), g0(37), g0(3), g0(431)), (1, 2, 2, 0, 36));
        assert_eq!((g1(11), g1(13), g1(4), g1(7)), (1, 2, 0, 0));
        assert_eq!(genus_data(&GroupSpec::gamma0(37)).nu3, 2);
        assert_eq!(genus_data(&GroupSpec::gamma0(11)).cusps, 2);
    }

    #[test]
    fn lifts_are_in_sl2() {
        for n in 1..30u64 {
            for c in 0..n {
                for d in 0..n {
                    if gcd(gcd(c, d), n) != 1 {
                        continue;
                    }
                    let [a, b, c1, d1] = lift_to_sl2(c, d, n);
                    assert_eq!(a * d1 - b * c1, 1);
                    assert_eq!(
                        (c1.rem_euclid(n as i64) as u64, d1.rem_euclid(n as i64) as u64),
                        (c % n, d % n)
                    );
                }
            }
        }
    }
}
