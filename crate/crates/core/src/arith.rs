//! Elementary integer arithmetic: gcds, modular inverses, factorization of
//! small integers, and the arithmetic functions used by the level formulas.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`, `g >= 0`.
pub fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    (old_r as i64, old_s as i64, old_t as i64)
}

pub fn gcd_i(a: i64, b: i64) -> i64 {
    gcd(a.unsigned_abs(), b.unsigned_abs()) as i64
}

/// Least non-negative residue of `a` modulo `m`.
#[inline]
pub fn modp(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = xgcd((a % m) as i64, m as i64);
    if g != 1 {
        return None;
    }
    Some(modp(x, m))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &b)| b.then_some(k as u64))
        .collect()
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (q, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= q;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (q, _)| acc / q * (q - 1))
}

/// Squarefree kernel of `n`.
pub fn radical(n: u64) -> u64 {
    factorize(n).into_iter().map(|(q, _)| q).product()
}

/// Multiplicative order of `a` modulo `m` (requires `gcd(a, m) = 1`).
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let phi = euler_phi(m);
    let mut order = phi;
    for (q, _) in factorize(phi) {
        while order.is_multiple_of(q) && pow_mod(a, order / q, m) == 1 {
            order /= q;
        }
    }
    Some(order)
}

/// Kronecker symbol `(a / n)` for `n > 0`.
pub fn kronecker(a: i64, n: u64) -> i64 {
    let mut result = 1i64;
    for (q, e) in factorize(n) {
        let s = if q == 2 {
            if a % 2 == 0 {
                0
            } else {
                match a.rem_euclid(8) {
                    1 | 7 => 1,
                    _ => -1,
                }
            }
        } else {
            legendre(a, q)
        };
        if e % 2 == 1 || s == 0 {
            result *= s;
        }
    }
    result
}

/// Legendre symbol for an odd prime `q`.
pub fn legendre(a: i64, q: u64) -> i64 {
    let r = modp(a, q);
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (q - 1) / 2, q) == 1 {
        1
    } else {
        -1
    }
}

/// Generators of the unit group `(Z/nZ)^*`, chosen greedily in increasing order.
pub fn unit_group_generators(n: u64) -> Vec<u64> {
    if n <= 2 {
        return Vec::new();
    }
    let mut in_group = vec![false; n as usize];
    in_group[1] = true;
    let mut gens = Vec::new();
    for d in 2..n {
        if gcd(d, n) != 1 || in_group[d as usize] {
            continue;
        }
        gens.push(d);
        let mut stack: Vec<u64> = (1..n).filter(|&x| in_group[x as usize]).collect();
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = mul_mod(x, g, n);
                if !in_group[y as usize] {
                    in_group[y as usize] = true;
                    stack.push(y);
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xgcd_identity() {
        for a in -30i64..30 {
            for b in -30i64..30 {
                let (g, x, y) = xgcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g, gcd_i(a, b));
            }
        }
    }

    #[test]
    fn small_functions() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(431), 430);
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(inv_mod(2, 5), Some(3));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(kronecker(-4, 11), -1);
        assert_eq!(kronecker(-8, 11), 1);
        assert_eq!(radical(72), 6);
    }

    #[test]
    fn unit_generators_generate() {
        for n in 3..60u64 {
            let gens = unit_group_generators(n);
            let mut seen = std::collections::BTreeSet::from([1u64]);
            let mut stack = vec![1u64];
            while let Some(x) = stack.pop() {
                for &g in &gens {
                    let y = x * g % n;
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            assert_eq!(seen.len() as u64, euler_phi(n), "n = {n}");
        }
    }
}
