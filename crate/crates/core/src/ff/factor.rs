//! Factorization of polynomials over `F_p`: square-free decomposition,
//! distinct-degree splitting, then Cantor-Zassenhaus equal-degree splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::FpPoly;
use super::prime::PrimeField;
use crate::arith;
use crate::error::{domain, Result};

/// Seed used when the caller does not supply a generator. The output is
/// sorted, so it does not depend on the seed anyway; only running time does.
pub const DEFAULT_FACTOR_SEED: u64 = 0x0005_eed0_f00d;

/// Factor `f` into monic irreducibles with multiplicities, sorted by degree
/// and then by coefficients. The leading coefficient of `f` is dropped.
pub fn factor_poly(f: &FpPoly) -> Result<Vec<(FpPoly, u32)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_FACTOR_SEED);
    factor_poly_with_rng(f, &mut rng)
}

pub fn factor_poly_with_rng<R: Rng>(f: &FpPoly, rng: &mut R) -> Result<Vec<(FpPoly, u32)>> {
    if f.is_zero() {
        return Err(domain!("cannot factor the zero polynomial"));
    }
    let mut out: Vec<(FpPoly, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic()) {
        for (block, d) in distinct_degree(&part) {
            for irr in equal_degree(&block, d, rng) {
                match out.iter_mut().find(|(g, _)| *g == irr) {
                    Some((_, m)) => *m += mult,
                    None => out.push((irr, mult)),
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

/// Square-free decomposition of a monic polynomial: pairs `(g_i, i)` with
/// every `g_i` square-free, pairwise coprime, and `f = prod g_i^i`.
pub fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let field = f.field();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        c = c.div_rem(&y).0;
        w = y;
        i += 1;
    }
    if !c.is_one() {
        let p = field.p() as u32;
        for (g, m) in squarefree_decomposition(&c.monic().p_th_root_of_exponents()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial: pairs
/// `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let field = f.field();
    let x = FpPoly::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(field.p(), &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((rest.monic(), deg));
        }
    }
    out
}

/// Split a monic square-free product of irreducibles of common degree `d`.
pub fn equal_degree<R: Rng>(f: &FpPoly, d: usize, rng: &mut R) -> Vec<FpPoly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field();
    let p = field.p();
    loop {
        let a = FpPoly::new(field, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Absolute trace from F_{2^d} to F_2 takes each value on half the field.
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p - 1)/2)
            let mut t = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                t = t.pow_mod(p, f);
                norm = norm.mul(&t).rem(f);
            }
            norm.pow_mod((p - 1) / 2, f).sub(&FpPoly::one(field))
        };
        let g = b.gcd(f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_rem(&g).0.monic();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &FpPoly) -> bool {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let f = f.monic();
    let x = FpPoly::x(f.field());
    if x.frobenius_pow_mod(n, &f) != x.rem(&f) {
        return false;
    }
    arith::factorize(n as u64).into_iter().all(|(q, _)| {
        let h = x.frobenius_pow_mod(n / q as usize, &f);
        h.sub(&x).gcd(&f).is_one()
    })
}

/// First monic irreducible of degree `k`, enumerating lower coefficients as
/// a base-p counter with the constant term least significant.
pub fn find_irreducible(field: PrimeField, k: usize) -> FpPoly {
    assert!(k >= 1, "degree must be positive");
    let p = field.p();
    let mut digits = vec![0u64; k];
    loop {
        let mut coeffs = digits.clone();
        coeffs.push(1);
        let f = FpPoly::new(field, coeffs);
        if is_irreducible(&f) {
            return f;
        }
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < k, "no irreducible polynomial found");
        }
    }
}

/// Distinct roots of `f` in `F_p`, ascending.
pub fn roots(f: &FpPoly) -> Vec<u64> {
    if f.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<u64> = factor_poly(f)
        .unwrap_or_default()
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| f.field().neg(g.coeff(0)))
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn product(field: PrimeField, facs: &[(FpPoly, u32)]) -> FpPoly {
        facs.iter()
            .fold(FpPoly::one(field), |acc, (g, e)| acc.mul(&g.pow(*e as u64)))
    }

    #[test]
    fn documented_examples() {
        let f2 = fp(2);
        let f5 = fp(5);
        assert_eq!(
            factor_poly(&FpPoly::from_i64(f2, &[1, 0, 1])).unwrap(),
            vec![(FpPoly::from_i64(f2, &[1, 1]), 2)]
        );
        assert_eq!(
            factor_poly(&FpPoly::from_i64(f5, &[1, 0, 1])).unwrap(),
            vec![(FpPoly::linear(f5, 3), 1), (FpPoly::linear(f5, 2), 1)]
        );
        let g = FpPoly::from_i64(f2, &[1, 1, 1]);
        assert_eq!(factor_poly(&g).unwrap(), vec![(g.clone(), 1)]);
        assert!(factor_poly(&FpPoly::zero(f5)).is_err());
    }

    #[test]
    fn inseparable_parts() {
        let f3 = fp(3);
        // (x^3 + 2x + 1)^3 (x + 1)^4 over F_3
        let a = FpPoly::from_i64(f3, &[1, 2, 0, 1]);
        let b = FpPoly::linear(f3, 2);
        let f = a.pow(3).mul(&b.pow(4));
        let facs = factor_poly(&f).unwrap();
        assert_eq!(product(f3, &facs), f);
        assert_eq!(facs.len(), 2);
    }

    #[test]
    fn irreducibles_found() {
        let f2 = fp(2);
        assert_eq!(find_irreducible(f2, 2), FpPoly::from_i64(f2, &[1, 1, 1]));
        for k in 1..=8 {
            let g = find_irreducible(fp(3), k);
            assert_eq!(g.degree(), Some(k));
            assert_eq!(factor_poly(&g).unwrap().len(), 1);
        }
        assert!(!is_irreducible(&FpPoly::from_i64(f2, &[0, 0, 1])));
    }

    proptest! {
        #[test]
        fn factorization_multiplies_back(
            p in prop::sample::select(vec![2u64, 3, 5, 7, 13]),
            coeffs in prop::collection::vec(0u64..13, 1..14),
        ) {
            let field = fp(p);
            let f = FpPoly::new(field, coeffs);
            prop_assume!(!f.is_zero());
            let facs = factor_poly(&f).unwrap();
            prop_assert_eq!(product(field, &facs), f.monic());
            for (g, _) in &facs {
                prop_assert!(is_irreducible(g));
                prop_assert!(g.is_monic());
            }
        }
    }
}
