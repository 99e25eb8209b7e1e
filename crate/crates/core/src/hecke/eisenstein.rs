//! Heuristic detection of Eisenstein (reducible) local factors.
//!
//! If the residual representation is `chi_1 + chi_2 * cyclotomic` with
//! characters of conductor dividing `N`, then for every prime `l` not
//! dividing `Np` the polynomial `X^2 - a_l X + l eps(l)` has the root
//! `chi_1(l)`, which is a root of `X^ord(l mod N) - 1`. A factor is flagged
//! when this holds for every tested prime.

use super::local::LocalFactor;
use super::{operator_for, HeckeAlgebra};
use crate::arith::{gcd, multiplicative_order, primes_up_to};
use crate::error::{integrity, Result};
use crate::ff::GaloisField;
use crate::modsym::{GroupKind, OpLabel};

/// Smallest upper limit on the primes tested.
pub const EISENSTEIN_MIN_PRIME_BOUND: u64 = 30;

/// `X^e mod (X^2 + c1 X + c0)` over `F`, as `(u0, u1)` for `u0 + u1 X`.
fn x_pow_mod_quadratic(f: &GaloisField, c1: &[u64], c0: &[u64], mut e: u64) -> (Vec<u64>, Vec<u64>) {
    let mul = |a: &(Vec<u64>, Vec<u64>), b: &(Vec<u64>, Vec<u64>)| {
        // (a0 + a1 X)(b0 + b1 X) with X^2 = -c1 X - c0
        let x2 = f.mul_coords(&a.1, &b.1);
        let lo = f.sub_coords(&f.mul_coords(&a.0, &b.0), &f.mul_coords(&x2, c0));
        let hi = f.add_coords(&f.mul_coords(&a.0, &b.1), &f.mul_coords(&a.1, &b.0));
        (lo, f.sub_coords(&hi, &f.mul_coords(&x2, c1)))
    };
    let mut acc = (f.one_coords(), f.zero_coords());
    let mut base = (f.zero_coords(), f.one_coords());
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}

/// Whether `X^2 + c1 X + c0` and `X^e - 1` share a root in an algebraic closure.
pub fn shares_root_with_unity(f: &GaloisField, c1: &[u64], c0: &[u64], e: u64) -> bool {
    let (u0, u1) = x_pow_mod_quadratic(f, c1, c0, e);
    let r0 = f.sub_coords(&u0, &f.one_coords());
    if GaloisField::is_zero_coords(&u1) {
        return GaloisField::is_zero_coords(&r0);
    }
    // Remainder r0 + u1 X has the single root x = -r0 / u1.
    let x = f.neg_coords(&f.mul_coords(&r0, &f.inv_coords(&u1).expect("nonzero")));
    let val = f.add_coords(&f.add_coords(&f.mul_coords(&x, &x), &f.mul_coords(c1, &x)), c0);
    GaloisField::is_zero_coords(&val)
}

/// The heuristic Eisenstein flag for one factor.
pub fn eisenstein_flag(alg: &HeckeAlgebra, factor: &LocalFactor) -> Result<bool> {
    let n = alg.group().level;
    let p = alg.p();
    let f = &factor.residue_field;
    let bound = alg.sturm_bound().max(EISENSTEIN_MIN_PRIME_BOUND);
    let mut tested = 0;
    for l in primes_up_to(bound) {
        if gcd(l, n * p) != 1 {
            continue;
        }
        let residue = |label: OpLabel| -> Result<Vec<u64>> {
            if let Some((_, v)) = factor.eigenvalues.iter().find(|(m, _)| *m == label) {
                return Ok(v.clone());
            }
            let op = factor.restrict(&operator_for(alg.space(), label)?.matrix)?;
            factor
                .residue_of(&op)
                .ok_or_else(|| integrity!("{label} does not lie in the local algebra"))
        };
        let a_l = residue(OpLabel::T(l))?;
        let eps = if alg.group().kind == GroupKind::Gamma1 && n > 2 {
            residue(OpLabel::Diamond(l % n))?
        } else {
            f.one_coords()
        };
        let c1 = f.neg_coords(&a_l);
        let c0 = f.scale_coords(l % p, &eps);
        let e = multiplicative_order(l, n).unwrap_or(1);
        if !shares_root_with_unity(f, &c1, &c0, e) {
            return Ok(false);
        }
        tested += 1;
    }
    Ok(tested > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::PrimeField;
    use crate::hecke::{generate_algebra, local_factors};
    use crate::modsym::{build_space, GroupSpec};

    #[test]
    fn root_sharing() {
        let f = GaloisField::with_degree(PrimeField::new(5).unwrap(), 1);
        // X^2 - 3X + 2 = (X - 1)(X - 2) shares 1 with X^4 - 1
        assert!(shares_root_with_unity(&f, &[2], &[2], 4));
        // X^2 + 1 over F_5 has roots 2, 3 of order 4
        assert!(!shares_root_with_unity(&f, &[0], &[1], 2));
        assert!(shares_root_with_unity(&f, &[0], &[1], 4));
    }

    #[test]
    fn mazur_congruence_at_eleven() {
        let a = generate_algebra(build_space(5, GroupSpec::gamma0(11)).unwrap(), None).unwrap();
        let fs = local_factors(&a).unwrap();
        assert!(eisenstein_flag(&a, &fs[0]).unwrap());
        let a = generate_algebra(build_space(3, GroupSpec::gamma0(11)).unwrap(), None).unwrap();
        let fs = local_factors(&a).unwrap();
        assert!(!eisenstein_flag(&a, &fs[0]).unwrap());
    }
}
