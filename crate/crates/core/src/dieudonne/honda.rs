//! A Dieudonné module not killed by `p` where the comparison fails:
//! `M = Z/p^n`, `V` multiplication by a unit `u ≡ 1 mod p`, `F = p u^{-1}`.
//! Then `V` is the identity on `M/FM` but not on `M` once `u ≠ 1`.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, inv_mod, mul_mod};
use crate::error::{usage, Error, Result};
use crate::ff::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HondaExample {
    pub p: u64,
    pub n: u32,
    /// `p^n`.
    pub modulus: u64,
    pub v: u64,
    pub f: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HondaReport {
    pub example: HondaExample,
    /// `F V = p` in `Z/p^n`.
    pub fv_is_p: bool,
    /// `F M = p M`.
    pub image_of_f_is_pm: bool,
    /// Order of `M/FM`.
    pub quotient_order: u64,
    pub v_identity_on_quotient: bool,
    pub v_identity_on_m: bool,
    /// `u = 1`: no failure is exhibited.
    pub degenerate: bool,
}

impl HondaReport {
    /// `V ≠ 1` on `M` while `V = 1` on `M/FM`.
    pub fn exhibits_failure(&self) -> bool {
        self.v_identity_on_quotient && !self.v_identity_on_m && self.image_of_f_is_pm
    }
}

pub fn honda_example(p: u64, n: u32, unit: u64) -> Result<HondaReport> {
    PrimeField::new(p)?;
    if n < 2 {
        return Err(usage!("n must be at least 2, got {n}"));
    }
    let modulus = p
        .checked_pow(n)
        .filter(|&m| m < 1 << 62)
        .ok_or_else(|| usage!("{p}^{n} is too large"))?;
    let v = unit % modulus;
    if v % p != 1 {
        return Err(Error::Precondition(format!("V = {unit} is not congruent to 1 mod {p}")));
    }
    let f = mul_mod(p, inv_mod(v, modulus).expect("v is a unit"), modulus);
    let example = HondaExample { p, n, modulus, v, f };
    // F M is generated by gcd(f, p^n).
    let image = gcd(f, modulus);
    let quotient_order = image;
    Ok(HondaReport {
        example,
        fv_is_p: mul_mod(f, v, modulus) == p,
        image_of_f_is_pm: image == p,
        quotient_order,
        v_identity_on_quotient: v % quotient_order == 1 % quotient_order,
        v_identity_on_m: v == 1,
        degenerate: v == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn documented_examples() {
        let r = honda_example(2, 2, 3).unwrap();
        assert_eq!(r.example.f, 2);
        assert_eq!(r.quotient_order, 2);
        assert!(r.exhibits_failure());
        assert!(honda_example(3, 2, 4).unwrap().exhibits_failure());
        let r = honda_example(2, 2, 1).unwrap();
        assert!(r.degenerate && r.v_identity_on_m && !r.exhibits_failure());
        assert!(matches!(honda_example(3, 2, 2), Err(Error::Precondition(_))));
        assert!(honda_example(3, 1, 4).is_err());
    }

    proptest! {
        #[test]
        fn every_nontrivial_unit_exhibits_failure(pi in 0usize..4, n in 2u32..6, t in 1u64..1000) {
            let p = [2u64, 3, 5, 7][pi];
            let m = p.pow(n);
            let u = (1 + p * t) % m;
            prop_assume!(u != 1);
            let r = honda_example(p, n, u).unwrap();
            prop_assert!(r.fv_is_p);
            prop_assert!(r.exhibits_failure());
        }
    }
}
