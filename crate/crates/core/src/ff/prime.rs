use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{domain, Result};

/// Largest characteristic accepted. Products of two residues must fit in a
/// `u64` with room for lazy accumulation in the matrix kernels.
pub const MAX_CHARACTERISTIC: u64 = (1 << 31) - 1;

/// The prime field `F_p`, carried by value alongside every vector and matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(domain!("{p} is not prime"));
        }
        if p > MAX_CHARACTERISTIC {
            return Err(domain!("characteristic {p} exceeds {MAX_CHARACTERISTIC}"));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(self, a: i64) -> u64 {
        arith::modp(a, self.p)
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, a: u64, e: u64) -> u64 {
        arith::pow_mod(a, e, self.p)
    }

    /// Inverse of a nonzero residue. Panics on zero; callers check first.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Residue of `a` as a signed integer in `(-p/2, p/2]`.
    pub fn centered(self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.add(2, 3), 0);
        assert_eq!(f.inv(2), 3);
        assert_eq!(f.sub(1, 3), 3);
        assert_eq!(f.reduce(-7), 3);
        assert_eq!(f.centered(4), -1);
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
    }
}
