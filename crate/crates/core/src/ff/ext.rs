use serde::{Deserialize, Serialize};

use super::factor::{find_irreducible, is_irreducible};
use super::poly::FpPoly;
use super::prime::PrimeField;
use crate::error::{domain, usage, Result};

/// `F_{p^k}` presented as `F_p[x]/(modulus)` with a verified irreducible modulus.
///
/// Elements are coordinate vectors of length `k` in the power basis
/// `1, x, ..., x^(k-1)`. The raw `*_coords` methods work on such slices and
/// are what the inner loops use; [`FFElement`] wraps them with field checks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaloisField {
    field: PrimeField,
    modulus: FpPoly,
}

impl GaloisField {
    pub fn new(modulus: FpPoly) -> Result<Self> {
        if !is_irreducible(&modulus) {
            return Err(domain!("modulus {modulus} is not irreducible"));
        }
        Ok(Self {
            field: modulus.field(),
            modulus: modulus.monic(),
        })
    }

    /// Canonical choice: the first irreducible in counter order.
    pub fn with_degree(field: PrimeField, k: usize) -> Self {
        Self {
            field,
            modulus: find_irreducible(field, k),
        }
    }

    pub fn prime_field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    /// Field order `p^k`, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        self.p().checked_pow(self.degree() as u32)
    }

    pub fn zero_coords(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }

    pub fn one_coords(&self) -> Vec<u64> {
        let mut v = self.zero_coords();
        v[0] = 1;
        v
    }

    pub fn embed(&self, a: u64) -> Vec<u64> {
        let mut v = self.zero_coords();
        v[0] = a % self.p();
        v
    }

    fn to_poly(&self, a: &[u64]) -> FpPoly {
        FpPoly::new(self.field, a.to_vec())
    }

    fn coords_of(&self, f: &FpPoly) -> Vec<u64> {
        let r = f.rem(&self.modulus);
        (0..self.degree()).map(|i| r.coeff(i)).collect()
    }

    pub fn add_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn sub_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }

    pub fn neg_coords(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| self.field.neg(x)).collect()
    }

    pub fn scale_coords(&self, c: u64, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    pub fn mul_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.coords_of(&self.to_poly(a).mul(&self.to_poly(b)))
    }

    pub fn pow_coords(&self, a: &[u64], e: u64) -> Vec<u64> {
        self.coords_of(&self.to_poly(a).pow_mod(e, &self.modulus))
    }

    /// `a^p`.
    pub fn frobenius_coords(&self, a: &[u64]) -> Vec<u64> {
        self.pow_coords(a, self.p())
    }

    /// `a^(p^(k-1))`, the inverse of the Frobenius.
    pub fn inverse_frobenius_coords(&self, a: &[u64]) -> Vec<u64> {
        let mut x = a.to_vec();
        for _ in 1..self.degree() {
            x = self.frobenius_coords(&x);
        }
        x
    }

    /// Inverse via the extended Euclidean algorithm; `None` for zero.
    pub fn inv_coords(&self, a: &[u64]) -> Option<Vec<u64>> {
        let a = self.to_poly(a);
        if a.is_zero() {
            return None;
        }
        // Invariant: s * a == r (mod modulus) for both rows.
        let (mut r0, mut r1) = (self.modulus.clone(), a);
        let (mut s0, mut s1) = (FpPoly::zero(self.field), FpPoly::one(self.field));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
        }
        // r0 is a nonzero constant since the modulus is irreducible.
        let c = self.field.inv(r0.coeff(0));
        Some(self.coords_of(&s0.scale(c)))
    }

    pub fn is_zero_coords(a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Every element in counter order; only sensible for small fields.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let q = self.order().expect("field too large to enumerate");
        let p = self.p();
        (0..q)
            .map(|mut idx| {
                (0..self.degree())
                    .map(|_| {
                        let d = idx % p;
                        idx /= p;
                        d
                    })
                    .collect()
            })
            .collect()
    }
}

/// Operation selector for [`ff_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FfOp {
    Add,
    Mul,
    Inv,
    Frobenius,
}

/// An element of `F_{p^k}` bundled with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FFElement {
    field: GaloisField,
    coords: Vec<u64>,
}

impl FFElement {
    pub fn new(field: &GaloisField, coords: Vec<u64>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(usage!("expected {} coordinates, got {}", field.degree(), coords.len()));
        }
        if let Some(&c) = coords.iter().find(|&&c| c >= field.p()) {
            return Err(usage!("coordinate {c} not reduced mod {}", field.p()));
        }
        Ok(Self {
            field: field.clone(),
            coords,
        })
    }

    pub fn from_int(field: &GaloisField, a: i64) -> Self {
        let coords = field.embed(field.prime_field().reduce(a));
        Self {
            field: field.clone(),
            coords,
        }
    }

    /// The class of `x` in `F_p[x]/(modulus)`.
    pub fn generator(field: &GaloisField) -> Self {
        let coords = field.coords_of(&FpPoly::x(field.prime_field()));
        Self {
            field: field.clone(),
            coords,
        }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        GaloisField::is_zero_coords(&self.coords)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(usage!(
                "field mismatch: F_{}[x]/({}) vs F_{}[x]/({})",
                self.field.p(),
                self.field.modulus,
                other.field.p(),
                other.field.modulus
            ));
        }
        Ok(())
    }

    fn with(&self, coords: Vec<u64>) -> Self {
        Self {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.add_coords(&self.coords, &other.coords)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub_coords(&self.coords, &other.coords)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul_coords(&self.coords, &other.coords)))
    }

    pub fn inv(&self) -> Result<Self> {
        self.field
            .inv_coords(&self.coords)
            .map(|c| self.with(c))
            .ok_or_else(|| domain!("inverse of zero"))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow_coords(&self.coords, e))
    }

    pub fn frobenius(&self) -> Self {
        self.with(self.field.frobenius_coords(&self.coords))
    }
}

/// Single entry point for the four basic operations. Unary operations act
/// on `a`, but `b` must still live in the same field.
pub fn ff_arith(a: &FFElement, b: &FFElement, op: FfOp) -> Result<FFElement> {
    a.same_field(b)?;
    match op {
        FfOp::Add => a.add(b),
        FfOp::Mul => a.mul(b),
        FfOp::Inv => a.inv(),
        FfOp::Frobenius => Ok(a.frobenius()),
    }
}
