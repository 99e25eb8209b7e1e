//! The truncated covector check in `O/π²O`.
//!
//! Here `O` is the ring of integers of `W(F_q)[ζ_p]` with uniformizer `π`,
//! `π^(p-1) = -p`. Elements of `O/π²O` are written `a + bπ` with Teichmüller
//! digits `a, b` in `F_q`. For `p >= 3`, `p` lies in `π²O` and addition is
//! digitwise. For `p = 2`, `π = -2` and Teichmüller digits carry:
//! `[a] + [c] = [a + c] + π[sqrt(ac)]`.

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::ff::{GaloisField, PrimeField};

/// Largest residue field order enumerated exhaustively.
pub const WITT_MAX_ORDER: u64 = 256;

type Elem = (Vec<u64>, Vec<u64>);

#[derive(Clone, Debug)]
pub struct TruncatedWittRing {
    field: GaloisField,
}

impl TruncatedWittRing {
    pub fn new(field: GaloisField) -> Self {
        Self { field }
    }

    pub fn residue_field(&self) -> &GaloisField {
        &self.field
    }

    pub fn zero(&self) -> Elem {
        (self.field.zero_coords(), self.field.zero_coords())
    }

    pub fn teichmuller(&self, a: &[u64]) -> Elem {
        (a.to_vec(), self.field.zero_coords())
    }

    pub fn pi(&self) -> Elem {
        (self.field.zero_coords(), self.field.one_coords())
    }

    fn sqrt(&self, a: &[u64]) -> Vec<u64> {
        // Frobenius is bijective on F_q; in characteristic 2 its inverse is the square root.
        self.field.inverse_frobenius_coords(a)
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        let f = &self.field;
        let a = f.add_coords(&x.0, &y.0);
        let mut b = f.add_coords(&x.1, &y.1);
        if f.p() == 2 {
            b = f.add_coords(&b, &self.sqrt(&f.mul_coords(&x.0, &y.0)));
        }
        (a, b)
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        let f = &self.field;
        if f.p() == 2 {
            // -[a] = [a] + π[a], since [a] + [a] = π[a].
            (x.0.clone(), f.add_coords(&x.1, &x.0))
        } else {
            (f.neg_coords(&x.0), f.neg_coords(&x.1))
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let f = &self.field;
        let a = f.mul_coords(&x.0, &y.0);
        let b0 = self.teichmuller(&f.mul_coords(&x.0, &y.1));
        let b1 = self.teichmuller(&f.mul_coords(&x.1, &y.0));
        // The π-digit sum carries into π², which vanishes.
        (a, self.add(&b0, &b1).0)
    }

    pub fn pow(&self, x: &Elem, e: u64) -> Elem {
        let mut acc = self.teichmuller(&self.field.one_coords());
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        GaloisField::is_zero_coords(&x.0) && GaloisField::is_zero_coords(&x.1)
    }

    /// `π(ŷ_0 - ŷ_{-1}^p)`.
    pub fn covector_image(&self, y0: &[u64], y_minus1: &[u64]) -> Elem {
        let diff = self.sub(
            &self.teichmuller(y0),
            &self.pow(&self.teichmuller(y_minus1), self.field.p()),
        );
        self.mul(&self.pi(), &diff)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittReport {
    pub p: u64,
    pub k: usize,
    pub q: u64,
    pub pairs_checked: u64,
    pub kernel_count: u64,
    /// Kernel pairs `(y_0, y_{-1})` in coordinates.
    pub kernel: Vec<(Vec<u64>, Vec<u64>)>,
    /// Every kernel pair satisfies `y_{-1} = σ^{-1}(y_0)` and conversely.
    pub kernel_is_graph: bool,
}

impl WittReport {
    pub fn passed(&self) -> bool {
        self.kernel_is_graph && self.kernel_count == self.q
    }
}

/// Enumerate all pairs in `F_q²` and compare the kernel of the covector map
/// with the graph of inverse Frobenius.
pub fn witt_kernel_check(p: u64, k: usize) -> Result<WittReport> {
    let field = PrimeField::new(p)?;
    if k == 0 {
        return Err(usage!("field degree must be positive"));
    }
    let q = u32::try_from(k)
        .ok()
        .and_then(|e| p.checked_pow(e))
        .filter(|&q| q <= WITT_MAX_ORDER)
        .ok_or_else(|| usage!("q = {p}^{k} exceeds the enumeration limit {WITT_MAX_ORDER}"))?;
    let gf = GaloisField::with_degree(field, k);
    let ring = TruncatedWittRing::new(gf.clone());
    let elements = gf.elements();
    let mut kernel = Vec::new();
    let mut graph = true;
    for y0 in &elements {
        let expected = gf.inverse_frobenius_coords(y0);
        for y1 in &elements {
            let in_kernel = ring.is_zero(&ring.covector_image(y0, y1));
            if in_kernel != (*y1 == expected) {
                graph = false;
            }
            if in_kernel {
                kernel.push((y0.clone(), y1.clone()));
            }
        }
    }
    Ok(WittReport {
        p,
        k,
        q,
        pairs_checked: q * q,
        kernel_count: kernel.len() as u64,
        kernel,
        kernel_is_graph: graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_cases() {
        let r = witt_kernel_check(2, 1).unwrap();
        assert_eq!(r.kernel, vec![(vec![0], vec![0]), (vec![1], vec![1])]);
        assert!(r.passed());
        let r = witt_kernel_check(3, 2).unwrap();
        assert_eq!(r.kernel_count, 9);
        assert!(r.passed());
        assert!(witt_kernel_check(2, 9).is_err());
    }

    #[test]
    fn acceptance_orders() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (2, 8)] {
            assert!(witt_kernel_check(p, k).unwrap().passed(), "q = {p}^{k}");
        }
    }

    #[test]
    fn nonzero_lower_digit_alone_is_not_in_kernel() {
        let gf = GaloisField::with_degree(PrimeField::new(3).unwrap(), 2);
        let ring = TruncatedWittRing::new(gf.clone());
        for y in gf.elements().into_iter().filter(|y| !GaloisField::is_zero_coords(y)) {
            assert!(!ring.is_zero(&ring.covector_image(&gf.zero_coords(), &y)));
        }
    }

    #[test]
    fn ring_axioms_in_characteristic_two() {
        let gf = GaloisField::with_degree(PrimeField::new(2).unwrap(), 2);
        let ring = TruncatedWittRing::new(gf.clone());
        let els: Vec<Elem> = gf
            .elements()
            .iter()
            .flat_map(|a| gf.elements().into_iter().map(move |b| (a.clone(), b)))
            .collect();
        let two = ring.add(&ring.teichmuller(&gf.one_coords()), &ring.teichmuller(&gf.one_coords()));
        assert_eq!(ring.add(&two, &ring.pi()), ring.zero()); // π = -2
        assert!(ring.is_zero(&ring.mul(&ring.pi(), &ring.pi())));
        for x in &els {
            assert!(ring.is_zero(&ring.add(x, &ring.neg(x))));
            for y in &els {
                assert_eq!(ring.add(x, y), ring.add(y, x));
                for z in &els {
                    assert_eq!(ring.add(&ring.add(x, y), z), ring.add(x, &ring.add(y, z)));
                    assert_eq!(ring.mul(x, &ring.add(y, z)), ring.add(&ring.mul(x, y), &ring.mul(x, z)));
                }
            }
        }
    }
}
