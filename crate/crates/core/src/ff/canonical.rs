//! Characteristic and minimal polynomials and the rational canonical form.
//!
//! The three are computed by independent routes (Hessenberg reduction,
//! Krylov sequences, nullities of powers of `f(M)`) so that each can be used
//! as a check on the others.

use serde::{Deserialize, Serialize};

use super::factor::factor_poly;
use super::matrix::FpMatrix;
use super::poly::FpPoly;
use super::span::Span;
use crate::error::{usage, Result};

/// Characteristic polynomial `det(x I - M)` via reduction to upper
/// Hessenberg form followed by the standard recurrence.
pub fn char_poly(m: &FpMatrix) -> Result<FpPoly> {
    m.require_square("char_poly")?;
    let f = m.field();
    let n = m.rows();
    let mut h: Vec<Vec<u64>> = m.to_rows();
    for col in 1..n {
        let Some(piv) = (col..n).find(|&i| h[i][col - 1] != 0) else {
            continue;
        };
        if piv != col {
            h.swap(piv, col);
            for row in h.iter_mut() {
                row.swap(piv, col);
            }
        }
        let inv = f.inv(h[col][col - 1]);
        for i in col + 1..n {
            let u = f.mul(h[i][col - 1], inv);
            if u == 0 {
                continue;
            }
            let pivot = h[col].clone();
            for (x, &y) in h[i].iter_mut().zip(&pivot) {
                *x = f.sub(*x, f.mul(u, y));
            }
            for row in h.iter_mut() {
                row[col] = f.add(row[col], f.mul(u, row[i]));
            }
        }
    }
    let x = FpPoly::x(f);
    let mut polys = vec![FpPoly::one(f)];
    for k in 1..=n {
        let mut pk = x.sub(&FpPoly::constant(f, h[k - 1][k - 1])).mul(&polys[k - 1]);
        let mut prod = 1u64;
        for i in (1..k).rev() {
            prod = f.mul(prod, h[i][i - 1]);
            if prod == 0 {
                break;
            }
            let c = f.mul(h[i - 1][k - 1], prod);
            pk = pk.sub(&polys[i - 1].scale(c));
        }
        polys.push(pk);
    }
    Ok(polys.pop().unwrap())
}

/// Minimal polynomial as the lcm of the local minimal polynomials of a
/// sequence of Krylov subspaces covering the whole space.
pub fn min_poly(m: &FpMatrix) -> Result<FpPoly> {
    m.require_square("min_poly")?;
    let f = m.field();
    let n = m.rows();
    let mut covered = Span::new(f, n);
    let mut acc = FpPoly::one(f);
    for i in 0..n {
        let mut e = vec![0u64; n];
        e[i] = 1;
        if covered.contains(&e) {
            continue;
        }
        let mut local = Span::new(f, n);
        let mut v = e;
        let relation = loop {
            if let Some(c) = local.coordinates(&v) {
                break c;
            }
            local.insert(v.clone());
            covered.insert(v.clone());
            v = m.mul_vec(&v);
        };
        // A^d v = sum c_j A^j v, so x^d - sum c_j x^j annihilates v.
        let d = relation.len();
        let mut coeffs: Vec<u64> = relation.iter().map(|&c| f.neg(c)).collect();
        coeffs.push(1);
        debug_assert_eq!(coeffs.len(), d + 1);
        acc = acc.lcm(&FpPoly::new(f, coeffs));
    }
    Ok(acc)
}

/// Rational canonical form data: invariant factors `f_1 | f_2 | ... | f_r`,
/// each monic of positive degree, with product equal to the characteristic
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rcf {
    pub invariant_factors: Vec<FpPoly>,
}

impl Rcf {
    /// The block-diagonal matrix of companion blocks.
    pub fn matrix(&self) -> FpMatrix {
        let field = self.invariant_factors[0].field();
        let n: usize = self.invariant_factors.iter().map(|g| g.degree().unwrap()).sum();
        let mut out = FpMatrix::zeros(field, n, n);
        let mut off = 0;
        for g in &self.invariant_factors {
            let c = FpMatrix::companion(g).expect("invariant factors are monic");
            let d = c.rows();
            for i in 0..d {
                for j in 0..d {
                    out.set(off + i, off + j, c.get(i, j));
                }
            }
            off += d;
        }
        out
    }
}

/// Elementary divisors as `(irreducible, exponent)` pairs, from the
/// nullities of powers of `g(M)` for each irreducible factor `g` of the
/// characteristic polynomial.
pub fn elementary_divisors(m: &FpMatrix) -> Result<Vec<(FpPoly, u32)>> {
    m.require_square("elementary_divisors")?;
    let n = m.rows();
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    for (g, e) in factor_poly(&char_poly(m)?)? {
        let d = g.degree().unwrap();
        let b = m.eval_poly(&g)?;
        let full = d * e as usize;
        let mut nullities = vec![0usize];
        let mut power = b.clone();
        loop {
            let k = power.nullity();
            nullities.push(k);
            if k == full {
                break;
            }
            power = power.mul(&b);
        }
        // at_least[j] = number of blocks of size >= j
        let at_least: Vec<usize> = nullities.windows(2).map(|w| (w[1] - w[0]) / d).collect();
        for j in 0..at_least.len() {
            let exactly = at_least[j] - at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..exactly {
                out.push((g.clone(), j as u32 + 1));
            }
        }
    }
    Ok(out)
}

pub fn rcf(m: &FpMatrix) -> Result<Rcf> {
    m.require_square("rcf")?;
    let field = m.field();
    let elem = elementary_divisors(m)?;
    let mut by_prime: Vec<(FpPoly, Vec<u32>)> = Vec::new();
    for (g, e) in elem {
        match by_prime.iter_mut().find(|(h, _)| *h == g) {
            Some((_, v)) => v.push(e),
            None => by_prime.push((g, vec![e])),
        }
    }
    let r = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut factors = vec![FpPoly::one(field); r];
    for (g, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        // The largest exponents go to the last (largest) invariant factor.
        for (i, e) in exps.into_iter().enumerate() {
            let slot = r - 1 - i;
            factors[slot] = factors[slot].mul(&g.pow(e as u64));
        }
    }
    Ok(Rcf {
        invariant_factors: factors,
    })
}

/// Similarity over `F_p`, decided by comparing rational canonical forms.
pub fn conjugate_over_fp(a: &FpMatrix, b: &FpMatrix) -> Result<bool> {
    a.require_square("conjugate_over_fp")?;
    b.require_square("conjugate_over_fp")?;
    if a.rows() != b.rows() {
        return Err(usage!("size mismatch: {} vs {}", a.rows(), b.rows()));
    }
    if a.field() != b.field() {
        return Err(usage!("characteristic mismatch: {} vs {}", a.p(), b.p()));
    }
    Ok(rcf(a)? == rcf(b)?)
}

/// Multiplicative order of an invertible matrix, searched up to `cap`.
pub fn matrix_order(m: &FpMatrix, cap: u64) -> Option<u64> {
    if !m.is_invertible() {
        return None;
    }
    let mut acc = m.clone();
    for k in 1..=cap {
        if acc.is_identity() {
            return Some(k);
        }
        acc = acc.mul(m);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::PrimeField;
    use proptest::prelude::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn documented_examples() {
        let f = fp(5);
        let id = FpMatrix::identity(f, 3);
        assert_eq!(min_poly(&id).unwrap(), FpPoly::linear(f, 1));
        assert_eq!(char_poly(&id).unwrap(), FpPoly::linear(f, 1).pow(3));

        let g = FpPoly::from_i64(f, &[2, 0, 1, 4, 1]);
        let c = FpMatrix::companion(&g).unwrap();
        assert_eq!(min_poly(&c).unwrap(), g);
        assert_eq!(char_poly(&c).unwrap(), g);

        let d = FpMatrix::diag(f, &[1, 2]);
        assert_eq!(min_poly(&d).unwrap(), FpPoly::linear(f, 1).mul(&FpPoly::linear(f, 2)));

        let f2 = fp(2);
        let x1 = FpPoly::from_i64(f2, &[1, 1]);
        assert_eq!(
            rcf(&FpMatrix::identity(f2, 2)).unwrap().invariant_factors,
            vec![x1.clone(), x1]
        );
        let q = FpPoly::from_i64(f2, &[1, 1, 1]);
        assert_eq!(
            rcf(&FpMatrix::companion(&q).unwrap()).unwrap().invariant_factors,
            vec![q]
        );

        let f3 = fp(3);
        let j = FpMatrix::from_rows(f3, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(rcf(&j).unwrap().invariant_factors, vec![FpPoly::linear(f3, 1).pow(2)]);
    }

    #[test]
    fn conjugacy_examples() {
        let f = fp(5);
        let j = FpMatrix::from_rows(f, &[vec![1, 1], vec![0, 1]]).unwrap();
        let id = FpMatrix::identity(f, 2);
        assert!(conjugate_over_fp(&j, &j).unwrap());
        assert!(!conjugate_over_fp(&id, &j).unwrap());
        assert!(conjugate_over_fp(&id, &FpMatrix::identity(f, 3)).is_err());
        assert!(conjugate_over_fp(&id, &FpMatrix::identity(fp(3), 2)).is_err());
        assert!(min_poly(&FpMatrix::zeros(f, 2, 3)).is_err());
    }

    #[test]
    fn rcf_matrix_is_conjugate() {
        let f = fp(3);
        let m = FpMatrix::from_rows(
            f,
            &[vec![2, 1, 0, 0], vec![0, 2, 0, 0], vec![0, 0, 2, 0], vec![1, 0, 0, 1]],
        )
        .unwrap();
        let r = rcf(&m).unwrap();
        assert!(conjugate_over_fp(&m, &r.matrix()).unwrap());
        assert_eq!(matrix_order(&FpMatrix::identity(f, 3), 10), Some(1));
    }

    fn square_strategy() -> impl Strategy<Value = FpMatrix> {
        (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..8).prop_flat_map(|(p, n)| {
            prop::collection::vec(prop::sample::select(vec![0u64, 0, 0, 1, 1, 2, 3, 4, 5, 6]), n * n)
                .prop_map(move |d| FpMatrix::new(fp(p), n, n, d).unwrap())
        })
    }

    proptest! {
        #[test]
        fn polynomial_invariants(m in square_strategy()) {
            let n = m.rows();
            let mp = min_poly(&m).unwrap();
            let cp = char_poly(&m).unwrap();
            prop_assert_eq!(cp.degree(), Some(n));
            prop_assert!(m.eval_poly(&mp).unwrap().is_zero());
            prop_assert!(m.eval_poly(&cp).unwrap().is_zero());
            prop_assert!(mp.divides(&cp));
            prop_assert!(cp.divides(&mp.pow(n as u64)));
            let r = rcf(&m).unwrap();
            let last = r.invariant_factors.last().unwrap();
            prop_assert_eq!(last, &mp);
            let prod = r.invariant_factors.iter().fold(FpPoly::one(m.field()), |a, g| a.mul(g));
            prop_assert_eq!(prod, cp);
            for w in r.invariant_factors.windows(2) {
                prop_assert!(w[0].divides(&w[1]));
            }
            prop_assert_eq!(rcf(&m.transpose()).unwrap(), r);
        }
    }
}
