//! The geometric Frobenius on `Hom_{F_p[V]}(M, F̄_p)`.
//!
//! A point is a map `φ(v) = x·v` with `φ(Av) = σ^{-1}(φ(v))`, that is
//! `σ(x) = x A^{-1}`. Solutions lie in `F_q^n` for `q = p^K`, `K` the order
//! of `A`, and form an `F_p`-space of dimension `n`. The Frobenius
//! `τ = σ^{-1}` on values sends `φ` to `φ ∘ A`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, integrity, usage, Result};
use crate::ff::{matrix_order, rcf, FpMatrix, GaloisField, Span};

/// Largest extension degree used for the points.
pub const POINTS_MAX_DEGREE: u64 = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointsFrobenius {
    pub p: u64,
    pub n: usize,
    /// Degree `K` of the field `F_{p^K}` holding the points.
    pub degree: usize,
    /// Modulus of that field, ascending coefficients.
    pub modulus: Vec<u64>,
    /// Matrix of `τ` in the computed basis `φ_1..φ_n` (column `j` holds `τ(φ_j)`).
    pub b: Vec<Vec<u64>>,
    /// `E[i][j] = φ_j(e_i)`, entries in `F_{p^K}` coordinates.
    pub evaluation: Vec<Vec<Vec<u64>>>,
    /// `E` is invertible over `F_{p^K}`.
    pub evaluation_invertible: bool,
    /// `ᵗA E = E B`, i.e. `ᵗA = E B E^{-1}`.
    pub identity_holds: bool,
    /// `rcf(B) = rcf(ᵗA)` over `F_p`.
    pub conjugate: bool,
}

impl PointsFrobenius {
    pub fn passed(&self) -> bool {
        self.evaluation_invertible && self.identity_holds && self.conjugate
    }
}

fn rank_over(gf: &GaloisField, mut rows: Vec<Vec<Vec<u64>>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !GaloisField::is_zero_coords(&rows[r][c])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = gf.inv_coords(&rows[rank][c]).expect("nonzero pivot");
        let prow: Vec<Vec<u64>> = rows[rank].iter().map(|x| gf.mul_coords(x, &inv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !GaloisField::is_zero_coords(&row[c]) {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = gf.sub_coords(x, &gf.mul_coords(&factor, y));
                }
            }
        }
        rows[rank] = prow;
        rank += 1;
    }
    rank
}

/// Compute `τ` on the points of the module with `V = a`.
pub fn frobenius_on_points(a: &FpMatrix) -> Result<PointsFrobenius> {
    a.require_square("frobenius_on_points")?;
    let field = a.field();
    let n = a.rows();
    let a_inv = a
        .inverse()
        .ok_or_else(|| domain!("V must be bijective: connected with étale dual"))?;
    let order = matrix_order(a, POINTS_MAX_DEGREE)
        .ok_or_else(|| usage!("A has order above {POINTS_MAX_DEGREE}; the points field would be too large"))?;
    let k = order as usize;
    let gf = GaloisField::with_degree(field, k);
    let len = n * k;

    // Matrix of σ on F_q in coordinates.
    let sigma_cols: Vec<Vec<u64>> = (0..k)
        .map(|t| {
            let mut e = vec![0u64; k];
            e[t] = 1;
            gf.frobenius_coords(&e)
        })
        .collect();
    // Columns of x -> σ(x) - x A^{-1}, with x_i digit t at index i k + t.
    let mut cols = Vec::with_capacity(len);
    for i in 0..n {
        for t in 0..k {
            let mut col = vec![0u64; len];
            for s in 0..k {
                col[i * k + s] = sigma_cols[t][s];
            }
            for j in 0..n {
                let c = a_inv.get(i, j);
                col[j * k + t] = field.sub(col[j * k + t], c);
            }
            cols.push(col);
        }
    }
    let system = FpMatrix::from_columns(field, len, &cols);
    let sols = system.kernel_basis();
    if sols.len() != n {
        return Err(integrity!("points space has dimension {}, expected {n}", sols.len()));
    }
    let entry = |x: &[u64], j: usize| x[j * k..(j + 1) * k].to_vec();
    let span = Span::from_vectors(field, len, sols.iter().cloned());
    // τ(x) = x A, row i of the row-convention matrix.
    let mut b_row = Vec::with_capacity(n);
    for x in &sols {
        let mut y = vec![0u64; len];
        for j in 0..n {
            for i in 0..n {
                let c = a.get(i, j);
                if c != 0 {
                    let xi = entry(x, i);
                    for t in 0..k {
                        y[j * k + t] = field.add(y[j * k + t], field.mul(c, xi[t]));
                    }
                }
            }
        }
        b_row.push(
            span.coordinates(&y)
                .ok_or_else(|| integrity!("τ does not preserve the points"))?,
        );
    }
    let b = FpMatrix::from_fn(field, n, n, |i, j| b_row[j][i]);
    let evaluation: Vec<Vec<Vec<u64>>> = (0..n).map(|i| sols.iter().map(|x| entry(x, i)).collect()).collect();

    // ᵗA E and E B, both with F_p scalars acting on F_q entries.
    let at = a.transpose();
    let combine = |coefs: Vec<(u64, &Vec<u64>)>| {
        coefs.into_iter().fold(gf.zero_coords(), |acc, (c, v)| {
            gf.add_coords(&acc, &gf.scale_coords(c, v))
        })
    };
    let mut identity_holds = true;
    for i in 0..n {
        for j in 0..n {
            let lhs = combine((0..n).map(|l| (at.get(i, l), &evaluation[l][j])).collect());
            let rhs = combine((0..n).map(|l| (b.get(l, j), &evaluation[i][l])).collect());
            identity_holds &= lhs == rhs;
        }
    }
    Ok(PointsFrobenius {
        p: field.p(),
        n,
        degree: k,
        modulus: gf.modulus().coeffs().to_vec(),
        b: b.to_rows(),
        evaluation_invertible: rank_over(&gf, evaluation.clone()) == n,
        evaluation,
        identity_holds,
        conjugate: rcf(&b)? == rcf(&at)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{FpPoly, PrimeField};

    #[test]
    fn identity_module() {
        let f3 = PrimeField::new(3).unwrap();
        let r = frobenius_on_points(&FpMatrix::identity(f3, 3)).unwrap();
        assert_eq!(r.degree, 1);
        assert_eq!(r.b, FpMatrix::identity(f3, 3).to_rows());
        assert!(r.passed());
    }

    #[test]
    fn diagonal_over_f5() {
        let f5 = PrimeField::new(5).unwrap();
        let r = frobenius_on_points(&FpMatrix::diag(f5, &[1, 2])).unwrap();
        assert_eq!(r.degree, 4);
        assert!(r.passed());
        let b = FpMatrix::from_rows(
            f5,
            &r.b.iter()
                .map(|row| row.iter().map(|&x| x as i64).collect())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(b, FpMatrix::diag(f5, &[1, 2]));
    }

    #[test]
    fn companion_over_f2_needs_f8() {
        let f2 = PrimeField::new(2).unwrap();
        let a = FpMatrix::companion(&FpPoly::from_i64(f2, &[1, 1, 1])).unwrap();
        let r = frobenius_on_points(&a).unwrap();
        assert_eq!(r.degree, 3);
        assert!(r.passed());
    }

    #[test]
    fn singular_is_rejected() {
        let f2 = PrimeField::new(2).unwrap();
        assert!(frobenius_on_points(&FpMatrix::zeros(f2, 2, 2)).is_err());
    }
}
