use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::FpPoly;
use super::prime::PrimeField;
use crate::error::{usage, Result};

/// Dense row-major matrix over `F_p`. Operators act on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// How many products of two residues fit in a `u64` accumulator.
#[inline]
fn lazy_budget(p: u64) -> usize {
    let m = (p - 1).max(1);
    ((u64::MAX - m) / (m * m)).min(1 << 20) as usize
}

impl FpMatrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(usage!("{} entries supplied for a {rows}x{cols} matrix", data.len()));
        }
        let p = field.p();
        Ok(Self {
            field,
            rows,
            cols,
            data: data.into_iter().map(|x| x % p).collect(),
        })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        Self::scalar(field, n, 1)
    }

    pub fn scalar(field: PrimeField, n: usize, c: u64) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % field.p();
        }
        m
    }

    pub fn diag(field: PrimeField, entries: &[u64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(field, n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = e % field.p();
        }
        m
    }

    pub fn from_fn(field: PrimeField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let p = field.p();
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols) % p).collect();
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    /// From signed integer rows; all rows must have equal length.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(usage!("ragged rows"));
        }
        let data = rows.iter().flatten().map(|&x| field.reduce(x)).collect();
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors of length `len`.
    pub fn from_columns(field: PrimeField, len: usize, columns: &[Vec<u64>]) -> Self {
        Self::from_fn(field, len, columns.len(), |i, j| columns[j][i])
    }

    /// Matrix whose rows are the given vectors of length `len`.
    pub fn from_row_vectors(field: PrimeField, len: usize, rows: &[Vec<u64>]) -> Self {
        Self::from_fn(field, rows.len(), len, |i, j| rows[i][j])
    }

    /// Companion matrix of a monic polynomial of degree `n >= 1`: ones on the
    /// subdiagonal and minus the low coefficients in the last column.
    pub fn companion(f: &FpPoly) -> Result<Self> {
        let n = match f.degree() {
            Some(n) if n >= 1 && f.is_monic() => n,
            _ => return Err(usage!("companion matrix needs a monic polynomial of positive degree")),
        };
        let field = f.field();
        let mut m = Self::zeros(field, n, n);
        for i in 1..n {
            m.data[i * n + i - 1] = 1;
        }
        for i in 0..n {
            m.data[i * n + n - 1] = field.neg(f.coeff(i));
        }
        Ok(m)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn require_square(&self, what: &str) -> Result<()> {
        if !self.is_square() {
            return Err(usage!("{what} needs a square matrix, got {}x{}", self.rows, self.cols));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        assert_eq!(self.field, other.field, "characteristic mismatch");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Self {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        let c = c % f.p();
        Self {
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: u64, other: &Self) -> Self {
        let f = self.field;
        let c = c % f.p();
        self.zip_with(other, |a, b| f.add(a, f.mul(c, b)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        assert_eq!(self.field, other.field, "characteristic mismatch");
        let p = self.p();
        let budget = lazy_budget(p);
        let (n, m) = (self.rows, other.cols);
        let mut out = vec![0u64; n * m];
        let mut acc = vec![0u64; m];
        for i in 0..n {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut pending = 0usize;
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (x, &b) in acc.iter_mut().zip(other.row(k)) {
                    *x += a * b;
                }
                pending += 1;
                if pending == budget {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 1;
                }
            }
            for (o, &x) in out[i * m..(i + 1) * m].iter_mut().zip(&acc) {
                *o = x % p;
            }
        }
        Self {
            field: self.field,
            rows: n,
            cols: m,
            data: out,
        }
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let p = self.p();
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0u64, |s, (&a, &b)| (s + a * b) % p))
            .collect()
    }

    /// `v M` for a row vector `v`.
    pub fn vec_mul(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let f = self.field;
        let mut out = vec![0u64; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(a, b));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `f(M)` by Horner's rule.
    pub fn eval_poly(&self, f: &FpPoly) -> Result<Self> {
        self.require_square("polynomial evaluation")?;
        let n = self.rows;
        let mut acc = Self::zeros(self.field, n, n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let d = &mut acc.data[i * n + i];
                *d = self.field.add(*d, c);
            }
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.field, self.rows)
    }

    /// Scalar `c` if the matrix equals `c * I`.
    pub fn as_scalar(&self) -> Option<u64> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 { 0 } else { self.get(0, 0) };
        (*self == Self::scalar(self.field, self.rows, c)).then_some(c)
    }

    pub fn trace(&self) -> u64 {
        (0..self.rows.min(self.cols)).fold(0, |s, i| self.field.add(s, self.get(i, i)))
    }

    /// Entries `rows[i], cols[j]` of the original.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Reduced row echelon form and pivot columns. Pivots are the first
    /// nonzero entry in column order, so the output is deterministic.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            for j in c..cols {
                let x = &mut self.data[r * cols + j];
                *x = f.mul(*x, inv);
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            for other in before.chunks_mut(cols).chain(after.chunks_mut(cols)) {
                let factor = other[c];
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for j in c..cols {
                    other[j] = f.add(other[j], f.mul(neg, pivot_row[j]));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u64; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else {
                u64::from(j - n == i)
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(aug.select(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Entries as signed rows, convenient for serialization.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        self.to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as i64).collect())
            .collect()
    }
}

/// Basis of the right kernel of `m`.
pub fn kernel_basis(m: &FpMatrix) -> Vec<Vec<u64>> {
    m.kernel_basis()
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix({}x{} over F_{})", self.rows, self.cols, self.p())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u64::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(FpMatrix::zeros(fp(3), 3, 3).kernel_basis().len(), 3);
        assert!(FpMatrix::identity(fp(7), 4).kernel_basis().is_empty());
        let m = FpMatrix::from_rows(fp(2), &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(kernel_basis(&m), vec![vec![1, 1]]);
    }

    #[test]
    fn inverse_and_companion() {
        let f = fp(5);
        let m = FpMatrix::from_rows(f, &[vec![1, 2], vec![3, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = FpMatrix::from_rows(f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(sing.inverse().is_none());
        let c = FpMatrix::companion(&FpPoly::from_i64(f, &[1, 2, 3, 1])).unwrap();
        let g = FpPoly::from_i64(f, &[1, 2, 3, 1]);
        assert!(c.eval_poly(&g).unwrap().is_zero());
    }

    #[test]
    fn lazy_accumulation_is_exact() {
        let f = fp(2_147_483_647);
        let a = FpMatrix::from_fn(f, 9, 9, |i, j| f.p() - 1 - (i * j) as u64);
        let b = a.transpose();
        let slow = FpMatrix::from_fn(f, 9, 9, |i, j| {
            (0..9).fold(0, |s, k| f.add(s, f.mul(a.get(i, k), b.get(k, j))))
        });
        assert_eq!(a.mul(&b), slow);
    }

    fn matrix_strategy() -> impl Strategy<Value = FpMatrix> {
        (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..7, 1usize..7).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0..p, r * c).prop_map(move |d| FpMatrix::new(fp(p), r, c, d).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in matrix_strategy()) {
            let ker = m.kernel_basis();
            prop_assert_eq!(ker.len() + m.rank(), m.cols());
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
            let k = FpMatrix::from_columns(m.field(), m.cols(), &ker);
            prop_assert_eq!(k.rank(), ker.len());
        }

        #[test]
        fn transpose_rank(m in matrix_strategy()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
