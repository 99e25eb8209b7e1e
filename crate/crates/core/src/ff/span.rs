use super::matrix::FpMatrix;
use super::prime::PrimeField;

/// Incrementally built subspace of `F_p^len` that remembers how each
/// echelon row was obtained from the inserted vectors, so membership
/// queries can return coordinates in the inserted basis.
#[derive(Clone, Debug)]
pub struct Span {
    field: PrimeField,
    len: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    rows: Vec<Vec<u64>>,
    combos: Vec<Vec<u64>>,
}

impl Span {
    pub fn new(field: PrimeField, len: usize) -> Self {
        Self {
            field,
            len,
            basis: Vec::new(),
            pivots: Vec::new(),
            rows: Vec::new(),
            combos: Vec::new(),
        }
    }

    pub fn from_vectors(field: PrimeField, len: usize, vectors: impl IntoIterator<Item = Vec<u64>>) -> Self {
        let mut s = Self::new(field, len);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The independent vectors accepted so far, in insertion order.
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Vec<u64>> {
        self.basis
    }

    /// Residual of `v` after elimination, plus the combination of echelon
    /// rows that was subtracted.
    fn reduce(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let f = self.field;
        let mut w = v.to_vec();
        let mut used = vec![0u64; self.rows.len()];
        for (j, (row, &piv)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = w[piv];
            if c == 0 {
                continue;
            }
            used[j] = c;
            let neg = f.neg(c);
            for (x, &r) in w[piv..].iter_mut().zip(&row[piv..]) {
                if r != 0 {
                    *x = f.add(*x, f.mul(neg, r));
                }
            }
        }
        (w, used)
    }

    fn combine(&self, used: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut out = vec![0u64; self.basis.len()];
        for (&c, combo) in used.iter().zip(&self.combos) {
            if c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(combo) {
                *o = f.add(*o, f.mul(c, x));
            }
        }
        out
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the inserted basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        let (w, used) = self.reduce(v);
        w.iter().all(|&x| x == 0).then(|| self.combine(&used))
    }

    /// Adds `v` if it is independent of the current span. Returns whether it was added.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let (w, used) = self.reduce(&v);
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let s = f.inv(w[piv]);
        let row: Vec<u64> = w.iter().map(|&x| f.mul(s, x)).collect();
        // row = s * (v - sum used_j * row_j), expressed in the basis.
        let mut combo: Vec<u64> = self.combine(&used).into_iter().map(|x| f.mul(s, f.neg(x))).collect();
        combo.push(s);
        for c in &mut self.combos {
            c.push(0);
        }
        self.basis.push(v);
        self.pivots.push(piv);
        self.rows.push(row);
        self.combos.push(combo);
        true
    }

    /// Basis vectors as the columns of a `len x dim` matrix.
    pub fn basis_matrix(&self) -> FpMatrix {
        FpMatrix::from_columns(self.field, self.len, &self.basis)
    }
}

/// Matrix of `op` restricted to the invariant subspace spanned by `basis`,
/// in that basis. `None` if the subspace is not invariant.
pub fn restrict_operator(op: &FpMatrix, basis: &[Vec<u64>]) -> Option<FpMatrix> {
    let span = Span::from_vectors(op.field(), op.cols(), basis.iter().cloned());
    restrict_with_span(op, &span)
}

/// As [`restrict_operator`], reusing a prebuilt span whose basis is independent.
pub fn restrict_with_span(op: &FpMatrix, span: &Span) -> Option<FpMatrix> {
    let d = span.dim();
    let mut cols = Vec::with_capacity(d);
    for b in span.basis() {
        cols.push(span.coordinates(&op.mul_vec(b))?);
    }
    Some(FpMatrix::from_columns(op.field(), d, &cols))
}

/// Intersection of two subspaces given by bases of vectors of length `len`.
pub fn intersect(field: PrimeField, len: usize, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve sum x_i a_i = sum y_j b_j via the kernel of [A | -B].
    let mut cols: Vec<Vec<u64>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|&x| field.neg(x)).collect()));
    let m = FpMatrix::from_columns(field, len, &cols);
    let mut out = Span::new(field, len);
    for k in m.kernel_basis() {
        let mut v = vec![0u64; len];
        for (i, ai) in a.iter().enumerate() {
            if k[i] != 0 {
                for (o, &x) in v.iter_mut().zip(ai) {
                    *o = field.add(*o, field.mul(k[i], x));
                }
            }
        }
        out.insert(v);
    }
    out.into_basis()
}
