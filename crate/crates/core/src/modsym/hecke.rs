use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::heilbronn::heilbronn_merel;
use super::{GroupKind, ModSymSpace};
use crate::arith::{factorize, gcd};
use crate::error::{integrity, usage, Result};
use crate::ff::{restrict_with_span, FpMatrix, Span};

/// Label of an operator in the Hecke algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OpLabel {
    T(u64),
    Diamond(u64),
}

impl fmt::Display for OpLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpLabel::T(n) => write!(f, "T_{n}"),
            OpLabel::Diamond(d) => write!(f, "<{d}>"),
        }
    }
}

/// An operator on the cuspidal subspace, in the space's fixed cuspidal basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeOperatorMatrix {
    pub label: OpLabel,
    pub matrix: FpMatrix,
}

impl ModSymSpace {
    /// Ambient coordinates of `sum_h x h` over the matrices `mats`, for the
    /// Manin symbol with index `sym`.
    pub fn apply_matrices_to_symbol(&self, sym: usize, mats: &[[i64; 4]]) -> Vec<u64> {
        let (u, v) = self.symbols().rep(sym);
        let (u, v) = (u as i64, v as i64);
        let mut acc = vec![0u64; self.ambient_dim()];
        for &[a, b, c, d] in mats {
            if let Some(j) = self.symbols().index_of(u * a + v * c, u * b + v * d) {
                for &(k, x) in self.symbol_vector_sparse(j) {
                    acc[k] += x;
                }
            }
        }
        let p = self.p();
        acc.iter_mut().for_each(|x| *x %= p);
        acc
    }

    /// Operator on the ambient space given by a sum of matrices.
    pub fn ambient_operator(&self, mats: &[[i64; 4]]) -> FpMatrix {
        let cols: Vec<Vec<u64>> = self
            .basis_symbols()
            .iter()
            .map(|&s| self.apply_matrices_to_symbol(s, mats))
            .collect();
        FpMatrix::from_columns(self.field(), self.ambient_dim(), &cols)
    }

    /// `T_n` on the ambient space from Merel's family of determinant `n`.
    pub fn ambient_merel(&self, n: u64) -> FpMatrix {
        self.ambient_operator(&heilbronn_merel(n))
    }

    /// `<d>` on the ambient space: `(c, v) -> (dc, dv)`.
    pub fn ambient_diamond(&self, d: u64) -> FpMatrix {
        let d = d as i64;
        self.ambient_operator(&[[d, 0, 0, d]])
    }

    /// Restrict an ambient operator to the cuspidal subspace.
    pub fn restrict_to_cuspidal(&self, op: &FpMatrix) -> Result<FpMatrix> {
        restrict_with_span(op, self.cuspidal_span())
            .ok_or_else(|| integrity!("operator does not preserve the cuspidal subspace of {}", self.group()))
    }
}

/// `T_n` computed directly from Merel's family of determinant `n`.
pub fn merel_operator(space: &ModSymSpace, n: u64) -> Result<HeckeOperatorMatrix> {
    if n == 0 {
        return Err(usage!("Hecke index must be positive"));
    }
    let matrix = space.restrict_to_cuspidal(&space.ambient_merel(n))?;
    Ok(HeckeOperatorMatrix {
        label: OpLabel::T(n),
        matrix,
    })
}

/// `<d>` on the cuspidal subspace. The identity for `Gamma0`.
pub fn diamond_operator(space: &ModSymSpace, d: i64) -> Result<HeckeOperatorMatrix> {
    let n = space.level();
    if gcd(d.unsigned_abs(), n) != 1 {
        return Err(usage!("<{d}> needs gcd({d}, {n}) = 1"));
    }
    let d = d.rem_euclid(n as i64) as u64;
    let label = OpLabel::Diamond(d);
    if space.group().kind == GroupKind::Gamma0 || d == 1 % n {
        return Ok(HeckeOperatorMatrix {
            label,
            matrix: FpMatrix::identity(space.field(), space.cuspidal_dim()),
        });
    }
    let matrix = space.restrict_to_cuspidal(&space.ambient_diamond(d))?;
    Ok(HeckeOperatorMatrix { label, matrix })
}

/// `T_n` on the cuspidal subspace. Prime indices use Merel's family, prime
/// powers the usual recursion (`U_l^r` when `l` divides the level) and
/// coprime factors multiply.
pub fn hecke_operator(space: &ModSymSpace, n: u64) -> Result<HeckeOperatorMatrix> {
    if n == 0 {
        return Err(usage!("Hecke index must be positive"));
    }
    let dim = space.cuspidal_dim();
    let field = space.field();
    let mut cache = BTreeMap::new();
    let mut matrix = FpMatrix::identity(field, dim);
    for (l, r) in factorize(n) {
        let tl = merel_operator(space, l)?.matrix;
        let pp = if space.level().is_multiple_of(l) {
            tl.pow(r as u64)
        } else {
            let dl = diamond_operator(space, l as i64)?.matrix.scale(l % field.p());
            cache.clear();
            cache.insert(0u32, FpMatrix::identity(field, dim));
            cache.insert(1u32, tl.clone());
            for k in 2..=r {
                let next = tl.mul(&cache[&(k - 1)]).sub(&dl.mul(&cache[&(k - 2)]));
                cache.insert(k, next);
            }
            cache[&r].clone()
        };
        matrix = matrix.mul(&pp);
    }
    Ok(HeckeOperatorMatrix {
        label: OpLabel::T(n),
        matrix,
    })
}

/// Outcome of [`boundary_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub vectors_checked: usize,
    pub operators_checked: Vec<OpLabel>,
    pub passed: bool,
}

/// Recomputes the boundary of every cuspidal basis vector from the Manin
/// symbols and checks that `T_2`, `T_3` and a diamond operator preserve the
/// cuspidal subspace. Any failure is an integrity error.
pub fn boundary_check(space: &ModSymSpace) -> Result<BoundaryReport> {
    boundary_check_basis(space, space.cuspidal_basis())
}

/// As [`boundary_check`], for an explicitly supplied basis.
pub fn boundary_check_basis(space: &ModSymSpace, basis: &[Vec<u64>]) -> Result<BoundaryReport> {
    let field = space.field();
    let group = space.group();
    let ncusps = space.num_cusps();
    let index_of = |key: (u64, u64)| space.cusp_keys().iter().position(|&k| k == key);
    // Boundary of each ambient basis symbol, recomputed from its lift.
    let mut columns = Vec::with_capacity(space.ambient_dim());
    for &s in space.basis_symbols() {
        let (c, d) = space.symbols().rep(s);
        let [a, b, c1, d1] = super::lift_to_sl2(c, d, group.level);
        let (Some(i), Some(j)) = (
            index_of(super::cusp_key(&group, a, c1)),
            index_of(super::cusp_key(&group, b, d1)),
        ) else {
            return Err(integrity!("unknown cusp in the boundary of symbol {s}"));
        };
        let mut col = vec![0u64; ncusps];
        col[i] = field.add(col[i], 1);
        col[j] = field.sub(col[j], 1);
        columns.push(col);
    }
    for (idx, v) in basis.iter().enumerate() {
        if v.len() != space.ambient_dim() {
            return Err(integrity!("basis vector {idx} has the wrong length"));
        }
        let mut image = vec![0u64; ncusps];
        for (k, &x) in v.iter().enumerate() {
            if x != 0 {
                for (o, &y) in image.iter_mut().zip(&columns[k]) {
                    *o = field.add(*o, field.mul(x, y));
                }
            }
        }
        if image.iter().any(|&x| x != 0) {
            return Err(integrity!("cuspidal basis vector {idx} has nonzero boundary"));
        }
    }
    let span = Span::from_vectors(field, space.ambient_dim(), basis.iter().cloned());
    let mut ops = vec![
        (OpLabel::T(2), space.ambient_merel(2)),
        (OpLabel::T(3), space.ambient_merel(3)),
    ];
    if space.group().kind == GroupKind::Gamma1 {
        if let Some(d) = (2..space.level()).find(|&d| gcd(d, space.level()) == 1) {
            ops.push((OpLabel::Diamond(d), space.ambient_diamond(d)));
        }
    }
    for (label, op) in &ops {
        if restrict_with_span(op, &span).is_none() {
            return Err(integrity!("{label} does not preserve the cuspidal subspace"));
        }
    }
    Ok(BoundaryReport {
        vectors_checked: basis.len(),
        operators_checked: ops.into_iter().map(|(l, _)| l).collect(),
        passed: true,
    })
}
