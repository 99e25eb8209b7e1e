//! The Hecke algebra acting on cuspidal modular symbols and its local factors.

pub mod eisenstein;
pub mod local;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, primes_up_to, radical, unit_group_generators};
use crate::error::Result;
use crate::ff::{FpMatrix, PrimeField, Span};
use crate::modsym::{
    diamond_operator, hecke_operator, GroupKind, GroupSpec, HeckeOperatorMatrix, ModSymSpace, OpLabel,
};
pub use eisenstein::eisenstein_flag;
pub use local::{
    decompose_operators, gorenstein_test, local_algebra, local_factors, maximal_ideal, ordinarity,
    restricted_on_factor, socle, LocalFactor,
};

/// Subspace of square matrices of fixed size, with coordinates.
#[derive(Clone, Debug)]
pub struct MatrixSpan {
    n: usize,
    span: Span,
}

impl MatrixSpan {
    pub fn new(field: PrimeField, n: usize) -> Self {
        Self {
            n,
            span: Span::new(field, n * n),
        }
    }

    pub fn from_matrices<'a>(field: PrimeField, n: usize, mats: impl IntoIterator<Item = &'a FpMatrix>) -> Self {
        let mut s = Self::new(field, n);
        for m in mats {
            s.insert(m);
        }
        s
    }

    pub fn insert(&mut self, m: &FpMatrix) -> bool {
        self.span.insert(m.data().to_vec())
    }

    pub fn contains(&self, m: &FpMatrix) -> bool {
        self.span.contains(m.data())
    }

    pub fn coordinates(&self, m: &FpMatrix) -> Option<Vec<u64>> {
        self.span.coordinates(m.data())
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn matrices(&self) -> Vec<FpMatrix> {
        let field = self.span.field();
        self.span
            .basis()
            .iter()
            .map(|v| FpMatrix::new(field, self.n, self.n, v.clone()).expect("square"))
            .collect()
    }
}

/// Basis of the unital algebra generated by commuting `gens`, as monomials
/// found by breadth-first multiplication starting from the identity.
pub fn algebra_closure(field: PrimeField, n: usize, gens: &[FpMatrix]) -> Vec<FpMatrix> {
    if n == 0 {
        return Vec::new();
    }
    let id = FpMatrix::identity(field, n);
    let mut span = MatrixSpan::new(field, n);
    span.insert(&id);
    let mut basis = vec![id];
    let mut i = 0;
    while i < basis.len() {
        for g in gens {
            let prod = g.mul(&basis[i]);
            if span.insert(&prod) {
                basis.push(prod);
            }
        }
        i += 1;
    }
    basis
}

/// The `F_p`-algebra generated by `T_l` for primes `l <= bound` and the
/// diamond operators, acting on the cuspidal subspace.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    space: Arc<ModSymSpace>,
    sturm_bound: u64,
    generators: Vec<HeckeOperatorMatrix>,
    t_p: FpMatrix,
    basis: Vec<FpMatrix>,
}

/// Labels of `T_l` for primes `l <= bound` followed by diamond generators.
pub fn generator_labels(group: GroupSpec, bound: u64, exclude: u64) -> Vec<OpLabel> {
    let mut labels: Vec<OpLabel> = primes_up_to(bound)
        .into_iter()
        .filter(|&l| gcd(l, exclude) == 1)
        .map(OpLabel::T)
        .collect();
    if group.kind == GroupKind::Gamma1 {
        labels.extend(unit_group_generators(group.level).into_iter().map(OpLabel::Diamond));
    }
    labels
}

pub fn operator_for(space: &ModSymSpace, label: OpLabel) -> Result<HeckeOperatorMatrix> {
    match label {
        OpLabel::T(n) => hecke_operator(space, n),
        OpLabel::Diamond(d) => diamond_operator(space, d as i64),
    }
}

/// Bound on the primes needed to generate the subalgebra away from `m`:
/// the weight-2 Sturm bound for level `N * rad(m)^2`.
pub fn away_bound(group: GroupSpec, m: u64) -> u64 {
    let r = radical(m.max(1));
    GroupSpec {
        kind: group.kind,
        level: group.level * r * r,
    }
    .sturm_bound()
}

/// Generate the Hecke algebra of `space`. The default bound is the
/// weight-2 Sturm bound of the group.
pub fn generate_algebra(space: impl Into<Arc<ModSymSpace>>, bound: Option<u64>) -> Result<HeckeAlgebra> {
    let space = space.into();
    let sturm_bound = bound.unwrap_or_else(|| space.group().sturm_bound());
    let generators = generator_labels(space.group(), sturm_bound, 1)
        .into_iter()
        .map(|l| operator_for(&space, l))
        .collect::<Result<Vec<_>>>()?;
    let t_p = hecke_operator(&space, space.p())?.matrix;
    let mats: Vec<FpMatrix> = generators.iter().map(|g| g.matrix.clone()).collect();
    let basis = algebra_closure(space.field(), space.cuspidal_dim(), &mats);
    Ok(HeckeAlgebra {
        space,
        sturm_bound,
        generators,
        t_p,
        basis,
    })
}

impl HeckeAlgebra {
    pub fn space(&self) -> &ModSymSpace {
        &self.space
    }

    pub fn field(&self) -> PrimeField {
        self.space.field()
    }

    pub fn p(&self) -> u64 {
        self.space.p()
    }

    pub fn group(&self) -> GroupSpec {
        self.space.group()
    }

    pub fn sturm_bound(&self) -> u64 {
        self.sturm_bound
    }

    pub fn generators(&self) -> &[HeckeOperatorMatrix] {
        &self.generators
    }

    /// `T_p` (or `U_p` if `p` divides the level) on the cuspidal subspace.
    pub fn t_p(&self) -> &FpMatrix {
        &self.t_p
    }

    pub fn basis(&self) -> &[FpMatrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn space_dim(&self) -> usize {
        self.space.cuspidal_dim()
    }

    /// Operators `T_n` with `gcd(n, m) = 1` for primes up to [`away_bound`],
    /// plus diamonds, on the cuspidal subspace.
    pub fn away_generators(&self, m: u64) -> Result<Vec<HeckeOperatorMatrix>> {
        let bound = away_bound(self.group(), m).max(self.sturm_bound);
        generator_labels(self.group(), bound, m)
            .into_iter()
            .map(|l| match self.generators.iter().find(|g| g.label == l) {
                Some(g) => Ok(g.clone()),
                None => operator_for(&self.space, l),
            })
            .collect()
    }

    /// Exact closure check: every product of basis elements lies in the span,
    /// and all basis elements commute.
    pub fn verify_closure(&self) -> bool {
        let n = self.space_dim();
        let span = MatrixSpan::from_matrices(self.field(), n, &self.basis);
        self.basis.iter().all(|a| {
            self.basis.iter().all(|b| {
                let ab = a.mul(b);
                ab == b.mul(a) && span.contains(&ab)
            })
        })
    }
}

/// The subalgebra generated by the operators `T_n` with `gcd(n, m) = 1`.
#[derive(Clone, Debug)]
pub struct RestrictedAlgebra {
    pub excluded: u64,
    pub generator_labels: Vec<OpLabel>,
    pub basis: Vec<FpMatrix>,
    pub parent_dim: usize,
}

impl RestrictedAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn restricted_subalgebra(alg: &HeckeAlgebra, m: u64) -> Result<RestrictedAlgebra> {
    let gens = alg.away_generators(m)?;
    let mats: Vec<FpMatrix> = gens.iter().map(|g| g.matrix.clone()).collect();
    Ok(RestrictedAlgebra {
        excluded: m,
        generator_labels: gens.iter().map(|g| g.label).collect(),
        basis: algebra_closure(alg.field(), alg.space_dim(), &mats),
        parent_dim: alg.dim(),
    })
}

/// Serializable summary of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub dim: usize,
    pub sturm_bound: u64,
    pub generators: Vec<OpLabel>,
}

impl HeckeAlgebra {
    pub fn summary(&self) -> AlgebraSummary {
        AlgebraSummary {
            dim: self.dim(),
            sturm_bound: self.sturm_bound,
            generators: self.generators.iter().map(|g| g.label).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modsym::build_space;

    #[test]
    fn documented_algebras() {
        let a = generate_algebra(build_space(5, GroupSpec::gamma0(11)).unwrap(), None).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.verify_closure());
        assert_eq!(restricted_subalgebra(&a, 1).unwrap().dim(), 1);
        assert_eq!(restricted_subalgebra(&a, 5).unwrap().dim(), 1);

        let b = generate_algebra(build_space(2, GroupSpec::gamma0(23)).unwrap(), None).unwrap();
        assert_eq!(b.dim(), 2);
        let z = generate_algebra(build_space(3, GroupSpec::gamma0(5)).unwrap(), None).unwrap();
        assert_eq!(z.dim(), 0);
    }

    #[test]
    fn restricted_with_m_one_is_everything() {
        for n in [37u64, 43, 53] {
            let a = generate_algebra(build_space(2, GroupSpec::gamma0(n)).unwrap(), None).unwrap();
            let r = restricted_subalgebra(&a, 1).unwrap();
            let span = MatrixSpan::from_matrices(a.field(), a.space_dim(), a.basis());
            assert_eq!(r.dim(), a.dim());
            assert!(r.basis.iter().all(|m| span.contains(m)));
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(GroupSpec::gamma0(431).sturm_bound(), 72);
        assert_eq!(away_bound(GroupSpec::gamma0(431), 2), 432);
        assert_eq!(
            generator_labels(GroupSpec::gamma1(7), 3, 1),
            vec![OpLabel::T(2), OpLabel::T(3), OpLabel::Diamond(2), OpLabel::Diamond(3)]
        );
    }
}
