//! Local factors `T_m` of a Hecke algebra.
//!
//! The cuspidal space is split by generalized eigenspaces of the generators
//! in label order. Each piece is then tested for locality: with `I` the span
//! of `f_g(g) * T` (where `f_g` is the irreducible minimal polynomial of the
//! generator on the piece), `T/I` is reduced, so it is a field exactly when
//! the Frobenius-fixed subspace of `T/I` is one-dimensional. Otherwise a
//! fixed non-scalar element separates the maximal ideals and the piece is
//! split again.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{algebra_closure, HeckeAlgebra, MatrixSpan};
use crate::error::{integrity, Result};
use crate::ff::{factor_poly, min_poly, restrict_operator, FpMatrix, FpPoly, GaloisField, PrimeField, Span};
use crate::modsym::OpLabel;

/// A local factor: an invariant subspace `W` of the cuspidal space and the
/// local algebra `T_m` of operators it induces on `W`.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub index: usize,
    /// Basis of `W` in cuspidal coordinates.
    pub subspace: Vec<Vec<u64>>,
    /// Generators restricted to `W`, in the algebra's label order.
    pub generators: Vec<(OpLabel, FpMatrix)>,
    /// For each generator, the irreducible `f_g` with `min_poly(g|W) = f_g^e`.
    pub generator_factors: Vec<FpPoly>,
    /// `T_p` restricted to `W`.
    pub t_p: FpMatrix,
    /// Basis of `T_m`.
    pub basis: Vec<FpMatrix>,
    /// Basis of the maximal ideal `m`.
    pub maximal_ideal: Vec<FpMatrix>,
    pub residue_degree: usize,
    pub residue_field: GaloisField,
    /// Residue-field image of each generator, in powers of the primitive element.
    pub eigenvalues: Vec<(OpLabel, Vec<u64>)>,
    residue: Span,
}

impl LocalFactor {
    pub fn field(&self) -> PrimeField {
        self.residue_field.prime_field()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn subspace_dim(&self) -> usize {
        self.subspace.len()
    }

    /// Image in the residue field of an element of `T_m` (given on `W`),
    /// or `None` if the matrix does not lie in `T_m`.
    pub fn residue_of(&self, m: &FpMatrix) -> Option<Vec<u64>> {
        let coords = self.residue.coordinates(m.data())?;
        let r = self.maximal_ideal.len();
        Some(coords[r..].to_vec())
    }

    /// Restrict an operator on the cuspidal space to `W`.
    pub fn restrict(&self, op: &FpMatrix) -> Result<FpMatrix> {
        restrict_operator(op, &self.subspace)
            .ok_or_else(|| integrity!("operator does not preserve local factor {}", self.index))
    }

    pub fn summary(&self) -> FactorSummary {
        FactorSummary {
            index: self.index,
            dim_t: self.dim(),
            dim_m: self.maximal_ideal.len(),
            subspace_dim: self.subspace_dim(),
            residue_degree: self.residue_degree,
            residue_modulus: self.residue_field.modulus().coeffs().to_vec(),
            eigenvalues: self.eigenvalues.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSummary {
    pub index: usize,
    pub dim_t: usize,
    pub dim_m: usize,
    pub subspace_dim: usize,
    pub residue_degree: usize,
    /// Coefficients of the residue field modulus, ascending.
    pub residue_modulus: Vec<u64>,
    pub eigenvalues: Vec<(OpLabel, Vec<u64>)>,
}

/// Split `piece` (vectors in ambient coordinates of length `len`) by the
/// generalized eigenspaces of `a`, the matrix of an operator on the piece.
fn split_piece(field: PrimeField, len: usize, piece: &[Vec<u64>], a: &FpMatrix) -> Result<Vec<Vec<Vec<u64>>>> {
    let facs = factor_poly(&min_poly(a)?)?;
    if facs.len() <= 1 {
        return Ok(vec![piece.to_vec()]);
    }
    let mut out = Vec::with_capacity(facs.len());
    for (f, e) in facs {
        let k = a.eval_poly(&f)?.pow(e as u64);
        let sub: Vec<Vec<u64>> = k
            .kernel_basis()
            .into_iter()
            .map(|c| {
                let mut v = vec![0u64; len];
                for (coef, b) in c.iter().zip(piece) {
                    if *coef != 0 {
                        for (o, &x) in v.iter_mut().zip(b) {
                            *o = field.add(*o, field.mul(*coef, x));
                        }
                    }
                }
                v
            })
            .collect();
        out.push(sub);
    }
    Ok(out)
}

/// The unique irreducible factor of the minimal polynomial, if there is one.
fn primary_factor(m: &FpMatrix) -> Result<Option<FpPoly>> {
    let facs = factor_poly(&min_poly(m)?)?;
    Ok((facs.len() == 1).then(|| facs[0].0.clone()))
}

/// Outcome of analysing one piece.
enum PieceResult {
    Local(Box<LocalFactor>),
    Split(Vec<Vec<Vec<u64>>>),
}

/// Decompose the algebra into local factors.
pub fn local_factors(alg: &HeckeAlgebra) -> Result<Vec<LocalFactor>> {
    let generators: Vec<(OpLabel, FpMatrix)> = alg.generators().iter().map(|g| (g.label, g.matrix.clone())).collect();
    let factors = decompose_operators(alg.field(), alg.space_dim(), &generators, alg.t_p())?;
    let total: usize = factors.iter().map(LocalFactor::dim).sum();
    if total != alg.dim() {
        return Err(integrity!(
            "local factor dimensions sum to {total}, algebra has dimension {}",
            alg.dim()
        ));
    }
    Ok(factors)
}

/// Decompose `F_p^n` under commuting operators `generators` into local
/// factors. `t_p` must commute with the generators and lie in the algebra
/// they generate on each factor.
pub fn decompose_operators(
    field: PrimeField,
    n: usize,
    generators: &[(OpLabel, FpMatrix)],
    t_p: &FpMatrix,
) -> Result<Vec<LocalFactor>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let identity: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut e = vec![0u64; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut pieces = vec![identity];
    for (label, g) in generators {
        let mut next = Vec::new();
        for piece in &pieces {
            let a = restrict_operator(g, piece)
                .ok_or_else(|| integrity!("{label} does not preserve a generalized eigenspace"))?;
            next.extend(split_piece(field, n, piece, &a)?);
        }
        pieces = next;
    }

    let mut factors = Vec::new();
    let mut stack: Vec<Vec<Vec<u64>>> = pieces.into_iter().rev().collect();
    while let Some(piece) = stack.pop() {
        match analyse_piece(field, n, generators, t_p, &piece)? {
            PieceResult::Local(mut f) => {
                f.index = factors.len();
                factors.push(*f);
            }
            PieceResult::Split(parts) => stack.extend(parts.into_iter().rev()),
        }
    }
    Ok(factors)
}

/// The local algebra generated by `generators` on `F_p^n`, which must be local.
pub fn local_algebra(field: PrimeField, generators: &[(OpLabel, FpMatrix)], t_p: &FpMatrix) -> Result<LocalFactor> {
    let n = t_p.rows();
    let mut fs = decompose_operators(field, n, generators, t_p)?;
    if fs.len() != 1 {
        return Err(integrity!(
            "operators generate {} local factors, expected one",
            fs.len()
        ));
    }
    Ok(fs.remove(0))
}

fn analyse_piece(
    field: PrimeField,
    n: usize,
    all_generators: &[(OpLabel, FpMatrix)],
    t_p: &FpMatrix,
    piece: &[Vec<u64>],
) -> Result<PieceResult> {
    let p = field.p();
    let d = piece.len();
    let mut generators = Vec::new();
    let mut generator_factors = Vec::new();
    for (label, g) in all_generators {
        let a = restrict_operator(g, piece).ok_or_else(|| integrity!("{label} does not preserve a piece"))?;
        let f = primary_factor(&a)?.ok_or_else(|| integrity!("{label} is not primary on a piece"))?;
        generators.push((*label, a));
        generator_factors.push(f);
    }
    let mats: Vec<FpMatrix> = generators.iter().map(|(_, a)| a.clone()).collect();
    let basis = algebra_closure(field, d, &mats);

    let mut ideal = MatrixSpan::new(field, d);
    for ((_, a), f) in generators.iter().zip(&generator_factors) {
        let y = a.eval_poly(f)?;
        for b in &basis {
            ideal.insert(&y.mul(b));
        }
    }
    let ideal_basis = ideal.matrices();

    // Quotient T/I: basis elements independent modulo I.
    let mut quotient = Span::from_vectors(field, d * d, ideal_basis.iter().map(|m| m.data().to_vec()));
    let mut quot_basis = Vec::new();
    for b in &basis {
        if quotient.insert(b.data().to_vec()) {
            quot_basis.push(b.clone());
        }
    }
    let r = ideal_basis.len();
    let k = quot_basis.len();
    let quot_coords = |m: &FpMatrix| -> Result<Vec<u64>> {
        quotient
            .coordinates(m.data())
            .map(|c| c[r..].to_vec())
            .ok_or_else(|| integrity!("algebra is not closed on a piece"))
    };
    let frob_cols = quot_basis
        .iter()
        .map(|q| quot_coords(&q.pow(p)))
        .collect::<Result<Vec<_>>>()?;
    let frob = FpMatrix::from_columns(field, k, &frob_cols);
    let fixed = frob.sub(&FpMatrix::identity(field, k)).kernel_basis();
    if fixed.len() > 1 {
        let one = quot_coords(&FpMatrix::identity(field, d))?;
        let witness = fixed
            .iter()
            .find(|v| Span::from_vectors(field, k, [one.clone(), (*v).clone()]).dim() == 2)
            .ok_or_else(|| integrity!("no separating element in a non-local piece"))?;
        let z = witness
            .iter()
            .zip(&quot_basis)
            .fold(FpMatrix::zeros(field, d, d), |acc, (&c, q)| acc.add_scaled(c, q));
        let parts = split_piece(field, n, piece, &z)?;
        if parts.len() < 2 {
            return Err(integrity!("separating element failed to split a piece"));
        }
        return Ok(PieceResult::Split(parts));
    }

    // The piece is local. Verify the maximal ideal, then build the residue field.
    for x in &ideal_basis {
        if !x.pow(d as u64).is_zero() {
            return Err(integrity!("maximal ideal is not nilpotent"));
        }
        for b in &basis {
            if !ideal.contains(&x.mul(b)) {
                return Err(integrity!("maximal ideal is not an ideal"));
            }
        }
    }
    let (theta, modulus) = primitive_element(field, k, &generators, &generator_factors, &quot_basis)?;
    let residue_field = if k == 1 {
        GaloisField::with_degree(field, 1)
    } else {
        GaloisField::new(modulus)?
    };
    let mut residue = Span::from_vectors(field, d * d, ideal_basis.iter().map(|m| m.data().to_vec()));
    let mut power = FpMatrix::identity(field, d);
    for _ in 0..k {
        if !residue.insert(power.data().to_vec()) {
            return Err(integrity!("primitive element has too small a degree"));
        }
        power = power.mul(&theta);
    }
    let eigenvalues = generators
        .iter()
        .map(|(l, a)| {
            residue
                .coordinates(a.data())
                .map(|c| (*l, c[r..].to_vec()))
                .ok_or_else(|| integrity!("generator {l} outside its own algebra"))
        })
        .collect::<Result<Vec<_>>>()?;
    let t_p = restrict_operator(t_p, piece).ok_or_else(|| integrity!("T_p does not preserve a local factor"))?;

    Ok(PieceResult::Local(Box::new(LocalFactor {
        index: 0,
        subspace: piece.to_vec(),
        generators,
        generator_factors,
        t_p,
        basis,
        maximal_ideal: ideal_basis,
        residue_degree: k,
        residue_field,
        eigenvalues,
        residue,
    })))
}

/// An element of `T_m` whose residue generates the residue field, with the
/// minimal polynomial of that residue. Generators are tried first, then
/// quotient elements in counter order, then random ones.
fn primitive_element(
    field: PrimeField,
    k: usize,
    generators: &[(OpLabel, FpMatrix)],
    factors: &[FpPoly],
    quot_basis: &[FpMatrix],
) -> Result<(FpMatrix, FpPoly)> {
    if let Some(((_, a), f)) = generators.iter().zip(factors).find(|(_, f)| f.degree() == Some(k)) {
        return Ok((a.clone(), f.clone()));
    }
    let d = quot_basis.first().map_or(0, FpMatrix::rows);
    let p = field.p();
    let combine = |digits: &[u64]| {
        digits
            .iter()
            .zip(quot_basis)
            .fold(FpMatrix::zeros(field, d, d), |acc, (&c, q)| acc.add_scaled(c, q))
    };
    let try_one = |z: FpMatrix| -> Result<Option<(FpMatrix, FpPoly)>> {
        Ok(primary_factor(&z)?.filter(|f| f.degree() == Some(k)).map(|f| (z, f)))
    };
    let mut digits = vec![0u64; k];
    for _ in 0..4096 {
        let mut i = 0;
        while i < k {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
        if let Some(found) = try_one(combine(&digits))? {
            return Ok(found);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..4096 {
        let digits: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
        if let Some(found) = try_one(combine(&digits))? {
            return Ok(found);
        }
    }
    Err(integrity!(
        "no primitive element found for a residue field of degree {k}"
    ))
}

/// Basis of the maximal ideal of a factor.
pub fn maximal_ideal(factor: &LocalFactor) -> &[FpMatrix] {
    &factor.maximal_ideal
}

/// `T_m[ideal] = {t in T_m : x t = 0 for all x in ideal}`.
pub fn socle(factor: &LocalFactor, ideal: &[FpMatrix]) -> Vec<FpMatrix> {
    let field = factor.field();
    let basis = &factor.basis;
    if ideal.is_empty() {
        return basis.clone();
    }
    let d = factor.subspace_dim();
    // Columns: for each basis element b_j, the stacked products x_i b_j.
    let columns: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| ideal.iter().flat_map(|x| x.mul(b).data().to_vec()).collect())
        .collect();
    let system = FpMatrix::from_columns(field, ideal.len() * d * d, &columns);
    system
        .kernel_basis()
        .into_iter()
        .map(|c| {
            c.iter()
                .zip(basis)
                .fold(FpMatrix::zeros(field, d, d), |acc, (&x, b)| acc.add_scaled(x, b))
        })
        .collect()
}

/// `T_p` is not in the maximal ideal, i.e. its residue is nonzero.
pub fn ordinarity(factor: &LocalFactor) -> bool {
    match primary_factor(&factor.t_p) {
        Ok(Some(f)) => f != FpPoly::x(factor.field()),
        _ => false,
    }
}

/// `dim_{F_p} T[m]` equals the residue degree.
pub fn gorenstein_test(factor: &LocalFactor) -> bool {
    socle(factor, &factor.maximal_ideal).len() == factor.residue_degree
}

/// Basis of the image in `T_m` of the subalgebra generated by `ops`
/// (operators on the cuspidal space).
pub fn restricted_on_factor(factor: &LocalFactor, ops: &[FpMatrix]) -> Result<Vec<FpMatrix>> {
    let restricted = ops.iter().map(|op| factor.restrict(op)).collect::<Result<Vec<_>>>()?;
    Ok(algebra_closure(factor.field(), factor.subspace_dim(), &restricted))
}
