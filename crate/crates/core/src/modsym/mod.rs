//! Weight-2 modular symbols over `F_p` for `Gamma0(N)` and `Gamma1(N)`.
//!
//! A space is presented by Manin symbols modulo the two-term relation
//! `x + x sigma = 0` and the three-term relation `x + x tau + x tau^2 = 0`.
//! The two-term relations are applied first by pairing symbols, so the
//! dense elimination only sees the three-term rows.
//!
//! In the default [`Presentation::TorsionFree`] mode, symbols fixed by
//! `sigma` or `tau` are also set to zero. Over `Z` those symbols are torsion,
//! so this is the reduction mod p of the torsion-free quotient. It agrees
//! with the plain presentation whenever `p > 3` or the group has no
//! elliptic points, and keeps `dim S = 2g` at `p = 2, 3` otherwise.

pub mod cusps;
pub mod hecke;
pub mod heilbronn;
pub mod manin;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{usage, Result};
use crate::ff::{FpMatrix, PrimeField, Span};
pub use cusps::{cusp_key, genus_data, lift_to_sl2, GenusData};
pub use hecke::{
    boundary_check, boundary_check_basis, diamond_operator, hecke_operator, merel_operator, BoundaryReport,
    HeckeOperatorMatrix, OpLabel,
};
pub use heilbronn::{heilbronn_merel, HEILBRONN_FAMILY_ID};
pub use manin::SymbolTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Gamma0,
    Gamma1,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Gamma0 => "gamma0",
            GroupKind::Gamma1 => "gamma1",
        })
    }
}

impl std::str::FromStr for GroupKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gamma0" | "g0" => Ok(GroupKind::Gamma0),
            "gamma1" | "g1" => Ok(GroupKind::Gamma1),
            _ => Err(usage!("unknown group kind {s:?} (expected gamma0 or gamma1)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub level: u64,
}

impl GroupSpec {
    pub fn new(kind: GroupKind, level: u64) -> Result<Self> {
        if level == 0 {
            return Err(usage!("level must be positive"));
        }
        if level > 1 << 16 {
            return Err(usage!("level {level} is outside the supported range"));
        }
        Ok(Self { kind, level })
    }

    pub fn gamma0(level: u64) -> Self {
        Self::new(GroupKind::Gamma0, level).expect("valid level")
    }

    pub fn gamma1(level: u64) -> Self {
        Self::new(GroupKind::Gamma1, level).expect("valid level")
    }

    /// Index in `SL2(Z)`.
    pub fn index(&self) -> u64 {
        genus_data(self).index_sl
    }

    /// Weight-2 Sturm bound `ceil(2 * index / 12)`.
    pub fn sturm_bound(&self) -> u64 {
        self.index().div_ceil(6)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            GroupKind::Gamma0 => "Gamma0",
            GroupKind::Gamma1 => "Gamma1",
        };
        write!(f, "{name}({})", self.level)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Presentation {
    /// Manin relations plus `x = 0` for elliptic symbols.
    #[default]
    TorsionFree,
    /// Manin relations only.
    Raw,
}

/// Image of a symbol under the two-term identification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Paired {
    Zero,
    Gen(usize, u64),
}

/// A presented space of weight-2 modular symbols together with its
/// boundary map and cuspidal subspace.
#[derive(Clone, Debug)]
pub struct ModSymSpace {
    field: PrimeField,
    group: GroupSpec,
    presentation: Presentation,
    symbols: SymbolTable,
    paired: Vec<Paired>,
    three_term: FpMatrix,
    free_symbols: Vec<usize>,
    symbol_vectors: Vec<Vec<(usize, u64)>>,
    cusp_keys: Vec<(u64, u64)>,
    boundary: FpMatrix,
    cuspidal: Span,
    nu2: usize,
    nu3: usize,
}

/// Build the space of modular symbols for `group` over `F_p`.
pub fn build_space(p: u64, group: GroupSpec) -> Result<ModSymSpace> {
    build_space_with(p, group, Presentation::default())
}

pub fn build_space_with(p: u64, group: GroupSpec, presentation: Presentation) -> Result<ModSymSpace> {
    let group = GroupSpec::new(group.kind, group.level)?;
    let field = PrimeField::new(p)?;
    let symbols = SymbolTable::new(group.kind, group.level);
    let n = symbols.len();
    let neg_one = p - 1;

    let sigma_fixed: Vec<bool> = (0..n).map(|i| symbols.sigma(i) == i).collect();
    let tau_fixed: Vec<bool> = (0..n).map(|i| symbols.tau(i) == i).collect();
    let nu2 = sigma_fixed.iter().filter(|&&b| b).count();
    let nu3 = tau_fixed.iter().filter(|&&b| b).count();

    let forced_zero = |i: usize| match presentation {
        Presentation::TorsionFree => sigma_fixed[i] || tau_fixed[i],
        // x + x = 0 kills x unless p = 2
        Presentation::Raw => sigma_fixed[i] && p != 2,
    };

    let mut paired = vec![None; n];
    let mut gen_symbol = Vec::new();
    for i in 0..n {
        if paired[i].is_some() {
            continue;
        }
        let j = symbols.sigma(i);
        if forced_zero(i) || forced_zero(j) {
            paired[i] = Some(Paired::Zero);
            paired[j] = Some(Paired::Zero);
            continue;
        }
        let g = gen_symbol.len();
        gen_symbol.push(i);
        paired[i] = Some(Paired::Gen(g, 1));
        if j != i {
            paired[j] = Some(Paired::Gen(g, neg_one));
        }
    }
    let paired: Vec<Paired> = paired.into_iter().map(Option::unwrap).collect();
    let ngens = gen_symbol.len();

    let mut rows: Vec<Vec<u64>> = Vec::new();
    for i in 0..n {
        let (j, k) = (symbols.tau(i), symbols.tau(symbols.tau(i)));
        if i > j || i > k {
            continue;
        }
        let mut row = vec![0u64; ngens];
        // A tau-fixed symbol appears three times, giving 3x = 0.
        for s in [i, j, k] {
            if let Paired::Gen(g, c) = paired[s] {
                row[g] = field.add(row[g], c);
            }
        }
        if row.iter().any(|&x| x != 0) {
            rows.push(row);
        }
    }
    let three_term = FpMatrix::from_row_vectors(field, ngens, &rows);
    let (rref, pivots) = three_term.rref();

    let mut is_pivot = vec![None; ngens];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    let free_gens: Vec<usize> = (0..ngens).filter(|&g| is_pivot[g].is_none()).collect();
    let mut free_pos = vec![usize::MAX; ngens];
    for (k, &g) in free_gens.iter().enumerate() {
        free_pos[g] = k;
    }
    let gen_vectors: Vec<Vec<(usize, u64)>> = (0..ngens)
        .map(|g| match is_pivot[g] {
            None => vec![(free_pos[g], 1)],
            Some(r) => free_gens
                .iter()
                .filter(|&&f| rref.get(r, f) != 0)
                .map(|&f| (free_pos[f], field.neg(rref.get(r, f))))
                .collect(),
        })
        .collect();
    let symbol_vectors: Vec<Vec<(usize, u64)>> = paired
        .iter()
        .map(|pr| match *pr {
            Paired::Zero => Vec::new(),
            Paired::Gen(g, c) => gen_vectors[g].iter().map(|&(k, x)| (k, field.mul(x, c))).collect(),
        })
        .collect();
    let free_symbols: Vec<usize> = free_gens.iter().map(|&g| gen_symbol[g]).collect();
    let ambient_dim = free_symbols.len();

    // Boundary map. Cusp indices are assigned in symbol order so that every
    // cusp of the group gets an index, including those no basis element touches.
    let mut cusp_index: HashMap<(u64, u64), usize> = HashMap::new();
    let mut cusp_keys = Vec::new();
    let mut symbol_boundary = Vec::with_capacity(n);
    for i in 0..n {
        let (c, d) = symbols.rep(i);
        let [a, b, c1, d1] = lift_to_sl2(c, d, group.level);
        let mut ends = [0usize; 2];
        for (slot, key) in [cusp_key(&group, a, c1), cusp_key(&group, b, d1)]
            .into_iter()
            .enumerate()
        {
            ends[slot] = *cusp_index.entry(key).or_insert_with(|| {
                cusp_keys.push(key);
                cusp_keys.len() - 1
            });
        }
        symbol_boundary.push(ends);
    }
    let mut boundary = FpMatrix::zeros(field, cusp_keys.len(), ambient_dim);
    for (k, &s) in free_symbols.iter().enumerate() {
        let [plus, minus] = symbol_boundary[s];
        boundary.set(plus, k, field.add(boundary.get(plus, k), 1));
        boundary.set(minus, k, field.sub(boundary.get(minus, k), 1));
    }
    let cuspidal = Span::from_vectors(field, ambient_dim, boundary.kernel_basis());

    Ok(ModSymSpace {
        field,
        group,
        presentation,
        symbols,
        paired,
        three_term,
        free_symbols,
        symbol_vectors,
        cusp_keys,
        boundary,
        cuspidal,
        nu2,
        nu3,
    })
}

impl ModSymSpace {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn level(&self) -> u64 {
        self.group.level
    }

    pub fn presentation(&self) -> Presentation {
        self.presentation
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.free_symbols.len()
    }

    pub fn cuspidal_dim(&self) -> usize {
        self.cuspidal.dim()
    }

    /// Basis of the cuspidal subspace in ambient coordinates.
    pub fn cuspidal_basis(&self) -> &[Vec<u64>] {
        self.cuspidal.basis()
    }

    pub(crate) fn cuspidal_span(&self) -> &Span {
        &self.cuspidal
    }

    pub fn num_cusps(&self) -> usize {
        self.cusp_keys.len()
    }

    pub fn cusp_keys(&self) -> &[(u64, u64)] {
        &self.cusp_keys
    }

    /// Boundary map from ambient coordinates to the free module on cusps.
    pub fn boundary_matrix(&self) -> &FpMatrix {
        &self.boundary
    }

    /// Manin symbols chosen as the ambient basis.
    pub fn basis_symbols(&self) -> &[usize] {
        &self.free_symbols
    }

    /// Number of symbols fixed by `sigma` (elliptic points of order 2 for `Gamma0`).
    pub fn nu2(&self) -> usize {
        self.nu2
    }

    /// Number of symbols fixed by `tau` (elliptic points of order 3 for `Gamma0`).
    pub fn nu3(&self) -> usize {
        self.nu3
    }

    pub fn has_elliptic_elements(&self) -> bool {
        self.nu2 > 0 || self.nu3 > 0
    }

    /// True when `p` is 2 or 3 and the group has elliptic elements of that
    /// order, so the plain Manin presentation need not compute `H^1_par`.
    pub fn torsion_caveat(&self) -> bool {
        (self.nu2 > 0 && self.p() == 2) || (self.nu3 > 0 && self.p() == 3)
    }

    /// Coordinates of Manin symbol `i` in the ambient basis.
    pub fn symbol_vector(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.ambient_dim()];
        for &(k, c) in &self.symbol_vectors[i] {
            v[k] = c;
        }
        v
    }

    pub(crate) fn symbol_vector_sparse(&self, i: usize) -> &[(usize, u64)] {
        &self.symbol_vectors[i]
    }

    /// The three-term relations over the generators left after pairing.
    pub fn three_term_matrix(&self) -> &FpMatrix {
        &self.three_term
    }

    /// The full relation matrix on all symbols: one row per two-term
    /// relation, per three-term relation, and per symbol forced to zero.
    /// Rows are relations and columns are symbols.
    pub fn relation_matrix(&self) -> FpMatrix {
        let n = self.num_symbols();
        let f = self.field;
        let mut rows = Vec::new();
        for i in 0..n {
            let j = self.symbols.sigma(i);
            if i <= j {
                let mut r = vec![0u64; n];
                r[i] = f.add(r[i], 1);
                r[j] = f.add(r[j], 1);
                rows.push(r);
            }
            let (t1, t2) = (self.symbols.tau(i), self.symbols.tau(self.symbols.tau(i)));
            if i <= t1 && i <= t2 {
                let mut r = vec![0u64; n];
                for s in [i, t1, t2] {
                    r[s] = f.add(r[s], 1);
                }
                rows.push(r);
            }
            if self.presentation == Presentation::TorsionFree && (j == i || t1 == i) {
                let mut r = vec![0u64; n];
                r[i] = 1;
                rows.push(r);
            }
        }
        FpMatrix::from_row_vectors(f, n, &rows)
    }

    /// Checks both Manin relations for every symbol in the quotient.
    pub fn manin_relations_hold(&self) -> bool {
        let f = self.field;
        let add = |a: &[u64], b: &[u64]| -> Vec<u64> { a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect() };
        (0..self.num_symbols()).all(|i| {
            let x = self.symbol_vector(i);
            let s = self.symbol_vector(self.symbols.sigma(i));
            let t = self.symbols.tau(i);
            let t1 = self.symbol_vector(t);
            let t2 = self.symbol_vector(self.symbols.tau(t));
            add(&x, &s).iter().all(|&v| v == 0) && add(&add(&x, &t1), &t2).iter().all(|&v| v == 0)
        })
    }

    /// Number of symbols that vanish after the two-term identification.
    pub fn zero_symbols(&self) -> usize {
        self.paired.iter().filter(|p| **p == Paired::Zero).count()
    }

    /// Serializable header describing the space.
    pub fn summary(&self) -> SpaceSummary {
        SpaceSummary {
            p: self.p(),
            group: self.group,
            presentation: self.presentation,
            heilbronn_family: HEILBRONN_FAMILY_ID.to_string(),
            num_symbols: self.num_symbols(),
            ambient_dim: self.ambient_dim(),
            cuspidal_dim: self.cuspidal_dim(),
            num_cusps: self.num_cusps(),
            nu2: self.nu2,
            nu3: self.nu3,
            torsion_caveat: self.torsion_caveat(),
            cuspidal_basis: self.cuspidal_basis().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSummary {
    pub p: u64,
    pub group: GroupSpec,
    pub presentation: Presentation,
    pub heilbronn_family: String,
    pub num_symbols: usize,
    pub ambient_dim: usize,
    pub cuspidal_dim: usize,
    pub num_cusps: usize,
    pub nu2: usize,
    pub nu3: usize,
    pub torsion_caveat: bool,
    pub cuspidal_basis: Vec<Vec<u64>>,
}

/// Levels `N <= bound` coprime to `p`.
pub fn levels_coprime_to(p: u64, bound: u64) -> Vec<u64> {
    (1..=bound).filter(|&n| arith::gcd(n, p) == 1).collect()
}
