//! Enumeration of Manin symbols and the two relation matrices `sigma`, `tau`.

use super::GroupKind;
use crate::arith::gcd;

/// Sentinel for pairs `(c, d)` with `gcd(c, d, N) != 1`.
const INVALID: u32 = u32::MAX;

/// Manin symbols for `Gamma0(N)` (points of `P^1(Z/N)`) or `Gamma1(N)`
/// (pairs with `gcd(c, d, N) = 1` modulo `+-1`).
///
/// Every valid pair of residues maps through a dense `N*N` table to the
/// index of its orbit, whose representative is the lexicographically
/// smallest pair in the orbit.
#[derive(Clone, Debug)]
pub struct SymbolTable {
    level: u64,
    reps: Vec<(u64, u64)>,
    index: Vec<u32>,
}

impl SymbolTable {
    pub fn new(kind: GroupKind, level: u64) -> Self {
        let n = level;
        let scalars: Vec<u64> = match kind {
            GroupKind::Gamma0 => (0..n.max(1)).filter(|&u| gcd(u, n) == 1).collect(),
            GroupKind::Gamma1 => {
                let mut s = vec![1 % n.max(1), (n.max(1) - 1) % n.max(1)];
                s.dedup();
                s
            }
        };
        let size = (n * n).max(1) as usize;
        let mut index = vec![INVALID; size];
        let mut reps = Vec::new();
        for c in 0..n.max(1) {
            for d in 0..n.max(1) {
                let slot = (c * n + d) as usize;
                if index[slot] != INVALID || gcd(gcd(c, d), n) != 1 {
                    continue;
                }
                let id = reps.len() as u32;
                reps.push((c, d));
                for &u in &scalars {
                    let (uc, ud) = (u * c % n.max(1), u * d % n.max(1));
                    index[(uc * n + ud) as usize] = id;
                }
            }
        }
        Self { level: n, reps, index }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, i: usize) -> (u64, u64) {
        self.reps[i]
    }

    pub fn reps(&self) -> &[(u64, u64)] {
        &self.reps
    }

    /// Orbit index of `(c, d)` reduced mod `N`, or `None` if not a symbol.
    pub fn index_of(&self, c: i64, d: i64) -> Option<usize> {
        let n = self.level.max(1) as i64;
        let (c, d) = (c.rem_euclid(n) as u64, d.rem_euclid(n) as u64);
        let i = self.index[(c * self.level + d) as usize];
        (i != INVALID).then_some(i as usize)
    }

    /// Index of `x * sigma`, where `(c, d) sigma = (d, -c)`.
    pub fn sigma(&self, i: usize) -> usize {
        let (c, d) = self.reps[i];
        self.index_of(d as i64, -(c as i64)).expect("sigma preserves symbols")
    }

    /// Index of `x * tau`, where `(c, d) tau = (d, -c - d)`.
    pub fn tau(&self, i: usize) -> usize {
        let (c, d) = self.reps[i];
        self.index_of(d as i64, -(c as i64) - d as i64)
            .expect("tau preserves symbols")
    }
}
