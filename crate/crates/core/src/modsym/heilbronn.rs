/// Identifier of the Heilbronn family, recorded in every serialized artifact.
pub const HEILBRONN_FAMILY_ID: &str = "merel";

/// Merel's Heilbronn matrices of determinant `n`: all `[[a, b], [c, d]]` with
/// `ad - bc = n`, `a > b >= 0` and `d > c >= 0`, enumerated by `a`, then `d`,
/// then `c`.
///
/// Acting on weight-2 Manin symbols by `(u, v) -> (ua + vc, ub + vd)`, and
/// dropping images that are not symbols, these give `T_n` (or `U_n` at
/// primes dividing the level).
pub fn heilbronn_merel(n: u64) -> Vec<[i64; 4]> {
    let n = n as i64;
    let mut out = Vec::new();
    for a in 1..=n {
        let q = n / a;
        if q * a == n {
            let d = q;
            for b in 0..a {
                out.push([a, b, 0, d]);
            }
            for c in 1..d {
                out.push([a, 0, c, d]);
            }
        }
        for d in q + 1..=n {
            let bc = a * d - n;
            // Need b = bc / c < a and c < d.
            for c in bc / a + 1..d {
                if bc % c == 0 {
                    out.push([a, bc / c, c, d]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conditions_and_small_counts() {
        for n in 1..40u64 {
            let h = heilbronn_merel(n);
            for &[a, b, c, d] in &h {
                assert_eq!(a * d - b * c, n as i64);
                assert!(a > b && b >= 0 && d > c && c >= 0);
            }
            let mut sorted = h.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), h.len());
        }
        assert_eq!(heilbronn_merel(1), vec![[1, 0, 0, 1]]);
        assert_eq!(heilbronn_merel(2).len(), 4);
    }
}
