//! Hecke traces at level 11 against point counts on y^2 + y = x^3 - x^2 - 10x - 20.

use modp_hecke::modsym::{build_space, hecke_operator, GroupSpec};

fn frobenius_trace(l: i64) -> i64 {
    let r = |x: i64| x.rem_euclid(l);
    let mut affine = 0;
    for x in 0..l {
        let rhs = r(x * x % l * x - x * x - 10 * x - 20);
        for y in 0..l {
            if r(y * y + y) == rhs {
                affine += 1;
            }
        }
    }
    l - affine
}

fn main() -> modp_hecke::error::Result<()> {
    let p = 1009;
    let space = build_space(p, GroupSpec::gamma0(11))?;
    for l in [2u64, 3, 5, 7, 13, 17, 19, 23] {
        // The cuspidal space is two copies of the newform, so tr T_l = 2 a_l.
        let tr = hecke_operator(&space, l)?.matrix.trace();
        let a_l = frobenius_trace(l as i64);
        println!(
            "l = {l:2}: a_l = {a_l:3}, tr T_l mod {p} = {tr:4}, agree {}",
            tr == (2 * a_l).rem_euclid(p as i64) as u64
        );
    }
    Ok(())
}
