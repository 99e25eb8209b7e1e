//! Weight-two modular symbols for Gamma0(N) and Gamma1(N) with Hecke operators.

use modp_hecke::modsym::{build_space, hecke_operator, GroupSpec};

fn main() -> modp_hecke::error::Result<()> {
    for group in [GroupSpec::gamma0(11), GroupSpec::gamma0(37), GroupSpec::gamma1(13)] {
        let space = build_space(101, group)?;
        let s = space.summary();
        println!(
            "{group} over F_101: {} Manin symbols, ambient dim {}, cuspidal dim {}, {} cusps, relations hold {}",
            s.num_symbols,
            s.ambient_dim,
            s.cuspidal_dim,
            s.num_cusps,
            space.manin_relations_hold()
        );
        for l in [2u64, 3, 5, 7] {
            let t = hecke_operator(&space, l)?;
            println!("  trace {} = {}", t.label, t.matrix.trace());
        }
    }
    Ok(())
}
