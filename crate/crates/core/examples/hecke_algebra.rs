//! The mod-p Hecke algebra from Sturm-bound generators and its local factors.

use modp_hecke::hecke::{generate_algebra, local_factors, restricted_subalgebra};
use modp_hecke::modsym::{build_space, GroupSpec};

fn main() -> modp_hecke::error::Result<()> {
    let alg = generate_algebra(build_space(2, GroupSpec::gamma0(23))?, None)?;
    let gens: Vec<String> = alg.generators().iter().map(|g| g.label.to_string()).collect();
    println!(
        "T over F_2 for Gamma0(23): dim {}, Sturm bound {}, generators {}",
        alg.dim(),
        alg.sturm_bound(),
        gens.join(" ")
    );
    println!("closed and commutative: {}", alg.verify_closure());
    println!("subalgebra away from 2: dim {}", restricted_subalgebra(&alg, 2)?.dim());
    for f in local_factors(&alg)? {
        let s = f.summary();
        println!(
            "factor {}: dim T_m {}, dim m {}, residue field F_2^{}, eigenvalues {:?}",
            s.index, s.dim_t, s.dim_m, s.residue_degree, s.eigenvalues
        );
    }
    Ok(())
}
