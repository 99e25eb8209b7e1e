//! Socles, the Gorenstein test and the multiplicity for a non-Gorenstein
//! factor at level 431 mod 2.

use modp_hecke::diagnostics::{corollary_conclusions, diagnose_algebra};
use modp_hecke::hecke::generate_algebra;
use modp_hecke::modsym::{build_space, GroupSpec};

fn main() -> modp_hecke::error::Result<()> {
    let alg = generate_algebra(build_space(2, GroupSpec::gamma0(431))?, None)?;
    let (_, reports) = diagnose_algebra(&alg)?;
    for rep in reports.iter().filter(|r| !r.gorenstein) {
        println!(
            "factor {}: dim T_m {}, dim_F T[m] {}, dim_F T[m^(p)] {}, r {}",
            rep.factor.index,
            rep.factor.dim_t,
            rep.dim_f_socle,
            rep.dim_f_socle_p,
            rep.multiplicity_r.map_or("-".into(), |r| r.to_string())
        );
        println!(
            "  hypotheses {:?}, T_p scalar on T[m^(p)] {}, weight-one signature {}",
            rep.hypotheses, rep.tp_scalar_on_socle_p, rep.weight_one_signature
        );
        for c in &rep.consistency {
            println!("  {}: {:?}", c.claim, c.status);
        }
        for c in corollary_conclusions(rep, false) {
            println!("  [{}] {}", c.tag, c.statement);
        }
    }
    println!(
        "{} factors, {} not Gorenstein",
        reports.len(),
        reports.iter().filter(|r| !r.gorenstein).count()
    );
    Ok(())
}
