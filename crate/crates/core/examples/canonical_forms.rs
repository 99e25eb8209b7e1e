//! Characteristic and minimal polynomials and the rational canonical form.

use modp_hecke::ff::{char_poly, conjugate_over_fp, elementary_divisors, min_poly, rcf, FpMatrix, PrimeField};

fn main() -> modp_hecke::error::Result<()> {
    let f3 = PrimeField::new(3)?;
    let a = FpMatrix::from_rows(
        f3,
        &[vec![2, 1, 0, 0], vec![0, 2, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, 1]],
    )?;
    println!("A:\n{a}");
    println!("char poly {}", char_poly(&a)?);
    println!("min poly {}", min_poly(&a)?);
    for (g, e) in elementary_divisors(&a)? {
        println!("elementary divisor ({g})^{e}");
    }
    let r = rcf(&a)?;
    let invariants: Vec<String> = r.invariant_factors.iter().map(|g| g.to_string()).collect();
    println!("invariant factors {}", invariants.join(" | "));
    println!("rational canonical form:\n{}", r.matrix());
    println!("A ~ A^T: {}", conjugate_over_fp(&a, &a.transpose())?);
    Ok(())
}
