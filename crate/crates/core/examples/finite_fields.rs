//! Dense linear algebra over F_p, polynomial factorization and F_{p^k} arithmetic.

use modp_hecke::ff::{
    factor_poly, ff_arith, find_irreducible, roots, FFElement, FfOp, FpMatrix, FpPoly, GaloisField, PrimeField,
};

fn main() -> modp_hecke::error::Result<()> {
    let f7 = PrimeField::new(7)?;
    let a = FpMatrix::from_rows(f7, &[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]])?;
    println!("A over F_7:\n{a}");
    println!("rank {}, kernel {:?}", a.rank(), a.kernel_basis());

    // x^6 - 1 over F_7 splits into linear factors
    let f = FpPoly::from_i64(f7, &[-1, 0, 0, 0, 0, 0, 1]);
    for (g, e) in factor_poly(&f)? {
        println!("factor ({g})^{e}");
    }
    println!("roots of {f}: {:?}", roots(&f));

    let f2 = PrimeField::new(2)?;
    let modulus = find_irreducible(f2, 4);
    let gf = GaloisField::new(modulus.clone())?;
    let x = FFElement::generator(&gf);
    let inv = ff_arith(&x, &x, FfOp::Inv)?;
    let one = ff_arith(&x, &inv, FfOp::Mul)?;
    println!(
        "F_16 = F_2[x]/({modulus}): x^-1 = {:?}, x * x^-1 = {:?}",
        inv.coords(),
        one.coords()
    );
    println!("Frobenius of x: {:?}", ff_arith(&x, &x, FfOp::Frobenius)?.coords());
    Ok(())
}
