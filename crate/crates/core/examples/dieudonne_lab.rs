//! Dieudonné module checks: conjugacy of V with Frobenius on points, the
//! truncated Witt covector kernel, and the Z/p^n counterexample.

use modp_hecke::dieudonne::{
    frobenius_on_points, honda_example, verify_conjugacy, verify_conjugacy_batch, witt_kernel_check,
};
use modp_hecke::ff::{FpMatrix, PrimeField};

fn main() -> modp_hecke::error::Result<()> {
    let a = FpMatrix::from_rows(PrimeField::new(2)?, &[vec![0, 1], vec![1, 1]])?;
    let cert = verify_conjugacy(&a)?;
    println!("V = A over F_2: conjugate to Frobenius on points {}", cert.passed());
    let pts = frobenius_on_points(&a)?;
    println!(
        "points over F_2^{}, B = {:?}, identity holds {}",
        pts.degree, pts.b, pts.identity_holds
    );

    let batch = verify_conjugacy_batch(3, 4, 100, 7)?;
    println!("random 4x4 over F_3: {}/{} pass", batch.passed, batch.count);

    let w = witt_kernel_check(3, 2)?;
    println!(
        "Witt kernel over F_9: {} elements, graph of inverse Frobenius {}",
        w.kernel_count, w.kernel_is_graph
    );

    let h = honda_example(2, 2, 3)?;
    println!(
        "Z/4 with F = 2, V = 3: FV = p {}, V trivial on M/FM {}, V trivial on M {}",
        h.fv_is_p, h.v_identity_on_quotient, h.v_identity_on_m
    );
    Ok(())
}
