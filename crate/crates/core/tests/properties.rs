//! Randomized invariants across the pipeline.

use modp_hecke::arith::gcd;
use modp_hecke::dieudonne::{honda_example, random_invertible, verify_conjugacy, DieudonneModule};
use modp_hecke::ff::{char_poly, factor_poly, min_poly, rcf, FpMatrix, FpPoly, PrimeField};
use modp_hecke::hecke::{generate_algebra, gorenstein_test, local_factors, restricted_subalgebra, socle};
use modp_hecke::modsym::{build_space, GroupSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn matrix(p: u64, n: usize, entries: &[u64]) -> FpMatrix {
    let field = PrimeField::new(p).unwrap();
    FpMatrix::from_fn(field, n, n, |i, j| entries[i * n + j] % p)
}

fn pair() -> impl Strategy<Value = (u64, u64)> {
    (prop::sample::select(PRIMES.to_vec()), 11u64..60).prop_filter("p must not divide N", |(p, n)| gcd(*p, *n) == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorization_multiplies_back(p in prop::sample::select(PRIMES.to_vec()), coeffs in prop::collection::vec(0u64..7, 1..9)) {
        let field = PrimeField::new(p).unwrap();
        let mut c: Vec<u64> = coeffs.iter().map(|x| x % p).collect();
        c.push(1);
        let f = FpPoly::new(field, c);
        let prod = factor_poly(&f).unwrap().iter().fold(FpPoly::one(field), |acc, (g, e)| acc.mul(&g.pow(*e as u64)));
        prop_assert_eq!(prod, f);
    }

    #[test]
    fn rational_canonical_form_invariants(p in prop::sample::select(PRIMES.to_vec()), n in 1usize..5, entries in prop::collection::vec(0u64..7, 16), seed in any::<u64>()) {
        let a = matrix(p, n, &entries);
        let r = rcf(&a).unwrap();
        let prod = r.invariant_factors.iter().fold(FpPoly::one(a.field()), |acc, g| acc.mul(g));
        prop_assert_eq!(prod, char_poly(&a).unwrap());
        prop_assert_eq!(r.invariant_factors.last().unwrap(), &min_poly(&a).unwrap());
        prop_assert_eq!(&rcf(&a.transpose()).unwrap(), &r);
        let q = random_invertible(a.field(), n, &mut ChaCha8Rng::seed_from_u64(seed));
        let conj = q.mul(&a).mul(&q.inverse().unwrap());
        prop_assert_eq!(rcf(&conj).unwrap(), r);
    }

    #[test]
    fn dieudonne_conjugacy(p in prop::sample::select(PRIMES.to_vec()), n in 1usize..4, seed in any::<u64>()) {
        let field = PrimeField::new(p).unwrap();
        let a = random_invertible(field, n, &mut ChaCha8Rng::seed_from_u64(seed));
        let m = DieudonneModule::connected_etale_dual(&a).unwrap();
        prop_assert!(m.is_killed_by_p());
        prop_assert!(verify_conjugacy(&a).unwrap().passed());
    }

    #[test]
    fn honda_failure_for_every_unit(p in prop::sample::select(PRIMES.to_vec()), n in 2u32..5, k in 0u64..20) {
        let r = honda_example(p, n, 1 + p * k).unwrap();
        prop_assert!(r.fv_is_p && r.v_identity_on_quotient);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn hecke_algebra_invariants((p, n) in pair()) {
        let space = build_space(p, GroupSpec::gamma0(n)).unwrap();
        prop_assert!(space.manin_relations_hold());
        let alg = generate_algebra(space, None).unwrap();
        prop_assert!(alg.verify_closure());
        prop_assert_eq!(restricted_subalgebra(&alg, 1).unwrap().dim(), alg.dim());
        prop_assert!(restricted_subalgebra(&alg, p).unwrap().dim() <= alg.dim());

        let factors = local_factors(&alg).unwrap();
        prop_assert_eq!(factors.iter().map(|f| f.dim()).sum::<usize>(), alg.dim());
        prop_assert_eq!(factors.iter().map(|f| f.subspace_dim()).sum::<usize>(), alg.space_dim());
        for f in &factors {
            let k = f.residue_degree;
            prop_assert_eq!(f.dim() - f.maximal_ideal.len(), k);
            let soc = socle(f, &f.maximal_ideal);
            prop_assert!(!soc.is_empty());
            prop_assert_eq!(soc.len() % k, 0);
            prop_assert_eq!(gorenstein_test(f), soc.len() == k);
        }
    }
}
