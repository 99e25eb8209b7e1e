//! Multiplicity diagnostics for ordinary local factors.
//!
//! For a local factor `T_m` with residue field `F`, the multiplicity of the
//! attached residual representation is `r = (dim_F T[m] + 1) / 2`. The
//! weight-one conditions compare `T[m]` with `T[m^(p)]`, where
//! `m^(p) = m ∩ T^(p)` and `T^(p)` is generated by the operators away from
//! `p`. Statements about the Galois representation itself are never
//! computed: they are quoted as conclusions under stated assumptions.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::ff::{factor_poly, intersect, min_poly, FpMatrix, Span};
use crate::hecke::local::FactorSummary;
use crate::hecke::{
    algebra_closure, eisenstein_flag, gorenstein_test, local_factors, ordinarity, restricted_on_factor, socle,
    HeckeAlgebra, LocalFactor, MatrixSpan,
};

/// `r = (d + 1) / 2`, exact.
pub fn multiplicity_from_socle(dim_f_socle: i64) -> Result<Rational64> {
    if dim_f_socle < 1 {
        return Err(usage!("socle dimension must be positive, got {dim_f_socle}"));
    }
    Ok(Rational64::new(dim_f_socle + 1, 2))
}

/// Basis of `m^(p)`: the part of the maximal ideal lying in the image of
/// the away-from-`p` subalgebra, given by its restriction `away` to the factor.
pub fn away_ideal(factor: &LocalFactor, away: &[FpMatrix]) -> Vec<FpMatrix> {
    let field = factor.field();
    let d = factor.subspace_dim();
    let a: Vec<Vec<u64>> = away.iter().map(|m| m.data().to_vec()).collect();
    let b: Vec<Vec<u64>> = factor.maximal_ideal.iter().map(|m| m.data().to_vec()).collect();
    intersect(field, d * d, &a, &b)
        .into_iter()
        .map(|v| FpMatrix::new(field, d, d, v).expect("square"))
        .collect()
}

/// Whether `T_p` acts on `socle_p` through its residue image, i.e. the
/// irreducible minimal polynomial `f_p` of that image kills `T_p * t`
/// for every `t` in `socle_p`.
pub fn tp_scalar_test(factor: &LocalFactor, socle_p: &[FpMatrix]) -> Result<bool> {
    let facs = factor_poly(&min_poly(&factor.t_p)?)?;
    let f_p = &facs[0].0;
    let y = factor.t_p.eval_poly(f_p)?;
    Ok(socle_p.iter().all(|t| y.mul(t).is_zero()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypotheses {
    Met,
    /// `T_p` lies in the maximal ideal.
    NotOrdinary,
    /// The Eisenstein heuristic fired; irreducibility is doubtful.
    Unverified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Holds,
    Violated,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyCheck {
    pub claim: String,
    pub status: CheckStatus,
}

impl ConsistencyCheck {
    fn new(claim: &str, applicable: bool, holds: bool) -> Self {
        let status = match (applicable, holds) {
            (false, _) => CheckStatus::NotApplicable,
            (true, true) => CheckStatus::Holds,
            (true, false) => CheckStatus::Violated,
        };
        Self {
            claim: claim.to_string(),
            status,
        }
    }
}

pub const CLAIM_PARITY: &str = "socle dimension over F is odd";
pub const CLAIM_EQUIVALENCE: &str = "strict socle inclusion iff T_p non-scalar on T[m^(p)]";
pub const CLAIM_MONOTONE: &str = "T[m] contained in T[m^(p)]";
pub const CLAIM_GORENSTEIN: &str = "Gorenstein iff r = 1";
pub const CLAIM_DIMENSION: &str = "2 dim T_m equals the factor's cuspidal dimension";

mod ratio_string {
    use num_rational::Rational64;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational64>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational64>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(D::Error::custom))
            .transpose()
    }
}

/// The diagnostic battery for one factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticReport {
    pub factor: FactorSummary,
    pub hypotheses: Hypotheses,
    pub ordinary: bool,
    pub eisenstein_flag: bool,
    /// `dim_{F_p}` of `T[m]` and `T[m^(p)]`.
    pub socle_dim: usize,
    pub socle_p_dim: usize,
    /// The same dimensions over the residue field.
    pub dim_f_socle: usize,
    pub dim_f_socle_p: usize,
    pub away_subalgebra_dim: usize,
    pub away_ideal_dim: usize,
    /// `dim_{F_p} T_m / m^(p) T_m`.
    pub away_quotient_dim: usize,
    /// `(dim_F T[m] + 1) / 2`. Only meaningful when the hypotheses are met.
    #[serde(with = "ratio_string")]
    pub multiplicity_r: Option<Rational64>,
    pub gorenstein: bool,
    /// `T[m]` strictly inside `T[m^(p)]`.
    pub socle_strict_inclusion: bool,
    pub tp_scalar_on_socle_p: bool,
    /// Dual form of the weight-one criterion: `dim T_m / m^(p) T_m > [F : F_p]`.
    pub weight_one_signature: bool,
    pub dimension_identity: bool,
    pub consistency: Vec<ConsistencyCheck>,
}

impl DiagnosticReport {
    pub fn violations(&self) -> impl Iterator<Item = &ConsistencyCheck> {
        self.consistency.iter().filter(|c| c.status == CheckStatus::Violated)
    }

    pub fn check(&self, claim: &str) -> CheckStatus {
        self.consistency
            .iter()
            .find(|c| c.claim == claim)
            .map_or(CheckStatus::NotApplicable, |c| c.status)
    }
}

/// Run the battery on one factor. `away` is the image of the
/// away-from-`p` subalgebra on the factor.
pub fn condition_battery(factor: &LocalFactor, away: &[FpMatrix], eisenstein: bool) -> Result<DiagnosticReport> {
    let field = factor.field();
    let d = factor.subspace_dim();
    let k = factor.residue_degree;
    let ordinary = ordinarity(factor);
    let hypotheses = if !ordinary {
        Hypotheses::NotOrdinary
    } else if eisenstein {
        Hypotheses::Unverified
    } else {
        Hypotheses::Met
    };

    let m_p = away_ideal(factor, away);
    let soc = socle(factor, &factor.maximal_ideal);
    let soc_p = socle(factor, &m_p);
    let soc_p_span = MatrixSpan::from_matrices(field, d, &soc_p);
    let monotone = soc.iter().all(|t| soc_p_span.contains(t));
    let strict = soc_p.len() > soc.len();
    let scalar = tp_scalar_test(factor, &soc_p)?;

    let mut mp_t = Span::new(field, d * d);
    for x in &m_p {
        for b in &factor.basis {
            mp_t.insert(x.mul(b).data().to_vec());
        }
    }
    let away_quotient_dim = factor.dim() - mp_t.dim();

    let dim_f_socle = soc.len() / k;
    let r = multiplicity_from_socle(dim_f_socle as i64)?;
    let gorenstein = gorenstein_test(factor);
    let dimension_identity = 2 * factor.dim() == d;
    let met = hypotheses == Hypotheses::Met;

    let consistency = vec![
        ConsistencyCheck::new(CLAIM_PARITY, met, dim_f_socle % 2 == 1),
        ConsistencyCheck::new(CLAIM_EQUIVALENCE, true, strict == !scalar),
        ConsistencyCheck::new(CLAIM_MONOTONE, true, monotone),
        ConsistencyCheck::new(CLAIM_GORENSTEIN, met, gorenstein == (r == Rational64::from_integer(1))),
        ConsistencyCheck::new(CLAIM_DIMENSION, ordinary, dimension_identity),
    ];

    Ok(DiagnosticReport {
        factor: factor.summary(),
        hypotheses,
        ordinary,
        eisenstein_flag: eisenstein,
        socle_dim: soc.len(),
        socle_p_dim: soc_p.len(),
        dim_f_socle,
        dim_f_socle_p: soc_p.len() / k,
        away_subalgebra_dim: away.len(),
        away_ideal_dim: m_p.len(),
        away_quotient_dim,
        multiplicity_r: Some(r),
        gorenstein,
        socle_strict_inclusion: strict,
        tp_scalar_on_socle_p: scalar,
        weight_one_signature: away_quotient_dim > k,
        dimension_identity,
        consistency,
    })
}

/// Decompose the algebra and run the battery on every factor.
pub fn diagnose_algebra(alg: &HeckeAlgebra) -> Result<(Vec<LocalFactor>, Vec<DiagnosticReport>)> {
    let factors = local_factors(alg)?;
    if factors.is_empty() {
        return Ok((factors, Vec::new()));
    }
    let away: Vec<FpMatrix> = alg.away_generators(alg.p())?.into_iter().map(|g| g.matrix).collect();
    let reports = factors
        .iter()
        .map(|f| {
            let on_factor = restricted_on_factor(f, &away)?;
            condition_battery(f, &on_factor, eisenstein_flag(alg, f)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((factors, reports))
}

/// Image of the away subalgebra on a factor, from operators already on `W`.
pub fn away_on_factor(factor: &LocalFactor, away_on_w: &[FpMatrix]) -> Vec<FpMatrix> {
    algebra_closure(factor.field(), factor.subspace_dim(), away_on_w)
}

/// A statement quoted from the theory, instantiated for one factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub tag: String,
    pub statement: String,
    /// Standing hypotheses the statement depends on.
    pub assumptions: Vec<String>,
}

fn conclusion(tag: &str, statement: String, assumptions: &[&str]) -> Conclusion {
    Conclusion {
        tag: tag.to_string(),
        statement,
        assumptions: assumptions.iter().map(|s| s.to_string()).collect(),
    }
}

const STANDING: &[&str] = &["rho_m irreducible", "m ordinary", "p does not divide N"];

/// Derived statements for a report. `weight_one` is the user's assertion
/// that `rho_m` is of weight one (unramified at `p`); it is never computed.
pub fn corollary_conclusions(report: &DiagnosticReport, weight_one: bool) -> Vec<Conclusion> {
    let (Hypotheses::Met, Some(r)) = (report.hypotheses, report.multiplicity_r) else {
        return Vec::new();
    };
    let mut out = vec![conclusion(
        "multiplicity-from-socle",
        format!("multiplicity r = {r} read off from dim_F T[m] = {}", report.dim_f_socle),
        STANDING,
    )];
    let mut assumed: Vec<&str> = STANDING.to_vec();
    assumed.push("rho_m of weight one (assumed)");
    if report.gorenstein && report.weight_one_signature {
        out.push(conclusion(
            "frobenius-non-scalar",
            "rho_m(Frob_p) is non-scalar; multiplicity on J[m^(p)] is 2".to_string(),
            &assumed,
        ));
    }
    if weight_one {
        if r > Rational64::from_integer(1) {
            out.push(conclusion(
                "frobenius-scalar",
                format!("multiplicity {r} > 1 forces rho_m(Frob_p) scalar; multiplicity on J[m^(p)] conjecturally 2"),
                &assumed,
            ));
        } else if !report.gorenstein || report.socle_strict_inclusion || !report.tp_scalar_on_socle_p {
            out.push(conclusion(
                "weight-one-form",
                "a weight-one form of level N gives rise to rho_m".to_string(),
                &assumed,
            ));
        }
    } else {
        out.push(conclusion(
            "ramification-criterion",
            "multiplicity on J[m^(p)] is 1 iff rho_m is ramified at p".to_string(),
            STANDING,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::PrimeField;
    use crate::hecke::{generate_algebra, local_algebra};
    use crate::modsym::{build_space, GroupSpec, OpLabel};

    #[test]
    fn multiplicity_formula() {
        assert_eq!(multiplicity_from_socle(1).unwrap(), Rational64::from_integer(1));
        assert_eq!(multiplicity_from_socle(3).unwrap(), Rational64::from_integer(2));
        assert_eq!(multiplicity_from_socle(2).unwrap(), Rational64::new(3, 2));
        assert!(multiplicity_from_socle(0).is_err());
    }

    #[test]
    fn dual_numbers_with_no_away_operators() {
        let f5 = PrimeField::new(5).unwrap();
        let t = FpMatrix::from_rows(f5, &[vec![3, 0], vec![1, 3]]).unwrap();
        let f = local_algebra(f5, &[(OpLabel::T(5), t.clone())], &t).unwrap();
        let away = away_on_factor(&f, &[]);
        assert_eq!(away.len(), 1);
        assert!(away_ideal(&f, &away).is_empty());
        let soc_p = socle(&f, &[]);
        assert_eq!(soc_p.len(), 2);
        assert!(!tp_scalar_test(&f, &soc_p).unwrap());
        assert!(tp_scalar_test(&f, &socle(&f, &f.maximal_ideal)).unwrap());

        let rep = condition_battery(&f, &away, false).unwrap();
        assert!(rep.socle_strict_inclusion);
        assert!(!rep.tp_scalar_on_socle_p);
        assert!(rep.weight_one_signature);
        assert_eq!(rep.check(CLAIM_EQUIVALENCE), CheckStatus::Holds);
        assert_eq!(rep.multiplicity_r, Some(Rational64::from_integer(1)));
    }

    #[test]
    fn scalar_factor_battery() {
        let a = generate_algebra(build_space(3, GroupSpec::gamma0(11)).unwrap(), None).unwrap();
        let (_, reps) = diagnose_algebra(&a).unwrap();
        assert_eq!(reps.len(), 1);
        let r = &reps[0];
        assert_eq!(r.hypotheses, Hypotheses::Met);
        assert!(!r.socle_strict_inclusion && r.tp_scalar_on_socle_p && r.gorenstein);
        assert_eq!(r.violations().count(), 0);
        let c = corollary_conclusions(r, false);
        assert_eq!(c[0].tag, "multiplicity-from-socle");

        let a = generate_algebra(build_space(5, GroupSpec::gamma0(11)).unwrap(), None).unwrap();
        let (_, reps) = diagnose_algebra(&a).unwrap();
        assert!(reps[0].eisenstein_flag);
        assert_eq!(reps[0].hypotheses, Hypotheses::Unverified);
        assert_eq!(reps[0].multiplicity_r, Some(Rational64::from_integer(1)));
        assert!(corollary_conclusions(&reps[0], true).is_empty());
    }

    #[test]
    fn report_json_round_trip() {
        let a = generate_algebra(build_space(2, GroupSpec::gamma0(23)).unwrap(), None).unwrap();
        let (_, reps) = diagnose_algebra(&a).unwrap();
        let s = serde_json::to_string(&reps).unwrap();
        let back: Vec<DiagnosticReport> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, reps);
    }
}
