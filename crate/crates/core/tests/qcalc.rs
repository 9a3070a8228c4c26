use num_bigint::{BigInt, BigUint};
use num_traits::One;

use qlcm::cyclotomic::{factorization_to_poly, factorization_value_at_one};
use qlcm::qcalc::{
    corollary_common_witness, lcm_qbinomials_factorization, q_binomial_factorization, q_binomial_poly,
    q_integer, rhs_factorization, verify_main_identity, CommonWitness,
};
use qlcm::{CycFactorization, Depth, Error, QBinomialSpec};

fn binomial(n: u64, k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * (n - k + i) / i)
}

#[test]
fn q_binomials_specialize_to_binomials() {
    for n in 0..=40 {
        for k in 0..=n {
            let s = QBinomialSpec { n, k };
            let p = q_binomial_poly(s).unwrap();
            assert_eq!(p.eval(&BigInt::one()), BigInt::from(binomial(n, k)), "n={n} k={k}");
            assert_eq!(p.degree(), Some((k * (n - k)) as usize));
            // palindromic
            let c = p.coeffs();
            assert!(c.iter().eq(c.iter().rev()));
            let f = q_binomial_factorization(s).unwrap();
            assert!(f.is_squarefree());
            assert_eq!(f.degree(), k * (n - k));
            assert_eq!(factorization_value_at_one(&f), binomial(n, k));
        }
    }
}

#[test]
fn q_integer_at_one_is_n() {
    for n in 1..=50 {
        assert_eq!(q_integer(n).eval(&BigInt::one()), BigInt::from(n));
    }
}

#[test]
fn report_fields() {
    let r = verify_main_identity(9, Depth::Polynomial).unwrap();
    assert_eq!(r.n, 9);
    assert!(r.factor_equal && r.poly_checked);
    assert_eq!(r.poly_equal, Some(true));
    let w = r.witness_table.as_ref().unwrap();
    assert_eq!(w.keys().copied().collect::<Vec<_>>(), r.lhs_factors.indices().collect::<Vec<_>>());
    for (&d, &k) in w {
        assert_eq!(k, 10 % d);
    }
    assert!(r.passed());
}

#[test]
fn sides_agree_through_two_hundred() {
    for n in 1..=200 {
        assert_eq!(lcm_qbinomials_factorization(n).unwrap(), rhs_factorization(n).unwrap(), "n={n}");
    }
}

#[test]
fn factorization_json_roundtrip() {
    let f = lcm_qbinomials_factorization(12).unwrap();
    let json = serde_json::to_string(&f).unwrap();
    let back: CycFactorization = serde_json::from_str(&json).unwrap();
    assert_eq!(back, f);
    assert!(serde_json::from_str::<CycFactorization>(r#"[{"d":1,"e":1}]"#).is_err());
    assert!(serde_json::from_str::<CycFactorization>(r#"[{"d":4,"e":0}]"#).is_err());
}

#[test]
fn expansion_of_lcm_matches_small_case() {
    let f = lcm_qbinomials_factorization(4).unwrap();
    assert_eq!(f.to_string(), "Phi_2 * Phi_3 * Phi_4");
    assert_eq!(factorization_to_poly(&f).to_string(), "1 + 2*q + 3*q^2 + 3*q^3 + 2*q^4 + q^5");
}

#[test]
fn corollary_errors() {
    assert_eq!(corollary_common_witness(10, 4, &[1]), Err(Error::NotPrime(4)));
    assert!(matches!(corollary_common_witness(0, 2, &[1]), Err(Error::NonPositive { .. })));
    assert_eq!(corollary_common_witness(26, 3, &[1, 2]), Err(Error::HypothesisViolated { n: 26, level: 1 }));
    assert_eq!(corollary_common_witness(25, 3, &[1, 2]).unwrap(), CommonWitness::ClosedForm(8));
}
