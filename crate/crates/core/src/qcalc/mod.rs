//! q-integers, q-binomial coefficients, and both sides of
//!
//! ```text
//! lcm([n,0]_q, ..., [n,n]_q) = lcm([1]_q, ..., [n+1]_q) / [n+1]_q
//! ```
//!
//! in cyclotomic-factored and fully expanded form.

mod carries;
mod classical;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{factorization_to_poly, CycFactorization};
use crate::error::{positive, Error, Result};
use crate::numthy::divisors;
use crate::poly::{poly_exact_div, poly_lcm_many, poly_mul, IntPoly};

pub use carries::{
    carry_count_by_divisibility, carry_count_lhs, carry_count_rhs, carry_pattern, carry_sum_for_k,
    corollary_common_witness, level_carry, witness_all_carries, CommonWitness,
};
pub use classical::{
    binomial_row_lcm, binomial_row_lcm_within, bounds_check, classical_farhi_check, limit_consistency_check, ClassicalCheck, LimitCheck,
};

/// Indexes the q-binomial `[n choose k]_q`. Valid when `k <= n`; operations
/// reject anything else with [`Error::OutOfRange`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QBinomialSpec {
    pub n: u64,
    pub k: u64,
}

impl QBinomialSpec {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        let s = QBinomialSpec { n, k };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        if self.k > self.n {
            return Err(Error::OutOfRange(format!("k = {} exceeds n = {}", self.k, self.n)));
        }
        Ok(())
    }
}

/// `[n]_q = 1 + q + ... + q^(n-1)`; zero for `n = 0`.
pub fn q_integer(n: u64) -> IntPoly {
    IntPoly::from_coeffs(vec![1.into(); n as usize])
}

/// `[k]_q = prod_{d | k, d > 1} Phi_d(q)`.
pub fn q_integer_factorization(k: u64) -> Result<CycFactorization> {
    positive("k", k)?;
    CycFactorization::from_indices(divisors(k)?.into_iter().filter(|&d| d > 1))
}

/// `floor(k/d) + floor((n-k)/d) < floor(n/d)`.
pub fn carry_condition(n: u64, k: u64, d: u64) -> Result<bool> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    if d == 0 {
        return Err(Error::OutOfRange("d must be positive".into()));
    }
    Ok(k / d + (n - k) / d < n / d)
}

/// The set of `d` with `2 <= d <= n` satisfying the carry condition, each to
/// the first power. `d = 1` never qualifies.
pub fn q_binomial_factorization(s: QBinomialSpec) -> Result<CycFactorization> {
    s.validate()?;
    let mut out = CycFactorization::new();
    for d in 2..=s.n {
        if carry_condition(s.n, s.k, d)? {
            out.multiply_by(d, 1)?;
        }
    }
    Ok(out)
}

/// Expanded q-binomial by the product formula
/// `prod_{i=1..k} (q^(n-k+i) - 1) / (q^i - 1)`, dividing after each
/// multiplication. The partial product after step `i` is `[n-k+i choose i]_q`,
/// so every division is exact.
pub fn q_binomial_poly(s: QBinomialSpec) -> Result<IntPoly> {
    s.validate()?;
    let k = s.k.min(s.n - s.k);
    let mut acc = IntPoly::one();
    for i in 1..=k {
        acc = poly_mul(&acc, &IntPoly::q_pow_minus_one((s.n - k + i) as usize));
        acc = poly_exact_div(&acc, &IntPoly::q_pow_minus_one(i as usize))
            .map_err(|_| Error::Internal(format!("[{} choose {}]_q: inexact division at step {i}", s.n, s.k)))?;
    }
    Ok(acc)
}

/// `[n choose k]_q` for `k = 0..=n`, each obtained from its predecessor by
/// `[n choose k] = [n choose k-1] (q^(n-k+1) - 1) / (q^k - 1)`.
pub fn q_binomial_row(n: u64) -> Result<Vec<IntPoly>> {
    let half = (n / 2) as usize;
    let mut row: Vec<IntPoly> = Vec::with_capacity(n as usize + 1);
    row.push(IntPoly::one());
    for k in 1..=half as u64 {
        let next = poly_mul(&row[k as usize - 1], &IntPoly::q_pow_minus_one((n - k + 1) as usize));
        let next = poly_exact_div(&next, &IntPoly::q_pow_minus_one(k as usize))
            .map_err(|_| Error::Internal(format!("row {n}: inexact division at k = {k}")))?;
        row.push(next);
    }
    for k in half as u64 + 1..=n {
        row.push(row[(n - k) as usize].clone());
    }
    Ok(row)
}

/// Lemma-style witness: `None` when `d | n+1`, otherwise `k = (n+1) mod d`.
pub fn exists_witness_k(n: u64, d: u64) -> Result<Option<u64>> {
    if d == 0 || d > n {
        return Err(Error::OutOfRange(format!("need 1 <= d <= n, got d = {d}, n = {n}")));
    }
    let c = (n + 1) % d;
    Ok((c != 0).then_some(c))
}

/// How to decide whether some `k` in `1..=n` satisfies the carry condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSearch {
    /// `k = (n+1) mod d`, confirmed against the carry condition.
    Residue,
    /// Try every `k`.
    Exhaustive,
}

/// `{d : 2 <= d <= n, some k in 1..=n satisfies the carry condition}`, the
/// factored lcm of row `n` of q-binomials.
pub fn lcm_qbinomials_factorization(n: u64) -> Result<CycFactorization> {
    lcm_qbinomials_factorization_with(n, WitnessSearch::Residue)
}

pub fn lcm_qbinomials_factorization_with(n: u64, search: WitnessSearch) -> Result<CycFactorization> {
    positive("n", n)?;
    let mut out = CycFactorization::new();
    for d in 2..=n {
        let hit = match search {
            WitnessSearch::Residue => match exists_witness_k(n, d)? {
                Some(k) if carry_condition(n, k, d)? => true,
                Some(k) => {
                    return Err(Error::Internal(format!("residue witness k = {k} fails for n = {n}, d = {d}")));
                }
                None => false,
            },
            WitnessSearch::Exhaustive => (1..=n).any(|k| k / d + (n - k) / d < n / d),
        };
        if hit {
            out.multiply_by(d, 1)?;
        }
    }
    Ok(out)
}

/// Exponent-wise maximum of the factorizations of `[n choose k]_q`,
/// `k = 0..=n`.
pub fn lcm_qbinomials_factorization_by_rows(n: u64) -> Result<CycFactorization> {
    positive("n", n)?;
    let mut acc = CycFactorization::new();
    for k in 0..=n {
        acc.lcm_assign(&q_binomial_factorization(QBinomialSpec { n, k })?);
    }
    Ok(acc)
}

/// `{d : 2 <= d <= n, d does not divide n+1}`.
pub fn rhs_factorization(n: u64) -> Result<CycFactorization> {
    positive("n", n)?;
    CycFactorization::from_indices((2..=n).filter(|d| !(n + 1).is_multiple_of(*d)))
}

/// The same set computed literally: the exponent-wise maximum over the
/// factorizations of `[1]_q .. [n+1]_q`, divided by that of `[n+1]_q`.
pub fn rhs_factorization_via_qintegers(n: u64) -> Result<CycFactorization> {
    positive("n", n)?;
    let mut lcm = CycFactorization::new();
    for k in 1..=n + 1 {
        lcm.lcm_assign(&q_integer_factorization(k)?);
    }
    lcm.quotient(&q_integer_factorization(n + 1)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    /// Compare cyclotomic exponent maps.
    #[default]
    Factored,
    /// Additionally expand both sides and compare with generic polynomial lcms.
    Polynomial,
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Depth::Factored => "factored",
            Depth::Polynomial => "polynomial",
        })
    }
}

/// Outcome of checking the identity for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: u64,
    pub depth: Depth,
    pub lhs_factors: CycFactorization,
    pub rhs_factors: CycFactorization,
    pub factor_equal: bool,
    pub poly_checked: bool,
    /// Set only when `poly_checked`.
    pub poly_equal: Option<bool>,
    /// The witness `k` for every `d` in the left side.
    pub witness_table: Option<BTreeMap<u64, u64>>,
}

/// The pinned JSON line emitted per `n` by `qlcm verify --format json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub n: u64,
    pub depth: Depth,
    pub lhs: CycFactorization,
    pub rhs: CycFactorization,
    pub factor_equal: bool,
    pub poly_equal: Option<bool>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.factor_equal && self.poly_equal != Some(false)
    }

    pub fn record(&self) -> ReportRecord {
        ReportRecord {
            n: self.n,
            depth: self.depth,
            lhs: self.lhs_factors.clone(),
            rhs: self.rhs_factors.clone(),
            factor_equal: self.factor_equal,
            poly_equal: self.poly_equal,
        }
    }

    /// `n=5: lhs=Phi_4 * Phi_5 rhs=Phi_4 * Phi_5 PASS`
    pub fn text_line(&self) -> String {
        format!(
            "n={}: lhs={} rhs={} {}",
            self.n,
            self.lhs_factors,
            self.rhs_factors,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Checks the identity for one `n`.
///
/// The factored depth compares the residue-witness left side with the
/// divisor-criterion right side (and with the right side rebuilt from the
/// q-integer factorizations). The polynomial depth also computes, with the
/// generic gcd-based lcm, `lcm` of the expanded row `[n choose k]_q` and
/// `lcm([1]_q..[n+1]_q) / [n+1]_q`, and requires both to equal the expansions
/// of the factored sides. A failed identity is reported, never raised.
pub fn verify_main_identity(n: u64, depth: Depth) -> Result<VerificationReport> {
    positive("n", n)?;
    let lhs = lcm_qbinomials_factorization(n)?;
    let rhs = rhs_factorization(n)?;
    let rhs_long = rhs_factorization_via_qintegers(n);
    let factor_equal = lhs == rhs && rhs_long.as_ref() == Ok(&rhs);

    let mut witnesses = BTreeMap::new();
    for d in lhs.indices() {
        if let Some(k) = exists_witness_k(n, d)? {
            witnesses.insert(d, k);
        }
    }

    let poly_equal = match depth {
        Depth::Factored => None,
        Depth::Polynomial => Some(polynomial_sides_agree(n, &lhs, &rhs)?),
    };
    Ok(VerificationReport {
        n,
        depth,
        lhs_factors: lhs,
        rhs_factors: rhs,
        factor_equal,
        poly_checked: depth == Depth::Polynomial,
        poly_equal,
        witness_table: Some(witnesses),
    })
}

fn polynomial_sides_agree(n: u64, lhs: &CycFactorization, rhs: &CycFactorization) -> Result<bool> {
    let row_lcm = poly_lcm_many(&q_binomial_row(n)?)?;
    let qints: Vec<IntPoly> = (1..=n + 1).map(q_integer).collect();
    let ratio = match poly_exact_div(&poly_lcm_many(&qints)?, &q_integer(n + 1)) {
        Ok(r) => r,
        Err(Error::NonExactDivision) => return Ok(false),
        Err(e) => return Err(e),
    };
    let lhs_poly = factorization_to_poly(lhs);
    if row_lcm != lhs_poly || ratio != row_lcm {
        return Ok(false);
    }
    Ok(lhs == rhs || factorization_to_poly(rhs) == ratio)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn fact(ds: &[u64]) -> CycFactorization {
        CycFactorization::from_indices(ds.iter().copied()).unwrap()
    }

    /// `[n, k] = [n-1, k-1] + q^k [n-1, k]`, independent of the product formula.
    fn pascal(n: u64, k: u64) -> IntPoly {
        let mut rows = vec![vec![IntPoly::one()]];
        for m in 1..=n as usize {
            let prev = &rows[m - 1];
            let mut row = Vec::with_capacity(m + 1);
            for j in 0..=m {
                let left = if j > 0 { prev[j - 1].clone() } else { IntPoly::zero() };
                let right = if j < m { prev[j].shift(j) } else { IntPoly::zero() };
                row.push(&left + &right);
            }
            rows.push(row);
        }
        rows[n as usize][k as usize].clone()
    }

    #[test]
    fn q_integer_examples() {
        assert_eq!(q_integer(1), IntPoly::one());
        assert_eq!(q_integer(2), p(&[1, 1]));
        assert_eq!(q_integer(5), p(&[1, 1, 1, 1, 1]));
        assert!(q_integer(0).is_zero());
    }

    #[test]
    fn q_integer_factorization_examples() {
        assert_eq!(q_integer_factorization(1).unwrap(), fact(&[]));
        assert_eq!(q_integer_factorization(6).unwrap(), fact(&[2, 3, 6]));
        assert_eq!(q_integer_factorization(12).unwrap(), fact(&[2, 3, 4, 6, 12]));
        assert!(q_integer_factorization(0).is_err());
    }

    #[test]
    fn carry_condition_examples() {
        assert!(carry_condition(4, 2, 3).unwrap());
        assert!(!carry_condition(4, 2, 2).unwrap());
        for n in 0..20 {
            for d in 1..25 {
                assert!(!carry_condition(n, 0, d).unwrap());
            }
        }
        assert!(carry_condition(3, 4, 2).is_err());
        assert!(carry_condition(3, 1, 0).is_err());
    }

    #[test]
    fn q_binomial_factorization_examples() {
        assert_eq!(q_binomial_factorization(QBinomialSpec { n: 4, k: 2 }).unwrap(), fact(&[3, 4]));
        assert_eq!(q_binomial_factorization(QBinomialSpec { n: 9, k: 0 }).unwrap(), fact(&[]));
        assert_eq!(q_binomial_factorization(QBinomialSpec { n: 5, k: 2 }).unwrap(), fact(&[4, 5]));
        assert!(q_binomial_factorization(QBinomialSpec { n: 2, k: 3 }).is_err());
    }

    #[test]
    fn q_binomial_poly_examples() {
        assert_eq!(q_binomial_poly(QBinomialSpec { n: 2, k: 1 }).unwrap(), p(&[1, 1]));
        assert_eq!(q_binomial_poly(QBinomialSpec { n: 4, k: 2 }).unwrap(), p(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial_poly(QBinomialSpec { n: 7, k: 7 }).unwrap(), IntPoly::one());
        assert_eq!(q_binomial_poly(QBinomialSpec { n: 0, k: 0 }).unwrap(), IntPoly::one());
        assert!(q_binomial_poly(QBinomialSpec { n: 1, k: 2 }).is_err());
        assert!(QBinomialSpec::new(1, 2).is_err());
    }

    #[test]
    fn q_binomial_forms_agree_with_pascal() {
        for n in 0..=18 {
            let row = q_binomial_row(n).unwrap();
            for k in 0..=n {
                let s = QBinomialSpec { n, k };
                let oracle = pascal(n, k);
                assert_eq!(q_binomial_poly(s).unwrap(), oracle, "n={n} k={k}");
                assert_eq!(row[k as usize], oracle, "row n={n} k={k}");
                assert_eq!(factorization_to_poly(&q_binomial_factorization(s).unwrap()), oracle);
            }
        }
    }

    #[test]
    fn witness_examples() {
        assert_eq!(exists_witness_k(5, 3).unwrap(), None);
        assert_eq!(exists_witness_k(5, 4).unwrap(), Some(2));
        assert_eq!(exists_witness_k(9, 7).unwrap(), Some(3));
        assert_eq!(exists_witness_k(9, 1).unwrap(), None);
        assert!(exists_witness_k(5, 6).is_err());
        assert!(exists_witness_k(5, 0).is_err());
    }

    #[test]
    fn lcm_side_examples() {
        assert_eq!(lcm_qbinomials_factorization(1).unwrap(), fact(&[]));
        assert_eq!(lcm_qbinomials_factorization(2).unwrap(), fact(&[2]));
        assert_eq!(lcm_qbinomials_factorization(5).unwrap(), fact(&[4, 5]));
        assert!(lcm_qbinomials_factorization(0).is_err());
    }

    #[test]
    fn rhs_examples() {
        assert_eq!(rhs_factorization(1).unwrap(), fact(&[]));
        assert_eq!(rhs_factorization(2).unwrap(), fact(&[2]));
        assert_eq!(rhs_factorization(6).unwrap(), fact(&[2, 3, 4, 5, 6]));
        for n in 1..=300 {
            assert_eq!(rhs_factorization_via_qintegers(n).unwrap(), rhs_factorization(n).unwrap());
        }
    }

    #[test]
    fn three_routes_to_the_left_side() {
        for n in 1..=120 {
            let fast = lcm_qbinomials_factorization(n).unwrap();
            assert_eq!(lcm_qbinomials_factorization_with(n, WitnessSearch::Exhaustive).unwrap(), fast);
            assert_eq!(lcm_qbinomials_factorization_by_rows(n).unwrap(), fast);
        }
    }

    #[test]
    fn verify_small_cases() {
        let r = verify_main_identity(1, Depth::Polynomial).unwrap();
        assert!(r.passed() && r.poly_checked);
        assert_eq!(r.text_line(), "n=1: lhs=1 rhs=1 PASS");

        let r = verify_main_identity(2, Depth::Polynomial).unwrap();
        assert_eq!(r.poly_equal, Some(true));
        assert_eq!(factorization_to_poly(&r.lhs_factors), p(&[1, 1]));

        let r = verify_main_identity(5, Depth::Factored).unwrap();
        assert!(r.factor_equal && !r.poly_checked && r.poly_equal.is_none());
        assert_eq!(r.lhs_factors, fact(&[4, 5]));
        assert_eq!(r.witness_table.unwrap(), BTreeMap::from([(4, 2), (5, 1)]));
        assert!(verify_main_identity(0, Depth::Factored).is_err());
    }

    #[test]
    fn record_json_shape() {
        let r = verify_main_identity(5, Depth::Factored).unwrap();
        let json = serde_json::to_string(&r.record()).unwrap();
        assert_eq!(
            json,
            r#"{"n":5,"depth":"factored","lhs":[{"d":4,"e":1},{"d":5,"e":1}],"rhs":[{"d":4,"e":1},{"d":5,"e":1}],"factor_equal":true,"poly_equal":null}"#
        );
    }

    #[test]
    fn factorization_is_symmetric_in_k() {
        for n in 0..=80 {
            for k in 0..=n {
                assert_eq!(
                    q_binomial_factorization(QBinomialSpec { n, k }).unwrap(),
                    q_binomial_factorization(QBinomialSpec { n, k: n - k }).unwrap()
                );
            }
        }
    }
}
