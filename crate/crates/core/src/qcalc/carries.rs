//! Carry counts in base `p` for `n = k + (n - k)`.

use crate::error::{positive, Error, Result};
use crate::numthy::{base_p_digits, require_prime};

/// `p^1, p^2, ...` while `p^r <= n`.
fn levels(n: u64, p: u64) -> impl Iterator<Item = u64> {
    std::iter::successors(Some(p), move |&pr| pr.checked_mul(p)).take_while(move |&pr| pr <= n)
}

fn check_args(n: u64, k: u64, p: u64) -> Result<()> {
    positive("n", n)?;
    require_prime(p)?;
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    Ok(())
}

/// `floor(n/p^r) - floor(k/p^r) - floor((n-k)/p^r)`, which is 0 or 1.
pub fn level_carry(n: u64, k: u64, p: u64, r: u32) -> Result<u64> {
    check_args(n, k, p)?;
    Ok(match p.checked_pow(r) {
        Some(pr) => n / pr - k / pr - (n - k) / pr,
        None => 0,
    })
}

/// `level_carry(n, k, p, r)` for `r = 1..=M`, where `p^M <= n < p^(M+1)`.
pub fn carry_pattern(n: u64, k: u64, p: u64) -> Result<Vec<u64>> {
    check_args(n, k, p)?;
    Ok(levels(n, p).map(|pr| n / pr - k / pr - (n - k) / pr).collect())
}

/// Number of carries when adding `k` and `n - k` in base `p`.
pub fn carry_sum_for_k(n: u64, k: u64, p: u64) -> Result<u64> {
    Ok(carry_pattern(n, k, p)?.into_iter().sum())
}

/// Closed form from the base-p digits of `n`: zero if every digit is `p - 1`,
/// otherwise `M - i0` with `i0` the position of the lowest digit below `p - 1`.
pub fn carry_count_lhs(n: u64, p: u64) -> Result<u64> {
    let digits = base_p_digits(n, p)?;
    Ok(match digits.first_non_max() {
        None => 0,
        Some(i0) => (digits.top_index() - i0) as u64,
    })
}

/// Number of levels `r` with `p^r <= n` and `p^r` not dividing `n + 1`.
pub fn carry_count_by_divisibility(n: u64, p: u64) -> Result<u64> {
    positive("n", n)?;
    require_prime(p)?;
    Ok(levels(n, p).filter(|pr| !(n + 1).is_multiple_of(*pr)).count() as u64)
}

/// `max_{0 <= k <= n} carry_sum_for_k(n, k, p)`, by enumeration.
pub fn carry_count_rhs(n: u64, p: u64) -> Result<u64> {
    positive("n", n)?;
    require_prime(p)?;
    let pows: Vec<u64> = levels(n, p).collect();
    Ok((0..=n)
        .map(|k| pows.iter().map(|&pr| n / pr - k / pr - (n - k) / pr).sum::<u64>())
        .max()
        .unwrap_or(0))
}

/// `k = p^M - 1`, which attains the maximal carry count. Requires `n >= p`.
pub fn witness_all_carries(n: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    if n < p {
        return Err(Error::OutOfRange(format!("need n >= p, got n = {n}, p = {p}")));
    }
    let top = levels(n, p).last().unwrap_or(1);
    Ok(top - 1)
}

/// A single `k` carrying at every requested level, and how it was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommonWitness {
    /// `k = p^M - 1` works.
    ClosedForm(u64),
    /// `p^M - 1` does not work (or is zero); the smallest `k` that does.
    Search(u64),
    /// No `k` in `1..=n` carries at all requested levels.
    NotFound,
}

impl CommonWitness {
    pub fn k(&self) -> Option<u64> {
        match *self {
            CommonWitness::ClosedForm(k) | CommonWitness::Search(k) => Some(k),
            CommonWitness::NotFound => None,
        }
    }
}

/// Given strictly increasing levels `rs`, each admitting some `k_i` in `1..=n`
/// with a carry at level `r_i`, looks for one `k` carrying at all of them.
pub fn corollary_common_witness(n: u64, p: u64, rs: &[u32]) -> Result<CommonWitness> {
    positive("n", n)?;
    require_prime(p)?;
    if rs.first() == Some(&0) || rs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::OutOfRange(format!("levels must be positive and strictly increasing: {rs:?}")));
    }
    let carries_at = |k: u64, r: u32| match p.checked_pow(r) {
        Some(pr) => n / pr - k / pr - (n - k) / pr == 1,
        None => false,
    };
    for &r in rs {
        if !(1..=n).any(|k| carries_at(k, r)) {
            return Err(Error::HypothesisViolated { n, level: r });
        }
    }
    let all = |k: u64| rs.iter().all(|&r| carries_at(k, r));
    let closed = levels(n, p).last().map_or(0, |pm| pm - 1);
    if closed >= 1 && all(closed) {
        return Ok(CommonWitness::ClosedForm(closed));
    }
    Ok((1..=n).find(|&k| all(k)).map_or(CommonWitness::NotFound, CommonWitness::Search))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carry_sum_examples() {
        assert_eq!(carry_sum_for_k(4, 1, 2).unwrap(), 2);
        assert_eq!(carry_sum_for_k(4, 2, 2).unwrap(), 1);
        assert_eq!(carry_sum_for_k(9, 0, 3).unwrap(), 0);
        assert!(carry_sum_for_k(4, 5, 2).is_err());
        assert_eq!(carry_sum_for_k(4, 1, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn carry_count_examples() {
        assert_eq!(carry_count_lhs(5, 2).unwrap(), 1);
        assert_eq!(carry_count_rhs(5, 2).unwrap(), 1);
        assert_eq!(carry_count_lhs(7, 2).unwrap(), 0);
        assert_eq!(carry_count_rhs(7, 2).unwrap(), 0);
        assert_eq!(carry_count_lhs(10, 3).unwrap(), 2);
        assert_eq!(carry_count_rhs(10, 3).unwrap(), 2);
        assert_eq!(carry_count_lhs(8, 3).unwrap(), 0);
        assert_eq!(carry_count_rhs(8, 3).unwrap(), 0);
        assert!(carry_count_lhs(0, 2).is_err());
        assert!(carry_count_rhs(5, 6).is_err());
    }

    #[test]
    fn witness_examples() {
        assert_eq!(witness_all_carries(10, 3).unwrap(), 8);
        assert_eq!(carry_pattern(10, 8, 3).unwrap(), vec![1, 1]);
        assert_eq!(witness_all_carries(5, 2).unwrap(), 3);
        assert_eq!(carry_pattern(5, 3, 2).unwrap(), vec![0, 1]);
        assert_eq!(witness_all_carries(2, 2).unwrap(), 1);
        assert!(witness_all_carries(4, 5).is_err());
    }

    #[test]
    fn level_carry_is_binary() {
        for p in [2u64, 3, 5, 7] {
            for n in 1..=200 {
                for k in 0..=n {
                    for r in 1..=8 {
                        assert!(level_carry(n, k, p, r).unwrap() <= 1);
                    }
                }
            }
        }
        assert_eq!(level_carry(10, 8, 3, 64).unwrap(), 0);
    }

    #[test]
    fn divisibility_count_matches_digit_form() {
        for p in [2u64, 3, 5, 7, 11] {
            for n in 1..=3000 {
                assert_eq!(carry_count_by_divisibility(n, p).unwrap(), carry_count_lhs(n, p).unwrap());
            }
        }
    }

    #[test]
    fn common_witness_examples() {
        assert_eq!(corollary_common_witness(10, 3, &[1, 2]).unwrap(), CommonWitness::ClosedForm(8));
        assert_eq!(corollary_common_witness(10, 3, &[2]).unwrap(), CommonWitness::ClosedForm(8));
        assert_eq!(
            corollary_common_witness(8, 3, &[1]),
            Err(Error::HypothesisViolated { n: 8, level: 1 })
        );
        assert!(corollary_common_witness(10, 3, &[2, 1]).is_err());
        assert!(corollary_common_witness(10, 3, &[0, 1]).is_err());
        assert_eq!(corollary_common_witness(2, 3, &[]).unwrap(), CommonWitness::Search(1));
    }
}
