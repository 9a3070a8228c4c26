//! Integer counterparts at `q = 1`: `lcm_k C(n, k) = lcm(1..n+1) / (n+1)` and
//! the bounds on `lcm(1..n)`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{carry_count_rhs, lcm_qbinomials_factorization, rhs_factorization};
use crate::cyclotomic::factorization_value_at_one;
use crate::error::{positive, Error, Result};
use crate::numthy::{int_lcm_range, primes_up_to};

/// `lcm(C(n,0), ..., C(n,n))` by gcd folding; only `k <= n/2` by symmetry.
pub fn binomial_row_lcm(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut c = BigUint::one();
    for k in 1..=n / 2 {
        c = c * (n - k + 1) / k;
        if !(&acc % &c).is_zero() {
            acc = acc.lcm(&c);
        }
    }
    acc
}

/// `lcm(C(n,0), ..., C(n,n))` given a candidate common multiple `m`, or
/// `None` if some `C(n,k)` does not divide `m`.
///
/// When every `C(n,k)` divides `m`, the lcm is `m / gcd_k(m / C(n,k))`. Going
/// outward from the middle of the row, `m/C(n,k-1) = (m/C(n,k)) (n-k+1) / k`,
/// so each quotient costs a word-sized multiply and exact division. The
/// middle quotient is the smallest, which lets the gcd fold reach 1 early.
pub fn binomial_row_lcm_within(n: u64, m: &BigUint) -> Option<BigUint> {
    if m.is_zero() {
        return None;
    }
    let mid = n / 2;
    let mut central = BigUint::one();
    for k in 1..=mid {
        central = central * (n - k + 1) / k;
    }
    let (mut quot, rem) = m.div_rem(&central);
    if !rem.is_zero() {
        return None;
    }
    let mut g = quot.clone();
    for k in (1..=mid).rev() {
        let scaled = quot * (n - k + 1);
        if !(&scaled % k).is_zero() {
            return None;
        }
        quot = scaled / k;
        if !g.is_one() {
            g = g.gcd(&(&quot % &g));
        }
    }
    Some(m / g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalCheck {
    pub n: u64,
    pub row_lcm: BigUint,
    /// `lcm(1..n+1) / (n+1)`.
    pub range_ratio: BigUint,
}

impl ClassicalCheck {
    pub fn holds(&self) -> bool {
        self.row_lcm == self.range_ratio
    }
}

pub fn classical_farhi_check(n: u64) -> Result<ClassicalCheck> {
    positive("n", n)?;
    let (range_ratio, rem) = int_lcm_range(n + 1)?.div_rem(&BigUint::from(n + 1));
    if !rem.is_zero() {
        return Err(Error::Internal(format!("{} does not divide lcm(1..{})", n + 1, n + 1)));
    }
    let row_lcm = binomial_row_lcm_within(n, &range_ratio).unwrap_or_else(|| binomial_row_lcm(n));
    Ok(ClassicalCheck { n, row_lcm, range_ratio })
}

/// Both factored sides evaluated at `q = 1`, next to their integer
/// counterparts and `prod_{p <= n} p^(max carry count)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitCheck {
    pub n: u64,
    pub lhs_value: BigUint,
    pub rhs_value: BigUint,
    pub row_lcm: BigUint,
    pub range_ratio: BigUint,
    pub prime_product: BigUint,
}

impl LimitCheck {
    pub fn holds(&self) -> bool {
        self.lhs_value == self.row_lcm
            && self.rhs_value == self.range_ratio
            && self.lhs_value == self.rhs_value
            && self.prime_product == self.lhs_value
    }
}

pub fn limit_consistency_check(n: u64) -> Result<LimitCheck> {
    let classical = classical_farhi_check(n)?;
    let mut prime_product = BigUint::one();
    for p in primes_up_to(n) {
        prime_product *= BigUint::from(p).pow(carry_count_rhs(n, p)? as u32);
    }
    Ok(LimitCheck {
        n,
        lhs_value: factorization_value_at_one(&lcm_qbinomials_factorization(n)?),
        rhs_value: factorization_value_at_one(&rhs_factorization(n)?),
        row_lcm: classical.row_lcm,
        range_ratio: classical.range_ratio,
        prime_product,
    })
}

/// `2^(n-1) <= lcm(1..n) <= 3^n`.
pub fn bounds_check(n: u64) -> Result<bool> {
    positive("n", n)?;
    let l = int_lcm_range(n)?;
    let n = u32::try_from(n).map_err(|_| Error::OutOfRange(format!("n = {n} too large for the bounds check")))?;
    Ok(BigUint::from(2u32).pow(n - 1) <= l && l <= BigUint::from(3u32).pow(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_examples() {
        let c = classical_farhi_check(4).unwrap();
        assert!(c.holds());
        assert_eq!(c.row_lcm, BigUint::from(12u32));
        let c = classical_farhi_check(1).unwrap();
        assert_eq!((c.row_lcm.clone(), c.holds()), (BigUint::one(), true));
        assert!(classical_farhi_check(0).is_err());
    }

    #[test]
    fn shortcut_matches_plain_fold() {
        for n in 1..=600 {
            let plain = binomial_row_lcm(n);
            assert_eq!(binomial_row_lcm_within(n, &plain).as_ref(), Some(&plain));
            let doubled = &plain * 6u32;
            assert_eq!(binomial_row_lcm_within(n, &doubled).as_ref(), Some(&plain));
            if n >= 2 {
                assert_eq!(binomial_row_lcm_within(n, &(&plain + 1u32)), None, "n = {n}");
            }
        }
        assert_eq!(binomial_row_lcm_within(4, &BigUint::from(6u32)), None);
    }

    #[test]
    fn limit_examples() {
        let l = limit_consistency_check(4).unwrap();
        assert!(l.holds());
        assert_eq!(l.lhs_value, BigUint::from(12u32));
        assert!(limit_consistency_check(1).unwrap().holds());
    }

    #[test]
    fn bounds_examples() {
        assert!(bounds_check(1).unwrap());
        assert!(bounds_check(7).unwrap());
        assert!(bounds_check(0).is_err());
    }
}
