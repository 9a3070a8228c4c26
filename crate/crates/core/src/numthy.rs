//! Elementary number theory on machine integers: divisors, the Möbius
//! function, prime powers, base-p digits and `lcm(1..m)`.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{positive, Error, Result};

/// Trial division up to `sqrt(n)`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<u64> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Prime factorization as ascending `(p, multiplicity)` pairs; empty for 1.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut r = 0;
            while n.is_multiple_of(d) {
                n /= d;
                r += 1;
            }
            out.push((d, r));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Result<Vec<u64>> {
    positive("n", n)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

pub fn moebius(n: u64) -> Result<i8> {
    positive("n", n)?;
    let f = factorize(n);
    if f.iter().any(|&(_, r)| r > 1) {
        Ok(0)
    } else if f.len().is_multiple_of(2) {
        Ok(1)
    } else {
        Ok(-1)
    }
}

/// Euler's totient from the prime factorization.
pub fn totient(n: u64) -> Result<u64> {
    positive("n", n)?;
    Ok(factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

/// `(p, r)` with `n = p^r`, `r >= 1`. One is not a prime power.
pub fn prime_power(n: u64) -> Result<Option<(u64, u32)>> {
    positive("n", n)?;
    match factorize(n).as_slice() {
        &[(p, r)] => Ok(Some((p, r))),
        _ => Ok(None),
    }
}

/// Base-p expansion `n = sum a_i p^i`, least significant digit first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePDigits {
    p: u64,
    digits: Vec<u64>,
    first_non_max: Option<usize>,
}

impl BasePDigits {
    pub fn base(&self) -> u64 {
        self.p
    }

    /// `a_0, ..., a_M`.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// `M`, the index of the most significant (nonzero) digit.
    pub fn top_index(&self) -> usize {
        self.digits.len() - 1
    }

    /// `i_0 = min{i : a_i != p-1}`; `None` exactly when `n = p^(M+1) - 1`.
    pub fn first_non_max(&self) -> Option<usize> {
        self.first_non_max
    }

    pub fn value(&self) -> BigUint {
        self.digits
            .iter()
            .rev()
            .fold(BigUint::default(), |acc, &d| acc * self.p + d)
    }
}

pub fn base_p_digits(n: u64, p: u64) -> Result<BasePDigits> {
    positive("n", n)?;
    require_prime(p)?;
    let mut digits = Vec::new();
    let mut rest = n;
    while rest > 0 {
        digits.push(rest % p);
        rest /= p;
    }
    let first_non_max = digits.iter().position(|&a| a != p - 1);
    Ok(BasePDigits { p, digits, first_non_max })
}

/// `lcm(1, 2, ..., m)`: the product of the largest power of each prime `p <= m`.
pub fn int_lcm_range(m: u64) -> Result<BigUint> {
    positive("m", m)?;
    let mut acc = BigUint::one();
    for p in primes_up_to(m) {
        let mut pk = p;
        while pk <= m / p {
            pk *= p;
        }
        acc *= pk;
    }
    Ok(acc)
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(m: u64) -> Vec<u64> {
    let m = m as usize;
    if m < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; m + 1];
    let mut out = Vec::new();
    for i in 2..=m {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= m {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(7).unwrap(), vec![1, 7]);
        assert_eq!(divisors(36).unwrap(), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert!(matches!(divisors(0), Err(Error::NonPositive { .. })));
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(4).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
        assert!(moebius(0).is_err());
    }

    #[test]
    fn moebius_sums_over_divisors() {
        for n in 1..=10_000u64 {
            let s: i64 = divisors(n).unwrap().into_iter().map(|d| moebius(d).unwrap() as i64).sum();
            assert_eq!(s, i64::from(n == 1), "n = {n}");
        }
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(prime_power(8).unwrap(), Some((2, 3)));
        assert_eq!(prime_power(6).unwrap(), None);
        assert_eq!(prime_power(1).unwrap(), None);
        assert_eq!(prime_power(7).unwrap(), Some((7, 1)));
        assert!(prime_power(0).is_err());
    }

    #[test]
    fn prime_power_reverifies() {
        for n in 1..=10_000u64 {
            if let Some((p, r)) = prime_power(n).unwrap() {
                assert!(is_prime(p));
                assert_eq!(p.pow(r), n);
            }
        }
    }

    #[test]
    fn digit_examples() {
        let d = base_p_digits(5, 2).unwrap();
        assert_eq!((d.digits(), d.top_index(), d.first_non_max()), (&[1, 0, 1][..], 2, Some(1)));
        let d = base_p_digits(7, 2).unwrap();
        assert_eq!((d.digits(), d.top_index(), d.first_non_max()), (&[1, 1, 1][..], 2, None));
        let d = base_p_digits(10, 3).unwrap();
        assert_eq!((d.digits(), d.top_index(), d.first_non_max()), (&[1, 0, 1][..], 2, Some(0)));
        assert_eq!(base_p_digits(10, 4), Err(Error::NotPrime(4)));
        assert!(base_p_digits(0, 3).is_err());
    }

    #[test]
    fn lcm_range_examples() {
        assert_eq!(int_lcm_range(1).unwrap(), BigUint::from(1u32));
        assert_eq!(int_lcm_range(4).unwrap(), BigUint::from(12u32));
        assert_eq!(int_lcm_range(10).unwrap(), BigUint::from(2520u32));
    }

    #[test]
    fn lcm_range_matches_gcd_fold() {
        let mut fold = BigUint::one();
        for m in 1..=300u64 {
            fold = fold.lcm(&BigUint::from(m));
            assert_eq!(int_lcm_range(m).unwrap(), fold, "m = {m}");
        }
    }

    #[test]
    fn lcm_range_structure() {
        for m in 2..=400u64 {
            let cur = int_lcm_range(m).unwrap();
            for j in 1..=m {
                assert_eq!(&cur % j, BigUint::default());
            }
            let ratio = &cur / int_lcm_range(m - 1).unwrap();
            let ratio: u64 = ratio.try_into().unwrap();
            assert!(ratio == 1 || prime_power(ratio).unwrap().is_some());
        }
    }

    #[test]
    fn totient_small() {
        let brute = |n: u64| (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64;
        for n in 1..=500 {
            assert_eq!(totient(n).unwrap(), brute(n));
        }
    }

    proptest! {
        #[test]
        fn digits_roundtrip(n in 1u64..1_000_000, pi in 0usize..6) {
            let p = [2u64, 3, 5, 7, 11, 13][pi];
            let d = base_p_digits(n, p).unwrap();
            prop_assert_eq!(d.value(), BigUint::from(n));
            prop_assert!(d.digits().iter().all(|&a| a < p));
            prop_assert!(*d.digits().last().unwrap() != 0);
            let all_max = p.pow(d.top_index() as u32 + 1) - 1 == n;
            prop_assert_eq!(d.first_non_max().is_none(), all_max);
        }
    }
}
