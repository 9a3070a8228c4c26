//! Cyclotomic polynomials and products of them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{positive, Error, Result};
use crate::numthy::{divisors, moebius, prime_power};
use crate::poly::{poly_exact_div, poly_mul, IntPoly};

/// A product `prod Phi_d(q)^e_d` over indices `d >= 2`, stored as the
/// exponent map. Index 1 is excluded: `Phi_1(1) = 0` would zero out every
/// evaluation at `q = 1`, and none of the products this crate builds contain
/// it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CycFactorization {
    exponents: BTreeMap<u64, u32>,
}

impl CycFactorization {
    pub fn new() -> Self {
        Self::default()
    }

    /// Each index once.
    pub fn from_indices(ds: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut f = Self::new();
        for d in ds {
            f.multiply_by(d, 1)?;
        }
        Ok(f)
    }

    /// Multiplies in `Phi_d^e`. A zero exponent is a no-op.
    pub fn multiply_by(&mut self, d: u64, e: u32) -> Result<()> {
        if d < 2 {
            return Err(Error::IndexTooSmall(d));
        }
        if e > 0 {
            *self.exponents.entry(d).or_insert(0) += e;
        }
        Ok(())
    }

    pub fn exponent(&self, d: u64) -> u32 {
        self.exponents.get(&d).copied().unwrap_or(0)
    }

    /// `(d, e_d)` in ascending `d`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.exponents.iter().map(|(&d, &e)| (d, e))
    }

    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.exponents.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.values().all(|&e| e == 1)
    }

    /// Product: exponents add.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, e) in other.iter() {
            *out.exponents.entry(d).or_insert(0) += e;
        }
        out
    }

    /// Lcm: exponents take the maximum.
    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.lcm_assign(other);
        out
    }

    pub fn lcm_assign(&mut self, other: &Self) {
        for (d, e) in other.iter() {
            let slot = self.exponents.entry(d).or_insert(0);
            *slot = (*slot).max(e);
        }
    }

    /// Exact quotient `self / divisor`; fails if some exponent would go negative.
    pub fn quotient(&self, divisor: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (d, e) in divisor.iter() {
            let have = out.exponent(d);
            if have < e {
                return Err(Error::NonExactDivision);
            }
            if have == e {
                out.exponents.remove(&d);
            } else {
                out.exponents.insert(d, have - e);
            }
        }
        Ok(out)
    }

    /// Degree of the expanded product.
    pub fn degree(&self) -> u64 {
        self.iter()
            .map(|(d, e)| crate::numthy::totient(d).unwrap_or(0) * u64::from(e))
            .sum()
    }
}

impl fmt::Display for CycFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (i, (d, e)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "Phi_{d}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Factor {
    d: u64,
    e: u32,
}

impl Serialize for CycFactorization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|(d, e)| Factor { d, e }))
    }
}

impl<'de> Deserialize<'de> for CycFactorization {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let factors = Vec::<Factor>::deserialize(de)?;
        let mut out = CycFactorization::new();
        for Factor { d, e } in factors {
            if e == 0 {
                return Err(serde::de::Error::custom(format!("zero exponent for Phi_{d}")));
            }
            out.multiply_by(d, e).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

type Cache = RwLock<HashMap<u64, Arc<IntPoly>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Phi_d(q)` by Möbius inversion of `q^d - 1 = prod_{e | d} Phi_e(q)`:
/// the product of `q^e - 1` over divisors with `mu(d/e) = 1`, divided by
/// those with `mu(d/e) = -1`. Memoized.
pub fn cyclotomic_poly(d: u64) -> Result<Arc<IntPoly>> {
    positive("d", d)?;
    if let Some(hit) = cache().read().unwrap_or_else(|e| e.into_inner()).get(&d) {
        return Ok(Arc::clone(hit));
    }
    let phi = Arc::new(compute_cyclotomic(d)?);
    let mut w = cache().write().unwrap_or_else(|e| e.into_inner());
    Ok(Arc::clone(w.entry(d).or_insert(phi)))
}

fn compute_cyclotomic(d: u64) -> Result<IntPoly> {
    let mut num = IntPoly::one();
    let mut den = Vec::new();
    for e in divisors(d)? {
        match moebius(d / e)? {
            1 => num = poly_mul(&num, &IntPoly::q_pow_minus_one(e as usize)),
            -1 => den.push(e),
            _ => {}
        }
    }
    for e in den {
        num = poly_exact_div(&num, &IntPoly::q_pow_minus_one(e as usize))
            .map_err(|_| Error::Internal(format!("Phi_{d}: inexact division by q^{e} - 1")))?;
    }
    Ok(num)
}

/// Expands `prod Phi_d^e_d`.
///
/// Each `Phi_d` is rewritten as `prod_{t | d} (q^t - 1)^mu(d/t)`; the net
/// exponent of every `q^t - 1` is collected first, so the expansion is a
/// sequence of sparse multiplications followed by sparse exact divisions.
pub fn factorization_to_poly(f: &CycFactorization) -> IntPoly {
    let mut net: BTreeMap<u64, i64> = BTreeMap::new();
    for (d, e) in f.iter() {
        for t in divisors(d).expect("indices are >= 2") {
            let mu = moebius(d / t).expect("positive") as i64;
            if mu != 0 {
                *net.entry(t).or_insert(0) += mu * i64::from(e);
            }
        }
    }
    let mut acc = IntPoly::one();
    for (&t, &k) in net.iter().filter(|(_, &k)| k > 0) {
        let factor = IntPoly::q_pow_minus_one(t as usize);
        for _ in 0..k {
            acc = poly_mul(&acc, &factor);
        }
    }
    for (&t, &k) in net.iter().filter(|(_, &k)| k < 0) {
        let factor = IntPoly::q_pow_minus_one(t as usize);
        for _ in 0..-k {
            acc = poly_exact_div(&acc, &factor).expect("a product of cyclotomic polynomials is a polynomial");
        }
    }
    acc
}

/// `Phi_d(1)`: `p` when `d = p^r`, otherwise 1.
pub fn phi_at_one(d: u64) -> Result<u64> {
    if d < 2 {
        return Err(Error::IndexTooSmall(d));
    }
    Ok(prime_power(d)?.map_or(1, |(p, _)| p))
}

/// `prod Phi_d(1)^e_d`.
pub fn factorization_value_at_one(f: &CycFactorization) -> BigUint {
    let mut acc = BigUint::one();
    for (d, e) in f.iter() {
        let v = phi_at_one(d).expect("indices are >= 2");
        if v > 1 {
            acc *= BigUint::from(v).pow(e);
        }
    }
    acc
}
