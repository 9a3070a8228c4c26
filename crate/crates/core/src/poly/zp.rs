//! Arithmetic modulo word-size primes and dense polynomial kernels over
//! `Z/pZ`.
//!
//! Field elements are kept in Montgomery form inside polynomial vectors;
//! `Field::reduce` enters the domain and `Field::leave` exits it.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};

/// Every modulus is an odd prime below this bound, so sums of two reduced
/// values never overflow and `t + m*p` in REDC fits in 128 bits.
const PRIME_BOUND: u64 = 1 << 62;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    p: u64,
    /// `-p^{-1} mod 2^64`
    neg_inv: u64,
    /// `2^128 mod p`
    r2: u64,
    /// `2^64 mod p`
    r1: u64,
}

impl Field {
    pub fn new(p: u64) -> Field {
        debug_assert!(p % 2 == 1 && p < PRIME_BOUND);
        let mut inv: u64 = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r1 = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r1 as u128 * r1 as u128) % p as u128) as u64;
        Field {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
            r1,
        }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Any u64 to the Montgomery form of its residue. `x * r2 < 2^64 * p`,
    /// so a single REDC suffices even for `x >= p`.
    #[inline]
    pub fn enter(&self, x: u64) -> u64 {
        self.redc(x as u128 * self.r2 as u128)
    }

    /// Montgomery form back to the plain residue.
    #[inline]
    pub fn leave(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    /// `sum x_i y_i` over reduced Montgomery elements. Each product is below
    /// `2^124`, so sixteen of them fit in a `u128` before one reduction.
    #[inline]
    pub fn dot(&self, xs: &[u64], ys: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (cx, cy) in xs.chunks(16).zip(ys.chunks(16)) {
            let mut t: u128 = 0;
            for (&x, &y) in cx.iter().zip(cy) {
                t += x as u128 * y as u128;
            }
            acc = self.add(acc, self.fold(t));
        }
        acc
    }

    /// REDC of `t < 16 p^2`: the high word is below `4p`, so reducing it
    /// first brings `t` under `p * 2^64`.
    #[inline]
    fn fold(&self, t: u128) -> u64 {
        let mut hi = (t >> 64) as u64;
        while hi >= self.p {
            hi -= self.p;
        }
        self.redc(((hi as u128) << 64) | (t as u64 as u128))
    }

    pub fn one(&self) -> u64 {
        self.r1
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero Montgomery element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    /// Residue of an arbitrary-precision integer, in Montgomery form.
    pub fn reduce(&self, x: &BigInt) -> u64 {
        let mut digits = x.iter_u64_digits();
        let m = if digits.len() == 1 {
            self.enter(digits.next().unwrap_or(0))
        } else {
            // Horner over base-2^64 limbs; r2 is the Montgomery form of 2^64
            let mut acc = 0u64;
            for d in digits.rev() {
                acc = self.add(self.mul(acc, self.r2), self.enter(d));
            }
            acc
        };
        if x.sign() == Sign::Minus {
            self.neg(m)
        } else {
            m
        }
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const PRIME_POOL: usize = 192;

/// Descending primes just below 2^62.
pub(crate) fn primes() -> &'static [Field] {
    static POOL: OnceLock<Vec<Field>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_POOL);
        let mut candidate = PRIME_BOUND - 1;
        while out.len() < PRIME_POOL {
            if is_prime_u64(candidate) {
                out.push(Field::new(candidate));
            }
            candidate -= 2;
        }
        out
    })
}

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn from_int(f: &Field, coeffs: &[BigInt]) -> Vec<u64> {
    let mut out: Vec<u64> = coeffs.iter().map(|c| f.reduce(c)).collect();
    trim(&mut out);
    out
}

/// Scale so the leading coefficient is one.
pub(crate) fn make_monic(f: &Field, a: &mut [u64]) {
    if let Some(&lc) = a.last() {
        if lc != f.one() {
            let inv = f.inv(lc);
            for x in a.iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
    }
}

/// `a <- a mod b` for nonzero `b`, via the quotient as in [`div_exact`].
fn rem(f: &Field, a: &mut Vec<u64>, b: &[u64]) {
    let db = b.len() - 1;
    if a.len() <= db {
        return;
    }
    let inv_lc = f.inv(b[db]);
    let rev: Vec<u64> = b.iter().rev().copied().collect();
    let nq = a.len() - db;
    let mut quot = vec![0u64; nq];
    for i in (0..nq).rev() {
        let hi = (i + db).min(nq - 1);
        let s = f.dot(&quot[i + 1..=hi], &rev[1..=hi - i]);
        quot[i] = f.mul(f.sub(a[i + db], s), inv_lc);
    }
    for m in 0..db {
        let hi = m.min(nq - 1);
        a[m] = f.sub(a[m], f.dot(&quot[..=hi], &rev[db - m..=db - m + hi]));
    }
    a.truncate(db);
    trim(a);
}

/// Monic gcd by the Euclidean algorithm.
pub(crate) fn gcd(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut r0, mut r1) = if a.len() >= b.len() { (a.to_vec(), b.to_vec()) } else { (b.to_vec(), a.to_vec()) };
    while !r1.is_empty() {
        rem(f, &mut r0, &r1);
        std::mem::swap(&mut r0, &mut r1);
    }
    make_monic(f, &mut r0);
    r0
}

/// Quotient of an exact division, `None` if the remainder is nonzero.
///
/// Quotient coefficients come top-down as dot products against the reversed
/// divisor; the low coefficients of `quotient * b` are then compared with `a`.
pub(crate) fn div_exact(f: &Field, a: &[u64], b: &[u64]) -> Option<Vec<u64>> {
    let db = b.len().checked_sub(1)?;
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let inv_lc = f.inv(b[db]);
    // rev[t] = b[db - t]
    let rev: Vec<u64> = b.iter().rev().copied().collect();
    let nq = a.len() - db;
    let mut quot = vec![0u64; nq];
    for i in (0..nq).rev() {
        let hi = (i + db).min(nq - 1);
        let s = f.dot(&quot[i + 1..=hi], &rev[1..=hi - i]);
        quot[i] = f.mul(f.sub(a[i + db], s), inv_lc);
    }
    for m in 0..db {
        let hi = m.min(nq - 1);
        if f.dot(&quot[..=hi], &rev[db - m..=db - m + hi]) != a[m] {
            return None;
        }
    }
    Some(quot)
}

pub(crate) fn mul(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let nb = b.len();
    // rev[t] = b[nb - 1 - t]
    let rev: Vec<u64> = b.iter().rev().copied().collect();
    (0..a.len() + nb - 1)
        .map(|k| {
            let lo = k.saturating_sub(nb - 1);
            let hi = k.min(a.len() - 1);
            f.dot(&a[lo..=hi], &rev[nb - 1 + lo - k..=nb - 1 + hi - k])
        })
        .collect()
}

pub(crate) fn scale(f: &Field, a: &mut [u64], c: u64) {
    for x in a.iter_mut() {
        *x = f.mul(*x, c);
    }
}
