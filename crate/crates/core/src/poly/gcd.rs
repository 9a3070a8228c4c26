//! Polynomial gcd and lcm over the integers.
//!
//! [`poly_gcd`] runs the Euclidean algorithm modulo word-size primes and lifts
//! the gcd together with both cofactors by Chinese remaindering. The lift is
//! accepted only with an exact certificate: once the modulus exceeds twice a
//! bound on every coefficient of `h * c` and of `lc * a`, the congruence
//! `h * c = lc * a` that holds modulo each prime holds over `Z`. A certified
//! common divisor whose degree equals the modular gcd degree is the gcd, since
//! reduction modulo a prime not dividing the leading coefficients can only
//! raise the gcd degree. Nothing in here knows about cyclotomic structure.
//!
//! [`poly_gcd_prs`] is the primitive pseudo-remainder sequence, kept as an
//! independent reference and as the fallback when the modular lift does not
//! certify within the prime pool.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::zp::{self, Field};
use super::{poly_exact_div, poly_mul, IntPoly};
use crate::error::{Error, Result};

/// Upper limit on primes spent on one lift before falling back to the
/// pseudo-remainder sequence (about 3700 bits of modulus).
const MAX_LIFT_PRIMES: usize = 60;

/// Below this many coefficient products the BigInt schoolbook product is
/// cheaper than a multi-modular one.
const MODULAR_MUL_THRESHOLD: usize = 4096;

/// `gcd` is canonical; `a = gcd * cof_a` and `b = gcd * cof_b` exactly.
#[derive(Debug, Clone)]
pub(crate) struct GcdSplit {
    pub gcd: IntPoly,
    pub cof_a: IntPoly,
    pub cof_b: IntPoly,
}

/// Primitive gcd with positive leading coefficient. `gcd(a, 0)` is the
/// canonical form of `a`; `gcd(0, 0)` is zero.
pub fn poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    gcd_split(a, b).gcd
}

/// Canonical lcm of two nonzero polynomials, `a * b / gcd(a, b)`.
pub fn poly_lcm(a: &IntPoly, b: &IntPoly) -> Result<IntPoly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomialInput);
    }
    let (a, b) = (a.canonical(), b.canonical());
    let split = gcd_split(&a, &b);
    // a and b are canonical, so both cofactors are canonical too
    let (big, small) = if split.cof_b.degree() <= split.cof_a.degree() {
        (&a, &split.cof_b)
    } else {
        (&b, &split.cof_a)
    };
    Ok(mul_exact(big, small))
}

/// Canonical lcm of a sequence; the empty sequence gives 1.
///
/// Inputs are canonicalized and deduplicated, then combined by a balanced
/// pairwise fold, which keeps the two operands of each binary lcm close in
/// size.
pub fn poly_lcm_many(ps: &[IntPoly]) -> Result<IntPoly> {
    if ps.iter().any(IntPoly::is_zero) {
        return Err(Error::ZeroPolynomialInput);
    }
    let mut seen = HashSet::new();
    let mut level: Vec<IntPoly> = Vec::new();
    for p in ps {
        let c = p.canonical();
        if !c.is_one() && seen.insert(c.clone()) {
            level.push(c);
        }
    }
    if level.is_empty() {
        return Ok(IntPoly::one());
    }
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(poly_lcm(&a, &b)?),
                None => next.push(a),
            }
        }
        level = next;
    }
    Ok(level.pop().unwrap_or_else(IntPoly::one))
}

/// Primitive pseudo-remainder sequence gcd, canonical output.
pub fn poly_gcd_prs(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (mut f, mut g) = (a.canonical(), b.canonical());
    if f.degree() < g.degree() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let r = pseudo_rem(&f, &g).canonical();
        f = g;
        g = r;
    }
    f
}

/// `lc(g)^(deg f - deg g + 1) * f mod g`, one leading term at a time.
fn pseudo_rem(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let dg = g.degree().expect("pseudo-remainder by zero");
    let gc = g.coeffs();
    let lc = &gc[dg];
    let mut r = f.coeffs().to_vec();
    while r.len() > dg {
        let top = r.len() - 1;
        let c = r.pop().unwrap_or_default();
        let shift = top - dg;
        if !lc.is_one() {
            for x in r.iter_mut() {
                *x *= lc;
            }
        }
        if !c.is_zero() {
            for (j, y) in gc[..dg].iter().enumerate() {
                if !y.is_zero() {
                    r[shift + j] -= &c * y;
                }
            }
        }
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    IntPoly::from_coeffs(r)
}

pub(crate) fn gcd_split(a: &IntPoly, b: &IntPoly) -> GcdSplit {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => {
            return GcdSplit {
                gcd: IntPoly::zero(),
                cof_a: IntPoly::zero(),
                cof_b: IntPoly::zero(),
            }
        }
        (true, false) | (false, true) => {
            let nz = if a.is_zero() { b } else { a };
            let gcd = nz.canonical();
            let unit = IntPoly::constant(signed_content(nz));
            let (cof_a, cof_b) = if a.is_zero() { (IntPoly::zero(), unit) } else { (unit, IntPoly::zero()) };
            return GcdSplit { gcd, cof_a, cof_b };
        }
        _ => {}
    }
    let (sa, sb) = (signed_content(a), signed_content(b));
    let (pa, pb) = (a.canonical(), b.canonical());
    let (gcd, ca, cb) = if pa.degree() == Some(0) || pb.degree() == Some(0) {
        (IntPoly::one(), pa, pb)
    } else if pa == pb {
        (pa, IntPoly::one(), IntPoly::one())
    } else {
        modular_split(&pa, &pb).unwrap_or_else(|| prs_split(&pa, &pb))
    };
    GcdSplit {
        gcd,
        cof_a: scale_unless_one(ca, &sa),
        cof_b: scale_unless_one(cb, &sb),
    }
}

/// Content carrying the sign of the leading coefficient, so that
/// `p = signed_content(p) * canonical(p)`.
fn signed_content(p: &IntPoly) -> BigInt {
    let c = p.content();
    if p.leading().is_some_and(|lc| lc.is_negative()) {
        -c
    } else {
        c
    }
}

fn scale_unless_one(p: IntPoly, c: &BigInt) -> IntPoly {
    if c.is_one() {
        p
    } else {
        p.scale(c)
    }
}

fn prs_split(a: &IntPoly, b: &IntPoly) -> (IntPoly, IntPoly, IntPoly) {
    let g = poly_gcd_prs(a, b);
    let ca = poly_exact_div(a, &g).expect("prs gcd divides its first input");
    let cb = poly_exact_div(b, &g).expect("prs gcd divides its second input");
    (g, ca, cb)
}

/// Residues of one fixed-length integer polynomial across several primes,
/// held as mixed-radix (Garner) digits.
#[derive(Debug, Clone)]
pub(crate) struct CrtPoly {
    len: usize,
    moduli: Vec<Field>,
    /// digits[j][i]: j-th mixed-radix digit of coefficient i, plain residue
    digits: Vec<Vec<u64>>,
}

impl CrtPoly {
    pub fn new(len: usize) -> Self {
        CrtPoly {
            len,
            moduli: Vec::new(),
            digits: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Adds the residues (Montgomery form under `f`) of every coefficient.
    pub fn push(&mut self, f: &Field, residues: &[u64]) {
        debug_assert!(residues.len() <= self.len);
        let j = self.moduli.len();
        // p_t in f's Montgomery domain, and (p_0 ... p_{j-1})^{-1}
        let pm: Vec<u64> = self.moduli.iter().map(|m| f.enter(m.modulus())).collect();
        let mut prod = f.one();
        for &x in &pm {
            prod = f.mul(prod, x);
        }
        let inv_prod = f.inv(prod);
        let mut row = Vec::with_capacity(self.len);
        for i in 0..self.len {
            let r = residues.get(i).copied().unwrap_or(0);
            let mut s = 0u64;
            for t in (0..j).rev() {
                s = f.add(f.mul(s, pm[t]), f.enter(self.digits[t][i]));
            }
            row.push(f.leave(f.mul(f.sub(r, s), inv_prod)));
        }
        self.moduli.push(*f);
        self.digits.push(row);
    }

    /// True when the newest digit of every coefficient is 0 or p-1, i.e. the
    /// symmetric reconstruction did not change with the latest prime.
    pub fn settled(&self) -> bool {
        match (self.moduli.last(), self.digits.last()) {
            (Some(f), Some(row)) if self.moduli.len() > 1 => {
                let top = f.modulus() - 1;
                row.iter().all(|&d| d == 0 || d == top)
            }
            _ => false,
        }
    }

    pub fn modulus(&self) -> BigUint {
        self.moduli.iter().map(|f| BigUint::from(f.modulus())).product()
    }

    /// Symmetric-range reconstruction.
    pub fn reconstruct(&self) -> IntPoly {
        let n = self.modulus();
        let half = &n >> 1u32;
        let coeffs = (0..self.len)
            .map(|i| {
                let mut x = BigUint::zero();
                for t in (0..self.moduli.len()).rev() {
                    x *= self.moduli[t].modulus();
                    x += self.digits[t][i];
                }
                if x > half {
                    BigInt::from(x) - BigInt::from(n.clone())
                } else {
                    BigInt::from(x)
                }
            })
            .collect();
        IntPoly::from_coeffs(coeffs)
    }
}

/// State of one modular lift: candidate gcd `h` (leading coefficient forced
/// to `lcg`) and cofactors with `h * ca = lcg * a`, `h * cb = lcg * b`.
struct Lift {
    degree: usize,
    h: CrtPoly,
    ca: CrtPoly,
    cb: CrtPoly,
}

fn modular_split(a: &IntPoly, b: &IntPoly) -> Option<(IntPoly, IntPoly, IntPoly)> {
    let lc_a = a.leading()?;
    let lc_b = b.leading()?;
    let lcg = lc_a.gcd(lc_b);
    let bound_a = a.max_norm() * lcg.magnitude();
    let bound_b = b.max_norm() * lcg.magnitude();

    let mut lift: Option<Lift> = None;
    let mut used = 0;
    for f in zp::primes() {
        if used >= MAX_LIFT_PRIMES {
            break;
        }
        let (la, lb) = (f.reduce(lc_a), f.reduce(lc_b));
        if la == 0 || lb == 0 {
            continue;
        }
        used += 1;
        let ap = zp::from_int(f, a.coeffs());
        let bp = zp::from_int(f, b.coeffs());
        let lcg_p = f.reduce(&lcg);

        let derived = lift.as_ref().and_then(|l| derive(f, l, &ap, &bp, lcg_p));
        let (hp, cap, cbp) = match derived {
            Some(parts) => parts,
            None => {
                let g = zp::gcd(f, &ap, &bp);
                let d = g.len() - 1;
                if d == 0 {
                    return Some((IntPoly::one(), a.clone(), b.clone()));
                }
                match lift.as_ref().map(|l| l.degree) {
                    Some(d0) if d > d0 => continue,
                    Some(d0) if d == d0 => {}
                    _ => {
                        lift = Some(Lift {
                            degree: d,
                            h: CrtPoly::new(d + 1),
                            ca: CrtPoly::new(a.coeffs().len() - d),
                            cb: CrtPoly::new(b.coeffs().len() - d),
                        })
                    }
                }
                let mut h = g;
                zp::scale(f, &mut h, lcg_p);
                let ca = zp::div_exact(f, &scaled(f, &ap, lcg_p), &h)?;
                let cb = zp::div_exact(f, &scaled(f, &bp, lcg_p), &h)?;
                (h, ca, cb)
            }
        };
        let l = lift.as_mut()?;
        l.h.push(f, &hp);
        l.ca.push(f, &cap);
        l.cb.push(f, &cbp);

        if l.h.settled() && l.ca.settled() && l.cb.settled() {
            if let Some(done) = certify(l, &lcg, &bound_a, &bound_b) {
                return Some(done);
            }
        }
    }
    None
}

fn scaled(f: &Field, p: &[u64], c: u64) -> Vec<u64> {
    let mut out = p.to_vec();
    zp::scale(f, &mut out, c);
    out
}

/// Residues for a fresh prime from the current reconstruction of the
/// lower-degree cofactor, skipping the Euclidean algorithm. Any mismatch
/// sends the caller back to the full modular gcd.
fn derive(f: &Field, l: &Lift, ap: &[u64], bp: &[u64], lcg_p: u64) -> Option<(Vec<u64>, Vec<u64>, Vec<u64>)> {
    let (small, small_src, other_src) = if l.cb.len() <= l.ca.len() { (&l.cb, bp, ap) } else { (&l.ca, ap, bp) };
    let cof = zp::from_int(f, small.reconstruct().coeffs());
    if cof.len() != small.len() {
        return None;
    }
    let h = zp::div_exact(f, &scaled(f, small_src, lcg_p), &cof)?;
    if h.len() != l.degree + 1 {
        return None;
    }
    let other = zp::div_exact(f, &scaled(f, other_src, lcg_p), &h)?;
    if l.cb.len() <= l.ca.len() {
        Some((h, other, cof))
    } else {
        Some((h, cof, other))
    }
}

fn certify(l: &Lift, lcg: &BigInt, bound_a: &BigUint, bound_b: &BigUint) -> Option<(IntPoly, IntPoly, IntPoly)> {
    let n = l.h.modulus();
    let h = l.h.reconstruct();
    let ca = l.ca.reconstruct();
    let cb = l.cb.reconstruct();
    if h.leading() != Some(lcg) {
        return None;
    }
    let product_bound = |c: &IntPoly| {
        let x = h.one_norm() * c.max_norm();
        let y = h.max_norm() * c.one_norm();
        x.min(y)
    };
    let need = [bound_a.clone(), bound_b.clone(), product_bound(&ca), product_bound(&cb)]
        .into_iter()
        .max()
        .unwrap_or_default();
    if n <= need << 1u32 {
        return None;
    }
    // h = t * g with g canonical; a = g * (t * ca / lcg)
    let t = h.content();
    let g = h.canonical();
    let cof = |c: IntPoly| -> Option<IntPoly> {
        if t == *lcg {
            return Some(c);
        }
        c.scale(&t).div_scalar_exact(lcg).ok()
    };
    Some((g, cof(ca)?, cof(cb)?))
}

/// Exact product, multi-modular once the operands are large.
pub(crate) fn mul_exact(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if b.is_one() {
        return a.clone();
    }
    if a.is_one() {
        return b.clone();
    }
    let (la, lb) = (a.coeffs().len(), b.coeffs().len());
    if la == 0 || lb == 0 || la * lb < MODULAR_MUL_THRESHOLD {
        return poly_mul(a, b);
    }
    let bound = (a.one_norm() * b.max_norm()).min(a.max_norm() * b.one_norm());
    let need = bound << 1u32;
    let mut acc = CrtPoly::new(la + lb - 1);
    for f in zp::primes() {
        let ap = zp::from_int(f, a.coeffs());
        let bp = zp::from_int(f, b.coeffs());
        acc.push(f, &zp::mul(f, &ap, &bp));
        if acc.modulus() > need {
            return acc.reconstruct();
        }
    }
    poly_mul(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn gcd_examples() {
        let q2 = IntPoly::q_pow_minus_one(2);
        let q3 = IntPoly::q_pow_minus_one(3);
        assert_eq!(poly_gcd(&q2, &q3), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[-4, 0, -6]), &IntPoly::zero()), p(&[2, 0, 3]));
        // Phi_3 * Phi_4 and Phi_4 * Phi_5
        let phi3 = p(&[1, 1, 1]);
        let phi4 = p(&[1, 0, 1]);
        let phi5 = p(&[1, 1, 1, 1, 1]);
        assert_eq!(poly_gcd(&poly_mul(&phi3, &phi4), &poly_mul(&phi4, &phi5)), phi4);
        assert!(poly_gcd(&IntPoly::zero(), &IntPoly::zero()).is_zero());
    }

    #[test]
    fn gcd_ignores_integer_content() {
        let a = p(&[6, 6]); // 6(1+q)
        let b = p(&[-4, 0, 4]); // 4(q^2-1)
        assert_eq!(poly_gcd(&a, &b), p(&[1, 1]));
        assert_eq!(poly_gcd_prs(&a, &b), p(&[1, 1]));
        assert_eq!(poly_gcd(&p(&[3]), &p(&[1, 1])), IntPoly::one());
    }

    #[test]
    fn non_monic_inputs() {
        // (2q+1)(3q-1) and (2q+1)(q+5)
        let a = poly_mul(&p(&[1, 2]), &p(&[-1, 3]));
        let b = poly_mul(&p(&[1, 2]), &p(&[5, 1]));
        assert_eq!(poly_gcd(&a, &b), p(&[1, 2]));
        let split = gcd_split(&a.scale(&BigInt::from(-7)), &b);
        assert_eq!(poly_mul(&split.gcd, &split.cof_a), a.scale(&BigInt::from(-7)));
        assert_eq!(poly_mul(&split.gcd, &split.cof_b), b);
    }

    #[test]
    fn lcm_examples() {
        let lcm = poly_lcm_many(&[p(&[-1, 1]), IntPoly::q_pow_minus_one(2)]).unwrap();
        assert_eq!(lcm, p(&[-1, 0, 1]));
        assert_eq!(poly_lcm_many(&[]).unwrap(), IntPoly::one());
        assert_eq!(poly_lcm_many(&[IntPoly::one(), IntPoly::one()]).unwrap(), IntPoly::one());
        assert_eq!(poly_lcm_many(&[IntPoly::one(), p(&[1, 1]), IntPoly::one()]).unwrap(), p(&[1, 1]));
        assert_eq!(poly_lcm_many(&[p(&[1, 1]), IntPoly::zero()]), Err(Error::ZeroPolynomialInput));
    }

    #[test]
    fn crt_roundtrip_signed() {
        let big = BigInt::parse_bytes(b"-123456789012345678901234567890123456789012345", 10).unwrap();
        let poly = IntPoly::from_coeffs(vec![big, BigInt::from(7), BigInt::from(-1)]);
        let mut acc = CrtPoly::new(3);
        for f in &zp::primes()[..4] {
            acc.push(f, &zp::from_int(f, poly.coeffs()));
        }
        assert_eq!(acc.reconstruct(), poly);
        assert!(acc.settled());
    }

    #[test]
    fn large_products_match_schoolbook() {
        let a = IntPoly::from_coeffs((0..120).map(|i| BigInt::from(i * i - 3000) << 70).collect());
        let b = IntPoly::from_coeffs((0..90).map(|i| BigInt::from(7 - i)).collect());
        assert_eq!(mul_exact(&a, &b), poly_mul(&a, &b));
    }

    #[test]
    fn high_degree_cyclotomic_style_gcd() {
        // (q^60 - 1)(q^7 + 2) and (q^84 - 1)(q^5 - 3): gcd q^12 - 1
        let a = poly_mul(&IntPoly::q_pow_minus_one(60), &p(&[2, 0, 0, 0, 0, 0, 0, 1]));
        let b = poly_mul(&IntPoly::q_pow_minus_one(84), &p(&[-3, 0, 0, 0, 0, 1]));
        assert_eq!(poly_gcd(&a, &b), IntPoly::q_pow_minus_one(12));
        assert_eq!(poly_gcd_prs(&a, &b), IntPoly::q_pow_minus_one(12));
    }
}
