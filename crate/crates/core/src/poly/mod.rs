//! Dense univariate polynomials in `q` with arbitrary-precision integer
//! coefficients.
//!
//! Coefficients are stored in ascending degree and the vector never ends in a
//! zero, so the zero polynomial is the empty vector and structural equality is
//! polynomial equality.

mod gcd;
mod text;
pub(crate) mod zp;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use gcd::{poly_gcd, poly_gcd_prs, poly_lcm, poly_lcm_many};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, BigInt::one())
    }

    pub fn monomial(degree: usize, c: impl Into<BigInt>) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c.into();
        Self::from_coeffs(coeffs)
    }

    /// `q^e - 1`, the building block of q-integers and cyclotomic polynomials.
    pub fn q_pow_minus_one(e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[e] += 1;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Gcd of the coefficients (nonnegative); zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    ///
    /// This is the canonical representative used by gcd, lcm and equality
    /// tests; the zero polynomial maps to itself.
    pub fn canonical(&self) -> IntPoly {
        let Some(lc) = self.leading() else {
            return IntPoly::zero();
        };
        let mut g = self.content();
        if lc.is_negative() {
            g = -g;
        }
        if g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.is_zero() || (self.leading().is_some_and(|c| c.is_positive()) && self.content().is_one())
    }

    /// Largest coefficient magnitude.
    pub fn max_norm(&self) -> BigUint {
        self.coeffs.iter().map(|c| c.magnitude()).max().cloned().unwrap_or_default()
    }

    /// Sum of coefficient magnitudes.
    pub fn one_norm(&self) -> BigUint {
        self.coeffs.iter().map(|c| c.magnitude()).sum()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by `q^s`.
    pub fn shift(&self, s: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divide every coefficient by `c`, failing unless all divisions are exact.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Result<IntPoly> {
        if c.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            let (quot, rem) = x.div_rem(c);
            if !rem.is_zero() {
                return Err(Error::NonExactDivision);
            }
            coeffs.push(quot);
        }
        Ok(IntPoly { coeffs })
    }
}

fn trim(coeffs: &mut Vec<BigInt>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

/// Exact product. Zero coefficients of either factor are skipped, so
/// multiplying by sparse factors such as `q^e - 1` costs linear time.
pub fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() || b.is_zero() {
        return IntPoly::zero();
    }
    // iterate over the sparser operand in the outer loop
    let (a, b) = if nonzero_count(a) <= nonzero_count(b) { (a, b) } else { (b, a) };
    let mut out = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    let b_terms: Vec<(usize, &BigInt)> = b.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if x.is_one() {
            for &(j, y) in &b_terms {
                out[i + j] += y;
            }
        } else if x == &BigInt::from(-1) {
            for &(j, y) in &b_terms {
                out[i + j] -= y;
            }
        } else {
            for &(j, y) in &b_terms {
                out[i + j] += x * y;
            }
        }
    }
    IntPoly::from_coeffs(out)
}

fn nonzero_count(p: &IntPoly) -> usize {
    p.coeffs.iter().filter(|c| !c.is_zero()).count()
}

/// Quotient `c` with `a = b * c`, or [`Error::NonExactDivision`] when the
/// remainder is nonzero or a quotient coefficient would be fractional.
pub fn poly_exact_div(a: &IntPoly, b: &IntPoly) -> Result<IntPoly> {
    let db = b.degree().ok_or(Error::ZeroDivisor)?;
    let Some(da) = a.degree() else {
        return Ok(IntPoly::zero());
    };
    if da < db {
        return Err(Error::NonExactDivision);
    }
    let lc = &b.coeffs[db];
    let unit = if lc.is_one() {
        Some(1)
    } else if lc == &BigInt::from(-1) {
        Some(-1)
    } else {
        None
    };
    // nonzero lower terms of the divisor
    let lower: Vec<(usize, &BigInt)> = b.coeffs[..db].iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();

    let mut rem = a.coeffs.clone();
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for i in (0..=da - db).rev() {
        let top = std::mem::take(&mut rem[i + db]);
        if top.is_zero() {
            continue;
        }
        let c = match unit {
            Some(1) => top,
            Some(_) => -top,
            None => {
                let (c, r) = top.div_rem(lc);
                if !r.is_zero() {
                    return Err(Error::NonExactDivision);
                }
                c
            }
        };
        for &(j, y) in &lower {
            rem[i + j] -= &c * y;
        }
        quot[i] = c;
    }
    if rem[..db].iter().any(|c| !c.is_zero()) {
        return Err(Error::NonExactDivision);
    }
    Ok(IntPoly::from_coeffs(quot))
}

pub fn poly_eval(a: &IntPoly, x: &BigInt) -> BigInt {
    a.eval(x)
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render(self))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl std::str::FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        text::parse(s)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, x) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += x;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        poly_mul(self, rhs)
    }
}

impl From<Vec<BigInt>> for IntPoly {
    fn from(coeffs: Vec<BigInt>) -> Self {
        IntPoly::from_coeffs(coeffs)
    }
}
