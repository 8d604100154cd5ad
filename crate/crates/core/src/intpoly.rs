//! Dense univariate polynomials over the integers, in `z`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending powers of `z`, without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> IntPoly {
        IntPoly::new(vec![c])
    }

    /// `c · z^k`.
    pub fn monomial(c: BigInt, k: usize) -> IntPoly {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPoly::new(v)
    }

    pub fn z() -> IntPoly {
        IntPoly::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lowest_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPoly::new(v)
    }

    pub fn truncate(&self, max_degree: usize) -> IntPoly {
        IntPoly::new(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    /// gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut p = self.div_exact_scalar(&c);
        if p.coeffs.last().is_some_and(|l| l.is_negative()) {
            p = p.neg();
        }
        p
    }

    pub fn div_exact_scalar(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    /// Exact quotient `self / other`, or `None` if `other` does not divide
    /// `self` over the integers.
    pub fn div_exact(&self, other: &IntPoly) -> Option<IntPoly> {
        let od = other.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let sd = self.degree().unwrap();
        if sd < od {
            return None;
        }
        let lead = &other.coeffs[od];
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); sd - od + 1];
        for k in (0..=sd - od).rev() {
            let c = &rem[k + od];
            if c.is_zero() {
                continue;
            }
            let (qc, r) = c.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[k + j] -= &qc * b;
            }
            q[k] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    /// Pseudo-remainder of `self` by `other`.
    fn pseudo_rem(&self, other: &IntPoly) -> IntPoly {
        let od = other.degree().expect("nonzero divisor");
        let lead = other.coeffs[od].clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < od {
                break;
            }
            let c = r.coeffs[rd].clone();
            r = r.scale(&lead).sub(&other.scale(&c).shift(rd - od));
        }
        r
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let c = self.content().gcd(&other.content());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.scale(&c)
    }

    pub fn eval(&self, z: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * z + c)
    }

    /// Power series expansion of `self / den` through `z^max`; `den(0)` must
    /// be `±1`.
    pub fn series_div(&self, den: &IntPoly, max: usize) -> Vec<BigInt> {
        let d0 = den.coeff(0);
        assert!(d0.abs().is_one(), "denominator constant term must be ±1");
        let mut out: Vec<BigInt> = Vec::with_capacity(max + 1);
        for n in 0..=max {
            let mut acc = self.coeff(n);
            for k in 1..=n.min(den.degree().unwrap_or(0)) {
                acc -= den.coeff(k) * &out[n - k];
            }
            out.push(acc * &d0);
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    write!(f, "z")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
