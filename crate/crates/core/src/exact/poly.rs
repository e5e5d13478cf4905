use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial with rational coefficients, lowest degree
/// first. The coefficient vector never ends in a zero, so the zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn x() -> Self {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    fn from_big_ints(coeffs: Vec<BigInt>) -> Self {
        Poly::from_coeffs(coeffs.into_iter().map(Rational::from_integer).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, by: &Rational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * by).collect())
    }

    pub fn pow(&self, mut exp: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Long division: `self = quotient * divisor + remainder` with
    /// `deg(remainder) < deg(divisor)`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::ZeroDivisor);
        };
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(quot_len) = (rem.len() + 1).checked_sub(divisor.coeffs.len()) else {
            return Ok((Poly::zero(), self.clone()));
        };
        let mut quot = vec![Rational::zero(); quot_len];
        for shift in (0..quot_len).rev() {
            let top = &rem[shift + dd];
            if top.is_zero() {
                continue;
            }
            let q = top * &lead_inv;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &q * d;
            }
            quot[shift] = q;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Coefficients as decimal strings (`"p/q"` when not integral).
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

/// True iff `divisor` divides `dividend` exactly.
pub fn poly_divides(divisor: &Poly, dividend: &Poly) -> Result<bool> {
    let (_, rem) = dividend.div_rem(divisor)?;
    Ok(rem.is_zero())
}

fn convolve_integral(a: &[Rational], b: &[Rational]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        let x = x.numer();
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y.numer();
        }
    }
    out
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.is_integral() && rhs.is_integral() {
            return Poly::from_big_ints(convolve_integral(&self.coeffs, &rhs.coeffs));
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            if !mag.is_one() || i == 0 {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn display_and_degree() {
        let p = Poly::from_ints(&[0, 0, -3, 0, 1]);
        assert_eq!(p.to_string(), "x^4 - 3x^2");
        assert_eq!(p.degree(), Some(4));
        assert_eq!(Poly::from_ints(&[0, 0, 0]).degree(), None);
        assert_eq!(Poly::from_ints(&[-1, 2]).to_string(), "2x - 1");
    }

    #[test]
    fn divisibility_examples() {
        let p = Poly::from_ints(&[-3, 0, 1]);
        let q = Poly::from_ints(&[0, 0, -3, 0, 1]);
        assert!(poly_divides(&p, &q).unwrap());
        assert!(!poly_divides(&Poly::from_ints(&[-1, 1]), &Poly::from_ints(&[1, 0, 1])).unwrap());
        assert_eq!(poly_divides(&Poly::zero(), &q), Err(Error::ZeroDivisor));
    }

    #[test]
    fn div_rem_with_rational_quotient() {
        let a = Poly::from_ints(&[1, 2, 3]);
        let b = Poly::from_ints(&[1, 2]);
        let (q, rem) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &rem, a);
        assert!(rem.degree().unwrap_or(0) < 1);
        let (q, rem) = b.div_rem(&a).unwrap();
        assert!(q.is_zero());
        assert_eq!(rem, b);
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let p = Poly::from_ints(&[1, -1, 2]);
        let mut acc = Poly::one();
        for e in 0..7u64 {
            assert_eq!(p.pow(e), acc);
            acc = &acc * &p;
        }
    }

    #[test]
    fn eval_and_rational_mul() {
        let p = Poly::from_coeffs(vec![Rational::new(1.into(), 2.into()), r(1)]);
        let sq = &p * &p;
        assert_eq!(
            sq.coeffs(),
            &[Rational::new(1.into(), 4.into()), r(1), r(1)]
        );
        assert_eq!(sq.eval(&r(-2)), Rational::new(9.into(), 4.into()));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["1/2","1"]"#);
    }
}
