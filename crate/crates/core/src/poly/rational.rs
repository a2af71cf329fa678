use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::LaurentPoly;

/// Dense polynomial over the rationals, `coeffs[i]` is the coefficient of `t^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// The polynomial part of a Laurent polynomial (valuation stripped).
    pub fn from_laurent(p: &LaurentPoly) -> Self {
        Self::from_bigints(p.coeffs())
    }

    /// `t^shift * p` as a polynomial; `shift` must clear negative exponents.
    pub fn from_laurent_shifted(p: &LaurentPoly, shift: i64) -> Self {
        if p.is_zero() {
            return QPoly::zero();
        }
        let low = p.valuation() + shift;
        assert!(low >= 0, "shift leaves negative exponents");
        let mut c = vec![BigInt::zero(); low as usize];
        c.extend(p.coeffs().iter().cloned());
        Self::from_bigints(&c)
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `t^n - 1`.
    pub fn t_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigRational::zero(); n + 1];
        c[0] = -BigRational::one();
        c[n] += BigRational::one();
        Self::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    /// Remove factors of `t` (units in the Laurent ring).
    pub fn strip_t(&self) -> Self {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lead_inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[i - dd + j] -= t;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    pub fn divides(&self, other: &QPoly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Yun's square-free decomposition: `(factor, multiplicity)` pairs with
    /// monic square-free factors whose product (with multiplicities) is the
    /// monic associate of `self`.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.div_rem(&a).0;
        let mut c = fp.div_rem(&a).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.monic(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Integer coefficients if all coefficients are integral.
    pub fn to_integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Clear denominators and content: the primitive integer polynomial
    /// with positive leading coefficient that is a rational multiple of `self`.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        use num_integer::Integer;
        if self.is_zero() {
            return Vec::new();
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &l).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show = !mag.is_one() || e == 0;
            if show {
                write!(f, "{mag}")?;
            }
            let star = if show { "*" } else { "" };
            match e {
                0 => {}
                1 => write!(f, "{star}t")?,
                _ => write!(f, "{star}t^{e}")?,
            }
        }
        Ok(())
    }
}
