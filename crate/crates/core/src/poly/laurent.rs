use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Integer Laurent polynomial `sum_i coeffs[i] * t^(valuation + i)`.
///
/// Always stored trimmed: the first and last coefficients are nonzero, and
/// the zero polynomial has no coefficients and valuation 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLaurent", into = "RawLaurent")]
pub struct LaurentPoly {
    valuation: i64,
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RawLaurent {
    valuation: i64,
    #[serde(with = "crate::bigjson::vec")]
    coeffs: Vec<BigInt>,
}

impl From<LaurentPoly> for RawLaurent {
    fn from(p: LaurentPoly) -> Self {
        RawLaurent { valuation: p.valuation, coeffs: p.coeffs }
    }
}

impl TryFrom<RawLaurent> for LaurentPoly {
    type Error = String;
    fn try_from(raw: RawLaurent) -> Result<Self, String> {
        Ok(LaurentPoly::new(raw.valuation, raw.coeffs))
    }
}

impl LaurentPoly {
    pub fn new(valuation: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { valuation, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(valuation: i64, coeffs: &[i64]) -> Self {
        Self::new(valuation, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        LaurentPoly { valuation: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: BigInt, e: i64) -> Self {
        Self::new(e, vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.valuation = 0;
            return;
        }
        self.coeffs.drain(..lead_zeros);
        self.valuation += lead_zeros as i64;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Highest exponent present (equal to the valuation for monomials).
    pub fn top_exponent(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64 - 1
    }

    /// Width `top - valuation`; the degree of the polynomial part.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        let i = e - self.valuation;
        if i < 0 || i as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { valuation: self.valuation + k, coeffs: self.coeffs.clone() }
    }

    /// Substitute `t -> t^{-1}`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly { valuation: -self.top_exponent(), coeffs }
    }

    /// Scale by an integer.
    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.valuation, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval_int(&self, x: &BigInt) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if x.is_zero() && self.valuation < 0 {
            return None;
        }
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        // Only integral for valuation >= 0 or x = +-1.
        if self.valuation >= 0 {
            Some(acc * x.pow(self.valuation as u32))
        } else if x.abs().is_one() {
            let k = (-self.valuation) as u32;
            Some(acc * x.pow(k))
        } else {
            None
        }
    }

    /// Unit-normalized form: valuation 0 and positive leading coefficient.
    /// This fixes the `+-t^k` ambiguity of Alexander polynomials.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut p = self.shift(-self.valuation);
        if p.leading_coeff().is_negative() {
            p = -p;
        }
        p
    }

    /// Polynomial part as exponent-0-based coefficients (valuation stripped).
    pub fn poly_coeffs(&self) -> Vec<BigInt> {
        self.coeffs.clone()
    }

    /// Evaluate at a complex number.
    pub fn eval_complex(&self, z: nalgebra::Complex<f64>) -> nalgebra::Complex<f64> {
        use num_traits::ToPrimitive;
        let mut acc = nalgebra::Complex::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + nalgebra::Complex::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        }
        acc * z.powi(self.valuation as i32)
    }
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.valuation.min(rhs.valuation);
        let hi = self.top_exponent().max(rhs.top_exponent());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.valuation - lo) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.valuation - lo) as usize + i] += c;
        }
        LaurentPoly::new(lo, coeffs)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.valuation + rhs.valuation, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { valuation: self.valuation, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.valuation + i as i64;
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
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{e}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}
