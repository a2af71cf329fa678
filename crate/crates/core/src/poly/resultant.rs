use num_bigint::BigInt;
use num_traits::Zero;

use super::LaurentPoly;
use crate::snf::IntMatrix;

/// Resultant of the polynomial parts (valuations stripped) of `p` and `q`,
/// `lc(p)^deg(q) * prod_{p(a)=0} q(a)`, as the Bareiss determinant of the
/// Sylvester matrix.
pub fn resultant(p: &LaurentPoly, q: &LaurentPoly) -> BigInt {
    assert!(!p.is_zero() && !q.is_zero(), "resultant of a zero polynomial");
    let a = p.coeffs();
    let b = q.coeffs();
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 && n == 0 {
        return BigInt::from(1);
    }
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    // Rows are highest-degree-first, as in the textbook Sylvester layout.
    for r in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            s[(r, r + k)] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            s[(n + r, r + k)] = c.clone();
        }
    }
    if size == 0 {
        return BigInt::zero();
    }
    s.determinant()
}

/// `nu_n(t) = (t^n - 1)/(t - 1) = 1 + t + ... + t^{n-1}`.
pub fn nu(n: u32) -> LaurentPoly {
    LaurentPoly::from_i64s(0, &vec![1; n as usize])
}
