use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::{LaurentPoly, QPoly};
use crate::arith::{divisors, euler_phi, lcm, mobius};

/// The `d`-th cyclotomic polynomial, built from `prod_{e|d} (t^e - 1)^{mu(d/e)}`.
pub fn cyclotomic(d: u64) -> QPoly {
    assert!(d >= 1);
    let mut num = QPoly::one();
    let mut den = QPoly::one();
    for e in divisors(d) {
        match mobius(d / e) {
            1 => num = &num * &QPoly::t_pow_minus_one(e as usize),
            -1 => den = &den * &QPoly::t_pow_minus_one(e as usize),
            _ => {}
        }
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    q
}

/// Cyclotomic factors of an Alexander-type polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicProfile {
    /// `d -> k` when `Phi_d^k` exactly divides the polynomial.
    pub multiplicities: BTreeMap<u64, u32>,
    /// lcm of the orders `d`; `None` when no root of unity is a zero.
    pub m: Option<u64>,
    /// Every complex zero is a root of unity.
    pub all_roots_of_unity: bool,
}

impl CyclotomicProfile {
    pub fn divisors(&self) -> Vec<u64> {
        self.multiplicities.keys().copied().collect()
    }

    /// Number of zeros (with multiplicity) that are `n`-th roots of unity.
    pub fn roots_of_unity_of_order_dividing(&self, n: u64) -> u64 {
        self.multiplicities
            .iter()
            .filter(|(d, _)| n % **d == 0)
            .map(|(d, k)| euler_phi(*d) * *k as u64)
            .sum()
    }
}

/// Exact trial division by every `Phi_d` with `phi(d) <= deg`.
pub fn cyclotomic_root_profile(delta: &LaurentPoly) -> CyclotomicProfile {
    assert!(!delta.is_zero(), "cyclotomic profile of the zero polynomial");
    let mut rest = QPoly::from_laurent(delta);
    let deg = rest.degree().unwrap() as u64;
    let mut multiplicities = BTreeMap::new();
    // phi(d) >= sqrt(d/2), so phi(d) <= deg forces d <= 2 deg^2.
    let bound = 2 * deg * deg + 2;
    for d in 1..=bound {
        if euler_phi(d) > deg {
            continue;
        }
        let phi = cyclotomic(d);
        let mut k = 0;
        loop {
            let (q, r) = rest.div_rem(&phi);
            if !r.is_zero() {
                break;
            }
            rest = q;
            k += 1;
        }
        if k > 0 {
            multiplicities.insert(d, k);
        }
    }
    let m = multiplicities.keys().copied().reduce(lcm);
    CyclotomicProfile { multiplicities, m, all_roots_of_unity: rest.is_constant() }
}

/// Integer coefficients of `Phi_d`.
pub fn cyclotomic_int(d: u64) -> Vec<BigInt> {
    cyclotomic(d).to_integer_coeffs().expect("cyclotomic polynomials are integral")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(0, c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), QPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), QPoly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic(6), QPoly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), QPoly::from_ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(14), QPoly::from_ints(&[1, -1, 1, -1, 1, -1, 1]));
    }

    #[test]
    fn profiles() {
        let p = cyclotomic_root_profile(&lp(&[1, -1, 1]));
        assert_eq!(p.divisors(), vec![6]);
        assert_eq!(p.m, Some(6));
        assert!(p.all_roots_of_unity);

        let p = cyclotomic_root_profile(&lp(&[1, -3, 1]));
        assert!(p.divisors().is_empty());
        assert_eq!(p.m, None);
        assert!(!p.all_roots_of_unity);

        let p = cyclotomic_root_profile(&LaurentPoly::one());
        assert!(p.divisors().is_empty());
        assert_eq!(p.m, None);
    }

    #[test]
    fn repeated_and_mixed() {
        // (t^2 - t + 1)^2 (t^2 + 1) (2t^2 - 5t + 2)
        let a = lp(&[1, -1, 1]);
        let b = lp(&[1, 0, 1]);
        let c = lp(&[2, -5, 2]);
        let f = &(&(&a * &a) * &b) * &c;
        let p = cyclotomic_root_profile(&f);
        assert_eq!(p.multiplicities, BTreeMap::from([(4, 1), (6, 2)]));
        assert_eq!(p.m, Some(12));
        assert!(!p.all_roots_of_unity);
        assert_eq!(p.roots_of_unity_of_order_dividing(6), 4);
        assert_eq!(p.roots_of_unity_of_order_dividing(12), 6);
    }
}
