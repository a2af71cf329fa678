//! Strategies and checks shared by the property suites and the acceptance
//! target.
#![allow(dead_code)]

use knotrep_core::arith::{gcd, lcm};
use knotrep_core::characters::{enumerate_characters, factors_through};
use knotrep_core::{
    braid_to_wirtinger, fixture, smith_normal_form, AlexanderModulePresentation, BraidWord, IntMatrix, LaurentPoly,
    Tower, WirtingerPresentation,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 1000;

pub const FIXTURES: [&str; 6] = ["unknot", "trefoil", "figure-eight", "5_2", "6_1", "T(2,7)"];

pub fn config() -> Config {
    Config { cases: CASES, max_global_rejects: 1_000_000, failure_persistence: None, ..Config::default() }
}

pub fn knot(name: &str) -> (WirtingerPresentation, Tower) {
    let w = braid_to_wirtinger(&fixture(name).unwrap().braid).unwrap();
    let tower = Tower::new(knotrep_core::alexander_module(&w));
    (w, tower)
}

// ---- Laurent polynomials ----

pub fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-4i64..=4, prop::collection::vec(-9i64..=9, 0..6)).prop_map(|(v, c)| LaurentPoly::from_i64s(v, &c))
}

pub fn check_ring_laws(a: &LaurentPoly, b: &LaurentPoly, c: &LaurentPoly) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(a + b), &(b + a));
    prop_assert_eq!(&(a * b), &(b * a));
    prop_assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
    prop_assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
    prop_assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
    prop_assert_eq!(&(a * &LaurentPoly::one()), a);
    prop_assert_eq!(&(a + &LaurentPoly::zero()), a);
    prop_assert!((a - a).is_zero());
    // normalization forgets units +-t^k
    let unit = LaurentPoly::monomial(-BigInt::one(), 3);
    prop_assert_eq!((a * &unit).normalized(), a.normalized());
    prop_assert_eq!(a.shift(-2).normalized(), a.normalized());
    prop_assert_eq!(a.normalized().normalized(), a.normalized());
    Ok(())
}

// ---- Smith normal form ----

pub fn int_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
            .prop_map(|rows| IntMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()))
    })
}

pub fn check_snf(a: &IntMatrix) -> Result<(), TestCaseError> {
    let s = smith_normal_form(a);
    prop_assert_eq!(&s.u.mul(a).mul(&s.v), &s.d);
    prop_assert!(s.v.mul(&s.v_inv).is_identity());
    prop_assert!(s.u.determinant().abs().is_one());
    prop_assert!(s.v.determinant().abs().is_one());
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j {
                prop_assert!(s.d[(i, j)].is_zero());
            }
        }
    }
    for (k, d) in s.diagonal.iter().enumerate() {
        prop_assert_eq!(d.is_zero(), k >= s.rank);
        prop_assert!(!d.is_negative());
    }
    for w in s.diagonal[..s.rank].windows(2) {
        prop_assert!((&w[1] % &w[0]).is_zero());
    }
    // permuting rows and columns leaves the invariant factors alone
    let (m, n) = (a.rows(), a.cols());
    let rows: Vec<Vec<BigInt>> = (0..m).rev().map(|i| (0..n).rev().map(|j| a[(i, j)].clone()).collect()).collect();
    prop_assert_eq!(&smith_normal_form(&IntMatrix::from_rows(rows)).diagonal, &s.diagonal);
    if m == n {
        prop_assert_eq!(s.diagonal.iter().fold(BigInt::one(), |p, d| p * d), a.determinant().abs());
    }
    Ok(())
}

// ---- |Hom(A, S^1)| = |A| ----

/// Square relation matrix with `0 < |det| <= 48`.
pub fn finite_group() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3)
        .prop_flat_map(|k| prop::collection::vec(prop::collection::vec(-4i64..=4, k), k))
        .prop_filter("finite, small order", |m| {
            let d = IntMatrix::from_rows(m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
                .determinant()
                .abs();
            !d.is_zero() && d <= BigInt::from(48)
        })
}

/// Count `x in (Z/e)^k` with `M x = 0 mod e`, i.e. `|Hom(coker M^T, Z/e)|`.
fn count_homs(m: &[Vec<i64>], e: i64) -> u64 {
    let k = m.len();
    let mut x = vec![0i64; k];
    let mut count = 0;
    loop {
        if m.iter().all(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>().rem_euclid(e) == 0) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == k {
                return count;
            }
            x[i] += 1;
            if x[i] < e {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

pub fn check_hom_count(m: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let a = IntMatrix::from_rows(m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
    let s = smith_normal_form(&a);
    let order: BigInt = s.diagonal.iter().product();
    let e = a.determinant().abs().to_i64().unwrap();
    // rows of `a` are relations among generators: A = Z^k / rowspace
    prop_assert_eq!(BigInt::from(count_homs(m, e)), order);
    Ok(())
}

// ---- gcd law on synthetic Alexander modules ----

/// Presentation `1x1` or `2x2` over `Z[t, t^-1]` with small entries.
pub fn synthetic_module() -> impl Strategy<Value = AlexanderModulePresentation> {
    let entry = (-1i64..=1, prop::collection::vec(-2i64..=2, 1..4)).prop_map(|(v, c)| LaurentPoly::from_i64s(v, &c));
    (1usize..=2)
        .prop_flat_map(move |k| prop::collection::vec(prop::collection::vec(entry.clone(), k), k))
        .prop_map(|rows| AlexanderModulePresentation::from_entries(rows).unwrap())
}

pub const CHARACTER_BUDGET: u64 = 4096;

/// Characters of `H_1(L_N)`, `N = lcm(n, l)`, factoring through both
/// `H_1(L_n)` and `H_1(L_l)` factor through `H_1(L_gcd(n, l))`. Also checks
/// that there are exactly `|Tor|` characters. Returns whether the case was
/// non-vacuous.
pub fn check_gcd_law(a: &AlexanderModulePresentation, n: u32, l: u32) -> Result<bool, TestCaseError> {
    let big_n = lcm(n as u64, l as u64) as u32;
    let g = gcd(n as u64, l as u64) as u32;
    let tower = Tower::new(a.clone());
    let c = tower.get(big_n);
    let tor = c.group.torsion_order();
    if tor > BigInt::from(CHARACTER_BUDGET) {
        return Ok(false);
    }
    let mut count = 0u64;
    for chi in enumerate_characters(&c).unwrap() {
        count += 1;
        if factors_through(&chi, &tower, n) && factors_through(&chi, &tower, l) {
            prop_assert!(factors_through(&chi, &tower, g), "n={} l={} chi={:?}", n, l, chi.exponents);
        }
    }
    prop_assert_eq!(BigInt::from(count), tor);
    Ok(true)
}

pub fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    TestRunner::new(config()).run(&strategy, test).map_err(|e| e.to_string())
}

// ---- random knots ----

pub fn braid_knot() -> impl Strategy<Value = BraidWord> {
    (2usize..=4)
        .prop_flat_map(|s| {
            let letter = (1i32..s as i32, any::<bool>()).prop_map(|(g, neg)| if neg { -g } else { g });
            (Just(s), prop::collection::vec(letter, 1..10))
        })
        .prop_filter_map("closure must be a knot", |(s, letters)| BraidWord::new(s, letters).ok())
}
