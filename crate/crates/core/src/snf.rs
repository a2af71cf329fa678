//! Exact Smith normal form with unimodular transforms.
//!
//! The algorithm is written once over [`EuclideanRing`] and instantiated for
//! arbitrary-precision integers (homology of branched covers) and for
//! rational polynomials (invariant factors of the Alexander module).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

use crate::poly::QPoly;

pub trait EuclideanRing: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division with remainder strictly smaller than the divisor in the
    /// Euclidean size.
    fn div_rem(&self, d: &Self) -> (Self, Self);
    /// Compare Euclidean sizes of two nonzero elements.
    fn cmp_size(&self, other: &Self) -> Ordering;
    /// `(u, u^{-1})` where `u` is a unit making `u * self` canonical.
    fn canonical_unit(&self) -> (Self, Self);
}

impl EuclideanRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        // Balanced remainder: |r| <= |d|/2 keeps entries small.
        let (mut q, mut r) = self.div_mod_floor(d);
        let twice = &r * 2u32;
        if twice.abs() > d.abs() {
            q += 1;
            r -= d;
        }
        (q, r)
    }
    fn cmp_size(&self, o: &Self) -> Ordering {
        self.magnitude().cmp(o.magnitude())
    }
    fn canonical_unit(&self) -> (Self, Self) {
        if self.is_negative() {
            (-<BigInt as One>::one(), -<BigInt as One>::one())
        } else {
            (<BigInt as One>::one(), <BigInt as One>::one())
        }
    }
}

impl EuclideanRing for QPoly {
    fn zero() -> Self {
        QPoly::zero()
    }
    fn one() -> Self {
        QPoly::one()
    }
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        QPoly::div_rem(self, d)
    }
    fn cmp_size(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree())
    }
    fn canonical_unit(&self) -> (Self, Self) {
        let lc = self.leading();
        (QPoly::constant(lc.recip()), QPoly::constant(lc))
    }
}

/// Dense row-major matrix over a ring.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type IntMatrix = Matrix<BigInt>;

impl<R: EuclideanRing> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c * row[src]`
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &R) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let v = s.mul(c);
                let d = &mut self.data[dst * self.cols + j];
                *d = d.add(&v);
            }
        }
    }

    /// `col[dst] += c * col[src]`
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &R) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let v = s.mul(c);
                let d = &mut self.data[i * self.cols + dst];
                *d = d.add(&v);
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: &R) {
        for j in 0..self.cols {
            let v = self.data[i * self.cols + j].mul(c);
            self.data[i * self.cols + j] = v;
        }
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> R {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        let mut a = self.clone();
        let mut sign_neg = false;
        let mut prev = R::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign_neg = !sign_neg;
                    }
                    None => return R::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(i, j)].mul(&a[(k, k)]).sub(&a[(i, k)].mul(&a[(k, j)]));
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a[(i, j)] = q;
                }
                a[(i, k)] = R::zero();
            }
            prev = a[(k, k)].clone();
        }
        let det = a[(n - 1, n - 1)].clone();
        if sign_neg {
            det.neg()
        } else {
            det
        }
    }
}

impl<R> std::ops::Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> std::ops::IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        Zero::is_zero(e)
                    }
                })
            })
    }
}

/// Integer matrix in JSON: `{rows, cols, entries: [[...]]}`.
#[derive(Serialize, Deserialize)]
struct RawIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RawRow>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct RawRow(#[serde(with = "crate::bigjson::vec")] Vec<BigInt>);

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawIntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|i| RawRow(self.row(i).to_vec())).collect(),
        }
        .serialize(s)
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<R> {
    pub u: Matrix<R>,
    pub v: Matrix<R>,
    /// Inverse of `v`, tracked alongside it.
    pub v_inv: Matrix<R>,
    pub d: Matrix<R>,
    /// Diagonal of `d` (length `min(rows, cols)`), canonical units.
    pub diagonal: Vec<R>,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

/// Smith normal form. Pivot: smallest nonzero Euclidean size in the active
/// block, ties broken by row-major position.
pub fn smith_normal_form<R: EuclideanRing>(a: &Matrix<R>) -> SmithDecomposition<R> {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);
    let mut v_inv = Matrix::identity(n);
    let mut rank = 0;

    'outer: for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_entry(&d, t) else {
                break 'outer;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let pivot = d[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let (q, r) = d[(i, t)].div_rem(&pivot);
                let nq = q.neg();
                d.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                dirty |= !r.is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let (q, r) = d[(t, j)].div_rem(&pivot);
                let nq = q.neg();
                d.add_col_multiple(j, t, &nq);
                v.add_col_multiple(j, t, &nq);
                v_inv.add_row_multiple(t, j, &q);
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            if let Some(i) = nondivisible_row(&d, t, &pivot) {
                d.add_row_multiple(t, i, &R::one());
                u.add_row_multiple(t, i, &R::one());
                continue;
            }
            break;
        }
        let (unit, _) = d[(t, t)].canonical_unit();
        d.scale_row(t, &unit);
        u.scale_row(t, &unit);
        rank = t + 1;
    }

    let diagonal = (0..m.min(n)).map(|i| d[(i, i)].clone()).collect();
    SmithDecomposition { u, v, v_inv, d, diagonal, rank }
}

fn smallest_entry<R: EuclideanRing>(d: &Matrix<R>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let e = &d[(i, j)];
            if e.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if e.cmp_size(&d[(bi, bj)]) != Ordering::Less => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn nondivisible_row<R: EuclideanRing>(d: &Matrix<R>, t: usize, pivot: &R) -> Option<usize> {
    for i in t + 1..d.rows {
        for j in t + 1..d.cols {
            let e = &d[(i, j)];
            if !e.is_zero() && !e.div_rem(pivot).1.is_zero() {
                return Some(i);
            }
        }
    }
    None
}

/// Basis (as rows) of the integer left kernel `{y : y * m = 0}`.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let rows: Vec<Vec<BigInt>> = (snf.rank..m.rows()).map(|i| snf.u.row(i).to_vec()).collect();
    if rows.is_empty() {
        Matrix::zeros(0, m.rows())
    } else {
        Matrix::from_rows(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithDecomposition<BigInt> {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.v.mul(&s.v_inv).is_identity());
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(Zero::is_zero(&s.d[(i, j)]));
                }
            }
        }
        for w in s.diagonal.windows(2) {
            if !Zero::is_zero(&w[1]) {
                assert!(Zero::is_zero(&(&w[1] % &w[0])), "chain broken: {:?}", s.diagonal);
            } else {
                // zeros trail
            }
        }
        s
    }

    #[test]
    fn balanced_remainder_negative_divisor() {
        for x in -20i64..=20 {
            for d in [-7i64, -4, -1, 1, 4, 7] {
                let (q, r) = EuclideanRing::div_rem(&BigInt::from(x), &BigInt::from(d));
                assert_eq!(&q * d + &r, BigInt::from(x));
                assert!(&r.abs() * 2u32 <= BigInt::from(d.abs()));
            }
        }
        check(&Matrix::from_rows(vec![
            vec![BigInt::from(-3), BigInt::from(2)],
            vec![BigInt::from(5), BigInt::from(-7)],
        ]));
    }

    #[test]
    fn two_by_three() {
        let s = check(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_and_identity() {
        let z = IntMatrix::zeros(2, 2);
        let s = check(&z);
        assert_eq!(s.diagonal, vec![<BigInt as Zero>::zero(), <BigInt as Zero>::zero()]);
        assert!(s.u.is_identity() && s.v.is_identity());
        assert_eq!(s.rank, 0);

        let i = IntMatrix::identity(3);
        let s = check(&i);
        assert!(s.d.is_identity());
    }

    #[test]
    fn rectangular_and_negative() {
        let a = IntMatrix::from_i64_rows(&[&[4, -6, 2], &[-2, 3, 5]]);
        let s = check(&a);
        assert_eq!(s.rank, 2);
        let a = IntMatrix::from_i64_rows(&[&[6], &[-4], &[10]]);
        let s = check(&a);
        assert_eq!(s.diagonal, vec![BigInt::from(2)]);
    }

    #[test]
    fn bareiss_determinant() {
        let a = IntMatrix::from_i64_rows(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(a.determinant(), BigInt::from(4));
        let a = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.determinant(), BigInt::from(-1));
        let a = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.determinant(), <BigInt as Zero>::zero());
    }

    #[test]
    fn kernel() {
        let a = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4], &[0, 1]]);
        let k = left_kernel(&a);
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&a).row(0).iter().all(Zero::is_zero));
    }

    #[test]
    fn polynomial_snf() {
        // diag(t - 1, t + 1) ~ diag(1, t^2 - 1) over Q[t]
        let a = Matrix::from_rows(vec![
            vec![QPoly::from_ints(&[-1, 1]), QPoly::zero()],
            vec![QPoly::zero(), QPoly::from_ints(&[1, 1])],
        ]);
        let s = smith_normal_form(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.diagonal, vec![QPoly::one(), QPoly::from_ints(&[-1, 0, 1])]);
    }
}
