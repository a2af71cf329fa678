use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Monomial matrix with root-of-unity entries: column `i` has the single
/// nonzero entry `zeta_N^exps[i]` in row `perm[i]`, `zeta_N = exp(2 pi i / N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialMatrix {
    pub n: usize,
    #[serde(rename = "N")]
    pub root_order: u64,
    pub perm: Vec<usize>,
    pub exps: Vec<u64>,
}

impl MonomialMatrix {
    pub fn identity(n: usize, root_order: u64) -> Self {
        MonomialMatrix { n, root_order, perm: (0..n).collect(), exps: vec![0; n] }
    }

    pub fn diagonal(root_order: u64, exps: Vec<u64>) -> Self {
        let n = exps.len();
        let exps = exps.into_iter().map(|e| e % root_order).collect();
        MonomialMatrix { n, root_order, perm: (0..n).collect(), exps }
    }

    /// Companion matrix `e_i -> e_{i+1}`, `e_n -> zeta^corner e_1`.
    pub fn companion(n: usize, root_order: u64, corner: u64) -> Self {
        let mut exps = vec![0; n];
        exps[n - 1] = corner % root_order;
        MonomialMatrix { n, root_order, perm: (0..n).map(|i| (i + 1) % n).collect(), exps }
    }

    /// Check the structural invariants.
    pub fn validate(&self) -> Result<()> {
        let mut seen = vec![false; self.n];
        if self.perm.len() != self.n || self.exps.len() != self.n || self.root_order == 0 {
            return Err(Error::DimensionMismatch("malformed monomial matrix".into()));
        }
        for &p in &self.perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::DimensionMismatch("perm is not a bijection".into()));
            }
        }
        if self.exps.iter().any(|&e| e >= self.root_order) {
            return Err(Error::DimensionMismatch("exponent out of range".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.root_order != other.root_order {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} over zeta_{} times {}x{} over zeta_{}",
                self.n, self.n, self.root_order, other.n, other.n, other.root_order
            )));
        }
        let n = self.root_order;
        Ok(MonomialMatrix {
            n: self.n,
            root_order: n,
            perm: other.perm.iter().map(|&p| self.perm[p]).collect(),
            exps: (0..self.n).map(|i| (other.exps[i] + self.exps[other.perm[i]]) % n).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut perm = vec![0; self.n];
        let mut exps = vec![0; self.n];
        for i in 0..self.n {
            perm[self.perm[i]] = i;
            exps[self.perm[i]] = (self.root_order - self.exps[i]) % self.root_order;
        }
        MonomialMatrix { n: self.n, root_order: self.root_order, perm, exps }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        // For monomial matrices with unit-modulus entries this is the inverse,
        // but build it literally: entry (j, i) = conj(entry (i, j)).
        let mut perm = vec![0; self.n];
        let mut exps = vec![0; self.n];
        for i in 0..self.n {
            let row = self.perm[i];
            perm[row] = i;
            exps[row] = (self.root_order - self.exps[i] % self.root_order) % self.root_order;
        }
        MonomialMatrix { n: self.n, root_order: self.root_order, perm, exps }
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = MonomialMatrix::identity(self.n, self.root_order);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            base = base.mul(&base).expect("same shape");
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.exps.iter().all(|&e| e == 0)
    }

    /// `zeta^e * I`?
    pub fn scalar_exponent(&self) -> Option<u64> {
        let e = *self.exps.first()?;
        (self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.exps.iter().all(|&x| x == e)).then_some(e)
    }

    pub fn perm_sign_is_negative(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut transpositions = 0;
        for s in 0..self.n {
            let mut len = 0;
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                p = self.perm[p];
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 1
    }

    /// Determinant as an exponent of `zeta_N` (the sign is `zeta_N^(N/2)`;
    /// requires even `N` when the permutation is odd).
    pub fn det_exponent(&self) -> u64 {
        let n = self.root_order;
        let mut e = self.exps.iter().fold(0u64, |a, &x| (a + x) % n);
        if self.perm_sign_is_negative() {
            assert!(n % 2 == 0, "odd permutation needs an even root order");
            e = (e + n / 2) % n;
        }
        e
    }

    /// Exponents of the diagonal entries (fixed points of `perm`).
    pub fn trace_terms(&self) -> Vec<u64> {
        (0..self.n).filter(|&i| self.perm[i] == i).map(|i| self.exps[i]).collect()
    }

    /// Re-express over `zeta_M` with `N | M`.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m % self.root_order == 0);
        let f = m / self.root_order;
        MonomialMatrix { n: self.n, root_order: m, perm: self.perm.clone(), exps: self.exps.iter().map(|e| e * f).collect() }
    }

    /// Dense complex matrix, row-major.
    pub fn to_complex(&self) -> nalgebra::DMatrix<nalgebra::Complex<f64>> {
        let mut m = nalgebra::DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            let theta = 2.0 * std::f64::consts::PI * self.exps[i] as f64 / self.root_order as f64;
            m[(self.perm[i], i)] = nalgebra::Complex::from_polar(1.0, theta);
        }
        m
    }
}
