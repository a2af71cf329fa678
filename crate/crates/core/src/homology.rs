//! Homology of the cyclic branched covers, `H_1(L_n) = H/(t^n - 1)`.
//!
//! The presentation is blown up by replacing `t` with the `n x n` cyclic
//! shift. Basis vector `(i, j)` of the blown-up module is `t^j h_i`; the
//! Smith form `U R V = D` gives canonical coordinates `y = x V`, of which we
//! keep the columns whose diagonal entry is not 1: torsion first, then free.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::arith::divisors;
use crate::error::Result;
use crate::fox::{alexander_polynomial, rational_structure, AlexanderModulePresentation};
use crate::poly::{nu, resultant, LaurentPoly, QPoly};
use crate::snf::{left_kernel, smith_normal_form, IntMatrix, Matrix};

/// `H/(t^n - 1)` presented over `Z`: the entry `c(t)` at block `(r, i)`
/// becomes the `n x n` block `c(P)` with `P` the cyclic shift, so that
/// row `(r, k)` is `t^k` times relation `r`.
pub fn present_mod_tn(a: &AlexanderModulePresentation, n: u32) -> IntMatrix {
    assert!(n >= 1, "cover degree must be positive");
    let n = n as usize;
    let mut m = IntMatrix::zeros(a.rows() * n, a.cols() * n);
    for (r, row) in a.entries.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            for (off, coeff) in c.coeffs().iter().enumerate() {
                let e = (c.valuation() + off as i64).rem_euclid(n as i64) as usize;
                for k in 0..n {
                    let j = (k + e) % n;
                    let slot = &mut m[(r * n + k, i * n + j)];
                    *slot += coeff;
                }
            }
        }
    }
    m
}

/// Invariant-factor form of a finitely generated abelian group.
#[derive(Clone, Debug, Serialize)]
pub struct FinAbGroupStruct {
    /// `d_1 | d_2 | ...`, each at least 2.
    #[serde(with = "crate::bigjson::vec")]
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
    /// Row `(i, j)` holds the canonical coordinates of `t^j h_i`, where `i`
    /// runs over presentation columns.
    pub to_canonical: IntMatrix,
}

impl FinAbGroupStruct {
    /// Number of canonical coordinates.
    pub fn dim(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// `prod d_i`, or `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Modulus of canonical coordinate `k` (0 for free coordinates).
    pub fn modulus(&self, k: usize) -> BigInt {
        self.torsion.get(k).cloned().unwrap_or_default()
    }

    /// Reduce coordinates into their standard range.
    pub fn reduce(&self, y: &mut [BigInt]) {
        for (k, d) in self.torsion.iter().enumerate() {
            y[k] = y[k].mod_floor(d);
        }
    }
}

/// The deck transformation `t` on canonical coordinates, acting on row
/// vectors: `y -> y * matrix`.
#[derive(Clone, Debug, Serialize)]
pub struct TAutomorphism {
    pub matrix: IntMatrix,
}

#[derive(Clone, Debug)]
pub struct CoverHomology {
    pub n: u32,
    pub group: FinAbGroupStruct,
    pub t_action: TAutomorphism,
    /// Canonical coordinates of `h_g = [mu^-1 x_g]` for every Wirtinger
    /// generator `g`; zero for the meridian.
    pub generator_images: Vec<Vec<BigInt>>,
    /// Row `k`: a preimage in the blown-up basis of canonical generator `k`.
    from_canonical: IntMatrix,
    /// Presentation column of each Wirtinger generator.
    columns: Vec<Option<usize>>,
}

impl CoverHomology {
    pub fn order(&self) -> Option<BigInt> {
        self.group.order()
    }

    pub fn free_rank(&self) -> usize {
        self.group.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.group.torsion
    }

    /// Canonical coordinates of `t^j h_g`.
    pub fn class_coords(&self, g: usize, j: u32) -> Vec<BigInt> {
        match self.columns[g] {
            None => vec![BigInt::zero(); self.group.dim()],
            Some(c) => {
                let j = j as usize % self.n as usize;
                self.group.to_canonical.row(c * self.n as usize + j).to_vec()
            }
        }
    }

    /// Apply `t` to canonical coordinates.
    pub fn apply_t(&self, y: &[BigInt]) -> Vec<BigInt> {
        let mut out = row_times(y, &self.t_action.matrix);
        self.group.reduce(&mut out);
        out
    }

    /// Whether `t^n` acts as the identity.
    pub fn t_power_is_identity(&self) -> bool {
        let dim = self.group.dim();
        (0..dim).all(|k| {
            let mut y = vec![BigInt::zero(); dim];
            y[k] = BigInt::one();
            let start = y.clone();
            for _ in 0..self.n {
                y = self.apply_t(&y);
            }
            y == start
        })
    }

    /// Whether `t` is invertible on the group: its images generate.
    pub fn t_is_automorphism(&self) -> bool {
        generates(&self.t_action.matrix, &self.group)
    }

    /// JSON summary `{n, torsion, rank, order}`.
    pub fn summary(&self) -> HomologySummary {
        HomologySummary {
            n: self.n,
            torsion: self.group.torsion.clone(),
            rank: self.group.free_rank,
            order: self.order(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub n: u32,
    #[serde(with = "crate::bigjson::vec")]
    pub torsion: Vec<BigInt>,
    pub rank: usize,
    #[serde(serialize_with = "order_or_infinite")]
    pub order: Option<BigInt>,
}

/// Serialize `None` as the string `"infinite"`.
pub fn order_or_infinite<S: Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => crate::bigjson::serialize(x, s),
        None => s.serialize_str("infinite"),
    }
}

fn row_times(y: &[BigInt], m: &IntMatrix) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); m.cols()];
    for (k, yk) in y.iter().enumerate() {
        if yk.is_zero() {
            continue;
        }
        for (o, mk) in out.iter_mut().zip(m.row(k)) {
            if !mk.is_zero() {
                *o += yk * mk;
            }
        }
    }
    out
}

/// Whether the rows of `m` together with the relations of `g` generate `g`.
fn generates(m: &IntMatrix, g: &FinAbGroupStruct) -> bool {
    let dim = g.dim();
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    rows.extend(relation_rows(g));
    if dim == 0 {
        return true;
    }
    if rows.is_empty() {
        return false;
    }
    let snf = smith_normal_form(&Matrix::from_rows(rows));
    snf.rank == dim && snf.diagonal.iter().take(dim).all(|d| d.is_one())
}

/// `d_k e_k` for every torsion coordinate.
fn relation_rows(g: &FinAbGroupStruct) -> Vec<Vec<BigInt>> {
    let dim = g.dim();
    g.torsion
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let mut r = vec![BigInt::zero(); dim];
            r[k] = d.clone();
            r
        })
        .collect()
}

/// Smith form of the blown-up presentation, with the `t`-action and the
/// generator classes in canonical coordinates.
pub fn homology_ln(a: &AlexanderModulePresentation, n: u32) -> CoverHomology {
    let nn = n as usize;
    let size = a.cols() * nn;
    let r = present_mod_tn(a, n);
    let snf = smith_normal_form(&r);

    let mut torsion_cols = Vec::new();
    let mut torsion = Vec::new();
    let mut free_cols = Vec::new();
    for j in 0..size {
        let d = snf.diagonal.get(j).cloned().unwrap_or_default();
        if d.is_zero() {
            free_cols.push(j);
        } else if !d.is_one() {
            torsion_cols.push(j);
            torsion.push(d.abs());
        }
    }
    let kept: Vec<usize> = torsion_cols.iter().chain(&free_cols).copied().collect();
    let dim = kept.len();

    let mut to_canonical = IntMatrix::zeros(size, dim);
    for x in 0..size {
        for (k, &col) in kept.iter().enumerate() {
            to_canonical[(x, k)] = snf.v[(x, col)].clone();
        }
    }
    let mut from_canonical = IntMatrix::zeros(dim, size);
    for (k, &col) in kept.iter().enumerate() {
        for x in 0..size {
            from_canonical[(k, x)] = snf.v_inv[(col, x)].clone();
        }
    }
    for x in 0..size {
        for (k, d) in torsion.iter().enumerate() {
            let v = to_canonical[(x, k)].mod_floor(d);
            to_canonical[(x, k)] = v;
        }
    }
    let group = FinAbGroupStruct { torsion, free_rank: free_cols.len(), to_canonical };

    // t shifts (i, j) to (i, j + 1 mod n).
    let mut matrix = IntMatrix::zeros(dim, dim);
    for k in 0..dim {
        let x = from_canonical.row(k);
        let mut shifted = vec![BigInt::zero(); size];
        for i in 0..a.cols() {
            for j in 0..nn {
                shifted[i * nn + (j + 1) % nn] = x[i * nn + j].clone();
            }
        }
        let mut y = row_times(&shifted, &group.to_canonical);
        group.reduce(&mut y);
        for (l, v) in y.into_iter().enumerate() {
            matrix[(k, l)] = v;
        }
    }

    let columns: Vec<Option<usize>> = (0..a.generator_count).map(|g| a.column_of(g)).collect();
    let generator_images = columns
        .iter()
        .map(|c| match c {
            None => vec![BigInt::zero(); dim],
            Some(c) => group.to_canonical.row(c * nn).to_vec(),
        })
        .collect();

    CoverHomology { n, group, t_action: TAutomorphism { matrix }, generator_images, from_canonical, columns }
}

/// `|H_1(L_n)|`, `None` for infinite.
pub fn order_ln(c: &CoverHomology) -> Option<BigInt> {
    c.order()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCheck {
    pub n: u32,
    #[serde(serialize_with = "order_or_infinite")]
    pub snf_order: Option<BigInt>,
    #[serde(with = "crate::bigjson")]
    pub resultant_value: BigInt,
    pub agree: bool,
}

/// Compare the Smith-form order with `|Res(nu_n, Delta)|`.
pub fn verify_order_formula(a: &AlexanderModulePresentation, n: u32) -> Result<OrderCheck> {
    let delta = alexander_polynomial(a)?;
    Ok(order_check(&homology_ln(a, n), &delta))
}

pub fn order_check(c: &CoverHomology, delta: &LaurentPoly) -> OrderCheck {
    let res = if c.n == 1 { BigInt::one() } else { resultant(&nu(c.n), delta).abs() };
    let snf_order = c.order();
    let agree = match &snf_order {
        Some(o) => *o == res,
        None => res.is_zero(),
    };
    OrderCheck { n: c.n, snf_order, resultant_value: res, agree }
}

/// `deg gcd(Delta, t^n - 1)`: the number of zeros of `Delta` that are
/// `n`-th roots of unity, counted with multiplicity. Equals the rank of
/// `H_1(L_n)` when the Alexander module is cyclic over `Q[t, t^-1]`; see
/// [`crate::fox::betti_from_factors`] for the general count.
pub fn betti_ln(delta: &LaurentPoly, n: u32) -> usize {
    let d = QPoly::from_laurent(delta);
    d.gcd(&QPoly::t_pow_minus_one(n as usize)).degree().unwrap_or(0)
}

/// Rank of `H_1(L_n)` from the invariant factors over `Q[t]`.
pub fn betti_ln_exact(a: &AlexanderModulePresentation, n: u32) -> usize {
    crate::fox::betti_from_factors(&rational_structure(a).factors, n)
}

/// Lazily computed covers `L_n` and projections between them, shared by
/// all computations on one knot. Safe for concurrent reads; inserts take
/// the write lock.
#[derive(Debug)]
pub struct Tower {
    presentation: Arc<AlexanderModulePresentation>,
    covers: RwLock<HashMap<u32, Arc<CoverHomology>>>,
    kernels: RwLock<HashMap<(u32, u32), Arc<Vec<Vec<BigInt>>>>>,
}

impl Tower {
    pub fn new(a: AlexanderModulePresentation) -> Self {
        Tower { presentation: Arc::new(a), covers: RwLock::default(), kernels: RwLock::default() }
    }

    pub fn presentation(&self) -> &AlexanderModulePresentation {
        &self.presentation
    }

    pub fn get(&self, n: u32) -> Arc<CoverHomology> {
        if let Some(c) = self.covers.read().expect("cover cache poisoned").get(&n) {
            return c.clone();
        }
        let c = Arc::new(homology_ln(&self.presentation, n));
        self.covers.write().expect("cover cache poisoned").entry(n).or_insert(c).clone()
    }

    /// Orders `|H_1(L_d)|` for every divisor `d` of `n`.
    pub fn divisor_orders(&self, n: u32) -> Vec<(u32, Option<BigInt>)> {
        divisors(n as u64).into_iter().map(|d| (d as u32, self.get(d as u32).order())).collect()
    }

    /// Matrix of the projection `H_1(L_n) -> H_1(L_l)`, `l | n`, on
    /// canonical coordinates (row `k` is the image of generator `k`).
    pub fn projection(&self, n: u32, l: u32) -> IntMatrix {
        assert!(l >= 1 && n % l == 0, "{l} does not divide {n}");
        let (cn, cl) = (self.get(n), self.get(l));
        let (nn, ll) = (n as usize, l as usize);
        let cols = self.presentation.cols();
        let mut p = IntMatrix::zeros(cn.group.dim(), cl.group.dim());
        for k in 0..cn.group.dim() {
            let x = cn.from_canonical.row(k);
            let mut folded = vec![BigInt::zero(); cols * ll];
            for i in 0..cols {
                for j in 0..nn {
                    folded[i * ll + j % ll] += &x[i * nn + j];
                }
            }
            let mut y = row_times(&folded, &cl.group.to_canonical);
            cl.group.reduce(&mut y);
            for (m, v) in y.into_iter().enumerate() {
                p[(k, m)] = v;
            }
        }
        p
    }

    /// Whether the projection `H_1(L_n) -> H_1(L_l)` is onto.
    pub fn projection_is_surjective(&self, n: u32, l: u32) -> bool {
        generates(&self.projection(n, l), &self.get(l).group)
    }

    /// Generators, in torsion coordinates of `H_1(L_n)`, of the kernel of
    /// `Tor H_1(L_n) -> H_1(L_l)`. For finite `H_1(L_n)` this is the image
    /// of `(t^l - 1)` in `H_1(L_n)`.
    pub fn torsion_kernel(&self, n: u32, l: u32) -> Arc<Vec<Vec<BigInt>>> {
        if let Some(k) = self.kernels.read().expect("kernel cache poisoned").get(&(n, l)) {
            return k.clone();
        }
        let cn = self.get(n);
        let cl = self.get(l);
        let p = self.projection(n, l);
        let tn = cn.group.torsion.len();
        let dl = cl.group.dim();
        let mut rows: Vec<Vec<BigInt>> = (0..tn).map(|k| p.row(k).to_vec()).collect();
        rows.extend(relation_rows(&cl.group));
        let kernel = if tn == 0 {
            Vec::new()
        } else if dl == 0 {
            (0..tn)
                .map(|k| {
                    let mut r = vec![BigInt::zero(); tn];
                    r[k] = BigInt::one();
                    r
                })
                .collect()
        } else {
            let k = left_kernel(&Matrix::from_rows(rows));
            (0..k.rows())
                .map(|i| {
                    let mut r = k.row(i)[..tn].to_vec();
                    for (v, d) in r.iter_mut().zip(&cn.group.torsion) {
                        *v = v.mod_floor(d);
                    }
                    r
                })
                .filter(|r| r.iter().any(|v| !v.is_zero()))
                .collect()
        };
        let kernel = Arc::new(kernel);
        self.kernels.write().expect("kernel cache poisoned").entry((n, l)).or_insert(kernel).clone()
    }
}
