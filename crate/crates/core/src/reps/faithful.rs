//! Floating-point representations: the faithful reducible representation
//! of the metabelian quotient, and metabelian samples whose character has
//! non-root-of-unity values on a free part.

use nalgebra::{Complex, DMatrix};
use serde::{Serialize, Serializer};

use crate::characters::Character;
use crate::error::{Error, Result};
use crate::fox::{rational_structure, AlexanderModulePresentation};
use crate::homology::Tower;
use crate::knot::{Letter, WirtingerPresentation};
use crate::poly::QPoly;

type C64 = Complex<f64>;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// `theta = (sqrt 5 - 1) / 2`; `x = exp(2 pi i theta)` stands in for an
/// element of infinite order in `S^1`.
pub fn golden_x() -> C64 {
    let theta = (5f64.sqrt() - 1.0) / 2.0;
    Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * theta)
}

/// One Jordan-type summand `C[t]/(t - z)^r`.
#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub root: [f64; 2],
    pub multiplicity: u32,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericRep {
    pub dim: usize,
    #[serde(serialize_with = "ser_matrices")]
    pub images: Vec<DMatrix<C64>>,
    pub blocks: Vec<Block>,
    pub tolerance: f64,
    /// Largest max-norm `|alpha(r) - I|` over the relators.
    pub residual: f64,
}

fn ser_matrices<S: Serializer>(ms: &[DMatrix<C64>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<Vec<[f64; 2]>>> = ms
        .iter()
        .map(|m| (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect())
        .collect();
    rows.serialize(s)
}

impl NumericRep {
    pub fn eval_word(&self, word: &[Letter]) -> Option<DMatrix<C64>> {
        let mut acc = DMatrix::identity(self.dim, self.dim);
        for l in word {
            let m = &self.images[l.generator];
            acc = if l.exp > 0 { acc * m } else { acc * m.clone().try_inverse()? };
        }
        Some(acc)
    }

    /// Max-norm residual of every relator.
    pub fn relator_residuals(&self, w: &WirtingerPresentation) -> Vec<f64> {
        let id = DMatrix::<C64>::identity(self.dim, self.dim);
        w.relators
            .iter()
            .map(|r| match self.eval_word(r) {
                Some(m) => (m - &id).iter().map(|z| z.norm()).fold(0.0, f64::max),
                None => f64::INFINITY,
            })
            .collect()
    }

    fn certify(mut self, w: &WirtingerPresentation) -> Result<Self> {
        self.residual = self.relator_residuals(w).into_iter().fold(0.0, f64::max);
        if self.residual.is_nan() || self.residual >= self.tolerance {
            return Err(Error::ToleranceExceeded { residual: self.residual, tolerance: self.tolerance });
        }
        Ok(self)
    }
}

fn horner(coeffs: &[f64], z: C64) -> (C64, C64) {
    let mut v = C64::new(0.0, 0.0);
    let mut d = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        d = d * z + v;
        v = v * z + C64::new(c, 0.0);
    }
    (v, d)
}

/// Roots of a monic squarefree rational polynomial, Newton-polished.
fn squarefree_roots(f: &QPoly, tol: f64) -> Result<Vec<C64>> {
    let c = f.monic().to_f64_coeffs();
    let deg = c.len() - 1;
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -c[i];
    }
    let scale = c.iter().map(|x| x.abs()).fold(1.0, f64::max);
    let mut roots = Vec::with_capacity(deg);
    for mut z in comp.complex_eigenvalues().iter().copied() {
        for _ in 0..50 {
            let (v, d) = horner(&c, z);
            if d.norm() == 0.0 {
                break;
            }
            let step = v / d;
            z -= step;
            if step.norm() <= 1e-17 * z.norm().max(1.0) {
                break;
            }
        }
        let (v, _) = horner(&c, z);
        let r = v.norm() / (scale * z.norm().max(1.0).powi(deg as i32));
        if !(r < tol) {
            return Err(Error::ToleranceExceeded { residual: r, tolerance: tol });
        }
        roots.push(z);
    }
    Ok(roots)
}

/// Taylor coefficients `a_0..a_{r-1}` of `p` at `z`: `p = sum a_i (t - z)^i`
/// modulo `(t - z)^r`.
fn taylor(p: &QPoly, z: C64, r: usize) -> Vec<C64> {
    let mut q: Vec<C64> = p.to_f64_coeffs().into_iter().map(|c| C64::new(c, 0.0)).collect();
    let mut out = Vec::with_capacity(r);
    for _ in 0..r {
        if q.is_empty() {
            out.push(C64::new(0.0, 0.0));
            continue;
        }
        // synthetic division by (t - z)
        let mut quot = vec![C64::new(0.0, 0.0); q.len() - 1];
        let mut acc = C64::new(0.0, 0.0);
        for i in (0..q.len()).rev() {
            acc = acc * z + q[i];
            if i > 0 {
                quot[i - 1] = acc;
            }
        }
        out.push(acc);
        q = quot;
    }
    out
}

/// Faithful reducible representation of `pi / pi''` as a direct sum of
/// blocks `(0, p) -> [[1, a(p)], [0, I]]`, `(1, 0) -> x diag(1, J_z)`.
pub fn build_faithful_reducible(
    w: &WirtingerPresentation,
    a: &AlexanderModulePresentation,
    tolerance: f64,
) -> Result<NumericRep> {
    let rs = rational_structure(a);
    if rs.free_rank > 0 {
        return Err(Error::ZeroDeterminant);
    }
    let x = golden_x();
    // (root, multiplicity, coordinates a(h_g) for each generator)
    let mut parts: Vec<(C64, u32, Vec<Vec<C64>>)> = Vec::new();
    for (j, f) in rs.factors.iter().enumerate() {
        for (g, mult) in f.squarefree_decomposition() {
            for z in squarefree_roots(&g, tolerance)? {
                let coords = (0..w.generator_count)
                    .map(|gen| match a.column_of(gen) {
                        Some(col) => taylor(&rs.coords[col][j], z, mult as usize),
                        None => vec![C64::new(0.0, 0.0); mult as usize],
                    })
                    .collect();
                parts.push((z, mult, coords));
            }
        }
    }
    let dim = if parts.is_empty() { 1 } else { parts.iter().map(|p| p.1 as usize + 1).sum() };
    let mut images = vec![DMatrix::<C64>::zeros(dim, dim); w.generator_count];
    if parts.is_empty() {
        for m in &mut images {
            m[(0, 0)] = x;
        }
    }
    let mut off = 0;
    for (z, mult, coords) in &parts {
        let r = *mult as usize;
        let mut xb = DMatrix::<C64>::zeros(r + 1, r + 1);
        xb[(0, 0)] = x;
        for i in 1..=r {
            xb[(i, i)] = x * z;
            if i < r {
                xb[(i, i + 1)] = x;
            }
        }
        for (gen, img) in images.iter_mut().enumerate() {
            let mut u = DMatrix::<C64>::identity(r + 1, r + 1);
            for (i, ai) in coords[gen].iter().enumerate() {
                u[(0, i + 1)] = *ai;
            }
            img.view_mut((off, off), (r + 1, r + 1)).copy_from(&(&xb * u));
        }
        off += r + 1;
    }
    let blocks = parts
        .iter()
        .map(|(z, m, _)| Block { root: [z.re, z.im], multiplicity: *m, size: *m as usize + 1 })
        .collect();
    NumericRep { dim, images, blocks, tolerance, residual: 0.0 }.certify(w)
}

/// `T diag(chi(h), ..., chi(t^(n-1) h))` in floating point, for characters
/// carrying values on the free part of `H_1(L_n)`.
pub fn build_numeric_sample(
    w: &WirtingerPresentation,
    tower: &Tower,
    chi: &Character,
    tolerance: f64,
) -> Result<NumericRep> {
    let n = chi.n as usize;
    let c = tower.get(chi.n);
    let free = chi.free_exponents.clone().unwrap_or_default();
    if chi.moduli.len() != c.torsion().len() || free.len() != c.free_rank() {
        return Err(Error::DimensionMismatch("character does not belong to this cover".into()));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let value = |y: &[num_bigint::BigInt]| -> C64 {
        let (p, q) = chi.eval_fraction(y);
        let mut v = Complex::from_polar(1.0, two_pi * p as f64 / q as f64);
        for (k, [re, im]) in free.iter().enumerate() {
            let yk = num_traits::ToPrimitive::to_f64(&y[chi.moduli.len() + k]).unwrap_or(f64::NAN);
            v *= (C64::new(0.0, two_pi) * C64::new(*re, *im) * yk).exp();
        }
        v
    };
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    let mut t = DMatrix::<C64>::zeros(n, n);
    for i in 0..n {
        t[((i + 1) % n, i)] = if i == n - 1 { C64::new(sign, 0.0) } else { C64::new(1.0, 0.0) };
    }
    let images = (0..w.generator_count)
        .map(|g| {
            let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                n,
                (0..chi.n).map(|j| value(&c.class_coords(g, j))),
            ));
            &t * d
        })
        .collect();
    NumericRep { dim: n, images, blocks: Vec::new(), tolerance, residual: 0.0 }.certify(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fox::alexander_module;
    use crate::knot::{braid_to_wirtinger, fixture};

    fn rep(name: &str) -> (WirtingerPresentation, NumericRep) {
        let w = braid_to_wirtinger(&fixture(name).unwrap().braid).unwrap();
        let r = build_faithful_reducible(&w, &alexander_module(&w), DEFAULT_TOLERANCE).unwrap();
        (w, r)
    }

    #[test]
    fn trefoil_blocks() {
        let (_, r) = rep("trefoil");
        assert_eq!(r.dim, 4);
        assert_eq!(r.blocks.len(), 2);
        for b in &r.blocks {
            assert_eq!(b.size, 2);
            assert!((b.root[0] - 0.5).abs() < 1e-12);
            assert!((b.root[1].abs() - 3f64.sqrt() / 2.0).abs() < 1e-12);
        }
        assert!(r.residual < 1e-9);
    }

    #[test]
    fn figure_eight_blocks() {
        let (_, r) = rep("figure-eight");
        assert_eq!(r.dim, 4);
        let mut roots: Vec<f64> = r.blocks.iter().map(|b| b.root[0]).collect();
        roots.sort_by(f64::total_cmp);
        assert!((roots[0] - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((roots[1] - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn unknot_is_abelian() {
        let (_, r) = rep("unknot");
        assert_eq!(r.dim, 1);
        assert!((r.images[0][(0, 0)] - golden_x()).norm() < 1e-15);
    }

    #[test]
    fn taylor_expansion() {
        // t^2 = 1 + 2 (t - 1) + (t - 1)^2
        let a = taylor(&QPoly::from_ints(&[0, 0, 1]), C64::new(1.0, 0.0), 3);
        assert!((a[0] - 1.0).norm() < 1e-15 && (a[1] - 2.0).norm() < 1e-15 && (a[2] - 1.0).norm() < 1e-15);
    }
}
