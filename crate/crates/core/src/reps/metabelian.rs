use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::fingerprint::trace;
use super::monomial::MonomialMatrix;
use crate::arith::lcm;
use crate::characters::{character_order, orbit_representative, Character};
use crate::error::{Error, Result};
use crate::homology::{CoverHomology, Tower};
use crate::knot::{Letter, WirtingerPresentation};

/// Which group the representation lands in. `Gl` carries the corner entry
/// `z = exp(2 pi i num/den)` of the companion matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RepKind {
    #[serde(rename = "SL")]
    Sl,
    #[serde(rename = "GL")]
    Gl { z_num: u64, z_den: u64 },
}

/// `alpha_chi`: generator `x_g` goes to `T * diag(chi(h_g), chi(t h_g), ...,
/// chi(t^(n-1) h_g))`, with `T` the companion matrix with corner `z`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetabelianRep {
    pub n: u32,
    #[serde(rename = "N")]
    pub root_order: u64,
    pub images: Vec<MonomialMatrix>,
    pub chi: Character,
    #[serde(flatten)]
    pub kind: RepKind,
}

impl MetabelianRep {
    /// `z` as a reduced fraction of a full turn.
    pub fn z(&self) -> (u64, u64) {
        match self.kind {
            RepKind::Sl => sl_corner(self.n),
            RepKind::Gl { z_num, z_den } => (z_num, z_den),
        }
    }

    pub fn eval_word(&self, word: &[Letter]) -> MonomialMatrix {
        let mut acc = MonomialMatrix::identity(self.n as usize, self.root_order);
        for l in word {
            let m = &self.images[l.generator];
            let f = if l.exp > 0 { m.clone() } else { m.inverse() };
            acc = acc.mul(&f).expect("images share a shape");
        }
        acc
    }
}

/// `(-1)^(n+1)` as a fraction of a turn.
fn sl_corner(n: u32) -> (u64, u64) {
    if n % 2 == 0 {
        (1, 2)
    } else {
        (0, 1)
    }
}

/// The irreducible `SL(n, C)` representation of an order-`n` character.
pub fn build_sl_rep(w: &WirtingerPresentation, tower: &Tower, chi: &Character) -> Result<MetabelianRep> {
    let (num, den) = sl_corner(chi.n);
    let mut r = build(w, tower, chi, num, den)?;
    r.kind = RepKind::Sl;
    Ok(r)
}

/// The `GL(n, C)` representation with corner `z = exp(2 pi i z_num / z_den)`.
pub fn build_gl_rep(
    w: &WirtingerPresentation,
    tower: &Tower,
    chi: &Character,
    z_num: u64,
    z_den: u64,
) -> Result<MetabelianRep> {
    if z_den == 0 {
        return Err(Error::DimensionMismatch("z exponent has zero denominator".into()));
    }
    let g = z_num.gcd(&z_den);
    let (num, den) = ((z_num / g) % (z_den / g), z_den / g);
    build(w, tower, chi, num, den)
}

fn build(w: &WirtingerPresentation, tower: &Tower, chi: &Character, z_num: u64, z_den: u64) -> Result<MetabelianRep> {
    if chi.free_exponents.is_some() {
        return Err(Error::DimensionMismatch("exact representations need a torsion character".into()));
    }
    let n = chi.n;
    let c = tower.get(n);
    if chi.moduli.len() != c.torsion().len() {
        return Err(Error::DimensionMismatch("character does not belong to this cover".into()));
    }
    let order = character_order(chi, tower);
    if order != n {
        return Err(Error::OrderMismatch { expected: n, actual: order });
    }

    let values: Vec<Vec<(u64, u64)>> = (0..w.generator_count)
        .map(|g| (0..n).map(|j| chi.eval_fraction(&c.class_coords(g, j))).collect())
        .collect();
    let root_order = values.iter().flatten().map(|&(_, q)| q).fold(lcm(2, z_den), lcm);
    let t = MonomialMatrix::companion(n as usize, root_order, z_num * (root_order / z_den));
    let images = values
        .iter()
        .map(|vals| {
            let d = MonomialMatrix::diagonal(root_order, vals.iter().map(|&(p, q)| p * (root_order / q)).collect());
            t.mul(&d).expect("same shape")
        })
        .collect();
    let r = MetabelianRep { n, root_order, images, chi: chi.clone(), kind: RepKind::Gl { z_num, z_den } };
    if let Some(index) = failing_relators(&r, w).into_iter().next() {
        return Err(Error::RelationFailure { index });
    }
    Ok(r)
}

fn failing_relators(r: &MetabelianRep, w: &WirtingerPresentation) -> Vec<usize> {
    w.relators.iter().enumerate().filter(|(_, rel)| !r.eval_word(rel).is_identity()).map(|(i, _)| i).collect()
}

/// Exact checks on a representation. Failures are recorded, not raised.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub well_formed: bool,
    pub failed_relators: Vec<usize>,
    pub relators_ok: bool,
    /// `tr alpha(mu) = 0`; `None` for `n = 1`.
    pub meridian_trace_zero: Option<bool>,
    pub longitude_identity: bool,
    pub longitude_trace: Option<i64>,
    /// Every generator has the determinant `(-1)^(n+1) z`.
    pub determinants_ok: bool,
    /// `alpha(mu)^n = z I`, which is `(-1)^(n+1) I` for `SL`.
    pub meridian_power_scalar: bool,
    /// Multiplicative order of `alpha(mu)`.
    pub meridian_order: u64,
    /// `A A^* = I` for every image.
    pub unitary: bool,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.well_formed
            && self.relators_ok
            && self.meridian_trace_zero != Some(false)
            && self.longitude_identity
            && self.determinants_ok
            && self.meridian_power_scalar
            && self.unitary
    }
}

pub fn verify_rep(r: &MetabelianRep, w: &WirtingerPresentation) -> VerificationReport {
    let n = r.n as usize;
    let well_formed = r.images.len() == w.generator_count
        && r.images.iter().all(|m| m.n == n && m.root_order == r.root_order && m.validate().is_ok())
        && r.root_order % 2 == 0
        && r.root_order % r.z().1 == 0;
    if !well_formed {
        return VerificationReport {
            well_formed,
            failed_relators: Vec::new(),
            relators_ok: false,
            meridian_trace_zero: None,
            longitude_identity: false,
            longitude_trace: None,
            determinants_ok: false,
            meridian_power_scalar: false,
            meridian_order: 0,
            unitary: false,
        };
    }
    let failed_relators = failing_relators(r, w);
    let mu = &r.images[w.meridian];
    let meridian_trace_zero = (n >= 2).then(|| trace(mu).is_zero());
    let lon = r.eval_word(&w.longitude);
    let (z_num, z_den) = r.z();
    let z_exp = z_num * (r.root_order / z_den) % r.root_order;
    let sign_exp = if n % 2 == 0 { r.root_order / 2 } else { 0 };
    let det_target = (z_exp + sign_exp) % r.root_order;
    let determinants_ok = r.images.iter().all(|m| m.det_exponent() == det_target);
    let meridian_power_scalar = mu.pow(n as u64).scalar_exponent() == Some(z_exp);
    let meridian_order = (1..=n as u64 * r.root_order).find(|&k| mu.pow(k).is_identity()).unwrap_or(0);
    let unitary = r.images.iter().all(|m| m.mul(&m.adjoint()).map(|p| p.is_identity()).unwrap_or(false));
    VerificationReport {
        well_formed,
        relators_ok: failed_relators.is_empty(),
        failed_relators,
        meridian_trace_zero,
        longitude_identity: lon.is_identity(),
        longitude_trace: trace(&lon).as_integer(),
        determinants_ok,
        meridian_power_scalar,
        meridian_order,
        unitary,
    }
}

/// Canonical class label: the lexicographically least exponent tuple in
/// the `t`-orbit of the character.
pub fn conjugacy_class_id(r: &MetabelianRep, c: &CoverHomology) -> Result<Vec<u64>> {
    orbit_representative(&r.chi, c)
}
