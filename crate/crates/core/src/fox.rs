//! Fox calculus and the Alexander module.
//!
//! A Wirtinger generator `x_i` corresponds to the class `h_i = [mu^-1 x_i]`
//! of the Alexander module `H`, with `t` acting as conjugation
//! `h -> mu^-1 h mu`. A word `w` with exponent sum zero has module image
//! `sum_k t^(s_k) * c_k * h_(g_k)`, where `s_k` is the exponent sum of the
//! letters after position `k` and `c_k` is `1` for `x` and `-t^-1` for
//! `x^-1`. This is the left Fox derivative with `t -> t^-1`, shifted by
//! `t^-1`, and it is what the presentation matrix stores.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knot::{Letter, WirtingerPresentation};
use crate::poly::{LaurentPoly, QPoly};
use crate::snf::{smith_normal_form, Matrix};

/// Left Fox derivative `d word / d x_gen`, abelianized by `x_i -> t`.
pub fn fox_derivative(word: &[Letter], gen: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    let mut prefix = 0i64;
    for l in word {
        if l.generator == gen {
            let term = if l.exp > 0 {
                LaurentPoly::monomial(BigInt::one(), prefix)
            } else {
                LaurentPoly::monomial(-BigInt::one(), prefix - 1)
            };
            acc = &acc + &term;
        }
        prefix += l.exp as i64;
    }
    acc
}

/// Coefficient of `h_gen` in the module image of `word`.
pub fn module_coefficient(word: &[Letter], gen: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    let mut suffix: i64 = word.iter().map(|l| l.exp as i64).sum();
    for l in word {
        suffix -= l.exp as i64;
        if l.generator == gen {
            let term = if l.exp > 0 {
                LaurentPoly::monomial(BigInt::one(), suffix)
            } else {
                LaurentPoly::monomial(-BigInt::one(), suffix - 1)
            };
            acc = &acc + &term;
        }
    }
    acc
}

/// Presentation of the Alexander module: `H = Lambda^cols / rowspace(entries)`
/// with `Lambda = Z[t, t^-1]`, acting on row vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderModulePresentation {
    pub entries: Vec<Vec<LaurentPoly>>,
    /// Wirtinger generator index of each column.
    pub generator_labels: Vec<usize>,
    /// Number of Wirtinger generators, including the meridian.
    pub generator_count: usize,
    pub convention_tag: String,
}

pub const CONVENTION_TAG: &str = "h_i=[mu^-1 x_i]; t.h=mu^-1 h mu; x_i -> (1,h_i); row relations";

impl AlexanderModulePresentation {
    /// Build from explicit entries. Columns are labelled by generators
    /// `1..=cols`, generator 0 playing the meridian.
    pub fn from_entries(entries: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged presentation matrix".into()));
        }
        Ok(AlexanderModulePresentation {
            entries,
            generator_labels: (1..=cols).collect(),
            generator_count: cols + 1,
            convention_tag: CONVENTION_TAG.into(),
        })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.generator_labels.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    /// Column holding Wirtinger generator `gen`, `None` for the meridian.
    pub fn column_of(&self, gen: usize) -> Option<usize> {
        self.generator_labels.iter().position(|&g| g == gen)
    }

    /// Rows multiplied by powers of `t` so every entry is an honest
    /// polynomial, as a matrix over `Q[t]`.
    pub fn polynomial_matrix(&self) -> Matrix<QPoly> {
        let rows = self
            .entries
            .iter()
            .map(|row| {
                let low = row.iter().filter(|p| !p.is_zero()).map(|p| p.valuation()).min().unwrap_or(0);
                row.iter().map(|p| QPoly::from_laurent_shifted(p, -low)).collect()
            })
            .collect();
        if self.rows() == 0 {
            Matrix::zeros(0, self.cols())
        } else {
            Matrix::from_rows(rows)
        }
    }
}

/// Fox Jacobian with the last relator row and the meridian column deleted.
pub fn alexander_module(w: &WirtingerPresentation) -> AlexanderModulePresentation {
    let skip = w.relators.len().checked_sub(1);
    alexander_module_deleting(w, skip)
}

/// Fox Jacobian with relator `deleted_row` (if any) and the meridian column removed.
pub fn alexander_module_deleting(w: &WirtingerPresentation, deleted_row: Option<usize>) -> AlexanderModulePresentation {
    let labels: Vec<usize> = (0..w.generator_count).filter(|&g| g != w.meridian).collect();
    let entries = w
        .relators
        .iter()
        .enumerate()
        .filter(|&(r, _)| Some(r) != deleted_row)
        .map(|(_, rel)| labels.iter().map(|&g| module_coefficient(rel, g)).collect())
        .collect();
    AlexanderModulePresentation {
        entries,
        generator_labels: labels,
        generator_count: w.generator_count,
        convention_tag: CONVENTION_TAG.into(),
    }
}

/// Determinant of the presentation, normalized to valuation 0 with a
/// positive leading coefficient.
pub fn alexander_polynomial(a: &AlexanderModulePresentation) -> Result<LaurentPoly> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} presentation has no determinant",
            a.rows(),
            a.cols()
        )));
    }
    let det = a.polynomial_matrix().determinant();
    if det.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    let coeffs = det.to_integer_coeffs().expect("determinant of an integer matrix is integral");
    Ok(LaurentPoly::new(0, coeffs).normalized())
}

/// Invariant factors over `Q[t]` with their coordinate change.
#[derive(Clone, Debug)]
pub struct RationalStructure {
    /// Nonconstant invariant factors, monic, `t`-free, in divisibility
    /// order (each divides the next).
    pub factors: Vec<QPoly>,
    /// `coords[i][j]`: the image of column generator `i` in the `j`-th
    /// summand `Q[t]/(factors[j])`, reduced.
    pub coords: Vec<Vec<QPoly>>,
    /// Number of free `Q[t, t^-1]` summands.
    pub free_rank: usize,
}

/// Smith form of the presentation over `Q[t]`, keeping only the summands
/// that survive in `Q[t, t^-1]`.
pub fn rational_structure(a: &AlexanderModulePresentation) -> RationalStructure {
    let m = a.polynomial_matrix();
    let snf = smith_normal_form(&m);
    let mut factors = Vec::new();
    let mut keep = Vec::new();
    for (j, d) in snf.diagonal.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let f = d.strip_t().monic();
        if f.degree().unwrap_or(0) > 0 {
            factors.push(f);
            keep.push(j);
        }
    }
    let free_rank = a.cols() - snf.rank;
    let coords = (0..a.cols())
        .map(|i| keep.iter().zip(&factors).map(|(&j, f)| snf.v[(i, j)].rem(f)).collect())
        .collect();
    RationalStructure { factors, coords, free_rank }
}

/// Invariant factors over `Q[t]`, largest first: `lambda_1` is divisible
/// by every other factor. Their product is the Alexander polynomial up to
/// a rational unit.
pub fn invariant_factors_q(a: &AlexanderModulePresentation) -> Vec<QPoly> {
    let mut f = rational_structure(a).factors;
    f.reverse();
    f
}

/// First Alexander invariant `lambda_1`, or `1` for a trivial module.
pub fn lambda1(a: &AlexanderModulePresentation) -> QPoly {
    invariant_factors_q(a).into_iter().next().unwrap_or_else(QPoly::one)
}

/// Rank of `H/(t^n - 1)` computed from the invariant factors:
/// `sum_j deg gcd(lambda_j, t^n - 1)`.
pub fn betti_from_factors(factors: &[QPoly], n: u32) -> usize {
    let tn = QPoly::t_pow_minus_one(n as usize);
    factors.iter().map(|f| f.gcd(&tn).degree().unwrap_or(0)).sum()
}
