use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A generator or inverse generator in a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    /// Zero-based generator index.
    pub generator: usize,
    /// `+1` or `-1`.
    pub exp: i8,
}

impl Letter {
    pub fn new(generator: usize, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Letter { generator, exp }
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, exp: -self.exp }
    }
}

pub type Word = Vec<Letter>;

/// Sum of exponents; the image in `H_1(X_K) = Z`.
pub fn exponent_sum(word: &[Letter]) -> i64 {
    word.iter().map(|l| l.exp as i64).sum()
}

pub fn invert_word(word: &[Letter]) -> Word {
    word.iter().rev().map(|l| l.inverse()).collect()
}

/// One pass of the knot through a crossing, in traversal order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
    /// Crossing sign, `+1` or `-1`.
    pub sign: i8,
}

/// Wirtinger presentation of a knot group with peripheral data.
///
/// Relators have the form `x_out * x_over^e * x_in^-1 * x_over^-e` with
/// `e = -sign`, so that the longitude is the product of over-arc
/// generators `x_over^sign` met along the knot, times `mu^-writhe`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WirtingerPresentation {
    pub generator_count: usize,
    pub relators: Vec<Word>,
    /// Index of the meridian generator (always 0: the arc through the basepoint).
    pub meridian: usize,
    pub longitude: Word,
    pub writhe: i64,
}

impl WirtingerPresentation {
    /// Build the presentation from the cyclic sequence of passages met when
    /// walking once around the knot. Every crossing must be passed exactly
    /// once over and once under.
    pub fn from_traversal(crossings: usize, passages: &[Passage]) -> Result<Self> {
        if crossings == 0 {
            return Ok(WirtingerPresentation {
                generator_count: 1,
                relators: Vec::new(),
                meridian: 0,
                longitude: Vec::new(),
                writhe: 0,
            });
        }
        if passages.len() != 2 * crossings {
            return Err(Error::InconsistentDiagram(format!(
                "{} passages for {} crossings",
                passages.len(),
                crossings
            )));
        }
        let mut over_arc = vec![None; crossings];
        let mut under_seen = vec![false; crossings];
        let mut arc = 0;
        for p in passages {
            if p.over {
                if over_arc[p.crossing].replace(arc % crossings).is_some() {
                    return Err(Error::InconsistentDiagram(format!(
                        "crossing {} passed over twice",
                        p.crossing
                    )));
                }
            } else {
                if std::mem::replace(&mut under_seen[p.crossing], true) {
                    return Err(Error::InconsistentDiagram(format!(
                        "crossing {} passed under twice",
                        p.crossing
                    )));
                }
                arc += 1;
            }
        }
        debug_assert_eq!(arc, crossings);

        let m = crossings;
        let mut relators = Vec::with_capacity(m);
        let mut longitude = Vec::with_capacity(m);
        let mut writhe = 0i64;
        let mut arc = 0;
        for p in passages.iter().filter(|p| !p.over) {
            let over = over_arc[p.crossing].expect("every crossing has an over passage");
            let incoming = arc;
            let outgoing = (arc + 1) % m;
            let e = -p.sign;
            relators.push(vec![
                Letter::new(outgoing, 1),
                Letter::new(over, e),
                Letter::new(incoming, -1),
                Letter::new(over, -e),
            ]);
            longitude.push(Letter::new(over, p.sign));
            writhe += p.sign as i64;
            arc += 1;
        }
        let mu_power = Letter::new(0, if writhe > 0 { -1 } else { 1 });
        longitude.extend(std::iter::repeat(mu_power).take(writhe.unsigned_abs() as usize));

        Ok(WirtingerPresentation { generator_count: m, relators, meridian: 0, longitude, writhe })
    }

    /// Exponent sum of every generator in `word`, for abelianization checks.
    pub fn abelianize(&self, word: &[Letter]) -> Vec<i64> {
        let mut v = vec![0; self.generator_count];
        for l in word {
            v[l.generator] += l.exp as i64;
        }
        v
    }
}

impl fmt::Display for WirtingerPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: &[Letter]| -> String {
            if w.is_empty() {
                return "1".into();
            }
            w.iter()
                .map(|l| {
                    if l.exp == 1 {
                        format!("x{}", l.generator + 1)
                    } else {
                        format!("x{}^-1", l.generator + 1)
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "< x1..x{} |", self.generator_count)?;
        for r in &self.relators {
            writeln!(f, "  {}", show(r))?;
        }
        writeln!(f, ">  meridian x{}", self.meridian + 1)?;
        write!(f, "longitude {}  (writhe {})", show(&self.longitude), self.writhe)
    }
}
