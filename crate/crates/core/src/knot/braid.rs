use serde::{Deserialize, Serialize};
use std::fmt;

use super::pd::PdCode;
use super::wirtinger::{Passage, WirtingerPresentation};
use crate::error::{Error, Result};

/// Braid word on `strands` strands; letter `g` is `sigma_|g|^sign(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Syntax("a braid needs at least one strand".into()));
        }
        for &g in &letters {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(Error::Syntax(format!("letter {g} out of range for {strands} strands")));
            }
        }
        let b = BraidWord { strands, letters };
        let cycles = b.closure_components();
        if cycles != 1 {
            return Err(Error::NotAKnot(format!("braid closure has {cycles} components")));
        }
        Ok(b)
    }

    /// Strand permutation: top position -> bottom position.
    pub fn permutation(&self) -> Vec<usize> {
        (0..self.strands)
            .map(|start| {
                let mut p = start;
                for &g in &self.letters {
                    let i = g.unsigned_abs() as usize - 1;
                    if p == i {
                        p = i + 1;
                    } else if p == i + 1 {
                        p = i;
                    }
                }
                p
            })
            .collect()
    }

    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for s in 0..self.strands {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                p = perm[p];
            }
        }
        cycles
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|g| g.signum() as i64).sum()
    }

    /// Walk the closure from the top of strand 1. A positive letter carries
    /// the strand moving right over the strand moving left.
    pub fn traversal(&self) -> Vec<Passage> {
        let mut passages = Vec::with_capacity(2 * self.letters.len());
        let mut p = 0usize;
        loop {
            for (k, &g) in self.letters.iter().enumerate() {
                let i = g.unsigned_abs() as usize - 1;
                let sign = g.signum() as i8;
                if p == i {
                    passages.push(Passage { crossing: k, over: g > 0, sign });
                    p = i + 1;
                } else if p == i + 1 {
                    passages.push(Passage { crossing: k, over: g < 0, sign });
                    p = i;
                }
            }
            if p == 0 {
                break;
            }
        }
        passages
    }

    /// Planar diagram of the closure, edges labelled `1..=2c` along the
    /// traversal.
    pub fn to_pd(&self) -> Result<PdCode> {
        if self.closure_components() != 1 {
            return Err(Error::NotAKnot("braid closure is a link".into()));
        }
        let passages = self.traversal();
        let len = passages.len() as i64;
        let mut under = vec![None; self.letters.len()];
        let mut over = vec![None; self.letters.len()];
        for (k, p) in passages.iter().enumerate() {
            let k = k as i64;
            let edges = (if k == 0 { len } else { k }, k + 1);
            if p.over {
                over[p.crossing] = Some((edges, p.sign));
            } else {
                under[p.crossing] = Some(edges);
            }
        }
        let crossings = under
            .into_iter()
            .zip(over)
            .map(|(u, o)| {
                let (u_in, u_out) = u.expect("every crossing passed under");
                let ((o_in, o_out), sign) = o.expect("every crossing passed over");
                if sign > 0 {
                    [u_in, o_out, u_out, o_in]
                } else {
                    [u_in, o_in, u_out, o_out]
                }
            })
            .collect();
        Ok(PdCode { crossings })
    }

    pub fn to_wirtinger(&self) -> Result<WirtingerPresentation> {
        if self.closure_components() != 1 {
            return Err(Error::NotAKnot("braid closure is a link".into()));
        }
        WirtingerPresentation::from_traversal(self.letters.len(), &self.traversal())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.letters {
            write!(f, "{g} ")?;
        }
        write!(f, "@{}", self.strands)
    }
}

/// Parse a braid word.
///
/// Accepted tokens, separated by whitespace, commas or brackets: signed
/// integers (`1`, `-2`), generator names (`s1`, `s2^-1`, `S2` for the
/// inverse) and an optional strand count `@s`. Without `@s` the strand
/// count is one more than the largest generator index.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let mut letters = Vec::new();
    let mut strands = None;
    let cleaned: String =
        text.chars().map(|c| if matches!(c, ',' | '[' | ']' | '{' | '}' | '(' | ')') { ' ' } else { c }).collect();
    for tok in cleaned.split_whitespace() {
        if let Some(rest) = tok.strip_prefix('@') {
            let s: usize = rest.parse().map_err(|_| Error::Syntax(format!("bad strand count {tok:?}")))?;
            if strands.replace(s).is_some() {
                return Err(Error::Syntax("strand count given twice".into()));
            }
        } else if let Some(rest) = tok.strip_prefix('s') {
            let (idx, inv) = match rest.strip_suffix("^-1") {
                Some(r) => (r, true),
                None => (rest, false),
            };
            let g: i32 = idx.parse().map_err(|_| Error::Syntax(format!("bad generator {tok:?}")))?;
            letters.push(if inv { -g } else { g });
        } else if let Some(rest) = tok.strip_prefix('S') {
            let g: i32 = rest.parse().map_err(|_| Error::Syntax(format!("bad generator {tok:?}")))?;
            letters.push(-g);
        } else {
            let g: i32 = tok.parse().map_err(|_| Error::Syntax(format!("bad token {tok:?}")))?;
            letters.push(g);
        }
    }
    if letters.contains(&0) {
        return Err(Error::Syntax("letter 0 is not a braid generator".into()));
    }
    let strands = strands.unwrap_or_else(|| letters.iter().map(|g| g.unsigned_abs() as usize).max().unwrap_or(0) + 1);
    BraidWord::new(strands, letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_notations() {
        assert_eq!(parse_braid("1 1 1 @2").unwrap(), BraidWord { strands: 2, letters: vec![1, 1, 1] });
        assert_eq!(parse_braid("1 -2 1 -2 @3").unwrap(), BraidWord { strands: 3, letters: vec![1, -2, 1, -2] });
        assert_eq!(parse_braid("s1 s1 s1").unwrap(), BraidWord { strands: 2, letters: vec![1, 1, 1] });
        assert_eq!(parse_braid("s1 s2^-1 s1 S2").unwrap().letters, vec![1, -2, 1, -2]);
        assert_eq!(parse_braid("[1, -2, 1, -2]").unwrap().strands, 3);
        assert_eq!(parse_braid("@1").unwrap(), BraidWord { strands: 1, letters: vec![] });
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_braid("1 @3"), Err(Error::NotAKnot(_))));
        assert!(matches!(parse_braid("1 x 2"), Err(Error::Syntax(_))));
        assert!(matches!(parse_braid("3 @3"), Err(Error::Syntax(_))));
        assert!(matches!(parse_braid("0 @2"), Err(Error::Syntax(_))));
        assert!(matches!(parse_braid("@2"), Err(Error::NotAKnot(_))));
    }

    #[test]
    fn traversal_visits_each_crossing_twice() {
        let b = parse_braid("1 -2 1 -2 @3").unwrap();
        let t = b.traversal();
        assert_eq!(t.len(), 8);
        for k in 0..4 {
            let v: Vec<_> = t.iter().filter(|p| p.crossing == k).collect();
            assert_eq!(v.len(), 2);
            assert_ne!(v[0].over, v[1].over);
        }
    }
}
