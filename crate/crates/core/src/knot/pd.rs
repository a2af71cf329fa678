use std::collections::BTreeMap;

use super::wirtinger::{Passage, WirtingerPresentation};
use crate::error::{Error, Result};

/// Planar diagram code: one `(a, b, c, d)` per crossing, labels read
/// counterclockwise starting from the incoming under-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdCode {
    pub crossings: Vec<[i64; 4]>,
}

type Slot = (usize, usize);

/// Parse `X(1,4,2,5),X(3,6,4,1),...`, `PD[X[1,4,2,5], ...]` or one
/// whitespace/comma separated 4-tuple per line.
pub fn parse_pd_code(text: &str) -> Result<PdCode> {
    let tuples = if text.contains(['X', 'x']) { parse_x_tuples(text)? } else { parse_bare_tuples(text)? };
    if tuples.is_empty() {
        return Err(Error::Syntax("no crossings found".into()));
    }
    Ok(PdCode { crossings: tuples })
}

fn parse_ints(body: &str) -> Result<Vec<i64>> {
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| Error::Syntax(format!("bad label {s:?}"))))
        .collect()
}

fn to_tuple(v: Vec<i64>) -> Result<[i64; 4]> {
    <[i64; 4]>::try_from(v).map_err(|v| Error::Syntax(format!("crossing needs 4 labels, got {}", v.len())))
}

fn parse_x_tuples(text: &str) -> Result<Vec<[i64; 4]>> {
    let mut out = Vec::new();
    let mut rest = text;
    while let Some(pos) = rest.find(['X', 'x']) {
        let after = rest[pos + 1..].trim_start();
        let close = match after.chars().next() {
            Some('(') => ')',
            Some('[') => ']',
            _ => return Err(Error::Syntax("expected '(' or '[' after X".into())),
        };
        let end = after.find(close).ok_or_else(|| Error::Syntax("unterminated crossing".into()))?;
        out.push(to_tuple(parse_ints(&after[1..end])?)?);
        rest = &after[end + 1..];
    }
    let leftover: String = rest.chars().filter(|c| !matches!(c, ',' | ']' | ')' | ' ' | '\n' | '\t' | '\r')).collect();
    if !leftover.is_empty() {
        return Err(Error::Syntax(format!("trailing input {leftover:?}")));
    }
    Ok(out)
}

fn parse_bare_tuples(text: &str) -> Result<Vec<[i64; 4]>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| to_tuple(parse_ints(l)?))
        .collect()
}

impl PdCode {
    fn label_slots(&self) -> Result<BTreeMap<i64, Vec<Slot>>> {
        let mut slots: BTreeMap<i64, Vec<Slot>> = BTreeMap::new();
        for (ci, x) in self.crossings.iter().enumerate() {
            for (pos, &label) in x.iter().enumerate() {
                slots.entry(label).or_default().push((ci, pos));
            }
        }
        if let Some((label, s)) = slots.iter().find(|(_, s)| s.len() != 2) {
            return Err(Error::InconsistentDiagram(format!("edge {label} appears {} times", s.len())));
        }
        Ok(slots)
    }

    /// Number of closed components of the diagram.
    pub fn components(&self) -> Result<usize> {
        let slots = self.label_slots()?;
        let labels: Vec<i64> = slots.keys().copied().collect();
        let index: BTreeMap<i64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for x in &self.crossings {
            for (a, b) in [(x[0], x[2]), (x[1], x[3])] {
                let (ra, rb) = (find(&mut parent, index[&a]), find(&mut parent, index[&b]));
                parent[ra] = rb;
            }
        }
        Ok((0..labels.len()).filter(|&i| find(&mut parent, i) == i).count())
    }

    /// Walk the knot starting on the smallest edge label, oriented so that
    /// every under-strand runs from slot 0 to slot 2. Over-strands running
    /// from slot 3 to slot 1 are positive crossings (the KnotTheory
    /// convention for consecutively labelled edges).
    pub fn traversal(&self) -> Result<Vec<Passage>> {
        let slots = self.label_slots()?;
        let comps = self.components()?;
        if comps != 1 {
            return Err(Error::NotAKnot(format!("diagram has {comps} components")));
        }
        let (&start, start_slots) = slots.iter().next().expect("nonempty diagram");
        let label_at = |(c, p): Slot| self.crossings[c][p];
        let other_end = |label: i64, here: Slot| -> Slot {
            let s = &slots[&label];
            if s[0] == here {
                s[1]
            } else {
                s[0]
            }
        };

        'dir: for (from, to) in [(start_slots[0], start_slots[1]), (start_slots[1], start_slots[0])] {
            let mut passages = Vec::with_capacity(2 * self.crossings.len());
            let mut head = to;
            loop {
                let (c, pos) = head;
                let exit = (c, (pos + 2) % 4);
                let passage = match pos {
                    0 => Passage { crossing: c, over: false, sign: 0 },
                    2 => continue 'dir,
                    1 | 3 => Passage { crossing: c, over: true, sign: if pos == 3 { 1 } else { -1 } },
                    _ => unreachable!(),
                };
                passages.push(passage);
                let label = label_at(exit);
                let tail = exit;
                head = other_end(label, exit);
                if label == start && tail == from {
                    break;
                }
                if passages.len() > 2 * self.crossings.len() {
                    return Err(Error::InconsistentDiagram("traversal does not close up".into()));
                }
            }
            let mut signs = vec![0i8; self.crossings.len()];
            for p in passages.iter().filter(|p| p.over) {
                signs[p.crossing] = p.sign;
            }
            for p in passages.iter_mut().filter(|p| !p.over) {
                p.sign = signs[p.crossing];
            }
            return Ok(passages);
        }
        Err(Error::InconsistentDiagram("under-strands cannot be oriented consistently".into()))
    }

    pub fn to_wirtinger(&self) -> Result<WirtingerPresentation> {
        let passages = self.traversal()?;
        WirtingerPresentation::from_traversal(self.crossings.len(), &passages)
    }
}

impl std::fmt::Display for PdCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, [a, b, c, d]) in self.crossings.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "X({a},{b},{c},{d})")?;
        }
        Ok(())
    }
}

/// Parse a PD code and build its Wirtinger presentation.
pub fn parse_pd(text: &str) -> Result<WirtingerPresentation> {
    parse_pd_code(text)?.to_wirtinger()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)";

    #[test]
    fn parses_both_notations() {
        let a = parse_pd_code(TREFOIL).unwrap();
        let b = parse_pd_code("PD[X[1, 4, 2, 5], X[3, 6, 4, 1], X[5, 2, 6, 3]]").unwrap();
        let c = parse_pd_code("1 4 2 5\n3 6 4 1\n5 2 6 3\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn trefoil_presentation() {
        let w = parse_pd(TREFOIL).unwrap();
        assert_eq!(w.generator_count, 3);
        assert_eq!(w.relators.len(), 3);
        assert_eq!(w.writhe.abs(), 3);
    }

    #[test]
    fn errors() {
        let r = parse_pd("X(1,4,2,5),X(3,6,4,1),X(5,2,6,7)");
        assert!(matches!(r, Err(Error::InconsistentDiagram(_))), "{r:?}");
        // Hopf link
        let r = parse_pd("X(4,1,3,2),X(2,3,1,4)");
        assert!(matches!(r, Err(Error::NotAKnot(_))), "{r:?}");
        assert!(matches!(parse_pd("X(1,2,3)"), Err(Error::Syntax(_))));
        assert!(matches!(parse_pd(""), Err(Error::Syntax(_))));
    }
}
