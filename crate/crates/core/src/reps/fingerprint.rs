use serde::Serialize;

use super::metabelian::MetabelianRep;
use super::monomial::MonomialMatrix;
use crate::arith::lcm;
use crate::poly::cyclotomic_int;
use num_traits::ToPrimitive;

/// Element of `Z[zeta_N]` in the power basis `1, zeta, ..., zeta^(phi(N)-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CyclotomicInteger {
    #[serde(rename = "N")]
    pub root_order: u64,
    pub coeffs: Vec<i64>,
}

impl CyclotomicInteger {
    /// `sum_k zeta_N^(terms[k])`, reduced modulo `Phi_N`.
    pub fn from_terms(root_order: u64, terms: &[u64]) -> Self {
        Self::from_terms_with(root_order, terms, &phi(root_order))
    }

    fn from_terms_with(root_order: u64, terms: &[u64], phi: &[i64]) -> Self {
        let mut dense = vec![0i64; root_order as usize];
        for &e in terms {
            dense[(e % root_order) as usize] += 1;
        }
        Self::reduce_with(root_order, dense, phi)
    }

    fn reduce(root_order: u64, dense: Vec<i64>) -> Self {
        Self::reduce_with(root_order, dense, &phi(root_order))
    }

    fn reduce_with(root_order: u64, mut dense: Vec<i64>, phi: &[i64]) -> Self {
        let deg = phi.len() - 1;
        for i in (deg..dense.len()).rev() {
            let q = dense[i];
            if q == 0 {
                continue;
            }
            for (j, c) in phi.iter().enumerate() {
                dense[i - deg + j] -= q * c;
            }
        }
        dense.truncate(deg);
        while dense.last() == Some(&0) {
            dense.pop();
        }
        CyclotomicInteger { root_order, coeffs: dense }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The rational integer `k`, if this element is one.
    pub fn as_integer(&self) -> Option<i64> {
        match self.coeffs.as_slice() {
            [] => Some(0),
            [k] => Some(*k),
            _ => None,
        }
    }

    /// The same element expressed over `zeta_M`, `N | M`.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m % self.root_order == 0);
        let f = (m / self.root_order) as usize;
        let mut dense = vec![0i64; m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[(i * f) % m as usize] += c;
        }
        Self::reduce(m, dense)
    }

    /// Equality as complex numbers.
    pub fn same_value(&self, other: &Self) -> bool {
        if self.root_order == other.root_order {
            return self == other;
        }
        let m = lcm(self.root_order, other.root_order);
        self.lift(m) == other.lift(m)
    }
}

fn phi(root_order: u64) -> Vec<i64> {
    cyclotomic_int(root_order).iter().map(|c| c.to_i64().expect("small")).collect()
}

/// Trace of a monomial matrix as an exact cyclotomic integer.
pub fn trace(m: &MonomialMatrix) -> CyclotomicInteger {
    CyclotomicInteger::from_terms(m.root_order, &m.trace_terms())
}

/// Traces of `alpha(w)` for every word `w` of length `1..=max_len` over the
/// generators and their inverses, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceFingerprint {
    pub max_len: usize,
    pub traces: Vec<CyclotomicInteger>,
}

impl TraceFingerprint {
    /// Equal traces on every word.
    pub fn matches(&self, other: &Self) -> bool {
        self.max_len == other.max_len
            && self.traces.len() == other.traces.len()
            && self.traces.iter().zip(&other.traces).all(|(a, b)| a.same_value(b))
    }
}

pub const DEFAULT_WORD_LENGTH: usize = 3;

pub fn trace_fingerprint(r: &MetabelianRep, max_len: usize) -> TraceFingerprint {
    assert!(max_len >= 1);
    let letters: Vec<MonomialMatrix> = r.images.iter().flat_map(|m| [m.clone(), m.inverse()]).collect();
    let phi = phi(r.root_order);
    let mut traces = Vec::new();
    let mut layer = vec![MonomialMatrix::identity(r.n as usize, r.root_order)];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for prefix in &layer {
            for m in &letters {
                let p = prefix.mul(m).expect("same shape");
                traces.push(CyclotomicInteger::from_terms_with(r.root_order, &p.trace_terms(), &phi));
                next.push(p);
            }
        }
        layer = next;
    }
    TraceFingerprint { max_len, traces }
}
