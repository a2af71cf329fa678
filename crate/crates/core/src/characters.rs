//! Characters of `H_1(L_n)`, their orders, `t`-orbits and the counts of
//! conjugacy classes of irreducible metabelian representations.
//!
//! A character is stored on the torsion subgroup: exponent `e_k` on the
//! invariant factor `d_k` means the `k`-th canonical generator goes to
//! `exp(2 pi i e_k / d_k)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::{divisors, lcm, mobius, prime_divisors};
use crate::error::{Error, Result};
use crate::fox::{lambda1, AlexanderModulePresentation};
use crate::homology::{CoverHomology, Tower};
use crate::poly::{cyclotomic_root_profile, LaurentPoly, QPoly};

/// Largest torsion subgroup we are willing to enumerate.
pub const ENUMERATION_LIMIT: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Character {
    pub n: u32,
    /// `e_k` with `0 <= e_k < d_k`.
    pub exponents: Vec<u64>,
    /// The invariant factors `d_k`.
    pub moduli: Vec<u64>,
    /// Values `exp(2 pi i (a + b i))` on the free generators, given as
    /// `[a, b]`; only for numeric samples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free_exponents: Option<Vec<[f64; 2]>>,
}

impl Character {
    pub fn trivial(c: &CoverHomology) -> Result<Self> {
        let moduli = torsion_moduli(c)?;
        Ok(Character { n: c.n, exponents: vec![0; moduli.len()], moduli, free_exponents: None })
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// `lcm(d_k)`: every value is a power of `exp(2 pi i / root_order)`.
    pub fn root_order(&self) -> u64 {
        self.moduli.iter().copied().fold(1, lcm)
    }

    /// `chi(y)` as an exponent modulo [`Self::root_order`], ignoring free
    /// coordinates of `y`.
    pub fn eval(&self, y: &[BigInt]) -> u64 {
        let big_n = self.root_order();
        let mut acc: u128 = 0;
        for ((e, d), yk) in self.exponents.iter().zip(&self.moduli).zip(y) {
            if *e == 0 {
                continue;
            }
            let yk = yk.mod_floor(&BigInt::from(*d)).to_u64().expect("reduced coordinate fits");
            let w = (big_n / d) as u128;
            acc = (acc + (*e as u128) * (yk as u128) % (*d as u128) * w) % big_n as u128;
        }
        acc as u64
    }

    /// `chi(y)` as a reduced fraction `p/q` of a full turn.
    pub fn eval_fraction(&self, y: &[BigInt]) -> (u64, u64) {
        let big_n = self.root_order();
        let e = self.eval(y);
        let g = big_n.gcd(&e);
        (e / g, big_n / g)
    }

    /// Order of the character as an element of the dual group.
    pub fn multiplicative_order(&self) -> u64 {
        self.exponents.iter().zip(&self.moduli).map(|(e, d)| d / d.gcd(e)).fold(1, lcm)
    }
}

/// Torsion invariant factors as machine integers.
pub fn torsion_moduli(c: &CoverHomology) -> Result<Vec<u64>> {
    c.torsion()
        .iter()
        .map(|d| d.to_u64().ok_or_else(|| Error::TooLarge(format!("invariant factor {d} of H_1(L_{})", c.n))))
        .collect()
}

/// Iterator over all torsion characters in lexicographic order.
#[derive(Clone, Debug)]
pub struct CharacterIter {
    n: u32,
    moduli: Vec<u64>,
    next: Option<Vec<u64>>,
    /// The group has a free part, so only torsion characters are covered.
    pub partial: bool,
}

impl Iterator for CharacterIter {
    type Item = Character;
    fn next(&mut self) -> Option<Character> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut k = succ.len();
        self.next = loop {
            if k == 0 {
                break None;
            }
            k -= 1;
            succ[k] += 1;
            if succ[k] < self.moduli[k] {
                break Some(succ);
            }
            succ[k] = 0;
        };
        Some(Character { n: self.n, exponents: cur, moduli: self.moduli.clone(), free_exponents: None })
    }
}

/// All `|Tor H_1(L_n)|` torsion characters, lexicographically.
pub fn enumerate_characters(c: &CoverHomology) -> Result<CharacterIter> {
    let moduli = torsion_moduli(c)?;
    let total = moduli.iter().try_fold(1u64, |acc, d| acc.checked_mul(*d));
    match total {
        Some(t) if t <= ENUMERATION_LIMIT => {}
        _ => return Err(Error::TooLarge(format!("torsion of H_1(L_{}) exceeds {ENUMERATION_LIMIT}", c.n))),
    }
    Ok(CharacterIter { n: c.n, next: Some(vec![0; moduli.len()]), moduli, partial: c.free_rank() > 0 })
}

/// Precomputed `t`-action on torsion characters.
struct TorsionDual {
    moduli: Vec<u64>,
    big_n: u64,
    /// `rows[k][l] = M[k][l] mod d_l` for torsion `k, l`.
    rows: Vec<Vec<u64>>,
}

impl TorsionDual {
    fn new(c: &CoverHomology) -> Result<Self> {
        let moduli = torsion_moduli(c)?;
        let big_n = moduli.iter().copied().fold(1, lcm);
        let m = &c.t_action.matrix;
        let rows = (0..moduli.len())
            .map(|k| {
                (0..moduli.len())
                    .map(|l| m[(k, l)].mod_floor(&BigInt::from(moduli[l])).to_u64().expect("reduced"))
                    .collect()
            })
            .collect();
        Ok(TorsionDual { moduli, big_n, rows })
    }

    /// `(t chi)_k = chi(t f_k)` in units of `1/d_k`.
    fn act(&self, e: &[u64]) -> Vec<u64> {
        let n = self.big_n as u128;
        self.rows
            .iter()
            .zip(&self.moduli)
            .map(|(row, dk)| {
                let mut acc: u128 = 0;
                for ((el, ml), dl) in e.iter().zip(row).zip(&self.moduli) {
                    acc = (acc + (*el as u128) * (*ml as u128) % (*dl as u128) * (self.big_n / dl) as u128) % n;
                }
                let unit = (self.big_n / dk) as u128;
                assert!(acc % unit == 0, "t does not preserve the torsion subgroup");
                (acc / unit) as u64
            })
            .collect()
    }
}

/// `t chi`, defined by `(t chi)(h) = chi(t h)`.
pub fn t_act(chi: &Character, c: &CoverHomology) -> Result<Character> {
    let dual = TorsionDual::new(c)?;
    Ok(Character { exponents: dual.act(&chi.exponents), ..chi.clone() })
}

/// The `t`-orbit of `chi`, starting with `chi`.
pub fn t_orbit(chi: &Character, c: &CoverHomology) -> Result<Vec<Character>> {
    let dual = TorsionDual::new(c)?;
    let mut orbit = vec![chi.clone()];
    let mut cur = dual.act(&chi.exponents);
    while cur != chi.exponents {
        orbit.push(Character { exponents: cur.clone(), ..chi.clone() });
        cur = dual.act(&cur);
        assert!(orbit.len() <= chi.n as usize, "t^n does not fix a character");
    }
    Ok(orbit)
}

/// Lexicographically least exponent tuple in the `t`-orbit.
pub fn orbit_representative(chi: &Character, c: &CoverHomology) -> Result<Vec<u64>> {
    Ok(t_orbit(chi, c)?.into_iter().map(|x| x.exponents).min().expect("orbit is nonempty"))
}

fn kills(chi_exps: &[u64], moduli: &[u64], big_n: u64, kernel: &[Vec<BigInt>]) -> bool {
    kernel.iter().all(|y| {
        let mut acc: u128 = 0;
        for ((e, d), yk) in chi_exps.iter().zip(moduli).zip(y) {
            if *e == 0 || yk.is_zero() {
                continue;
            }
            let yk = yk.mod_floor(&BigInt::from(*d)).to_u64().expect("reduced coordinate fits") as u128;
            acc = (acc + (*e as u128) * yk % (*d as u128) * (big_n / d) as u128) % big_n as u128;
        }
        acc == 0
    })
}

/// Whether the torsion character `chi` on `H_1(L_n)` factors through
/// `Tor H_1(L_n) -> H_1(L_l)`.
pub fn factors_through(chi: &Character, tower: &Tower, l: u32) -> bool {
    let kernel = tower.torsion_kernel(chi.n, l);
    kills(&chi.exponents, &chi.moduli, chi.root_order(), &kernel)
}

/// The least `l | n` such that `chi` factors through `H_1(L_l)`.
pub fn character_order(chi: &Character, tower: &Tower) -> u32 {
    divisors(chi.n as u64)
        .into_iter()
        .map(|l| l as u32)
        .find(|&l| factors_through(chi, tower, l))
        .expect("every character factors through its own cover")
}

/// Per-`n` verdict on the irreducible metabelian `SL(n, C)` representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Finitely many conjugacy classes (possibly zero).
    Finite(u64),
    /// `H_1(L_n)` is infinite and no class exists.
    Empty,
    /// `H_1(L_n)` is infinite and the classes form positive-dimensional families.
    PositiveDimensional,
    /// Could not be decided (enumeration too large).
    InfiniteUnknown,
}

impl Verdict {
    pub fn count(&self) -> Option<u64> {
        match self {
            Verdict::Finite(k) => Some(*k),
            _ => None,
        }
    }

    /// No irreducible representation exists.
    pub fn is_none(&self) -> bool {
        matches!(self, Verdict::Finite(0) | Verdict::Empty)
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::Finite(k) => s.serialize_u64(*k),
            Verdict::Empty => s.serialize_str("EMPTY"),
            Verdict::PositiveDimensional => s.serialize_str("POSITIVE_DIMENSIONAL"),
            Verdict::InfiniteUnknown => s.serialize_str("INFINITE_UNKNOWN"),
        }
    }
}

/// Statistics gathered while counting order-`n` characters directly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectCount {
    pub n: u32,
    pub characters: u64,
    pub order_n: u64,
    pub orbits: u64,
}

/// Enumerate all characters, keep those of order `n`, and count their
/// `t`-orbits. Each orbit must have exactly `n` elements.
pub fn count_direct_detailed(tower: &Tower, n: u32) -> Result<DirectCount> {
    let c = tower.get(n);
    if c.free_rank() > 0 {
        return Err(Error::InfiniteHomology(n));
    }
    let dual = TorsionDual::new(&c)?;
    let kernels: Vec<_> = prime_divisors(n as u64).into_iter().map(|p| tower.torsion_kernel(n, n / p as u32)).collect();
    let is_order_n = |e: &[u64]| kernels.iter().all(|k| !kills(e, &dual.moduli, dual.big_n, k));

    let (mut characters, mut order_n, mut orbits) = (0u64, 0u64, 0u64);
    for chi in enumerate_characters(&c)? {
        characters += 1;
        if !is_order_n(&chi.exponents) {
            continue;
        }
        order_n += 1;
        let mut cur = dual.act(&chi.exponents);
        let mut size = 1u32;
        let mut least = true;
        while cur != chi.exponents {
            if !is_order_n(&cur) {
                return Err(Error::DivisibilityViolation { n, count: order_n });
            }
            least &= chi.exponents < cur;
            cur = dual.act(&cur);
            size += 1;
            if size > n {
                break;
            }
        }
        if size != n {
            return Err(Error::DivisibilityViolation { n, count: order_n });
        }
        if least {
            orbits += 1;
        }
    }
    if order_n % n as u64 != 0 || orbits * n as u64 != order_n {
        return Err(Error::DivisibilityViolation { n, count: order_n });
    }
    Ok(DirectCount { n, characters, order_n, orbits })
}

/// Number of conjugacy classes by direct enumeration; infinite covers are
/// delegated to [`infinite_case`].
pub fn count_direct(tower: &Tower, n: u32) -> Result<Verdict> {
    if tower.get(n).free_rank() > 0 {
        return infinite_case(tower, n);
    }
    Ok(Verdict::Finite(count_direct_detailed(tower, n)?.orbits))
}

/// `(1/n) sum_{k | n} mu(k) |H_1(L_{n/k})|` from the orders of the covers.
pub fn count_mobius(n: u32, order_of: impl Fn(u32) -> Option<BigInt>) -> Result<u64> {
    let mut sum = BigInt::zero();
    for k in divisors(n as u64) {
        let mu = mobius(k);
        if mu == 0 {
            continue;
        }
        let d = (n as u64 / k) as u32;
        let o = order_of(d).ok_or(Error::InfiniteHomology(d))?;
        sum += o * mu;
    }
    let (q, r) = sum.div_rem(&BigInt::from(n));
    if !r.is_zero() {
        return Err(Error::DivisibilityViolation { n, count: sum.to_u64().unwrap_or(u64::MAX) });
    }
    q.to_u64().ok_or_else(|| Error::TooLarge(format!("class count {q}")))
}

pub fn count_mobius_tower(tower: &Tower, n: u32) -> Result<u64> {
    count_mobius(n, |d| tower.get(d).order())
}

/// Decide an infinite `H_1(L_n)`: the classes form positive-dimensional
/// families iff some character of `Tor H_1(L_n)` factors through no
/// `Tor H_1(L_l)` with `l | n`, `l < n` and `b_1(L_l) = b_1(L_n)`.
pub fn infinite_case(tower: &Tower, n: u32) -> Result<Verdict> {
    let c = tower.get(n);
    let b = c.free_rank();
    assert!(b > 0, "infinite_case needs an infinite cover");
    let tie: Vec<u32> = divisors(n as u64)
        .into_iter()
        .map(|l| l as u32)
        .filter(|&l| l < n && tower.get(l).free_rank() == b)
        .collect();
    if tie.is_empty() {
        return Ok(Verdict::PositiveDimensional);
    }
    let moduli = torsion_moduli(&c)?;
    let big_n = moduli.iter().copied().fold(1, lcm);
    let kernels: Vec<_> = tie.iter().map(|&l| tower.torsion_kernel(n, l)).collect();
    let chars = match enumerate_characters(&c) {
        Ok(it) => it,
        Err(Error::TooLarge(_)) => return Ok(Verdict::InfiniteUnknown),
        Err(e) => return Err(e),
    };
    for chi in chars {
        if kernels.iter().all(|k| !kills(&chi.exponents, &moduli, big_n, k)) {
            return Ok(Verdict::PositiveDimensional);
        }
    }
    Ok(Verdict::Empty)
}

fn serialize_opt_bool<S: Serializer>(v: &Option<bool>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_bool(*b),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: u32,
    pub direct: Verdict,
    /// `None` when some cover in the divisor tower is infinite.
    pub mobius: Option<u64>,
    /// `None` when there is no Moebius count to compare with.
    #[serde(serialize_with = "serialize_opt_bool")]
    pub agree: Option<bool>,
}

pub fn count_report(tower: &Tower, n: u32) -> Result<CountReport> {
    let direct = count_direct(tower, n)?;
    let mobius = match count_mobius_tower(tower, n) {
        Ok(k) => Some(k),
        Err(Error::InfiniteHomology(_)) => None,
        Err(e) => return Err(e),
    };
    let agree = mobius.map(|m| direct == Verdict::Finite(m));
    Ok(CountReport { n, direct, mobius, agree })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NVerdict {
    pub n: u32,
    pub verdict: Verdict,
    pub betti: usize,
    #[serde(serialize_with = "crate::homology::order_or_infinite")]
    pub order: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExistenceReport {
    /// Least `m` such that every root of unity that is a zero of the
    /// Alexander polynomial is an `m`-th root of unity.
    pub m: Option<u64>,
    /// Whether `lambda_1 | t^m - 1` over `Q[t]`.
    #[serde(serialize_with = "serialize_opt_bool")]
    pub lambda1_periodic: Option<bool>,
    pub all_roots_of_unity: bool,
    pub verdicts: Vec<NVerdict>,
    /// With `lambda_1 | t^m - 1`, no representation may exist for `n > m`;
    /// `None` when that hypothesis fails.
    #[serde(serialize_with = "serialize_opt_bool")]
    pub periodic_bound_holds: Option<bool>,
    pub notes: Vec<String>,
}

/// Verdicts for `2 <= n <= nmax` together with the global classification.
pub fn existence_report(tower: &Tower, delta: &LaurentPoly, nmax: u32) -> Result<ExistenceReport> {
    let profile = cyclotomic_root_profile(delta);
    let l1 = lambda1(tower.presentation());
    let lambda1_periodic = profile.m.map(|m| l1.divides(&QPoly::t_pow_minus_one(m as usize)));
    let mut verdicts = Vec::new();
    for n in 2..=nmax {
        let c = tower.get(n);
        let verdict = if c.free_rank() > 0 {
            infinite_case(tower, n)?
        } else {
            let direct = count_direct(tower, n)?;
            let mobius = count_mobius_tower(tower, n)?;
            if direct != Verdict::Finite(mobius) {
                return Err(Error::DivisibilityViolation { n, count: mobius });
            }
            direct
        };
        verdicts.push(NVerdict { n, verdict, betti: c.free_rank(), order: c.order() });
    }
    let periodic_bound_holds = match (lambda1_periodic, profile.m) {
        (Some(true), Some(m)) => Some(verdicts.iter().filter(|v| v.n as u64 > m).all(|v| v.verdict.is_none())),
        _ => None,
    };
    let mut notes = Vec::new();
    if !profile.all_roots_of_unity {
        notes.push(
            "not every zero of the Alexander polynomial is a root of unity: nonempty sets of irreducible \
             classes occur for infinitely many n coprime to m (general statement, not checked computationally)"
                .into(),
        );
    }
    if lambda1_periodic == Some(false) {
        notes.push(
            "lambda_1 does not divide t^m - 1: positive-dimensional families occur for infinitely many \
             multiples of m (general statement, not checked computationally)"
                .into(),
        );
    }
    Ok(ExistenceReport {
        m: profile.m,
        lambda1_periodic,
        all_roots_of_unity: profile.all_roots_of_unity,
        verdicts,
        periodic_bound_holds,
        notes,
    })
}

/// Convenience: a tower for a presentation.
pub fn tower_for(a: &AlexanderModulePresentation) -> Tower {
    Tower::new(a.clone())
}
