//! Disk homology classes and the integer lattices searched by the obstructions:
//! sum-of-squares partitions, odd characteristic vectors, and the minimal
//! reducible energy data (κ_min, Φ_min, η).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::{Integer, Roots};
use num_rational::Rational64;
use serde::{Deserialize, Serialize, Serializer};

/// A disk homology class `(a₁ ≥ … ≥ aₙ ≥ 1)`.
///
/// Permutations and sign flips of coordinates are symmetries of every
/// obstruction, and zero coordinates never contribute, so a class is stored
/// with absolute values, zeros dropped, sorted descending. The empty class is
/// the null-homologous disk.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
#[serde(try_from = "String")]
pub struct HomologyClass(Vec<i64>);

impl HomologyClass {
    pub fn empty() -> Self {
        HomologyClass(Vec::new())
    }

    /// Normalizes arbitrary signed coordinates. The flag is true when the
    /// normalized class differs from the input as written.
    pub fn normalize(coords: &[i64]) -> (Self, bool) {
        let mut a: Vec<i64> = coords.iter().map(|x| x.abs()).filter(|&x| x != 0).collect();
        a.sort_unstable_by(|x, y| y.cmp(x));
        let changed = a.as_slice() != coords;
        (HomologyClass(a), changed)
    }

    pub fn from_coords(coords: &[i64]) -> Self {
        Self::normalize(coords).0
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `k = Σ aᵢ²`.
    pub fn norm(&self) -> i64 {
        norm(&self.0)
    }

    /// `Σ |aᵢ|`.
    pub fn abs_sum(&self) -> i64 {
        self.0.iter().map(|a| a.abs()).sum()
    }

    /// Parses `a1,a2,...`, optionally wrapped in parentheses, and normalizes.
    pub fn parse(text: &str) -> Result<(Self, bool), ClassParseError> {
        let mut body = text.trim();
        if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            body = inner.trim();
        }
        if body.is_empty() {
            return Ok((Self::empty(), !text.trim().is_empty() && text.trim() != "()"));
        }
        let coords = body
            .split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<i64>().map_err(|_| ClassParseError {
                    input: text.to_string(),
                    token: part.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coords.iter().any(|c| c.checked_mul(*c).is_none()) {
            return Err(ClassParseError { input: text.to_string(), token: "coordinate too large".into() });
        }
        if coords.iter().try_fold(0i64, |acc, c| acc.checked_add(c * c)).is_none() {
            return Err(ClassParseError { input: text.to_string(), token: "norm overflows".into() });
        }
        Ok(Self::normalize(&coords))
    }
}

pub(crate) fn norm(coords: &[i64]) -> i64 {
    coords.iter().map(|a| a * a).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed class '{input}': bad coordinate '{token}'")]
pub struct ClassParseError {
    pub input: String,
    pub token: String,
}

impl FromStr for HomologyClass {
    type Err = ClassParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s).map(|(c, _)| c)
    }
}

impl TryFrom<String> for HomologyClass {
    type Error = ClassParseError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for HomologyClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All classes of norm `k`, each once, in lexicographically descending order.
pub fn enumerate_classes(k: u64) -> Vec<HomologyClass> {
    fn rec(rem: u64, max_part: u64, cur: &mut Vec<i64>, out: &mut Vec<HomologyClass>) {
        if rem == 0 {
            out.push(HomologyClass(cur.clone()));
            return;
        }
        let top = max_part.min(rem.sqrt());
        for a in (1..=top).rev() {
            cur.push(a as i64);
            rec(rem - a * a, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k.sqrt(), &mut Vec::new(), &mut out);
    out
}

/// A vector of odd integers paired with a homology class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OddVector(pub Vec<i64>);

impl fmt::Display for OddVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        HomologyClass(self.0.clone()).fmt(f)
    }
}

/// Largest odd `λ` with `λ² − 1 ≤ budget`.
pub(crate) fn max_odd_for_budget(budget: i64) -> i64 {
    let mut l = ((budget.max(0) + 1) as u64).sqrt() as i64;
    if l.is_even() {
        l -= 1;
    }
    l.max(1)
}

/// Odd candidates `1, −1, 3, −3, …, ±max_abs`, cheapest first.
pub(crate) fn odd_candidates(max_abs: i64) -> Vec<i64> {
    (0..)
        .map(|i| 2 * i + 1)
        .take_while(|&l| l <= max_abs)
        .flat_map(|l| [l, -l])
        .collect()
}

/// Streams every odd vector `λ` with `0 ≤ Σλᵢaᵢ ≤ k` and `Σ(λᵢ² − 1) ≤ 8·v0`.
///
/// This is the search domain of the V_s obstruction: a violating `λ` has
/// `Σλᵢ² − n < 8·V_j ≤ 8·V_0`, and every orbit of the general inequality under
/// `λ ↦ −λ`, `λ ↦ λ + 2a` meets `0 ≤ Σλa ≤ k`.
pub fn enumerate_odd_vectors(coords: &[i64], v0: u64) -> OddVectorIter {
    let budget = 8 * v0 as i64;
    OddVectorIter {
        coords: coords.to_vec(),
        k: norm(coords),
        budget,
        candidates: odd_candidates(max_odd_for_budget(budget)),
        stack: Vec::new(),
        started: false,
        done: false,
    }
}

/// Depth-first odometer over the candidate lists with cost pruning.
pub struct OddVectorIter {
    coords: Vec<i64>,
    k: i64,
    budget: i64,
    candidates: Vec<i64>,
    // (candidate index, cost so far including this slot, Σλa so far)
    stack: Vec<(usize, i64, i64)>,
    started: bool,
    done: bool,
}

impl OddVectorIter {
    fn cost_of(&self, idx: usize) -> i64 {
        let l = self.candidates[idx];
        l * l - 1
    }

    /// Tries to place candidate `idx` or a later one at the current depth.
    fn place_from(&mut self, mut idx: usize) -> bool {
        let depth = self.stack.len();
        let (prev_cost, prev_sum) = self.stack.last().map(|&(_, c, s)| (c, s)).unwrap_or((0, 0));
        while idx < self.candidates.len() {
            let cost = prev_cost + self.cost_of(idx);
            if cost <= self.budget {
                let sum = prev_sum + self.candidates[idx] * self.coords[depth];
                self.stack.push((idx, cost, sum));
                return true;
            }
            idx += 1;
        }
        false
    }

    /// Advances to the next full-length assignment, ignoring the Σλa window.
    fn advance(&mut self) -> bool {
        let n = self.coords.len();
        if !self.started {
            self.started = true;
            if n == 0 {
                return true;
            }
            if !self.place_from(0) {
                return false;
            }
        } else {
            // backtrack
            loop {
                let Some((idx, _, _)) = self.stack.pop() else { return false };
                if self.place_from(idx + 1) {
                    break;
                }
            }
        }
        while self.stack.len() < n {
            if !self.place_from(0) {
                // cannot extend; backtrack from the last placed slot
                loop {
                    let Some((idx, _, _)) = self.stack.pop() else { return false };
                    if self.place_from(idx + 1) {
                        break;
                    }
                }
            }
        }
        true
    }
}

impl Iterator for OddVectorIter {
    type Item = OddVector;

    fn next(&mut self) -> Option<OddVector> {
        if self.done {
            return None;
        }
        loop {
            if !self.advance() {
                self.done = true;
                return None;
            }
            if self.coords.is_empty() {
                self.done = true;
                return Some(OddVector(Vec::new()));
            }
            let sum = self.stack.last().map(|&(_, _, s)| s).unwrap_or(0);
            if (0..=self.k).contains(&sum) {
                let lambda = self.stack.iter().map(|&(i, _, _)| self.candidates[i]).collect();
                return Some(OddVector(lambda));
            }
        }
    }
}

/// Integers `z` minimizing `(z + a/4 − c/2)²`, with that minimum times 16.
fn minimal_reducibles_1d(a: i64, c: i64) -> (i64, Vec<i64>) {
    // (z + a/4 − c/2)² = (4z + r)² / 16 with r = a − 2c
    let r = a - 2 * c;
    let z0 = (-r).div_euclid(4);
    let d0 = (4 * z0 + r).abs();
    let d1 = (4 * (z0 + 1) + r).abs();
    match d0.cmp(&d1) {
        std::cmp::Ordering::Less => (d0 * d0, vec![z0]),
        std::cmp::Ordering::Greater => (d1 * d1, vec![z0 + 1]),
        std::cmp::Ordering::Equal => (d0 * d0, vec![z0, z0 + 1]),
    }
}

/// Minimal topological energy `κ_min` alone, without listing `Φ_min`.
pub fn kappa_min_value(a: &[i64], c: &[i64]) -> Rational64 {
    assert_eq!(a.len(), c.len(), "class and cohomology vector lengths differ");
    let sixteenths: i64 = a.iter().zip(c).map(|(&ai, &ci)| minimal_reducibles_1d(ai, ci).0).sum();
    Rational64::new(sixteenths, 16)
}

/// `κ_min = min_z Σ(zᵢ + aᵢ/4 − cᵢ/2)²` and the full argmin set `Φ_min`.
///
/// The form is separable, so `Φ_min` is the product of the per-coordinate
/// argmin sets, listed in lexicographic order.
pub fn kappa_min(a: &[i64], c: &[i64]) -> (Rational64, Vec<Vec<i64>>) {
    assert_eq!(a.len(), c.len(), "class and cohomology vector lengths differ");
    let mut total = 0;
    let mut phi: Vec<Vec<i64>> = vec![Vec::new()];
    for (&ai, &ci) in a.iter().zip(c) {
        let (e, zs) = minimal_reducibles_1d(ai, ci);
        total += e;
        phi = phi
            .into_iter()
            .flat_map(|prefix| {
                zs.iter().map(move |&z| {
                    let mut v = prefix.clone();
                    v.push(z);
                    v
                })
            })
            .collect();
    }
    (Rational64::new(total, 16), phi)
}

/// Laurent polynomial in `T` with integer coefficients; zero terms are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly(BTreeMap<i64, i64>);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, exp);
        p
    }

    pub fn add_term(&mut self, coeff: i64, exp: i64) {
        let entry = self.0.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.0.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.0.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &other.0 {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.0.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "T")?,
                (1, m) => write!(f, "{m}T")?,
                (e, 1) => write!(f, "T^{e}")?,
                (e, m) => write!(f, "{m}T^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Signed count of minimal reducibles
/// `η = Σ_{z ∈ Φ_min} (−1)^{μ(z)} T^{ν(z)}`, `μ(z) = −Σzᵢ²`, `ν(z) = Σaᵢ(cᵢ − 2zᵢ)`,
/// summed directly over `Φ_min`.
pub fn eta(a: &[i64], c: &[i64]) -> LaurentPoly {
    let (_, phi) = kappa_min(a, c);
    let mut out = LaurentPoly::zero();
    for z in phi {
        let mu: i64 = -z.iter().map(|zi| zi * zi).sum::<i64>();
        let nu: i64 = a.iter().zip(c).zip(&z).map(|((ai, ci), zi)| ai * (ci - 2 * zi)).sum();
        out.add_term(if mu.is_even() { 1 } else { -1 }, nu);
    }
    out
}

/// `η` as a product of per-coordinate factors; avoids listing `Φ_min`,
/// which has up to `2ⁿ` elements.
pub fn eta_factored(a: &[i64], c: &[i64]) -> LaurentPoly {
    assert_eq!(a.len(), c.len(), "class and cohomology vector lengths differ");
    let mut out = LaurentPoly::one();
    for (&ai, &ci) in a.iter().zip(c) {
        let (_, zs) = minimal_reducibles_1d(ai, ci);
        let mut factor = LaurentPoly::zero();
        for z in zs {
            factor.add_term(if (z * z).is_even() { 1 } else { -1 }, ai * (ci - 2 * z));
        }
        out = out.mul(&factor);
        if out.is_zero() {
            break;
        }
    }
    out
}
