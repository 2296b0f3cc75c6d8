//! V_s sequences from three independent sources: the thin-knot formula, the
//! piecewise L-space staircase formula, and an explicit mod-2 homology
//! computation on truncated staircase complexes. Torsion coefficients of the
//! Alexander polynomial serve as the arbiter.

use std::fmt;

use serde::Serialize;

use crate::knot_model::{KnotRecord, VsSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StaircaseError {
    #[error("polynomial is not of L-space form: {0}")]
    NotLSpaceForm(String),
    #[error("invalid staircase: {0}")]
    Invalid(String),
    #[error("truncation window [{bottom}, {top}] too small for region {region}")]
    WindowTooSmall { region: String, bottom: i64, top: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VsError {
    #[error("V_s unavailable for '{0}': no V_s data")]
    VsUnavailable(String),
    #[error("V_s unavailable for '{0}': thin record without tau")]
    MissingTau(String),
    #[error("V_s unavailable for '{0}': L-space record without Alexander polynomial")]
    MissingAlexander(String),
    #[error("'{name}': {source}")]
    Staircase { name: String, source: StaircaseError },
    #[error("'{name}': piecewise formula gives V_{s} = {formula} but torsion coefficient is {torsion}")]
    OracleDisagreement { name: String, s: u64, formula: u64, torsion: i64 },
}

/// Non-increasing, eventually-zero sequence `V₀, V₁, …`; only the positive
/// prefix is stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct VsSequence(Vec<u64>);

impl VsSequence {
    pub fn zero() -> Self {
        VsSequence(Vec::new())
    }

    /// Keeps the prefix before the first zero.
    pub fn from_values(values: &[u64]) -> Self {
        VsSequence(values.iter().copied().take_while(|&v| v > 0).collect())
    }

    pub fn get(&self, s: u64) -> u64 {
        usize::try_from(s).ok().and_then(|i| self.0.get(i)).copied().unwrap_or(0)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `V₀ … V_{s_max}` including zeros.
    pub fn prefix(&self, s_max: u64) -> Vec<u64> {
        (0..=s_max).map(|s| self.get(s)).collect()
    }

    pub fn is_non_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Steps `V_s − V_{s+1} ∈ {0, 1}`, including the drop into the zero tail.
    pub fn has_unit_steps(&self) -> bool {
        let n = self.0.len() as u64;
        (0..n).all(|s| matches!(self.get(s) - self.get(s + 1), 0 | 1))
    }
}

impl fmt::Display for VsSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Staircase of an L-space knot with
/// `Δ(t) = (−1)^m + Σ (−1)^{m−i} (t^{nᵢ} + t^{−nᵢ})`, `0 < n₁ < … < n_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Staircase {
    n: Vec<u64>,
}

impl Staircase {
    pub fn new(n: Vec<u64>) -> Result<Self, StaircaseError> {
        if n.is_empty() {
            return Err(StaircaseError::Invalid("no positive exponents".into()));
        }
        if n[0] == 0 || n.windows(2).any(|w| w[0] >= w[1]) {
            return Err(StaircaseError::Invalid(format!(
                "exponents {n:?} are not strictly increasing positive integers"
            )));
        }
        Ok(Staircase { n })
    }

    pub fn n(&self) -> &[u64] {
        &self.n
    }

    pub fn m(&self) -> usize {
        self.n.len()
    }

    pub fn top(&self) -> u64 {
        *self.n.last().expect("non-empty")
    }

    /// `(n_m, …, n₁, 0, −n₁, …, −n_m)`.
    pub fn exponents(&self) -> Vec<i64> {
        let mut e: Vec<i64> = self.n.iter().rev().map(|&x| x as i64).collect();
        e.push(0);
        e.extend(self.n.iter().map(|&x| -(x as i64)));
        e
    }

    pub fn gaps(&self) -> Vec<u64> {
        self.exponents().windows(2).map(|w| (w[0] - w[1]) as u64).collect()
    }

    /// Alternating sum `n_m − n_{m−1} + … ± n₁`.
    pub fn width(&self) -> u64 {
        let mut acc: i64 = 0;
        for (i, &x) in self.n.iter().rev().enumerate() {
            if i % 2 == 0 {
                acc += x as i64;
            } else {
                acc -= x as i64;
            }
        }
        acc as u64
    }

    /// Symmetric coefficient list of `Δ`, exponents `−n_m … n_m`.
    pub fn alexander(&self) -> Vec<i64> {
        let g = self.top() as usize;
        let m = self.m();
        let mut coeffs = vec![0i64; 2 * g + 1];
        coeffs[g] = if m.is_multiple_of(2) { 1 } else { -1 };
        for (i, &ni) in self.n.iter().enumerate() {
            let sign = if (m - (i + 1)).is_multiple_of(2) { 1 } else { -1 };
            coeffs[g + ni as usize] = sign;
            coeffs[g - ni as usize] = sign;
        }
        coeffs
    }

    /// Generator positions `x₀ … x_{2m}`: start at `(0, n_m)`, odd steps go
    /// right by the gap, even steps go down.
    pub fn generators(&self) -> Vec<(i64, i64)> {
        let mut pos = (0i64, self.top() as i64);
        let mut out = vec![pos];
        for (idx, d) in self.gaps().into_iter().enumerate() {
            let t = idx + 1;
            if t % 2 == 1 {
                pos.0 += d as i64;
            } else {
                pos.1 -= d as i64;
            }
            out.push(pos);
        }
        out
    }
}

/// Reads the staircase off a symmetric coefficient list (exponents `−g … g`).
pub fn staircase_from_alexander(coeffs: &[i64]) -> Result<Staircase, StaircaseError> {
    let bad = |msg: String| Err(StaircaseError::NotLSpaceForm(msg));
    if coeffs.len().is_multiple_of(2) {
        return bad(format!("coefficient list has even length {}", coeffs.len()));
    }
    let g = coeffs.len() / 2;
    if coeffs.iter().zip(coeffs.iter().rev()).any(|(a, b)| a != b) {
        return bad("coefficients are not palindromic".into());
    }
    if coeffs.iter().sum::<i64>() != 1 {
        return bad("Δ(1) ≠ 1".into());
    }
    let n: Vec<u64> = (1..=g).filter(|&e| coeffs[g + e] != 0).map(|e| e as u64).collect();
    let m = n.len();
    if m == 0 {
        return bad("trivial polynomial has no staircase".into());
    }
    for (i, &ni) in n.iter().enumerate() {
        let expected = if (m - (i + 1)).is_multiple_of(2) { 1 } else { -1 };
        let got = coeffs[g + ni as usize];
        if got != expected {
            return bad(format!("coefficient of t^{ni} is {got}, expected {expected}"));
        }
    }
    let expected_const = if m.is_multiple_of(2) { 1 } else { -1 };
    if coeffs[g] != expected_const {
        return bad(format!("constant coefficient is {}, expected {expected_const}", coeffs[g]));
    }
    Staircase::new(n)
}

/// `t_s = Σ_{j≥1} j·a_{s+j}` for a symmetric coefficient list.
pub fn torsion_coefficients(coeffs: &[i64], s: u64) -> i64 {
    let g = (coeffs.len() / 2) as i64;
    let s = s as i64;
    (1..)
        .take_while(|j| s + j <= g)
        .map(|j| j * coeffs[(g + s + j) as usize])
        .sum()
}

/// Thin knots: `V_s = max{⌊(τ + 1 − s)/2⌋, 0}` for `τ > 0`, else zero.
pub fn vs_thin(tau: i64) -> VsSequence {
    if tau <= 0 {
        return VsSequence::zero();
    }
    let values: Vec<u64> = (0..=tau).map(|s| ((tau + 1 - s).div_euclid(2)).max(0) as u64).collect();
    VsSequence::from_values(&values)
}

/// Piecewise staircase formula with `l_k = n_k − n_{k−1}`, `n₀ = 0`, `l₀ = 0`,
/// `l_{m+1} = ∞`; the sequence is `n(K)` minus the fewest diagonal shifts
/// that put the staircase inside `A_s`.
pub fn vs_lspace_formula(st: &Staircase) -> VsSequence {
    const INF: u64 = u64::MAX / 4;
    let m = st.m();
    let mut l = vec![0u64];
    l.extend(st.n.iter().scan(0, |prev, &n| Some(n - std::mem::replace(prev, n))));
    l.push(INF);
    let sum_even = |upto: usize| -> u64 { (0..=upto).map(|k| l[2 * k]).fold(0, u64::saturating_add) };
    let sum_odd = |upto: usize| -> u64 { (0..=upto).map(|k| l[2 * k + 1]).fold(0, u64::saturating_add) };
    // Σ_{k=0}^{i−1}, empty for i = 0
    let sum_even_before = |i: usize| if i == 0 { 0 } else { sum_even(i - 1) };
    let sum_odd_before = |i: usize| if i == 0 { 0 } else { sum_odd(i - 1) };
    let width = st.width();

    let shifts = |s: u64| -> u64 {
        if m % 2 == 1 {
            let n_max = m.div_ceil(2);
            let big_n = (1..=n_max)
                .find(|&nn| sum_even_before(nn) <= s && s < sum_even(nn))
                .expect("intervals cover [0, ∞)");
            (1..=big_n)
                .map(|i| sum_odd_before(i).min(s - sum_even_before(i)))
                .max()
                .unwrap_or(0)
        } else {
            let n_max = m / 2;
            let big_n = (0..=n_max)
                .find(|&nn| sum_odd_before(nn) <= s && s < sum_odd(nn))
                .expect("intervals cover [0, ∞)");
            (0..=big_n)
                .map(|i| sum_even(i).min(s - sum_odd_before(i)))
                .max()
                .unwrap_or(0)
        }
    };

    let values: Vec<u64> = (0..=st.top()).map(|s| width.saturating_sub(shifts(s))).collect();
    VsSequence::from_values(&values)
}

/// Bit vector over the two-element field.
#[derive(Clone, PartialEq, Eq)]
struct F2Vec(Vec<u64>);

impl F2Vec {
    fn zero(len: usize) -> Self {
        F2Vec(vec![0; len.div_ceil(64).max(1)])
    }
    fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn add(&mut self, other: &F2Vec) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn lowest(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Whether `target` lies in the span of `rows`, by elimination.
fn in_span(rows: &[F2Vec], target: &F2Vec) -> bool {
    let mut basis: Vec<(usize, F2Vec)> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for (pivot, b) in &basis {
            if v.get(*pivot) {
                v.add(b);
            }
        }
        if let Some(p) = v.lowest() {
            for (_, b) in basis.iter_mut() {
                if b.get(p) {
                    b.add(&v);
                }
            }
            basis.push((p, v));
        }
    }
    let mut t = target.clone();
    for (pivot, b) in &basis {
        if t.get(*pivot) {
            t.add(b);
        }
    }
    t.is_zero()
}

/// Upward-closed filtration regions of `CFK^∞`.
#[derive(Clone, Copy, Debug)]
enum Region {
    /// `max(i, j − s) ≥ 0`
    A(i64),
    /// `i ≥ 0`
    B,
}

impl Region {
    fn contains(self, (i, j): (i64, i64)) -> bool {
        match self {
            Region::A(s) => i.max(j - s) >= 0,
            Region::B => i >= 0,
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::A(s) => write!(f, "A_{s}"),
            Region::B => write!(f, "B"),
        }
    }
}

/// Lowest diagonal translate level at which the tower class of the quotient
/// complex `C{region}` is nonzero.
///
/// The class at level `ℓ` is the projection of the staircase cycle `x₀`
/// translated by `(ℓ, ℓ)`; it is the image under `U` of the class one level up,
/// so the scan stops at the first level where it becomes a boundary.
fn tower_bottom(st: &Staircase, region: Region, window: i64) -> Result<i64, StaircaseError> {
    let gens = st.generators();
    let count = gens.len();
    let too_small = || StaircaseError::WindowTooSmall { region: region.to_string(), bottom: -window, top: 0 };
    let class_nonzero = |level: i64| -> bool {
        let inside: Vec<bool> = gens.iter().map(|&(i, j)| region.contains((i + level, j + level))).collect();
        if !inside[0] {
            return false;
        }
        let mut target = F2Vec::zero(count);
        target.flip(0);
        let boundaries: Vec<F2Vec> = (1..count)
            .step_by(2)
            .filter(|&t| inside[t])
            .map(|t| {
                let mut v = F2Vec::zero(count);
                for nb in [t - 1, t + 1] {
                    if inside[nb] {
                        v.flip(nb);
                    }
                }
                v
            })
            .collect();
        !in_span(&boundaries, &target)
    };
    // level 0 holds the whole staircase in every region considered here
    if !gens.iter().all(|&p| region.contains(p)) || !class_nonzero(0) {
        return Err(too_small());
    }
    let mut level = 0;
    while class_nonzero(level - 1) {
        level -= 1;
        if level <= -window {
            return Err(too_small());
        }
    }
    Ok(level)
}

/// `V_s = level_B − level_{A_s}` from explicit homology of truncated
/// staircase complexes, for `s = 0 … s_max`.
pub fn vs_staircase_oracle(st: &Staircase, s_max: u64) -> Result<VsSequence, StaircaseError> {
    // no translate below −n_m − 1 meets A_s or B at x₀
    let window = st.top() as i64 + 2;
    let level_b = tower_bottom(st, Region::B, window)?;
    let values = (0..=s_max)
        .map(|s| {
            let level_a = tower_bottom(st, Region::A(s as i64), window)?;
            Ok((level_b - level_a).max(0) as u64)
        })
        .collect::<Result<Vec<_>, StaircaseError>>()?;
    Ok(VsSequence::from_values(&values))
}

/// `ν₊ = min{s : V_s = 0}`.
pub fn nu_plus(v: &VsSequence) -> u64 {
    v.values().len() as u64
}

/// Resolves a record's V_s specification.
pub fn vs_of(r: &KnotRecord) -> Result<VsSequence, VsError> {
    match &r.vs_spec {
        VsSpec::Explicit(values) => Ok(VsSequence::from_values(values)),
        VsSpec::Thin => r.tau.map(vs_thin).ok_or_else(|| VsError::MissingTau(r.name.clone())),
        VsSpec::LSpace => {
            let coeffs = r.alexander.as_ref().ok_or_else(|| VsError::MissingAlexander(r.name.clone()))?;
            let st = staircase_from_alexander(coeffs)
                .map_err(|source| VsError::Staircase { name: r.name.clone(), source })?;
            let v = vs_lspace_formula(&st);
            for s in 0..=st.top() {
                let torsion = torsion_coefficients(coeffs, s);
                if torsion != v.get(s) as i64 {
                    return Err(VsError::OracleDisagreement {
                        name: r.name.clone(),
                        s,
                        formula: v.get(s),
                        torsion,
                    });
                }
            }
            Ok(v)
        }
        VsSpec::MirrorLSpace => Ok(VsSequence::zero()),
        VsSpec::Unknown => Err(VsError::VsUnavailable(r.name.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const T23: [i64; 3] = [1, -1, 1];
    const T34: [i64; 7] = [1, -1, 0, 1, 0, -1, 1];

    fn seq(v: &VsSequence) -> Vec<u64> {
        v.values().to_vec()
    }

    #[test]
    fn staircase_examples() {
        let st = staircase_from_alexander(&T23).unwrap();
        assert_eq!(st.n(), &[1]);
        assert_eq!(st.width(), 1);
        let st = staircase_from_alexander(&T34).unwrap();
        assert_eq!(st.n(), &[2, 3]);
        assert_eq!(st.gaps(), vec![1, 2, 2, 1]);
        assert_eq!(st.width(), 1);
        assert_eq!(st.alexander(), T34.to_vec());
    }

    #[test]
    fn rejects_non_lspace() {
        // 4_1: −t + 3 − t⁻¹
        assert!(matches!(staircase_from_alexander(&[-1, 3, -1]), Err(StaircaseError::NotLSpaceForm(_))));
        // coefficient 2
        assert!(staircase_from_alexander(&[2, -3, 2]).is_err());
        // two consecutive same-sign coefficients
        assert!(staircase_from_alexander(&[1, 1, -3, 1, 1]).is_err());
        assert!(staircase_from_alexander(&[1]).is_err());
        assert!(staircase_from_alexander(&[1, 0]).is_err());
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(torsion_coefficients(&T23, 0), 1);
        assert_eq!(torsion_coefficients(&T34, 2), 1);
        assert_eq!(torsion_coefficients(&T34, 3), 0);
        assert_eq!(torsion_coefficients(&T34, 10), 0);
    }

    #[test]
    fn thin_examples() {
        assert_eq!(seq(&vs_thin(1)), vec![1]);
        assert_eq!(seq(&vs_thin(0)), Vec::<u64>::new());
        assert_eq!(seq(&vs_thin(-2)), Vec::<u64>::new());
        assert_eq!(seq(&vs_thin(3)), vec![2, 1, 1]);
    }

    #[test]
    fn formula_examples() {
        let t23 = Staircase::new(vec![1]).unwrap();
        let t25 = Staircase::new(vec![1, 2]).unwrap();
        let t34 = Staircase::new(vec![2, 3]).unwrap();
        assert_eq!(seq(&vs_lspace_formula(&t23)), vec![1]);
        assert_eq!(seq(&vs_lspace_formula(&t25)), vec![1, 1]);
        assert_eq!(seq(&vs_lspace_formula(&t34)), vec![1, 1, 1]);
    }

    #[test]
    fn oracle_examples() {
        let t23 = Staircase::new(vec![1]).unwrap();
        assert_eq!(tower_bottom(&t23, Region::B, 3).unwrap(), 0);
        assert_eq!(tower_bottom(&t23, Region::A(0), 3).unwrap(), -1);
        assert_eq!(seq(&vs_staircase_oracle(&t23, 1).unwrap()), vec![1]);
        let t34 = Staircase::new(vec![2, 3]).unwrap();
        assert_eq!(seq(&vs_staircase_oracle(&t34, 3).unwrap()), vec![1, 1, 1]);
    }

    #[test]
    fn oracle_window_too_small() {
        let st = Staircase::new(vec![1, 2, 5]).unwrap();
        assert!(matches!(
            tower_bottom(&st, Region::A(0), 1),
            Err(StaircaseError::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn t45_matches_torsion() {
        let coeffs = [1, -1, 0, 0, 1, 0, -1, 0, 1, 0, 0, -1, 1];
        let st = staircase_from_alexander(&coeffs).unwrap();
        assert_eq!(seq(&vs_lspace_formula(&st)), vec![3, 2, 1, 1, 1, 1]);
        assert_eq!(seq(&vs_staircase_oracle(&st, 6).unwrap()), vec![3, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn nu_plus_examples() {
        assert_eq!(nu_plus(&VsSequence::zero()), 0);
        assert_eq!(nu_plus(&VsSequence::from_values(&[1])), 1);
        assert_eq!(nu_plus(&VsSequence::from_values(&[2, 1, 1])), 3);
    }

    #[test]
    fn sequence_accessors() {
        let v = VsSequence::from_values(&[2, 1, 0, 5]);
        assert_eq!(v.values(), &[2, 1]);
        assert_eq!(v.get(5), 0);
        assert_eq!(v.prefix(3), vec![2, 1, 0, 0]);
        assert!(v.has_unit_steps());
        assert!(!VsSequence::from_values(&[3, 1]).has_unit_steps());
        assert!(!VsSequence::from_values(&[2]).has_unit_steps());
    }
}
