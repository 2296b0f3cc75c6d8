//! Per-class and per-level obstructions. Every check is a necessary condition
//! for the knot to bound a disk in the given class; a failed check is returned
//! as an obstructed [`Verdict`] carrying the data needed to re-verify it.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::knot_model::KnotRecord;
use crate::lattice::{eta_factored, kappa_min_value, max_odd_for_budget, norm, odd_candidates, LaurentPoly};
use crate::rational::{format_rational, serde_ratio};
use crate::staircase::{nu_plus, VsSequence};

pub type GammaMap = BTreeMap<u64, Rational64>;

/// Where an adjunction-type invariant `β` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BetaSource {
    S(u64),
    Tau,
    NuPlus,
    Given,
}

impl fmt::Display for BetaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaSource::S(p) => write!(f, "s_{p}"),
            BetaSource::Tau => write!(f, "2tau"),
            BetaSource::NuPlus => write!(f, "2nu+"),
            BetaSource::Given => write!(f, "beta"),
        }
    }
}

impl Serialize for BetaSource {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// `β > k − Σ|aᵢ|`
    Adjunction { source: BetaSource, beta: i64, rhs: i64 },
    /// `Γ_K(i) > 2κ_min` with `η ≠ 0`, `i ≥ 0`
    Gamma {
        c: Vec<i64>,
        #[serde(with = "serde_ratio")]
        kappa_min: Rational64,
        index: i64,
        eta: LaurentPoly,
        #[serde(with = "serde_ratio")]
        gamma: Rational64,
        #[serde(with = "serde_ratio")]
        bound: Rational64,
    },
    /// `Σλᵢ² − n < 8·V_j` with `j = (k − Σλᵢaᵢ)/2`
    Vs { lambda: Vec<i64>, j: i64, lhs: i64, rhs: i64 },
    /// negative signature rules out a null-homologous disk
    Signature { signature: i64 },
    /// a `k`-special friend with `s > k − √k`
    Friend {
        k: u64,
        #[serde(skip_serializing_if = "Option::is_none")]
        friend_name: Option<String>,
        friend_s: i64,
    },
}

impl Witness {
    pub fn kind(&self) -> ObstructionKind {
        match self {
            Witness::Adjunction { .. } => ObstructionKind::Adjunction,
            Witness::Gamma { .. } => ObstructionKind::Gamma,
            Witness::Vs { .. } => ObstructionKind::Vs,
            Witness::Signature { .. } => ObstructionKind::Signature,
            Witness::Friend { .. } => ObstructionKind::Friend,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Adjunction { source, beta, rhs } => {
                write!(f, "{source} = {beta} > k - sum|a_i| = {rhs}")
            }
            Witness::Gamma { c, kappa_min, index, eta, gamma, bound } => {
                write!(
                    f,
                    "c = {c:?}, kappa_min = {}, i = {index}, eta = {eta}, Gamma({index}) = {} > 2kappa_min = {}",
                    format_rational(kappa_min),
                    format_rational(gamma),
                    format_rational(bound)
                )
            }
            Witness::Vs { lambda, j, lhs, rhs } => {
                write!(f, "lambda = {lambda:?}, j = {j}: sum(lambda^2) - n = {lhs} < 8V_{j} = {rhs}")
            }
            Witness::Signature { signature } => write!(f, "signature {signature} < 0"),
            Witness::Friend { k, friend_name, friend_s } => {
                let name = friend_name.as_deref().unwrap_or("friend");
                write!(f, "{k}-special friend {name} has s = {friend_s} > {k} - sqrt({k})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub obstructed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { obstructed: false, witness: None, note: None }
    }

    pub fn pass_with_note(note: impl Into<String>) -> Self {
        Verdict { obstructed: false, witness: None, note: Some(note.into()) }
    }

    pub fn obstructed(witness: Witness) -> Self {
        Verdict { obstructed: true, witness: Some(witness), note: None }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(w) if self.obstructed => write!(f, "obstructed: {w}")?,
            _ => write!(f, "pass")?,
        }
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObstructionKind {
    Adjunction,
    Gamma,
    Vs,
    Friend,
    Signature,
}

impl ObstructionKind {
    pub fn name(self) -> &'static str {
        match self {
            ObstructionKind::Adjunction => "s",
            ObstructionKind::Gamma => "gamma",
            ObstructionKind::Vs => "vs",
            ObstructionKind::Friend => "friend",
            ObstructionKind::Signature => "signature",
        }
    }
}

/// Which obstructions an engine run may use. The signature check on the
/// null class is always on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ObstructionSet {
    pub adjunction: bool,
    pub vs: bool,
    pub gamma: bool,
    pub friend: bool,
}

impl ObstructionSet {
    pub fn all() -> Self {
        ObstructionSet { adjunction: true, vs: true, gamma: true, friend: true }
    }

    pub fn none() -> Self {
        ObstructionSet { adjunction: false, vs: false, gamma: false, friend: false }
    }

    pub fn only(kind: ObstructionKind) -> Self {
        let mut set = Self::none();
        set.insert(kind);
        set
    }

    pub fn insert(&mut self, kind: ObstructionKind) {
        match kind {
            ObstructionKind::Adjunction => self.adjunction = true,
            ObstructionKind::Vs => self.vs = true,
            ObstructionKind::Gamma => self.gamma = true,
            ObstructionKind::Friend => self.friend = true,
            ObstructionKind::Signature => {}
        }
    }

    pub fn contains(&self, kind: ObstructionKind) -> bool {
        match kind {
            ObstructionKind::Adjunction => self.adjunction,
            ObstructionKind::Vs => self.vs,
            ObstructionKind::Gamma => self.gamma,
            ObstructionKind::Friend => self.friend,
            ObstructionKind::Signature => true,
        }
    }

    /// Parses a comma list of `s` (alias `beta`), `vs`, `gamma`, `friend`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut set = Self::none();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let kind = match part {
                "s" | "beta" | "adjunction" => ObstructionKind::Adjunction,
                "vs" => ObstructionKind::Vs,
                "gamma" => ObstructionKind::Gamma,
                "friend" => ObstructionKind::Friend,
                other => return Err(format!("unknown obstruction '{other}' (expected s, vs, gamma, friend)")),
            };
            set.insert(kind);
        }
        Ok(set)
    }
}

impl Default for ObstructionSet {
    fn default() -> Self {
        Self::all()
    }
}

/// Adjunction inequality `β ≤ Σaᵢ² − Σ|aᵢ|`, for `β` any of `s_p`, `2τ`, `2ν₊`.
pub fn beta_adjunction(coords: &[i64], beta: i64) -> Verdict {
    beta_adjunction_from(coords, beta, BetaSource::Given)
}

pub fn beta_adjunction_from(coords: &[i64], beta: i64, source: BetaSource) -> Verdict {
    let rhs = norm(coords) - coords.iter().map(|a| a.abs()).sum::<i64>();
    if beta > rhs {
        Verdict::obstructed(Witness::Adjunction { source, beta, rhs })
    } else {
        Verdict::pass()
    }
}

/// Smallest `k` with `k − √k ≥ s`, i.e. `⌈s + 1/2 + √(s + 1/4)⌉`; zero for `s ≤ 0`.
pub fn stau_bound(s: i64) -> u64 {
    if s <= 0 {
        return 0;
    }
    let s = s as u64;
    // k − s ≥ 0 and (k − s)² ≥ k
    let mut k = s;
    while (k - s) * (k - s) < k {
        k += 1;
    }
    k
}

/// Minimal `Σ(λᵢ² − 1)` for each reachable `Σλᵢaᵢ`, with one minimizing `λ`.
fn min_cost_by_sum(coords: &[i64], lambda_max: i64, cost_cap: Option<i64>) -> BTreeMap<i64, (i64, Vec<i64>)> {
    let candidates = odd_candidates(lambda_max);
    let mut states: BTreeMap<i64, (i64, Vec<i64>)> = BTreeMap::new();
    states.insert(0, (0, Vec::new()));
    for &a in coords {
        let mut next: BTreeMap<i64, (i64, Vec<i64>)> = BTreeMap::new();
        for (&sum, (cost, lambda)) in &states {
            for &l in &candidates {
                let c = cost + l * l - 1;
                if cost_cap.is_some_and(|cap| c > cap) {
                    continue;
                }
                let s = sum + l * a;
                if next.get(&s).is_none_or(|(best, _)| c < *best) {
                    let mut lam = lambda.clone();
                    lam.push(l);
                    next.insert(s, (c, lam));
                }
            }
        }
        states = next;
    }
    states
}

pub(crate) fn vs_search(coords: &[i64], v: &VsSequence, lambda_max: i64, cost_cap: Option<i64>) -> Verdict {
    let k = norm(coords);
    let states = min_cost_by_sum(coords, lambda_max, cost_cap);
    for (&sum, (cost, lambda)) in states.range(0..=k) {
        // Σλa ≡ Σa ≡ k (mod 2), so j is integral
        let j = (k - sum) / 2;
        let rhs = 8 * v.get(j as u64) as i64;
        if *cost < rhs {
            return Verdict::obstructed(Witness::Vs { lambda: lambda.clone(), j, lhs: *cost, rhs });
        }
    }
    Verdict::pass()
}

/// `V_s` obstruction: some odd `λ` with `0 ≤ Σλᵢaᵢ ≤ k` has
/// `Σλᵢ² − n < 8·V_j`, `j = (k − Σλᵢaᵢ)/2`.
///
/// Exact minimization over the search domain of
/// [`enumerate_odd_vectors`](crate::lattice::enumerate_odd_vectors) by dynamic
/// programming on the partial sums `Σλᵢaᵢ`.
pub fn vs_obstruction(coords: &[i64], v: &VsSequence) -> Verdict {
    let budget = 8 * v.get(0) as i64;
    vs_search(coords, v, max_odd_for_budget(budget), Some(budget))
}

/// The same search with the per-coordinate bound on `|λᵢ|` raised by `extra`
/// and no cap on `Σ(λᵢ² − 1)`.
pub fn vs_obstruction_enlarged(coords: &[i64], v: &VsSequence, extra: i64) -> Verdict {
    let budget = 8 * v.get(0) as i64;
    vs_search(coords, v, max_odd_for_budget(budget) + extra, None)
}

/// Instanton obstruction: with `i = 4κ_min − k/4 − σ/2`, a disk forces
/// `Γ_K(i) ≤ 2κ_min` whenever `η ≠ 0` and `i ≥ 0`.
pub fn gamma_general(coords: &[i64], c: &[i64], signature: Option<i64>, gamma: &GammaMap) -> Verdict {
    let Some(sigma) = signature else { return Verdict::pass_with_note("signature unknown") };
    let kappa = kappa_min_value(coords, c);
    let index = kappa * 4 - Rational64::new(norm(coords), 4) - Rational64::new(sigma, 2);
    if !index.is_integer() {
        return Verdict::pass_with_note(format!("non-integral index {}", format_rational(&index)));
    }
    if index.is_negative() {
        return Verdict::pass();
    }
    let index = index.to_integer();
    let eta = eta_factored(coords, c);
    if eta.is_zero() {
        return Verdict::pass_with_note("eta vanishes");
    }
    let Some(&g) = gamma.get(&(index as u64)) else {
        return Verdict::pass_with_note(format!("Gamma({index}) unknown"));
    };
    let bound = kappa * 2;
    if g > bound {
        Verdict::obstructed(Witness::Gamma { c: c.to_vec(), kappa_min: kappa, index, eta, gamma: g, bound })
    } else {
        Verdict::pass()
    }
}

/// Closed form on classes `(2×p, 1×q)` with `c = 0`: obstructed iff `σ ≤ 0`
/// and `Γ_K(−σ/2) > p/2 + q/8`.
pub fn gamma_21(p: u64, q: u64, signature: Option<i64>, gamma: &GammaMap) -> Verdict {
    let Some(sigma) = signature else { return Verdict::pass_with_note("signature unknown") };
    if sigma > 0 {
        return Verdict::pass();
    }
    let index = -sigma / 2;
    let Some(&g) = gamma.get(&(index as u64)) else {
        return Verdict::pass_with_note(format!("Gamma({index}) unknown"));
    };
    let (p, q) = (p as i64, q as i64);
    let bound = Rational64::new(p, 2) + Rational64::new(q, 8);
    if g <= bound {
        return Verdict::pass();
    }
    let one_minus_t4 = {
        let mut f = LaurentPoly::one();
        f.add_term(-1, 4);
        f
    };
    let eta = (0..p).fold(LaurentPoly::one(), |acc, _| acc.mul(&one_minus_t4));
    let n = (p + q) as usize;
    Verdict::obstructed(Witness::Gamma {
        c: vec![0; n],
        kappa_min: Rational64::new(p, 4) + Rational64::new(q, 16),
        index,
        eta,
        gamma: g,
        bound,
    })
}

/// `Γ_{D_{m,n}}(1) = (2m − 1)(2n − 1)/(4mn − 1)` for double twist knots.
pub fn double_twist_gamma(m: u64, n: u64) -> Rational64 {
    assert!(m >= 1 && n >= 1, "double twist parameters start at 1");
    let (m, n) = (m as i64, n as i64);
    Rational64::new((2 * m - 1) * (2 * n - 1), 4 * m * n - 1)
}

/// Null-homologous disk: ruled out by `σ < 0`, any `s_p > 0`, or `V₀ > 0`.
pub fn null_class_check(r: &KnotRecord, v: Option<&VsSequence>) -> Verdict {
    null_class_verdict(r, v, ObstructionSet::all())
}

pub(crate) fn null_class_verdict(r: &KnotRecord, v: Option<&VsSequence>, enabled: ObstructionSet) -> Verdict {
    if let Some(sigma) = r.signature.filter(|&s| s < 0) {
        return Verdict::obstructed(Witness::Signature { signature: sigma });
    }
    if enabled.adjunction {
        if let Some((&p, &s)) = r.s_invariants.iter().find(|(_, &s)| s > 0) {
            return Verdict::obstructed(Witness::Adjunction { source: BetaSource::S(p), beta: s, rhs: 0 });
        }
    }
    if enabled.vs {
        if let Some(v0) = v.map(|v| v.get(0)).filter(|&v0| v0 > 0) {
            return Verdict::obstructed(Witness::Vs { lambda: Vec::new(), j: 0, lhs: 0, rhs: 8 * v0 as i64 });
        }
    }
    Verdict::pass()
}

/// A `k`-special friend with `s > k − √k` forces `sd₊ > k`.
pub fn friend_rule(k: u64, friend_s: i64) -> Verdict {
    let ki = k as i128;
    let s = friend_s as i128;
    let holds = s > ki || (ki - s) * (ki - s) < ki;
    if holds {
        Verdict::obstructed(Witness::Friend { k, friend_name: None, friend_s })
    } else {
        Verdict::pass()
    }
}

/// Adjunction-type invariants available for a record, positive values only.
pub fn available_betas(r: &KnotRecord, v: Option<&VsSequence>) -> Vec<(BetaSource, i64)> {
    let mut out: Vec<(BetaSource, i64)> =
        r.s_invariants.iter().filter(|(_, &s)| s > 0).map(|(&p, &s)| (BetaSource::S(p), s)).collect();
    if let Some(t) = r.tau.filter(|&t| t > 0) {
        out.push((BetaSource::Tau, 2 * t));
    }
    if let Some(nu) = v.map(nu_plus).filter(|&nu| nu > 0) {
        out.push((BetaSource::NuPlus, 2 * nu as i64));
    }
    out
}

/// Cohomology vectors `c` to try for the instanton obstruction: `c = 0`, or
/// with the sweep on every `c ∈ {0,1}ⁿ` up to permutations preserving `a`.
pub fn gamma_c_vectors(coords: &[i64], sweep: bool) -> Vec<Vec<i64>> {
    let zero = vec![0; coords.len()];
    if !sweep {
        return vec![zero];
    }
    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &a) in coords.iter().enumerate() {
        groups.entry(a.abs()).or_default().push(i);
    }
    let groups: Vec<Vec<usize>> = groups.into_values().rev().collect();
    let mut out = vec![zero];
    for positions in &groups {
        let mut next = Vec::new();
        for c in &out {
            for count in 0..=positions.len() {
                let mut c2 = c.clone();
                for &pos in &positions[..count] {
                    c2[pos] = 1;
                }
                next.push(c2);
            }
        }
        out = next;
    }
    out
}

/// Per-record obstruction data applied to individual classes.
#[derive(Clone, Debug)]
pub struct ClassChecker {
    pub betas: Vec<(BetaSource, i64)>,
    pub signature: Option<i64>,
    pub gamma: GammaMap,
    pub vs: Option<VsSequence>,
    pub enabled: ObstructionSet,
    pub gamma_c_sweep: bool,
}

impl ClassChecker {
    pub fn for_record(r: &KnotRecord, vs: Option<VsSequence>, enabled: ObstructionSet, gamma_c_sweep: bool) -> Self {
        ClassChecker {
            betas: available_betas(r, vs.as_ref()),
            signature: r.signature,
            gamma: r.gamma.clone(),
            vs,
            enabled,
            gamma_c_sweep,
        }
    }

    fn adjunction(&self, coords: &[i64]) -> Verdict {
        self.betas
            .iter()
            .map(|&(src, b)| beta_adjunction_from(coords, b, src))
            .find(|v| v.obstructed)
            .unwrap_or_else(Verdict::pass)
    }

    fn gamma(&self, coords: &[i64]) -> Verdict {
        if self.gamma.is_empty() {
            return Verdict::pass_with_note("no Gamma data");
        }
        let mut last = Verdict::pass();
        for c in gamma_c_vectors(coords, self.gamma_c_sweep) {
            let v = gamma_general(coords, &c, self.signature, &self.gamma);
            if v.obstructed {
                return v;
            }
            last = v;
        }
        last
    }

    fn vs(&self, coords: &[i64]) -> Verdict {
        match &self.vs {
            Some(v) => vs_obstruction(coords, v),
            None => Verdict::pass_with_note("V_s unknown"),
        }
    }

    fn check(&self, kind: ObstructionKind, coords: &[i64]) -> Verdict {
        match kind {
            ObstructionKind::Adjunction => self.adjunction(coords),
            ObstructionKind::Gamma => self.gamma(coords),
            ObstructionKind::Vs => self.vs(coords),
            ObstructionKind::Friend | ObstructionKind::Signature => Verdict::pass(),
        }
    }

    const ORDER: [ObstructionKind; 3] = [ObstructionKind::Adjunction, ObstructionKind::Gamma, ObstructionKind::Vs];

    /// First enabled obstruction that kills the class, cheapest first.
    pub fn first_kill(&self, coords: &[i64]) -> Verdict {
        for kind in Self::ORDER {
            if self.enabled.contains(kind) {
                let v = self.check(kind, coords);
                if v.obstructed {
                    return v;
                }
            }
        }
        Verdict::pass()
    }

    /// Every enabled per-class obstruction's verdict.
    pub fn all_verdicts(&self, coords: &[i64]) -> Vec<(ObstructionKind, Verdict)> {
        Self::ORDER
            .into_iter()
            .filter(|&k| self.enabled.contains(k))
            .map(|k| (k, self.check(k, coords)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_model::VsSpec;

    fn gmap(entries: &[(u64, i64, i64)]) -> GammaMap {
        entries.iter().map(|&(s, n, d)| (s, Rational64::new(n, d))).collect()
    }

    #[test]
    fn adjunction_examples() {
        assert!(!beta_adjunction(&[2], 2).obstructed);
        assert!(beta_adjunction(&[1, 1, 1], 2).obstructed);
        assert!(!beta_adjunction(&[2, 3], 8).obstructed);
        assert!(beta_adjunction(&[2, 3], 9).obstructed);
    }

    #[test]
    fn stau_examples() {
        assert_eq!(stau_bound(2), 4);
        assert_eq!(stau_bound(6), 9);
        assert_eq!(stau_bound(0), 0);
        assert_eq!(stau_bound(-4), 0);
        assert_eq!(stau_bound(4), 7);
        assert_eq!(stau_bound(8), 12);
    }

    #[test]
    fn stau_matches_real_formula() {
        for s in 1..200i64 {
            let x = s as f64 + 0.5 + (s as f64 + 0.25).sqrt();
            // exact squares land on integers; compare with a small tolerance
            let expected = (x - 1e-9).ceil() as u64;
            assert_eq!(stau_bound(s), expected, "s = {s}");
        }
    }

    #[test]
    fn vs_examples() {
        let v1 = VsSequence::from_values(&[1]);
        let verdict = vs_obstruction(&[1, 1, 1, 1], &v1);
        assert!(verdict.obstructed);
        assert_eq!(verdict.witness, Some(Witness::Vs { lambda: vec![1, 1, 1, 1], j: 0, lhs: 0, rhs: 8 }));
        assert!(!vs_obstruction(&[2], &v1).obstructed);
        for coords in [vec![1], vec![2, 1], vec![3, 3, 1]] {
            assert!(!vs_obstruction(&coords, &VsSequence::zero()).obstructed);
        }
    }

    #[test]
    fn odd_class_rule_is_subsumed() {
        // all-odd a: λ = a gives k − n ≥ 8V₀
        let v = VsSequence::from_values(&[1]);
        assert!(vs_obstruction(&[3], &v).obstructed == (9 - 1 < 8));
        assert!(vs_obstruction(&[1, 1, 1, 1, 1], &v).obstructed);
    }

    #[test]
    fn gamma_examples() {
        let g74 = gmap(&[(1, 3, 5)]);
        let v = gamma_general(&[2], &[0], Some(-2), &g74);
        assert!(v.obstructed);
        let Some(Witness::Gamma { kappa_min, index, bound, .. }) = v.witness else { panic!() };
        assert_eq!((kappa_min, index, bound), (Rational64::new(1, 4), 1, Rational64::new(1, 2)));

        let g95 = gmap(&[(1, 15, 23)]);
        let v = gamma_general(&[1, 1, 1, 1, 1], &[0; 5], Some(-2), &g95);
        assert!(v.obstructed);
        let Some(Witness::Gamma { kappa_min, index, bound, .. }) = v.witness else { panic!() };
        assert_eq!((kappa_min, index, bound), (Rational64::new(5, 16), 1, Rational64::new(5, 8)));

        // κ_min = 0, i = −4 − σ/2 < 0
        for sigma in [-6, -4, 0, 2] {
            assert!(!gamma_general(&[4], &[0], Some(sigma), &gmap(&[(0, 9, 1)])).obstructed);
        }
        assert!(!gamma_general(&[2], &[0], None, &g74).obstructed);
    }

    #[test]
    fn gamma_non_integral_index_is_no_conclusion() {
        // 4κ_min − k/4 is always an integer, so only an odd signature gets here
        let v = gamma_general(&[1], &[0], Some(-1), &gmap(&[(0, 1, 1)]));
        assert!(!v.obstructed);
        assert!(v.note.unwrap().contains("non-integral"));
        let v = gamma_general(&[1], &[0], Some(0), &gmap(&[(0, 1, 1)]));
        assert!(v.obstructed);
    }

    #[test]
    fn gamma_21_examples() {
        assert!(gamma_21(2, 0, Some(-4), &gmap(&[(2, 36, 33)])).obstructed);
        assert!(gamma_21(1, 1, Some(-2), &gmap(&[(1, 15, 23)])).obstructed);
        assert!(!gamma_21(0, 4, Some(-2), &gmap(&[(1, 1, 2)])).obstructed);
        assert!(!gamma_21(1, 0, Some(2), &gmap(&[(1, 9, 1)])).obstructed);
    }

    #[test]
    fn double_twist_examples() {
        assert_eq!(double_twist_gamma(2, 2), Rational64::new(3, 5));
        assert_eq!(double_twist_gamma(2, 3), Rational64::new(15, 23));
        assert_eq!(double_twist_gamma(1, 1), Rational64::new(1, 3));
    }

    #[test]
    fn null_class_examples() {
        let mut r = KnotRecord::new("9_42");
        r.signature = Some(-2);
        assert!(null_class_check(&r, None).obstructed);
        let mut r = KnotRecord::new("k");
        r.signature = Some(0);
        r.s_invariants.insert(0, 2);
        assert!(null_class_check(&r, None).obstructed);
        let mut r = KnotRecord::new("k");
        r.signature = Some(0);
        r.s_invariants.insert(0, 0);
        r.vs_spec = VsSpec::Explicit(vec![]);
        assert!(!null_class_check(&r, Some(&VsSequence::zero())).obstructed);
        assert!(null_class_check(&r, Some(&VsSequence::from_values(&[1]))).obstructed);
    }

    #[test]
    fn friend_examples() {
        assert!(friend_rule(2, 2).obstructed);
        assert!(!friend_rule(4, 2).obstructed);
        assert!(friend_rule(0, 2).obstructed);
        assert!(friend_rule(1, 2).obstructed);
        assert!(!friend_rule(9, 6).obstructed);
        assert!(friend_rule(9, 7).obstructed);
    }

    #[test]
    fn friend_rule_matches_float_away_from_ties() {
        for k in 0..400u64 {
            for s in -10..30i64 {
                let f = s as f64 - (k as f64 - (k as f64).sqrt());
                if f.abs() > 1e-9 {
                    assert_eq!(friend_rule(k, s).obstructed, f > 0.0, "k={k} s={s}");
                }
            }
        }
    }

    #[test]
    fn c_sweep_up_to_symmetry() {
        assert_eq!(gamma_c_vectors(&[2, 1], false), vec![vec![0, 0]]);
        let cs = gamma_c_vectors(&[2, 2, 1], true);
        assert_eq!(cs.len(), 3 * 2);
        assert_eq!(cs[0], vec![0, 0, 0]);
        assert!(cs.contains(&vec![1, 1, 1]));
    }

    #[test]
    fn obstruction_set_parse() {
        let s = ObstructionSet::parse("s,vs").unwrap();
        assert!(s.adjunction && s.vs && !s.gamma && !s.friend);
        assert!(ObstructionSet::parse("s,bogus").is_err());
        assert_eq!(ObstructionSet::parse("s,vs,gamma,friend").unwrap(), ObstructionSet::all());
    }
}
