//! Lower bounds by exhaustive obstruction of every class level by level,
//! upper bounds from constructions propagated through the database.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::Serialize;

use crate::knot_model::{KnotDatabase, KnotRecord};
use crate::lattice::{enumerate_classes, HomologyClass};
use crate::obstructions::{friend_rule, null_class_verdict, ClassChecker, ObstructionSet, Verdict, Witness};
use crate::staircase::{vs_of, VsError, VsSequence};

pub const DEFAULT_MAX_K: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
#[derive(Default)]
pub struct EngineConfig {
    /// Highest level searched; `None` means the upper bound when known, else 64.
    pub max_k: Option<u64>,
    pub obstructions: ObstructionSet,
    pub gamma_c_sweep: bool,
    /// Worker threads for checking the classes of one level; 0 picks a default.
    pub parallelism: usize,
}


impl EngineConfig {
    fn resolve_max_k(&self, upper: Option<u64>) -> u64 {
        self.max_k.or(upper).unwrap_or(DEFAULT_MAX_K)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCertificate {
    pub class: HomologyClass,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LevelCertificate {
    NullClass { witness: Witness },
    Friend { witness: Witness },
    Classes { classes: Vec<ClassCertificate> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRecord {
    pub k: u64,
    #[serde(flatten)]
    pub certificate: LevelCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub lower: u64,
    pub exhausted: bool,
    pub surviving_class: Option<HomologyClass>,
    pub certificates: Vec<LevelRecord>,
    pub notes: Vec<String>,
}

fn resolve_vs(r: &KnotRecord, notes: &mut Vec<String>) -> Option<VsSequence> {
    match vs_of(r) {
        Ok(v) => Some(v),
        Err(VsError::VsUnavailable(_)) => None,
        Err(e) => {
            notes.push(format!("V_s unavailable: {e}"));
            None
        }
    }
}

/// Largest triggered friendship level together with its witness.
fn friend_cover(r: &KnotRecord) -> Option<(u64, Witness)> {
    r.friends
        .iter()
        .filter_map(|f| {
            let v = friend_rule(f.k, f.friend_s);
            v.obstructed.then(|| {
                (f.k, Witness::Friend { k: f.k, friend_name: Some(f.friend_name.clone()), friend_s: f.friend_s })
            })
        })
        .max_by_key(|(k, _)| *k)
}

fn run_in_pool<T: Send>(parallelism: usize, f: impl FnOnce() -> T + Send) -> T {
    if parallelism == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(parallelism).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Ascends `k = 0, 1, …, max_k` and returns the first level at which some
/// class survives every enabled obstruction.
pub fn lower_bound(r: &KnotRecord, cfg: &EngineConfig) -> LowerBound {
    run_in_pool(cfg.parallelism, || lower_bound_with_cap(r, cfg, cfg.resolve_max_k(None)))
}

fn lower_bound_with_cap(r: &KnotRecord, cfg: &EngineConfig, max_k: u64) -> LowerBound {
    let mut notes = Vec::new();
    let vs = resolve_vs(r, &mut notes);
    let enabled = cfg.obstructions;
    let checker = ClassChecker::for_record(r, vs.clone(), enabled, cfg.gamma_c_sweep);
    // a triggered friendship at level k gives sd₊ > k, so every level up to k falls
    let friend = if enabled.friend { friend_cover(r) } else { None };
    let mut certificates = Vec::new();

    for k in 0..=max_k {
        if let Some((fk, w)) = friend.as_ref().filter(|(fk, _)| k <= *fk) {
            debug_assert!(k <= *fk);
            certificates.push(LevelRecord { k, certificate: LevelCertificate::Friend { witness: w.clone() } });
            continue;
        }
        if k == 0 {
            let v = null_class_verdict(r, vs.as_ref(), enabled);
            match v.witness {
                Some(w) if v.obstructed => {
                    certificates.push(LevelRecord { k, certificate: LevelCertificate::NullClass { witness: w } });
                    continue;
                }
                _ => {
                    return LowerBound {
                        lower: 0,
                        exhausted: false,
                        surviving_class: Some(HomologyClass::empty()),
                        certificates,
                        notes,
                    }
                }
            }
        }
        let classes = enumerate_classes(k);
        let verdicts: Vec<Verdict> = if cfg.parallelism == 1 {
            classes.iter().map(|c| checker.first_kill(c.coords())).collect()
        } else {
            classes.par_iter().map(|c| checker.first_kill(c.coords())).collect()
        };
        if let Some(i) = verdicts.iter().position(|v| !v.obstructed) {
            return LowerBound {
                lower: k,
                exhausted: false,
                surviving_class: Some(classes[i].clone()),
                certificates,
                notes,
            };
        }
        let classes = classes
            .into_iter()
            .zip(verdicts)
            .map(|(class, v)| ClassCertificate { class, witness: v.witness.expect("obstructed verdict has witness") })
            .collect();
        certificates.push(LevelRecord { k, certificate: LevelCertificate::Classes { classes } });
    }
    LowerBound { lower: max_k + 1, exhausted: true, surviving_class: None, certificates, notes }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperBound {
    pub value: Option<u64>,
    pub witness: Option<String>,
}

impl UpperBound {
    fn none() -> Self {
        UpperBound { value: None, witness: None }
    }

    fn offer(&mut self, value: u64, witness: impl FnOnce() -> String) -> bool {
        if self.value.is_none_or(|u| value < u) {
            self.value = Some(value);
            self.witness = Some(witness());
            true
        } else {
            false
        }
    }
}

fn local_upper(r: &KnotRecord) -> UpperBound {
    let mut u = UpperBound::none();
    if let Some(c) = r.clasp_plus {
        u.offer(4 * c, || format!("positive clasp number {c}"));
    }
    if let Some(n) = r.slicing_number {
        u.offer(4 * n, || format!("slicing number {n}"));
    }
    for w in &r.upper_witnesses {
        u.offer(w.k, || w.description.clone());
    }
    u
}

/// Reference edges used by the upper-bound combinators.
fn relation_edges(r: &KnotRecord) -> Vec<&str> {
    let mut out: Vec<&str> = r.concordant_to.iter().map(String::as_str).collect();
    if let Some(parts) = &r.connected_sum_of {
        out.extend(parts.iter().map(String::as_str));
    }
    out
}

fn find_cycles(db: &KnotDatabase) -> Vec<String> {
    // iterative colouring DFS over concordance and summand references
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let names: Vec<&str> = db.names().collect();
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let edges: Vec<Vec<usize>> = db
        .records()
        .map(|r| relation_edges(r).into_iter().filter_map(|n| index.get(n).copied()).collect())
        .collect();
    let mut mark = vec![Mark::New; names.len()];
    let mut reported = BTreeSet::new();
    let mut warnings = Vec::new();
    for root in 0..names.len() {
        if mark[root] != Mark::New {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Active;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if let Some(&succ) = edges[node].get(*next) {
                *next += 1;
                match mark[succ] {
                    Mark::New => {
                        mark[succ] = Mark::Active;
                        stack.push((succ, 0));
                    }
                    Mark::Active => {
                        let start = stack.iter().position(|&(n, _)| n == succ).unwrap_or(0);
                        let cycle: Vec<&str> = stack[start..].iter().map(|&(n, _)| names[n]).collect();
                        let key: BTreeSet<&str> = cycle.iter().copied().collect();
                        if reported.insert(key) {
                            warnings.push(format!("cyclic relation: {} -> {}", cycle.join(" -> "), names[succ]));
                        }
                    }
                    Mark::Done => {}
                }
            } else {
                mark[node] = Mark::Done;
                stack.pop();
            }
        }
    }
    warnings
}

/// Upper bounds for every record, closed under connected sums and
/// concordance (in both directions). Also returns cycle warnings.
pub fn upper_bounds(db: &KnotDatabase) -> (IndexMap<String, UpperBound>, Vec<String>) {
    let mut bounds: IndexMap<String, UpperBound> = db.records().map(|r| (r.name.clone(), local_upper(r))).collect();
    let warnings = find_cycles(db);
    loop {
        let mut changed = false;
        for r in db.records() {
            if let Some(parts) = &r.connected_sum_of {
                let values: Option<Vec<u64>> = parts.iter().map(|p| bounds.get(p).and_then(|u| u.value)).collect();
                if let Some(values) = values {
                    let total = values.iter().sum();
                    changed |= bounds
                        .get_mut(&r.name)
                        .expect("record present")
                        .offer(total, || format!("connected sum of {}", parts.join(", ")));
                }
            }
            if let Some(other) = &r.concordant_to {
                if let Some(u) = bounds.get(other).and_then(|u| u.value) {
                    changed |= bounds
                        .get_mut(&r.name)
                        .expect("record present")
                        .offer(u, || format!("concordant to {other}"));
                }
                let mine = bounds[&r.name].value;
                if let (Some(u), Some(target)) = (mine, bounds.get_mut(other)) {
                    changed |= target.offer(u, || format!("concordant to {}", r.name));
                }
            }
        }
        if !changed {
            break;
        }
    }
    (bounds, warnings)
}

/// Upper bound of a single record against the database it belongs to.
pub fn upper_bound(r: &KnotRecord, db: &KnotDatabase) -> UpperBound {
    let (bounds, _) = upper_bounds(db);
    match bounds.get(&r.name) {
        Some(u) if db.get(&r.name) == Some(r) => u.clone(),
        _ => {
            let mut u = local_upper(r);
            if let Some(parts) = &r.connected_sum_of {
                let values: Option<Vec<u64>> = parts.iter().map(|p| bounds.get(p).and_then(|u| u.value)).collect();
                if let Some(values) = values {
                    u.offer(values.iter().sum(), || format!("connected sum of {}", parts.join(", ")));
                }
            }
            if let Some(other) = &r.concordant_to {
                if let Some(v) = bounds.get(other).and_then(|u| u.value) {
                    u.offer(v, || format!("concordant to {other}"));
                }
            }
            u
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub lower: u64,
    pub upper: Option<u64>,
    pub interval: String,
    pub lower_exhausted: bool,
    pub upper_witness: Option<String>,
    pub surviving_class: Option<HomologyClass>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub certificates: Vec<LevelRecord>,
}

/// `L` when the bounds meet, `[L,U]` otherwise, `[L,inf)` with no upper bound.
pub fn render_interval(lower: u64, upper: Option<u64>) -> String {
    match upper {
        Some(u) if u == lower => u.to_string(),
        Some(u) => format!("[{lower},{u}]"),
        None => format!("[{lower},inf)"),
    }
}

fn assemble(r: &KnotRecord, upper: UpperBound, cfg: &EngineConfig) -> BoundReport {
    let max_k = cfg.resolve_max_k(upper.value);
    let lb = lower_bound_with_cap(r, cfg, max_k);
    let mut notes = lb.notes;
    if let Some(u) = upper.value.filter(|&u| lb.lower > u) {
        notes.push(format!("lower bound {} exceeds upper bound {u}: inconsistent data", lb.lower));
    }
    BoundReport {
        name: r.name.clone(),
        lower: lb.lower,
        upper: upper.value,
        interval: render_interval(lb.lower, upper.value),
        lower_exhausted: lb.exhausted,
        upper_witness: upper.witness,
        surviving_class: lb.surviving_class,
        notes,
        certificates: lb.certificates,
    }
}

/// Full report for one record of the database.
pub fn bound_report(r: &KnotRecord, db: &KnotDatabase, cfg: &EngineConfig) -> BoundReport {
    let upper = upper_bound(r, db);
    run_in_pool(cfg.parallelism, || assemble(r, upper, cfg))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub name: String,
    pub lower: u64,
    pub upper: Option<u64>,
    pub lower_exhausted: bool,
    pub interval: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// One row per record, in database order.
pub fn report_table(db: &KnotDatabase, cfg: &EngineConfig) -> Vec<TableRow> {
    let (uppers, _) = upper_bounds(db);
    run_in_pool(cfg.parallelism, || {
        db.records()
            .map(|r| {
                let upper = uppers.get(&r.name).cloned().unwrap_or_else(UpperBound::none);
                let report = assemble(r, upper, cfg);
                TableRow {
                    name: report.name,
                    lower: report.lower,
                    upper: report.upper,
                    lower_exhausted: report.lower_exhausted,
                    interval: report.interval,
                    notes: report.notes,
                }
            })
            .collect()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Json,
    Text,
}

pub fn render_table(rows: &[TableRow], format: TableFormat) -> String {
    let mut out = String::new();
    match format {
        TableFormat::Markdown => {
            out.push_str("| Knot | sd+ |\n|---|---|\n");
            for row in rows {
                let _ = writeln!(out, "| {} | {} |", row.name, row.interval);
            }
        }
        TableFormat::Text => {
            let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
            let _ = writeln!(out, "{:<width$}  sd+", "knot");
            for row in rows {
                let _ = writeln!(out, "{:<width$}  {}", row.name, row.interval);
            }
        }
        TableFormat::Json => {
            out = serde_json::to_string_pretty(rows).expect("rows serialize");
            out.push('\n');
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaRow {
    pub beta: i64,
    pub min_k: u64,
    pub class: HomologyClass,
}

/// For each `β`, the least `k` admitting a class with `β ≤ k − Σaᵢ`, and the
/// first such class in enumeration order.
pub fn beta_table(betas: &[i64]) -> Vec<BetaRow> {
    betas
        .iter()
        .map(|&beta| {
            let mut k = 0u64;
            loop {
                let hit = enumerate_classes(k).into_iter().find(|c| beta <= c.norm() - c.abs_sum());
                if let Some(class) = hit {
                    break BetaRow { beta, min_k: k, class };
                }
                k += 1;
            }
        })
        .collect()
}
