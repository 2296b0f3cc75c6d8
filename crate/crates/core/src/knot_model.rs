//! Knot records, the JSON knot database, and record validation.
//!
//! The database is a top-level JSON array of objects. Keys beginning with `_`
//! are annotations (sources, remarks) and are skipped silently; any other
//! unknown key is skipped with a warning.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use indexmap::IndexMap;
use num_rational::Rational64;
use num_traits::Zero;
use serde_json::{Map, Value};

use crate::rational::{format_rational, parse_rational};
use crate::staircase::{staircase_from_alexander, VsSequence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VsSpec {
    Explicit(Vec<u64>),
    Thin,
    LSpace,
    MirrorLSpace,
    Unknown,
}

impl VsSpec {
    pub fn type_name(&self) -> &'static str {
        match self {
            VsSpec::Explicit(_) => "explicit",
            VsSpec::Thin => "thin",
            VsSpec::LSpace => "lspace",
            VsSpec::MirrorLSpace => "mirror_lspace",
            VsSpec::Unknown => "unknown",
        }
    }
}

/// `K` bounds-sharing data: `K` has a `k`-special friend with s-invariant `friend_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriendshipRecord {
    pub k: u64,
    pub friend_name: String,
    pub friend_s: i64,
}

/// A construction showing the knot is `k`-slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperWitness {
    pub k: u64,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    /// `None` when the signature is not recorded; it then never obstructs.
    pub signature: Option<i64>,
    /// characteristic → `s_p`
    pub s_invariants: BTreeMap<u64, i64>,
    pub tau: Option<i64>,
    pub vs_spec: VsSpec,
    /// symmetric coefficients, exponents `−g … g`
    pub alexander: Option<Vec<i64>>,
    pub clasp_plus: Option<u64>,
    pub slicing_number: Option<u64>,
    pub gamma: BTreeMap<u64, Rational64>,
    pub friends: Vec<FriendshipRecord>,
    pub upper_witnesses: Vec<UpperWitness>,
    pub concordant_to: Option<String>,
    pub connected_sum_of: Option<Vec<String>>,
}

impl KnotRecord {
    pub fn new(name: impl Into<String>) -> Self {
        KnotRecord {
            name: name.into(),
            signature: None,
            s_invariants: BTreeMap::new(),
            tau: None,
            vs_spec: VsSpec::Unknown,
            alexander: None,
            clasp_plus: None,
            slicing_number: None,
            gamma: BTreeMap::new(),
            friends: Vec::new(),
            upper_witnesses: Vec::new(),
            concordant_to: None,
            connected_sum_of: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub field: &'static str,
    pub message: String,
}

impl Diagnostic {
    fn error(field: &'static str, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Error, field, message: message.into() }
    }
    fn warning(field: &'static str, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Warning, field, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{level}: {}: {}", self.field, self.message)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Checks every record invariant. Errors make the record unusable; warnings
/// are informational.
pub fn validate_record(r: &KnotRecord) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if r.name.trim().is_empty() {
        out.push(Diagnostic::error("name", "name must be non-empty"));
    }
    if let Some(sigma) = r.signature {
        if sigma % 2 != 0 {
            out.push(Diagnostic::error("signature", "signature must be even"));
        }
    }
    for (&p, &s) in &r.s_invariants {
        if p != 0 && !is_prime(p) {
            out.push(Diagnostic::error("s_invariants", format!("characteristic {p} is neither 0 nor prime")));
        }
        if s % 2 != 0 {
            out.push(Diagnostic::error("s_invariants", format!("s_{p} = {s} must be even")));
        }
    }
    if let Some(coeffs) = &r.alexander {
        if coeffs.len() % 2 == 0 {
            out.push(Diagnostic::error("alexander", "coefficient list must have odd length"));
        } else if coeffs.iter().zip(coeffs.iter().rev()).any(|(a, b)| a != b) {
            out.push(Diagnostic::error("alexander", "Alexander polynomial must be palindromic"));
        } else if coeffs.iter().sum::<i64>() != 1 {
            out.push(Diagnostic::error("alexander", "Alexander polynomial must satisfy Δ(1) = 1"));
        }
    }
    match &r.vs_spec {
        VsSpec::Thin if r.tau.is_none() => {
            out.push(Diagnostic::error("vs_spec", "thin V_s requires tau"));
        }
        VsSpec::LSpace => match &r.alexander {
            None => out.push(Diagnostic::error("vs_spec", "lspace V_s requires an Alexander polynomial")),
            Some(coeffs) => {
                if let Err(e) = staircase_from_alexander(coeffs) {
                    out.push(Diagnostic::error("vs_spec", e.to_string()));
                }
            }
        },
        VsSpec::Explicit(values) => {
            if values.windows(2).any(|w| w[0] < w[1]) {
                out.push(Diagnostic::error("vs_spec", "V_s must be non-increasing"));
            } else if !VsSequence::from_values(values).has_unit_steps() {
                out.push(Diagnostic::warning("vs_spec", "V_s drops by more than 1"));
            }
        }
        _ => {}
    }
    for (&s, g) in &r.gamma {
        if *g <= Rational64::zero() {
            out.push(Diagnostic::error("gamma", format!("Γ({s}) = {} must be positive", format_rational(g))));
        }
    }
    for f in &r.friends {
        if f.friend_s % 2 != 0 {
            out.push(Diagnostic::error("friends", format!("friend {} has odd s = {}", f.friend_name, f.friend_s)));
        }
    }
    if let Some(parts) = &r.connected_sum_of {
        if parts.is_empty() {
            out.push(Diagnostic::error("connected_sum_of", "summand list must be non-empty"));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DbError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("top level must be an array of knot records")]
    NotAnArray,
    #[error("record {record}: field '{field}': {message}")]
    Field { record: String, field: String, message: String },
    #[error("record {record}: field '{field}': {message}")]
    Invariant { record: String, field: &'static str, message: String },
    #[error("duplicate knot name '{0}'")]
    DuplicateName(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DbWarning {
    pub record: String,
    pub message: String,
}

impl fmt::Display for DbWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "record {}: {}", self.record, self.message)
    }
}

/// Immutable after load; records keep file order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnotDatabase {
    records: IndexMap<String, KnotRecord>,
}

impl KnotDatabase {
    pub fn from_records(records: Vec<KnotRecord>) -> Result<Self, DbError> {
        let mut map = IndexMap::new();
        for r in records {
            if map.contains_key(&r.name) {
                return Err(DbError::DuplicateName(r.name));
            }
            map.insert(r.name.clone(), r);
        }
        Ok(KnotDatabase { records: map })
    }

    pub fn get(&self, name: &str) -> Option<&KnotRecord> {
        self.records.get(name)
    }

    pub fn records(&self) -> impl Iterator<Item = &KnotRecord> {
        self.records.values()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.records.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// References to names not present in the database.
    pub fn dangling_references(&self) -> Vec<DbWarning> {
        let mut out = Vec::new();
        for r in self.records() {
            let mut refs: Vec<(&str, &str)> = Vec::new();
            if let Some(c) = &r.concordant_to {
                refs.push(("concordant_to", c));
            }
            for p in r.connected_sum_of.iter().flatten() {
                refs.push(("connected_sum_of", p));
            }
            for f in &r.friends {
                refs.push(("friends", &f.friend_name));
            }
            for (field, target) in refs {
                if !self.records.contains_key(target) {
                    out.push(DbWarning {
                        record: r.name.clone(),
                        message: format!("{field} refers to unknown knot '{target}'"),
                    });
                }
            }
        }
        out
    }
}

const KNOWN_FIELDS: [&str; 13] = [
    "name",
    "signature",
    "s_invariants",
    "tau",
    "vs_spec",
    "alexander",
    "clasp_plus",
    "slicing_number",
    "gamma",
    "friends",
    "upper_witnesses",
    "concordant_to",
    "connected_sum_of",
];

pub fn parse_knot_db(text: &str) -> Result<KnotDatabase, DbError> {
    parse_knot_db_with_warnings(text).map(|(db, _)| db)
}

/// Parses and validates; warnings cover unknown fields, non-fatal record
/// diagnostics, and dangling cross-references.
pub fn parse_knot_db_with_warnings(text: &str) -> Result<(KnotDatabase, Vec<DbWarning>), DbError> {
    let value: Value = serde_json::from_str(text).map_err(|e| DbError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let Value::Array(items) = value else { return Err(DbError::NotAnArray) };
    let mut warnings = Vec::new();
    let mut records = Vec::with_capacity(items.len());
    for (index, item) in items.iter().enumerate() {
        let record = record_from_value(item, index, &mut warnings)?;
        for d in validate_record(&record) {
            match d.severity {
                Severity::Error => {
                    return Err(DbError::Invariant { record: record.name.clone(), field: d.field, message: d.message })
                }
                Severity::Warning => warnings.push(DbWarning { record: record.name.clone(), message: d.to_string() }),
            }
        }
        records.push(record);
    }
    let db = KnotDatabase::from_records(records)?;
    warnings.extend(db.dangling_references());
    Ok((db, warnings))
}

struct FieldReader<'a> {
    record: String,
    obj: &'a Map<String, Value>,
}

impl<'a> FieldReader<'a> {
    fn err(&self, field: &str, message: impl Into<String>) -> DbError {
        DbError::Field { record: self.record.clone(), field: field.to_string(), message: message.into() }
    }

    fn get(&self, field: &str) -> Option<&'a Value> {
        self.obj.get(field).filter(|v| !v.is_null())
    }

    fn int_value(&self, field: &str, v: &Value) -> Result<i64, DbError> {
        v.as_i64().ok_or_else(|| self.err(field, format!("expected an integer within 64-bit range, got {v}")))
    }

    fn nat_value(&self, field: &str, v: &Value) -> Result<u64, DbError> {
        v.as_u64().ok_or_else(|| self.err(field, format!("expected a non-negative integer, got {v}")))
    }

    fn opt_int(&self, field: &str) -> Result<Option<i64>, DbError> {
        self.get(field).map(|v| self.int_value(field, v)).transpose()
    }

    fn opt_nat(&self, field: &str) -> Result<Option<u64>, DbError> {
        self.get(field).map(|v| self.nat_value(field, v)).transpose()
    }

    fn opt_string(&self, field: &str) -> Result<Option<String>, DbError> {
        self.get(field)
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| self.err(field, "expected a string")))
            .transpose()
    }

    fn array(&self, field: &str) -> Result<&'a [Value], DbError> {
        match self.get(field) {
            None => Ok(&[]),
            Some(Value::Array(a)) => Ok(a),
            Some(_) => Err(self.err(field, "expected an array")),
        }
    }

    fn object(&self, field: &str) -> Result<Option<&'a Map<String, Value>>, DbError> {
        match self.get(field) {
            None => Ok(None),
            Some(Value::Object(m)) => Ok(Some(m)),
            Some(_) => Err(self.err(field, "expected an object")),
        }
    }

    fn key_nat(&self, field: &str, key: &str) -> Result<u64, DbError> {
        key.parse().map_err(|_| self.err(field, format!("key '{key}' is not a non-negative integer")))
    }
}

fn record_from_value(item: &Value, index: usize, warnings: &mut Vec<DbWarning>) -> Result<KnotRecord, DbError> {
    let Value::Object(obj) = item else {
        return Err(DbError::Field {
            record: format!("#{index}"),
            field: "<record>".into(),
            message: "expected an object".into(),
        });
    };
    let name = match obj.get("name") {
        Some(Value::String(s)) => s.clone(),
        _ => {
            return Err(DbError::Field {
                record: format!("#{index}"),
                field: "name".into(),
                message: "missing or non-string name".into(),
            })
        }
    };
    let rd = FieldReader { record: format!("'{name}' (#{index})"), obj };

    for key in obj.keys() {
        if !key.starts_with('_') && !KNOWN_FIELDS.contains(&key.as_str()) {
            warnings.push(DbWarning { record: name.clone(), message: format!("ignoring unknown field '{key}'") });
        }
    }

    let mut r = KnotRecord::new(name);
    r.signature = rd.opt_int("signature")?;
    if let Some(m) = rd.object("s_invariants")? {
        for (key, v) in m {
            let p = rd.key_nat("s_invariants", key)?;
            r.s_invariants.insert(p, rd.int_value("s_invariants", v)?);
        }
    }
    r.tau = rd.opt_int("tau")?;
    r.vs_spec = match rd.object("vs_spec")? {
        None => VsSpec::Unknown,
        Some(m) => {
            let ty = m.get("type").and_then(Value::as_str).ok_or_else(|| rd.err("vs_spec", "missing string 'type'"))?;
            let values = || -> Result<Vec<u64>, DbError> {
                match m.get("values") {
                    None | Some(Value::Null) => Ok(Vec::new()),
                    Some(Value::Array(a)) => a.iter().map(|v| rd.nat_value("vs_spec", v)).collect(),
                    Some(_) => Err(rd.err("vs_spec", "'values' must be an array")),
                }
            };
            match ty {
                "explicit" => VsSpec::Explicit(values()?),
                "thin" => VsSpec::Thin,
                "lspace" => VsSpec::LSpace,
                "mirror_lspace" => VsSpec::MirrorLSpace,
                "unknown" => VsSpec::Unknown,
                other => return Err(rd.err("vs_spec", format!("unknown type '{other}'"))),
            }
        }
    };
    if rd.get("alexander").is_some() {
        let coeffs = rd.array("alexander")?.iter().map(|v| rd.int_value("alexander", v)).collect::<Result<Vec<_>, _>>()?;
        r.alexander = Some(trim_symmetric_zeros(coeffs));
    }
    r.clasp_plus = rd.opt_nat("clasp_plus")?;
    r.slicing_number = rd.opt_nat("slicing_number")?;
    if let Some(m) = rd.object("gamma")? {
        for (key, v) in m {
            let s = rd.key_nat("gamma", key)?;
            let text = v.as_str().ok_or_else(|| rd.err("gamma", "rationals are encoded as \"num/den\" strings"))?;
            let g = parse_rational(text).map_err(|e| rd.err("gamma", e.to_string()))?;
            r.gamma.insert(s, g);
        }
    }
    for f in rd.array("friends")? {
        let Value::Object(fo) = f else { return Err(rd.err("friends", "expected objects")) };
        let fr = FieldReader { record: rd.record.clone(), obj: fo };
        r.friends.push(FriendshipRecord {
            k: fr.opt_nat("k")?.ok_or_else(|| rd.err("friends", "missing k"))?,
            friend_name: fr.opt_string("friend_name")?.ok_or_else(|| rd.err("friends", "missing friend_name"))?,
            friend_s: fr.opt_int("friend_s")?.ok_or_else(|| rd.err("friends", "missing friend_s"))?,
        });
    }
    for w in rd.array("upper_witnesses")? {
        let Value::Object(wo) = w else { return Err(rd.err("upper_witnesses", "expected objects")) };
        let wr = FieldReader { record: rd.record.clone(), obj: wo };
        r.upper_witnesses.push(UpperWitness {
            k: wr.opt_nat("k")?.ok_or_else(|| rd.err("upper_witnesses", "missing k"))?,
            description: wr.opt_string("description")?.unwrap_or_default(),
        });
    }
    r.concordant_to = rd.opt_string("concordant_to")?;
    if rd.get("connected_sum_of").is_some() {
        let parts = rd
            .array("connected_sum_of")?
            .iter()
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| rd.err("connected_sum_of", "expected strings")))
            .collect::<Result<Vec<_>, _>>()?;
        r.connected_sum_of = Some(parts);
    }
    Ok(r)
}

/// Drops zero padding at both ends of an odd-length symmetric list.
fn trim_symmetric_zeros(mut coeffs: Vec<i64>) -> Vec<i64> {
    while coeffs.len() >= 3 && coeffs.len() % 2 == 1 && coeffs[0] == 0 && coeffs[coeffs.len() - 1] == 0 {
        coeffs.pop();
        coeffs.remove(0);
    }
    coeffs
}

/// Canonical JSON form of a record; absent and empty fields are omitted.
pub fn record_to_value(r: &KnotRecord) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), Value::from(r.name.clone()));
    if let Some(s) = r.signature {
        m.insert("signature".into(), Value::from(s));
    }
    if !r.s_invariants.is_empty() {
        let s: Map<String, Value> = r.s_invariants.iter().map(|(p, v)| (p.to_string(), Value::from(*v))).collect();
        m.insert("s_invariants".into(), Value::Object(s));
    }
    if let Some(t) = r.tau {
        m.insert("tau".into(), Value::from(t));
    }
    let mut spec = Map::new();
    spec.insert("type".into(), Value::from(r.vs_spec.type_name()));
    if let VsSpec::Explicit(values) = &r.vs_spec {
        spec.insert("values".into(), Value::from(values.clone()));
    }
    m.insert("vs_spec".into(), Value::Object(spec));
    if let Some(a) = &r.alexander {
        m.insert("alexander".into(), Value::from(a.clone()));
    }
    if let Some(c) = r.clasp_plus {
        m.insert("clasp_plus".into(), Value::from(c));
    }
    if let Some(u) = r.slicing_number {
        m.insert("slicing_number".into(), Value::from(u));
    }
    if !r.gamma.is_empty() {
        let g: Map<String, Value> =
            r.gamma.iter().map(|(s, v)| (s.to_string(), Value::from(format_rational(v)))).collect();
        m.insert("gamma".into(), Value::Object(g));
    }
    if !r.friends.is_empty() {
        let f: Vec<Value> = r
            .friends
            .iter()
            .map(|f| serde_json::json!({"k": f.k, "friend_name": f.friend_name, "friend_s": f.friend_s}))
            .collect();
        m.insert("friends".into(), Value::Array(f));
    }
    if !r.upper_witnesses.is_empty() {
        let w: Vec<Value> = r
            .upper_witnesses
            .iter()
            .map(|w| serde_json::json!({"k": w.k, "description": w.description}))
            .collect();
        m.insert("upper_witnesses".into(), Value::Array(w));
    }
    if let Some(c) = &r.concordant_to {
        m.insert("concordant_to".into(), Value::from(c.clone()));
    }
    if let Some(parts) = &r.connected_sum_of {
        m.insert("connected_sum_of".into(), Value::from(parts.clone()));
    }
    Value::Object(m)
}

pub fn serialize_knot_db(db: &KnotDatabase) -> String {
    let items: Vec<Value> = db.records().map(record_to_value).collect();
    serde_json::to_string_pretty(&Value::Array(items)).expect("JSON values always serialize")
}

/// Names within edit distance of `name`, closest first.
pub fn near_matches<'a>(db: &'a KnotDatabase, name: &str, limit: usize) -> Vec<&'a str> {
    let mut scored: Vec<(usize, &str)> = db
        .names()
        .map(|n| (strsim::levenshtein(&n.to_lowercase(), &name.to_lowercase()), n))
        .filter(|(d, _)| *d <= 2)
        .collect();
    scored.sort();
    let mut seen = BTreeSet::new();
    scored.into_iter().filter(|(_, n)| seen.insert(*n)).take(limit).map(|(_, n)| n).collect()
}
