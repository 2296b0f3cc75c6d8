//! Command-line front end. `run` never exits the process; it returns the exit
//! code so it can be driven from tests.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::engine::{
    beta_table, bound_report, render_table, report_table, upper_bounds, EngineConfig, LevelCertificate, TableFormat,
};
use crate::knot_model::{near_matches, parse_knot_db_with_warnings, KnotDatabase, KnotRecord};
use crate::lattice::{enumerate_classes, HomologyClass};
use crate::obstructions::{friend_rule, null_class_check, ClassChecker, ObstructionKind, ObstructionSet, Verdict, Witness};
use crate::staircase::{
    staircase_from_alexander, torsion_coefficients, vs_lspace_formula, vs_of, vs_staircase_oracle, VsError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "slicedeg", version, about = "Certified bounds on the slicing degree of knots")]
struct Cli {
    /// Knot database (JSON)
    #[arg(long, global = true, value_name = "PATH")]
    db: Option<PathBuf>,
    /// Suppress warnings and notes on stderr
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lower and upper bound for one knot
    Bound {
        name: String,
        #[arg(long, value_name = "N")]
        max_k: Option<u64>,
        /// Comma list drawn from s, vs, gamma, friend
        #[arg(long, value_name = "LIST")]
        obstructions: Option<String>,
        #[arg(long)]
        gamma_c_sweep: bool,
        #[arg(long, value_name = "N", default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// V_s sequence of one knot, from each available route
    Vs {
        name: String,
        #[arg(long, value_name = "N")]
        max_s: Option<u64>,
        #[arg(long, value_enum, default_value_t = Oracle::All)]
        oracle: Oracle,
    },
    /// Homology classes of norm k
    Classes { k: u64 },
    /// Every obstruction's verdict on one class, e.g. `2,1`
    CheckClass {
        name: String,
        #[arg(allow_hyphen_values = true)]
        class: String,
        #[arg(long)]
        gamma_c_sweep: bool,
        #[arg(long)]
        json: bool,
    },
    /// Least k for which the adjunction bound allows beta = 2, 4, ..., max
    BetaTable {
        #[arg(long, default_value_t = 16)]
        max: i64,
    },
    /// Bounds for every knot in the database
    Table {
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        #[arg(long, value_name = "N")]
        max_k: Option<u64>,
        #[arg(long, value_name = "N", default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Oracle {
    Formula,
    Staircase,
    Torsion,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Md,
    Json,
    Text,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    quiet: bool,
}

impl Io<'_> {
    fn warn(&mut self, msg: impl std::fmt::Display) {
        if !self.quiet {
            let _ = writeln!(self.err, "warning: {msg}");
        }
    }

    fn note(&mut self, msg: impl std::fmt::Display) {
        if !self.quiet {
            let _ = writeln!(self.err, "note: {msg}");
        }
    }

    fn error(&mut self, msg: impl std::fmt::Display) {
        let _ = writeln!(self.err, "error: {msg}");
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut io = Io { out, err, quiet: cli.quiet };
    let Some(path) = cli.db.as_ref() else {
        io.error("the --db <PATH> option is required");
        return EXIT_USAGE;
    };
    let db = match load_db(path, &mut io) {
        Ok(db) => db,
        Err(code) => return code,
    };
    match cli.command {
        Command::Bound { name, max_k, obstructions, gamma_c_sweep, jobs, json } => {
            let obstructions = match obstructions.as_deref().map(ObstructionSet::parse).transpose() {
                Ok(set) => set.unwrap_or_default(),
                Err(msg) => {
                    io.error(msg);
                    return EXIT_USAGE;
                }
            };
            let cfg = EngineConfig { max_k, obstructions, gamma_c_sweep, parallelism: jobs };
            cmd_bound(&db, &name, &cfg, json, &mut io)
        }
        Command::Vs { name, max_s, oracle } => cmd_vs(&db, &name, max_s, oracle, &mut io),
        Command::Classes { k } => {
            for c in enumerate_classes(k) {
                let _ = writeln!(io.out, "{c}");
            }
            EXIT_OK
        }
        Command::CheckClass { name, class, gamma_c_sweep, json } => {
            cmd_check_class(&db, &name, &class, gamma_c_sweep, json, &mut io)
        }
        Command::BetaTable { max } => {
            if max < 2 {
                io.error("--max must be at least 2");
                return EXIT_USAGE;
            }
            let betas: Vec<i64> = (2..=max).step_by(2).collect();
            let _ = writeln!(io.out, "beta\tmin_k\tclass");
            for row in beta_table(&betas) {
                let _ = writeln!(io.out, "{}\t{}\t{}", row.beta, row.min_k, row.class);
            }
            EXIT_OK
        }
        Command::Table { format, max_k, jobs } => {
            let cfg = EngineConfig { max_k, parallelism: jobs, ..EngineConfig::default() };
            let (_, cycles) = upper_bounds(&db);
            for w in cycles {
                io.warn(w);
            }
            let rows = report_table(&db, &cfg);
            for row in &rows {
                for n in &row.notes {
                    io.note(format!("{}: {n}", row.name));
                }
            }
            let format = match format {
                Format::Md => TableFormat::Markdown,
                Format::Json => TableFormat::Json,
                Format::Text => TableFormat::Text,
            };
            let _ = write!(io.out, "{}", render_table(&rows, format));
            EXIT_OK
        }
    }
}

fn load_db(path: &PathBuf, io: &mut Io<'_>) -> Result<KnotDatabase, i32> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        io.error(format!("cannot read {}: {e}", path.display()));
        EXIT_DATA
    })?;
    let (db, warnings) = parse_knot_db_with_warnings(&text).map_err(|e| {
        io.error(format!("{}: {e}", path.display()));
        EXIT_DATA
    })?;
    for w in warnings {
        io.warn(w);
    }
    Ok(db)
}

fn lookup<'a>(db: &'a KnotDatabase, name: &str, io: &mut Io<'_>) -> Result<&'a KnotRecord, i32> {
    db.get(name).ok_or_else(|| {
        let near = near_matches(db, name, 5);
        if near.is_empty() {
            io.error(format!("unknown knot '{name}'"));
        } else {
            io.error(format!("unknown knot '{name}'; did you mean: {}", near.join(", ")));
        }
        EXIT_DATA
    })
}

fn cmd_bound(db: &KnotDatabase, name: &str, cfg: &EngineConfig, json: bool, io: &mut Io<'_>) -> i32 {
    let r = match lookup(db, name, io) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let report = bound_report(r, db, cfg);
    for n in &report.notes {
        io.note(n);
    }
    if json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        let _ = writeln!(io.out, "{text}");
        return EXIT_OK;
    }
    let out = &mut io.out;
    let _ = writeln!(out, "knot: {}", report.name);
    let exhausted = if report.lower_exhausted { " (search cap reached)" } else { "" };
    let _ = writeln!(out, "lower: {}{exhausted}", report.lower);
    match (report.upper, &report.upper_witness) {
        (Some(u), Some(w)) => {
            let _ = writeln!(out, "upper: {u} ({w})");
        }
        (Some(u), None) => {
            let _ = writeln!(out, "upper: {u}");
        }
        _ => {
            let _ = writeln!(out, "upper: unknown");
        }
    }
    let _ = writeln!(out, "interval: {}", report.interval);
    if let Some(c) = &report.surviving_class {
        let _ = writeln!(out, "surviving class: {c}");
    }
    for level in &report.certificates {
        let line = match &level.certificate {
            LevelCertificate::NullClass { witness } => format!("null class: {witness}"),
            LevelCertificate::Friend { witness } => format!("friend: {witness}"),
            LevelCertificate::Classes { classes } => {
                let mut kinds: Vec<&str> = classes.iter().map(|c| c.witness.kind().name()).collect();
                kinds.sort_unstable();
                kinds.dedup();
                let noun = if classes.len() == 1 { "class" } else { "classes" };
                format!("{} {noun} obstructed ({})", classes.len(), kinds.join(", "))
            }
        };
        let _ = writeln!(out, "level {}: {line}", level.k);
    }
    EXIT_OK
}

fn fmt_seq(values: &[u64]) -> String {
    let parts: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn cmd_vs(db: &KnotDatabase, name: &str, max_s: Option<u64>, oracle: Oracle, io: &mut Io<'_>) -> i32 {
    let r = match lookup(db, name, io) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let staircase = r.alexander.as_deref().map(staircase_from_alexander);
    let formula = vs_of(r);
    let default_max = {
        let from_formula = formula.as_ref().map(|v| v.values().len() as u64).unwrap_or(0);
        let from_staircase = match &staircase {
            Some(Ok(st)) => st.top(),
            _ => 0,
        };
        from_formula.max(from_staircase)
    };
    let s_max = max_s.unwrap_or(default_max);

    let mut results: Vec<(&str, Result<Vec<u64>, String>)> = Vec::new();
    if matches!(oracle, Oracle::Formula | Oracle::All) {
        let res = match &formula {
            Ok(v) => Ok(v.prefix(s_max)),
            Err(VsError::VsUnavailable(_)) => Err("V_s unknown for this knot".to_string()),
            Err(e) => Err(e.to_string()),
        };
        results.push(("formula", res));
    }
    if matches!(oracle, Oracle::Staircase | Oracle::All) {
        let res = match &staircase {
            None => Err("no Alexander polynomial".to_string()),
            Some(Err(e)) => Err(e.to_string()),
            Some(Ok(st)) => vs_staircase_oracle(st, s_max).map(|v| v.prefix(s_max)).map_err(|e| e.to_string()),
        };
        results.push(("staircase", res));
    }
    if matches!(oracle, Oracle::Torsion | Oracle::All) {
        let res = match (&r.alexander, &staircase) {
            (None, _) => Err("no Alexander polynomial".to_string()),
            (Some(_), Some(Err(e))) => Err(format!("not of L-space form: {e}")),
            (Some(coeffs), _) => (0..=s_max)
                .map(|s| {
                    let t = torsion_coefficients(coeffs, s);
                    u64::try_from(t).map_err(|_| format!("negative torsion coefficient at s = {s}"))
                })
                .collect(),
        };
        results.push(("torsion", res));
    }
    if oracle == Oracle::All {
        // the closed form straight from the staircase, when the record is not an L-space one
        if let (Some(Ok(st)), false) = (&staircase, matches!(r.vs_spec, crate::knot_model::VsSpec::LSpace)) {
            results.push(("lspace", Ok(vs_lspace_formula(st).prefix(s_max))));
        }
    }

    let _ = writeln!(io.out, "knot: {}", r.name);
    let width = results.iter().map(|(n, _)| n.len()).max().unwrap_or(0) + 1;
    for (label, res) in &results {
        let shown = match res {
            Ok(v) => fmt_seq(v),
            Err(e) => format!("unavailable ({e})"),
        };
        let _ = writeln!(io.out, "{:<width$} {shown}", format!("{label}:"));
    }
    let computed: Vec<&Vec<u64>> = results.iter().filter_map(|(_, r)| r.as_ref().ok()).collect();
    if computed.len() >= 2 {
        let agree = computed.windows(2).all(|w| w[0] == w[1]);
        let _ = writeln!(io.out, "agreement: {}", if agree { "yes" } else { "NO" });
        if !agree {
            return EXIT_DATA;
        }
    }
    if computed.is_empty() {
        return EXIT_DATA;
    }
    EXIT_OK
}

fn cmd_check_class(
    db: &KnotDatabase,
    name: &str,
    class_text: &str,
    gamma_c_sweep: bool,
    json: bool,
    io: &mut Io<'_>,
) -> i32 {
    let (class, changed) = match HomologyClass::parse(class_text) {
        Ok(parsed) => parsed,
        Err(e) => {
            io.error(e);
            return EXIT_USAGE;
        }
    };
    let r = match lookup(db, name, io) {
        Ok(r) => r,
        Err(code) => return code,
    };
    if changed {
        io.note(format!("class normalized to {class}"));
    }
    let vs = match vs_of(r) {
        Ok(v) => Some(v),
        Err(VsError::VsUnavailable(_)) => None,
        Err(e) => {
            io.warn(e);
            None
        }
    };
    let k = class.norm() as u64;
    let mut verdicts: Vec<(&str, Verdict)> = Vec::new();
    if class.is_empty() {
        verdicts.push(("null", null_class_check(r, vs.as_ref())));
    } else {
        let checker = ClassChecker::for_record(r, vs, ObstructionSet::all(), gamma_c_sweep);
        verdicts.extend(checker.all_verdicts(class.coords()).into_iter().map(|(kind, v)| (kind.name(), v)));
    }
    let friend = r
        .friends
        .iter()
        .filter(|f| f.k >= k)
        .map(|f| {
            let mut v = friend_rule(f.k, f.friend_s);
            if let Some(Witness::Friend { friend_name, .. }) = v.witness.as_mut() {
                *friend_name = Some(f.friend_name.clone());
            }
            v
        })
        .find(|v| v.obstructed)
        .unwrap_or_else(Verdict::pass);
    verdicts.push((ObstructionKind::Friend.name(), friend));
    let obstructed = verdicts.iter().any(|(_, v)| v.obstructed);

    if json {
        let items: Vec<serde_json::Value> = verdicts
            .iter()
            .map(|(kind, v)| {
                let mut value = serde_json::to_value(v).expect("verdict serializes");
                value["obstruction"] = serde_json::Value::from(*kind);
                value
            })
            .collect();
        let doc = serde_json::json!({
            "knot": r.name,
            "class": class,
            "k": k,
            "obstructed": obstructed,
            "verdicts": items,
        });
        let _ = writeln!(io.out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
        return EXIT_OK;
    }
    let _ = writeln!(io.out, "knot: {}", r.name);
    let _ = writeln!(io.out, "class: {class} (k = {k})");
    for (kind, v) in &verdicts {
        let _ = writeln!(io.out, "{kind}: {v}");
    }
    let _ = writeln!(io.out, "result: {}", if obstructed { "obstructed" } else { "not obstructed" });
    EXIT_OK
}
