//! The `covertqft` command line. [`run`] does everything except touch the
//! process streams, so it can be driven from tests.

mod args;
mod suites;
mod text;

use std::ffi::OsString;

use clap::Parser;
use serde_json::{json, Value};

pub use args::{Cli, Format};
use args::{AntidArgs, CacheCmd, Command, CycapArgs, HurwitzArgs, InvariantMode, Level00Args, Side};

use crate::error::{Error, Result};
use crate::exactalg::{fmt_rational, parse_rational, GaussianRational, QRatFunc, SFactor};
use crate::hurwitz::{
    cached_hurwitz, clear_hurwitz_cache, hurwitz_bruteforce, hurwitz_cached, BranchData, HurwitzRecord,
};
use crate::partitions::{enumerate, Partition};
use crate::symchar::{cache_dir, cached_degrees, character_table, clear_cache, set_cache_dir, CacheSetting};
use crate::theoryu::{
    antid_closed, cy_cap_side, level00_coefficient, pair_series, AntidiagValue, CapSide, FullTorusSeries, InvariantKey,
    InvariantRecord,
};

/// Largest `d` accepted by `partitions`.
pub const MAX_PARTITION_DEGREE: u32 = 20;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Exit status and what would go to stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// One command's result in every format it supports.
pub(crate) struct Report {
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
    pub passed: bool,
    /// First failing check, reported on stderr.
    pub failure: Option<String>,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, csv: None, passed: true, failure: None }
    }
}

/// Parse `args` (program name first) and execute.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let msg = e.render().to_string();
            if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: msg }
            } else {
                Outcome { code: EXIT_OK, stdout: msg, stderr: String::new() }
            }
        }
    }
}

fn usage(msg: impl Into<String>) -> Outcome {
    Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
}

/// Errors from bad input exit with the usage code, the rest as failures.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::DegreeMismatch(_)
        | Error::InvalidArgument(_)
        | Error::OracleBoundExceeded(_)
        | Error::Variance(_) => EXIT_USAGE,
        _ => EXIT_VERIFICATION,
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let csv_ok = matches!(cli.command, Command::Partitions { .. } | Command::Chartable { .. });
    if cli.format == Format::Csv && !csv_ok {
        return usage("--format csv is only available for `partitions` and `chartable`");
    }
    if cli.no_cache {
        set_cache_dir(CacheSetting::Disabled);
    } else if let Some(dir) = &cli.cache_dir {
        set_cache_dir(CacheSetting::Dir(dir.clone()));
    } else {
        set_cache_dir(CacheSetting::FromEnv);
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j as usize);
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| dispatch(&cli.command)),
        Err(e) => Err(Error::invalid(format!("cannot start worker pool: {e}"))),
    };
    emit(cli.format, result)
}

fn emit(format: Format, result: Result<Report>) -> Outcome {
    match result {
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
        Ok(r) => {
            let stdout = match format {
                Format::Json => serde_json::to_string_pretty(&r.json).expect("JSON values serialize") + "\n",
                Format::Text => r.text,
                Format::Csv => r.csv.unwrap_or_default(),
            };
            let (code, stderr) = if r.passed {
                (EXIT_OK, String::new())
            } else {
                (EXIT_VERIFICATION, format!("FAIL: {}\n", r.failure.unwrap_or_else(|| "verification failed".into())))
            };
            Outcome { code, stdout, stderr }
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Partitions { d } => cmd_partitions(*d),
        Command::Chartable { d } => cmd_chartable(*d),
        Command::Hurwitz(a) => cmd_hurwitz(a),
        Command::Invariant(InvariantMode::Antid(a)) => cmd_antid(a),
        Command::Invariant(InvariantMode::Cycap(a)) => cmd_cycap(a),
        Command::Invariant(InvariantMode::Pants(a)) => cmd_pants(a.d, a.order),
        Command::Invariant(InvariantMode::Level00(a)) => cmd_level00(a),
        Command::Verify(s) => suites::run_suite(s),
        Command::Cache(c) => cmd_cache(c),
    }
}

fn parse_classes(list: &[String]) -> Result<Vec<Partition>> {
    list.iter().map(|s| Partition::parse(s)).collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_partitions(d: u32) -> Result<Report> {
    if d > MAX_PARTITION_DEGREE {
        return Err(Error::invalid(format!("partitions are listed for d <= {MAX_PARTITION_DEGREE}")));
    }
    let mut rows = Vec::new();
    let mut text_rows = Vec::new();
    let mut csv = String::from("partition,hooklengths,content,n,dim,q_dim\n");
    for p in enumerate(d) {
        let st = p.cell_stats();
        let (dim, qd) = (p.dim().to_string(), p.q_dim().to_string());
        rows.push(json!({
            "partition": p,
            "hooklengths": st.hooklengths,
            "content": st.total_content,
            "n": st.n_value,
            "dim": dim,
            "q_dim": qd,
        }));
        let cells = vec![
            p.to_plus_string(),
            join(&st.hooklengths),
            st.total_content.to_string(),
            st.n_value.to_string(),
            dim,
            qd,
        ];
        csv.push_str(&format!(
            "{},\"{}\",{},{},{},\"{}\"\n",
            cells[0], cells[1], cells[2], cells[3], cells[4], cells[5]
        ));
        text_rows.push(cells);
    }
    let n = rows.len();
    let text = text::aligned(&["partition", "hooklengths", "content", "n", "dim", "q_dim"], &text_rows);
    let mut r = Report::ok(json!({"d": d, "count": n, "partitions": rows}), text);
    r.csv = Some(csv);
    Ok(r)
}

fn cmd_chartable(d: u32) -> Result<Report> {
    let t = character_table(d)?;
    let json = json!({"d": d, "rows": t.rows, "cols": t.cols, "entries": t.entries});
    let mut headers = vec!["rho\\eta".to_string()];
    headers.extend(t.cols.iter().map(Partition::to_plus_string));
    let rows: Vec<Vec<String>> = t
        .rows
        .iter()
        .zip(&t.entries)
        .map(|(rho, e)| std::iter::once(rho.to_plus_string()).chain(e.iter().map(i64::to_string)).collect())
        .collect();
    let h: Vec<&str> = headers.iter().map(String::as_str).collect();
    let mut r = Report::ok(json, text::aligned(&h, &rows));
    r.csv = Some(t.to_csv());
    Ok(r)
}

fn cmd_hurwitz(a: &HurwitzArgs) -> Result<Report> {
    let b = BranchData::new(a.d, a.g, parse_classes(&a.classes)?, a.simple)?;
    let (v, method) = if a.bruteforce {
        (hurwitz_bruteforce(&b, a.connected)?, "bruteforce")
    } else {
        (hurwitz_cached(&b, a.connected)?, "frobenius")
    };
    let rec = HurwitzRecord::new(&b, &v);
    let mut json = serde_json::to_value(&rec)?;
    json["method"] = json!(method);
    let text = text::fields(&[
        ("d", rec.d.to_string()),
        ("g", rec.g.to_string()),
        ("classes", rec.classes.iter().map(Partition::to_plus_string).collect::<Vec<_>>().join(" ")),
        ("simple", rec.s.to_string()),
        ("connected", rec.connected.to_string()),
        ("method", method.into()),
        ("cover genus", rec.cover_genus.map_or("-".into(), |h| h.to_string())),
        ("value", rec.value.clone()),
    ]);
    Ok(Report::ok(json, text))
}

fn fmt_coeff_times(c: &GaussianRational, s: &str) -> String {
    let bare = c.to_string();
    let wrapped = if c.re != num_traits::Zero::zero() && c.im != num_traits::Zero::zero() {
        format!("({bare})")
    } else {
        bare
    };
    if c.is_one() {
        s.to_string()
    } else if (-c).is_one() {
        format!("-{s}")
    } else {
        format!("{wrapped}*{s}")
    }
}

/// Canonical one-line rendering, e.g. `-s^-2` or `s^-4 * (…)`.
pub fn render_value(v: &AntidiagValue) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let q: QRatFunc = v.q_part.scale(&v.s_factor.unit_value());
    let k = v.s_factor.exponent;
    let s = SFactor::s_pow(k).to_string();
    match q.as_constant() {
        Some(c) if k == 0 => c.to_string(),
        Some(c) => fmt_coeff_times(&c, &s),
        None if k == 0 => q.to_string(),
        None => format!("{s} * ({q})"),
    }
}

fn cmd_antid(a: &AntidArgs) -> Result<Report> {
    if a.order < 0 {
        return Err(Error::invalid("--order must be non-negative"));
    }
    let key = InvariantKey {
        d: a.d,
        g: a.g,
        k1: a.k1,
        k2: a.k2,
        inputs: parse_classes(&a.inputs)?,
        outputs: parse_classes(&a.outputs)?,
    };
    let closed = key.inputs.is_empty() && key.outputs.is_empty();
    let v = if closed { antid_closed(a.d, a.g, a.k1, a.k2)? } else { key.engine_value()? };
    let order = a.as_u_series.then_some(a.order);
    let rec = InvariantRecord::from_value(key, &v, order)?;
    let mut json = serde_json::to_value(&rec)?;
    json["value"] = json!(render_value(&v));
    let mut lines = vec![
        ("d", a.d.to_string()),
        ("g", a.g.to_string()),
        ("levels", format!("({},{})", a.k1, a.k2)),
    ];
    if !closed {
        lines.push(("inputs", join(&rec.key.inputs.iter().map(Partition::to_plus_string).collect::<Vec<_>>())));
        lines.push(("outputs", join(&rec.key.outputs.iter().map(Partition::to_plus_string).collect::<Vec<_>>())));
    }
    lines.push(("value", render_value(&v)));
    if let Some(u) = &rec.u_series {
        lines.push(("u-series", format!("{} * ({u})", SFactor::s_pow(v.s_factor.exponent))));
    }
    if let Some(x) = &a.at_q {
        let xq: GaussianRational = parse_rational(x)?.into();
        let c = if v.is_zero() {
            GaussianRational::zero()
        } else {
            &v.q_part.eval_at_big_q(&xq)? * &v.s_factor.unit_value()
        };
        let k = v.s_factor.exponent;
        let shown = if c.is_zero() {
            "0".to_string()
        } else if k == 0 {
            c.to_string()
        } else {
            fmt_coeff_times(&c, &SFactor::s_pow(k).to_string())
        };
        json["at_Q"] = json!({"Q": fmt_rational(&parse_rational(x)?), "value": shown});
        lines.push(("at Q", fmt_rational(&parse_rational(x)?)));
        lines.push(("value at Q", shown));
    }
    Ok(Report::ok(json, text::fields(&lines)))
}

fn series_json(d: u32, order: i64, extra: Value, s: &FullTorusSeries) -> Value {
    let mut j = json!({
        "d": d,
        "order": order,
        "s_part": s.s_part.to_string(),
        "u_series": s.u_part.to_string(),
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut j, extra) {
        m.extend(e);
    }
    j
}

fn cmd_cycap(a: &CycapArgs) -> Result<Report> {
    let eta = Partition::parse(&a.eta)?;
    let (side, level) = match a.side {
        Side::S1 => (CapSide::ZeroMinusOne, "(0,-1)"),
        Side::S2 => (CapSide::MinusOneZero, "(-1,0)"),
    };
    let s = cy_cap_side(a.d, &eta, side, a.order)?.normalized();
    let json = series_json(a.d, a.order, json!({"eta": eta, "level": level}), &s);
    let text = text::fields(&[
        ("d", a.d.to_string()),
        ("eta", eta.to_plus_string()),
        ("level", level.into()),
        ("value", s.to_string()),
    ]);
    Ok(Report::ok(json, text))
}

fn cmd_pants(d: u32, order: i64) -> Result<Report> {
    let s = pair_series(d, order)?;
    let json = series_json(d, order, json!({}), &s);
    let text = text::fields(&[("d", d.to_string()), ("value", s.to_string())]);
    Ok(Report::ok(json, text))
}

fn cmd_level00(a: &Level00Args) -> Result<Report> {
    let classes = parse_classes(&a.classes)?;
    let v = level00_coefficient(a.d, a.g, &classes)?;
    let json = json!({
        "d": a.d,
        "g": a.g,
        "classes": classes,
        "s_exponent": (!v.is_zero()).then_some(v.s_factor.exponent),
        "q_rational": v.q_part.to_string(),
        "value": render_value(&v),
    });
    let text = text::fields(&[
        ("d", a.d.to_string()),
        ("g", a.g.to_string()),
        ("classes", classes.iter().map(Partition::to_plus_string).collect::<Vec<_>>().join(" ")),
        ("value", render_value(&v)),
    ]);
    Ok(Report::ok(json, text))
}

fn cmd_cache(c: &CacheCmd) -> Result<Report> {
    let dir = cache_dir();
    let shown = dir.as_ref().map(|p| p.display().to_string());
    match c {
        CacheCmd::Path => {
            let text = format!("{}\n", shown.clone().unwrap_or_else(|| "(no disk cache)".into()));
            Ok(Report::ok(json!({"dir": shown}), text))
        }
        CacheCmd::List => {
            let (tables, values) = match &dir {
                Some(p) => (cached_degrees(p), cached_hurwitz(p)),
                None => (Vec::new(), Vec::new()),
            };
            let mut text = format!("dir  {}\n", shown.clone().unwrap_or_else(|| "(no disk cache)".into()));
            text.push_str(&format!("character tables  {}\n", join(&tables)));
            let rows: Vec<Vec<String>> = values
                .iter()
                .map(|e| {
                    vec![
                        e.d.to_string(),
                        e.g.to_string(),
                        e.classes.iter().map(Partition::to_plus_string).collect::<Vec<_>>().join(" "),
                        e.s.to_string(),
                        e.connected.to_string(),
                        e.value.clone(),
                    ]
                })
                .collect();
            if !rows.is_empty() {
                text.push_str(&text::aligned(&["d", "g", "classes", "s", "connected", "value"], &rows));
            }
            Ok(Report::ok(json!({"dir": shown, "chartables": tables, "hurwitz": values}), text))
        }
        CacheCmd::Clear => {
            let (t, h) = match &dir {
                Some(p) => (clear_cache(p)?, clear_hurwitz_cache(p)?),
                None => (0, 0),
            };
            let text = format!("removed {t} character tables and {h} Hurwitz values\n");
            Ok(Report::ok(json!({"dir": shown, "chartables_removed": t, "hurwitz_removed": h}), text))
        }
    }
}
