use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};

use serde::Serialize;
use serde_json::{json, Value};

use dha_core::binom2;
use dha_core::dyck::{coefficient_grid, enumerate, grid_entries, qt_catalan, StatPair};
use dha_core::harmonics::{
    allen_basis, alt_rank, discarded_pairs, exclusion_contradictions, musum_catalan, qseries_laurent,
    starter_count_moments, starter_counts_qseries, starter_grid_from_catalan, theorem21_prune, LexOrder, Harmonics,
    StringStarter,
};
use dha_core::operators::{commutator_suite, harmonicity_suite, AltPoly, OperatorWord};
use dha_core::partitions::{partitions_of, PartitionFilter};
use dha_core::sampling::seeded_polys;

use crate::{Cli, Command, Method, Order, Stat, Suite};

/// Generators `E(r,s)`, `F(r,s)` with `r+s` up to this are exercised by the suites.
const SUITE_MAX_TOTAL: u16 = 3;
/// The property suites expand polynomials fully, so they stay small.
const EXPANDED_MAX_N: usize = 5;

pub struct Output {
    pub command: &'static str,
    pub params: Value,
    pub payload: Value,
    pub table: String,
    pub passed: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(m) => write!(f, "{m}"),
        }
    }
}

impl From<dha_core::error::Error> for CliError {
    fn from(e: dha_core::error::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload types serialize")
}

/// Big integers become JSON numbers of any length.
fn int(v: &impl Display) -> Value {
    Value::Number(v.to_string().parse().expect("integer literal"))
}

fn check_n(n: usize, lo: usize, cap: usize, what: &str) -> Result<()> {
    if n < lo || n > cap {
        return Err(CliError::Usage(format!("{what} needs {lo} <= n <= {cap}, got n={n}")));
    }
    Ok(())
}

fn harmonics(cli: &Cli, n: usize) -> Result<Harmonics> {
    Ok(Harmonics::new(n)?.with_cache_dir(cli.cache_dir.clone()))
}

pub fn run(cli: &Cli) -> Result<Output> {
    match cli.command {
        Command::Qtcatalan { n, stat } => qtcatalan(cli, n, stat),
        Command::Starters { n, method, expand } => starters(cli, n, method, expand),
        Command::Basis { n, bidegree, all, allen, order } => basis(cli, n, bidegree, all, allen, order),
        Command::Verify { n, suite, samples } => verify(cli, n, suite, samples),
        Command::Musum { n } => musum(cli, n),
        Command::Dyck { n } => dyck(cli, n),
        Command::Partitions { n, max_part, length, staircase } => partitions(cli, n, max_part, length, staircase),
    }
}

fn grid_table(grid: &BTreeMap<(usize, usize), u64>) -> String {
    let top_a = grid.keys().map(|k| k.0).max().unwrap_or(0);
    let top_b = grid.keys().map(|k| k.1).max().unwrap_or(0);
    let mut s = String::from("b\\a");
    for a in 0..=top_a {
        write!(s, "\t{a}").unwrap();
    }
    s.push('\n');
    for b in 0..=top_b {
        write!(s, "{b}").unwrap();
        for a in 0..=top_a {
            match grid.get(&(a, b)) {
                Some(c) => write!(s, "\t{c}").unwrap(),
                None => s.push_str("\t."),
            }
        }
        s.push('\n');
    }
    s
}

fn qtcatalan(cli: &Cli, n: usize, stat: Stat) -> Result<Output> {
    check_n(n, 1, cli.max_n, "qtcatalan")?;
    let pair = match stat {
        Stat::Bounce => StatPair::AreaBounce,
        Stat::Dinv => StatPair::AreaDinv,
    };
    let poly = qt_catalan(n, pair);
    let grid = dha_core::dyck::grid_of(&poly);
    let total = poly.coefficient_sum();
    let table = format!("c_{n}(q,t) = {poly}\ntotal {total}\n{}", grid_table(&grid));
    Ok(Output {
        command: "qtcatalan",
        params: json!({ "n": n, "stat": if stat == Stat::Bounce { "bounce" } else { "dinv" } }),
        payload: json!({ "n": n, "total": int(&total), "polynomial": to_value(&poly), "grid": to_value(&grid_entries(&grid)) }),
        table,
        passed: true,
    })
}

fn by_length_value(c: &BTreeMap<usize, String>) -> Value {
    Value::Array(c.iter().map(|(r, k)| json!({ "r": r, "count": int(k) })).collect())
}

fn alternant_value(p: &AltPoly) -> Value {
    Value::Array(
        p.terms().map(|(m, c)| json!({ "x": m.x_exps(), "y": m.y_exps(), "c": int(c) })).collect(),
    )
}

fn starter_label(s: &StringStarter) -> String {
    let mut out = String::new();
    for (i, (c, w)) in s.coefs.iter().zip(&s.words).enumerate() {
        let c = c.to_string();
        let (sign, mag) = match c.strip_prefix('-') {
            Some(m) => ("-", m),
            None => ("+", c.as_str()),
        };
        match (i, sign) {
            (0, "-") => out.push('-'),
            (0, _) => {}
            _ => write!(out, " {sign} ").unwrap(),
        }
        let word = OperatorWord::from_partition(w).to_string();
        if word.is_empty() {
            write!(out, "{mag}*Delta").unwrap();
        } else {
            write!(out, "{mag}*{word} Delta").unwrap();
        }
    }
    out
}

fn starters(cli: &Cli, n: usize, method: Method, expand: bool) -> Result<Output> {
    let name = match method {
        Method::Grid => "grid",
        Method::Qseries => "qseries",
        Method::Moments => "moments",
        Method::Kernel => "kernel",
    };
    let lo = if matches!(method, Method::Qseries | Method::Moments) { 2 } else { 1 };
    let cap = if method == Method::Kernel { cli.span_max_n.min(cli.max_n) } else { cli.max_n };
    check_n(n, lo, cap, &format!("--method {name}"))?;
    if expand && method != Method::Kernel {
        return Err(CliError::Usage("--expand only applies to --method kernel".into()));
    }
    let mut payload = serde_json::Map::new();
    let mut table = String::new();
    let by_length: BTreeMap<usize, String>;
    match method {
        Method::Grid => {
            let g = starter_grid_from_catalan(n)?;
            by_length = g.c.iter().map(|(&r, c)| (r, c.to_string())).collect();
            let cells: Vec<Value> = g.b.iter().map(|(&(u, v), c)| json!({ "u": u, "v": v, "count": c })).collect();
            for (&(u, v), c) in &g.b {
                writeln!(table, "({u},{v})\t{c}").unwrap();
            }
            payload.insert("by_bidegree".into(), Value::Array(cells));
        }
        Method::Qseries => {
            by_length = starter_counts_qseries(n)?.into_iter().map(|(r, c)| (r, c.to_string())).collect();
            let series = qseries_laurent(n)?;
            writeln!(table, "series {series}").unwrap();
            payload.insert("series".into(), to_value(&series));
        }
        Method::Moments => {
            by_length = starter_count_moments(n)?.into_iter().map(|(r, c)| (r, c.to_string())).collect();
        }
        Method::Kernel => {
            let mut h = harmonics(cli, n)?;
            let all = h.all_starters()?;
            let mut lengths: BTreeMap<usize, u64> = BTreeMap::new();
            let mut cells: BTreeMap<(usize, usize), u64> = BTreeMap::new();
            let mut list = Vec::new();
            for s in &all {
                *lengths.entry(s.length()).or_default() += 1;
                *cells.entry((s.u, s.v)).or_default() += 1;
                writeln!(table, "({},{})\tlength {}\t{}", s.u, s.v, s.length(), starter_label(s)).unwrap();
                let mut entry = json!({
                    "u": s.u,
                    "v": s.v,
                    "length": s.length(),
                    "words": to_value(&s.words),
                    "coefs": Value::Array(s.coefs.iter().map(int).collect()),
                    "alternant": alternant_value(&s.v0),
                });
                if expand {
                    entry["polynomial"] = to_value(&s.v0.expand());
                }
                list.push(entry);
            }
            by_length = lengths.into_iter().map(|(r, c)| (r, c.to_string())).collect();
            let cells: Vec<Value> = cells.iter().map(|(&(u, v), c)| json!({ "u": u, "v": v, "count": c })).collect();
            payload.insert("by_bidegree".into(), Value::Array(cells));
            payload.insert("starters".into(), Value::Array(list));
        }
    }
    let total: u64 = by_length.values().map(|c| c.parse::<u64>().expect("small count")).sum();
    for (r, c) in &by_length {
        writeln!(table, "length {r}\t{c}").unwrap();
    }
    writeln!(table, "total\t{total}").unwrap();
    payload.insert("n".into(), json!(n));
    payload.insert("total".into(), json!(total));
    payload.insert("by_length".into(), by_length_value(&by_length));
    Ok(Output {
        command: "starters",
        params: json!({ "n": n, "method": name, "expand": expand }),
        payload: Value::Object(payload),
        table,
        passed: true,
    })
}

fn allen_order(order: Order) -> (LexOrder, &'static str) {
    match order {
        Order::Decreasing => (LexOrder::DecreasingLex, "decreasing"),
        Order::Increasing => (LexOrder::IncreasingLex, "increasing"),
    }
}

fn basis(
    cli: &Cli,
    n: usize,
    bidegree: Option<(usize, usize)>,
    all: bool,
    allen: bool,
    order: Order,
) -> Result<Output> {
    check_n(n, 1, cli.span_max_n.min(cli.max_n), "basis")?;
    if !allen && !all && bidegree.is_none() {
        return Err(CliError::Usage("give --bidegree a,b or --all".into()));
    }
    let mut params = json!({ "n": n, "allen": allen });
    if let Some((a, b)) = bidegree {
        params["bidegree"] = json!([a, b]);
    }
    let mut table = String::new();
    if allen {
        let (ord, ord_name) = allen_order(order);
        params["order"] = json!(ord_name);
        let elements: Vec<_> = allen_basis(n, ord)?
            .into_iter()
            .filter(|e| bidegree.is_none_or(|(a, b)| (e.a, e.b) == (a, b)))
            .collect();
        for e in &elements {
            writeln!(table, "({},{})\tlambda {}", e.a, e.b, e.lambda).unwrap();
        }
        writeln!(table, "total\t{}", elements.len()).unwrap();
        return Ok(Output {
            command: "basis",
            params,
            payload: json!({ "n": n, "total": elements.len(), "elements": to_value(&elements) }),
            table,
            passed: true,
        });
    }
    let mut h = harmonics(cli, n)?;
    let degrees = match bidegree {
        Some(d) => vec![d],
        None => h.bidegrees().into_iter().filter(|&(a, b)| h.target(a, b) > 0).collect(),
    };
    let mut records = Vec::new();
    let mut total = 0;
    for (a, b) in degrees {
        let rec = h.record(a, b)?;
        let words: Vec<String> = rec.selected.iter().map(ToString::to_string).collect();
        writeln!(table, "({a},{b})\tdim {}\t{}", rec.dim, words.join(" ")).unwrap();
        total += rec.dim;
        records.push(rec);
    }
    writeln!(table, "total\t{total}").unwrap();
    let payload = match bidegree {
        Some(_) => to_value(&records[0]),
        None => json!({ "n": n, "total": total, "bidegrees": to_value(&records) }),
    };
    Ok(Output { command: "basis", params, payload, table, passed: true })
}

struct SuiteResult {
    name: &'static str,
    failures: Vec<String>,
    summary: Value,
}

fn suite_commutators(cli: &Cli, n: usize, samples: usize) -> Result<SuiteResult> {
    let polys = seeded_polys(n, cli.seed, samples);
    let rep = commutator_suite(SUITE_MAX_TOTAL, &polys)?;
    Ok(SuiteResult {
        name: "commutators",
        summary: json!({ "checks": rep.checks, "samples": samples, "max_index_sum": SUITE_MAX_TOTAL }),
        failures: rep.failures,
    })
}

fn suite_harmonicity(n: usize) -> Result<SuiteResult> {
    let rep = harmonicity_suite(n, SUITE_MAX_TOTAL)?;
    Ok(SuiteResult {
        name: "harmonicity",
        summary: json!({ "checks": rep.checks, "max_index_sum": SUITE_MAX_TOTAL }),
        failures: rep.failures,
    })
}

fn suite_sl2(cli: &Cli, n: usize) -> Result<SuiteResult> {
    let rep = harmonics(cli, n)?.verify_sl2()?;
    Ok(SuiteResult {
        name: "sl2",
        summary: json!({ "strings": rep.strings.len(), "total_rank": rep.total_rank, "detail": to_value(&rep.strings) }),
        failures: rep.failures,
    })
}

fn suite_musum(n: usize) -> Result<SuiteResult> {
    let rep = musum_catalan(n)?;
    Ok(SuiteResult {
        name: "musum",
        summary: json!({ "points": rep.points, "skipped": rep.skipped }),
        failures: rep.mismatches.iter().map(|(at, what)| format!("{at}: {what}")).collect(),
    })
}

/// The co-partition basis must hit the q,t-Catalan grid with independent
/// elements, and the words excluded from level `n-1` must not be needed for
/// the starters at level `n`.
fn suite_allen(n: usize) -> Result<SuiteResult> {
    let mut failures = Vec::new();
    let mut elements = 0;
    match allen_basis(n, LexOrder::DecreasingLex) {
        Ok(basis) => {
            elements = basis.len();
            let mut by_degree: BTreeMap<(usize, usize), Vec<AltPoly>> = BTreeMap::new();
            for e in basis {
                by_degree.entry((e.a, e.b)).or_default().push(e.alt);
            }
            let counts: BTreeMap<(usize, usize), u64> =
                by_degree.iter().map(|(&k, v)| (k, v.len() as u64)).collect();
            if counts != coefficient_grid(n) {
                failures.push("element counts differ from the q,t-Catalan grid".into());
            }
            for ((a, b), polys) in &by_degree {
                let r = alt_rank(polys);
                if r != polys.len() {
                    failures.push(format!("({a},{b}): {} elements but rank {r}", polys.len()));
                }
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    let mut exclusions = 0;
    if n >= 2 {
        // of each dependent pair at level n-1 the lexicographically larger word is dropped
        let ex = theorem21_prune(n, &discarded_pairs(n - 1, LexOrder::IncreasingLex)?);
        exclusions = ex.len();
        for c in exclusion_contradictions(n, &ex)? {
            let words: Vec<String> = c.excluded.iter().map(ToString::to_string).collect();
            failures.push(format!(
                "({},{}): without {} only {} of {} starters remain",
                c.a,
                c.b,
                words.join(" "),
                c.reachable,
                c.starters
            ));
        }
    }
    Ok(SuiteResult { name: "allen", summary: json!({ "elements": elements, "exclusions_checked": exclusions }), failures })
}

fn verify(cli: &Cli, n: usize, suite: Suite, samples: usize) -> Result<Output> {
    check_n(n, 1, cli.max_n, "verify")?;
    let span_cap = cli.span_max_n.min(cli.max_n);
    let wanted: Vec<Suite> = match suite {
        Suite::All => vec![Suite::Commutators, Suite::Harmonicity, Suite::Sl2, Suite::Musum, Suite::Allen],
        s => vec![s],
    };
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    for s in wanted {
        let cap = match s {
            Suite::Commutators | Suite::Harmonicity => EXPANDED_MAX_N,
            Suite::Sl2 | Suite::Allen => span_cap,
            _ => cli.max_n,
        };
        let name = format!("{s:?}").to_lowercase();
        if n > cap {
            if suite == Suite::All {
                skipped.push(json!({ "suite": name, "reason": format!("n > {cap}") }));
                continue;
            }
            check_n(n, 1, cap, &format!("--suite {name}"))?;
        }
        results.push(match s {
            Suite::Commutators => suite_commutators(cli, n, samples)?,
            Suite::Harmonicity => suite_harmonicity(n)?,
            Suite::Sl2 => suite_sl2(cli, n)?,
            Suite::Musum => suite_musum(n)?,
            Suite::Allen => suite_allen(n)?,
            Suite::All => unreachable!(),
        });
    }
    let passed = results.iter().all(|r| r.failures.is_empty());
    let mut table = String::new();
    for r in &results {
        let mark = if r.failures.is_empty() { "PASS" } else { "FAIL" };
        writeln!(table, "[{mark}] {}", r.name).unwrap();
        for f in &r.failures {
            writeln!(table, "    {f}").unwrap();
        }
    }
    for s in &skipped {
        writeln!(table, "[SKIP] {} ({})", s["suite"].as_str().unwrap_or(""), s["reason"].as_str().unwrap_or("")).unwrap();
    }
    let suites: Vec<Value> = results
        .into_iter()
        .map(|r| json!({ "suite": r.name, "passed": r.failures.is_empty(), "failures": r.failures, "summary": r.summary }))
        .collect();
    let name = format!("{suite:?}").to_lowercase();
    Ok(Output {
        command: "verify",
        params: json!({ "n": n, "suite": name, "seed": cli.seed, "samples": samples }),
        payload: json!({ "n": n, "passed": passed, "suites": suites, "skipped": skipped }),
        table,
        passed,
    })
}

fn musum(cli: &Cli, n: usize) -> Result<Output> {
    check_n(n, 1, cli.max_n, "musum")?;
    let rep = musum_catalan(n)?;
    let passed = rep.passed();
    let table = format!(
        "n={n}\tpoints {}\tskipped {}\tmismatches {}\n",
        rep.points,
        rep.skipped,
        rep.mismatches.len()
    );
    let mut payload = to_value(&rep);
    payload["passed"] = json!(passed);
    Ok(Output { command: "musum", params: json!({ "n": n }), payload, table, passed })
}

fn dyck(cli: &Cli, n: usize) -> Result<Output> {
    check_n(n, 0, cli.max_n, "dyck")?;
    let paths = enumerate(n);
    let mut table = String::from("d\tarea\tbounce\tdinv\n");
    let list: Vec<Value> = paths
        .iter()
        .map(|p| {
            let st = p.stats();
            let d: Vec<String> = p.abscissas().iter().map(ToString::to_string).collect();
            writeln!(table, "{}\t{}\t{}\t{}", d.join(" "), st.area, st.bounce, st.dinv).unwrap();
            json!({ "d": p.abscissas(), "area": st.area, "bounce": st.bounce, "dinv": st.dinv })
        })
        .collect();
    Ok(Output {
        command: "dyck",
        params: json!({ "n": n }),
        payload: json!({ "n": n, "count": list.len(), "paths": list }),
        table,
        passed: true,
    })
}

fn partitions(
    cli: &Cli,
    n: usize,
    max_part: Option<usize>,
    length: Option<usize>,
    staircase: Option<usize>,
) -> Result<Output> {
    // partitions of C(max_n, 2) are the largest the span commands ever need
    let cap = binom2(cli.max_n).max(cli.max_n);
    check_n(n, 0, cap, "partitions")?;
    let mut filter = PartitionFilter::default();
    if let Some(m) = max_part {
        filter = filter.max_part(m);
    }
    if let Some(l) = length {
        filter = filter.length(l);
    }
    if let Some(m) = staircase {
        filter = filter.staircase(m);
    }
    let list = partitions_of(n, filter);
    let table: String = list.iter().map(|p| format!("{p}\n")).collect();
    Ok(Output {
        command: "partitions",
        params: json!({ "n": n, "max_part": max_part, "length": length, "staircase": staircase }),
        payload: json!({ "n": n, "count": list.len(), "partitions": to_value(&list) }),
        table,
        passed: true,
    })
}
