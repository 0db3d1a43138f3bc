//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed self-check, 2 usage error, 3 domain
//! error, 4 budget exceeded. Results go to stdout, diagnostics to stderr.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::ktheory::{self, AbelianGroup, ProblemSpec, DEFAULT_BUDGET};
use crate::lattice;
use crate::truncation::{closure, sq_set, Point, TruncationSet};
use crate::witt::{assemble, p_typical_split, WittVector};
use crate::zrank;

#[derive(Parser, Debug)]
#[command(name = "truncwitt", version, about = "Witt vectors on truncation sets and K-groups of truncated polynomial rings")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate or validate truncation sets
    #[command(subcommand)]
    Trunc(TruncCmd),
    /// Witt vector operations on JSON vectors (files, or - for stdin)
    #[command(subcommand)]
    Witt(WittCmd),
    /// Reduced odd K-group K^_{2q-1}
    Khat {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        q: u64,
        /// Also run the enumeration oracle and fail on mismatch
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// E_1 page: the reduced row at q with --hat, else the full page up to q
    E1 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        hat: bool,
    },
    /// Relative K-group K~_m
    Ktilde {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        deg: u64,
    },
    /// TF group at vertex I and weight s
    Tf {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "I", default_value = "all")]
        vertex: String,
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<u64>,
        #[arg(long)]
        deg: u64,
    },
    /// Rational Poincare series over Z (relative K-theory, or vertex I with --I)
    Zrank {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long = "deg-max")]
        deg_max: u64,
        #[arg(long = "I")]
        vertex: Option<String>,
        /// Compute by lattice point counting instead
        #[arg(long)]
        oracle: bool,
    },
    /// GL_2(Z) matrices A, B, B', C for (s1, s2, a), or --torus reduction
    Euclid {
        #[arg(long)]
        s1: Option<u64>,
        #[arg(long)]
        s2: Option<u64>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        torus: Option<Vec<u64>>,
    },
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    f: u32,
    #[arg(long, value_delimiter = ',', required = true)]
    a: Vec<u64>,
}

#[derive(Subcommand, Debug)]
enum TruncCmd {
    /// S_q(I) in lexicographic order
    Sq {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long)]
        q: u64,
        #[arg(long = "I", default_value = "all")]
        vertex: String,
    },
    /// Smallest truncation set containing the given points (e.g. 4,6 2,9)
    Closure {
        #[arg(required = true)]
        points: Vec<String>,
    },
    /// Check a {"n":..,"points":[..]} document for division-closedness
    Validate { input: String },
}

#[derive(Subcommand, Debug)]
enum WittCmd {
    Add { x: String, y: String },
    Mul { x: String, y: String },
    Ghost { x: String },
    /// F^i_r along the 1-based axis i
    Frob {
        x: String,
        #[arg(long)]
        axis: usize,
        #[arg(long)]
        r: u64,
    },
    /// V^i_r into the truncation set given by --target
    Versch {
        x: String,
        #[arg(long)]
        axis: usize,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        target: String,
    },
    /// p-typical splitting; checks that reassembly returns the input
    Split {
        x: String,
        #[arg(long)]
        p: u64,
    },
}

enum Failure {
    Usage(String),
    Check(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<Rendered, Failure>;

/// A result in JSON form plus an optional table rendering.
struct Rendered {
    json: Value,
    table: Option<(Vec<String>, Vec<Vec<String>>)>,
    csv: Option<String>,
}

impl Rendered {
    fn json(json: Value) -> Rendered {
        Rendered { json, table: None, csv: None }
    }

    fn with_table(mut self, headers: &[&str], rows: Vec<Vec<String>>) -> Rendered {
        self.table = Some((headers.iter().map(|h| h.to_string()).collect(), rows));
        self
    }
}

/// Parses argv (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let outcome = execute(&cli.command);
    match outcome {
        Ok(rendered) => match emit(&rendered, cli.format, out) {
            Ok(()) => 0,
            Err(msg) => {
                let _ = writeln!(err, "error: {msg}");
                2
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            1
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::BudgetExceeded { .. } => 4,
                Error::Parse(_) => 2,
                Error::InternalVerificationFailure(_) => 1,
                _ => 3,
            }
        }
    }
}

fn emit(r: &Rendered, format: Format, out: &mut dyn Write) -> std::result::Result<(), String> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&r.json).expect("serializable") + "\n",
        Format::Table => match &r.table {
            Some((headers, rows)) => table(headers, rows),
            None => return Err("this command has no table output; use --format json".into()),
        },
        Format::Csv => match &r.csv {
            Some(csv) => csv.clone(),
            None => return Err("CSV output is only available for zrank".into()),
        },
    };
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())
}

fn table(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

/// `--I`: comma-separated 1-based indices, `""` for the empty set, `all`.
fn parse_vertex(text: &str, n: usize) -> std::result::Result<Vec<usize>, Failure> {
    let text = text.trim();
    if text == "all" {
        return Ok((0..n).collect());
    }
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut axes = Vec::new();
    for part in text.split(',') {
        let i: usize = part.trim().parse().map_err(|_| Failure::Usage(format!("bad index {part:?} in --I")))?;
        if i == 0 || i > n {
            return Err(Failure::Usage(format!("--I index {i} out of range 1..{n}")));
        }
        axes.push(i - 1);
    }
    axes.sort_unstable();
    axes.dedup();
    Ok(axes)
}

fn read_input(path: &str) -> std::result::Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn read_witt(path: &str) -> std::result::Result<WittVector, Failure> {
    Ok(WittVector::from_json(&read_input(path)?)?)
}

fn problem(field: &FieldArgs) -> std::result::Result<ProblemSpec, Failure> {
    ProblemSpec::new(field.p, field.f, field.a.clone()).map_err(|e| Failure::Usage(e.to_string()))
}

fn point_cells(set: &TruncationSet) -> Vec<Vec<String>> {
    set.points().map(|p| vec![p.to_string()]).collect()
}

fn witt_rendered(x: &WittVector) -> Rendered {
    let rows = x.set().points().map(|p| vec![p.to_string(), x.ring().format(&x.get(p))]).collect();
    Rendered::json(serde_json::to_value(x).expect("serializable")).with_table(&["point", "component"], rows)
}

fn group_cells(g: &AbelianGroup) -> String {
    g.to_string()
}

fn execute(cmd: &Command) -> Outcome {
    match cmd {
        Command::Trunc(t) => trunc(t),
        Command::Witt(w) => witt(w),
        Command::Khat { field, q, oracle, budget } => {
            let spec = problem(field)?;
            let report = ktheory::khat_report(&spec, *q, oracle.then_some(*budget))?;
            if report.checks.oracle == Some(false) {
                let brute = ktheory::khat_brute(&spec, *q, *budget)?;
                return Err(Failure::Check(format!("closed form {} but oracle {}", report.group, brute)));
            }
            if !report.checks.order_formula {
                return Err(Failure::Check(format!("order of {} disagrees with the order formula", report.group)));
            }
            let row = vec![q.to_string(), group_cells(&report.group), report.order_log_k.to_string()];
            Ok(Rendered::json(serde_json::to_value(&report).expect("serializable"))
                .with_table(&["q", "group", "log_k order"], vec![row]))
        }
        Command::E1 { field, q, hat } => {
            let spec = problem(field)?;
            if *hat {
                let row = ktheory::e1_hat(&spec, *q)?;
                let mut cells = Vec::new();
                for col in &row.columns {
                    for v in &col.vertices {
                        let i: Vec<String> = v.axes.iter().map(|a| (a + 1).to_string()).collect();
                        cells.push(vec![
                            col.s.to_string(),
                            format!("{{{}}}", i.join(",")),
                            v.exponent.to_string(),
                            group_cells(&v.group),
                        ]);
                    }
                }
                let json = json!({"spec": spec, "row": row});
                Ok(Rendered::json(json).with_table(&["s", "I", "log_k order", "group"], cells))
            } else {
                let page = ktheory::e1_full(&spec, *q)?;
                let cells = page
                    .entries
                    .iter()
                    .map(|e| vec![e.s.to_string(), e.t.to_string(), e.exponent.to_string(), group_cells(&e.group)])
                    .collect();
                Ok(Rendered::json(serde_json::to_value(&page).expect("serializable"))
                    .with_table(&["s", "t", "log_k order", "group"], cells))
            }
        }
        Command::Ktilde { field, deg } => {
            let spec = problem(field)?;
            let group = ktheory::ktilde_groups(&spec, *deg)?;
            let json = json!({"spec": spec, "degree": deg, "group": group});
            Ok(Rendered::json(json).with_table(&["degree", "group"], vec![vec![deg.to_string(), group_cells(&group)]]))
        }
        Command::Tf { field, vertex, s, deg } => {
            let spec = problem(field)?;
            let axes = parse_vertex(vertex, spec.n())?;
            let point = Point::new(s.clone()).map_err(|e| Failure::Usage(e.to_string()))?;
            let r = ktheory::tf_group(&spec, &axes, &point, *deg)?;
            let order_log_k = r.set.len();
            let json = json!({"spec": spec, "I": axes.iter().map(|a| a + 1).collect::<Vec<_>>(), "s": point, "result": r, "order_log_k": order_log_k});
            let row = vec![deg.to_string(), r.set.len().to_string(), group_cells(&r.group)];
            Ok(Rendered::json(json).with_table(&["degree", "points", "group"], vec![row]))
        }
        Command::Zrank { a, deg_max, vertex, oracle } => {
            let (kind, series, axes) = match vertex {
                None => {
                    let s = if *oracle { zrank::k_rational_series_oracle(a, *deg_max)? } else { zrank::k_rational_series(a, *deg_max)? };
                    ("relative_k", s, None)
                }
                Some(v) => {
                    let axes = parse_vertex(v, a.len())?;
                    let s = if *oracle {
                        zrank::tc_vertex_series_oracle(a, &axes, *deg_max)?
                    } else {
                        zrank::tc_vertex_series(a, &axes, *deg_max)?
                    };
                    ("tc_vertex", s, Some(axes.iter().map(|i| i + 1).collect::<Vec<_>>()))
                }
            };
            let rows: Vec<Value> = series.rows().iter().map(|(d, c)| json!({"degree": d, "coefficient": c})).collect();
            let json = json!({"a": a, "series": kind, "I": axes, "rows": rows});
            let cells = series.rows().iter().map(|(d, c)| vec![d.to_string(), c.to_string()]).collect();
            let mut r = Rendered::json(json).with_table(&["degree", "coefficient"], cells);
            r.csv = Some(series.to_csv());
            Ok(r)
        }
        Command::Euclid { s1, s2, a, torus } => match (s1, s2, a, torus) {
            (None, None, None, Some(s)) => {
                let r = lattice::torus_reduce(s)?;
                let cells = r.m.0.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect();
                let headers: Vec<String> = (1..=s.len()).map(|j| format!("M[.,{j}]")).collect();
                let headers: Vec<&str> = headers.iter().map(String::as_str).collect();
                Ok(Rendered::json(serde_json::to_value(&r).expect("serializable")).with_table(&headers, cells))
            }
            (Some(s1), Some(s2), Some(a), None) => {
                let f = lattice::euclid_factorize(*s1, *s2, *a)?;
                let cells = [("A", &f.a_mat), ("B", &f.b_mat), ("B'", &f.bp_mat), ("C", &f.c_mat)]
                    .iter()
                    .map(|(name, m)| {
                        let rows: Vec<String> =
                            m.0.iter().map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect();
                        vec![name.to_string(), rows.join(" ")]
                    })
                    .collect();
                Ok(Rendered::json(serde_json::to_value(&f).expect("serializable")).with_table(&["matrix", "rows"], cells))
            }
            _ => Err(Failure::Usage("give either --s1, --s2 and --a, or --torus".into())),
        },
    }
}

fn trunc(cmd: &TruncCmd) -> Outcome {
    match cmd {
        TruncCmd::Sq { a, q, vertex } => {
            let axes = parse_vertex(vertex, a.len())?;
            let set = sq_set(a, *q, &axes)?;
            Ok(Rendered::json(serde_json::to_value(&set).expect("serializable")).with_table(&["point"], point_cells(&set)))
        }
        TruncCmd::Closure { points } => {
            let pts = points
                .iter()
                .map(|text| {
                    let coords = text
                        .split(',')
                        .map(|c| c.trim().parse::<u64>().map_err(|_| Failure::Usage(format!("bad point {text:?}"))))
                        .collect::<std::result::Result<Vec<_>, _>>()?;
                    Point::new(coords).map_err(|e| Failure::Usage(e.to_string()))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let set = closure(&pts)?;
            Ok(Rendered::json(serde_json::to_value(&set).expect("serializable")).with_table(&["point"], point_cells(&set)))
        }
        TruncCmd::Validate { input } => {
            #[derive(Deserialize, Serialize)]
            struct Loose {
                n: usize,
                points: Vec<Point>,
            }
            let loose: Loose = serde_json::from_str(&read_input(input)?).map_err(|e| Failure::Lib(Error::Parse(e.to_string())))?;
            if let Some(p) = loose.points.iter().find(|p| p.dim() != loose.n) {
                return Err(Error::DimensionMismatch { expected: loose.n, found: p.dim() }.into());
            }
            if loose.points.is_empty() {
                let json = json!({"n": loose.n, "division_closed": true, "missing": []});
                return Ok(Rendered::json(json).with_table(&["division_closed"], vec![vec!["true".into()]]));
            }
            let full = closure(&loose.points)?;
            let given: std::collections::BTreeSet<&Point> = loose.points.iter().collect();
            let missing: Vec<&Point> = full.points().filter(|p| !given.contains(p)).collect();
            if !missing.is_empty() {
                let list: Vec<String> = missing.iter().map(|p| p.to_string()).collect();
                return Err(Error::NotDivisionClosed(format!("missing {}", list.join(" "))).into());
            }
            let json = json!({"n": loose.n, "division_closed": true, "missing": missing});
            Ok(Rendered::json(json).with_table(&["division_closed"], vec![vec!["true".into()]]))
        }
    }
}

fn witt(cmd: &WittCmd) -> Outcome {
    let axis0 = |axis: usize| {
        axis.checked_sub(1).ok_or_else(|| Failure::Usage("--axis is 1-based".into()))
    };
    match cmd {
        WittCmd::Add { x, y } => Ok(witt_rendered(&read_witt(x)?.add(&read_witt(y)?)?)),
        WittCmd::Mul { x, y } => Ok(witt_rendered(&read_witt(x)?.mul(&read_witt(y)?)?)),
        WittCmd::Ghost { x } => {
            let x = read_witt(x)?;
            let ghost: Vec<(Point, String)> = x.ghost().into_iter().map(|(p, w)| (p, x.ring().format(&w))).collect();
            let cells = ghost.iter().map(|(p, w)| vec![p.to_string(), w.clone()]).collect();
            let json = json!({"set": x.set(), "ring": x.ring().descriptor(), "ghost": ghost});
            Ok(Rendered::json(json).with_table(&["point", "ghost"], cells))
        }
        WittCmd::Frob { x, axis, r } => Ok(witt_rendered(&read_witt(x)?.frobenius(axis0(*axis)?, *r)?)),
        WittCmd::Versch { x, axis, r, target } => {
            let target: TruncationSet =
                serde_json::from_str(&read_input(target)?).map_err(|e| Failure::Lib(Error::Parse(e.to_string())))?;
            Ok(witt_rendered(&read_witt(x)?.verschiebung(&target, axis0(*axis)?, *r)?))
        }
        WittCmd::Split { x, p } => {
            let x = read_witt(x)?;
            let split = p_typical_split(&x, *p)?;
            if assemble(&split)? != x {
                return Err(Failure::Check("reassembly does not return the input".into()));
            }
            let mut factors = Vec::new();
            let mut cells = Vec::new();
            for ((line, e), v) in &split.factors {
                let comps: Vec<String> = v.set().points().map(|pt| x.ring().format(&v.get(pt))).collect();
                cells.push(vec![line.to_string(), e.to_string(), comps.join(" ")]);
                factors.push(json!({"line": line, "e": e, "vector": v}));
            }
            let json = json!({"p": p, "source": x.set(), "ring": x.ring().descriptor(), "factors": factors});
            Ok(Rendered::json(json).with_table(&["line", "e", "components (1, p, p^2, ..)"], cells))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("truncwitt").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn khat_json() {
        let (code, out, _) = call(&["khat", "--p", "3", "--f", "1", "--a", "2", "--q", "2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["group"]["factors"], json!([9]));
        assert_eq!(v["checks"]["order_formula"], true);
    }

    #[test]
    fn khat_oracle_and_domain_error() {
        let (code, out, _) = call(&["khat", "--p", "2", "--a", "3", "--q", "2", "--oracle"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"oracle\": true"));
        assert_eq!(call(&["khat", "--p", "3", "--a", "3", "--q", "1"]).0, 3);
        assert_eq!(call(&["khat", "--p", "3", "--a", "2", "--q", "9", "--oracle"]).0, 4);
    }

    #[test]
    fn zrank_csv() {
        let (code, out, _) = call(&["zrank", "--a", "2,2", "--deg-max", "4", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "degree,coefficient\n1,1\n2,1\n3,2\n4,2\n");
        assert_eq!(call(&["khat", "--p", "3", "--a", "2", "--q", "1", "--format", "csv"]).0, 2);
    }

    #[test]
    fn trunc_sq_table() {
        let (code, out, _) = call(&["trunc", "sq", "--a", "2,3", "--q", "1", "--I", "1,2", "--format", "table"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().skip(1).collect();
        assert_eq!(lines, vec!["(1,1)", "(1,2)", "(1,3)", "(2,1)", "(2,2)", "(2,3)"]);
        let (_, json_out, _) = call(&["trunc", "sq", "--a", "2,3", "--q", "1", "--I", "1,2"]);
        let set: TruncationSet = serde_json::from_str(&json_out).unwrap();
        assert_eq!(set.len(), 6);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["khat", "--p", "3"]).0, 2);
        assert_eq!(call(&["nonsense"]).0, 2);
        assert_eq!(call(&["khat", "--p", "4", "--a", "3", "--q", "1"]).0, 2);
        assert_eq!(call(&["euclid", "--s1", "2"]).0, 2);
        assert_eq!(call(&["trunc", "sq", "--a", "2", "--q", "1", "--I", "3"]).0, 2);
    }

    #[test]
    fn deterministic() {
        let args = ["e1", "--p", "3", "--a", "2,3", "--q", "2"];
        assert_eq!(call(&args), call(&args));
    }

    #[test]
    fn euclid_json() {
        let (code, out, _) = call(&["euclid", "--s1", "2", "--s2", "3", "--a", "2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["B"], json!([[-2, 1], [3, -1]]));
        let (code, out, _) = call(&["euclid", "--torus", "4,6,10"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"g\": 2"));
    }
}
