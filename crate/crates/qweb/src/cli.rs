//! Command-line front end. [`run`] takes argv and stdin and returns the exit
//! code with the text written to stdout and stderr.
//!
//! Exit codes: 0 success, 1 other errors, 2 parse errors, 3 verification
//! failures, 4 dimension cap exceeded.

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::evaluator::{build_relation, compare_maps, suite, Check, EvalContext, DEFAULT_CAP};
use crate::heckeclifford::{commutant_dimension, hc_basis, verify_bc_relations, Exactness};
use crate::invariants::{invariant, kappa_circle, kappa_ratios, kappa_recursion_check, named_links, KappaContext, LinkPresentation};
use crate::scalars::{GaussianRational, ScalarQ};
use crate::superlinear::SuperMap;
use crate::webir::{parse_braid, parse_object, parse_web, WebObject};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Parser, Debug)]
#[command(name = "qweb", version, about = "Evaluate type Q quantum webs and their invariants")]
pub struct Cli {
    /// Rank of the representation V_n.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Largest vector space dimension an evaluation may build.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Specialization used to screen equalities before exact comparison.
    #[arg(long = "screen-q0", global = true, value_name = "NUM/DEN", default_value = "7/5")]
    pub screen_q0: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a web diagram (read from stdin when omitted or "-").
    Eval { diagram: Option<String> },
    /// Check catalog relations or the walled Brauer-Clifford relations.
    Verify {
        /// A relation family, "all", or "bc".
        #[arg(long, conflicts_with = "relation")]
        suite: Option<String>,
        /// A single catalog relation id.
        #[arg(long)]
        relation: Option<String>,
        /// Comma separated parameters for --relation.
        #[arg(long, default_value = "")]
        params: String,
        /// Up strands for the "bc" suite.
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Down strands for the "bc" suite.
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// Compare two arbitrary diagrams instead of catalog relations.
        #[arg(long, requires = "rhs", conflicts_with_all = ["suite", "relation"])]
        lhs: Option<String>,
        #[arg(long, requires = "lhs")]
        rhs: Option<String>,
    },
    /// Normalized invariant of a braid closure.
    Invariant {
        /// Braid text such as "braid 2 [1,1] : s1 s1 s1" (stdin when omitted).
        #[arg(long, conflicts_with = "knot")]
        braid: Option<String>,
        /// A named knot: unknot, trefoil, trefoil-mirror, figure-eight, hopf.
        #[arg(long)]
        knot: Option<String>,
        /// Comma separated kink counts, one per strand.
        #[arg(long)]
        kinks: Option<String>,
    },
    /// Dimensions of an object, its endomorphisms and related spaces.
    Dims {
        /// Object text such as "u1 d1" (stdin when omitted).
        object: Option<String>,
        /// Also compute the dimension of the commutant of the U_q action.
        #[arg(long)]
        commutant: bool,
    },
    /// κ-specialized circle values and recursion checks.
    Kappa {
        #[arg(long, default_value_t = 6)]
        k: u32,
    },
}

/// Output of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn error(e: &Error) -> Outcome {
        Outcome { code: exit_code(e), stdout: String::new(), stderr: format!("error: {}\n", e) }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::NegativeLabel { .. } | Error::MalformedBraid(_) => EXIT_PARSE,
        Error::DimensionCap { .. } => EXIT_CAP,
        _ => EXIT_OTHER,
    }
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_PARSE, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let q0 = match parse_q0(&cli.screen_q0) {
        Some(q) => q,
        None => {
            return Outcome::error(&Error::Parse { pos: 0, msg: format!("bad --screen-q0 '{}'", cli.screen_q0) })
        }
    };
    let r = match &cli.command {
        Command::Eval { diagram } => read_body(diagram, stdin).and_then(|t| eval(&cli, &t)),
        Command::Verify { lhs: Some(lhs), rhs: Some(rhs), .. } => verify_pair(&cli, &q0, lhs, rhs),
        Command::Verify { suite, relation, params, r, s, .. } => {
            verify(&cli, &q0, suite.as_deref(), relation.as_deref(), params, *r, *s)
        }
        Command::Invariant { braid, knot, kinks } => {
            let text = match knot {
                Some(name) => named_links()
                    .get(name.as_str())
                    .map(|s| s.to_string())
                    .ok_or_else(|| Error::Invalid(format!("unknown knot '{}'", name))),
                None => read_body(braid, stdin),
            };
            text.and_then(|t| invariant_cmd(&cli, &t, kinks.as_deref()))
        }
        Command::Dims { object, commutant } => read_body(object, stdin).and_then(|t| dims(&cli, &q0, &t, *commutant)),
        Command::Kappa { k } => Ok(kappa(&cli, *k)),
    };
    r.unwrap_or_else(|e| Outcome::error(&e))
}

fn parse_q0(s: &str) -> Option<GaussianRational> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim().parse::<i64>().ok()?, b.trim().parse::<i64>().ok()?),
        None => (s.trim().parse::<i64>().ok()?, 1),
    };
    (den != 0).then(|| GaussianRational::from_ratio(num, den))
}

fn read_body(arg: &Option<String>, stdin: &mut dyn Read) -> crate::Result<String> {
    match arg.as_deref() {
        Some(t) if t != "-" => Ok(t.to_string()),
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Error::Invalid(format!("reading stdin: {}", e)))?;
            Ok(s.trim().to_string())
        }
    }
}

fn parse_list(s: &str) -> crate::Result<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| Error::Parse { pos: 0, msg: format!("not an integer: '{}'", t) }))
        .collect()
}

fn scalar_json(c: &ScalarQ) -> Value {
    let s = c.to_structured();
    json!({ "num": s.num, "den": s.den })
}

fn render(cli: &Cli, text: String, value: Value) -> String {
    match cli.format {
        Format::Text => text,
        Format::Structured => format!("{}\n", value),
    }
}

fn matrix_report(m: &SuperMap) -> (String, Value) {
    let mut triples = m.triples();
    triples.sort_by_key(|&(r, c, _)| (c, r));
    let mut text = format!("{} x {} matrix, parity {}\n", m.target().dim(), m.source().dim(), m.parity());
    for (r, c, v) in &triples {
        text.push_str(&format!("{} <- {} : {}\n", m.target().label(*r), m.source().label(*c), v));
    }
    let entries: Vec<Value> = triples.iter().map(|(r, c, v)| json!([r, c, scalar_json(v)])).collect();
    let labels = |sp: &crate::superlinear::SuperSpace| -> Vec<String> {
        sp.labels().iter().map(|l| l.to_string()).collect()
    };
    let value = json!({
        "kind": "matrix",
        "parity": m.parity(),
        "source": labels(m.source()),
        "target": labels(m.target()),
        "entries": entries,
    });
    (text, value)
}

fn eval(cli: &Cli, text: &str) -> crate::Result<Outcome> {
    let d = parse_web(text)?;
    let ctx = EvalContext::with_cap(cli.n.unwrap_or(1), cli.cap);
    let m = ctx.eval_diagram(&d)?;
    let out = if m.source().dim() == 1 && m.target().dim() == 1 {
        let c = m.entry(0, 0);
        render(cli, format!("{}\n", c), json!({ "kind": "scalar", "value": scalar_json(&c) }))
    } else {
        let (t, v) = matrix_report(&m);
        render(cli, t, v)
    };
    Ok(Outcome::ok(out))
}

fn check_relation(id: &str, params: &[u32], ctx: &EvalContext, q0: &GaussianRational) -> crate::Result<Check> {
    let rel = build_relation(id, params)?;
    let l = ctx.eval_diagram(&rel.lhs)?;
    let r = ctx.eval_diagram(&rel.rhs)?;
    Ok(compare_maps(&l, &r, Some(q0)))
}

fn check_json(c: &Check) -> Value {
    match c {
        Check::Pass => json!({ "status": "pass" }),
        Check::Fail(w) => json!({
            "status": "fail",
            "row": w.row,
            "col": w.col,
            "lhs": scalar_json(&w.lhs),
            "rhs": scalar_json(&w.rhs),
        }),
        Check::Error(e) => json!({ "status": "error", "message": e }),
    }
}

fn check_text(c: &Check) -> String {
    match c {
        Check::Pass => "PASS".into(),
        Check::Fail(w) => format!("FAIL {}", w),
        Check::Error(e) => format!("ERROR {}", e),
    }
}

fn verify(
    cli: &Cli,
    q0: &GaussianRational,
    suite_name: Option<&str>,
    relation: Option<&str>,
    params: &str,
    r: usize,
    s: usize,
) -> crate::Result<Outcome> {
    let ns: Vec<usize> = match cli.n {
        Some(n) => vec![n],
        None => vec![1, 2],
    };
    let mut rows: Vec<(usize, String, Check)> = Vec::new();
    if suite_name == Some("bc") {
        for &n in &ns {
            let ctx = EvalContext::with_cap(n, cli.cap);
            let dim = ctx.object_dim(&WebObject::new(
                [vec![crate::webir::Item::up(1); r], vec![crate::webir::Item::down(1); s]].concat(),
            ));
            let mode = if dim <= 256 { Exactness::Symbolic } else { Exactness::Specialized(vec![q0.clone(), GaussianRational::from_ratio(3, 2)]) };
            for (label, c) in verify_bc_relations(r, s, &ctx, &mode)? {
                rows.push((n, label, c));
            }
        }
    } else {
        let jobs: Vec<(String, Vec<u32>)> = match (suite_name, relation) {
            (Some(name), _) => suite(name)?.into_iter().map(|(id, p)| (id.to_string(), p)).collect(),
            (None, Some(id)) => {
                let p = parse_list(params)?
                    .into_iter()
                    .map(|x| u32::try_from(x).map_err(|_| Error::Invalid(format!("negative parameter {}", x))))
                    .collect::<crate::Result<Vec<u32>>>()?;
                vec![(id.to_string(), p)]
            }
            (None, None) => return Err(Error::Invalid("verify needs --suite or --relation".into())),
        };
        for &n in &ns {
            let ctx = EvalContext::with_cap(n, cli.cap);
            for (id, p) in &jobs {
                let label = format!("{} [{}]", id, p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
                let c = check_relation(id, p, &ctx, q0)?;
                rows.push((n, label, c));
            }
        }
    }
    Ok(report(cli, rows))
}

fn verify_pair(cli: &Cli, q0: &GaussianRational, lhs: &str, rhs: &str) -> crate::Result<Outcome> {
    let (l, r) = (parse_web(lhs)?, parse_web(rhs)?);
    if l.source() != r.source() || l.target() != r.target() {
        return Err(Error::ObjectMismatch(format!("{} -> {} and {} -> {}", l.source(), l.target(), r.source(), r.target())));
    }
    let ns: Vec<usize> = cli.n.map_or(vec![1, 2], |n| vec![n]);
    let mut rows = Vec::new();
    for n in ns {
        let ctx = EvalContext::with_cap(n, cli.cap);
        let c = compare_maps(&ctx.eval_diagram(&l)?, &ctx.eval_diagram(&r)?, Some(q0));
        rows.push((n, "lhs = rhs".to_string(), c));
    }
    Ok(report(cli, rows))
}

fn report(cli: &Cli, rows: Vec<(usize, String, Check)>) -> Outcome {
    let failed = rows.iter().filter(|(_, _, c)| !c.passed()).count();
    let mut text = String::new();
    for (n, label, c) in &rows {
        text.push_str(&format!("n={} {}: {}\n", n, label, check_text(c)));
    }
    text.push_str(&format!("{} checks, {} failed\n", rows.len(), failed));
    let value = json!({
        "checks": rows.iter().map(|(n, label, c)| json!({ "n": n, "relation": label, "result": check_json(c) })).collect::<Vec<_>>(),
        "failed": failed,
    });
    let mut out = Outcome::ok(render(cli, text, value));
    if failed > 0 {
        out.code = EXIT_VERIFY;
    }
    out
}

fn invariant_cmd(cli: &Cli, text: &str, kinks: Option<&str>) -> crate::Result<Outcome> {
    let braid = parse_braid(text)?;
    let link = match kinks {
        Some(k) => LinkPresentation::new(braid, parse_list(k)?.into_iter().map(|x| x as i32).collect())?,
        None => LinkPresentation::from_braid(braid)?,
    };
    let ctx = EvalContext::with_cap(cli.n.unwrap_or(1), cli.cap);
    let v = invariant(&link, &ctx)?;
    Ok(Outcome::ok(render(cli, format!("{}\n", v), json!({ "kind": "scalar", "value": scalar_json(&v) }))))
}

fn dims(cli: &Cli, q0: &GaussianRational, text: &str, commutant: bool) -> crate::Result<Outcome> {
    let o = parse_object(text)?;
    let n = cli.n.unwrap_or(1);
    let ctx = EvalContext::with_cap(n, cli.cap);
    let space = ctx.eval_object(&o)?;
    let (even, odd) = space.sdim();
    let mut text = format!("object {} at n={}: dim {} ({}|{})\n", o, n, space.dim(), even, odd);
    let mut value = json!({ "object": o.to_string(), "n": n, "dim": space.dim(), "even": even, "odd": odd });
    let mut factors = Vec::new();
    for it in o.items() {
        let f = ctx.eval_object(&WebObject::new(vec![*it]))?;
        text.push_str(&format!("  {}: dim {}\n", WebObject::new(vec![*it]), f.dim()));
        factors.push(json!([WebObject::new(vec![*it]).to_string(), f.dim()]));
    }
    value["factors"] = json!(factors);
    let k = o.len();
    if k > 0 && o.items().iter().all(|it| it.label == 1) {
        let hc = if k <= 6 { hc_basis(k).len() } else { (1..=k).product::<usize>() << k };
        text.push_str(&format!("thin strands: {} = {}!*2^{}\n", hc, k, k));
        value["hecke_clifford_dim"] = json!(hc);
    }
    if commutant {
        let rep = ctx.representation(&o)?;
        let c = commutant_dimension(&rep, q0)?;
        text.push_str(&format!("commutant dimension at q0={}: {}\n", cli.screen_q0, c));
        value["commutant"] = json!(c);
    }
    Ok(Outcome::ok(render(cli, text, value)))
}

fn kappa(cli: &Cli, k: u32) -> Outcome {
    let kc = KappaContext::new();
    let check_kappa = &kc.kappa * &ScalarQ::qtilde() == ScalarQ::from_int(2);
    let mut text = format!("kappa = {}\nkappa * qtilde = 2: {}\n", kc.kappa, if check_kappa { "PASS" } else { "FAIL" });
    let mut rows = Vec::new();
    let mut all = check_kappa;
    for j in 1..=k.max(1) {
        let c = kappa_circle(j);
        let ok = kappa_recursion_check(j) && (j < 2 || kappa_ratios(j).0 == kappa_ratios(j).1);
        all &= ok;
        text.push_str(&format!("k={}: {}  recursion {}\n", j, c, if ok { "PASS" } else { "FAIL" }));
        rows.push(json!({ "k": j, "circle": scalar_json(&c), "recursion": ok }));
    }
    let value = json!({ "kappa": scalar_json(&kc.kappa), "kappa_times_qtilde_is_two": check_kappa, "circles": rows });
    Outcome { code: if all { EXIT_OK } else { EXIT_VERIFY }, stdout: render(cli, text, value), stderr: String::new() }
}
