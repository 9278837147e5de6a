//! The `pullback` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::bicritical::{self, BicriticalClass, BicriticalError, Case};
use crate::citation::Citation;
use crate::dynamics::{
    build_graph, check_indegree_bound, constant_pullback_filter, enumerate_portraits, surviving_graphs, EnumSpec,
    FilterOptions, Verdict,
};
use crate::lattes;
use crate::monodromy::{
    belyi_obstruction, deck_group, enumerate_triples, portrait_passport, prop45_check, validate_triple,
    PermutationTriple, TripleJson,
};
use crate::portrait::{Admissibility, Portrait, PortraitError};
use crate::pushforward::{
    asymptotic_constant, cauchy_like_det, coderivative_rank, laurent_local_pushforward, portrait_of_map, pushforward,
    PushError,
};
use crate::ratfield::{elem_to_json, parse_elem, parse_field, parse_point, parse_ratfunc, Elem, Field, ParseError, ProjPoint};
use crate::report::{exit, Report};
use crate::tables::reproduce_tables;

#[derive(Parser, Debug)]
#[command(name = "pullback", version, about = "Exact tools for Thurston pullback maps")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Working precision in bits for numeric checks.
    #[arg(long, global = true, default_value_t = 256)]
    pub precision: u32,
    /// Coefficient field, e.g. "w^2+w+1" or "w: w^2+w+1; c: c^3-2".
    #[arg(long, global = true, default_value = "Q")]
    pub field: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank bounds, graph structure and filters for a portrait file.
    Analyze { path: String },
    /// Runs the constant-pullback filters on a dynamical portrait file.
    FilterConstant {
        path: String,
        #[command(flatten)]
        opts: FilterFlags,
    },
    /// Pushes a quadratic differential forward under a rational map.
    Pushforward {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        /// "<ratfunc> dz^2"; the "dz^2" suffix is optional.
        #[arg(long, allow_hyphen_values = true)]
        qd: String,
    },
    /// Exact rank of the coderivative at a realized marking.
    Rank {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        /// Comma-separated source points; `inf` for infinity.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Comma-separated target points.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Local pushforward of a Laurent series under z^m.
    Laurent {
        #[arg(long)]
        m: u32,
        /// Comma-separated `k:a_k` pairs.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, default_value_t = 6)]
        jmax: i64,
    },
    /// Cauchy-like determinant, expanded and in closed form.
    CauchyDet {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Numeric fit of the pole coefficient near a simple critical point.
    Asymptotic {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        cstar: String,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        /// Comma-separated sample offsets such as 1e-8.
        #[arg(long, default_value = "1e-8", allow_hyphen_values = true)]
        t: String,
    },
    /// Curve points and a non-constancy witness for a bicritical class.
    Bicritical {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        lambda: u32,
        #[arg(long = "lambda-prime")]
        lambda_prime: u32,
        /// split, cycle or shared.
        #[arg(long)]
        case: String,
        #[arg(long, allow_hyphen_values = true)]
        tprime: Option<String>,
    },
    /// Checks a permutation triple, or runs the three-critical-value obstruction on a portrait.
    Dessin {
        /// Triple JSON file.
        path: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        sigma0: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        sigma1: Option<String>,
        #[arg(long = "sigma-inf", allow_hyphen_values = true)]
        sigma_inf: Option<String>,
        #[arg(long)]
        degree: Option<usize>,
        /// Four labels for the cycle condition, e.g. "1,2,3,4".
        #[arg(long)]
        prop45: Option<String>,
        /// Portrait file: enumerate its triples and test for an obstruction.
        #[arg(long)]
        portrait: Option<String>,
    },
    /// Enumerates portraits for an enumeration spec file.
    Enumerate {
        path: String,
        /// List the graphs surviving the filters instead of every portrait.
        #[arg(long)]
        graphs: bool,
        #[command(flatten)]
        opts: FilterFlags,
    },
    /// Regenerates the bicritical and cubic tables and compares them with the fixtures.
    Tables {
        #[command(flatten)]
        opts: FilterFlags,
    },
    /// Exact checks for the quartic example and its elliptic curve diagram.
    #[command(name = "verify-example-42")]
    VerifyQuartic {
        #[arg(long, conflicts_with = "numeric")]
        symbolic: bool,
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct FilterFlags {
    /// Enable the |P| <= |V| + 1 filter (cited without proof).
    #[arg(long = "v-plus-one")]
    pub v_plus_one: bool,
    /// Enable the topological polynomial filter (cited without proof).
    #[arg(long = "polynomial-bound")]
    pub polynomial_bound: bool,
}

impl From<FilterFlags> for FilterOptions {
    fn from(f: FilterFlags) -> FilterOptions {
        FilterOptions { v_plus_one_bound: f.v_plus_one, polynomial_bound: f.polynomial_bound }
    }
}

struct Failure {
    message: String,
    exit: i32,
}

fn parse_err(e: impl std::fmt::Display) -> Failure {
    Failure { message: e.to_string(), exit: exit::PARSE_ERROR }
}

fn semantic(e: impl std::fmt::Display) -> Failure {
    Failure { message: e.to_string(), exit: exit::SEMANTIC_ERROR }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        parse_err(e)
    }
}

impl From<PushError> for Failure {
    fn from(e: PushError) -> Failure {
        semantic(e)
    }
}

type Out = Result<Report, Failure>;

/// Parses arguments, runs the command and returns the report.
pub fn run<I, T>(args: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE_ERROR } else { exit::OK };
            Report::error("usage", &e.to_string(), code)
        }
    }
}

/// Entry point for the binary; prints the report and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<T> = args.into_iter().collect();
    let json = args.iter().any(|a| a.clone().into() == OsString::from("--json"));
    match Cli::try_parse_from(args.clone()) {
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return exit::OK;
        }
        _ => {}
    }
    let r = run(args);
    if json {
        println!("{}", serde_json::to_string_pretty(&r.to_json()).unwrap());
    } else if r.exit >= exit::PARSE_ERROR {
        eprint!("{}", r.to_text());
    } else {
        print!("{}", r.to_text());
    }
    r.exit
}

pub fn execute(cli: &Cli) -> Report {
    let name = command_name(&cli.command);
    match dispatch(cli) {
        Ok(r) => r,
        Err(f) => Report::error(name, &f.message, f.exit),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::FilterConstant { .. } => "filter-constant",
        Command::Pushforward { .. } => "pushforward",
        Command::Rank { .. } => "rank",
        Command::Laurent { .. } => "laurent",
        Command::CauchyDet { .. } => "cauchy-det",
        Command::Asymptotic { .. } => "asymptotic",
        Command::Bicritical { .. } => "bicritical",
        Command::Dessin { .. } => "dessin",
        Command::Enumerate { .. } => "enumerate",
        Command::Tables { .. } => "tables",
        Command::VerifyQuartic { .. } => "verify-example-42",
    }
}

fn dispatch(cli: &Cli) -> Out {
    let field = || parse_field(&cli.field).map_err(Failure::from);
    match &cli.command {
        Command::Analyze { path } => cmd_analyze(path),
        Command::FilterConstant { path, opts } => cmd_filter(path, (*opts).into()),
        Command::Pushforward { map, qd } => cmd_pushforward(&field()?, map, qd),
        Command::Rank { map, a, b } => cmd_rank(&field()?, map, a, b),
        Command::Laurent { m, coeffs, jmax } => cmd_laurent(&field()?, *m, coeffs, *jmax),
        Command::CauchyDet { u, w } => cmd_cauchy(&field()?, u, w),
        Command::Asymptotic { map, cstar, u, t } => cmd_asymptotic(map, cstar, u, t, cli.precision),
        Command::Bicritical { d, lambda, lambda_prime, case, tprime } => {
            cmd_bicritical(*d, *lambda, *lambda_prime, case, tprime.as_deref())
        }
        Command::Dessin { path, sigma0, sigma1, sigma_inf, degree, prop45, portrait } => {
            if let Some(p) = portrait {
                return cmd_belyi(p);
            }
            let t = match path {
                Some(p) => {
                    let j: TripleJson = serde_json::from_str(&read(p)?).map_err(parse_err)?;
                    PermutationTriple::from_json(&j).map_err(semantic)?
                }
                None => {
                    let (Some(s0), Some(s1), Some(si)) = (sigma0, sigma1, sigma_inf) else {
                        return Err(parse_err("give a triple file or all of --sigma0, --sigma1, --sigma-inf"));
                    };
                    let (c0, c1, ci) = (parse_cycles(s0)?, parse_cycles(s1)?, parse_cycles(si)?);
                    let d = degree.unwrap_or_else(|| c0.iter().chain(&c1).chain(&ci).flatten().copied().max().unwrap_or(1));
                    PermutationTriple::from_cycles(d, &c0, &c1, &ci).map_err(semantic)?
                }
            };
            cmd_dessin(&t, prop45.as_deref())
        }
        Command::Enumerate { path, graphs, opts } => cmd_enumerate(path, *graphs, (*opts).into()),
        Command::Tables { opts } => cmd_tables((*opts).into()),
        Command::VerifyQuartic { symbolic, numeric, samples } => {
            cmd_verify_42(!*numeric, !*symbolic, *samples, cli.seed)
        }
    }
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| parse_err(format!("{path}: {e}")))
}

fn load_portrait(path: &str) -> Result<Portrait, Failure> {
    Portrait::from_json(&read(path)?).map_err(|e| match e {
        PortraitError::Json(_) => parse_err(e),
        PortraitError::Invalid(_) => semantic(e),
    })
}

fn verdict_exit(v: Verdict) -> i32 {
    match v {
        Verdict::Unobstructed => exit::OK,
        Verdict::NotConstant => exit::NEGATIVE,
    }
}

pub fn cmd_analyze_portrait(p: &Portrait) -> Report {
    let admissibility = p.rank_zero_admissible();
    let mut citations = vec![Citation::RankBound];
    let mut verdict = match &admissibility {
        Admissibility::Possible => Verdict::Unobstructed,
        Admissibility::Blocked { reasons } => {
            citations.extend(reasons.iter().map(|r| r.citation));
            Verdict::NotConstant
        }
    };
    let mut results = json!({
        "ell1": p.ell1(),
        "ell2": p.ell2(),
        "rank_lower_bound": p.rank_lower_bound(),
        "rank_zero": admissibility,
    });
    if p.dynamical {
        match build_graph(p) {
            Ok(g) => {
                results["graph"] = json!(g.to_json());
                results["decomposition"] = json!(g.decompose());
                results["indegree_bound"] = match check_indegree_bound(&g) {
                    Ok(w) => json!(w),
                    Err(e) => json!({ "not_applicable": e.to_string() }),
                };
                if let Ok(f) = constant_pullback_filter(p, FilterOptions::default()) {
                    citations.extend(f.blocking().iter().map(|r| r.citation));
                    if f.verdict == Verdict::NotConstant {
                        verdict = Verdict::NotConstant;
                    }
                    results["filters"] = json!(f.results);
                }
            }
            Err(e) => results["graph"] = json!({ "error": e.to_string() }),
        }
    }
    results["verdict"] = json!(verdict);
    Report::new("analyze", results, verdict_exit(verdict)).cite(citations)
}

fn cmd_analyze(path: &str) -> Out {
    Ok(cmd_analyze_portrait(&load_portrait(path)?))
}

fn cmd_filter(path: &str, opts: FilterOptions) -> Out {
    let p = load_portrait(path)?;
    let f = constant_pullback_filter(&p, opts).map_err(semantic)?;
    let cites = f.blocking().iter().map(|r| r.citation).collect();
    let mut results = json!(f);
    if opts.v_plus_one_bound || opts.polynomial_bound {
        results["note"] = json!("includes filters cited without proof");
    }
    Ok(Report::new("filter-constant", results, verdict_exit(f.verdict)).cite(cites))
}

fn parse_qd(text: &str, field: &Field) -> Result<crate::ratfield::RatFunc, Failure> {
    let t = text.trim();
    let t = t.strip_suffix("dz^2").unwrap_or(t).trim();
    Ok(parse_ratfunc(t, field, "z")?)
}

fn cmd_pushforward(field: &Field, map: &str, qd: &str) -> Out {
    let g = parse_ratfunc(map, field, "z")?;
    let q = parse_qd(qd, field)?;
    let r = pushforward(&g, &q)?;
    Ok(Report::new(
        "pushforward",
        json!({ "map": g.to_string(), "qd": format!("{q} dz^2"), "result": format!("{r} dz^2"), "zero": r.is_zero() }),
        exit::OK,
    ))
}

fn parse_points(text: &str, field: &Field) -> Result<Vec<(String, ProjPoint)>, Failure> {
    text.split(',')
        .map(|s| Ok((s.trim().to_string(), parse_point(s, field)?)))
        .collect()
}

fn rank_report(g: &crate::ratfield::RatFunc, a: &[(String, ProjPoint)], b: &[(String, ProjPoint)]) -> Out {
    let ap: Vec<ProjPoint> = a.iter().map(|x| x.1.clone()).collect();
    let bp: Vec<ProjPoint> = b.iter().map(|x| x.1.clone()).collect();
    let (rank, m) = coderivative_rank(g, &ap, &bp)?;
    let mut results = json!({
        "map": g.to_string(),
        "rank": rank,
        "rows": m.rows(),
        "cols": m.cols(),
        "matrix": m.to_json(),
        "field": m.field.to_string(),
    });
    // name points by their text so equal points on both sides share a name
    let same: std::collections::BTreeSet<&String> = a.iter().map(|x| &x.0).collect();
    let dynamical = same == b.iter().map(|x| &x.0).collect();
    let mut cites = Vec::new();
    if let Ok(p) = portrait_of_map(&g.embed(&m.field), &embed_named(a, &m.field), &embed_named(b, &m.field), dynamical) {
        results["rank_lower_bound"] = json!(p.rank_lower_bound());
        results["ell1"] = json!(p.ell1());
        results["ell2"] = json!(p.ell2());
        cites.push(Citation::RankBound);
    }
    Ok(Report::new("rank", results, exit::OK).cite(cites))
}

fn embed_named(pts: &[(String, ProjPoint)], f: &Field) -> Vec<(String, ProjPoint)> {
    pts.iter().map(|(n, p)| (n.clone(), p.embed(f))).collect()
}

fn cmd_rank(field: &Field, map: &str, a: &str, b: &str) -> Out {
    let g = parse_ratfunc(map, field, "z")?;
    rank_report(&g, &parse_points(a, field)?, &parse_points(b, field)?)
}

fn cmd_laurent(field: &Field, m: u32, coeffs: &str, jmax: i64) -> Out {
    let mut a = BTreeMap::new();
    for part in coeffs.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = part.split_once(':').ok_or_else(|| parse_err(format!("expected k:a_k, got `{part}`")))?;
        let k: i64 = k.trim().parse().map_err(|_| parse_err(format!("bad index `{k}`")))?;
        a.insert(k, parse_elem(v, field)?);
    }
    let b = laurent_local_pushforward(m, &a, jmax)?;
    let out: BTreeMap<String, Value> = b.iter().map(|(j, c)| (j.to_string(), elem_to_json(c))).collect();
    Ok(Report::new("laurent", json!({ "m": m, "b": out }), exit::OK))
}

fn parse_elems(text: &str, field: &Field) -> Result<Vec<Elem>, Failure> {
    text.split(',').map(|s| Ok(parse_elem(s, field)?)).collect()
}

fn cmd_cauchy(field: &Field, u: &str, w: &str) -> Out {
    let r = cauchy_like_det(&parse_elems(w, field)?, &parse_elems(u, field)?)?;
    let code = if r.agree() { exit::OK } else { exit::NEGATIVE };
    Ok(Report::new("cauchy-det", r.to_json(), code))
}

/// Exact rational from `p/q`, an integer, or decimal/scientific notation.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad rational `{t}`"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad rational `{t}`"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in `{t}`"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mant, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| format!("bad exponent in `{t}`"))?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(format!("bad number `{t}`"));
    }
    let digits: BigInt = format!("{ip}{fp}0").parse::<BigInt>().unwrap() / BigInt::from(10);
    let mut r = BigRational::from_integer(digits);
    let ten = BigRational::from_integer(BigInt::from(10));
    let shift = exp - fp.len() as i32;
    let p = num_traits::pow(ten, shift.unsigned_abs() as usize);
    r = if shift >= 0 { r * p } else { r / p };
    Ok(if neg { -r } else { r })
}

fn cmd_asymptotic(map: &str, cstar: &str, u: &str, t: &str, prec: u32) -> Out {
    let g = parse_ratfunc(map, &Field::rationals(), "z")?;
    let c = parse_rational(cstar).map_err(parse_err)?;
    let us = u.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>().map_err(parse_err)?;
    let ts = t.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>().map_err(parse_err)?;
    if ts.iter().any(|x| x.is_zero()) {
        return Err(semantic("sample offsets must be nonzero"));
    }
    let r = asymptotic_constant(&g, &c, &us, &ts, prec)?;
    Ok(Report::new("asymptotic", r.to_json(), exit::OK))
}

fn bicritical_err(e: BicriticalError) -> Failure {
    semantic(e)
}

fn cmd_bicritical(d: u32, k: u32, kp: u32, case: &str, tprime: Option<&str>) -> Out {
    let case = Case::parse(case).ok_or_else(|| parse_err(format!("unknown case `{case}`; use split, cycle or shared")))?;
    let c = BicriticalClass::new(d, k, kp, case).map_err(bicritical_err)?;
    match tprime {
        None => {
            let w = bicritical::nonconstancy_witness(&c).map_err(bicritical_err)?;
            Ok(Report::new("bicritical", w.to_json(), exit::OK))
        }
        Some(t) => {
            let tp = c.field().from_rational(parse_rational(t).map_err(parse_err)?);
            let pts = bicritical::curve_fiber(&c, &tp).map_err(bicritical_err)?;
            let mut out = Vec::new();
            for p in &pts {
                let check = bicritical::normal_form_check(p, &c).map_err(bicritical_err)?;
                out.push(json!({
                    "x": p.x.to_string(),
                    "y": p.y.to_string(),
                    "field": p.x.field().to_string(),
                    "t": c.map_t(p).map_err(bicritical_err)?.to_string(),
                    "normal_form": bicritical::normal_form(p, d).to_string(),
                    "checks": check.checks,
                }));
            }
            Ok(Report::new("bicritical", json!({ "class": c, "tprime": t, "points": out }), exit::OK))
        }
    }
}

/// Cycle notation such as "(1 2 3)(4 5)"; commas may separate entries.
fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner = rest.strip_prefix('(').ok_or_else(|| parse_err(format!("expected `(` in `{text}`")))?;
        let end = inner.find(')').ok_or_else(|| parse_err(format!("unclosed cycle in `{text}`")))?;
        let cyc = inner[..end]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| parse_err(format!("bad point `{s}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        if !cyc.is_empty() {
            out.push(cyc);
        }
        rest = inner[end + 1..].trim_start();
    }
    Ok(out)
}

fn cmd_dessin(t: &PermutationTriple, prop45: Option<&str>) -> Out {
    let v = validate_triple(t);
    let mut results = json!({ "triple": t.to_json(), "validation": v });
    let mut ok = v.product_identity && v.transitive;
    if ok {
        let deck = deck_group(t).map_err(semantic)?;
        results["deck_group_order"] = json!(deck.len());
    }
    if let Some(p) = prop45 {
        let pts: Vec<usize> = p
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| parse_err(format!("bad label `{s}`"))))
            .collect::<Result<_, _>>()?;
        let pts: [usize; 4] = pts.try_into().map_err(|_| parse_err("need four labels"))?;
        let r = prop45_check(t, pts).map_err(semantic)?;
        results["prop45"] = json!(r);
        ok &= r;
    }
    Ok(Report::new("dessin", results, if ok { exit::OK } else { exit::NEGATIVE }))
}

fn cmd_belyi(path: &str) -> Out {
    let p = load_portrait(path)?;
    let passport = portrait_passport(&p).map_err(semantic)?;
    let triples = enumerate_triples(p.degree as usize, &passport).map_err(semantic)?;
    let r = belyi_obstruction(&p, &triples).map_err(semantic)?;
    let results = json!({
        "passport": passport,
        "triples": triples.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
        "obstruction": r,
    });
    Ok(Report::new("dessin", results, verdict_exit(r.verdict)).cite(vec![r.citation]))
}

fn cmd_enumerate(path: &str, graphs: bool, opts: FilterOptions) -> Out {
    let spec: EnumSpec = serde_json::from_str(&read(path)?).map_err(parse_err)?;
    let results = if graphs {
        let gs = surviving_graphs(&spec, opts).map_err(semantic)?;
        json!({ "count": gs.len(), "graphs": gs.iter().map(|g| g.to_json()).collect::<Vec<_>>() })
    } else {
        let ps = enumerate_portraits(&spec).map_err(semantic)?;
        json!({ "count": ps.len(), "portraits": ps })
    };
    Ok(Report::new("enumerate", results, exit::OK))
}

fn cmd_tables(opts: FilterOptions) -> Out {
    let reports = reproduce_tables(opts).map_err(semantic)?;
    let ok = reports.iter().all(|r| r.matches);
    Ok(Report::new("tables", json!(reports), if ok { exit::OK } else { exit::NEGATIVE }))
}

fn quartic_map_checks() -> Result<Vec<Value>, Failure> {
    let field = parse_field("w: w^2+w+1; c: c^3-2")?;
    let g = parse_ratfunc("-z*(z^3+2)/(2*z^3+1)", &field, "z")?;
    let q = parse_ratfunc("1/(z*(z^3+2))", &field, "z")?;
    let push = pushforward(&g, &q)?;
    let a = parse_points("-c, -c*w, -c*w^2, 0", &field)?;
    let b = parse_points("-1, -w, -w^2, 0", &field)?;
    let (rank, _) = coderivative_rank(&g, &a.iter().map(|x| x.1.clone()).collect::<Vec<_>>(), &b.iter().map(|x| x.1.clone()).collect::<Vec<_>>())?;
    let p = Portrait::from_json(include_str!("../fixtures/quartic_lattes.json")).expect("bundled fixture");
    let f = constant_pullback_filter(&p, FilterOptions::default()).map_err(semantic)?;
    Ok(vec![
        json!({"name": "pushforward of 1/(z(z^3+2)) dz^2 is zero", "passed": push.is_zero(), "detail": format!("{push} dz^2")}),
        json!({"name": "coderivative rank is zero", "passed": rank == 0, "detail": format!("rank {rank}")}),
        json!({"name": "filters leave the portrait unobstructed", "passed": f.verdict == Verdict::Unobstructed, "detail": ""}),
    ])
}

fn cmd_verify_42(symbolic: bool, numeric: bool, samples: usize, seed: u64) -> Out {
    let mut checks = quartic_map_checks()?;
    if symbolic {
        let r = match lattes::semiconjugacy_check(0, seed) {
            Ok(r) => r,
            Err(e) => return Ok(Report::new("verify-example-42", json!({ "checks": checks, "error": e.to_string() }), exit::NEGATIVE)),
        };
        checks.extend(r.checks.iter().filter(|c| !c.name.contains("sampled")).map(|c| json!(c)));
    }
    if numeric {
        let r = lattes::semiconjugacy_check(samples, seed).map_err(semantic)?;
        checks.extend(r.checks.iter().filter(|c| c.name.contains("sampled")).map(|c| json!(c)));
        checks.extend(lattes::group_law_samples(samples, seed).checks.iter().map(|c| json!(c)));
        let s = lattes::fiber_cross_ratio(false).map_err(semantic)?;
        let ok = s == s.field().embed(&lattes::expected_cross_ratio());
        checks.push(json!({"name": "fiber cross-ratio at (1, sqrt 2) = 1/(1 + w)", "passed": ok, "detail": s.to_string()}));
    }
    let ok = checks.iter().all(|c| c["passed"] == json!(true));
    Ok(Report::new("verify-example-42", json!({ "checks": checks }), if ok { exit::OK } else { exit::NEGATIVE }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_from_text() {
        assert_eq!(parse_rational("1e-8").unwrap(), BigRational::new(1.into(), 100_000_000.into()));
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational("2.5").unwrap(), BigRational::new(5.into(), 2.into()));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn cycles_from_text() {
        assert_eq!(parse_cycles("(1 2 3)(4,5)").ok().unwrap(), vec![vec![1, 2, 3], vec![4, 5]]);
        assert!(parse_cycles("(1 2").is_err());
    }
}
