//! Command-line front end. Every command builds a [`CommandResult`]; `--json`
//! prints it with sorted keys, otherwise a short text summary is printed.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{self, AlgebraData};
use crate::casimir;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::ktype::{self, Family, KType, Weight};
use crate::minrep::{self, Mode};
use crate::submodule;
use crate::transition;
use crate::unitarity;

#[derive(Parser, Debug)]
#[command(name = "pseries", version, about = "Exact K-type and transition calculator for Heisenberg-parabolic principal series")]
pub struct Cli {
    /// Print the full result as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print only the headline line.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArg {
    /// Algebra name, e.g. `e7_7`, `so4d(8)` or `so4d 8`.
    #[arg(required = true, num_args = 1..=2)]
    pub algebra: Vec<String>,
}

impl AlgebraArg {
    fn resolve(&self) -> Result<AlgebraData> {
        let name = match self.algebra.as_slice() {
            [one] => one.clone(),
            [head, d] if head.eq_ignore_ascii_case("so4d") => format!("so4d({d})"),
            other => return Err(Error::NotInCatalog(other.join(" "))),
        };
        algebra::lookup_name(&name)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the catalog.
    Algebras,
    /// Enumerate admissible K-types.
    Ktypes {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long, default_value_t = 4)]
        max_degree: i64,
        #[arg(long, default_value = "even")]
        family: Family,
    },
    /// Casimir and Omega eigenvalues on a K-type.
    Casimir {
        #[command(flatten)]
        alg: AlgebraArg,
        /// Highest weight `a,b,c,d`.
        #[arg(long)]
        mu: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        p: i64,
        /// `N` or `N/D`; defaults to `a+2` where Omega is defined.
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<Rational>,
    },
    /// Edges out of one K-type with their factors.
    Edges {
        #[command(flatten)]
        alg: AlgebraArg,
        /// `a,b,c,d;l,p`
        #[arg(long, allow_hyphen_values = true)]
        ktype: String,
        #[arg(long, default_value = "even")]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<Rational>,
    },
    /// Transition graph at fixed `ν`.
    Graph {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long, allow_hyphen_values = true)]
        nu: Rational,
        #[arg(long, default_value_t = 4)]
        max_degree: i64,
        #[arg(long, default_value = "even")]
        family: Family,
        /// Write a Graphviz file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Complementary-series bound.
    CompSeries {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long, default_value = "even")]
        family: Family,
        #[arg(long)]
        search_degree: Option<i64>,
    },
    /// Reducibility candidates `ν̃` in a range.
    Reducibility {
        #[command(flatten)]
        alg: AlgebraArg,
        /// `a..b`, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value = "even")]
        family: Family,
        #[arg(long, default_value_t = 12)]
        max_degree: i64,
    },
    /// Closed subsets of the graph at fixed `ν`.
    Submodules {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long, allow_hyphen_values = true)]
        nu: Rational,
        #[arg(long, default_value_t = 8)]
        max_degree: i64,
        #[arg(long, default_value = "even")]
        family: Family,
    },
    /// The Omega kernel and the minimal K-type line.
    Minrep {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long, default_value_t = 6)]
        max_n: i64,
    },
}

/// Output record of every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub command: String,
    pub algebra: String,
    pub parameters: BTreeMap<String, Value>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub paper_expectation: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matches_paper: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip)]
    headline: String,
}

impl CommandResult {
    fn new(command: &str, algebra: String, result: Value, headline: String) -> Self {
        CommandResult {
            command: command.to_string(),
            algebra,
            parameters: BTreeMap::new(),
            result,
            paper_expectation: None,
            matches_paper: None,
            notes: Vec::new(),
            headline,
        }
    }

    fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(key.to_string(), to_value(value));
        self
    }

    fn expect(mut self, expectation: Value, matches: bool) -> Self {
        self.paper_expectation = Some(expectation);
        self.matches_paper = Some(matches);
        self
    }

    /// Canonical JSON: keys sorted, rationals as `"num/den"` strings.
    pub fn to_json(&self) -> String {
        let value = to_value(self);
        serde_json::to_string_pretty(&value).expect("values are serializable")
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("values are serializable")
}

pub fn parse_weight(s: &str) -> Result<Weight> {
    let parts: Vec<&str> = s.trim().trim_matches(|c| c == '(' || c == ')').split(',').collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!("expected four comma-separated integers, got {s:?}")));
    }
    let mut mu = [0; 4];
    for (slot, part) in mu.iter_mut().zip(parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {part:?}")))?;
    }
    Ok(mu)
}

/// Parses `a,b,c,d;l,p`, with optional surrounding parentheses.
pub fn parse_ktype(s: &str, family: Family) -> Result<KType> {
    let inner = s.trim().trim_matches(|c| c == '(' || c == ')');
    let (mu, lp) = inner
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("expected a,b,c,d;l,p, got {s:?}")))?;
    let (l, p) = lp
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected l,p after ';', got {lp:?}")))?;
    let num = |x: &str| {
        x.trim()
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("not an integer: {x:?}")))
    };
    Ok(KType::new(parse_weight(mu)?, num(l)?, num(p)?, family))
}

pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("expected a..b, got {s:?}")))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let num = |x: &str| {
        x.trim()
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("not an integer: {x:?}")))
    };
    let (a, b) = (num(a)?, num(b)?);
    if a > b {
        return Err(Error::InvalidParameter(format!("empty range {a}..{b}")));
    }
    Ok((a, b))
}

fn fmt_weight(mu: &Weight) -> String {
    format!("({},{},{},{})", mu[0], mu[1], mu[2], mu[3])
}

fn fmt_bound(b: Option<i64>) -> String {
    b.map_or("none".to_string(), |v| v.to_string())
}

fn algebras() -> CommandResult {
    let mut rows: Vec<Value> = algebra::named_catalog()
        .iter()
        .map(|alg| {
            json!({
                "name": alg.name(),
                "case": alg.case_tag,
                "a": alg.a,
                "d": alg.d,
                "rho": alg.rho,
                "rho_g": alg.rho_g,
                "omega_defined": alg.has_omega(),
            })
        })
        .collect();
    rows.push(json!({
        "name": "so4d(d)",
        "case": "QuaternionicSO4d",
        "a": "d-4",
        "d": "d",
        "rho": "(1,1,d-3,1)",
        "rho_g": "d+1",
        "omega_defined": "d even",
    }));
    let checks = algebra::validate_catalog();
    let all_ok = checks.iter().all(|c| c.ok());
    let mut r = CommandResult::new(
        "algebras",
        "catalog".into(),
        json!({ "rows": rows, "identities_hold": all_ok, "checked_so4d": "4..=40" }),
        format!("{} rows; identities hold: {all_ok}", rows.len()),
    );
    r.notes.push("so4d(d) is a family: pass any d >= 4, e.g. so4d(8) or `so4d 8`".into());
    r
}

fn ktypes(alg: &AlgebraData, max_degree: i64, family: Family) -> CommandResult {
    let list = ktype::enumerate(alg, max_degree, family);
    let shown: Vec<String> = list.iter().map(|k| k.to_string()).collect();
    CommandResult::new(
        "ktypes",
        alg.name(),
        json!({ "count": list.len(), "ktypes": shown }),
        format!("{} K-types up to degree {max_degree}", list.len()),
    )
    .param("family", family)
    .param("max_degree", max_degree)
}

fn casimir_cmd(alg: &AlgebraData, mu: &str, p: i64, nu: Option<Rational>) -> Result<CommandResult> {
    let mu = parse_weight(mu)?;
    if !ktype::is_admissible(alg, &mu, p) {
        return Err(Error::InvalidKType(format!("{} with p={p}", fmt_weight(&mu)), alg.name()));
    }
    let report = casimir::eigenvalue_report(alg, &mu, p, nu.clone());
    let headline = match &report.omega {
        Some(o) => format!("Cas(mu)={} Cas2(p)={} Omega={}", report.cas_mu, report.cas2_p, o),
        None => format!("Cas(mu)={} Cas2(p)={}", report.cas_mu, report.cas2_p),
    };
    let mut r = CommandResult::new("casimir", alg.name(), to_value(&report), headline)
        .param("mu", mu)
        .param("p", p);
    if let Some(nu) = nu {
        r = r.param("nu", nu);
    }
    if !alg.has_omega() {
        r.notes.push(Error::OmegaNotDefined(alg.name()).to_string());
    }
    Ok(r)
}

fn edges_cmd(alg: &AlgebraData, k: &str, family: Family, nu: Option<Rational>) -> Result<CommandResult> {
    let k = parse_ktype(k, family)?;
    let edges = transition::edges_from(alg, &k)?;
    let rows: Vec<Value> = edges
        .iter()
        .map(|e| {
            let f = transition::affine_factor(alg, e);
            let mut row = json!({
                "shift": e.shift,
                "target": e.target.to_string(),
                "folded": e.folded,
                "c": f.c,
                "zero_at_nu": f.zero_at(),
            });
            if let Some(nu) = &nu {
                row["factor"] = to_value(f.at(nu));
            }
            row
        })
        .collect();
    let mut r = CommandResult::new(
        "edges",
        alg.name(),
        json!({ "source": k.to_string(), "count": rows.len(), "edges": rows }),
        format!("{} edges from {k}", edges.len()),
    )
    .param("family", family)
    .param("ktype", k.to_string());
    if let Some(nu) = nu {
        r = r.param("nu", nu);
    }
    Ok(r)
}

fn graph_cmd(
    alg: &AlgebraData,
    nu: &Rational,
    max_degree: i64,
    family: Family,
    dot: Option<&PathBuf>,
) -> Result<CommandResult> {
    let g = transition::build_graph(alg, nu, max_degree, family);
    if let Some(path) = dot {
        std::fs::write(path, g.to_dot())
            .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))?;
    }
    let blocked = g.edges.iter().filter(|e| e.blocked).count();
    let boundary = g.boundary_edges().count();
    let headline = format!(
        "{} nodes, {} edges ({blocked} blocked, {boundary} boundary)",
        g.nodes.len(),
        g.edges.len()
    );
    let mut r = CommandResult::new("graph", alg.name(), to_value(&g), headline)
        .param("family", family)
        .param("max_degree", max_degree)
        .param("nu", nu);
    if let Some(path) = dot {
        r = r.param("dot", path.display().to_string());
    }
    Ok(r)
}

fn comp_series_cmd(alg: &AlgebraData, family: Family, search_degree: Option<i64>) -> Result<CommandResult> {
    let report = unitarity::comp_series_bound(alg, family, search_degree)?;
    let headline = format!("bound {}", fmt_bound(report.bound));
    let mut r = CommandResult::new("comp-series", alg.name(), to_value(&report), headline)
        .param("family", family)
        .param("search_degree", report.search_degree);
    match unitarity::stated_bound(alg, family) {
        Some(stated) => {
            r = r.expect(json!({ "bound": stated }), stated == report.bound);
        }
        None => r.notes.push("no tabulated value for the raw family".into()),
    }
    Ok(r)
}

fn reducibility_cmd(alg: &AlgebraData, range: &str, family: Family, max_degree: i64) -> Result<CommandResult> {
    let (lo, hi) = parse_range(range)?;
    let report = submodule::reducibility_points(alg, family, lo..=hi, max_degree);
    let headline = format!("candidates {:?}", report.candidates);
    let matches = report.parity_matches;
    let parity = report.stated_parity;
    Ok(
        CommandResult::new("reducibility", alg.name(), to_value(&report), headline)
            .param("family", family)
            .param("max_degree", max_degree)
            .param("range", format!("{lo}..{hi}"))
            .expect(json!({ "parity": parity }), matches),
    )
}

fn submodules_cmd(alg: &AlgebraData, nu: &Rational, max_degree: i64, family: Family) -> CommandResult {
    let report = submodule::finite_submodules(alg, nu, family, max_degree);
    let headline = format!("{} closed subsets", report.subsets.len());
    let shown: Vec<Vec<String>> = report
        .subsets
        .iter()
        .map(|s| s.iter().map(|k| k.to_string()).collect())
        .collect();
    let mut result = to_value(&report);
    result["subsets_text"] = to_value(shown);
    let theorem_point = report.theorem_point;
    let found = !report.subsets.is_empty();
    let mut r = CommandResult::new("submodules", alg.name(), result, headline)
        .param("family", family)
        .param("max_degree", max_degree)
        .param("nu", nu);
    if theorem_point {
        r = r.expect(json!({ "finite_dimensional_submodule": true }), found);
    }
    if let Some(label) = report.label {
        r.notes.push(label);
    }
    r
}

fn minrep_cmd(alg: &AlgebraData, max_n: i64) -> Result<CommandResult> {
    let report = minrep::minrep_ktypes(alg, max_n)?;
    let headline = format!(
        "{} weights in closure; line {}; multiplicity one {}",
        report.inventory.len(),
        if report.inventory_matches_line { "matches" } else { "differs" },
        report.multiplicity_one
    );
    let notes = report.notes.clone();
    let mode = report.mode;
    let matches = report.inventory_matches_line && report.multiplicity_one;
    let mut r = CommandResult::new("minrep", alg.name(), to_value(&report), headline)
        .param("max_n", max_n)
        .param("nu", casimir::minrep_nu(alg));
    if mode == Mode::Asserted {
        r = r.expect(
            json!({ "inventory": format!("(a+n,n,n,n), n = 0..={max_n}"), "multiplicity": 1 }),
            matches,
        );
    }
    r.notes = notes;
    Ok(r)
}

fn execute(cli: &Cli) -> Result<CommandResult> {
    Ok(match &cli.command {
        Command::Algebras => algebras(),
        Command::Ktypes { alg, max_degree, family } => ktypes(&alg.resolve()?, *max_degree, *family),
        Command::Casimir { alg, mu, p, nu } => casimir_cmd(&alg.resolve()?, mu, *p, nu.clone())?,
        Command::Edges { alg, ktype, family, nu } => edges_cmd(&alg.resolve()?, ktype, *family, nu.clone())?,
        Command::Graph { alg, nu, max_degree, family, dot } => {
            graph_cmd(&alg.resolve()?, nu, *max_degree, *family, dot.as_ref())?
        }
        Command::CompSeries { alg, family, search_degree } => {
            comp_series_cmd(&alg.resolve()?, *family, *search_degree)?
        }
        Command::Reducibility { alg, range, family, max_degree } => {
            reducibility_cmd(&alg.resolve()?, range, *family, *max_degree)?
        }
        Command::Submodules { alg, nu, max_degree, family } => {
            submodules_cmd(&alg.resolve()?, nu, *max_degree, *family)
        }
        Command::Minrep { alg, max_n } => minrep_cmd(&alg.resolve()?, *max_n)?,
    })
}

fn render_text(r: &CommandResult, quiet: bool) -> String {
    let mut out = format!("{} {}: {}\n", r.command, r.algebra, r.headline);
    if quiet {
        return out;
    }
    for (k, v) in &r.parameters {
        out.push_str(&format!("  {k} = {v}\n"));
    }
    if let Some(exp) = &r.paper_expectation {
        out.push_str(&format!("  expected: {exp}\n"));
    }
    if let Some(m) = r.matches_paper {
        out.push_str(&format!("  matches expected: {m}\n"));
    }
    for n in &r.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
    out
}

/// Runs one invocation and returns the exit status: 0 on success, 1 on a
/// domain error, 2 on an argument error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli) {
        Ok(r) => {
            let text = if cli.json {
                r.to_json() + "\n"
            } else {
                render_text(&r, cli.quiet)
            };
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("pseries").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn parsers() {
        assert_eq!(parse_weight("(3,1,1,1)").unwrap(), [3, 1, 1, 1]);
        assert!(parse_weight("1,2,3").is_err());
        let k = parse_ktype("3,1,1,1;1,-1", Family::Raw).unwrap();
        assert_eq!((k.mu, k.l, k.p), ([3, 1, 1, 1], 1, -1));
        assert_eq!(parse_range("-5..5").unwrap(), (-5, 5));
        assert_eq!(parse_range("-5..=5").unwrap(), (-5, 5));
        assert!(parse_range("3..1").is_err());
    }

    #[test]
    fn algebra_argument_forms() {
        for args in [["ktypes", "so4d", "8"].as_slice(), ["ktypes", "so4d(8)"].as_slice()] {
            let (code, out, _) = call(args);
            assert_eq!(code, 0);
            assert!(out.starts_with("ktypes so4d(8)"));
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["comp-series"]).0, 2);
        assert_eq!(call(&["bogus"]).0, 2);
        assert_eq!(call(&["comp-series", "g2"]).0, 1);
        assert_eq!(call(&["minrep", "e7_7"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn json_round_trip() {
        let (code, out, _) = call(&["--json", "comp-series", "e7_7", "--search-degree", "16"]);
        assert_eq!(code, 0);
        let parsed: CommandResult = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed.matches_paper, Some(true));
        assert_eq!(parsed.to_json() + "\n", out);
    }
}
