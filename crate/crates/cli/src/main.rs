//! `lievar`: basis dumps, word evaluation, identity checks and the bundled
//! verification manifests.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use lievar::experiment::{self, Manifest, Registry, Report};
use lievar::oracle::{brute_check_identity, FiniteLieRing, OracleCaps};
use lievar::variety::{RelativelyFreeRing, VarietySpec};
use lievar::wordlang::{parse, parse_identities, parse_identity};
use lievar::{CoeffDomain, Error, FreeLieContext, Identity};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "lievar", version, about = "Verbal ideals and relatively free Lie rings")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Context {
    /// Number of free generators.
    #[arg(long, default_value_t = 3)]
    rank: usize,
    /// Nilpotency class cutoff.
    #[arg(long, default_value_t = 3)]
    class: usize,
    /// Coefficient domain: `int` or `zmod:<m>`.
    #[arg(long, default_value = "int")]
    domain: String,
}

impl Context {
    fn domain(&self) -> Result<CoeffDomain, Failure> {
        self.domain.parse().map_err(Failure::from)
    }

    fn free(&self) -> Result<Arc<FreeLieContext>, Failure> {
        if self.rank == 0 || self.class == 0 {
            return Err(Failure::usage("--rank and --class must be at least 1"));
        }
        Ok(Arc::new(FreeLieContext::new(self.rank, self.class, self.domain()?)?))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the Lyndon basis of the free nilpotent ring, one element per line.
    Basis {
        #[command(flatten)]
        ctx: Context,
    },
    /// Evaluate a commutator word on words in the generators `x1, x2, ...`.
    Eval {
        word: String,
        /// `name=WORD`, repeatable.
        #[arg(long = "assign", value_name = "NAME=WORD")]
        assign: Vec<String>,
        /// JSON object mapping variable names to words.
        #[arg(long, value_name = "FILE")]
        assignments: Option<PathBuf>,
        #[command(flatten)]
        ctx: Context,
    },
    /// Check identities in a finite ring or in a relatively free ring.
    Check {
        /// Identity file: one identity per line, `#` comments.
        #[arg(long, value_name = "FILE")]
        identities: Option<PathBuf>,
        /// An identity given inline, repeatable.
        #[arg(long = "identity", value_name = "IDENTITY")]
        identity: Vec<String>,
        /// A finite ring as a JSON structure-constant table.
        #[arg(long, value_name = "FILE", conflicts_with = "variety")]
        ring: Option<PathBuf>,
        /// Identities defining the variety whose relatively free ring is
        /// checked; without it the free nilpotent ring is used.
        #[arg(long, value_name = "FILE")]
        variety: Option<PathBuf>,
        #[command(flatten)]
        ctx: Context,
    },
    /// Run bundled verification manifests.
    Verify {
        /// Manifest id.
        id: Option<String>,
        /// Run the whole quick tier.
        #[arg(long, conflicts_with = "id")]
        all: bool,
        /// With `--all`, add the deep tier.
        #[arg(long, requires = "all")]
        deep: bool,
        /// Manifests to run concurrently.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Read manifests from a JSON file instead of the bundled set.
        #[arg(long, value_name = "FILE")]
        manifests: Option<PathBuf>,
    },
    /// List manifest ids with their tier and statement.
    List {
        #[arg(long, value_name = "FILE")]
        manifests: Option<PathBuf>,
    },
}

/// An error with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::ResourceGuard { .. }) { 3 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn basis(ctx: &Context, json: bool) -> Result<bool, Failure> {
    let f = ctx.free()?;
    let counts: Vec<usize> = (1..=f.class()).map(|d| f.degree_dim(d).unwrap()).collect();
    if json {
        let degrees: Vec<Value> = (1..=f.class())
            .map(|d| {
                let r = f.degree_range(d).unwrap();
                let words: Vec<String> = r.map(|i| f.render_basic(i as u32)).collect();
                json!({"degree": d, "count": words.len(), "basis": words})
            })
            .collect();
        print_json(&json!({
            "rank": f.rank(),
            "class": f.class(),
            "domain": f.domain().to_string(),
            "dimension": f.dimension(),
            "degrees": degrees,
        }));
    } else {
        print!("{}", f.basis_dump());
        let c: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
        eprintln!("counts {}", c.join("/"));
    }
    Ok(true)
}

fn eval(word: &str, assign: &[String], file: Option<&Path>, ctx: &Context, json: bool) -> Result<bool, Failure> {
    let f = ctx.free()?;
    let w = parse(word).map_err(Error::from)?;
    let mut words: Vec<(String, String)> = Vec::new();
    if let Some(p) = file {
        let v: HashMap<String, String> = serde_json::from_str(&read(p)?).map_err(Error::from)?;
        let mut v: Vec<_> = v.into_iter().collect();
        v.sort();
        words.extend(v);
    }
    for a in assign {
        let (name, value) = a
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("assignment `{a}` is not NAME=WORD")))?;
        words.push((name.trim().to_string(), value.trim().to_string()));
    }
    let generators: HashMap<String, _> = (0..f.rank()).map(|i| (f.generator_name(i), f.generator(i).unwrap())).collect();
    let mut values = HashMap::new();
    for (name, text) in &words {
        let v = parse(text).map_err(Error::from)?.evaluate(f.as_ref(), &generators)?;
        values.insert(name.clone(), v);
    }
    if words.is_empty() {
        // bare evaluation: generator names stand for themselves and the
        // other variables take the unused generators in order of appearance
        let vars = w.variables();
        let mut free = (0..f.rank()).filter(|&i| !vars.contains(&f.generator_name(i)));
        for v in &vars {
            let g = match f.generator_named(v) {
                Some(g) => g,
                None => {
                    let i = free.next().ok_or_else(|| {
                        Failure::usage(format!("rank {} has too few generators for `{v}`", f.rank()))
                    })?;
                    words.push((v.clone(), f.generator_name(i)));
                    f.generator(i)?
                }
            };
            values.insert(v.clone(), g);
        }
    }
    let value = w.evaluate(f.as_ref(), &values)?;
    let rendered = f.render(&value);
    if json {
        let degrees: Vec<usize> = (1..=f.class())
            .filter(|&d| !f.graded_component(&value, d).unwrap().is_zero())
            .collect();
        let assignment: serde_json::Map<String, Value> =
            words.iter().map(|(n, t)| (n.clone(), Value::from(t.clone()))).collect();
        print_json(&json!({
            "word": w.to_string(),
            "assignment": assignment,
            "value": rendered,
            "zero": value.is_zero(),
            "degrees": degrees,
        }));
    } else {
        println!("{rendered}");
    }
    Ok(true)
}

fn identities_arg(file: Option<&Path>, inline: &[String]) -> Result<Vec<Identity>, Failure> {
    let mut ids = Vec::new();
    if let Some(p) = file {
        ids.extend(parse_identities(&read(p)?).map_err(Error::from)?);
    }
    for s in inline {
        ids.push(parse_identity(s).map_err(Error::from)?);
    }
    if ids.is_empty() {
        return Err(Failure::usage("no identities given; use --identities or --identity"));
    }
    Ok(ids)
}

fn pairs(p: &[(String, String)]) -> Value {
    Value::Object(p.iter().map(|(k, v)| (k.clone(), Value::from(v.clone()))).collect())
}

fn check(
    ids: &[Identity],
    ring: Option<&Path>,
    variety: Option<&Path>,
    ctx: &Context,
    json: bool,
) -> Result<bool, Failure> {
    let mut results = Vec::new();
    let target;
    if let Some(p) = ring {
        let r = FiniteLieRing::from_json(&read(p)?)?;
        let (valid, violation) = r.validate_structure();
        if !valid {
            let v = violation.expect("violation reported");
            return Err(Failure::usage(format!(
                "{}: not a Lie ring: {} fails at basis {:?} with value {:?}",
                p.display(),
                v.axiom,
                v.basis,
                v.value
            )));
        }
        target = json!({"ring": p.display().to_string(), "modulus": r.modulus(), "rank": r.rank()});
        for ident in ids {
            let v = brute_check_identity(&r, ident, &OracleCaps::default())?;
            results.push(json!({
                "identity": ident.to_string(),
                "holds": v.holds,
                "assignments": v.assignments.to_string(),
                "witness": v.witness.as_deref().map(pairs),
                "value": v.value,
            }));
        }
    } else {
        let domain = ctx.domain()?;
        if ctx.rank == 0 || ctx.class == 0 {
            return Err(Failure::usage("--rank and --class must be at least 1"));
        }
        let defining = match variety {
            Some(p) => parse_identities(&read(p)?).map_err(Error::from)?,
            None => Vec::new(),
        };
        let r = if defining.is_empty() {
            RelativelyFreeRing::free(ctx.rank, ctx.class, domain)?
        } else {
            RelativelyFreeRing::new(&VarietySpec::new(defining.clone(), domain)?, ctx.rank, ctx.class)?
        };
        target = json!({
            "variety": defining.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
            "domain": domain.to_string(),
            "rank": ctx.rank,
            "class": ctx.class,
        });
        for ident in ids {
            let (holds, w) = r.satisfies(ident)?;
            results.push(json!({
                "identity": ident.to_string(),
                "holds": holds,
                "witness": w.as_ref().map(|w| pairs(&w.assignment)),
                "failing": w.as_ref().map(|w| w.combination.clone()),
                "value": w.as_ref().map(|w| w.value.clone()),
            }));
        }
    }
    let pass = results.iter().all(|r| r["holds"] == true);
    if json {
        print_json(&json!({"target": target, "results": results, "pass": pass}));
    } else {
        for r in &results {
            let verdict = if r["holds"] == true { "holds" } else { "FAILS" };
            print!("{verdict}  {}", r["identity"].as_str().unwrap());
            if let Some(w) = r["witness"].as_object() {
                let a: Vec<String> = w.iter().map(|(k, v)| format!("{k}={}", v.as_str().unwrap())).collect();
                print!("  at {}  value {}", a.join(" "), r["value"].as_str().unwrap_or(""));
            }
            println!();
        }
    }
    Ok(pass)
}

fn load(file: Option<&Path>) -> Result<Vec<Manifest>, Failure> {
    match file {
        Some(p) => Ok(serde_json::from_str(&read(p)?).map_err(Error::from)?),
        None => Ok(experiment::bundled()),
    }
}

fn report_line(r: &Report) -> String {
    let verdict = match (r.pass, r.asserted) {
        (true, _) => "PASS",
        (false, true) => "FAIL",
        (false, false) => "REPORT",
    };
    format!("{verdict:<6} {:<28} {:<18} {}", r.id, r.certification.to_string(), r.claim)
}

fn verify(
    id: Option<&str>,
    all: bool,
    deep: bool,
    workers: usize,
    file: Option<&Path>,
    json: bool,
) -> Result<bool, Failure> {
    let available = load(file)?;
    let chosen: Vec<Manifest> = match (id, all) {
        (Some(id), _) => vec![available
            .into_iter()
            .find(|m| m.id == id)
            .ok_or_else(|| Error::UnknownManifest(id.to_string()))?],
        (None, true) => available
            .into_iter()
            .filter(|m| m.tier == experiment::Tier::Quick || (deep && m.tier == experiment::Tier::Deep))
            .collect(),
        (None, false) => return Err(Failure::usage("give a manifest id or --all")),
    };
    let registry = Registry::default();
    let mut reports = Vec::new();
    for r in registry.run_many(&chosen, workers) {
        reports.push(r?);
    }
    let ok = reports.iter().all(Report::ok);
    if json {
        let v = serde_json::to_value(&reports).map_err(Error::from)?;
        match (id, v) {
            (Some(_), Value::Array(mut a)) => print_json(&a.remove(0)),
            (_, v) => print_json(&v),
        }
    } else {
        for r in &reports {
            println!("{}", report_line(r));
            for w in &r.warnings {
                println!("       warning: {w}");
            }
        }
    }
    Ok(ok)
}

fn list(file: Option<&Path>, json: bool) -> Result<bool, Failure> {
    let ms = load(file)?;
    if json {
        let v: Vec<Value> = ms
            .iter()
            .map(|m| json!({"id": m.id, "tier": m.tier, "statement": m.statement}))
            .collect();
        print_json(&Value::Array(v));
    } else {
        for m in &ms {
            let tier = serde_json::to_value(m.tier).unwrap();
            println!("{:<28} {:<6} {}", m.id, tier.as_str().unwrap(), m.statement);
        }
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match &cli.cmd {
        Cmd::Basis { ctx } => basis(ctx, cli.json),
        Cmd::Eval {
            word,
            assign,
            assignments,
            ctx,
        } => eval(word, assign, assignments.as_deref(), ctx, cli.json),
        Cmd::Check {
            identities,
            identity,
            ring,
            variety,
            ctx,
        } => {
            let ids = identities_arg(identities.as_deref(), identity)?;
            check(&ids, ring.as_deref(), variety.as_deref(), ctx, cli.json)
        }
        Cmd::Verify {
            id,
            all,
            deep,
            workers,
            manifests,
        } => verify(id.as_deref(), *all, *deep, *workers, manifests.as_deref(), cli.json),
        Cmd::List { manifests } => list(manifests.as_deref(), cli.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
