//! The `contra` command line: load JSON inputs, run one command, write a
//! JSON report. Exit codes: 0 when every asserted check passes, 1 when a
//! check fails, 2 on input errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::comodule::{hom_comodules, is_injective, Comodule, Side};
use crate::contramodule::{cohom, contratensor, duality_check, hom_contra, Contramodule};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::functors::{adjunction_check, comodule_along, exactness_probe, induce, Exactness};
use crate::io::{self, Loader, Node};
use crate::random::{random_ses, seeded, DEFAULT_SEED};
use crate::sl2::{Catalog, KernelCache};
use crate::towers::{cohom_tower, contra_tower, tower_heads};

#[derive(Debug, Parser)]
#[command(name = "contra", version, about = "Exact computations with coalgebras, comodules and contramodules")]
pub struct Cli {
    /// Seed for randomized probes.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Field for inputs that do not declare one: `Q` or `Fp:<p>`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Also print a human-readable summary on stderr.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of a coalgebra, comodule, contramodule or coalgebra map.
    Verify {
        file: String,
        #[arg(long)]
        kind: Option<String>,
    },
    /// Morphisms between two comodules or two contramodules.
    Hom { a: String, b: String },
    /// `M □ N` for a right comodule `M` and a left comodule `N`.
    Cotensor { m: String, n: String },
    /// `M ⊙ B` for a right comodule `M` and a contramodule `B`.
    Contratensor { m: String, b: String },
    /// `Cohom(M, B)` for a left comodule `M` and a contramodule `B`.
    Cohom { m: String, b: String },
    /// Induction of a contramodule along a coalgebra surjection.
    Induce {
        #[arg(long)]
        rho: String,
        #[arg(long = "W")]
        w: String,
    },
    /// Compare both sides of the induction/restriction adjunction.
    AdjointCheck {
        #[arg(long)]
        rho: String,
        #[arg(long = "W")]
        w: String,
        #[arg(long = "V")]
        v: String,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Apply induction to random short exact sequences.
    Exactness {
        #[arg(long)]
        rho: String,
        #[arg(long)]
        mid: String,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        /// Assert the outcome: `exact` or `not-exact`.
        #[arg(long)]
        expect: Option<String>,
    },
    /// `dim Cohom(V, W)` against `dim Hom(W, V)` for left comodules.
    Duality { v: String, w: String },
    /// `Cohom` towers of the p = 2 catalog.
    Tower {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long)]
        lambda: u64,
        #[arg(long)]
        mmax: u32,
        #[arg(long)]
        battery: String,
    },
    /// Run a job file `{"command", "inputs", "output"?, "seed"?, "field"?}`.
    Run { job: PathBuf },
}

/// A finished command: the report and whether its checks passed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub ok: bool,
}

/// Named inputs: file names or inline objects.
#[derive(Clone, Debug)]
pub struct Job {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub seed: u64,
    pub field: Option<FieldSpec>,
    pub loader: Loader,
}

impl Job {
    fn node(&self, key: &str) -> Result<Node<'_>> {
        let value = self
            .inputs
            .get(key)
            .ok_or_else(|| Error::schema(format!("/inputs/{key}"), format!("missing input `{key}`")))?;
        Ok(Node {
            value,
            pointer: format!("/inputs/{key}"),
        })
    }

    fn u64(&self, key: &str, default: Option<u64>) -> Result<u64> {
        match (self.inputs.get(key), default) {
            (None, Some(d)) => Ok(d),
            _ => self.node(key)?.u64(),
        }
    }

    fn string(&self, key: &str) -> Result<Option<String>> {
        match self.inputs.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(_) => Ok(Some(self.node(key)?.str()?.to_string())),
        }
    }

    /// The common field of the listed inputs and the `--field` flag.
    fn resolve_field(&self, keys: &[&str]) -> Result<FieldSpec> {
        let mut found = self.field;
        for key in keys {
            if let Some(spec) = io::declared_field(&self.loader, &self.node(key)?)? {
                match found {
                    Some(prev) if prev != spec => return Err(Error::FieldMismatch(prev, spec)),
                    _ => found = Some(spec),
                }
            }
        }
        Ok(found.unwrap_or(FieldSpec::Rational))
    }
}

macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Rational => {
                let $f = Rationals;
                $body
            }
            FieldSpec::PrimeField(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data")
}

fn input_keys(command: &str) -> Result<&'static [&'static str]> {
    Ok(match command {
        "verify" => &["file"],
        "hom" => &["a", "b"],
        "cotensor" => &["m", "n"],
        "contratensor" | "cohom" => &["m", "b"],
        "induce" => &["rho", "W"],
        "adjoint-check" => &["rho", "W", "V"],
        "exactness" => &["rho", "mid"],
        "duality" => &["v", "w"],
        "tower" => &["battery"],
        other => return Err(Error::schema("/command", format!("unknown command `{other}`"))),
    })
}

/// Runs a job and assembles the report.
pub fn run_job(job: &Job) -> Result<Outcome> {
    let keys = input_keys(&job.command)?;
    let (spec, (mut body, ok)) = if job.command == "tower" {
        let spec = FieldSpec::PrimeField(job.u64("p", Some(2))?);
        if let Some(given) = job.field.filter(|g| *g != spec) {
            return Err(Error::FieldMismatch(given, spec));
        }
        (spec, run_tower(job)?)
    } else {
        let spec = job.resolve_field(keys)?;
        (spec, with_field!(spec, f => dispatch(f, job)?))
    };
    body.insert("command".into(), json!(job.command));
    body.insert("field".into(), json!(spec.to_string()));
    body.insert("seed".into(), json!(job.seed));
    body.insert("inputs".into(), Value::Object(echo_inputs(job)));
    body.insert("ok".into(), json!(ok));
    Ok(Outcome {
        report: Value::Object(body),
        ok,
    })
}

/// File names are echoed verbatim, inline objects as `"<inline>"`.
fn echo_inputs(job: &Job) -> Map<String, Value> {
    job.inputs
        .iter()
        .map(|(k, v)| {
            let shown = match v {
                Value::Object(_) | Value::Array(_) => json!("<inline>"),
                other => other.clone(),
            };
            (k.clone(), shown)
        })
        .collect()
}

type Body = (Map<String, Value>, bool);

fn body(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn infer_kind(node: &Node, loader: &Loader) -> Result<String> {
    let (value, _) = loader.resolve(node)?;
    if let Some(k) = value.get("kind").and_then(Value::as_str) {
        return Ok(k.to_string());
    }
    let catalog = value.get("catalog").and_then(Value::as_str).unwrap_or("");
    Ok(if value.get("side").is_some() {
        "comodule"
    } else if value.get("theta").is_some() || matches!(catalog, "free" | "from_comodule") {
        "contramodule"
    } else if catalog == "trivial" && value.get("coalgebra").is_some() {
        "contramodule"
    } else if value.get("source").is_some()
        || matches!(
            catalog,
            "identity" | "counit" | "grouplike_quotient" | "divided_power_frobenius" | "matrix_diagonal" | "frobenius_truncation"
        )
    {
        "morphism"
    } else {
        "coalgebra"
    }
    .to_string())
}

fn is_comodule_doc(node: &Node, loader: &Loader) -> Result<bool> {
    Ok(infer_kind(node, loader)? == "comodule")
}

fn dispatch<F: Field>(f: F, job: &Job) -> Result<Body> {
    let l = &job.loader;
    match job.command.as_str() {
        "verify" => {
            let node = job.node("file")?;
            let kind = match job.string("kind")? {
                Some(k) => k,
                None => infer_kind(&node, l)?,
            };
            let (dim, verdict) = match kind.as_str() {
                "coalgebra" => {
                    let c = io::parse_coalgebra(f, l, &node)?;
                    (c.dim(), c.check())
                }
                "comodule" => {
                    let m = io::parse_comodule(f, l, &node)?;
                    (m.dim(), m.check())
                }
                "contramodule" => {
                    let b = io::parse_contramodule(f, l, &node)?;
                    (b.dim(), b.check())
                }
                "morphism" => {
                    let r = io::parse_morphism(f, l, &node)?;
                    (r.matrix.rows(), r.check())
                }
                other => return Err(Error::schema("/kind", format!("unknown kind `{other}`"))),
            };
            let ok = verdict.is_ok();
            Ok((
                body(vec![
                    ("kind", json!(kind)),
                    ("dim", json!(dim)),
                    ("verdict", json!({"ok": ok, "failed": to_value(&verdict.failed)})),
                ]),
                ok,
            ))
        }
        "hom" => {
            let (a, b) = (job.node("a")?, job.node("b")?);
            let dim = if is_comodule_doc(&a, l)? {
                let (m, n) = (valid_comodule(f, l, &a)?, valid_comodule(f, l, &b)?);
                hom_comodules(&m, &n)?.dim()
            } else {
                let (m, n) = (valid_contramodule(f, l, &a)?, valid_contramodule(f, l, &b)?);
                hom_contra(&m, &n)?.dim()
            };
            Ok((body(vec![("dim", json!(dim))]), true))
        }
        "cotensor" => {
            let m = valid_comodule(f, l, &job.node("m")?)?;
            let n = valid_comodule(f, l, &job.node("n")?)?;
            let dim = crate::comodule::cotensor(&m, &n)?.dim();
            Ok((body(vec![("dim", json!(dim))]), true))
        }
        "contratensor" | "cohom" => {
            let m = valid_comodule(f, l, &job.node("m")?)?;
            let b = valid_contramodule(f, l, &job.node("b")?)?;
            let dim = if job.command == "cohom" { cohom(&m, &b)?.dim() } else { contratensor(&m, &b)?.dim() };
            Ok((body(vec![("dim", json!(dim))]), true))
        }
        "induce" => {
            let rho = valid_morphism(f, l, &job.node("rho")?)?;
            let w = valid_contramodule(f, l, &job.node("W")?)?;
            let ind = induce(&rho, &w)?;
            let verdict = ind.induced.check();
            let ok = verdict.is_ok();
            Ok((
                body(vec![
                    ("dim", json!(ind.dim())),
                    ("verdict", json!({"ok": ok, "failed": to_value(&verdict.failed)})),
                    ("induced", io::contramodule_to_json(&ind.induced)),
                ]),
                ok,
            ))
        }
        "adjoint-check" => {
            let rho = valid_morphism(f, l, &job.node("rho")?)?;
            let w = valid_contramodule(f, l, &job.node("W")?)?;
            let v = valid_contramodule(f, l, &job.node("V")?)?;
            let rep = adjunction_check(&rho, &w, &v)?;
            let samples = job.u64("samples", Some(8))? as usize;
            let (total, failures) = exactness_battery(&rho, &w, samples, job.seed)?;
            let ok = rep.holds();
            let mut adj = to_value(&rep);
            adj["holds"] = json!(ok);
            Ok((
                body(vec![
                    ("adjunction", adj),
                    ("exactness", json!({"total": total, "failures": failures})),
                ]),
                ok,
            ))
        }
        "exactness" => {
            let rho = valid_morphism(f, l, &job.node("rho")?)?;
            let mid = valid_contramodule(f, l, &job.node("mid")?)?;
            let samples = job.u64("samples", Some(8))? as usize;
            let (total, failures) = exactness_battery(&rho, &mid, samples, job.seed)?;
            let along = comodule_along(&rho, Side::Left)?;
            let injective = is_injective(&along)?.is_some();
            let exact = failures.is_empty();
            let ok = match job.string("expect")?.as_deref() {
                None => true,
                Some("exact") => exact,
                Some("not-exact") => !exact,
                Some(other) => {
                    return Err(Error::schema("/inputs/expect", format!("expected `exact` or `not-exact`, got `{other}`")))
                }
            };
            Ok((
                body(vec![
                    ("total", json!(total)),
                    ("failures", json!(failures)),
                    ("exact", json!(exact)),
                    ("comodule_along_injective", json!(injective)),
                ]),
                ok,
            ))
        }
        "duality" => {
            let v = valid_comodule(f, l, &job.node("v")?)?;
            let w = valid_comodule(f, l, &job.node("w")?)?;
            let rep = duality_check(&v, &w)?;
            let ok = rep.holds();
            Ok((body(vec![("duality", to_value(&rep)), ("holds", json!(ok))]), ok))
        }
        other => Err(Error::schema("/command", format!("unknown command `{other}`"))),
    }
}

fn exactness_battery<F: Field>(
    rho: &crate::coalgebra::CoalgebraMorphism<F>,
    mid: &Contramodule<F>,
    samples: usize,
    seed: u64,
) -> Result<(usize, Vec<Value>)> {
    let mut rng = seeded(seed);
    let mut failures = Vec::new();
    for i in 0..samples {
        let ses = random_ses(mid, &mut rng);
        if let Exactness::Fails { position, dims } = exactness_probe(rho, &ses)? {
            failures.push(json!({"sample": i, "position": to_value(&position), "dims": dims}));
        }
    }
    Ok((samples, failures))
}

fn invalid(what: &str, verdict: &crate::verdict::Verdict) -> Error {
    Error::Invalid(format!("{what} fails its axioms ({verdict})"))
}

fn valid_comodule<F: Field>(f: F, l: &Loader, node: &Node) -> Result<Comodule<F>> {
    let m = io::parse_comodule(f, l, node)?;
    let v = m.check();
    if !v.is_ok() {
        return Err(invalid(&format!("comodule at {}", node.pointer), &v));
    }
    Ok(m)
}

fn valid_contramodule<F: Field>(f: F, l: &Loader, node: &Node) -> Result<Contramodule<F>> {
    let b = io::parse_contramodule(f, l, node)?;
    let v = b.check();
    if !v.is_ok() {
        return Err(invalid(&format!("contramodule at {}", node.pointer), &v));
    }
    Ok(b)
}

fn valid_morphism<F: Field>(f: F, l: &Loader, node: &Node) -> Result<crate::coalgebra::CoalgebraMorphism<F>> {
    let r = io::parse_morphism(f, l, node)?;
    let v = r.check();
    if !v.is_ok() {
        return Err(invalid(&format!("coalgebra map at {}", node.pointer), &v));
    }
    if !r.surjective {
        return Err(Error::NotSurjective);
    }
    Ok(r)
}

/// Battery documents are `["L0", "L1*L1", ...]` or `{"modules": [...]}`.
fn battery_names(job: &Job) -> Result<Vec<String>> {
    let node = job.node("battery")?;
    let (value, _) = match node.value {
        Value::Array(_) => (node.value.clone(), job.loader.clone()),
        _ => job.loader.resolve(&node)?,
    };
    let root = Node {
        value: &value,
        pointer: node.pointer.clone(),
    };
    let list = if value.is_array() { root } else { root.get("modules")? };
    list.items()?.iter().map(|n| n.str().map(str::to_string)).collect()
}

fn run_tower(job: &Job) -> Result<Body> {
    let p = job.u64("p", Some(2))?;
    let lambda = job.u64("lambda", None)?;
    let mmax = job.u64("mmax", None)? as u32;
    let cat = Catalog::new(p)?;
    let names = battery_names(job)?;
    let modules = names
        .iter()
        .map(|n| cat.parse(n).map_err(|e| Error::schema("/inputs/battery", e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let tower = cat.build_tower(lambda, mmax)?;
    let kernels = KernelCache::new(cat.field());
    let transitions_ok = tower.check_transitions() && contra_tower(&tower, &kernels, tower.m_max()).is_ok();
    let heads = tower_heads(&cat, &kernels, &tower)?;
    let expected = vec![(format!("L{lambda}"), 1usize)];
    let heads_ok = heads.iter().all(|h| *h == expected);
    let mut reports = Vec::new();
    for (name, v) in names.iter().zip(&modules) {
        reports.push(cohom_tower(&cat, &kernels, &tower, name, v)?);
    }
    let all_match = reports.iter().all(|r| r.matches);
    let head_json: Vec<Value> = heads
        .iter()
        .zip(tower.m0..)
        .map(|(h, m)| {
            let parts: BTreeMap<&str, usize> = h.iter().map(|(n, k)| (n.as_str(), *k)).collect();
            json!({"m": m, "head": parts})
        })
        .collect();
    let ok = all_match && heads_ok && transitions_ok;
    Ok((
        body(vec![
            ("lambda", json!(lambda)),
            ("p", json!(p)),
            ("mmax", json!(mmax)),
            ("dims", json!(tower.stages.iter().map(|s| s.dim()).collect::<Vec<_>>())),
            ("towers", to_value(&reports)),
            ("heads", json!(head_json)),
            ("heads_ok", json!(heads_ok)),
            ("transitions_ok", json!(transitions_ok)),
        ]),
        ok,
    ))
}

fn job_from_file(path: &Path, cli: &Cli) -> Result<(Job, Option<PathBuf>)> {
    let loader = Loader::for_file(path);
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    let value: Value = serde_json::from_str(&text)?;
    let root = Node::root(&value);
    let command = root.get("command")?.str()?.to_string();
    let inputs = match root.opt("inputs")? {
        Some(n) => n
            .value
            .as_object()
            .cloned()
            .ok_or_else(|| Error::schema("/inputs", "expected an object"))?,
        None => Map::new(),
    };
    let seed = match root.opt("seed")? {
        Some(n) => n.u64()?,
        None => cli.seed,
    };
    let field = match root.opt("field")? {
        Some(n) => Some(io::parse_field_spec(&n)?),
        None => cli.field.as_deref().map(str::parse).transpose()?,
    };
    let output = root
        .opt("output")?
        .map(|n| n.str().map(|s| loader_path(path, s)))
        .transpose()?;
    Ok((
        Job {
            command,
            inputs,
            seed,
            field,
            loader,
        },
        output,
    ))
}

fn loader_path(job: &Path, rel: &str) -> PathBuf {
    job.parent().map(|d| d.join(rel)).unwrap_or_else(|| PathBuf::from(rel))
}

fn job_from_cli(cli: &Cli) -> Result<Job> {
    let s = |x: &str| Value::String(x.to_string());
    let (command, pairs): (&str, Vec<(&str, Value)>) = match &cli.command {
        Command::Verify { file, kind } => (
            "verify",
            vec![("file", s(file))].into_iter().chain(kind.as_deref().map(|k| ("kind", s(k)))).collect(),
        ),
        Command::Hom { a, b } => ("hom", vec![("a", s(a)), ("b", s(b))]),
        Command::Cotensor { m, n } => ("cotensor", vec![("m", s(m)), ("n", s(n))]),
        Command::Contratensor { m, b } => ("contratensor", vec![("m", s(m)), ("b", s(b))]),
        Command::Cohom { m, b } => ("cohom", vec![("m", s(m)), ("b", s(b))]),
        Command::Induce { rho, w } => ("induce", vec![("rho", s(rho)), ("W", s(w))]),
        Command::AdjointCheck { rho, w, v, samples } => (
            "adjoint-check",
            vec![("rho", s(rho)), ("W", s(w)), ("V", s(v)), ("samples", json!(samples))],
        ),
        Command::Exactness { rho, mid, samples, expect } => (
            "exactness",
            vec![("rho", s(rho)), ("mid", s(mid)), ("samples", json!(samples))]
                .into_iter()
                .chain(expect.as_deref().map(|e| ("expect", s(e))))
                .collect(),
        ),
        Command::Duality { v, w } => ("duality", vec![("v", s(v)), ("w", s(w))]),
        Command::Tower { p, lambda, mmax, battery } => (
            "tower",
            vec![("p", json!(p)), ("lambda", json!(lambda)), ("mmax", json!(mmax)), ("battery", s(battery))],
        ),
        Command::Run { .. } => unreachable!("handled by the caller"),
    };
    Ok(Job {
        command: command.to_string(),
        inputs: pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        seed: cli.seed,
        field: cli.field.as_deref().map(str::parse).transpose()?,
        loader: Loader::new("."),
    })
}

/// Exit code for an error: internal inconsistencies count as failed checks.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistent(_) => 1,
        _ => 2,
    }
}

fn error_report(e: &Error) -> Value {
    let mut v = json!({"error": e.to_string(), "exit_code": exit_code(e)});
    if let Error::Schema { pointer, .. } = e {
        v["pointer"] = json!(pointer);
    }
    v
}

fn pretty(report: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = report {
        for (k, v) in map {
            if k == "induced" {
                continue;
            }
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k:>16}: {shown}\n"));
        }
    }
    out
}

fn emit(report: &Value, out: Option<&Path>, show_pretty: bool) -> Result<()> {
    let text = serde_json::to_string(report)? + "\n";
    match out {
        Some(path) => std::fs::write(path, &text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    if show_pretty {
        eprint!("{}", pretty(report));
    }
    Ok(())
}

/// Parses arguments, runs, writes the report and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let prepared = match &cli.command {
        Command::Run { job } => job_from_file(job, &cli).map(|(j, out)| (j, out.or_else(|| cli.out.clone()))),
        _ => job_from_cli(&cli).map(|j| (j, cli.out.clone())),
    };
    let (job, out) = match prepared {
        Ok(x) => x,
        Err(e) => {
            eprintln!("{}", error_report(&e));
            return exit_code(&e);
        }
    };
    match run_job(&job) {
        Ok(outcome) => match emit(&outcome.report, out.as_deref(), cli.pretty) {
            Ok(()) => i32::from(!outcome.ok),
            Err(e) => {
                eprintln!("{}", error_report(&e));
                2
            }
        },
        Err(e) => {
            eprintln!("{}", error_report(&e));
            exit_code(&e)
        }
    }
}
