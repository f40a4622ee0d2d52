use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use cma_core::centralizer::{brute_force_centralizer_dim_capped, CentralizerReport, DEFAULT_BRUTE_FORCE_CAP};
use cma_core::field::{BaseField, ExtensionField, FieldSpec};
use cma_core::homlab::{hom_dim_report, rational_residue_field, residue_field, HomDimReport, DEFAULT_RESOLUTION_CAP};
use cma_core::json::{self as cj, divisors_from_doc, field_of};
use cma_core::matrix::ElementaryDivisorMultiset;
use cma_core::perm::{class_data, compare_cycle_types, perm_elementary_divisors, CycleType};
use cma_core::sequiv::{s_equivalent, strict_s_equivalent, PowerIndexSet};
use cma_core::{with_base_field, Error, Result};

#[derive(Parser)]
#[command(name = "cma", version, about = "Stable equivalence of centralizer matrix algebras")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "CMA_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Elementary divisors of a matrix.
    Eldiv {
        #[arg(long = "in")]
        input: String,
    },
    /// Decide S-equivalence of two matrices.
    Sequiv {
        #[arg(long, required_unless_present = "pairs", requires = "b")]
        a: Option<String>,
        #[arg(long, requires = "a")]
        b: Option<String>,
        /// Admit only equal power-index sets.
        #[arg(long)]
        strict: bool,
        /// JSON array of {"a": ..., "b": ...}; entries are file paths or inline documents.
        #[arg(long, conflicts_with_all = ["a", "b"])]
        pairs: Option<String>,
    },
    /// Block structure of the centralizer algebra.
    Report {
        #[arg(long = "in")]
        input: String,
        /// Also compute the commutant dimension by linear algebra.
        #[arg(long)]
        oracle: bool,
    },
    /// Permutation classes and their divisors.
    Perm {
        #[arg(long, conflicts_with_all = ["pair", "input"])]
        cycle_type: Option<String>,
        /// Field characteristic, 0 for Q.
        #[arg(long)]
        p: u64,
        #[arg(long)]
        singular: bool,
        /// Compare the cycle types given by --a and --b.
        #[arg(long, requires_all = ["a", "b"])]
        pair: bool,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// JSON file with "cycles" or "cycle_type".
        #[arg(long = "in", conflicts_with = "pair")]
        input: Option<String>,
    },
    /// Homological dimensions of the basic blocks.
    Homdim {
        #[arg(long = "in", required_unless_present = "block", conflicts_with = "block")]
        input: Option<String>,
        /// n,u,p,E... with p = 0 for Q.
        #[arg(long)]
        block: Option<String>,
    },
    /// Run the randomized property suites.
    Oracle {
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

/// JSON payload, its table rendering and the exit code.
struct Output {
    json: Value,
    table: String,
    code: u8,
}

impl Output {
    fn ok(json: Value) -> Self {
        let table = flatten(&json);
        Output { json, table, code: 0 }
    }
}

fn read_doc(path: &str) -> Result<Value> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Error::Parse(format!("stdin: {e}")))?
    } else {
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

/// Inline documents pass through; strings name files relative to `dir`.
fn resolve(v: &Value, dir: &Path) -> Result<Value> {
    match v {
        Value::String(path) => read_doc(&dir.join(path).to_string_lossy()),
        other => Ok(other.clone()),
    }
}

fn eldiv(doc: &Value) -> Result<Output> {
    with_base_field!(field_of(doc)?, |f| {
        let e = divisors_from_doc(&f, doc)?;
        let mut out = Output::ok(json!({"field": f.spec(), "divisors": cj::eldiv_to_json(&e)}));
        out.table = format!("field {}\n{}", f.spec(), divisor_lines(&e));
        Ok(out)
    })
}

fn divisor_lines<F: BaseField>(e: &ElementaryDivisorMultiset<F>) -> String {
    e.groups()
        .iter()
        .map(|g| format!("  {}: {:?}\n", g.irr, g.exps))
        .collect()
}

fn sequiv_docs(a: &Value, b: &Value, strict: bool) -> Result<(Value, bool)> {
    let spec = field_of(a)?;
    let other = field_of(b)?;
    if spec != other {
        return Err(Error::FieldMismatch { left: spec.name(), right: other.name() });
    }
    with_base_field!(spec, |f| {
        let (ea, eb) = (divisors_from_doc(&f, a)?, divisors_from_doc(&f, b)?);
        let v = if strict { strict_s_equivalent(&ea, &eb)? } else { s_equivalent(&ea, &eb)? };
        Ok((cj::verdict_to_json(&v), v.is_equivalent()))
    })
}

fn sequiv(a: &str, b: &str, strict: bool) -> Result<Output> {
    let (json, eq) = sequiv_docs(&read_doc(a)?, &read_doc(b)?, strict)?;
    let mut out = Output::ok(json);
    out.code = if eq { 0 } else { 1 };
    Ok(out)
}

fn sequiv_batch(path: &str, strict: bool) -> Result<Output> {
    let doc = read_doc(path)?;
    let dir = Path::new(path).parent().unwrap_or(Path::new("")).to_path_buf();
    let list = doc.as_array().ok_or_else(|| Error::Parse("pairs file must hold an array".into()))?;
    let results: Vec<Result<(Value, bool)>> = list
        .par_iter()
        .map(|entry| {
            let side = |k: &str| entry.get(k).ok_or_else(|| Error::Parse(format!("pair lacks \"{k}\""))).and_then(|v| resolve(v, &dir));
            sequiv_docs(&side("a")?, &side("b")?, strict)
        })
        .collect();
    let mut code = 0;
    let json: Vec<Value> = results
        .iter()
        .enumerate()
        .map(|(i, r)| match r {
            Ok((v, eq)) => {
                if !eq {
                    code = code.max(1);
                }
                json!({"index": i, "verdict": v})
            }
            Err(e) => {
                code = 2;
                json!({"index": i, "error": cj::error_to_json(e)})
            }
        })
        .collect();
    let mut out = Output::ok(Value::Array(json));
    out.code = code;
    Ok(out)
}

fn report(doc: &Value, oracle: bool) -> Result<Output> {
    with_base_field!(field_of(doc)?, |f| {
        let e = divisors_from_doc(&f, doc)?;
        let r = CentralizerReport::from_divisors(&e);
        let mut json = cj::centralizer_report_to_json(&r);
        let mut table = format!(
            "field {}  n {}  dim {}  simples {}  non-projective simples {}\n{:<16} {:>3} {:>12} {:>6}  {}\n",
            r.field, r.n, r.total_dim, r.num_simples, r.num_nonproj_simples, "irr", "n", "exps", "dim", "kind"
        );
        for b in &r.blocks {
            let kind = if b.is_semisimple {
                "semisimple"
            } else if b.has_nodes {
                "nodes"
            } else {
                "nonsemisimple"
            };
            let exps = format!("{:?}", b.distinct_exps.to_vec());
            table.push_str(&format!("{:<16} {:>3} {:>12} {:>6}  {}\n", b.irr.to_string(), b.n, exps, b.dim_block, kind));
        }
        if oracle {
            let m = match doc.get("matrix") {
                Some(_) => cj::matrix_from_json(&f, doc)?,
                None => e.realize()?,
            };
            let check = match brute_force_centralizer_dim_capped(&m, DEFAULT_BRUTE_FORCE_CAP) {
                Ok(d) => {
                    table.push_str(&format!("brute-force dim {d} ({})\n", if d == r.total_dim { "agrees" } else { "MISMATCH" }));
                    json!({"brute_force_dim": d, "agrees": d == r.total_dim})
                }
                Err(err) => {
                    table.push_str(&format!("brute-force check skipped: {err}\n"));
                    json!({"skipped": cj::error_to_json(&err)})
                }
            };
            json["oracle"] = check;
        }
        Ok(Output { json, table, code: 0 })
    })
}

fn cycle_type_arg(s: &str) -> Result<CycleType> {
    s.parse::<CycleType>()
}

fn perm_single(t: &CycleType, p: u64, singular: bool) -> Result<Output> {
    with_base_field!(FieldSpec::from_characteristic(p)?, |f| {
        let data = class_data(t, p);
        let e = perm_elementary_divisors(&f, t)?;
        let mut json = json!({"class": cj::class_data_to_json(&data), "divisors": cj::eldiv_to_json(&e)});
        let mut table = format!("cycle type {}  over {}\n{}", t, f.spec(), divisor_lines(&e));
        if singular {
            let s = perm_elementary_divisors(&f, &data.singular_part_type)?;
            json["singular_divisors"] = cj::eldiv_to_json(&s);
            table.push_str(&format!("singular part {}\n{}", data.singular_part_type, divisor_lines(&s)));
        }
        Ok(Output { json, table, code: 0 })
    })
}

fn perm_pair(a: &CycleType, b: &CycleType, p: u64, singular: bool) -> Result<Output> {
    with_base_field!(FieldSpec::from_characteristic(p)?, |f| {
        let r = compare_cycle_types(&f, a, b)?;
        let eq = if singular { r.singular_verdict.is_equivalent() } else { r.verdict.is_equivalent() };
        let word = |x: bool| if x { "equivalent" } else { "not equivalent" };
        let table = format!(
            "{} vs {} over {}\n{}\n{}\n{} vs {}: {} (strict: {})\n{} vs {}: {} (strict: {})\n",
            a,
            b,
            f.spec(),
            divisor_lines(&r.left_divisors),
            divisor_lines(&r.right_divisors),
            a,
            b,
            word(r.verdict.is_equivalent()),
            word(r.strict_verdict.is_equivalent()),
            r.left.singular_part_type,
            r.right.singular_part_type,
            word(r.singular_verdict.is_equivalent()),
            word(r.singular_strict_verdict.is_equivalent()),
        );
        Ok(Output { json: cj::perm_pair_to_json(&r), table, code: if eq { 0 } else { 1 } })
    })
}

fn homdim_rows(reports: Vec<(String, HomDimReport)>) -> Output {
    let mut table = format!("{:<16} {:>3} {:>3} {:>12} {:>5} {:>18} {:>10}\n", "irr", "n", "u", "exps", "dim", "gl.dim", "dom.dim");
    let mut json = Vec::new();
    for (irr, r) in reports {
        table.push_str(&format!(
            "{:<16} {:>3} {:>3} {:>12} {:>5} {:>18} {:>10}\n",
            irr,
            r.n,
            r.u,
            format!("{:?}", r.exps),
            r.dim,
            r.gl_dim.to_string(),
            r.dom_dim.to_string()
        ));
        let mut v = serde_json::to_value(&r).expect("report serializes");
        v["irr"] = json!(irr);
        json.push(v);
    }
    Output { json: Value::Array(json), table, code: 0 }
}

fn homdim_doc(doc: &Value, seed: u64) -> Result<Output> {
    with_base_field!(field_of(doc)?, |f| {
        let e = divisors_from_doc(&f, doc)?;
        let mut rows = Vec::new();
        for g in e.groups() {
            let k = ExtensionField::new(f, &g.irr)?;
            let u = g.irr.degree().unwrap_or(1);
            let exps: PowerIndexSet = g.distinct_exps().into_iter().collect();
            rows.push((g.irr.to_string(), hom_dim_report(k, u, g.max_exp(), &exps, DEFAULT_RESOLUTION_CAP, seed)?));
        }
        Ok(homdim_rows(rows))
    })
}

fn homdim_block(spec: &str, seed: u64) -> Result<Output> {
    let nums = spec
        .split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|e| Error::Parse(format!("block {spec:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let [n, u, p, rest @ ..] = nums.as_slice() else {
        return Err(Error::Parse(format!("block {spec:?}: expected n,u,p,E...")));
    };
    let (n, u) = (*n as usize, *u as usize);
    if u == 0 {
        return Err(Error::OutOfRange("u must be positive".into()));
    }
    let exps: PowerIndexSet = if rest.is_empty() { [n].into_iter().collect() } else { rest.iter().map(|&x| x as usize).collect() };
    let report = if *p == 0 {
        let k = rational_residue_field(u)?;
        (k.modulus().to_string(), hom_dim_report(k, u, n, &exps, DEFAULT_RESOLUTION_CAP, seed)?)
    } else {
        let k = residue_field(*p, u)?;
        (k.modulus().to_string(), hom_dim_report(k, u, n, &exps, DEFAULT_RESOLUTION_CAP, seed)?)
    };
    Ok(homdim_rows(vec![report]))
}

fn oracle(seed: u64, trials: usize) -> Output {
    let results = cma_core::oracle::run_all(seed, trials);
    let mut table = String::new();
    let mut json = Vec::new();
    let mut failed = false;
    for r in &results {
        failed |= !r.passed();
        table.push_str(&format!(
            "{:<28} {} {:>5} trials {:>3} failures{}\n",
            r.name,
            if r.passed() { "PASS" } else { "FAIL" },
            r.trials,
            r.failures,
            r.premises.map(|p| format!(" ({p} with premise)")).unwrap_or_default()
        ));
        json.push(json!({
            "suite": r.name,
            "passed": r.passed(),
            "trials": r.trials,
            "failures": r.failures,
            "premises": r.premises,
            "first_failure": r.first_failure,
        }));
    }
    Output { json: json!({"seed": seed, "suites": json}), table, code: if failed { 1 } else { 0 } }
}

/// Generic `path  value` listing for reports without a dedicated layout.
fn flatten(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) if !m.is_empty() => {
                for (k, x) in m {
                    walk(&if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") }, x, out);
                }
            }
            Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            other => out.push_str(&format!("{prefix}  {other}\n")),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Eldiv { input } => eldiv(&read_doc(input)?),
        Command::Sequiv { pairs: Some(path), strict, .. } => sequiv_batch(path, *strict),
        Command::Sequiv { a: Some(a), b: Some(b), strict, .. } => sequiv(a, b, *strict),
        Command::Sequiv { .. } => Err(Error::Parse("sequiv needs --a and --b, or --pairs".into())),
        Command::Report { input, oracle } => report(&read_doc(input)?, *oracle),
        Command::Perm { pair: true, a: Some(a), b: Some(b), p, singular, .. } => {
            perm_pair(&cycle_type_arg(a)?, &cycle_type_arg(b)?, *p, *singular)
        }
        Command::Perm { cycle_type: Some(t), p, singular, .. } => perm_single(&cycle_type_arg(t)?, *p, *singular),
        Command::Perm { input: Some(path), p, singular, .. } => {
            perm_single(&cj::cycle_type_from_json(&read_doc(path)?)?, *p, *singular)
        }
        Command::Perm { .. } => Err(Error::Parse("perm needs --cycle-type, --in, or --pair --a --b".into())),
        Command::Homdim { input: Some(path), .. } => homdim_doc(&read_doc(path)?, cli.seed),
        Command::Homdim { block: Some(spec), .. } => homdim_block(spec, cli.seed),
        Command::Homdim { .. } => Err(Error::Parse("homdim needs --in or --block".into())),
        Command::Oracle { trials } => Ok(oracle(cli.seed, *trials)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.json).expect("json")),
                Format::Table => out.table,
            };
            // a closed pipe downstream is not an error
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            println!("{}", cj::error_to_json(&e));
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn flatten_paths() {
        let t = flatten(&json!({"a": {"b": 1}, "c": [{"d": true}]}));
        assert_eq!(t, "a.b  1\nc[0].d  true\n");
    }
}
