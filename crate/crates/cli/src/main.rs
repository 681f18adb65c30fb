use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quiddity::bounds::{candidate_entries, quiddity_bound};
use quiddity::clusters::find_zero_free_cluster;
use quiddity::enumeration::{count_nonzero_with, unit_family};
use quiddity::etacore::{full_product, is_epsilon_cycle, is_quiddity};
use quiddity::frieze::{frieze_from_cycle, verify, FailureKind, FriezeWindow};
use quiddity::json::{
    cycle_from_json, cycle_to_json, element_from_json, element_to_json, enumeration_to_json, frieze_to_json,
    labelling_from_json, labelling_to_json, ring_from_json, rows_from_json,
};
use quiddity::labelling::{cycle_from_labelling, labelling_from_cycle};
use quiddity::reduction::{reduce_to_base, ReductionTrace};
use quiddity::transforms::{
    contract_minus_one, contract_one, contract_uv, contract_zero, expand_minus_one, expand_one, expand_zero,
    rescale_lambda, scale_alternating, shift_zero,
};
use quiddity::worked::{check, fixture_from_json, fixtures, Fixture};
use quiddity::{Cycle, Error, RingDescriptor};

#[derive(Parser)]
#[command(name = "quiddity", version, about = "Quiddity cycles and tame frieze patterns")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

/// A JSON document given inline, as `@path`, or as `-` for standard input.
#[derive(Args)]
struct Input {
    /// JSON input (inline text, `@file` or `-`).
    input: Option<String>,
    /// JSON cycle (same forms as the positional input).
    #[arg(long = "cycle", conflicts_with = "input")]
    cycle: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a cycle is a quiddity cycle.
    VerifyCycle(Input),
    /// Print the frieze pattern of a quiddity cycle.
    Frieze {
        #[command(flatten)]
        input: Input,
        /// Number of staircase rows to print (default: one period).
        #[arg(long)]
        rows: Option<usize>,
    },
    /// Check the determinant conditions on a finite window of a frieze.
    VerifyFrieze(Input),
    /// Apply a local rewrite rule to a cycle.
    Transform {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        rule: Rule,
        /// 1-based position.
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        at: i64,
        /// Parameter of the rule, as a JSON element of the cycle's ring.
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
    },
    /// Print the entry bound and the candidate set size.
    Bound {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        height: i64,
        /// Minimal nonzero absolute value, as a rational `p/q`.
        #[arg(long, default_value = "1")]
        min: String,
    },
    /// Reduce an integer quiddity cycle to (0, 0).
    Reduce {
        #[command(flatten)]
        input: Input,
        /// Re-verify every step of the trace.
        #[arg(long)]
        certify: bool,
    },
    /// Quiddity cycle of an admissible labelling.
    LabelToCycle(Input),
    /// Admissible labelling of an integer quiddity cycle.
    CycleToLabel(Input),
    /// Search for a cluster without zero entries.
    Cluster(Input),
    /// Enumerate non-zero friezes over a discrete ring.
    Enumerate {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        height: i64,
        /// Also report the number of dihedral orbits.
        #[arg(long)]
        orbits: bool,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the full result as JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Members of the infinite family built from divisors of 2.
    UnitFamily {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        height: i64,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Recompute the bundled example friezes and compare them with the fixtures.
    Examples {
        /// Directory of fixture files to use instead of the bundled ones.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rule {
    ExpandOne,
    ContractOne,
    ExpandMinusOne,
    ContractMinusOne,
    ContractZero,
    ExpandZero,
    ShiftZero,
    ContractUv,
    Rescale,
    ScaleAlternating,
}

enum Failure {
    /// Malformed input: exit code 2.
    Usage(String),
    /// A well-formed input without the property asked about: exit code 1.
    Negative,
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidInput(_) | Error::RingMismatch(..) => Failure::Usage(e.to_string()),
            other => Failure::Math(other),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Out {
    format: Format,
}

impl Out {
    fn emit(&self, pretty: impl FnOnce() -> String, value: impl FnOnce() -> Value) {
        match self.format {
            Format::Pretty => println!("{}", pretty()),
            Format::Json => println!("{}", serde_json::to_string(&value()).expect("serializable")),
        }
    }
}

fn read_text(src: &str) -> Result<String, Failure> {
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else if let Some(path) = src.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    } else {
        Ok(src.to_owned())
    }
}

fn parse_json(src: &str) -> Result<Value, Failure> {
    serde_json::from_str(&read_text(src)?).map_err(|e| Failure::Usage(format!("invalid JSON: {e}")))
}

impl Input {
    fn value(&self) -> Result<Value, Failure> {
        let src = self.input.as_ref().or(self.cycle.as_ref()).ok_or_else(|| Failure::Usage("no input given".into()))?;
        parse_json(src)
    }

    fn cycle(&self) -> Result<Cycle, Failure> {
        Ok(cycle_from_json(&self.value()?)?)
    }
}

fn ring_arg(tag: &str) -> Result<RingDescriptor, Failure> {
    Ok(ring_from_json(&Value::String(tag.to_owned()))?)
}

fn verify_cycle(out: &Out, input: &Input) -> Outcome {
    let c = input.cycle()?;
    let q = is_quiddity(&c);
    let eps = if is_epsilon_cycle(&c, 1) { Some(1) } else if q { Some(-1) } else { None };
    out.emit(
        || format!("QUIDDITY: {}\nproduct: {}", if q { "yes" } else { "no" }, full_product(&c)),
        || json!({"quiddity": q, "epsilon": eps, "cycle": cycle_to_json(&c)}),
    );
    if q {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn frieze(out: &Out, input: &Input, rows: Option<usize>) -> Outcome {
    let c = input.cycle()?;
    if !is_quiddity(&c) {
        eprintln!("{c} is not a quiddity cycle");
        return Err(Failure::Negative);
    }
    let f = frieze_from_cycle(&c)?;
    out.emit(|| f.window(rows.unwrap_or(f.period())).to_string(), || frieze_to_json(&f));
    Ok(())
}

fn verify_frieze(out: &Out, input: &Input) -> Outcome {
    let v = input.value()?;
    let ring = ring_from_json(v.get("ring").ok_or_else(|| Failure::Usage("missing \"ring\"".into()))?)?;
    let window = if let Some(rows) = v.get("rows") {
        FriezeWindow::from_staircase(rows_from_json(ring, rows)?)?
    } else if let Some(Value::Array(cells)) = v.get("cells") {
        let cells = cells
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Failure::Usage("each row of \"cells\" must be a list".into()))?
                    .iter()
                    .map(|x| if x.is_null() { Ok(None) } else { Ok(Some(element_from_json(ring, x)?)) })
                    .collect::<Result<Vec<_>, Failure>>()
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        FriezeWindow::new(cells)?
    } else {
        return Err(Failure::Usage("expected \"rows\" (staircase) or \"cells\" (grid)".into()));
    };
    let r = verify(&window);
    let kind = |k: FailureKind| match k {
        FailureKind::Sl2 => "sl2",
        FailureKind::Tame => "tame",
    };
    out.emit(
        || {
            let mut s = format!(
                "SL2: {}\nTAME: {}",
                if r.sl2_ok { "yes" } else { "no" },
                if r.tame_ok { "yes" } else { "no" }
            );
            for (k, i, j) in &r.failures {
                s.push_str(&format!("\n{} block fails at row {i}, column {j}", kind(*k)));
            }
            s
        },
        || {
            json!({
                "sl2": r.sl2_ok,
                "tame": r.tame_ok,
                "failures": r.failures.iter().map(|(k, i, j)| json!({"kind": kind(*k), "row": i, "column": j})).collect::<Vec<_>>(),
            })
        },
    );
    if r.sl2_ok && r.tame_ok {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn transform(out: &Out, input: &Input, rule: Rule, at: i64, param: Option<&str>) -> Outcome {
    let c = input.cycle()?;
    let param = || -> Result<_, Failure> {
        let p = param.ok_or_else(|| Failure::Usage("this rule needs --param".into()))?;
        let v = serde_json::from_str(p).unwrap_or_else(|_| Value::String(p.to_owned()));
        Ok(element_from_json(c.ring(), &v)?)
    };
    let (result, sign) = match rule {
        Rule::ExpandOne => split(expand_one(&c, at)?),
        Rule::ContractOne => split(contract_one(&c, at)?),
        Rule::ExpandMinusOne => split(expand_minus_one(&c, at)?),
        Rule::ContractMinusOne => split(contract_minus_one(&c, at)?),
        Rule::ContractZero => split(contract_zero(&c, at)?),
        Rule::ExpandZero => split(expand_zero(&c, at, &param()?)?),
        Rule::ShiftZero => (shift_zero(&c, at, &param()?)?, 1),
        Rule::ContractUv => (contract_uv(&c, at)?, 1),
        Rule::Rescale => (rescale_lambda(&c, at, &param()?)?, 1),
        Rule::ScaleAlternating => (scale_alternating(&c, &param()?)?, 1),
    };
    out.emit(
        || format!("{result}\nsign: {sign}"),
        || json!({"cycle": cycle_to_json(&result), "sign": sign}),
    );
    Ok(())
}

fn split(s: quiddity::transforms::SignedCycle) -> (Cycle, i64) {
    (s.cycle, s.sign)
}

fn bound(out: &Out, ring: &str, height: i64, min: &str) -> Outcome {
    let ring = ring_arg(ring)?;
    let m: num_rational::BigRational =
        min.parse().map_err(|_| Failure::Usage(format!("--min expects a rational, got {min:?}")))?;
    let b = quiddity_bound(&m, height)?;
    let b2 = &b * &b;
    let size = if ring.is_discrete() && m == num_rational::BigRational::from_integer(1.into()) {
        Some(candidate_entries(ring, height)?.len())
    } else {
        None
    };
    out.emit(
        || {
            let mut s = format!("B = {b}\nB^2 = {b2}");
            if let Some(n) = size {
                s.push_str(&format!("\ncandidates = {n}"));
            }
            s
        },
        || json!({"ring": ring.tag(), "height": height, "B": b.to_string(), "B2": b2.to_string(), "candidates": size}),
    );
    Ok(())
}

fn trace_json(t: &ReductionTrace) -> Value {
    json!({
        "start": cycle_to_json(&t.start),
        "steps": t.steps.iter().map(|s| json!({
            "case": s.case.to_string(),
            "indices": s.indices,
            "before": cycle_to_json(&s.before),
            "after": cycle_to_json(&s.after),
        })).collect::<Vec<_>>(),
    })
}

fn reduce(out: &Out, input: &Input, certify: bool) -> Outcome {
    let c = input.cycle()?;
    if !is_quiddity(&c) {
        eprintln!("{c} is not a quiddity cycle");
        return Err(Failure::Negative);
    }
    let t = reduce_to_base(&c)?;
    if certify {
        t.certify()?;
    }
    out.emit(
        || {
            let mut s = format!("start {}", t.start);
            for step in &t.steps {
                let idx: Vec<String> = step.indices.iter().map(ToString::to_string).collect();
                s.push_str(&format!("\n{} at [{}]: {} -> {}", step.case, idx.join(","), step.before, step.after));
            }
            if certify {
                s.push_str("\ncertified");
            }
            s
        },
        || trace_json(&t),
    );
    Ok(())
}

fn label_to_cycle(out: &Out, input: &Input) -> Outcome {
    let lab = labelling_from_json(&input.value()?)?;
    match cycle_from_labelling(&lab) {
        Ok(c) => {
            out.emit(|| c.to_string(), || cycle_to_json(&c));
            Ok(())
        }
        Err(Error::InvalidInput(msg)) => {
            eprintln!("{msg}");
            Err(Failure::Negative)
        }
        Err(e) => Err(e.into()),
    }
}

fn cycle_to_label(out: &Out, input: &Input) -> Outcome {
    let c = input.cycle()?;
    if c.ring() != RingDescriptor::Integers || !is_quiddity(&c) {
        eprintln!("{c} is not an integer quiddity cycle");
        return Err(Failure::Negative);
    }
    let lab = labelling_from_cycle(&c)?;
    out.emit(|| lab.to_string(), || labelling_to_json(&lab));
    Ok(())
}

fn cluster(out: &Out, input: &Input) -> Outcome {
    let c = input.cycle()?;
    if !is_quiddity(&c) {
        eprintln!("{c} is not a quiddity cycle");
        return Err(Failure::Negative);
    }
    match find_zero_free_cluster(&c)? {
        Some(cl) => {
            out.emit(
                || cl.to_string(),
                || {
                    json!({
                        "diagonals": cl.labels.keys().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
                        "labels": cl.labels.values().map(element_to_json).collect::<Vec<_>>(),
                    })
                },
            );
            Ok(())
        }
        None => {
            out.emit(|| "NONE".into(), || Value::Null);
            Err(Failure::Negative)
        }
    }
}

fn enumerate(out: &Out, ring: &str, height: i64, orbits: bool, jobs: usize, file: Option<&PathBuf>) -> Outcome {
    let ring = ring_arg(ring)?;
    if !ring.is_discrete() {
        return Err(Failure::Usage(format!("{ring} is not a discrete ring")));
    }
    let r = count_nonzero_with(ring, height, jobs)?;
    let v = enumeration_to_json(&r);
    if let Some(path) = file {
        std::fs::write(path, serde_json::to_string_pretty(&v).expect("serializable") + "\n")
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    out.emit(
        || {
            let mut s = if orbits {
                format!("total={} orbits={}", r.total, r.orbit_count)
            } else {
                format!("total={}", r.total)
            };
            s.push_str(&format!("\n\n  ring   n   friezes   orbits\n  {:<6} {:<3} {:<9} {}", ring.tag(), height, r.total, r.orbit_count));
            s
        },
        || v.clone(),
    );
    Ok(())
}

fn family(out: &Out, ring: &str, height: i64, count: usize) -> Outcome {
    let ring = ring_arg(ring)?;
    let fam = unit_family(ring, height, count)?;
    out.emit(
        || fam.iter().map(|(t, c)| format!("t = {t}: {c}")).collect::<Vec<_>>().join("\n"),
        || {
            Value::Array(
                fam.iter().map(|(t, c)| json!({"t": element_to_json(t), "cycle": cycle_to_json(c)})).collect(),
            )
        },
    );
    Ok(())
}

fn examples(out: &Out, dir: Option<&PathBuf>) -> Outcome {
    let list: Vec<Fixture> = match dir {
        None => fixtures(),
        Some(d) => {
            let mut paths: Vec<PathBuf> = std::fs::read_dir(d)
                .map_err(|e| Failure::Usage(format!("{}: {e}", d.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            paths
                .iter()
                .map(|p| Ok(fixture_from_json(&parse_json(&format!("@{}", p.display()))?)?))
                .collect::<Result<_, Failure>>()?
        }
    };
    let mut all_ok = true;
    let mut report = Vec::new();
    let mut lines = Vec::new();
    for f in &list {
        let diff = check(f)?;
        all_ok &= diff.is_empty();
        lines.push(format!("{}: {} ({})", f.name, if diff.is_empty() { "ok" } else { "MISMATCH" }, f.description));
        for d in &diff {
            lines.push(format!("  row {} column {}: expected {}, computed {}", d.row, d.column, d.expected, d.found));
        }
        report.push(json!({"name": f.name, "ok": diff.is_empty(), "mismatches": diff.len()}));
    }
    out.emit(|| lines.join("\n"), || Value::Array(report));
    if all_ok {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

fn run(cli: Cli) -> Outcome {
    let out = Out { format: cli.format };
    match &cli.command {
        Command::VerifyCycle(i) => verify_cycle(&out, i),
        Command::Frieze { input, rows } => frieze(&out, input, *rows),
        Command::VerifyFrieze(i) => verify_frieze(&out, i),
        Command::Transform { input, rule, at, param } => transform(&out, input, *rule, *at, param.as_deref()),
        Command::Bound { ring, height, min } => bound(&out, ring, *height, min),
        Command::Reduce { input, certify } => reduce(&out, input, *certify),
        Command::LabelToCycle(i) => label_to_cycle(&out, i),
        Command::CycleToLabel(i) => cycle_to_label(&out, i),
        Command::Cluster(i) => cluster(&out, i),
        Command::Enumerate { ring, height, orbits, jobs, out: file } => {
            enumerate(&out, ring, *height, *orbits, *jobs, file.as_ref())
        }
        Command::UnitFamily { ring, height, count } => family(&out, ring, *height, *count),
        Command::Examples { fixtures } => examples(&out, fixtures.as_ref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
