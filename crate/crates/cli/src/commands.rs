use std::fmt;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};

use compasskit::construct::{library, run_program, svg, ConstructionProgram, Instruction};
use compasskit::measure::{convergents, euclid_on_lengths, golden_ratio_cf_demo};
use compasskit::mensura::{pi_doubling_table, polygon_area, triangle_metrics, PolygonShape, Recurrence, TriangleSides};
use compasskit::scalar::Tolerance;
use compasskit::solids::{schwarz_lantern_area, LanternSpec, SolidSpec};
use compasskit::verify::{run_suite, suites};

use crate::output::{num, write_atomic};
use crate::{Cli, Command, Format};

pub const TOLERANCE_ENV: &str = "COMPASSKIT_TOLERANCE";

/// A property that was supposed to hold did not; maps to exit status 1.
#[derive(Debug)]
pub struct CheckFailed(pub String);

impl fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

pub fn run(cli: &Cli, out: &mut impl Write) -> Result<ExitCode> {
    let tolerance = tolerance(cli.tolerance.as_deref())?;
    let format = |default: Format, allowed: &[Format]| -> Result<Format> {
        let f = cli.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            bail!("this command cannot print {f:?} output")
        }
    };
    match &cli.command {
        Command::Construct { script, svg, trace } => {
            construct(script, svg.as_deref(), *trace, tolerance, format(Format::Text, &[Format::Text, Format::Json])?, out)
        }
        Command::Verify { suite, seed, samples } => {
            verify(suite, *seed, *samples, format(Format::Text, &[Format::Text, Format::Json])?, out)
        }
        Command::Macros => macros(out),
        Command::PiTable { rounds, stabilized } => {
            pi_table(*rounds, *stabilized, format(Format::Csv, &[Format::Csv, Format::Json])?, out)
        }
        Command::Cf { value, steps, stop_eps } => {
            cf(value, *steps, *stop_eps, format(Format::Csv, &[Format::Csv, Format::Json])?, out)
        }
        Command::SolveTriangle { a, b, c } => {
            solve_triangle(*a, *b, *c, format(Format::Text, &[Format::Text, Format::Json])?, out)
        }
        Command::Mensurate { shape, params } => mensurate(shape, params, format(Format::Json, &[Format::Json, Format::Text])?, out),
        Command::Lantern { radius, height, m, n, sweep } => {
            lantern(*radius, *height, m, *n, *sweep, format(Format::Csv, &[Format::Csv, Format::Json])?, out)
        }
    }
    .map(|_| ExitCode::SUCCESS)
}

/// `eps` or `abs,rel`; the flag wins over the environment.
fn tolerance(flag: Option<&str>) -> Result<Tolerance> {
    let env = std::env::var(TOLERANCE_ENV).ok();
    let Some(spec) = flag.map(str::to_string).or(env) else {
        return Ok(Tolerance::default());
    };
    let parts: Vec<f64> = spec
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("bad tolerance `{spec}`"))?;
    match parts[..] {
        [eps] => Ok(Tolerance::uniform(eps)?),
        [abs, rel] => Ok(Tolerance::new(abs, rel)?),
        _ => bail!("tolerance must be `eps` or `abs,rel`, got `{spec}`"),
    }
}

fn construct(
    script: &Path,
    svg_path: Option<&Path>,
    trace: bool,
    tolerance: Tolerance,
    format: Format,
    out: &mut impl Write,
) -> Result<()> {
    let source = std::fs::read_to_string(script).with_context(|| format!("cannot read {}", script.display()))?;
    let program = ConstructionProgram::parse(&source).map_err(|e| anyhow!("{}: {e}", script.display()))?;
    let ws = match run_program(&program, tolerance) {
        Ok(ws) => ws,
        Err(e) if e.error.is_assertion_failure() => {
            return Err(CheckFailed(format!("{}: {e}", script.display())).into());
        }
        Err(e) => bail!("{}: {e}", script.display()),
    };
    let base = script.parent().unwrap_or(Path::new("."));
    let mut written = Vec::new();
    for emit in ws.emits() {
        let path = base.join(&emit.path);
        write_atomic(&path, svg::render(&ws, emit.object_count).as_bytes())?;
        written.push(path);
    }
    if let Some(path) = svg_path {
        write_atomic(path, svg::render(&ws, ws.len()).as_bytes())?;
        written.push(path.to_path_buf());
    }
    if format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&ws)?)?;
        return Ok(());
    }
    let asserts = ws
        .trace()
        .iter()
        .filter(|s| s.depth == 0 && matches!(s.instruction, Instruction::Assert { .. }))
        .count();
    writeln!(
        out,
        "ok: {} objects, {} assertion(s) passed, {} macro call(s)",
        ws.len(),
        asserts,
        ws.reports().len()
    )?;
    for report in ws.reports() {
        let args: Vec<String> = report.args.iter().map(|a| a.to_string()).collect();
        writeln!(out, "{}({}) -> {}", report.name, args.join(", "), report.outputs.join(", "))?;
        for check in &report.checks {
            writeln!(
                out,
                "  check {}: residual {:.3e} (tolerance {:.1e})",
                check.label,
                check.residual(),
                check.tolerance
            )?;
        }
        for note in &report.notes {
            writeln!(out, "  note: {note}")?;
        }
    }
    if trace {
        for step in ws.trace() {
            writeln!(out, "{}{}", "  ".repeat(step.depth), serde_json::to_string(&step.instruction)?)?;
        }
    }
    for path in written {
        writeln!(out, "wrote {}", path.display())?;
    }
    Ok(())
}

fn verify(suite: &str, seed: u64, samples: usize, format: Format, out: &mut impl Write) -> Result<()> {
    let names: Vec<&str> = if suite == "all" {
        suites().iter().map(|s| s.name).collect()
    } else {
        vec![suite]
    };
    let mut reports = Vec::new();
    for name in names {
        reports.push(run_suite(name, seed, samples)?);
    }
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?,
        _ => {
            for r in &reports {
                write!(out, "{r}")?;
            }
        }
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.suite.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CheckFailed(format!("suite(s) {} reported violations", failed.join(", "))).into())
    }
}

fn macros(out: &mut impl Write) -> Result<()> {
    writeln!(out, "macros:")?;
    for def in library() {
        let params: Vec<String> = def.params.iter().map(|p| format!("{p:?}").to_lowercase()).collect();
        writeln!(out, "  {}({}): {}", def.name, params.join(", "), def.summary)?;
    }
    writeln!(out, "suites:")?;
    for s in suites() {
        writeln!(out, "  {}: {}", s.name, s.summary)?;
    }
    Ok(())
}

fn pi_table(rounds: u32, stabilized: bool, format: Format, out: &mut impl Write) -> Result<()> {
    let rec = if stabilized { Recurrence::Stabilized } else { Recurrence::Naive };
    let table = pi_doubling_table(rounds, rec)?;
    if format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&table)?)?;
        return Ok(());
    }
    writeln!(out, "n,a_n,p_n,pi_est,error")?;
    for row in &table.rows {
        writeln!(
            out,
            "{},{},{},{},{:.3e}",
            row.n,
            num(row.side),
            num(row.perimeter),
            num(row.pi_estimate()),
            row.error()
        )?;
    }
    Ok(())
}

fn cf(value: &str, steps: usize, stop_eps: f64, format: Format, out: &mut impl Write) -> Result<()> {
    let (expansion, target) = match value {
        "sqrt2" => (euclid_on_lengths(2f64.sqrt(), 1.0, steps, stop_eps)?, 2f64.sqrt()),
        "pi" => (euclid_on_lengths(std::f64::consts::PI, 1.0, steps, stop_eps)?, std::f64::consts::PI),
        "phi" => (golden_ratio_cf_demo(steps)?, (1.0 + 5f64.sqrt()) / 2.0),
        other => {
            let (a, b) = match other.split_once(':') {
                Some((a, b)) => (a.trim().parse::<f64>(), b.trim().parse::<f64>()),
                None => (other.trim().parse::<f64>(), Ok(1.0)),
            };
            let (a, b) = (
                a.with_context(|| format!("bad value `{other}`"))?,
                b.with_context(|| format!("bad value `{other}`"))?,
            );
            (euclid_on_lengths(a, b, steps, stop_eps)?, a / b)
        }
    };
    let conv = convergents(&expansion, expansion.len())?;
    if format == Format::Json {
        let rows: Vec<Value> = conv
            .iter()
            .zip(&expansion.quotients)
            .map(|(c, q)| json!({"quotient": q, "p": c.p, "q": c.q, "value": c.value(), "error": c.value() - target}))
            .collect();
        let doc = json!({"expansion": expansion, "convergents": rows});
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        return Ok(());
    }
    writeln!(out, "k,quotient,p,q,value,error")?;
    for (k, (c, q)) in conv.iter().zip(&expansion.quotients).enumerate() {
        writeln!(out, "{},{},{},{},{},{:.3e}", k + 1, q, c.p, c.q, num(c.value()), c.value() - target)?;
    }
    Ok(())
}

fn solve_triangle(a: f64, b: f64, c: f64, format: Format, out: &mut impl Write) -> Result<()> {
    let m = triangle_metrics(&TriangleSides::new(a, b, c)?)?;
    let class = format!("{:?}", m.angle_classification()).to_lowercase();
    if format == Format::Json {
        let mut doc = serde_json::to_value(&m)?;
        doc["classification"] = Value::String(class);
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        return Ok(());
    }
    let triple = |v: [f64; 3]| format!("{} {} {}", num(v[0]), num(v[1]), num(v[2]));
    let deg = m.angles.map(f64::to_degrees);
    writeln!(out, "sides           {}", triple([m.a, m.b, m.c]))?;
    writeln!(out, "perimeter       {}", num(m.perimeter))?;
    writeln!(out, "area            {}", num(m.area))?;
    writeln!(out, "heights         {}", triple(m.heights))?;
    writeln!(out, "medians         {}", triple(m.medians))?;
    writeln!(out, "angles (deg)    {}", triple(deg))?;
    writeln!(out, "classification  {class}")?;
    writeln!(out, "circumradius    {}", num(m.circumradius))?;
    writeln!(out, "inradius        {}", num(m.inradius))?;
    writeln!(out, "projections on a  c'={} b'={}", num(m.c_projection), num(m.b_projection))?;
    for (label, (x, y)) in ["A", "B", "C"].iter().zip(m.bisector_splits) {
        writeln!(out, "bisector {label}      {} {}", num(x), num(y))?;
    }
    Ok(())
}

/// `key=value` pairs into a JSON object; integers stay integers.
fn params_object(kind: &str, params: &[String]) -> Result<Map<String, Value>> {
    let mut map = Map::new();
    map.insert("kind".into(), Value::String(kind.to_string()));
    for p in params {
        let (k, v) = p.split_once('=').ok_or_else(|| anyhow!("expected key=value, got `{p}`"))?;
        let value = if let Ok(i) = v.parse::<u64>() {
            json!(i)
        } else {
            json!(v.parse::<f64>().with_context(|| format!("`{k}` is not a number: `{v}`"))?)
        };
        if map.insert(k.to_string(), value).is_some() {
            bail!("`{k}` given twice");
        }
    }
    Ok(map)
}

fn number(map: &Map<String, Value>, key: &str) -> Option<f64> {
    map.get(key).and_then(Value::as_f64)
}

fn mensurate(shape: &str, params: &[String], format: Format, out: &mut impl Write) -> Result<()> {
    let doc = if shape == "solid" {
        let (kind, rest) = params.split_first().ok_or_else(|| anyhow!("`mensurate solid` needs a kind"))?;
        let mut map = params_object(kind, rest)?;
        let slant = map.remove("L").map(|v| v.as_f64().unwrap_or(f64::NAN));
        let spec = match (kind.as_str(), slant) {
            (_, None) => serde_json::from_value::<SolidSpec>(Value::Object(map))?,
            ("cone", Some(l)) if map.len() == 2 => {
                SolidSpec::cone_from_slant(number(&map, "R").ok_or_else(|| anyhow!("missing R"))?, l)?
            }
            ("cone-frustum", Some(l)) if map.len() == 3 => SolidSpec::cone_frustum_from_slant(
                number(&map, "R").ok_or_else(|| anyhow!("missing R"))?,
                number(&map, "r").ok_or_else(|| anyhow!("missing r"))?,
                l,
            )?,
            _ => bail!("L (slant height) replaces H for cone and cone-frustum only"),
        };
        serde_json::to_value(spec.measures()?)?
    } else {
        let shape: PolygonShape = serde_json::from_value(Value::Object(params_object(shape, params)?))?;
        json!({"area": polygon_area(&shape)?})
    };
    match format {
        Format::Text => {
            for (k, v) in doc.as_object().expect("object") {
                let text = v.as_f64().map(num).unwrap_or_else(|| v.to_string());
                writeln!(out, "{k} {text}")?;
            }
        }
        _ => writeln!(out, "{doc}")?,
    }
    Ok(())
}

/// Slab count for a given n: a fixed integer or `n`, `n^2`, `n^3`.
fn slabs(expr: &str, n: u64) -> Result<u64> {
    let expr = expr.trim();
    if let Ok(m) = expr.parse::<u64>() {
        return Ok(m);
    }
    let power = match expr {
        "n" => 1,
        _ => expr
            .strip_prefix("n^")
            .and_then(|p| p.parse::<u32>().ok())
            .filter(|p| (1..=3).contains(p))
            .ok_or_else(|| anyhow!("--m must be an integer or n, n^2, n^3; got `{expr}`"))?,
    };
    n.checked_pow(power).ok_or_else(|| anyhow!("m = {expr} overflows at n = {n}"))
}

fn lantern(
    radius: f64,
    height: f64,
    m: &str,
    n: Option<u64>,
    sweep: Option<u64>,
    format: Format,
    out: &mut impl Write,
) -> Result<()> {
    let ns: Vec<u64> = match (n, sweep) {
        (_, Some(top)) => (3..=top).collect(),
        (Some(n), None) => vec![n],
        (None, None) => bail!("give --n or --sweep"),
    };
    let mut rows = Vec::with_capacity(ns.len());
    for n in ns {
        let m = slabs(m, n)?;
        let s = schwarz_lantern_area(&LanternSpec { radius, height, m, n })?;
        rows.push((n, m, s));
    }
    if format == Format::Json {
        let doc: Vec<Value> = rows.iter().map(|(n, m, s)| json!({"n": n, "m": m, "S": s})).collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        return Ok(());
    }
    writeln!(out, "n,m,S")?;
    for (n, m, s) in rows {
        writeln!(out, "{n},{m},{}", num(s))?;
    }
    Ok(())
}
