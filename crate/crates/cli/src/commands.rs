use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use parrondo_lab::gallery::{gallery_get, run_selected, GallerySystem, ENTRY_NAMES};
use parrondo_lab::jet::{parse_rational, Jet1D, Rational};
use parrondo_lab::periodic::{
    construct_1d_triple, construct_2d_pair, detect_parrondo_1d, detect_parrondo_2d, CompositionJet,
    MapVerdict, PeriodicSystem1D, PeriodicSystem2D,
};
use parrondo_lab::planar::{
    birkhoff_b1, complex_to_real, fmt_complex, real_to_complex, BirkhoffResult, PlanarPolyMap,
    PlanarVerdict,
};
use parrondo_lab::simulate::{
    empirical_report, iterate_orbit, unbounded_demo, NumericSystem, OrbitResult, OrbitStatus,
    SimConfig,
};
use parrondo_lab::stability1d::{classify_1d, stability_constants};
use parrondo_lab::Error;
use serde_json::{json, Value};

use crate::args::{Cli, Command, ConstructCommand, SimulateArgs};
use crate::mapfile::{doc_json, map1d_json, map2d_json, parse_map_file, to_file_string, MapDoc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EmptyCoefficients
            | Error::EmptySystem
            | Error::MixedOrders(..)
            | Error::InvalidPaddingTarget { .. }
            | Error::InvalidProductCopies
            | Error::InvalidSimConfig(_)
            | Error::UnknownGalleryEntry(_) => EXIT_INPUT,
            Error::InvariantBreach(_) => EXIT_INTERNAL,
            _ => EXIT_DOMAIN,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// A finished command: text and JSON renderings of the same report.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            code: EXIT_OK,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if !(cli.tol.is_finite() && cli.tol >= 0.0) {
        return Err(CliError::input(format!(
            "--tol must be a non-negative number, got {}",
            cli.tol
        )));
    }
    match &cli.command {
        Command::Analyze { target, map } => analyze(target, *map, cli.tol),
        Command::Parrondo { target } => parrondo(target, cli.tol),
        Command::Simulate(args) => simulate(args),
        Command::Gallery { name, all } => gallery(name.as_deref(), *all, cli.tol),
        Command::Construct(c) => construct(c),
    }
}

enum Target {
    Doc(MapDoc),
    Linear(NumericSystem),
    Unbounded(u64),
}

/// An existing file wins over a gallery name.
fn resolve(target: &str) -> Result<Target, CliError> {
    let path = Path::new(target);
    if path.is_file() {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {target}: {e}")))?;
        let doc = parse_map_file(&text).map_err(|e| CliError::input(format!("{target}: {e}")))?;
        return Ok(Target::Doc(doc));
    }
    let entry = gallery_get(target).map_err(|e| {
        CliError::input(format!(
            "{e}, and no such file (gallery entries: {})",
            ENTRY_NAMES.join(", ")
        ))
    })?;
    Ok(match &entry.system {
        GallerySystem::OneD(s) => Target::Doc(MapDoc::System1d(s.clone())),
        GallerySystem::Planar(s) => Target::Doc(MapDoc::System2d(s.clone())),
        GallerySystem::Linear { .. } => {
            Target::Linear(entry.numeric_system().expect("linear entries simulate"))
        }
        GallerySystem::Unbounded { n_max } => Target::Unbounded(*n_max),
    })
}

fn resolve_doc(target: &str) -> Result<MapDoc, CliError> {
    match resolve(target)? {
        Target::Doc(doc) => Ok(doc),
        _ => Err(CliError::input(format!(
            "'{target}' is not a jet system; `gallery {target}` reports its checks"
        ))),
    }
}

fn complex_json(c: Complex64) -> Value {
    json!({"re": c.re, "im": c.im})
}

/// What `analyze` and `parrondo` report for a single jet.
struct Analysis {
    constants: Value,
    lines: Vec<String>,
    verdict: &'static str,
    theorem: &'static str,
    order_decided: Option<usize>,
}

impl Analysis {
    fn json(&self) -> Value {
        json!({
            "constants": self.constants,
            "verdict": self.verdict,
            "theorem": self.theorem,
            "order_decided": self.order_decided,
        })
    }

    fn render(&self, out: &mut String, indent: &str) {
        for l in &self.lines {
            let _ = writeln!(out, "{indent}{l}");
        }
        let _ = writeln!(out, "{indent}verdict: {}", self.verdict);
        let _ = writeln!(out, "{indent}theorem: {}", self.theorem);
        let order = self
            .order_decided
            .map_or("undecided".to_string(), |o| o.to_string());
        let _ = writeln!(out, "{indent}order decided: {order}");
    }
}

fn analyse_1d(f: &Jet1D) -> Result<Analysis, CliError> {
    let c = classify_1d(f)?;
    let mut lines = vec![format!("multiplier = {}", f.multiplier())];
    let mut w = Value::Null;
    let mut first_v = Value::Null;
    if *f.multiplier() == Rational::from_integer((-1).into()) {
        let k = stability_constants(f)?;
        for (j, v) in &k.w_values {
            lines.push(format!("W{j} = {v}"));
        }
        w = Value::Object(
            k.w_values
                .iter()
                .map(|(j, v)| (j.to_string(), json!(v.to_string())))
                .collect(),
        );
        if let Some((l, v)) = &k.v_first {
            lines.push(format!("first nonzero constant: V{l} = {v}"));
            first_v = json!({"index": l, "value": v.to_string()});
        }
    } else if let Some(v) = &c.deciding_value {
        lines.push(format!("deciding coefficient: a{} = {v}", c.order));
    }
    Ok(Analysis {
        constants: json!({
            "multiplier": f.multiplier().to_string(),
            "W": w,
            "first_V": first_v,
            "deciding_value": c.deciding_value.as_ref().map(ToString::to_string),
        }),
        lines,
        verdict: c.verdict.as_str(),
        theorem: c.rule.as_str(),
        order_decided: c.verdict.is_determinate().then_some(c.order),
    })
}

const BIRKHOFF_RULE: &str = "elliptic: sign of the real part of the first Birkhoff constant";

fn analyse_planar(lambda: Complex64, b: &BirkhoffResult) -> Analysis {
    let mut lines = vec![format!("lambda = {}", fmt_complex(lambda))];
    let (b1, v1) = if b.resonant {
        lines.push("lambda is a root of unity of order <= 3: B1 is undefined".into());
        (Value::Null, Value::Null)
    } else {
        lines.push(format!("B1 = {}", fmt_complex(b.b1)));
        lines.push(format!("V1 = Re B1 = {}", b.v1));
        (complex_json(b.b1), json!(b.v1))
    };
    Analysis {
        constants: json!({
            "lambda": complex_json(lambda),
            "B1": b1,
            "V1": v1,
            "resonant": b.resonant,
        }),
        lines,
        verdict: b.verdict.as_str(),
        theorem: BIRKHOFF_RULE,
        order_decided: (b.verdict != PlanarVerdict::UndeterminedByB1).then_some(3),
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn pick<T>(maps: &[T], n: usize) -> Result<&T, CliError> {
    n.checked_sub(1).and_then(|i| maps.get(i)).ok_or_else(|| {
        CliError::input(format!(
            "--map {n} is out of range (the system has {} maps)",
            maps.len()
        ))
    })
}

fn analyse_planar_map(f: &PlanarPolyMap, tol: f64) -> Result<Analysis, CliError> {
    let g = real_to_complex(f, tol)?;
    Ok(analyse_planar(g.lambda(), &birkhoff_b1(&g, tol)?))
}

fn analyze(target: &str, map: Option<usize>, tol: f64) -> Result<Outcome, CliError> {
    let doc = resolve_doc(target)?;
    let (label, jet, analysis) = match (&doc, map) {
        (MapDoc::Map1d(f), None) => ("map".to_string(), map1d_json(f), analyse_1d(f)?),
        (MapDoc::Map2d(f), None) => (
            "map".to_string(),
            map2d_json(f),
            analyse_planar_map(f, tol)?,
        ),
        (MapDoc::Map1d(f), Some(n)) => {
            let f = pick(std::slice::from_ref(f), n)?;
            (format!("map {n}"), map1d_json(f), analyse_1d(f)?)
        }
        (MapDoc::Map2d(f), Some(n)) => {
            let f = pick(std::slice::from_ref(f), n)?;
            (
                format!("map {n}"),
                map2d_json(f),
                analyse_planar_map(f, tol)?,
            )
        }
        (MapDoc::System1d(s), Some(n)) => {
            let f = pick(s.maps(), n)?;
            (format!("map {n}"), map1d_json(f), analyse_1d(f)?)
        }
        (MapDoc::System2d(s), Some(n)) => {
            let f = pick(s.maps(), n)?;
            (
                format!("map {n}"),
                map2d_json(f),
                analyse_planar_map(f, tol)?,
            )
        }
        (MapDoc::System1d(s), None) => {
            let comp = s.composition_map();
            (
                "composition".to_string(),
                map1d_json(&comp),
                analyse_1d(&comp)?,
            )
        }
        (MapDoc::System2d(s), None) => {
            let g = s.composition_jet(tol)?;
            let b = birkhoff_b1(&g, tol)?;
            (
                "composition".to_string(),
                map2d_json(&complex_to_real(&g)),
                analyse_planar(g.lambda(), &b),
            )
        }
    };
    let mut text = format!("{target} ({label}): {}\n", compact(&jet));
    analysis.render(&mut text, "");
    let json = json!({
        "input": {"source": target, "map": map, "jet": jet},
        "constants": analysis.constants,
        "verdict": analysis.verdict,
        "theorem": analysis.theorem,
        "order_decided": analysis.order_decided,
    });
    Ok(Outcome::ok(text, json))
}

fn parrondo(target: &str, tol: f64) -> Result<Outcome, CliError> {
    let doc = resolve_doc(target)?;
    let (maps, report, per_map) = match doc {
        MapDoc::Map1d(f) => parrondo_1d(PeriodicSystem1D::new(vec![f])?)?,
        MapDoc::System1d(s) => parrondo_1d(s)?,
        MapDoc::Map2d(f) => parrondo_2d(PeriodicSystem2D::new(vec![f])?, tol)?,
        MapDoc::System2d(s) => parrondo_2d(s, tol)?,
    };
    let (comp_jet, comp) = match &report.composition {
        CompositionJet::OneD(j) => (map1d_json(j), analyse_1d(j)?),
        CompositionJet::Planar(g) => {
            let b = match &report.composition_verdict {
                MapVerdict::Planar(b) => *b,
                MapVerdict::OneD(_) => unreachable!("planar composition"),
            };
            (
                map2d_json(&complex_to_real(g)),
                analyse_planar(g.lambda(), &b),
            )
        }
    };
    let mut text = format!("{target}: period {}\n", per_map.len());
    for (i, (m, a)) in maps.iter().zip(&per_map).enumerate() {
        let _ = writeln!(text, "map {}: {}", i + 1, compact(m));
        a.render(&mut text, "  ");
    }
    let _ = writeln!(text, "composition: {}", compact(&comp_jet));
    comp.render(&mut text, "  ");
    let _ = writeln!(text, "paradox: {}", report.paradox);
    let maps_json: Vec<Value> = maps
        .iter()
        .zip(&per_map)
        .enumerate()
        .map(|(i, (m, a))| {
            let mut v = a.json();
            v["index"] = json!(i + 1);
            v["jet"] = m.clone();
            v
        })
        .collect();
    let mut comp_json = comp.json();
    comp_json["jet"] = comp_jet;
    let json = json!({
        "input": {"source": target},
        "maps": maps_json,
        "composition": comp_json,
        "paradox": report.paradox.as_str(),
    });
    Ok(Outcome::ok(text, json))
}

type ParrondoParts = (
    Vec<Value>,
    parrondo_lab::periodic::ParrondoReport,
    Vec<Analysis>,
);

fn parrondo_1d(s: PeriodicSystem1D) -> Result<ParrondoParts, CliError> {
    let report = detect_parrondo_1d(&s)?;
    let per_map = s.maps().iter().map(analyse_1d).collect::<Result<_, _>>()?;
    Ok((s.maps().iter().map(map1d_json).collect(), report, per_map))
}

fn parrondo_2d(s: PeriodicSystem2D, tol: f64) -> Result<ParrondoParts, CliError> {
    let report = detect_parrondo_2d(&s, tol)?;
    let jets = s.complex_jets(tol)?;
    let per_map = jets
        .iter()
        .zip(&report.per_map_verdicts)
        .map(|(g, v)| match v {
            MapVerdict::Planar(b) => analyse_planar(g.lambda(), b),
            MapVerdict::OneD(_) => unreachable!("planar system"),
        })
        .collect();
    Ok((s.maps().iter().map(map2d_json).collect(), report, per_map))
}

fn status_json(s: &OrbitStatus, max_iters: u64) -> Value {
    match *s {
        OrbitStatus::Converged { iter } => {
            json!({"status": "Converged", "periods": iter, "non_finite": false})
        }
        OrbitStatus::Escaped { iter, non_finite } => {
            json!({"status": "Escaped", "periods": iter, "non_finite": non_finite})
        }
        OrbitStatus::MaxedOut => {
            json!({"status": "MaxedOut", "periods": max_iters, "non_finite": false})
        }
    }
}

fn status_text(s: &OrbitStatus, max_iters: u64) -> String {
    match *s {
        OrbitStatus::Converged { iter } => format!("Converged({iter})"),
        OrbitStatus::Escaped {
            iter,
            non_finite: false,
        } => format!("Escaped({iter})"),
        OrbitStatus::Escaped {
            iter,
            non_finite: true,
        } => format!("Escaped({iter}, non-finite)"),
        OrbitStatus::MaxedOut => format!("MaxedOut({max_iters})"),
    }
}

fn parse_point(s: &str, dim: usize) -> Result<Vec<f64>, CliError> {
    let x: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::input(format!("--x0 '{s}': {e}")))?;
    if x.len() != dim {
        return Err(CliError::input(format!(
            "--x0 has {} coordinates, the system has dimension {dim}",
            x.len()
        )));
    }
    Ok(x)
}

fn write_trace(path: &Path, orbit: &OrbitResult, dim: usize) -> Result<usize, CliError> {
    let io = |e: csv::Error| CliError::input(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    let mut header = vec!["step".to_string(), "map_index".to_string()];
    header.extend((1..=dim).map(|i| format!("x{i}")));
    w.write_record(&header).map_err(io)?;
    let rows = orbit.trace.as_deref().unwrap_or_default();
    for r in rows {
        let mut rec = vec![r.step.to_string(), r.map_index.to_string()];
        rec.extend(r.point.iter().map(|v| v.to_string()));
        w.write_record(&rec).map_err(io)?;
    }
    w.flush()
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    Ok(rows.len())
}

fn simulate(args: &SimulateArgs) -> Result<Outcome, CliError> {
    let system = match resolve(&args.target)? {
        Target::Doc(MapDoc::Map1d(f)) => NumericSystem::from_jet(&f),
        Target::Doc(MapDoc::Map2d(f)) => NumericSystem::Planar(vec![f]),
        Target::Doc(MapDoc::System1d(s)) => NumericSystem::from_1d(&s),
        Target::Doc(MapDoc::System2d(s)) => NumericSystem::from_2d(&s),
        Target::Linear(s) => s,
        Target::Unbounded(n_max) => return unbounded(args.iters.unwrap_or(n_max)),
    };
    let defaults = SimConfig::default();
    let cfg = SimConfig {
        max_iters: args.iters.unwrap_or(defaults.max_iters),
        escape_radius: args.escape.unwrap_or(defaults.escape_radius),
        converge_radius: args.converge.unwrap_or(defaults.converge_radius),
        initial_radius: args.radius.unwrap_or(defaults.initial_radius),
        n_samples: args.samples.unwrap_or(defaults.n_samples),
        trace_every: args.trace.as_ref().map(|_| args.trace_every),
    };
    let dim = system.dim();
    let x0 = match &args.x0 {
        Some(s) => parse_point(s, dim)?,
        None => {
            let mut x = vec![0.0; dim];
            x[0] = cfg.initial_radius;
            x
        }
    };
    let orbit = iterate_orbit(&system, &x0, &cfg)?;
    let mut text = format!(
        "{} from {:?}: {}\nfinal point: {:?}\n",
        args.target,
        x0,
        status_text(&orbit.status, cfg.max_iters),
        orbit.final_point
    );
    let mut json = json!({
        "input": {"source": args.target},
        "config": {
            "max_iters": cfg.max_iters,
            "escape_radius": cfg.escape_radius,
            "converge_radius": cfg.converge_radius,
            "initial_radius": cfg.initial_radius,
            "n_samples": cfg.n_samples,
        },
        "x0": x0,
        "orbit": status_json(&orbit.status, cfg.max_iters),
        "final_point": orbit.final_point,
        "trace": Value::Null,
        "empirical": Value::Null,
    });
    if let Some(path) = &args.trace {
        let n = write_trace(path, &orbit, dim)?;
        let _ = writeln!(text, "trace: {n} rows written to {}", path.display());
        json["trace"] = json!({"path": path.display().to_string(), "rows": n});
    }
    if args.samples.is_some() || args.radius.is_some() {
        let report = empirical_report(
            &system,
            &SimConfig {
                trace_every: None,
                ..cfg.clone()
            },
        )?;
        let _ = writeln!(
            text,
            "empirical verdict over {} points at radius {}: {}",
            report.orbits.len(),
            cfg.initial_radius,
            report.verdict.as_str()
        );
        for (p, s) in &report.orbits {
            let _ = writeln!(text, "  {:?}: {}", p, status_text(s, cfg.max_iters));
        }
        json["empirical"] = json!({
            "verdict": report.verdict.as_str(),
            "orbits": report
                .orbits
                .iter()
                .map(|(p, s)| json!({"x0": p, "orbit": status_json(s, cfg.max_iters)}))
                .collect::<Vec<_>>(),
        });
    }
    Ok(Outcome::ok(text, json))
}

fn unbounded(n_max: u64) -> Result<Outcome, CliError> {
    let r = unbounded_demo(n_max)?;
    let mut text = format!("a0 = {}\nf0(1) = {}\n", r.a0, r.f0_at_1);
    let _ = writeln!(
        text,
        "{:>5} {:>10} {:>22} {:>10} {:>12}",
        "n", "y_n", "f_n(y_n)", "y_{n+1}", "residual"
    );
    for row in &r.rows {
        let _ = writeln!(
            text,
            "{:>5} {:>10} {:>22} {:>10} {:>12.3e}",
            row.n, row.y_n, row.f_n_of_y_n, row.y_next, row.residual
        );
    }
    let _ = writeln!(text, "max residual: {:.3e}", r.max_residual());
    let json = json!({
        "input": {"source": "unbounded"},
        "a0": r.a0,
        "f0_at_1": r.f0_at_1,
        "max_residual": r.max_residual(),
        "rows": r.rows.iter().map(|row| json!({
            "n": row.n,
            "y_n": row.y_n,
            "f_n_of_y_n": row.f_n_of_y_n,
            "y_next": row.y_next,
            "residual": row.residual,
        })).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(text, json))
}

fn gallery(name: Option<&str>, all: bool, tol: f64) -> Result<Outcome, CliError> {
    let names: Vec<&str> = if all {
        ENTRY_NAMES.to_vec()
    } else {
        name.into_iter().collect()
    };
    let report = run_selected(&names, tol)?;
    let mut text = String::new();
    for e in &report.entries {
        let _ = writeln!(
            text,
            "{}: {}",
            e.name,
            if e.passed { "PASS" } else { "FAIL" }
        );
        let w = e.rows.iter().map(|r| r.key.len()).max().unwrap_or(0).max(3);
        let we = e
            .rows
            .iter()
            .map(|r| r.expected.len())
            .max()
            .unwrap_or(0)
            .max(8);
        let _ = writeln!(text, "  {:<w$}  {:<we$}  computed", "key", "expected");
        for r in &e.rows {
            let mark = if r.ok { "" } else { "  <-- mismatch" };
            let computed = r.computed.as_deref().unwrap_or("-");
            let _ = writeln!(
                text,
                "  {:<w$}  {:<we$}  {computed}{mark}",
                r.key, r.expected
            );
        }
        for d in e.rows.is_empty().then_some(&e.diffs).into_iter().flatten() {
            let _ = writeln!(text, "  {d}");
        }
    }
    let passed = report.entries.iter().filter(|e| e.passed).count();
    let _ = writeln!(text, "{passed} of {} entries pass", report.entries.len());
    let json = json!({
        "entries": report.entries.iter().map(|e| json!({
            "name": e.name,
            "passed": e.passed,
            "rows": e.rows.iter().map(|r| json!({
                "key": r.key,
                "expected": r.expected,
                "computed": r.computed,
                "note": r.note,
                "ok": r.ok,
            })).collect::<Vec<_>>(),
            "diffs": e.diffs,
        })).collect::<Vec<_>>(),
        "all_passed": report.all_passed(),
    });
    let code = if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_INTERNAL
    };
    Ok(Outcome { text, json, code })
}

fn rational_flag(flag: &str, value: &str) -> Result<Rational, CliError> {
    parse_rational(value)
        .ok_or_else(|| CliError::input(format!("--{flag} '{value}' is not a rational number")))
}

fn construct(c: &ConstructCommand) -> Result<Outcome, CliError> {
    let (doc, out) = match c {
        ConstructCommand::OneD {
            a22,
            a1_sq,
            a2_sq,
            a3_sq,
            a23,
            a4,
            out,
        } => {
            let sys = construct_1d_triple(
                &rational_flag("a22", a22)?,
                &rational_flag("A1sq", a1_sq)?,
                &rational_flag("A2sq", a2_sq)?,
                &rational_flag("A3sq", a3_sq)?,
                &rational_flag("a23", a23)?,
                &rational_flag("a4", a4)?,
            );
            (MapDoc::System1d(sys), out)
        }
        ConstructCommand::TwoD { t, s, u, out } => {
            if ![t, s, u].iter().all(|v| v.is_finite()) {
                return Err(CliError::input("--t, --s and --u must be finite"));
            }
            (MapDoc::System2d(construct_2d_pair(*t, *s, *u)), out)
        }
    };
    let file = doc_json(&doc);
    let body = to_file_string(&file);
    match out {
        Some(path) => {
            fs::write(path, &body)
                .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
            let text = format!("wrote {}\n", path.display());
            Ok(Outcome::ok(
                text,
                json!({"wrote": path.display().to_string()}),
            ))
        }
        None => Ok(Outcome::ok(body, file)),
    }
}
